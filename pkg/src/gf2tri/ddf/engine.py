"""Smallest irreducible factor of x^r + x^s + 1 by blocked distinct-degree
factorization.

Pipeline: sieve degrees up to about half of log2(r), then test the remaining
degrees in outer blocks.  An outer block multiplies k interval polynomials
together and takes one gcd with P.  Each interval polynomial
p_m(X, x) = prod_{j<m} (X^(2^j) + x), with X = x^(2^d), is assembled from the
weight polynomials s_{j,m}(X) as

    p_m(X, x) = sum_{j=0}^{m} x^(m-j) s_{j,m}(X).

Since s_{j,m}(X^2) = s_{j,m}(X)^2, moving on to the next m degrees costs m^2
squarings and no multiplications.  On a hit, the block is replayed one inner
step at a time and then one degree at a time.  The product of the smallest
degree factors is then split by Cantor-Zassenhaus.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Iterator, Optional

from ..gcd import gcd_euclid_int
from ..mul import MulThresholds
from ..poly import Gf2Poly
from ..trinomial import ModContext, OpCounters, Trinomial
from .split import split_int
from .swan import Parity, squarefree_check, swan_parity

MAX_M = 64
DEFAULT_M = 20
DEFAULT_K0 = 1
DEFAULT_SEED = 0


class Verdict(enum.Enum):
    IRREDUCIBLE = "irreducible"
    FACTOR = "factor"


@dataclass
class FactorResult:
    verdict: Verdict
    d: Optional[int] = None
    factor: Optional[Gf2Poly] = None
    counters: OpCounters = field(default_factory=OpCounters)

    @property
    def irreducible(self) -> bool:
        return self.verdict is Verdict.IRREDUCIBLE

    def key(self) -> tuple:
        """(verdict, d, factor value) for exact comparisons."""
        return (self.verdict, self.d, None if self.factor is None else self.factor.value)


def edf_rng(seed: int, t: Trinomial) -> random.Random:
    # per-trinomial stream, so results do not depend on processing order
    return random.Random(f"{seed}:{t.r}:{t.s}")


def _factor_result(g: int, d: int, rng: random.Random, counters: OpCounters) -> FactorResult:
    least = split_int(g, d, rng)[0]
    return FactorResult(Verdict.FACTOR, d, Gf2Poly(least), counters)


# -- sieve ---------------------------------------------------------------

def sieve_bound(r: int) -> int:
    """ceil(log2(r) / 2): the smallest c with 4^c >= r."""
    c = 0
    while 4 ** c < r:
        c += 1
    return c


def _sieve_int(t: Trinomial, counters: OpCounters) -> Optional[tuple[int, int]]:
    for d in range(2, sieve_bound(t.r) + 1):
        D = (1 << d) - 1
        q = (1 << (t.r % D)) ^ (1 << (t.s % D)) ^ 1
        counters.sieve_gcds += 1
        g = gcd_euclid_int((1 << D) | 1, q) if q else (1 << D) | 1
        if g != 1:
            # all factors of g have degree dividing d, and none of degree < d
            # survived the earlier rounds; degree 1 cannot divide P
            return d, g
    return None


def sieve_small_factors(t: Trinomial, seed: int = DEFAULT_SEED,
                        counters: Optional[OpCounters] = None) -> Optional[tuple[int, Gf2Poly]]:
    """(d, least factor) for the smallest factor degree d <= sieve_bound(r), if any.

    Degree-d factors of P are exactly those of x^(r mod D) + x^(s mod D) + 1
    with x^D + 1, D = 2^d - 1.
    """
    assert t.value & 1 and bin(t.value).count("1") % 2, "x and x+1 never divide a trinomial"
    hit = _sieve_int(t, counters if counters is not None else OpCounters())
    if hit is None:
        return None
    d, g = hit
    return d, Gf2Poly(split_int(g, d, edf_rng(seed, t))[0])


# -- schedule ------------------------------------------------------------

@dataclass(frozen=True)
class BlockSchedule:
    m: int
    k0: int
    d_start: int
    d_max: int

    def __post_init__(self) -> None:
        if not 1 <= self.m <= MAX_M:
            raise ValueError(f"m must be in [1, {MAX_M}], got {self.m}")
        if self.k0 < 1:
            raise ValueError("k0 must be positive")
        if self.d_start < 1:
            raise ValueError("d_start must be positive")

    @classmethod
    def for_trinomial(cls, t: Trinomial, m: int = DEFAULT_M, k0: int = DEFAULT_K0,
                      use_swan: bool = True) -> "BlockSchedule":
        d_max = t.r // 2
        if use_swan and squarefree_check(t) and swan_parity(t) is Parity.ODD:
            # an odd number of factors: reducible means at least three
            d_max = t.r // 3
        return cls(m, k0, sieve_bound(t.r) + 1, d_max)

    @property
    def inner_blocks(self) -> int:
        span = self.d_max - self.d_start + 1
        return 0 if span <= 0 else -(-span // self.m)

    def blocks(self) -> Iterator[tuple[int, int]]:
        """(first degree, inner block count) per outer block; k = k0 j, last one truncated."""
        left = self.inner_blocks
        d = self.d_start
        j = 1
        while left > 0:
            k = min(self.k0 * j, left)
            yield d, k
            d += k * self.m
            left -= k
            j += 1


# -- inner table ---------------------------------------------------------

@dataclass
class InnerTable:
    """Weight polynomials s_{j,m}(X) mod P at X = x^(2^d).

    ``sigma`` holds m+1 residues; sigma[0] = 1 is kept so the assembly loop
    needs no special case.
    """
    m: int
    sigma: list
    d: int = 0

    def copy(self) -> "InnerTable":
        return InnerTable(self.m, list(self.sigma), self.d)

    def residues(self) -> list[Gf2Poly]:
        """s_{1,m}, ..., s_{m,m} as polynomials."""
        return [Gf2Poly(v) for v in self.sigma[1:]]


def init_inner_table(ctx: ModContext, m: int) -> InnerTable:
    """s_{j,m}(x) mod P by the Pascal-style recurrence

        s_{j,i}(X) = s_{j,i-1}(X^2) + X s_{j-1,i-1}(X^2),

    where at X = x the second term is a shift.  O(m^2) squarings.
    """
    if not 1 <= m <= MAX_M:
        raise ValueError(f"m must be in [1, {MAX_M}], got {m}")
    red = ctx.reduce_int
    col = [1]
    for i in range(1, m + 1):
        sq = [ctx.sqr(v) for v in col] + [0]
        col = [1] + [red(sq[j] ^ (sq[j - 1] << 1)) for j in range(1, i + 1)]
    return InnerTable(m, col, 0)


def _square_table(ctx: ModContext, tab: InnerTable, times: int) -> None:
    sqr = ctx.sqr
    sig = tab.sigma
    for j in range(1, tab.m + 1):
        v = sig[j]
        for _ in range(times):
            v = sqr(v)
        sig[j] = v
    tab.d += times


def position_table(ctx: ModContext, tab: InnerTable, d: int) -> None:
    """Move the table forward to Frobenius level d."""
    if d < tab.d:
        raise ValueError(f"table is at level {tab.d}, cannot go back to {d}")
    _square_table(ctx, tab, d - tab.d)


def _assemble_int(ctx: ModContext, tab: InnerTable) -> int:
    m = tab.m
    sig = tab.sigma
    acc = 1 << m
    for j in range(1, m + 1):
        acc ^= sig[j] << (m - j)
    return ctx.reduce_int(acc)


def assemble(ctx: ModContext, tab: InnerTable) -> Gf2Poly:
    """p_m(x^(2^d), x) mod P at the table's current level d."""
    return Gf2Poly(_assemble_int(ctx, tab))


def advance_inner(ctx: ModContext, tab: InnerTable) -> Gf2Poly:
    """Advance the table by m levels (m^2 squarings) and assemble the new term.

    The returned term covers degrees [d, d + m) for the new level d.
    """
    _square_table(ctx, tab, tab.m)
    return assemble(ctx, tab)


def _step(ctx: ModContext, tab: InnerTable) -> int:
    # term for [d, d + m), leaving the table ready for the next m degrees
    term = _assemble_int(ctx, tab)
    _square_table(ctx, tab, tab.m)
    return term


def run_outer_block(ctx: ModContext, tab: InnerTable, k: int) -> int:
    """gcd(prod of k inner terms, P) starting at the table's level.

    Costs exactly one gcd, k-1 modular products and k m^2 squarings.
    """
    if k < 1:
        raise ValueError("k must be positive")
    acc = _step(ctx, tab)
    for _ in range(k - 1):
        acc = ctx.mul(acc, _step(ctx, tab))
    return ctx.gcd(acc)


# -- backtracking --------------------------------------------------------

def _backtrack_int(ctx: ModContext, snap: InnerTable, k: int) -> tuple[int, int]:
    tab = snap.copy()
    counters = ctx.counters
    for _ in range(k):
        lo = tab.d
        # the first nontrivial running product is the first nontrivial term
        g = ctx.gcd(_step(ctx, tab))
        if g == 1:
            continue
        X = ctx.frobenius_int(lo)
        for d in range(lo, lo + tab.m):
            counters.gcds += 1
            h = gcd_euclid_int(g, X ^ 2)
            if h != 1:
                return d, h
            X = ctx.sqr(X)
        break
    raise RuntimeError("backtrack found no factor in a block whose gcd was nontrivial")


def backtrack(ctx: ModContext, snap: InnerTable, k: int) -> tuple[int, Gf2Poly]:
    """Smallest degree d in the block and the product of all degree-d factors.

    ``snap`` is the table at the block's start; it is left untouched.
    """
    d, g = _backtrack_int(ctx, snap, k)
    return d, Gf2Poly(g)


# -- drivers -------------------------------------------------------------

def run_ddf(ctx: ModContext, sched: BlockSchedule, seed: int = DEFAULT_SEED) -> FactorResult:
    """Blocked DDF over the degrees of ``sched``; assumes the sieve found nothing."""
    counters = ctx.counters
    if sched.d_max < sched.d_start:
        return FactorResult(Verdict.IRREDUCIBLE, counters=counters)
    tab = init_inner_table(ctx, sched.m)
    position_table(ctx, tab, sched.d_start)
    for _, k in sched.blocks():
        snap = tab.copy()
        if run_outer_block(ctx, tab, k) == 1:
            continue
        d, g = _backtrack_int(ctx, snap, k)
        if d >= ctx.r:
            # only P itself satisfies x^(2^r) = x with no smaller degree
            return FactorResult(Verdict.IRREDUCIBLE, counters=counters)
        return _factor_result(g, d, edf_rng(seed, ctx.t), counters)
    return FactorResult(Verdict.IRREDUCIBLE, counters=counters)


def find_smallest_factor(t: Trinomial, m: int = DEFAULT_M, k0: int = DEFAULT_K0,
                         seed: int = DEFAULT_SEED,
                         thresholds: Optional[MulThresholds] = None,
                         use_swan: bool = True) -> FactorResult:
    """Sieve, then blocked DDF.  The factor is the least one of smallest degree."""
    counters = OpCounters()
    hit = _sieve_int(t, counters)
    if hit is not None:
        d, g = hit
        return _factor_result(g, d, edf_rng(seed, t), counters)
    ctx = ModContext(t, thresholds, counters)
    sched = BlockSchedule.for_trinomial(t, m, k0, use_swan)
    return run_ddf(ctx, sched, seed)
