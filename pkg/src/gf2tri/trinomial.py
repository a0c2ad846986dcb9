"""Arithmetic in GF(2)[x]/(x^r + x^s + 1).

Reduction folds the part above x^r back with x^r = x^s + 1, so squaring
costs O(r) while a product costs a full multiplication.  The whole blocking
scheme lives on that gap.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Optional

from .gcd import gcd_fast_int
from .mul import MulThresholds, mul_int
from .poly import Gf2Poly, _val, sqr_int

# Degree above which the engine's gcds switch from Euclid to half-GCD.  In
# this pure-Python build the quadratic Euclid (C-speed XORs) stays ahead of the
# half-GCD recursion well past desk-scale degrees; see gcd.gcd_fast.
ENGINE_GCD_THRESHOLD = 1 << 22


@dataclass
class OpCounters:
    squarings: int = 0
    modmuls: int = 0
    gcds: int = 0
    sieve_gcds: int = 0

    def copy(self) -> "OpCounters":
        return OpCounters(**{f.name: getattr(self, f.name) for f in fields(self)})

    def __sub__(self, other: "OpCounters") -> "OpCounters":
        return OpCounters(**{f.name: getattr(self, f.name) - getattr(other, f.name)
                             for f in fields(self)})

    def __add__(self, other: "OpCounters") -> "OpCounters":
        return OpCounters(**{f.name: getattr(self, f.name) + getattr(other, f.name)
                             for f in fields(self)})


@dataclass(frozen=True)
class Trinomial:
    r: int
    s: int

    def __post_init__(self) -> None:
        if not (isinstance(self.r, int) and isinstance(self.s, int)):
            raise TypeError("r and s must be ints")
        if self.r <= 2 or not 0 < self.s < self.r:
            raise ValueError(f"need r > 2 and 0 < s < r, got r={self.r}, s={self.s}")
        if self.r % 2 == 0 and self.s % 2 == 0:
            raise ValueError(f"x^{self.r} + x^{self.s} + 1 is a square (r and s both even)")

    @property
    def value(self) -> int:
        return (1 << self.r) | (1 << self.s) | 1

    @property
    def poly(self) -> Gf2Poly:
        return Gf2Poly(self.value)

    def reciprocal(self) -> "Trinomial":
        return Trinomial(self.r, self.r - self.s)

    def __str__(self) -> str:
        return f"x^{self.r} + x^{self.s} + 1"


class ModContext:
    """Residue arithmetic for one trinomial, with injected operation counters.

    A context is owned by one worker at a time; counters are plain ints.
    The int-level methods (``reduce_int``, ``sqr``, ``mul``, ``gcd``) are the
    engine's hot path; the module functions wrap them for Gf2Poly callers.
    """

    __slots__ = ("t", "r", "s", "P", "mask", "thresholds", "counters", "gcd_threshold")

    def __init__(self, t: Trinomial, thresholds: Optional[MulThresholds] = None,
                 counters: Optional[OpCounters] = None,
                 gcd_threshold: int = ENGINE_GCD_THRESHOLD) -> None:
        self.t = t
        self.r = t.r
        self.s = t.s
        self.P = t.value
        self.mask = (1 << t.r) - 1
        self.thresholds = thresholds
        self.counters = counters if counters is not None else OpCounters()
        self.gcd_threshold = gcd_threshold

    def reduce_int(self, a: int) -> int:
        r, s, mask = self.r, self.s, self.mask
        # each fold lowers the degree by r - s; twice suffices for s <= r/2
        h = a >> r
        while h:
            a = (a & mask) ^ h ^ (h << s)
            h = a >> r
        return a

    def sqr(self, a: int) -> int:
        self.counters.squarings += 1
        a = sqr_int(a)
        r, s, mask = self.r, self.s, self.mask
        h = a >> r
        while h:
            a = (a & mask) ^ h ^ (h << s)
            h = a >> r
        return a

    def mul(self, a: int, b: int) -> int:
        self.counters.modmuls += 1
        return self.reduce_int(mul_int(a, b, self.thresholds))

    def gcd(self, a: int) -> int:
        """gcd(a, P), counted as a block gcd."""
        self.counters.gcds += 1
        return gcd_fast_int(self.P, a, self.thresholds, self.gcd_threshold)

    def frobenius_int(self, e: int) -> int:
        a = 2 if self.r > 1 else self.reduce_int(2)
        for _ in range(e):
            a = self.sqr(a)
        return a


def _residue(ctx: ModContext, a: Gf2Poly) -> int:
    v = _val(a)
    if v >> ctx.r:
        raise ValueError(f"operand of degree {a.degree} is not reduced mod degree {ctx.r}")
    return v


def reduce(ctx: ModContext, a: Gf2Poly) -> Gf2Poly:
    v = _val(a)
    if v.bit_length() > 2 * ctx.r - 1:
        raise ValueError(f"degree {a.degree} outside the supported range (< {2 * ctx.r - 1})")
    return Gf2Poly(ctx.reduce_int(v))


def mod_square(ctx: ModContext, a: Gf2Poly) -> Gf2Poly:
    return Gf2Poly(ctx.sqr(_residue(ctx, a)))


def mod_mul(ctx: ModContext, a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    return Gf2Poly(ctx.mul(_residue(ctx, a), _residue(ctx, b)))


def frobenius_power(ctx: ModContext, e: int) -> Gf2Poly:
    """x^(2^e) mod P by e modular squarings."""
    if e < 0:
        raise ValueError("e must be nonnegative")
    return Gf2Poly(ctx.frobenius_int(e))
