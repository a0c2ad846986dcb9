"""Reference results by the textbook method, for tests.

One squaring and one gcd per degree, with plain dense reduction by P and no
blocking or sieving.  Shares nothing with the engine except the final
equal-degree split.
"""

from __future__ import annotations

from ..gcd import gcd_euclid_int
from ..poly import clmul_int, divmod_int, mod_int
from ..trinomial import OpCounters, Trinomial
from .engine import DEFAULT_SEED, FactorResult, Verdict, _factor_result, edf_rng


def naive_ddf_oracle(t: Trinomial, seed: int = DEFAULT_SEED) -> FactorResult:
    """gcd(x^(2^d) + x, P) for d = 1, 2, ..., r/2; the first hit gives the answer."""
    P = t.value
    counters = OpCounters()
    X = 2
    for d in range(1, t.r // 2 + 1):
        X = mod_int(clmul_int(X, X), P)
        counters.squarings += 1
        counters.gcds += 1
        g = gcd_euclid_int(P, X ^ 2)
        if g != 1:
            return _factor_result(g, d, edf_rng(seed, t), counters)
    return FactorResult(Verdict.IRREDUCIBLE, counters=counters)


def count_irreducible_factors(f: int) -> int:
    """Number of distinct irreducible factors of f (f square-free for a full count)."""
    if f.bit_length() < 2:
        raise ValueError("need a polynomial of positive degree")
    count = 0
    X = 2
    d = 0
    while f.bit_length() - 1 >= 2 * (d + 1):
        d += 1
        X = mod_int(clmul_int(X, X), f)
        g = gcd_euclid_int(f, X ^ 2)
        if g != 1:
            count += (g.bit_length() - 1) // d
            f, rem = divmod_int(f, g)
            assert rem == 0
            X = mod_int(X, f)
    if f.bit_length() > 1:
        count += 1
    return count
