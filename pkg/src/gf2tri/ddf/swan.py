"""Square-freeness and Swan's parity rule for x^r + x^s + 1 over GF(2)."""

from __future__ import annotations

import enum

from ..gcd import gcd_euclid_int
from ..trinomial import Trinomial


class Parity(enum.Enum):
    ODD = "odd"
    EVEN = "even"


def derivative_int(t: Trinomial) -> int:
    d = 0
    if t.r % 2:
        d ^= 1 << (t.r - 1)
    if t.s % 2:
        d ^= 1 << (t.s - 1)
    return d


def squarefree_check(t: Trinomial) -> bool:
    """True iff gcd(P, P') = 1."""
    return gcd_euclid_int(t.value, derivative_int(t)) == 1


def swan_parity(t: Trinomial) -> Parity:
    """Parity of the number of irreducible factors of a square-free trinomial.

    Swan (1962), Corollary 5, for n > k with exactly one of them odd; the
    both-odd case goes through the reciprocal x^n + x^(n-k) + 1, which has
    the same factorization pattern.
    """
    n, k = t.r, t.s
    if n % 2 and k % 2:
        k = n - k
    if n % 2 == 0:
        even = n != 2 * k and (n * k // 2) % 4 in (0, 1)
    elif (2 * n) % k:
        even = n % 8 in (3, 5)
    else:
        even = n % 8 in (1, 7)
    return Parity.EVEN if even else Parity.ODD
