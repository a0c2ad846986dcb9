"""Polynomial GCD over GF(2): Euclid and a half-GCD recursion.

The half-GCD follows the usual Thull-Yap shape: reduce the top halves
recursively, apply the resulting transformation to the full operands, take
one Euclidean step, then reduce the top halves of the new pair.  Matrices are
kept internal; callers only see the gcd.
"""

from __future__ import annotations

from typing import Optional

from .mul import MulThresholds, mul_int
from .poly import Gf2Poly, _val

HGCD_THRESHOLD = 512


def _deg(a: int) -> int:
    return a.bit_length() - 1


def gcd_euclid_int(a: int, b: int) -> int:
    if not a and not b:
        raise ValueError("gcd of two zero polynomials is undefined")
    if a.bit_length() < b.bit_length():
        a, b = b, a
    while b:
        nb = b.bit_length()
        while True:
            na = a.bit_length()
            if na < nb:
                break
            a ^= b << (na - nb)
        a, b = b, a
    return a


def _euclid_steps(a: int, b: int, stop: int):
    """Euclidean steps on (a, b) while deg b >= stop, tracking the matrix.

    Each elementary subtraction a -= x^sh b is mirrored on the matrix rows,
    so no polynomial products are needed.
    """
    m00, m01, m10, m11 = 1, 0, 0, 1
    while b and b.bit_length() > stop:
        nb = b.bit_length()
        while True:
            na = a.bit_length()
            if na < nb:
                break
            sh = na - nb
            a ^= b << sh
            m00 ^= m10 << sh
            m01 ^= m11 << sh
        a, b = b, a
        m00, m01, m10, m11 = m10, m11, m00, m01
    return (m00, m01, m10, m11), a, b


class _Hgcd:
    def __init__(self, t: Optional[MulThresholds], threshold: int, stats: Optional[dict]):
        self.t = t
        self.threshold = max(threshold, 1)
        self.stats = stats

    def mul(self, a: int, b: int) -> int:
        return mul_int(a, b, self.t)

    def apply(self, M, a: int, b: int):
        m00, m01, m10, m11 = M
        mul = self.mul
        return mul(m00, a) ^ mul(m01, b), mul(m10, a) ^ mul(m11, b)

    def compose(self, S, R):
        """S * R."""
        s00, s01, s10, s11 = S
        r00, r01, r10, r11 = R
        mul = self.mul
        return (mul(s00, r00) ^ mul(s01, r10), mul(s00, r01) ^ mul(s01, r11),
                mul(s10, r00) ^ mul(s11, r10), mul(s10, r01) ^ mul(s11, r11))

    def hgcd(self, a: int, b: int, depth: int = 1, want_pair: bool = True):
        """Matrix M and (a', b') = M (a, b) with deg a' >= ceil(n/2) > deg b', n = deg a.

        Requires deg a > deg b.  With ``want_pair`` false the returned pair is
        not brought up to date after the second recursion.
        """
        if self.stats is not None:
            self.stats["calls"] = self.stats.get("calls", 0) + 1
            self.stats["max_depth"] = max(self.stats.get("max_depth", 0), depth)
        n = _deg(a)
        m = (n + 1) >> 1
        if _deg(b) < m:
            return (1, 0, 0, 1), a, b
        if n < self.threshold:
            return _euclid_steps(a, b, m)
        R, _, _ = self.hgcd(a >> m, b >> m, depth + 1, False)
        a, b = self.apply(R, a, b)
        if a.bit_length() < b.bit_length():
            # only possible if the truncation lemma were violated; stay correct
            a, b = b, a
            R = (R[2], R[3], R[0], R[1])
        if _deg(b) < m:
            return R, a, b
        q, rem = _divmod(a, b)
        a, b = b, rem
        R = (R[2], R[3], R[0] ^ self.mul(q, R[2]), R[1] ^ self.mul(q, R[3]))
        if _deg(b) < m:
            return R, a, b
        k = max(0, 2 * m - _deg(a))
        S, _, _ = self.hgcd(a >> k, b >> k, depth + 1, False)
        if want_pair:
            a, b = self.apply(S, a, b)
        return self.compose(S, R), a, b


def _divmod(a: int, b: int):
    nb = b.bit_length()
    q = 0
    while True:
        na = a.bit_length()
        if na < nb:
            return q, a
        sh = na - nb
        a ^= b << sh
        q |= 1 << sh


def gcd_fast_int(a: int, b: int, t: Optional[MulThresholds] = None,
                 threshold: int = HGCD_THRESHOLD, stats: Optional[dict] = None) -> int:
    if not a and not b:
        raise ValueError("gcd of two zero polynomials is undefined")
    if a.bit_length() < b.bit_length():
        a, b = b, a
    h = _Hgcd(t, threshold, stats)
    while b:
        if _deg(a) < h.threshold:
            return gcd_euclid_int(a, b)
        if _deg(a) == _deg(b):
            a, b = b, a ^ b
            continue
        _, a, b = h.hgcd(a, b)
        if a.bit_length() < b.bit_length():
            a, b = b, a
        if b:
            a, b = b, _divmod(a, b)[1]
    return a


def gcd_euclid(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    return Gf2Poly(gcd_euclid_int(_val(a), _val(b)))


def gcd_fast(a: Gf2Poly, b: Gf2Poly, t: Optional[MulThresholds] = None,
             threshold: int = HGCD_THRESHOLD, stats: Optional[dict] = None) -> Gf2Poly:
    """gcd(a, b) by half-GCD recursion above ``threshold`` (degree), Euclid below.

    ``stats``, if given, collects ``calls`` and ``max_depth`` of the recursion.
    """
    return Gf2Poly(gcd_fast_int(_val(a), _val(b), t, threshold, stats))
