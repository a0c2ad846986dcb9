"""Dense polynomials over GF(2).

A polynomial b_n x^n + ... + b_1 x + b_0 is stored as the nonnegative
integer b_n 2^n + ... + b_1 2 + b_0.  Python integers are already a packed
little-endian word array, so XOR, shifts and bit_length give the word-level
primitives directly.  The hot paths of this package work on bare ints; the
:class:`Gf2Poly` wrapper is the typed value used on public surfaces
(serialization, certificates, tests).

The word width only matters where code splits operands at word boundaries
(Karatsuba/Toom-Cook) or exposes the word sequence; it defaults to 64 and can
be set for a whole process with the ``GF2TRI_WORD_BITS`` environment variable.
"""

from __future__ import annotations

import os
from typing import Iterable, Optional, Sequence

WORD_BITS = int(os.environ.get("GF2TRI_WORD_BITS", "64"))
if WORD_BITS not in (8, 16, 32, 64):
    raise ImportError(f"unsupported GF2TRI_WORD_BITS={WORD_BITS}")

_HEXDIGITS = "0123456789abcdefABCDEF"

# Byte -> spread byte tables for squaring: bit k of the low (high) nibble
# moves to bit 2k of the output byte.
_SPREAD_LO = bytes(sum(((i >> k) & 1) << (2 * k) for k in range(4)) for i in range(256))
_SPREAD_HI = bytes(sum(((i >> (k + 4)) & 1) << (2 * k) for k in range(4)) for i in range(256))


# ---------------------------------------------------------------------------
# int-level kernels
# ---------------------------------------------------------------------------

def sqr_int(a: int) -> int:
    """Square a: coefficient i moves to coefficient 2i."""
    if a < 2:
        return a
    n = (a.bit_length() + 7) >> 3
    src = a.to_bytes(n, "little")
    out = bytearray(2 * n)
    out[0::2] = src.translate(_SPREAD_LO)
    out[1::2] = src.translate(_SPREAD_HI)
    return int.from_bytes(out, "little")


def clmul_int(a: int, b: int) -> int:
    """Schoolbook carryless product, processed in 4- or 8-bit windows of b."""
    if a.bit_length() < b.bit_length():
        a, b = b, a
    if b < 2:
        return a if b else 0
    nb = b.bit_length()
    if nb <= 8:
        c = 0
        i = 0
        while b:
            if b & 1:
                c ^= a << i
            b >>= 1
            i += 1
        return c
    w = 8 if nb > 4096 else 4
    size = 1 << w
    table = [0] * size
    for u in range(1, size):
        low = u & -u
        table[u] = table[u ^ low] ^ (a << (low.bit_length() - 1))
    mask = size - 1
    c = 0
    sh = 0
    while b:
        c ^= table[b & mask] << sh
        b >>= w
        sh += w
    return c


def divmod_int(a: int, b: int) -> tuple[int, int]:
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    nb = b.bit_length()
    q = 0
    while True:
        na = a.bit_length()
        if na < nb:
            return q, a
        sh = na - nb
        a ^= b << sh
        q |= 1 << sh


def mod_int(a: int, b: int) -> int:
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    nb = b.bit_length()
    while True:
        na = a.bit_length()
        if na < nb:
            return a
        a ^= b << (na - nb)


def div_x1_int(a: int) -> int:
    """Exact quotient a / (x + 1); a must be divisible by x + 1."""
    n = a.bit_length()
    if n <= 1:
        if a:
            raise ValueError("not divisible by x + 1")
        return 0
    # q_i = a_0 + ... + a_i, i.e. a prefix XOR, done by doubling.
    q = a
    sh = 1
    while sh < n:
        q ^= q << sh
        sh <<= 1
    if (q >> (n - 1)) & 1:
        raise ValueError("not divisible by x + 1")
    return q & ((1 << (n - 1)) - 1)


def words_of(a: int, word_bits: int = WORD_BITS) -> tuple[int, ...]:
    if a < 0:
        raise ValueError("negative value is not a GF(2) polynomial")
    n = (a.bit_length() + word_bits - 1) // word_bits
    mask = (1 << word_bits) - 1
    return tuple((a >> (i * word_bits)) & mask for i in range(n))


def from_words(words: Iterable[int], word_bits: int = WORD_BITS) -> int:
    value = 0
    limit = 1 << word_bits
    for i, w in enumerate(words):
        if not 0 <= w < limit:
            raise ValueError(f"word {i} out of range for {word_bits}-bit words")
        value |= w << (i * word_bits)
    return value


# ---------------------------------------------------------------------------
# Gf2Poly
# ---------------------------------------------------------------------------

class Gf2Poly:
    """Immutable polynomial over GF(2).

    ``degree`` is ``None`` for the zero polynomial, so code that forgets the
    zero case fails loudly instead of computing with -1.
    """

    __slots__ = ("_v",)

    def __init__(self, value: int = 0) -> None:
        if isinstance(value, Gf2Poly):
            value = value._v
        if not isinstance(value, int) or value < 0:
            raise ValueError("Gf2Poly needs a nonnegative int bit pattern")
        object.__setattr__(self, "_v", value)

    def __setattr__(self, name, value):
        raise AttributeError("Gf2Poly is immutable")

    # construction ---------------------------------------------------------
    @classmethod
    def from_exponents(cls, exponents: Iterable[int]) -> "Gf2Poly":
        v = 0
        for e in exponents:
            if e < 0:
                raise ValueError("negative exponent")
            v ^= 1 << e
        return cls(v)

    @classmethod
    def from_words(cls, words: Sequence[int], word_bits: int = WORD_BITS) -> "Gf2Poly":
        return cls(from_words(words, word_bits))

    @classmethod
    def from_hex(cls, text: str) -> "Gf2Poly":
        if not text or text.strip(_HEXDIGITS):
            raise ValueError(f"bad polynomial hex {text!r}")
        return cls(int(text, 16))

    @classmethod
    def x(cls) -> "Gf2Poly":
        return cls(2)

    # views ----------------------------------------------------------------
    @property
    def value(self) -> int:
        return self._v

    @property
    def degree(self) -> Optional[int]:
        return self._v.bit_length() - 1 if self._v else None

    def words(self, word_bits: int = WORD_BITS) -> tuple[int, ...]:
        return words_of(self._v, word_bits)

    def hex(self) -> str:
        return format(self._v, "x")

    def coefficient(self, i: int) -> int:
        if i < 0:
            raise ValueError("negative index")
        return (self._v >> i) & 1

    def exponents(self) -> list[int]:
        v = self._v
        out = []
        i = 0
        while v:
            if v & 1:
                out.append(i)
            v >>= 1
            i += 1
        return out

    def is_zero(self) -> bool:
        return self._v == 0

    def shift_left(self, n: int) -> "Gf2Poly":
        if n < 0:
            raise ValueError("negative shift")
        return Gf2Poly(self._v << n)

    # arithmetic -------------------------------------------------------------
    def __add__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(self._v ^ _val(other))

    __sub__ = __add__
    __radd__ = __add__

    def __mul__(self, other: "Gf2Poly") -> "Gf2Poly":
        from .mul import mul_int

        return Gf2Poly(mul_int(self._v, _val(other)))

    __rmul__ = __mul__

    def __divmod__(self, other: "Gf2Poly") -> tuple["Gf2Poly", "Gf2Poly"]:
        q, r = divmod_int(self._v, _val(other))
        return Gf2Poly(q), Gf2Poly(r)

    def __floordiv__(self, other: "Gf2Poly") -> "Gf2Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(mod_int(self._v, _val(other)))

    # comparisons: integer order, i.e. x^0 is the least significant bit ----
    def __eq__(self, other) -> bool:
        if isinstance(other, Gf2Poly):
            return self._v == other._v
        return NotImplemented

    def __lt__(self, other: "Gf2Poly") -> bool:
        return self._v < _val(other)

    def __le__(self, other: "Gf2Poly") -> bool:
        return self._v <= _val(other)

    def __hash__(self) -> int:
        return hash(("Gf2Poly", self._v))

    def __bool__(self) -> bool:
        return self._v != 0

    def __repr__(self) -> str:
        return f"Gf2Poly({self})"

    def __str__(self) -> str:
        if not self._v:
            return "0"
        terms = []
        for e in reversed(self.exponents()):
            terms.append("1" if e == 0 else "x" if e == 1 else f"x^{e}")
        return " + ".join(terms)


def _val(p) -> int:
    if isinstance(p, Gf2Poly):
        return p._v
    raise TypeError(f"expected Gf2Poly, got {type(p).__name__}")


ZERO = Gf2Poly(0)
ONE = Gf2Poly(1)


# ---------------------------------------------------------------------------
# functional surface
# ---------------------------------------------------------------------------

def add(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    return Gf2Poly(_val(a) ^ _val(b))


def mul_classical(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    return Gf2Poly(clmul_int(_val(a), _val(b)))


def square(a: Gf2Poly) -> Gf2Poly:
    return Gf2Poly(sqr_int(_val(a)))


def divrem(a: Gf2Poly, b: Gf2Poly) -> tuple[Gf2Poly, Gf2Poly]:
    q, r = divmod_int(_val(a), _val(b))
    return Gf2Poly(q), Gf2Poly(r)


def degree(a: Gf2Poly) -> Optional[int]:
    return a.degree


def coefficient(a: Gf2Poly, i: int) -> int:
    return a.coefficient(i)


def shift_left(a: Gf2Poly, n: int) -> Gf2Poly:
    return a.shift_left(n)


def is_zero(a: Gf2Poly) -> bool:
    return a.is_zero()


def to_hex(a: Gf2Poly) -> str:
    return a.hex()


def from_hex(text: str) -> Gf2Poly:
    return Gf2Poly.from_hex(text)
