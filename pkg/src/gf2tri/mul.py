"""Subquadratic multiplication in GF(2)[x].

Ladder: classical -> Karatsuba -> Toom-Cook 3-way -> Schoenhage's ternary
FFT, selected by the word length of the smaller operand.  Every algorithm
recurses through the same dispatcher, capped at its own rung, so
``mul_toom3`` never silently turns into an FFT product.

Schoenhage's construction works in R_L = GF(2)[x]/(x^{2L} + x^L + 1) with
L = 3^k.  That modulus is the cyclotomic polynomial of order 3L, which is
irreducible over GF(2) because 2 generates (Z/3^{k+1})^*.  Hence R_L is a
field in which x has order exactly 3L, and a DFT of any length n = 3^q
dividing 3L uses powers of x as twiddle factors: multiplying by a twiddle is
a cyclic shift.  n is odd, so the 1/n of the inverse transform is 1.
"""

from __future__ import annotations

import logging
import math
import os
import random
import statistics
import time
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Union

from .poly import WORD_BITS, Gf2Poly, _val, clmul_int, div_x1_int

log = logging.getLogger(__name__)

CLASSICAL, KARATSUBA, TOOM3, FFT = 0, 1, 2, 3
_NAMES = ("classical", "karatsuba", "toom3", "fft")

TUNING_ENV = "GF2TRI_TUNING"


@dataclass(frozen=True)
class MulThresholds:
    """Operand sizes, in words, at which each algorithm takes over."""

    karatsuba_min: int = 10
    toom3_min: int = 64
    fft_min: int = 2500

    def __post_init__(self) -> None:
        if not 0 < self.karatsuba_min <= self.toom3_min <= self.fft_min:
            raise ValueError(
                "thresholds must satisfy 0 < karatsuba_min <= toom3_min <= fft_min, "
                f"got {self.karatsuba_min}, {self.toom3_min}, {self.fft_min}"
            )


DEFAULT_THRESHOLDS = MulThresholds()


def _words(a: int) -> int:
    return (a.bit_length() + WORD_BITS - 1) // WORD_BITS


# ---------------------------------------------------------------------------
# dispatcher
# ---------------------------------------------------------------------------

def _dispatch(a: int, b: int, t: MulThresholds, cap: int, trace: Optional[Counter]) -> int:
    na, nb = _words(a), _words(b)
    if na < nb:
        a, b, na, nb = b, a, nb, na
    if nb == 0:
        return 0
    if nb < 2 or nb < t.karatsuba_min or cap == CLASSICAL:
        if trace is not None:
            trace["classical"] += 1
        return clmul_int(a, b)
    if 2 * nb <= na:
        return _unbalanced(a, b, nb, t, cap, trace)
    if cap >= FFT and nb >= t.fft_min:
        c = _fft_mul(a, b, t, trace)
        if c is not None:
            return c
    if cap >= TOOM3 and nb >= t.toom3_min and nb >= 3:
        return _toom3(a, b, na, t, cap, trace)
    return _karatsuba(a, b, na, t, cap, trace)


def _unbalanced(a: int, b: int, nb: int, t, cap, trace) -> int:
    # Cut the long operand into pieces the size of the short one.
    bits = nb * WORD_BITS
    mask = (1 << bits) - 1
    c = 0
    sh = 0
    while a:
        piece = a & mask
        if piece:
            c ^= _dispatch(piece, b, t, cap, trace) << sh
        a >>= bits
        sh += bits
    return c


def _karatsuba(a: int, b: int, na: int, t, cap, trace) -> int:
    if trace is not None:
        trace["karatsuba"] += 1
    h = ((na + 1) >> 1) * WORD_BITS
    mask = (1 << h) - 1
    a0, a1 = a & mask, a >> h
    b0, b1 = b & mask, b >> h
    lo = _dispatch(a0, b0, t, cap, trace)
    hi = _dispatch(a1, b1, t, cap, trace)
    mid = _dispatch(a0 ^ a1, b0 ^ b1, t, cap, trace) ^ lo ^ hi
    return lo ^ (mid << h) ^ (hi << (2 * h))


def _toom3(a: int, b: int, na: int, t, cap, trace) -> int:
    if trace is not None:
        trace["toom3"] += 1
    k = ((na + 2) // 3) * WORD_BITS
    mask = (1 << k) - 1
    a0, a1, a2 = a & mask, (a >> k) & mask, a >> (2 * k)
    b0, b1, b2 = b & mask, (b >> k) & mask, b >> (2 * k)

    # evaluate at 0, 1, x, x + 1, infinity
    ea = (a1 << 1) ^ (a2 << 2)
    eb = (b1 << 1) ^ (b2 << 2)
    sa1 = a0 ^ a1 ^ a2
    sb1 = b0 ^ b1 ^ b2
    w0 = _dispatch(a0, b0, t, cap, trace)
    w1 = _dispatch(sa1, sb1, t, cap, trace)
    wx = _dispatch(a0 ^ ea, b0 ^ eb, t, cap, trace)
    wx1 = _dispatch(sa1 ^ ea, sb1 ^ eb, t, cap, trace)
    winf = _dispatch(a2, b2, t, cap, trace)

    # interpolate; divisions by x and x + 1 are exact
    c4s = winf << 4
    u = (wx ^ w0 ^ c4s) >> 1            # c1 + c2 x + c3 x^2
    v = div_x1_int(wx1 ^ w0 ^ c4s ^ winf)  # T + c2 x + c3 x^2
    tt = w1 ^ w0 ^ winf                 # T = c1 + c2 + c3
    c1 = u ^ v ^ tt
    w = (v ^ tt) >> 1                   # c2 + c3 x
    c3 = div_x1_int(w ^ tt ^ c1)
    c2 = tt ^ c1 ^ c3
    return w0 ^ (c1 << k) ^ (c2 << (2 * k)) ^ (c3 << (3 * k)) ^ (winf << (4 * k))


# ---------------------------------------------------------------------------
# Schoenhage ternary FFT
# ---------------------------------------------------------------------------

class _Ring:
    """Arithmetic in GF(2)[x]/(x^{2L} + x^L + 1), elements as ints < 2^{2L}."""

    __slots__ = ("L", "L2", "L3", "m2", "m3")

    def __init__(self, L: int) -> None:
        self.L = L
        self.L2 = 2 * L
        self.L3 = 3 * L
        self.m2 = (1 << self.L2) - 1
        self.m3 = (1 << self.L3) - 1

    def reduce(self, a: int) -> int:
        L3, m3 = self.L3, self.m3
        # x^{3L} = 1
        while a >> L3:
            a = (a & m3) ^ (a >> L3)
        # x^{2L} = x^L + 1
        h = a >> self.L2
        return (a & self.m2) ^ h ^ (h << self.L)

    def mulx(self, a: int, e: int) -> int:
        """a * x^e for 0 <= e < 3L."""
        if not e or not a:
            return a
        a <<= e
        a = (a & self.m3) ^ (a >> self.L3)
        h = a >> self.L2
        return (a & self.m2) ^ h ^ (h << self.L)


def _dft(ring: _Ring, vals: list, e: int) -> list:
    """Radix-3 decimation-in-time DFT with root x^e of order len(vals)."""
    n = len(vals)
    if n == 1:
        return list(vals)
    L3 = ring.L3
    e3 = (3 * e) % L3
    f0 = _dft(ring, vals[0::3], e3)
    f1 = _dft(ring, vals[1::3], e3)
    f2 = _dft(ring, vals[2::3], e3)
    n3 = n // 3
    cube = (e * n3) % L3  # exponent of the primitive cube root, L or 2L
    mulx = ring.mulx
    out = [0] * n
    for j in range(n3):
        t1 = mulx(f1[j], (j * e) % L3)
        t2 = mulx(f2[j], (2 * j * e) % L3)
        u1 = mulx(t1, cube)
        u2 = mulx(t2, cube)
        x0 = f0[j]
        # w^2 = 1 + w for a primitive cube root w in characteristic 2
        out[j] = x0 ^ t1 ^ t2
        out[j + n3] = x0 ^ u1 ^ t2 ^ u2
        out[j + 2 * n3] = x0 ^ t1 ^ u1 ^ u2
    return out


def fft_forward(ring: _Ring, vals: list) -> list:
    n = len(vals)
    return _dft(ring, vals, ring.L3 // n)


def fft_inverse(ring: _Ring, vals: list) -> list:
    n = len(vals)
    return _dft(ring, vals, ring.L3 - ring.L3 // n)


def fft_parameters(na_bits: int, nb_bits: int) -> Optional[tuple[int, int]]:
    """Smallest (L, n) with L = 3^k, n = 3^q | 3L and enough slots for the product."""
    k = 1
    while True:
        L = 3 ** k
        chunks = -(-na_bits // L) + -(-nb_bits // L) - 1
        q = 0
        while 3 ** q < chunks:
            q += 1
        if q <= k + 1:
            return L, 3 ** q
        k += 1


def _split(a: int, L: int, n: int) -> list:
    if not a:
        return [0] * n
    bits = format(a, "b")
    out = []
    end = len(bits)
    while end > 0:
        out.append(int(bits[max(0, end - L):end], 2))
        end -= L
    out.extend([0] * (n - len(out)))
    return out


def _join(coeffs: list, L: int) -> int:
    # Coefficients have < 2L bits; even and odd slots each tile without overlap.
    w = 2 * L
    fmt = f"0{w}b"
    even = "".join(format(c, fmt) for c in reversed(coeffs[0::2]))
    odd = "".join(format(c, fmt) for c in reversed(coeffs[1::2]))
    return (int(even or "0", 2)) ^ (int(odd or "0", 2) << L)


def _fft_mul(a: int, b: int, t: MulThresholds, trace) -> Optional[int]:
    na, nb = a.bit_length(), b.bit_length()
    L, n = fft_parameters(na, nb)
    if 2 * L >= min(na, nb):
        return None  # pointwise products would not be smaller than the input
    if trace is not None:
        trace["fft"] += 1
    ring = _Ring(L)
    fa = fft_forward(ring, _split(a, L, n))
    fb = fa if a == b else fft_forward(ring, _split(b, L, n))
    prod = [ring.reduce(_dispatch(x, y, t, FFT, trace)) for x, y in zip(fa, fb)]
    coeffs = fft_inverse(ring, prod)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return _join(coeffs, L)


# ---------------------------------------------------------------------------
# public entry points
# ---------------------------------------------------------------------------

def mul_int(a: int, b: int, t: Optional[MulThresholds] = None, trace: Optional[Counter] = None) -> int:
    return _dispatch(a, b, t or DEFAULT_THRESHOLDS, FFT, trace)


def mul(a: Gf2Poly, b: Gf2Poly, t: Optional[MulThresholds] = None,
        trace: Optional[Counter] = None) -> Gf2Poly:
    """Product a*b using the algorithm ladder selected by ``t``.

    ``trace`` (a Counter) records every dispatch decision by algorithm name.
    """
    return Gf2Poly(mul_int(_val(a), _val(b), t, trace))


def mul_karatsuba(a: Gf2Poly, b: Gf2Poly, t: Optional[MulThresholds] = None,
                  trace: Optional[Counter] = None) -> Gf2Poly:
    return Gf2Poly(_dispatch(_val(a), _val(b), t or DEFAULT_THRESHOLDS, KARATSUBA, trace))


def mul_toom3(a: Gf2Poly, b: Gf2Poly, t: Optional[MulThresholds] = None,
              trace: Optional[Counter] = None) -> Gf2Poly:
    return Gf2Poly(_dispatch(_val(a), _val(b), t or DEFAULT_THRESHOLDS, TOOM3, trace))


def mul_fft(a: Gf2Poly, b: Gf2Poly, t: Optional[MulThresholds] = None,
            trace: Optional[Counter] = None) -> Gf2Poly:
    """Product with one top-level ternary FFT step regardless of size.

    Pointwise products go back through the dispatcher with thresholds ``t``.
    Operands too small for the transform to shrink them use the lower rungs.
    """
    t = t or DEFAULT_THRESHOLDS
    x, y = _val(a), _val(b)
    if x and y:
        c = _fft_mul(x, y, t, trace)
        if c is not None:
            return Gf2Poly(c)
    return Gf2Poly(_dispatch(x, y, t, TOOM3, trace))


def top_level(algorithm: int, a: int, b: int, t: MulThresholds) -> int:
    """One step of ``algorithm`` on (a, b) with sub-products dispatched below it.

    Used by the tuner to time an algorithm at a given size.
    """
    na = max(_words(a), _words(b))
    if algorithm == CLASSICAL:
        return clmul_int(a, b)
    if algorithm == KARATSUBA:
        return _karatsuba(a, b, na, t, KARATSUBA, None)
    if algorithm == TOOM3:
        return _toom3(a, b, na, t, TOOM3, None)
    c = _fft_mul(a, b, t, None)
    return c if c is not None else _dispatch(a, b, t, TOOM3, None)


# ---------------------------------------------------------------------------
# tuning
# ---------------------------------------------------------------------------

def median_time(fn: Callable[[], object], samples: int = 5) -> float:
    fn()  # warmup
    times = []
    for _ in range(samples):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


@dataclass
class TuningReport:
    thresholds: MulThresholds
    # grid size in words -> {"classical"|"karatsuba"|"toom3"|"fft"|"dispatch": seconds}
    timings: dict = field(default_factory=dict)

    def worst_dispatch_ratio(self) -> float:
        worst = 0.0
        for row in self.timings.values():
            best = min(v for k, v in row.items() if k != "dispatch")
            worst = max(worst, row["dispatch"] / best)
        return worst


def _grid(max_words: int) -> list[int]:
    sizes = []
    w = 2
    while w <= max_words:
        sizes.append(w)
        w = int(math.ceil(w * 1.5))
    return sizes


def _crossover(grid: list[int], slow: dict, fast: dict) -> Optional[int]:
    """First grid size from which ``fast`` is never slower than ``slow``."""
    best = None
    for w in reversed(grid):
        if w not in fast or w not in slow:
            continue
        if fast[w] <= slow[w]:
            best = w
        else:
            break
    return best


def tune_thresholds(max_degree: int, seed: int = 0, samples: int = 5,
                    classical_limit: int = 512) -> TuningReport:
    """Measure the ladder on random operands and pick the cheapest switchovers.

    Falls back to the compiled defaults if timing fails.
    """
    if max_degree < 2 ** 10:
        raise ValueError("max_degree must be at least 2^10")
    try:
        return _tune(max_degree, seed, samples, classical_limit)
    except (OSError, ArithmeticError, ValueError) as exc:  # timer trouble
        log.warning("tuning failed (%s); using defaults", exc)
        return TuningReport(DEFAULT_THRESHOLDS)


def _tune(max_degree: int, seed: int, samples: int, classical_limit: int) -> TuningReport:
    rng = random.Random(seed)
    grid = _grid((max_degree + 1 + WORD_BITS - 1) // WORD_BITS)
    ops = {w: (rng.getrandbits(w * WORD_BITS) | 1 << (w * WORD_BITS - 1),
               rng.getrandbits(w * WORD_BITS) | 1 << (w * WORD_BITS - 1)) for w in grid}
    unlimited = 1 << 60

    def ladder(tk, tt, tf):
        return MulThresholds(tk, max(tk, tt), max(tk, tt, tf))

    single: dict = {name: {} for name in _NAMES}
    # classical vs one Karatsuba step over classical
    k_only = ladder(unlimited, unlimited, unlimited)
    for w in grid:
        if w > classical_limit:
            break
        a, b = ops[w]
        single["classical"][w] = median_time(lambda: clmul_int(a, b), samples)
        single["karatsuba"][w] = median_time(
            lambda: top_level(KARATSUBA, a, b, k_only), samples)
    kmin = _crossover(grid, single["classical"], single["karatsuba"]) or grid[-1] + 1

    # Karatsuba ladder vs one Toom-3 step over it
    kt = ladder(kmin, unlimited, unlimited)
    for w in grid:
        if w < 3:
            continue
        a, b = ops[w]
        single["karatsuba"][w] = median_time(lambda: _dispatch(a, b, kt, KARATSUBA, None), samples)
        single["toom3"][w] = median_time(lambda: top_level(TOOM3, a, b, kt), samples)
    tmin = _crossover(grid, single["karatsuba"], single["toom3"]) or grid[-1] + 1
    tmin = max(tmin, kmin)

    # Toom-3 ladder vs one FFT step over it
    tt = ladder(kmin, tmin, unlimited)
    for w in grid:
        a, b = ops[w]
        single["toom3"][w] = median_time(lambda: _dispatch(a, b, tt, TOOM3, None), samples)
        single["fft"][w] = median_time(lambda: top_level(FFT, a, b, tt), samples)
    fmin = _crossover(grid, single["toom3"], single["fft"]) or grid[-1] + 1
    fmin = max(fmin, tmin)

    tuned = MulThresholds(kmin, tmin, fmin)
    report = TuningReport(tuned)
    for w in grid:
        a, b = ops[w]
        row = {name: single[name][w] for name in _NAMES if w in single[name]}
        row["dispatch"] = median_time(lambda: mul_int(a, b, tuned), samples)
        report.timings[w] = row
    return report


# ---------------------------------------------------------------------------
# tuning file
# ---------------------------------------------------------------------------

def write_tuning(path: Union[str, Path], t: MulThresholds) -> None:
    text = f"karatsuba_min={t.karatsuba_min}\ntoom3_min={t.toom3_min}\nfft_min={t.fft_min}\n"
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def read_tuning(path: Union[str, Path]) -> MulThresholds:
    values = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        if not sep or key not in ("karatsuba_min", "toom3_min", "fft_min"):
            raise ValueError(f"{path}:{lineno}: unexpected line {line!r}")
        values[key] = int(val)
    if len(values) != 3:
        raise ValueError(f"{path}: expected karatsuba_min, toom3_min and fft_min")
    return MulThresholds(**values)


def load_thresholds(path: Union[str, Path, None] = None) -> MulThresholds:
    """Thresholds from ``path``, else from $GF2TRI_TUNING, else the defaults."""
    path = path or os.environ.get(TUNING_ENV)
    if path and Path(path).exists():
        return read_tuning(path)
    return DEFAULT_THRESHOLDS
