import os
import random
import subprocess
import sys
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gf2tri import mul as M
from gf2tri.mul import MulThresholds
from gf2tri.poly import WORD_BITS, Gf2Poly, clmul_int

BIG = 1 << 40
FORCE_K = MulThresholds(2, BIG, BIG)
FORCE_T = MulThresholds(2, 3, BIG)
ALL_FFT = MulThresholds(1, 1, 1)
P = Gf2Poly.from_exponents


def _pair(rng, bits):
    return rng.getrandbits(bits) | 1 << (bits - 1), rng.getrandbits(bits) | 1 << (bits - 1)


def test_small_examples():
    one = P([1, 0])
    for f in (M.mul_karatsuba, M.mul_toom3, M.mul_fft, M.mul):
        assert f(one, one) == P([2, 0])
        assert f(P([3, 1, 0]), P([3, 2, 0])) == P(range(7))
        assert f(P([40, 3]), Gf2Poly(0)) == Gf2Poly(0)
        assert f(P([40, 3]), Gf2Poly(1)) == P([40, 3])


def test_thresholds_invariant():
    M.MulThresholds(1, 1, 1)
    with pytest.raises(ValueError):
        M.MulThresholds(10, 5, 100)
    with pytest.raises(ValueError):
        M.MulThresholds(0, 5, 100)


def test_dispatch_below_karatsuba_is_classical():
    tr = Counter()
    a, b = _pair(random.Random(1), 5 * WORD_BITS)
    M.mul_int(a, b, M.DEFAULT_THRESHOLDS, tr)
    assert set(tr) == {"classical"} and tr["classical"] == 1


def test_dispatch_uses_each_rung():
    rng = random.Random(2)
    t = MulThresholds(4, 16, 64)
    for words, top in ((8, "karatsuba"), (40, "toom3"), (400, "fft")):
        a, b = _pair(rng, words * WORD_BITS)
        tr = Counter()
        assert M.mul_int(a, b, t, tr) == clmul_int(a, b)
        assert tr[top] >= 1, (words, tr)


@pytest.mark.parametrize("level", [M.KARATSUBA, M.TOOM3, M.FFT])
def test_straddling_thresholds(level):
    rng = random.Random(level)
    base = MulThresholds(6, 12, 24)
    thr = {M.KARATSUBA: base.karatsuba_min, M.TOOM3: base.toom3_min, M.FFT: base.fft_min}[level]
    for words in (thr - 1, thr, thr + 1):
        for _ in range(5):
            a, b = _pair(rng, words * WORD_BITS - rng.randrange(WORD_BITS))
            below = M._dispatch(a, b, base, level - 1, None)
            assert M._dispatch(a, b, base, level, None) == below == clmul_int(a, b)


def test_all_fft_stress():
    rng = random.Random(3)
    for bits in (2, 70, 500, 3000, 20000):
        for _ in range(4):
            a, b = _pair(rng, bits)
            assert M.mul_int(a, b, ALL_FFT) == clmul_int(a, b)


def test_unbalanced_operands():
    rng = random.Random(4)
    for na, nb in ((10000, 300), (50000, 4000), (3000, 64)):
        a, b = _pair(rng, na)[0], _pair(rng, nb)[0]
        for t in (M.DEFAULT_THRESHOLDS, FORCE_T, MulThresholds(2, 3, 5)):
            assert M.mul_int(a, b, t) == clmul_int(a, b)


def test_entry_points_agree_across_sizes():
    rng = random.Random(6)
    words = 1
    while words <= 1 << 12:
        bits = words * WORD_BITS - rng.randrange(WORD_BITS)
        a, b = _pair(rng, bits)
        want = clmul_int(a, b)
        A, B = Gf2Poly(a), Gf2Poly(b)
        for got in (M.mul(A, B), M.mul_karatsuba(A, B), M.mul_toom3(A, B), M.mul_fft(A, B)):
            assert got.value == want
        words *= 4


def test_fft_spec_sizes():
    rng = random.Random(7)
    for _ in range(3):
        a, b = _pair(rng, 1 << 16)
        tr = Counter()
        assert M.mul_fft(Gf2Poly(a), Gf2Poly(b), trace=tr).value == clmul_int(a, b)
        assert tr["fft"] == 1
    a, b = _pair(rng, 1 << 17)
    assert M.mul_fft(Gf2Poly(a), Gf2Poly(b)) == M.mul_karatsuba(Gf2Poly(a), Gf2Poly(b))


def test_fft_roundtrip():
    rng = random.Random(8)
    for L, n in ((3, 9), (9, 27), (27, 27), (81, 243)):
        ring = M._Ring(L)
        vals = [rng.getrandbits(2 * L) for _ in range(n)]
        assert M.fft_inverse(ring, M.fft_forward(ring, vals)) == vals


def test_fft_parameters_cover_product():
    for na, nb in ((100, 100), (1000, 37), (1 << 17, 1 << 17)):
        L, n = M.fft_parameters(na, nb)
        assert (3 * L) % n == 0
        assert n * L >= na + nb - 1


@settings(max_examples=200)
@given(st.integers(0, (1 << 3000) - 1), st.integers(0, (1 << 3000) - 1), st.integers(0, 500))
def test_commutative_and_shift(a, b, n):
    assert M.mul_int(a, b, FORCE_T) == M.mul_int(b, a, FORCE_T)
    assert M.mul_int(a, 1 << n, FORCE_K) == a << n


def test_tuning_file_roundtrip(tmp_path):
    t = MulThresholds(7, 33, 900)
    path = tmp_path / "tune.txt"
    M.write_tuning(path, t)
    assert path.read_text().splitlines() == ["karatsuba_min=7", "toom3_min=33", "fft_min=900"]
    assert M.read_tuning(path) == t
    assert M.load_thresholds(path) == t
    assert M.load_thresholds(tmp_path / "missing") == M.DEFAULT_THRESHOLDS


def test_tuning_env(tmp_path, monkeypatch):
    path = tmp_path / "env.txt"
    M.write_tuning(path, MulThresholds(3, 9, 27))
    monkeypatch.setenv(M.TUNING_ENV, str(path))
    assert M.load_thresholds() == MulThresholds(3, 9, 27)


def test_bad_tuning_file(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("karatsuba_min=7\nwhatever=3\n")
    with pytest.raises(ValueError):
        M.read_tuning(path)


def test_tune_thresholds_small():
    rep = M.tune_thresholds(1 << 12, samples=3)
    t = rep.thresholds
    assert 0 < t.karatsuba_min <= t.toom3_min <= t.fft_min
    assert rep.timings
    with pytest.raises(ValueError):
        M.tune_thresholds(100)


def test_32_bit_word_build():
    code = (
        "import random\n"
        "from gf2tri import mul as M, poly\n"
        "assert poly.WORD_BITS == 32\n"
        "rng = random.Random(9)\n"
        "t = M.MulThresholds(2, 3, 5)\n"
        "for bits in (40, 700, 5000):\n"
        "    a, b = rng.getrandbits(bits), rng.getrandbits(bits)\n"
        "    assert M.mul_int(a, b, t) == poly.clmul_int(a, b)\n"
        "assert poly.Gf2Poly(1 << 40 | 3).words() == (3, 256)\n"
    )
    env = dict(os.environ, GF2TRI_WORD_BITS="32")
    subprocess.run([sys.executable, "-c", code], check=True, env=env)
