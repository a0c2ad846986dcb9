"""Equal-degree splitting (Cantor-Zassenhaus, characteristic 2).

For g a product of distinct irreducibles of degree d, the trace
T(u) = u + u^2 + ... + u^(2^(d-1)) mod g lands in GF(2) modulo every factor,
so gcd(T(u), g) picks out a random subset of the factors.
"""

from __future__ import annotations

import random
from typing import Optional, Union

from ..gcd import gcd_euclid_int
from ..poly import Gf2Poly, _val, divmod_int, mod_int, sqr_int


def _trace(u: int, d: int, g: int) -> int:
    acc = u
    for _ in range(d - 1):
        u = mod_int(sqr_int(u), g)
        acc ^= u
    return acc


def split_int(g: int, d: int, rng: random.Random) -> list[int]:
    n = g.bit_length() - 1
    if d <= 0 or n <= 0 or n % d:
        raise ValueError(f"degree {n} is not a positive multiple of {d}")
    out = []
    stack = [g]
    while stack:
        h = stack.pop()
        k = h.bit_length() - 1
        if k == d:
            out.append(h)
            continue
        while True:
            u = rng.getrandbits(k)
            if u < 2:
                continue
            f = gcd_euclid_int(h, _trace(u, d, h))
            fd = f.bit_length() - 1
            if 0 < fd < k:
                break
        if fd % d:
            raise ValueError("input is not a product of degree-d irreducibles")
        q, rem = divmod_int(h, f)
        assert rem == 0
        stack.extend((f, q))
    return sorted(out)


def equal_degree_split(g: Gf2Poly, d: int,
                       rng: Optional[Union[random.Random, int]] = None) -> list[Gf2Poly]:
    """All irreducible factors of g, sorted ascending (x^0 least significant).

    ``rng`` is a Random instance or a seed; the output does not depend on it.
    """
    if not isinstance(rng, random.Random):
        rng = random.Random(0 if rng is None else rng)
    return [Gf2Poly(f) for f in split_int(_val(g), d, rng)]
