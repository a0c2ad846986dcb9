"""Reducibility certificates: one verdict per trinomial x^r + x^s + 1.

File format (UTF-8, LF line endings)::

    trinomial-certificate v1 r=<r>
    <s> <d> <factor hex>
    <s> irreducible
    <s> skipped-even

Factor hex is the Gf2Poly serialization (bit i is the coefficient of x^i).
Verification checks each claimed factor independently of the search engine;
strict mode additionally re-runs the engine to confirm minimality.
"""

from __future__ import annotations

import enum
import io
import os
import re
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, TextIO, Union

from .ddf.engine import DEFAULT_SEED, FactorResult, Verdict, find_smallest_factor
from .gcd import gcd_euclid_int
from .poly import Gf2Poly, clmul_int, mod_int
from .trinomial import Trinomial

HEADER = "trinomial-certificate v1 r={r}"
_HEADER_RE = re.compile(r"trinomial-certificate v1 r=([1-9][0-9]*)")
_FACTOR_RE = re.compile(r"([1-9][0-9]*) ([1-9][0-9]*) ([1-9a-f][0-9a-f]*)")
_WORD_RE = re.compile(r"([1-9][0-9]*) (irreducible|skipped-even)")


class CertificateFormatError(ValueError):
    """Malformed certificate text."""


class EntryKind(enum.Enum):
    FACTOR = "factor"
    IRREDUCIBLE = "irreducible"
    SKIPPED_EVEN = "skipped-even"


@dataclass(frozen=True)
class Entry:
    s: int
    kind: EntryKind
    d: Optional[int] = None
    factor: Optional[Gf2Poly] = None

    @classmethod
    def irreducible(cls, s: int) -> "Entry":
        return cls(s, EntryKind.IRREDUCIBLE)

    @classmethod
    def skipped_even(cls, s: int) -> "Entry":
        return cls(s, EntryKind.SKIPPED_EVEN)

    @classmethod
    def with_factor(cls, s: int, d: int, factor: Gf2Poly) -> "Entry":
        return cls(s, EntryKind.FACTOR, d, factor)

    @classmethod
    def from_result(cls, s: int, res: FactorResult) -> "Entry":
        if res.verdict is Verdict.IRREDUCIBLE:
            return cls.irreducible(s)
        return cls.with_factor(s, res.d, res.factor)

    def line(self) -> str:
        if self.kind is EntryKind.FACTOR:
            return f"{self.s} {self.d} {self.factor.hex()}"
        return f"{self.s} {self.kind.value}"

    @classmethod
    def parse(cls, text: str) -> "Entry":
        mt = _FACTOR_RE.fullmatch(text)
        if mt:
            return cls.with_factor(int(mt[1]), int(mt[2]), Gf2Poly.from_hex(mt[3]))
        mt = _WORD_RE.fullmatch(text)
        if mt:
            return cls(int(mt[1]), EntryKind(mt[2]))
        raise CertificateFormatError(f"unrecognized entry line {text!r}")


@dataclass
class Certificate:
    r: int
    entries: list = field(default_factory=list)

    def structural_errors(self) -> list[str]:
        errs = []
        prev = 0
        for e in self.entries:
            if not 0 < e.s <= self.r // 2:
                errs.append(f"s={e.s} outside (0, {self.r // 2}]")
            if e.s <= prev:
                errs.append(f"s={e.s} out of order or repeated")
            prev = max(prev, e.s)
        return errs

    def is_complete(self) -> bool:
        return [e.s for e in self.entries] == list(range(1, self.r // 2 + 1))

    def by_s(self) -> dict:
        return {e.s: e for e in self.entries}

    def format(self) -> str:
        lines = [HEADER.format(r=self.r)] + [e.line() for e in self.entries]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "Certificate":
        if not text.endswith("\n"):
            raise CertificateFormatError("certificate must end with a newline")
        lines = text[:-1].split("\n")
        mt = _HEADER_RE.fullmatch(lines[0])
        if not mt:
            raise CertificateFormatError(f"bad header {lines[0]!r}")
        return cls(int(mt[1]), [Entry.parse(ln) for ln in lines[1:]])


def write_certificate(c: Certificate, dest: Union[str, Path, TextIO]) -> None:
    """Write ``c``; a path is replaced atomically through a temporary file."""
    text = c.format()
    if isinstance(dest, io.TextIOBase):
        dest.write(text)
        return
    atomic_write(Path(dest), text)


def atomic_write(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
            fh.flush()
            os.fsync(fh.fileno())
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_certificate(src: Union[str, Path, TextIO]) -> Certificate:
    if isinstance(src, io.TextIOBase):
        return Certificate.parse(src.read())
    with open(src, encoding="utf-8", newline="") as fh:
        return Certificate.parse(fh.read())


# -- verification --------------------------------------------------------

def _powx_mod(e: int, f: int) -> int:
    """x^e mod f by square-and-multiply."""
    acc = 1
    for bit in bin(e)[2:]:
        acc = mod_int(clmul_int(acc, acc), f)
        if bit == "1":
            acc = mod_int(acc << 1, f)
    return acc


def divides_trinomial(f: int, r: int, s: int) -> bool:
    """Whether f divides x^r + x^s + 1, without building the dense trinomial."""
    if f.bit_length() < 2:
        return f == 1
    return (_powx_mod(r, f) ^ _powx_mod(s, f) ^ 1) == 0


def is_irreducible(f: int) -> bool:
    """Ben-Or test: gcd(x^(2^i) + x, f) = 1 for i <= deg(f)/2."""
    n = f.bit_length() - 1
    if n < 1:
        return False
    if n == 1:
        return True
    X = 2
    for _ in range(n // 2):
        X = mod_int(clmul_int(X, X), f)
        if gcd_euclid_int(f, X ^ 2) != 1:
            return False
    return True


@dataclass
class VerificationReport:
    r: int
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, s: Optional[int], reason: str) -> None:
        self.failures.append((s, reason))

    def lines(self) -> list[str]:
        out = [f"r={self.r}: {self.checked} entries checked, {len(self.failures)} failures"]
        out += [f"  s={'-' if s is None else s}: {why}" for s, why in self.failures]
        return out


def verify_entry(r: int, e: Entry, strict: bool = False, seed: int = DEFAULT_SEED) -> list[str]:
    """Reasons the entry fails (empty if it passes)."""
    if not 0 < e.s < r:
        return [f"s={e.s} is not between 0 and r"]
    if e.kind is EntryKind.SKIPPED_EVEN:
        return [] if r % 2 == 0 and e.s % 2 == 0 else ["skipped-even on a trinomial that is not a square"]
    if r % 2 == 0 and e.s % 2 == 0:
        return ["trinomial is a square and should be skipped-even"]
    t = Trinomial(r, e.s)
    if e.kind is EntryKind.FACTOR:
        f = e.factor.value
        if e.factor.degree != e.d:
            return [f"factor has degree {e.factor.degree}, line says {e.d}"]
        if not 0 < e.d < r:
            return [f"degree {e.d} is not a proper factor degree"]
        if not divides_trinomial(f, r, e.s):
            return ["factor does not divide the trinomial"]
        if not is_irreducible(f):
            return ["factor is reducible"]
    if strict:
        got = Entry.from_result(e.s, find_smallest_factor(t, seed=seed))
        if got != e:
            return [f"engine reports {got.line()!r}"]
    return []


def verify_certificate(c: Certificate, strict: bool = False, seed: int = DEFAULT_SEED,
                       entries: Optional[Iterable[Entry]] = None) -> VerificationReport:
    """Check every entry; see the module docstring for what each mode proves."""
    rep = VerificationReport(c.r)
    for msg in c.structural_errors():
        rep.fail(None, msg)
    for e in (c.entries if entries is None else entries):
        rep.checked += 1
        for why in verify_entry(c.r, e, strict, seed):
            rep.fail(e.s, why)
    return rep
