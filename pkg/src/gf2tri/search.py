"""Batch search over all trinomials of one degree, with checkpointing,
smallest-factor statistics and cost measurement for the schedule.
"""

from __future__ import annotations

import logging
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Optional, Union

from .certificate import Certificate, Entry, EntryKind, atomic_write, read_certificate
from .ddf.engine import DEFAULT_K0, DEFAULT_M, DEFAULT_SEED, find_smallest_factor
from .mul import (TUNING_ENV, MulThresholds, load_thresholds, median_time,
                  tune_thresholds, write_tuning)
from .trinomial import ModContext, Trinomial

log = logging.getLogger(__name__)

M_MIN, M_MAX = 4, 40


@dataclass
class SearchConfig:
    r: int
    s_min: int = 1
    s_max: Optional[int] = None
    workers: int = 1
    m: Optional[int] = None
    k0: Optional[int] = None
    seed: int = DEFAULT_SEED
    certificate_path: Optional[Path] = None
    checkpoint_path: Optional[Path] = None
    tuning_path: Optional[Path] = None
    use_swan: bool = True

    def __post_init__(self) -> None:
        if self.r < 3:
            raise ValueError("r must be at least 3")
        if self.s_max is None:
            self.s_max = self.r // 2
        if not 1 <= self.s_min <= self.s_max <= self.r // 2:
            raise ValueError(f"s range [{self.s_min}, {self.s_max}] not inside [1, {self.r // 2}]")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        if self.certificate_path is not None:
            self.certificate_path = Path(self.certificate_path)
            if self.checkpoint_path is None:
                self.checkpoint_path = progress_path(self.certificate_path)
        if self.checkpoint_path is not None:
            self.checkpoint_path = Path(self.checkpoint_path)

    @property
    def s_range(self) -> range:
        return range(self.s_min, self.s_max + 1)


def progress_path(cert: Union[str, Path]) -> Path:
    cert = Path(cert)
    return cert.with_name(cert.name + ".progress")


def mersenne_class(r: int) -> bool:
    """r = +-1 mod 8.  For prime r = +-3 mod 8 only s = 2 or r - 2 can give an irreducible trinomial."""
    return r % 8 in (1, 7)


# -- one unit of work ----------------------------------------------------

def _solve(job: tuple) -> str:
    r, s, m, k0, seed, thresholds, use_swan = job
    if r % 2 == 0 and s % 2 == 0:
        return Entry.skipped_even(s).line()
    res = find_smallest_factor(Trinomial(r, s), m=m, k0=k0, seed=seed,
                               thresholds=thresholds, use_swan=use_swan)
    return Entry.from_result(s, res).line()


def _read_progress(path: Path) -> set[int]:
    done = set()
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.strip():
            done.add(int(line))
    return done


def _resume(cfg: SearchConfig) -> dict:
    """Entries from an earlier run that both the certificate and sidecar record."""
    cert_p, prog_p = cfg.certificate_path, cfg.checkpoint_path
    if cert_p is None or not cert_p.exists() or prog_p is None or not prog_p.exists():
        return {}
    cert = read_certificate(cert_p)
    if cert.r != cfg.r:
        raise ValueError(f"{cert_p} is for r={cert.r}, not r={cfg.r}")
    done = _read_progress(prog_p)
    kept = {e.s: e for e in cert.entries if e.s in done and e.s in cfg.s_range}
    if kept:
        log.info("resuming r=%d with %d entries already done", cfg.r, len(kept))
    return kept


def _checkpoint(cfg: SearchConfig, entries: dict) -> None:
    if cfg.certificate_path is None:
        return
    order = sorted(entries)
    cert = Certificate(cfg.r, [entries[s] for s in order])
    # certificate first: a crash in between only loses the newest entry
    atomic_write(cfg.certificate_path, cert.format())
    atomic_write(cfg.checkpoint_path, "".join(f"{s}\n" for s in order))


def resolve_m(cfg: SearchConfig) -> int:
    if cfg.m is not None:
        return cfg.m
    if cfg.tuning_path or os.environ.get(TUNING_ENV):
        return measure_costs(cfg.r, load_thresholds(cfg.tuning_path), samples=3).m
    return DEFAULT_M


def search(cfg: SearchConfig,
           on_entry: Optional[Callable[[Entry], None]] = None) -> tuple[Certificate, Optional["StatsReport"]]:
    """Run every s in the configured range; resumes from an existing checkpoint.

    Results are committed in s order whatever the completion order, so the
    certificate does not depend on the worker count.  ``on_entry`` is called
    after each committed entry.  The stats report is None unless the
    certificate covers all s.
    """
    if not mersenne_class(cfg.r):
        log.warning("r=%d is not +-1 mod 8; searching anyway", cfg.r)
    thresholds = load_thresholds(cfg.tuning_path)
    m = resolve_m(cfg)
    k0 = cfg.k0 if cfg.k0 is not None else DEFAULT_K0
    entries = _resume(cfg)
    todo = [s for s in cfg.s_range if s not in entries]
    jobs = [(cfg.r, s, m, k0, cfg.seed, thresholds, cfg.use_swan) for s in todo]

    def commit(line: str) -> None:
        e = Entry.parse(line)
        entries[e.s] = e
        _checkpoint(cfg, entries)
        if on_entry is not None:
            on_entry(e)

    if cfg.workers == 1 or len(jobs) < 2:
        for job in jobs:
            commit(_solve(job))
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            for line in pool.map(_solve, jobs, chunksize=1):
                commit(line)
    _checkpoint(cfg, entries)
    cert = Certificate(cfg.r, [entries[s] for s in sorted(entries)])
    return cert, (stats(cert) if cert.is_complete() else None)


# -- statistics ----------------------------------------------------------

@dataclass
class StatsReport:
    """Smallest-factor degrees over all trinomials x^r + x^s + 1, 0 < s < r.

    An entry with s < r/2 stands for itself and its reciprocal, so it has
    weight 2.  Squares (r and s even) are counted in ``skipped`` and left
    out of the survivor fractions.
    """
    r: int
    counts: dict = field(default_factory=dict)
    irreducible: int = 0
    skipped: int = 0

    @property
    def total(self) -> int:
        return sum(self.counts.values()) + self.irreducible + self.skipped

    @property
    def counted(self) -> int:
        return self.total - self.skipped

    def survivors(self, d: int) -> int:
        return self.counted - sum(c for e, c in self.counts.items() if e <= d)

    def pi(self, d: int) -> float:
        """Fraction with no nontrivial factor of degree <= d."""
        return self.survivors(d) / self.counted

    def d_pi(self, d: int) -> float:
        return d * self.pi(d)

    def table(self, ds: Iterable[int]) -> list[tuple[int, int, int, float, float]]:
        """(d, count with smallest degree d, survivors, pi_d, d pi_d) rows."""
        return [(d, self.counts.get(d, 0), self.survivors(d), self.pi(d), self.d_pi(d))
                for d in ds]

    def format(self, ds: Iterable[int]) -> str:
        lines = [f"r={self.r}  trinomials={self.total}  irreducible={self.irreducible}"
                 f"  skipped={self.skipped}",
                 f"{'d':>4} {'p_d':>8} {'left':>8} {'pi_d':>9} {'d*pi_d':>8}"]
        for d, c, left, pi, dpi in self.table(ds):
            lines.append(f"{d:>4} {c:>8} {left:>8} {pi:>9.5f} {dpi:>8.3f}")
        return "\n".join(lines)


def stats(cert: Certificate) -> StatsReport:
    if not cert.is_complete():
        raise ValueError(f"certificate for r={cert.r} does not cover every s in [1, {cert.r // 2}]")
    rep = StatsReport(cert.r)
    for e in cert.entries:
        w = 1 if 2 * e.s == cert.r else 2
        if e.kind is EntryKind.FACTOR:
            rep.counts[e.d] = rep.counts.get(e.d, 0) + w
        elif e.kind is EntryKind.IRREDUCIBLE:
            rep.irreducible += w
        else:
            rep.skipped += w
    return rep


# -- cost measurement ----------------------------------------------------

@dataclass
class TuneResult:
    m: int
    thresholds: MulThresholds
    S: float
    M: float
    G: float


def choose_m(S: float, M: float) -> int:
    """Nearest integer to sqrt(M/S), clamped to [4, 40]."""
    if S <= 0 or M <= 0:
        return DEFAULT_M
    return max(M_MIN, min(M_MAX, round(math.sqrt(M / S))))


def measure_costs(r: int, thresholds: Optional[MulThresholds] = None, samples: int = 5,
                  seed: int = 0, with_gcd: bool = False) -> TuneResult:
    """Median times of a modular square, product and (optionally) gcd at degree r."""
    t = Trinomial(r, 1)
    ctx = ModContext(t, thresholds)
    rng = random.Random(seed)
    a, b = rng.getrandbits(r), rng.getrandbits(r)
    S = median_time(lambda: ctx.sqr(a), samples)
    M = median_time(lambda: ctx.mul(a, b), samples)
    G = median_time(lambda: ctx.gcd(a), min(samples, 3)) if with_gcd else float("nan")
    return TuneResult(choose_m(S, M), thresholds or load_thresholds(), S, M, G)


def tune(r: int, tuning_path: Union[str, Path, None] = None, samples: int = 5,
         seed: int = 0) -> TuneResult:
    """Tune multiplication thresholds up to degree r, then measure S, M, G there.

    The thresholds go to ``tuning_path`` (or $GF2TRI_TUNING) when one is set.
    """
    if r < 2 ** 10:
        raise ValueError("tuning needs r >= 2^10")
    thresholds = tune_thresholds(r, seed=seed, samples=samples).thresholds
    path = tuning_path or os.environ.get(TUNING_ENV)
    if path:
        write_tuning(path, thresholds)
    return measure_costs(r, thresholds, samples, seed, with_gcd=True)
