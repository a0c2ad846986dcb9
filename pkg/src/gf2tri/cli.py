"""Command line: gf2tri {search,verify,stats,tune,bench,oracle}."""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from .certificate import (Certificate, CertificateFormatError, Entry, read_certificate,
                          verify_certificate, write_certificate)
from .ddf.engine import DEFAULT_SEED
from .ddf.oracle import naive_ddf_oracle
from .mul import load_thresholds
from .search import SearchConfig, measure_costs, search, stats, tune
from .trinomial import Trinomial

log = logging.getLogger("gf2tri")


def _range_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--r", type=int, required=True, help="trinomial degree")
    p.add_argument("--s-min", type=int, default=1)
    p.add_argument("--s-max", type=int, default=None, help="default r/2")


def _ds(text: str) -> list[int]:
    lo, sep, hi = text.partition("..")
    return list(range(int(lo), int(hi) + 1)) if sep else [int(x) for x in text.split(",")]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gf2tri", description="Smallest factors and irreducibility of x^r + x^s + 1 over GF(2).")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("search", help="run the engine over a range of s")
    _range_args(p)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--m", type=int, default=None, help="inner block length (default: tuned, else 20)")
    p.add_argument("--k0", type=int, default=None, help="outer growth coefficient (default 1)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--cert", type=Path, default=None, help="certificate file, also the checkpoint")
    p.add_argument("--tuning", type=Path, default=None)
    p.add_argument("--no-swan", action="store_true", help="always test degrees up to r/2")
    p.add_argument("--stats", type=_ds, default=None, metavar="D",
                   help="print d*pi_d for these d (e.g. 2..10) when the search is complete")

    p = sub.add_parser("verify", help="check a certificate")
    p.add_argument("--cert", type=Path, required=True)
    p.add_argument("--strict", action="store_true", help="also re-run the engine on every entry")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("stats", help="smallest-factor statistics of a complete certificate")
    p.add_argument("--cert", type=Path, required=True)
    p.add_argument("--d", type=_ds, default=list(range(1, 11)), help="degrees, e.g. 2..10 or 2,4,8")

    p = sub.add_parser("tune", help="tune multiplication thresholds and pick m for degree r")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--tuning", type=Path, default=None)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("bench", help="time a modular square, product and gcd at degree r")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--tuning", type=Path, default=None)
    p.add_argument("--no-gcd", action="store_true")

    p = sub.add_parser("oracle", help="naive per-degree search (slow, for cross-checks)")
    _range_args(p)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--cert", type=Path, default=None, help="write a certificate here")
    return parser


def _print_entries(cert: Certificate) -> None:
    irr = [e.s for e in cert.entries if e.kind.value == "irreducible"]
    print(f"r={cert.r}: {len(cert.entries)} entries, irreducible s = {irr}")


def cmd_search(a) -> int:
    cfg = SearchConfig(a.r, a.s_min, a.s_max, a.workers, a.m, a.k0, a.seed,
                       certificate_path=a.cert, tuning_path=a.tuning, use_swan=not a.no_swan)
    t0 = time.perf_counter()
    cert, rep = search(cfg)
    _print_entries(cert)
    log.info("search took %.2f s", time.perf_counter() - t0)
    if a.stats and rep is not None:
        print(rep.format(a.stats))
    return 0


def cmd_verify(a) -> int:
    try:
        cert = read_certificate(a.cert)
    except (OSError, CertificateFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    rep = verify_certificate(cert, strict=a.strict, seed=a.seed)
    print("\n".join(rep.lines()))
    return 0 if rep.ok else 1


def cmd_stats(a) -> int:
    try:
        rep = stats(read_certificate(a.cert))
    except (OSError, CertificateFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(rep.format(a.d))
    return 0


def _print_costs(res) -> None:
    print(f"S={res.S:.6g}s  M={res.M:.6g}s  G={res.G:.6g}s  M/S={res.M / res.S:.1f}  m={res.m}")


def cmd_tune(a) -> int:
    res = tune(a.r, a.tuning, seed=a.seed)
    t = res.thresholds
    print(f"karatsuba_min={t.karatsuba_min} toom3_min={t.toom3_min} fft_min={t.fft_min}")
    _print_costs(res)
    return 0


def cmd_bench(a) -> int:
    _print_costs(measure_costs(a.r, load_thresholds(a.tuning), with_gcd=not a.no_gcd))
    return 0


def cmd_oracle(a) -> int:
    hi = a.r // 2 if a.s_max is None else a.s_max
    entries = []
    for s in range(a.s_min, hi + 1):
        if a.r % 2 == 0 and s % 2 == 0:
            entries.append(Entry.skipped_even(s))
        else:
            entries.append(Entry.from_result(s, naive_ddf_oracle(Trinomial(a.r, s), a.seed)))
    cert = Certificate(a.r, entries)
    if a.cert is not None:
        write_certificate(cert, a.cert)
    _print_entries(cert)
    return 0


COMMANDS = {"search": cmd_search, "verify": cmd_verify, "stats": cmd_stats,
            "tune": cmd_tune, "bench": cmd_bench, "oracle": cmd_oracle}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
