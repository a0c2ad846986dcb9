import math
import subprocess
import sys
from pathlib import Path

import pytest

from gf2tri.certificate import EntryKind, read_certificate
from gf2tri.cli import main
from gf2tri.mul import MulThresholds, read_tuning, write_tuning
from gf2tri.search import (SearchConfig, choose_m, measure_costs, progress_path, search, stats,
                           tune)

GOLDEN = Path(__file__).parent / "golden"


class Stop(Exception):
    pass


def test_config_validation(tmp_path):
    cfg = SearchConfig(31, certificate_path=tmp_path / "c.txt")
    assert cfg.s_range == range(1, 16)
    assert cfg.checkpoint_path == tmp_path / "c.txt.progress"
    for bad in (dict(s_min=0), dict(s_max=16), dict(s_min=9, s_max=8), dict(workers=0)):
        with pytest.raises(ValueError):
            SearchConfig(31, **bad)


def test_r31_search():
    cert, rep = search(SearchConfig(31))
    irr = [e.s for e in cert.entries if e.kind is EntryKind.IRREDUCIBLE]
    assert irr == [3, 6, 7, 13]
    assert rep.total == 30


def test_partial_range_has_no_stats():
    cert, rep = search(SearchConfig(127, s_min=10, s_max=20))
    assert [e.s for e in cert.entries] == list(range(10, 21))
    assert rep is None
    with pytest.raises(ValueError):
        stats(cert)


def test_even_degree_skips_squares():
    cert, rep = search(SearchConfig(30))
    kinds = {e.s: e.kind for e in cert.entries}
    assert all(kinds[s] is EntryKind.SKIPPED_EVEN for s in range(2, 16, 2))
    assert rep.skipped == 2 * 7  # s = 2, 4, ..., 14, each with its reciprocal
    assert rep.total == 29


def test_stats_conservation_and_monotone():
    cert = read_certificate(GOLDEN / "oracle_r127.cert")
    rep = stats(cert)
    assert sum(rep.counts.values()) + rep.irreducible + rep.skipped == 126
    assert rep.pi(1) == 1
    pis = [rep.pi(d) for d in range(1, 64)]
    assert all(a >= b for a, b in zip(pis, pis[1:]))
    assert rep.irreducible == 10
    assert math.isclose(rep.d_pi(2), 4 / 3, abs_tol=0.05)


def test_resume_after_interrupt(tmp_path):
    full, _ = search(SearchConfig(127, certificate_path=tmp_path / "full.txt"))
    path = tmp_path / "cut.txt"
    seen = []

    def hook(e):
        seen.append(e.s)
        if len(seen) == 20:
            raise Stop

    with pytest.raises(Stop):
        search(SearchConfig(127, certificate_path=path), on_entry=hook)
    assert len(read_certificate(path).entries) == 20
    assert progress_path(path).read_text().split() == [str(s) for s in range(1, 21)]
    redo = []
    cert, _ = search(SearchConfig(127, certificate_path=path), on_entry=lambda e: redo.append(e.s))
    assert redo == list(range(21, 64))
    assert path.read_bytes() == (tmp_path / "full.txt").read_bytes()
    assert cert == full


def test_resume_ignores_unconfirmed_entries(tmp_path):
    path = tmp_path / "c.txt"
    search(SearchConfig(31, certificate_path=path))
    # drop s=5.. from the sidecar as if the process died between the two writes
    progress_path(path).write_text("1\n2\n3\n4\n")
    redo = []
    search(SearchConfig(31, certificate_path=path), on_entry=lambda e: redo.append(e.s))
    assert redo == list(range(5, 16))


def test_resume_rejects_other_degree(tmp_path):
    path = tmp_path / "c.txt"
    search(SearchConfig(31, certificate_path=path))
    with pytest.raises(ValueError):
        search(SearchConfig(127, certificate_path=path))


def test_workers_do_not_change_output(tmp_path):
    a, _ = search(SearchConfig(127, certificate_path=tmp_path / "a.txt", workers=1))
    b, _ = search(SearchConfig(127, certificate_path=tmp_path / "b.txt", workers=3))
    assert (tmp_path / "a.txt").read_bytes() == (tmp_path / "b.txt").read_bytes()


def test_schedule_overrides_do_not_change_output():
    base, _ = search(SearchConfig(127))
    for m, k0 in ((1, 1), (5, 3), (40, 2)):
        assert search(SearchConfig(127, m=m, k0=k0))[0] == base
    assert search(SearchConfig(127, use_swan=False))[0] == base


def test_choose_m():
    assert choose_m(1.0, 400.0) == 20
    assert choose_m(1.0, 2.0) == 4
    assert choose_m(1.0, 1e6) == 40
    assert choose_m(0.0, 1.0) == 20


def test_measure_costs_consistency():
    res = measure_costs(1 << 12, samples=3, with_gcd=True)
    ratio = res.M / res.S
    m = res.m
    if 4 < m < 40:
        assert m * m <= 4 * ratio and m * m >= ratio / 4
    assert res.G > 0


def test_tune_writes_file(tmp_path):
    path = tmp_path / "tune.txt"
    res = tune(1 << 10, path, samples=3)
    assert read_tuning(path) == res.thresholds
    assert 4 <= res.m <= 40
    with pytest.raises(ValueError):
        tune(100)


def test_tuned_search_reads_tuning(tmp_path):
    path = tmp_path / "tune.txt"
    write_tuning(path, MulThresholds(2, 3, 4))
    cert, _ = search(SearchConfig(127, tuning_path=path))
    assert cert == read_certificate(GOLDEN / "oracle_r127.cert")


# -- CLI -----------------------------------------------------------------

def test_cli_search_verify_stats(tmp_path, capsys):
    cert = tmp_path / "c.txt"
    assert main(["search", "--r", "127", "--cert", str(cert), "--workers", "2"]) == 0
    assert cert.read_bytes() == (GOLDEN / "oracle_r127.cert").read_bytes()
    assert main(["verify", "--cert", str(cert), "--strict"]) == 0
    assert main(["stats", "--cert", str(cert), "--d", "2..4"]) == 0
    out = capsys.readouterr().out
    assert "1.333" in out and "0 failures" in out


def test_cli_verify_failure_exit_code(tmp_path):
    cert = tmp_path / "c.txt"
    text = (GOLDEN / "oracle_r31.cert").read_text().replace("\n1 3 b\n", "\n1 3 9\n")
    cert.write_text(text)
    assert main(["verify", "--cert", str(cert)]) == 1
    cert.write_text("garbage\n")
    assert main(["verify", "--cert", str(cert)]) == 2


def test_cli_oracle_and_partial_stats(tmp_path, capsys):
    cert = tmp_path / "o.txt"
    assert main(["oracle", "--r", "31", "--cert", str(cert)]) == 0
    assert cert.read_bytes() == (GOLDEN / "oracle_r31.cert").read_bytes()
    part = tmp_path / "p.txt"
    assert main(["search", "--r", "31", "--s-max", "5", "--cert", str(part)]) == 0
    assert main(["stats", "--cert", str(part)]) == 2
    assert main(["search", "--r", "31", "--s-max", "99"]) == 2


def test_cli_warns_on_non_mersenne_class(caplog):
    assert main(["search", "--r", "29", "--s-max", "3"]) == 0
    assert "not +-1 mod 8" in caplog.text


def test_cli_bench_and_tune(tmp_path, capsys):
    assert main(["bench", "--r", "2000"]) == 0
    tuning = tmp_path / "t.txt"
    assert main(["tune", "--r", "1024", "--tuning", str(tuning)]) == 0
    assert len(tuning.read_text().splitlines()) == 3
    assert "M/S=" in capsys.readouterr().out


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "gf2tri", "search", "--r", "31"],
                         capture_output=True, text=True, check=True).stdout
    assert "irreducible s = [3, 6, 7, 13]" in out
