import contextlib
import time

# (criterion number, title, passed, detail) for the terminal summary
ACCEPTANCE = []


@contextlib.contextmanager
def criterion(number, title):
    """Record one acceptance criterion as PASS or FAIL, re-raising failures."""
    detail = []
    t0 = time.perf_counter()
    try:
        yield detail
    except BaseException as exc:
        detail.append(f"{type(exc).__name__}: {exc}".splitlines()[0][:200])
        ACCEPTANCE.append((number, title, False, detail, time.perf_counter() - t0))
        raise
    ACCEPTANCE.append((number, title, True, detail, time.perf_counter() - t0))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail, secs in sorted(ACCEPTANCE, key=lambda a: a[0]):
        status = "PASS" if ok else "FAIL"
        extra = f" [{'; '.join(detail)}]" if detail else ""
        terminalreporter.write_line(f"AC{number:<2} {status}  {title} ({secs:.1f}s){extra}")
