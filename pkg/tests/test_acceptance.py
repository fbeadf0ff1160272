"""Every acceptance criterion at its stated tolerance, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or ``python tests/test_acceptance.py``.
"""

import time

import pytest

from frontspec import acceptance, cli

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []

# stated runtime budgets, seconds
BUDGET = {1: 1, 2: 1, 3: 1, 4: 30, 5: 10, 6: 5, 7: 5, 8: 5, 9: 1, 10: 60, 11: 180}


def _report(k, result, elapsed):
    line = f"{result.line()}  ({elapsed:.2f}s, budget {BUDGET[k]}s)"
    if not result.passed:
        line += f"  details={result.details}"
    print(line)
    ACCEPTANCE_LINES.append(line)


@pytest.mark.parametrize("k", range(1, 11), ids=[f"AC{k}" for k in range(1, 11)])
def test_criterion(k):
    t0 = time.perf_counter()
    result = acceptance.CHECKS[k - 1]()
    elapsed = time.perf_counter() - t0
    _report(k, result, elapsed)
    assert result.passed, result.details
    assert elapsed < BUDGET[k]


def test_AC11_report_twice_identical(tmp_path, monkeypatch):
    monkeypatch.delenv("FRONTSPEC_OUT", raising=False)
    t0 = time.perf_counter()
    cli.main(["report", "--out", str(tmp_path / "a")])
    elapsed = time.perf_counter() - t0
    cli.main(["report", "--out", str(tmp_path / "b")])

    def tree(root):
        return {p.relative_to(root): p.read_bytes() for p in root.rglob("*") if p.is_file()}

    a, b = tree(tmp_path / "a"), tree(tmp_path / "b")
    diff = sorted(str(k) for k in set(a) | set(b) if a.get(k) != b.get(k))
    result = acceptance.ACResult("AC11 determinism", bool(a) and not diff, {"files": len(a), "differing": diff})
    _report(11, result, elapsed)
    assert result.passed, diff
    assert elapsed < BUDGET[11]


if __name__ == "__main__":
    for k, fn in enumerate(acceptance.CHECKS, start=1):
        t0 = time.perf_counter()
        r = fn()
        _report(k, r, time.perf_counter() - t0)
    t0 = time.perf_counter()
    _report(11, acceptance.ac11_determinism(), time.perf_counter() - t0)
