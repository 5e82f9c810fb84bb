"""Runs the acceptance suite and reports one line per criterion (use ``-s`` to see them)."""
import pytest

from clustergal.suite import CHECKS, run_suite


@pytest.fixture(scope="module")
def results():
    res = run_suite()
    print()
    for r in res:
        tag = "PASS" if r.passed else "FAIL"
        print(f"[{tag}] {r.detail['criterion']:2d} {r.name} ({r.seconds:.2f}s)")
    return res


def test_suite_shape(results):
    assert len(results) == len(CHECKS) == 17
    assert [r.detail["criterion"] for r in results] == list(range(1, 18))


@pytest.mark.parametrize("criterion", range(1, 18))
def test_criterion(results, criterion):
    r = results[criterion - 1]
    assert r.passed, f"{r.name}: {r.detail}"
