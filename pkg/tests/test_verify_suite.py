import sys
from pathlib import Path

import pytest

sys.path.append(str(Path(__file__).resolve().parent.parent))

from cevians.config import RANDOM_SEED
from cevians.engine import gaps
from cevians.main import EXIT_FAILED, EXIT_OK, run
from cevians.verify.suite import SUITES, format_table, run_suite

INVARIANT_CHECKS = [
    "frames",
    "closed_forms",
    "median_identity",
    "altitude_roots",
    "conic_subsets",
    "locus_restrictions",
    "tetra_symmetry",
]


def test_suite_registers_every_check():
    for name in ["bottema", "gaps", "circle", "altitude", "trisa", "conic", "locus", "tetra", *INVARIANT_CHECKS]:
        assert name in SUITES, name

    print(f"✓ {len(SUITES)} checks registered")


@pytest.mark.parametrize("name", INVARIANT_CHECKS)
def test_invariant_check_passes(name):
    result = run_suite(name, seed=RANDOM_SEED)[0]

    assert result.passed, result.detail
    print(f"✓ {name}: {result.detail}")


def test_same_seed_same_detail():
    first = run_suite("frames", seed=7)[0]
    second = run_suite("frames", seed=7)[0]

    assert first.detail == second.detail


def test_wrong_median_identity_fails_verify(monkeypatch):
    monkeypatch.setattr(gaps, "median_identity_sides", lambda angles, x: (0.0, 1.0))

    assert run(["verify", "--suite", "median_identity"]) == EXIT_FAILED


def test_median_identity_passes_verify():
    assert run(["verify", "--suite", "median_identity"]) == EXIT_OK


def test_tol_reaches_every_threshold():
    # A negative tolerance can never be met.
    for name in ("bottema", "frames", "median_identity", "tetra_symmetry"):
        assert not run_suite(name, tol=-1.0)[0].passed, name

    assert run_suite("bottema", tol=1.0)[0].passed


def test_raising_check_is_reported(monkeypatch):
    def broken(rng, tol):
        raise RuntimeError("boom")

    monkeypatch.setitem(SUITES, "frames", broken)
    result = run_suite("frames")[0]

    assert not result.passed
    assert "RuntimeError" in result.detail
    assert "0/1 checks passed" in format_table([result])


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope")


if __name__ == "__main__":
    print("Running verification suite tests...\n")

    test_suite_registers_every_check()
    for check in INVARIANT_CHECKS:
        test_invariant_check_passes(check)
    test_tol_reaches_every_threshold()

    print("\n" + "=" * 50)
    print("All verification suite tests passed! ✓")
    print("=" * 50)
