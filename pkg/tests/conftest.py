import sys

import numpy as np
import pytest

from corrsynth import Dataset, kernels


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # Pay any JIT compile cost before the first timed assertion.
    kernels.warmup()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # One visible line per acceptance criterion, independent of capture.
    mod = sys.modules.get("test_acceptance")
    if mod is None:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.CRITERIA):
        name = mod.CRITERIA[num]
        outcome = mod.RESULTS.get(num)
        if outcome is None:
            terminalreporter.write_line(
                f"ACCEPTANCE {num:>2} ({name}): FAIL (not evaluated)"
            )
            continue
        ok, detail = outcome
        status = "PASS" if ok else "FAIL"
        suffix = f"  [{detail}]" if detail else ""
        terminalreporter.write_line(
            f"ACCEPTANCE {num:>2} ({name}): {status}{suffix}"
        )


@pytest.fixture
def make_correlated():
    """Factory for random datasets with a full-rank mixing, so the
    correlation matrix is comfortably positive definite."""

    def _make(seed, rows, cols, names=None, diag=3.0):
        rng = np.random.default_rng(seed)
        base = rng.standard_normal((rows, cols))
        mix = rng.standard_normal((cols, cols)) + diag * np.eye(cols)
        if names is None:
            names = tuple(f"c{i}" for i in range(cols))
        return Dataset(tuple(names), base @ mix)

    return _make
