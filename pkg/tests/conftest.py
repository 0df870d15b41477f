"""Shared fixtures and the acceptance-criteria summary hook."""

import time
from contextlib import contextmanager

import pytest

from sparsecert import generators, linalg

_criterion_results = []


@pytest.fixture
def criterion():
    """Context manager that times a criterion and records one pass/fail line."""

    @contextmanager
    def run(name: str, budget_seconds: float):
        start = time.perf_counter()
        try:
            yield
        except BaseException:
            elapsed = time.perf_counter() - start
            _criterion_results.append((name, False, elapsed, budget_seconds))
            print(f"FAIL {name} ({elapsed:.2f}s)")
            raise
        elapsed = time.perf_counter() - start
        ok = elapsed < budget_seconds
        _criterion_results.append((name, ok, elapsed, budget_seconds))
        print(f"{'PASS' if ok else 'FAIL'} {name} ({elapsed:.2f}s / {budget_seconds:.0f}s budget)")
        assert ok, f"{name}: runtime {elapsed:.2f}s exceeded the {budget_seconds:.0f}s budget"

    return run


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _criterion_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, elapsed, budget in _criterion_results:
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(
            f"{status}: {name} ({elapsed:.2f}s / {budget:.0f}s budget)"
        )


@pytest.fixture(scope="session")
def id_hadamard_4():
    return generators.gen_id_hadamard(4)


@pytest.fixture(scope="session")
def id_hadamard_4_basis(id_hadamard_4):
    return linalg.null_space_basis(id_hadamard_4)


@pytest.fixture(scope="session")
def gaussian_4x8_seed1():
    return generators.gen_gaussian(4, 8, 1)


@pytest.fixture(scope="session")
def gaussian_4x8_seed1_basis(gaussian_4x8_seed1):
    return linalg.null_space_basis(gaussian_4x8_seed1)
