import pytest

from gradedbass import Field, free_module, residue_field, validate_ring


def ring(vars_, *gens, field=None):
    return validate_ring(field or Field(), list(vars_), list(gens))


@pytest.fixture
def kx2():
    return ring("x", "x^2")


@pytest.fixture
def kxy_x2():
    return ring("xy", "x^2")


@pytest.fixture
def kxy_m2():
    return ring("xy", "x^2", "x*y", "y^2")


@pytest.fixture
def kxy():
    return ring("xy")


def R_and_k(R):
    return free_module(R), residue_field(R)


ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'pass' if ok else 'FAIL'}  {title}")
