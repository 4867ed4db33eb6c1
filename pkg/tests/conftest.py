"""Shared solved fields (session scope, built lazily) and the acceptance
summary hook."""

import math
import time

import pytest

from capq import (
    CapacitorSpec,
    Shape,
    annulus_capacitor,
    rasterize,
    solve_potential,
    twisted_capacitor,
    two_disc_capacitor,
    validate_spec,
)

ACCEPTANCE_LINES = []


class SolvedCase:
    def __init__(self, spec, field, seconds):
        self.spec = spec
        self.field = field
        self.seconds = seconds


def _solve_case(spec):
    mask = rasterize(validate_spec(spec))
    t0 = time.perf_counter()
    field = solve_potential(mask)
    return SolvedCase(spec, field, time.perf_counter() - t0)


@pytest.fixture(scope="session")
def annulus_case():
    # the acceptance configuration: E disc r=0.5, F complement R=2, res 1024
    return _solve_case(annulus_capacitor(r=0.5, R=2.0, resolution=1024))


@pytest.fixture(scope="session")
def annulus_field(annulus_case):
    return annulus_case.field


@pytest.fixture(scope="session")
def annulus_field_256():
    return _solve_case(annulus_capacitor(r=0.5, R=2.0, resolution=256)).field


@pytest.fixture(scope="session")
def annulus_field_512():
    return _solve_case(annulus_capacitor(r=0.5, R=2.0, resolution=512)).field


@pytest.fixture(scope="session")
def two_disc_field():
    # box +-30 keeps the truncation error comfortably under the 2% budget
    spec = two_disc_capacitor(
        radius=1.0, separation=4.0, resolution=2048, bounds=(-30.0, -30.0, 30.0, 30.0)
    )
    return _solve_case(spec).field


def teichmuller_spec(resolution=2048):
    """Slit ring E = [0, 1/sqrt 2], F = the ray [1, inf) truncated by the
    grid box; the F slit overshoots the box so it owns cells to the wall."""
    return CapacitorSpec(
        shape_E=Shape(kind="slit_segment", endpoints=((0.0, 0.0), (2.0 ** -0.5, 0.0))),
        shape_F=Shape(kind="slit_segment", endpoints=((1.0, 0.0), (33.0, 0.0))),
        grid_bounds=(-32.0, -32.0, 32.0, 32.0),
        resolution=resolution,
    )


@pytest.fixture(scope="session")
def teichmuller_field():
    return _solve_case(teichmuller_spec()).field


@pytest.fixture(scope="session")
def twisted_field():
    return _solve_case(twisted_capacitor(resolution=1024)).field


@pytest.fixture(scope="session")
def annulus_spec_file(tmp_path_factory):
    from capq.io import write_spec

    path = tmp_path_factory.mktemp("specs") / "annulus.json"
    write_spec(annulus_capacitor(r=0.5, R=2.0, resolution=256), str(path))
    return str(path)


def record_criterion(number, passed, detail):
    line = f"CRITERION {number}: {'PASS' if passed else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append((number, line))
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
