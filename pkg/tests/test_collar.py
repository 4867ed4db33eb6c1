"""Hyperbolic metric, core geodesic, and collar of the symmetric annulus."""

import math

import numpy as np
import pytest

import oracles
from capq import (
    collar_from_length,
    collar_radius,
    collar_width,
    density,
    geodesic_length,
    length_to_r,
    radial_distance,
)
from capq.collar import _TINY_LENGTH, CollarResult

LENGTHS = [0.1, 1.0, math.pi, 10.0]


def test_density_on_core():
    # on the unit circle the cosine factor is 1
    for r in (0.1, 0.5, 0.9):
        assert math.isclose(
            density(r, 1.0), math.pi / (2.0 * math.log(1.0 / r)), rel_tol=1e-14
        )


def test_density_inversion_invariant():
    # z -> 1/z is an isometry, so lambda(1/rho) = rho^2 lambda(rho)
    r = 0.3
    for rho in (0.5, 0.9, 1.7, 3.0):
        assert math.isclose(density(r, 1.0 / rho), rho * rho * density(r, rho), rel_tol=1e-13)


def test_density_positive_and_blows_up():
    r = 0.4
    rhos = np.linspace(0.45, 2.4, 50)
    values = [density(r, float(rho)) for rho in rhos]
    assert all(v > 0.0 for v in values)
    assert density(r, 0.4001) > 100.0 * density(r, 1.0)


def test_density_domain():
    with pytest.raises(ValueError):
        density(1.5, 1.0)
    with pytest.raises(ValueError):
        density(0.5, 0.5)
    with pytest.raises(ValueError):
        density(0.5, 2.0)


def test_geodesic_length_roundtrip():
    for ell in LENGTHS:
        assert math.isclose(geodesic_length(length_to_r(ell)), ell, rel_tol=1e-12)
    for r in (0.05, 0.3, 0.7):
        assert math.isclose(length_to_r(geodesic_length(r)), r, rel_tol=1e-12)
    assert math.isclose(geodesic_length(math.exp(-math.pi)), math.pi, rel_tol=1e-14)


def test_core_length_by_quadrature():
    # length of the unit circle under the metric: 2 pi * density at |z| = 1
    r = 0.2
    want = 2.0 * math.pi * density(r, 1.0)
    assert math.isclose(geodesic_length(r), want, rel_tol=1e-14)


def test_collar_width_matches_quadrature():
    # the radial distance from the core out to the collar edge is delta0
    for ell in LENGTHS:
        r = length_to_r(ell)
        r0 = collar_radius(ell)
        d0 = collar_width(ell)
        assert abs(radial_distance(r, 1.0, 1.0 / r0) - d0) < 1e-8


def test_collar_radius_cosine_identity():
    for ell in LENGTHS:
        r = length_to_r(ell)
        lhs = math.cos(0.5 * math.pi * (-math.log(collar_radius(ell))) / math.log(1.0 / r))
        assert abs(lhs - math.tanh(0.5 * ell)) < 1e-12


def test_collar_nesting():
    for ell in np.linspace(0.2, 12.0, 40):
        r0 = collar_radius(float(ell))
        assert length_to_r(float(ell)) < r0 < 1.0


def test_collar_width_defining_identity():
    for ell in LENGTHS:
        d0 = collar_width(ell)
        s = math.sinh(0.5 * ell)
        assert abs(math.cosh(2.0 * d0) - (1.0 + 2.0 / (s * s))) < 1e-12


def test_branch_continuity():
    from capq.collar import _log_inv_collar_radius

    lo = _TINY_LENGTH * (1.0 - 1e-9)
    hi = _TINY_LENGTH * (1.0 + 1e-9)
    assert abs(collar_width(lo) - collar_width(hi)) < 1e-8 * collar_width(hi)
    assert abs(_log_inv_collar_radius(lo) - _log_inv_collar_radius(hi)) < 1e-7 * abs(
        _log_inv_collar_radius(hi)
    )


def test_radial_distance_against_closed_form():
    for (r, a, b) in [(0.3, 0.5, 2.0), (0.5, 0.7, 1.9), (0.1, 0.15, 9.0), (0.6, 1.0, 1.5)]:
        got = radial_distance(r, a, b)
        want = oracles.hyperbolic_radial_distance(r, a, b)
        assert abs(got - want) < 1e-9


def test_radial_distance_additive():
    r = 0.25
    total = radial_distance(r, 0.5, 3.0)
    split = radial_distance(r, 0.5, 1.0) + radial_distance(r, 1.0, 3.0)
    assert abs(total - split) < 1e-10
    assert radial_distance(r, 1.3, 1.3) == 0.0


def test_radial_distance_domain():
    with pytest.raises(ValueError):
        radial_distance(0.5, 2.0, 1.0)
    with pytest.raises(ValueError):
        radial_distance(0.5, 0.4, 1.0)
    with pytest.raises(ValueError):
        radial_distance(1.2, 1.3, 1.4)


def test_collar_record():
    result = collar_from_length(math.pi)
    assert isinstance(result, CollarResult)
    assert result.ell == math.pi
    assert abs(result.r0 - 0.44050130474254545) < 1e-15
    assert abs(result.delta0 - 0.4219082547560242) < 1e-15
    assert result.r == length_to_r(math.pi)
    payload = result.to_dict()
    assert sorted(payload) == ["delta0", "ell", "r", "r0"]
    assert payload["r0"] == result.r0


def test_collar_monotone_in_length():
    # longer core geodesic means thinner collar
    widths = [collar_width(float(e)) for e in np.linspace(0.2, 10.0, 30)]
    assert all(a > b for a, b in zip(widths, widths[1:]))


def test_length_domain():
    for func in (geodesic_length, length_to_r, collar_radius, collar_width, collar_from_length):
        with pytest.raises(ValueError):
            func(0.0)
    with pytest.raises(ValueError):
        geodesic_length(1.5)
    with pytest.raises(ValueError):
        length_to_r(-1.0)
