"""Acceptance gate: ten go/no-go checks, one pass/fail line each.

Each test prints a CRITERION line through conftest.record_criterion before
asserting, so the summary block lists every criterion even when one fails.
"""

import json
import math

import numpy as np

import oracles
from conftest import record_criterion
from capq import (
    build_chain,
    collar_from_length,
    collar_radius,
    collar_width,
    elliptic_K,
    evaluate_chain,
    extract_level,
    groetzsch_mu,
    jacobi_sn,
    k_annulus_circle_map,
    k_between_levels,
    k_level,
    k_zero_level,
    length_to_r,
    pointwise_distortion,
    radial_distance,
    radial_stretch,
    run_pipeline,
    solve_modulus_equation,
    teichmuller_ring_modulus,
    turning_constant,
)
from capq.cli import main
from capq.geometry import annulus_capacitor

LOG4 = math.log(4.0)


def test_criterion_01_annulus_capacity(annulus_case):
    cap = annulus_case.field.capacity
    rel = abs(cap - LOG4) / LOG4
    ok = rel < 0.02 and annulus_case.seconds < 60.0
    record_criterion(
        1,
        ok,
        f"res-1024 capacity {cap:.6f} vs log 4 = {LOG4:.6f} "
        f"({100 * rel:.2f}% err), solve {annulus_case.seconds:.1f}s",
    )
    assert rel < 0.02
    assert annulus_case.seconds < 60.0


def test_criterion_02_level_radius(annulus_field):
    curve = extract_level(annulus_field, 0.5)
    radii = np.hypot(curve.points[:, 0], curve.points[:, 1])
    target = math.sqrt(2.0)
    rms = float(np.sqrt(np.mean((radii - target) ** 2))) / target
    ok = rms < 0.01
    record_criterion(
        2, ok, f"level 0.5 RMS radial deviation {100 * rms:.3f}% from sqrt 2"
    )
    assert rms < 0.01


def test_criterion_03_turning_constant(annulus_field):
    curve = extract_level(annulus_field, 0.0)
    constant = turning_constant(curve, decimation=1).constant
    ellipse = oracles.ellipse_points(128)
    square = oracles.square_points(128)
    gap_e = abs(turning_constant(ellipse).constant - oracles.brute_turning(ellipse)[0])
    gap_s = abs(turning_constant(square).constant - oracles.brute_turning(square)[0])
    ok = 1.0 <= constant <= 1.05 and gap_e <= 1e-9 and gap_s <= 1e-9
    record_criterion(
        3,
        ok,
        f"zero-level turning {constant:.6f} in [1, 1.05]; "
        f"oracle gaps ellipse {gap_e:.1e}, square {gap_s:.1e}",
    )
    assert 1.0 <= constant <= 1.05
    assert gap_e <= 1e-9
    assert gap_s <= 1e-9


def test_criterion_04_beta0_triple(teichmuller_field):
    stored = 2.4984
    oracle = teichmuller_ring_modulus()
    pde = teichmuller_field.capacity
    gap_so = abs(stored - oracle)
    rel_sp = abs(stored - pde) / pde
    rel_op = abs(oracle - pde) / pde
    ok = gap_so <= 5e-4 and rel_sp <= 0.02 and rel_op <= 0.02
    record_criterion(
        4,
        ok,
        f"stored {stored} vs oracle {oracle:.6f}: gap {gap_so:.4f} (cap 5e-4); "
        f"stored vs PDE {pde:.6f}: {100 * rel_sp:.2f}%; "
        f"oracle vs PDE: {100 * rel_op:.2f}% (cap 2%)",
    )
    assert gap_so <= 5e-4, f"stored/oracle gap {gap_so:.4f} exceeds 5e-4"
    assert rel_sp <= 0.02, f"stored/PDE gap {100 * rel_sp:.2f}% exceeds 2%"
    assert rel_op <= 0.02, f"oracle/PDE gap {100 * rel_op:.2f}% exceeds 2%"


def test_criterion_05_special_functions():
    exact_k0 = elliptic_K(0.0) == math.pi / 2
    sn_quarter = max(
        abs(jacobi_sn(elliptic_K(k), k) - 1.0) for k in np.arange(1, 10) / 10
    )
    sn_sine = max(
        abs(jacobi_sn(float(u), 0.0) - math.sin(u)) for u in np.linspace(-3.0, 3.0, 25)
    )
    mu_gap = abs(groetzsch_mu(2.0 ** -0.5) - math.pi / 2)
    m_gap = abs(solve_modulus_equation(math.exp(-math.pi / 8.0)) - 2.0 ** -0.5)
    ok = exact_k0 and sn_quarter < 1e-9 and sn_sine < 1e-12 and mu_gap < 1e-12 and m_gap < 1e-8
    record_criterion(
        5,
        ok,
        f"K(0) exact: {exact_k0}; max|sn(K,k)-1| {sn_quarter:.1e}; "
        f"max|sn(u,0)-sin u| {sn_sine:.1e}; mu gap {mu_gap:.1e}; "
        f"modulus eq gap {m_gap:.1e}",
    )
    assert exact_k0
    assert sn_quarter < 1e-9
    assert sn_sine < 1e-12
    assert mu_gap < 1e-12
    assert m_gap < 1e-8


def test_criterion_06_collar_chain():
    quad_gap = 0.0
    cos_gap = 0.0
    for ell in (0.1, 1.0, math.pi, 10.0):
        result = collar_from_length(ell)
        quad = radial_distance(result.r, 1.0, 1.0 / result.r0)
        quad_gap = max(quad_gap, abs(quad - result.delta0))
        lhs = math.cos(
            0.5 * math.pi * (-math.log(result.r0)) / math.log(1.0 / result.r)
        )
        cos_gap = max(cos_gap, abs(lhs - math.tanh(0.5 * ell)))
    scan = np.linspace(0.1, 10.0, 200)
    nested = all(
        length_to_r(float(e)) < collar_radius(float(e)) < 1.0 for e in scan
    )
    ok = quad_gap < 1e-8 and cos_gap < 1e-12 and nested
    record_criterion(
        6,
        ok,
        f"quadrature gap {quad_gap:.1e} (cap 1e-8); cos identity gap {cos_gap:.1e}; "
        f"r < r0 < 1 on all {len(scan)} scan lengths: {nested}",
    )
    assert quad_gap < 1e-8
    assert cos_gap < 1e-12
    assert nested


def test_criterion_07_radial_stretch_distortion():
    r, s, t = math.exp(-2.0), math.exp(-0.5), math.exp(0.3)
    f = radial_stretch(r, s, t)
    lim = 1.0 / r
    axis = np.linspace(-lim, lim, 64)
    h = 1e-5
    inner, outer = [], []
    for x in axis:
        for y in axis:
            z = complex(x, y)
            rho = abs(z)
            if rho - r < 2 * h or lim - rho < 2 * h or abs(rho - s) < 2 * h:
                continue
            value = pointwise_distortion(f, z, h)
            (inner if rho < s else outer).append(value)
    inner, outer = np.array(inner), np.array(outer)
    sup = max(inner.max(), outer.max())
    spread_in = float(inner.max() - inner.min())
    spread_out = float(outer.max() - outer.min())
    sup_gap = abs(sup - f.claimed_K)
    ok = sup_gap < 1e-3 and spread_in < 1e-3 and spread_out < 1e-3
    record_criterion(
        7,
        ok,
        f"sup distortion {sup:.6f} vs claimed {f.claimed_K:.6f} (gap {sup_gap:.1e}); "
        f"per-region spreads {spread_in:.1e} / {spread_out:.1e} "
        f"on {len(inner)}+{len(outer)} grid points",
    )
    assert sup_gap < 1e-3
    assert spread_in < 1e-3
    assert spread_out < 1e-3


def test_criterion_08_bound_identities():
    exact_zero = all(
        k_level(c, 0.0) == k_zero_level(c) for c in (0.5, 1.0, LOG4, 3.0, 10.0)
    )
    worst = 0.0
    for r in np.linspace(0.05, 0.95, 10):
        for a in np.linspace(-0.9, 0.9, 10):
            for b in np.linspace(-0.9, 0.9, 10):
                if a > b:
                    continue
                got = k_annulus_circle_map(float(r), float(r) ** -a, float(r) ** -b)
                worst = max(worst, abs(got - k_between_levels(float(a), float(b))))
    ells = np.linspace(0.05, 6.0, 200)
    phi = np.array([math.pi / e * math.acos(math.tanh(0.5 * e)) for e in ells])
    decreasing = bool(np.all(np.diff(phi) < 0.0))
    convex = bool(np.all(np.diff(phi, 2) > 0.0))
    ok = exact_zero and worst <= 1e-12 and decreasing and convex
    record_criterion(
        8,
        ok,
        f"zero-level identity exact: {exact_zero}; circle-map identity max gap "
        f"{worst:.1e} (cap 1e-12); profile decreasing {decreasing}, convex {convex}",
    )
    assert exact_zero
    assert worst <= 1e-12
    assert decreasing
    assert convex


def test_criterion_09_conformal_chain(twisted_field):
    chain = build_chain(2.0 ** -0.5)
    r = chain.r
    rng = np.random.default_rng(2026)
    worst = 0.0
    count = 0
    while count < 1000:
        rho = rng.uniform(1.1 * r, 0.9 / r)
        theta = rng.uniform(0.0, 2.0 * np.pi)
        z = complex(rho * np.exp(1j * theta))
        if min(abs(r * z - 1.0), abs(r * z + 1.0)) < 0.01:
            continue
        worst = max(
            worst, oracles.cr_residual(lambda p: evaluate_chain(chain, p), z, 1e-5)
        )
        count += 1
    cap = twisted_field.capacity
    target = 2.0 * math.log(1.0 / r)
    rel = abs(cap - target) / target
    ok = worst < 1e-6 and rel < 0.05
    record_criterion(
        9,
        ok,
        f"max CR residual {worst:.1e} over 1000 samples (cap 1e-6); "
        f"image capacity {cap:.6f} vs log 2 = {target:.6f} ({100 * rel:.2f}%, cap 5%)",
    )
    assert worst < 1e-6
    assert rel < 0.05


def test_criterion_10_determinism(annulus_spec_file, capsys):
    spec = annulus_capacitor(r=0.5, R=2.0, resolution=256)
    first = run_pipeline(spec, levels=(-0.5, 0.0, 0.5)).to_json()
    second = run_pipeline(spec, levels=(-0.5, 0.0, 0.5)).to_json()
    args = [
        "analyze",
        "--input",
        annulus_spec_file,
        "--levels",
        "-0.5,0,0.5",
    ]
    assert main(args) == 0
    out_a = capsys.readouterr().out
    assert main(args) == 0
    out_b = capsys.readouterr().out
    ok = first == second and out_a == out_b
    record_criterion(
        10,
        ok,
        f"pipeline JSON identical: {first == second}; "
        f"CLI stdout identical: {out_a == out_b} ({len(out_a)} bytes)",
    )
    assert first == second
    assert out_a == out_b
    assert json.loads(out_a)["schema"] == "capq-report/1"
