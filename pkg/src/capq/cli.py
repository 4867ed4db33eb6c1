"""Command line interface.

Subcommands: solve (capacity of a capacitor spec), levels (equipotential
extraction to CSV), analyze (full pipeline report as canonical JSON on
stdout, runtime on stderr), bounds (closed-form distortion bounds),
collar (hyperbolic collar numbers), chain (conformal chain images of
circles), selftest (quick internal checks).

Exit codes: 0 success, 2 usage, 3 numerical failure, 4 I/O. The
CAPQ_THREADS environment variable advisorily caps BLAS thread pools.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from dataclasses import dataclass, field as dataclass_field, replace

from . import io as capq_io
from .bounds import bound_names, evaluate_bound
from .collar import collar_from_length, geodesic_length, radial_distance
from .errors import CapqError, IoError, UsageError
from .geometry import annulus_capacitor, rasterize, validate_spec
from .levels import extract_level
from .mapping import build_chain, evaluate_chain
from .pipeline import run_pipeline
from .solver import solve_potential
from .special import elliptic_K, groetzsch_mu, jacobi_sn
from .turning import turning_constant

_RESOLUTION_RANGE = (64, 8192)


@dataclass
class RunConfig:
    """Validated command line configuration for one invocation."""

    subcommand: str
    input: str | None = None
    output: str | None = None
    resolution: int | None = None
    tolerance: float = 1e-10
    levels: tuple[float, ...] = ()
    svg: str | None = None
    csv: bool = False
    bound_name: str | None = None
    bound_params: dict = dataclass_field(default_factory=dict)
    batch: str | None = None
    length: float | None = None
    radius: float | None = None
    r: float = 2.0 ** -0.5
    circles: tuple[float, ...] = (1.0,)
    samples: int = 512


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


_NUMBER_LIST = re.compile(
    r"^-?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?(,-?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)*$"
)


def _glue_list_flags(argv: list[str]) -> list[str]:
    """Join number-list values onto their flag so a leading minus sign is
    not mistaken for an option (e.g. --levels -0.5,0,0.5)."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if (
            tok in ("--levels", "--circles")
            and nxt is not None
            and nxt.startswith("-")
            and _NUMBER_LIST.match(nxt)
        ):
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def _parse_levels(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in text.split(",") if part.strip() != "")
    except ValueError as exc:
        raise UsageError(f"cannot parse levels {text!r}: {exc}") from exc
    if not values:
        raise UsageError("levels list is empty")
    for a in values:
        if not -1.0 < a < 1.0:
            raise UsageError(f"levels must lie strictly inside (-1, 1), got {a}")
    return values


def _parse_floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(",") if part.strip() != "")
    except ValueError as exc:
        raise UsageError(f"cannot parse number list {text!r}: {exc}") from exc


def _check_resolution(n: int) -> int:
    lo, hi = _RESOLUTION_RANGE
    if n < lo or n > hi or (n & (n - 1)) != 0:
        raise UsageError(f"resolution must be a power of two in [{lo}, {hi}], got {n}")
    return n


def parse_args(argv: list[str]) -> RunConfig:
    """Parse and validate arguments into a RunConfig.

    Raises UsageError on any invalid combination instead of exiting.
    """
    parser = _Parser(prog="capq", description="planar capacitor analysis toolkit")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_field_options(p, needs_levels=False):
        p.add_argument("--input", required=True, help="capacitor spec JSON")
        p.add_argument("--output", help="output directory")
        p.add_argument("--resolution", type=int, help="grid cells per side (power of two)")
        p.add_argument("--tolerance", type=float, default=1e-10, help="solver tolerance")
        p.add_argument(
            "--levels", required=needs_levels, help="comma-separated levels in (-1,1)"
        )

    p_solve = sub.add_parser("solve", help="solve a capacitor and report capacity")
    add_field_options(p_solve)

    p_levels = sub.add_parser("levels", help="extract equipotential curves")
    add_field_options(p_levels, needs_levels=True)
    p_levels.add_argument("--csv", action="store_true", help="write curve CSV files")

    p_analyze = sub.add_parser("analyze", help="full analysis report")
    add_field_options(p_analyze)
    p_analyze.add_argument("--svg", help="write an SVG rendering to this path")
    p_analyze.add_argument("--csv", action="store_true", help="write curve CSV files")

    p_bounds = sub.add_parser("bounds", help="evaluate closed-form distortion bounds")
    p_bounds.add_argument("--name", choices=bound_names(), help="bound to evaluate")
    p_bounds.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="bound input, repeatable",
    )
    p_bounds.add_argument("--batch", help="JSON file with a list of {name, inputs}")

    p_collar = sub.add_parser("collar", help="hyperbolic collar of an annulus")
    p_collar.add_argument("--length", type=float, help="geodesic length")
    p_collar.add_argument("--radius", type=float, help="annulus parameter r in (0,1)")

    p_chain = sub.add_parser("chain", help="conformal chain images of circles")
    p_chain.add_argument("--r", type=float, default=2.0 ** -0.5, help="annulus parameter")
    p_chain.add_argument("--circles", default="1", help="comma-separated circle radii")
    p_chain.add_argument("--samples", type=int, default=512, help="points per circle")
    p_chain.add_argument("--output", help="output directory for CSV files")
    p_chain.add_argument("--csv", action="store_true", help="write image curve CSV files")

    sub.add_parser("selftest", help="run quick internal checks")

    ns = parser.parse_args(_glue_list_flags(list(argv)))
    config = RunConfig(subcommand=ns.subcommand)

    if ns.subcommand in ("solve", "levels", "analyze"):
        config = replace(
            config,
            input=ns.input,
            output=ns.output,
            resolution=_check_resolution(ns.resolution) if ns.resolution is not None else None,
            tolerance=ns.tolerance,
            levels=_parse_levels(ns.levels) if ns.levels else (),
            csv=bool(getattr(ns, "csv", False)),
            svg=getattr(ns, "svg", None),
        )
        if config.tolerance <= 0.0:
            raise UsageError(f"tolerance must be positive, got {config.tolerance}")
        if ns.subcommand == "analyze" and config.svg and not config.levels:
            raise UsageError("--svg needs at least one level to render")
        if config.csv and not config.output:
            raise UsageError("--csv needs --output to place the files")
    elif ns.subcommand == "bounds":
        if bool(ns.name) == bool(ns.batch):
            raise UsageError("bounds needs exactly one of --name or --batch")
        params = {}
        for item in ns.param:
            key, sep, value = item.partition("=")
            if not sep:
                raise UsageError(f"--param expects KEY=VALUE, got {item!r}")
            try:
                params[key.strip()] = float(value)
            except ValueError as exc:
                raise UsageError(f"--param {key!r} value {value!r} is not a number") from exc
        config = replace(config, bound_name=ns.name, bound_params=params, batch=ns.batch)
    elif ns.subcommand == "collar":
        if (ns.length is None) == (ns.radius is None):
            raise UsageError("collar needs exactly one of --length or --radius")
        if ns.length is not None and ns.length <= 0.0:
            raise UsageError(f"geodesic length must be positive, got {ns.length}")
        if ns.radius is not None and not 0.0 < ns.radius < 1.0:
            raise UsageError(f"annulus parameter must lie in (0,1), got {ns.radius}")
        config = replace(config, length=ns.length, radius=ns.radius)
    elif ns.subcommand == "chain":
        if not 0.0 < ns.r < 1.0:
            raise UsageError(f"annulus parameter must lie in (0,1), got {ns.r}")
        circles = _parse_floats(ns.circles)
        if not circles:
            raise UsageError("circle list is empty")
        for c in circles:
            if not ns.r < c < 1.0 / ns.r:
                raise UsageError(
                    f"circle radius {c} outside the annulus ({ns.r}, {1.0 / ns.r})"
                )
        if ns.samples < 8:
            raise UsageError(f"need at least 8 samples per circle, got {ns.samples}")
        config = replace(
            config,
            r=ns.r,
            circles=circles,
            samples=ns.samples,
            output=ns.output,
            csv=bool(ns.csv),
        )
        if config.csv and not config.output:
            raise UsageError("--csv needs --output to place the files")
    return config


def _emit(payload: dict):
    sys.stdout.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")


def _ensure_output_dir(path: str) -> str:
    try:
        os.makedirs(path, exist_ok=True)
    except OSError as exc:
        raise IoError(f"cannot create output directory {path}: {exc}") from exc
    return path


def _load_spec(config: RunConfig):
    spec = capq_io.read_spec(config.input)
    if config.resolution is not None:
        spec = replace(spec, resolution=config.resolution)
    return spec


def _cmd_solve(config: RunConfig) -> int:
    spec = _load_spec(config)
    validate_spec(spec)
    field = solve_potential(rasterize(spec), tol=config.tolerance)
    if config.output:
        out = _ensure_output_dir(config.output)
        capq_io.write_field(field, os.path.join(out, "field"))
    _emit(
        {
            "schema": "capq-solve/1",
            "capacity": field.capacity,
            "energy": field.energy,
            "residual": field.residual,
            "iterations": field.iterations,
            "reliable": field.reliable,
        }
    )
    return 0


def _curve_filename(a: float) -> str:
    return f"level_{a:g}.csv"


def _cmd_levels(config: RunConfig) -> int:
    spec = _load_spec(config)
    validate_spec(spec)
    field = solve_potential(rasterize(spec), tol=config.tolerance)
    records = []
    out = _ensure_output_dir(config.output) if config.output else None
    for a in sorted(set(config.levels)):
        curve = extract_level(field, a)
        if out and config.csv:
            capq_io.write_curve_csv(curve, os.path.join(out, _curve_filename(a)))
        records.append(
            {
                "level": a,
                "point_count": len(curve.points) - 1,
                "arc_length": curve.arc_length,
                "component_count": curve.component_count,
            }
        )
    _emit({"schema": "capq-levels/1", "capacity": field.capacity, "levels": records})
    return 0


def _cmd_analyze(config: RunConfig) -> int:
    spec = _load_spec(config)
    report = run_pipeline(spec, levels=config.levels, tol=config.tolerance)
    if config.output and config.csv:
        out = _ensure_output_dir(config.output)
        for a, curve in sorted(report.curves.items()):
            capq_io.write_curve_csv(curve, os.path.join(out, _curve_filename(a)))
    if config.svg:
        capq_io.emit_svg(report, config.svg)
    sys.stdout.write(report.to_json() + "\n")
    sys.stderr.write(f"runtime: {report.provenance['runtime']:.3f} s\n")
    return 0


def _cmd_bounds(config: RunConfig) -> int:
    if config.batch:
        try:
            with open(config.batch, "r", encoding="utf-8") as handle:
                entries = json.load(handle)
        except OSError as exc:
            raise IoError(f"cannot read {config.batch}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise IoError(f"{config.batch} is not valid JSON: {exc}") from exc
        if not isinstance(entries, list):
            raise IoError("batch file must hold a JSON list")
        results = []
        for i, entry in enumerate(entries):
            if not isinstance(entry, dict) or set(entry) != {"name", "inputs"}:
                raise IoError(f"batch entry {i} must be {{name, inputs}}")
            try:
                results.append(evaluate_bound(entry["name"], **entry["inputs"]).to_dict())
            except (TypeError, ValueError) as exc:
                raise IoError(f"batch entry {i}: {exc}") from exc
        _emit({"schema": "capq-bounds/1", "results": results})
        return 0
    try:
        report = evaluate_bound(config.bound_name, **config.bound_params)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit({"schema": "capq-bounds/1", "results": [report.to_dict()]})
    return 0


def _cmd_collar(config: RunConfig) -> int:
    ell = config.length if config.length is not None else geodesic_length(config.radius)
    result = collar_from_length(ell)
    _emit({"schema": "capq-collar/1", **result.to_dict()})
    return 0


def _cmd_chain(config: RunConfig) -> int:
    chain = build_chain(config.r)
    out = _ensure_output_dir(config.output) if config.output else None
    for c in config.circles:
        # half-step rotation keeps samples off the real axis, where the
        # outermost circle would graze the slit-tip guard
        points = []
        for k in range(config.samples):
            theta = 2.0 * math.pi * (k + 0.5) / config.samples
            w = evaluate_chain(chain, c * complex(math.cos(theta), math.sin(theta)))
            points.append((w.real, w.imag))
        if out and config.csv:
            capq_io.write_points_csv(points, os.path.join(out, f"chain_circle_{c:g}.csv"))
    _emit(
        {
            "schema": "capq-chain/1",
            "r": chain.r,
            "modulus": chain.m.k,
            "s0": chain.s0,
            "circles": list(config.circles),
            "samples": config.samples,
        }
    )
    return 0


def _selftest_checks():
    yield "elliptic_K(0) = pi/2", lambda: abs(elliptic_K(0.0) - math.pi / 2) < 1e-15
    yield "sn(K(k), k) = 1", lambda: abs(jacobi_sn(elliptic_K(0.5), 0.5) - 1.0) < 1e-9
    yield "mu(1/sqrt 2) = pi/2", lambda: abs(
        groetzsch_mu(2.0 ** -0.5) - math.pi / 2
    ) < 1e-12

    def zero_level_consistency():
        cap = math.log(4.0)
        a = evaluate_bound("k_level", cap=cap, a=0.0).K
        b = evaluate_bound("k_zero_level", cap=cap).K
        return a == b

    yield "k_level(c,0) = k_zero_level(c)", zero_level_consistency

    def collar_quadrature():
        result = collar_from_length(math.pi)
        width = radial_distance(result.r, 1.0, 1.0 / result.r0)
        return abs(width - result.delta0) < 1e-8

    yield "collar width by quadrature", collar_quadrature

    def annulus_capacity():
        spec = annulus_capacitor(resolution=256)
        field = solve_potential(rasterize(validate_spec(spec)))
        return abs(field.capacity - math.log(4.0)) / math.log(4.0) < 0.02

    yield "annulus capacity at res 256", annulus_capacity

    def zero_level_circle():
        spec = annulus_capacitor(r=0.5, R=2.0, resolution=256)
        field = solve_potential(rasterize(validate_spec(spec)))
        curve = extract_level(field, 0.0)
        radii = (curve.points[:, 0] ** 2 + curve.points[:, 1] ** 2) ** 0.5
        rms = float(((radii - 1.0) ** 2).mean() ** 0.5)
        if rms >= 0.02:
            return False
        report = turning_constant(curve, decimation=4)
        return 1.0 <= report.constant <= 1.1

    yield "zero level is a round circle", zero_level_circle

    def chain_odd_symmetry():
        chain = build_chain(2.0 ** -0.5)
        z = 1.1 + 0.3j
        return abs(evaluate_chain(chain, z) + evaluate_chain(chain, -z)) < 1e-9

    yield "chain odd symmetry", chain_odd_symmetry

    def spec_round_trip():
        spec = annulus_capacitor(resolution=64)
        first = capq_io.spec_to_dict(spec)
        second = capq_io.spec_to_dict(capq_io.spec_from_dict(first))
        return first == second

    yield "spec JSON round trip", spec_round_trip


def _cmd_selftest(_: RunConfig) -> int:
    failures = 0
    for name, check in _selftest_checks():
        try:
            passed = bool(check())
        except Exception as exc:  # selftest reports, never crashes
            passed = False
            detail = f" ({exc})"
        else:
            detail = ""
        line = "ok" if passed else "FAIL"
        sys.stdout.write(f"{line:4s} {name}{detail}\n")
        if not passed:
            failures += 1
    sys.stdout.write(f"{'PASS' if failures == 0 else 'FAIL'}: selftest\n")
    return 0 if failures == 0 else 3


_DISPATCH = {
    "solve": _cmd_solve,
    "levels": _cmd_levels,
    "analyze": _cmd_analyze,
    "bounds": _cmd_bounds,
    "collar": _cmd_collar,
    "chain": _cmd_chain,
    "selftest": _cmd_selftest,
}


def _apply_thread_cap():
    cap = os.environ.get("CAPQ_THREADS")
    if not cap:
        return
    # advisory: BLAS pools read these at startup; set them for any pools
    # that have not spun up yet
    for name in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(name, cap)


def main(argv: list[str] | None = None) -> int:
    _apply_thread_cap()
    try:
        config = parse_args(sys.argv[1:] if argv is None else list(argv))
        return _DISPATCH[config.subcommand](config)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2
    except IoError as exc:
        sys.stderr.write(f"io error: {exc}\n")
        return 4
    except CapqError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
