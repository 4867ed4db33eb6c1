"""File formats: capacitor JSON documents, field export, CSV, and SVG.

The capacitor document is versioned ("capq-spec/1") and parsed strictly:
unknown fields anywhere in the document are rejected so typos cannot be
silently ignored. Serialization is canonical (sorted keys), so a parse
followed by a serialize reproduces the document up to whitespace. CSV
output uses 17 significant digits so values survive a round trip through
text exactly.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .errors import IoError
from .geometry import CapacitorSpec, Shape
from .levels import LevelCurve
from .pipeline import AnalysisReport
from .solver import PotentialField

SPEC_SCHEMA = "capq-spec/1"
FIELD_SCHEMA = "capq-field/1"

_SHAPE_FIELDS = {
    "disc": {"role", "kind", "center", "radius"},
    "disc_complement": {"role", "kind", "center", "radius"},
    "polygon": {"role", "kind", "vertices"},
    "slit_segment": {"role", "kind", "endpoints", "half_width"},
}
_SHAPE_REQUIRED = {
    "disc": {"role", "kind", "center", "radius"},
    "disc_complement": {"role", "kind", "center", "radius"},
    "polygon": {"role", "kind", "vertices"},
    "slit_segment": {"role", "kind", "endpoints"},
}


def _check_keys(obj: dict, allowed: set, required: set, where: str):
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise IoError(f"{where}: unknown fields {unknown}")
    missing = sorted(required - set(obj))
    if missing:
        raise IoError(f"{where}: missing fields {missing}")


def _real(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise IoError(f"{where}: expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise IoError(f"{where}: value must be finite, got {value}")
    return value


def _point(value, where: str) -> tuple[float, float]:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise IoError(f"{where}: expected an [x, y] pair, got {value!r}")
    return (_real(value[0], where), _real(value[1], where))


def _shape_from_dict(data: dict, where: str) -> tuple[str, Shape]:
    if not isinstance(data, dict):
        raise IoError(f"{where}: shape must be an object")
    kind = data.get("kind")
    if kind not in _SHAPE_FIELDS:
        raise IoError(f"{where}: unknown shape kind {kind!r}")
    _check_keys(data, _SHAPE_FIELDS[kind], _SHAPE_REQUIRED[kind], where)
    role = data.get("role")
    if role not in ("E", "F"):
        raise IoError(f"{where}: role must be 'E' or 'F', got {role!r}")
    if kind in ("disc", "disc_complement"):
        shape = Shape(
            kind=kind,
            center=_point(data["center"], f"{where}.center"),
            radius=_real(data["radius"], f"{where}.radius"),
        )
    elif kind == "polygon":
        verts = data["vertices"]
        if not isinstance(verts, list) or len(verts) < 3:
            raise IoError(f"{where}.vertices: expected a list of at least 3 points")
        shape = Shape(
            kind=kind,
            vertices=tuple(_point(v, f"{where}.vertices[{i}]") for i, v in enumerate(verts)),
        )
    else:
        ends = data["endpoints"]
        if not isinstance(ends, list) or len(ends) != 2:
            raise IoError(f"{where}.endpoints: expected exactly 2 points")
        shape = Shape(
            kind=kind,
            endpoints=(
                _point(ends[0], f"{where}.endpoints[0]"),
                _point(ends[1], f"{where}.endpoints[1]"),
            ),
            half_width=_real(data.get("half_width", 0.0), f"{where}.half_width"),
        )
    return role, shape


def spec_from_dict(data: dict) -> CapacitorSpec:
    """Build a CapacitorSpec from a parsed JSON document, rejecting any
    unknown field at any level."""
    if not isinstance(data, dict):
        raise IoError("document root must be an object")
    _check_keys(data, {"schema", "shapes", "grid"}, {"schema", "shapes", "grid"}, "document")
    if data["schema"] != SPEC_SCHEMA:
        raise IoError(f"unsupported schema {data['schema']!r}; expected {SPEC_SCHEMA!r}")
    shapes = data["shapes"]
    if not isinstance(shapes, list) or len(shapes) != 2:
        raise IoError("shapes must be a list of exactly 2 entries")
    by_role: dict[str, Shape] = {}
    for i, entry in enumerate(shapes):
        role, shape = _shape_from_dict(entry, f"shapes[{i}]")
        if role in by_role:
            raise IoError(f"duplicate shape role {role!r}")
        by_role[role] = shape
    if set(by_role) != {"E", "F"}:
        raise IoError("shapes must carry one role 'E' and one role 'F'")
    grid = data["grid"]
    if not isinstance(grid, dict):
        raise IoError("grid must be an object")
    _check_keys(grid, {"bounds", "resolution"}, {"bounds", "resolution"}, "grid")
    bounds = grid["bounds"]
    if not isinstance(bounds, list) or len(bounds) != 4:
        raise IoError("grid.bounds must be [xmin, ymin, xmax, ymax]")
    resolution = grid["resolution"]
    if isinstance(resolution, bool) or not isinstance(resolution, int):
        raise IoError(f"grid.resolution must be an integer, got {resolution!r}")
    try:
        return CapacitorSpec(
            shape_E=by_role["E"],
            shape_F=by_role["F"],
            grid_bounds=tuple(_real(b, "grid.bounds") for b in bounds),
            resolution=resolution,
        )
    except ValueError as exc:
        raise IoError(str(exc)) from exc


def _shape_to_dict(shape: Shape, role: str) -> dict:
    if shape.kind in ("disc", "disc_complement"):
        return {
            "role": role,
            "kind": shape.kind,
            "center": list(shape.center),
            "radius": shape.radius,
        }
    if shape.kind == "polygon":
        return {"role": role, "kind": shape.kind, "vertices": [list(v) for v in shape.vertices]}
    return {
        "role": role,
        "kind": shape.kind,
        "endpoints": [list(p) for p in shape.endpoints],
        "half_width": shape.half_width,
    }


def spec_to_dict(spec: CapacitorSpec) -> dict:
    return {
        "schema": SPEC_SCHEMA,
        "shapes": [
            _shape_to_dict(spec.shape_E, "E"),
            _shape_to_dict(spec.shape_F, "F"),
        ],
        "grid": {"bounds": list(spec.grid_bounds), "resolution": spec.resolution},
    }


def read_spec(path: str) -> CapacitorSpec:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise IoError(f"{path} is not valid JSON: {exc}") from exc
    return spec_from_dict(data)


def write_spec(spec: CapacitorSpec, path: str):
    document = json.dumps(spec_to_dict(spec), sort_keys=True, indent=2) + "\n"
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(document)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def field_paths(base: str) -> tuple[str, str]:
    """Binary and header paths for a field export base name."""
    if base.endswith(".bin"):
        base = base[:-4]
    return base + ".bin", base + ".json"


def write_field(field: PotentialField, base: str) -> tuple[str, str]:
    """Export a solved field: flat float64 binary plus a JSON header with
    the dimensions, cell size, capacity, and residual."""
    bin_path, header_path = field_paths(base)
    header = {
        "schema": FIELD_SCHEMA,
        "dimensions": list(field.values.shape),
        "h": field.mask.h,
        "bounds": list(field.mask.bounds),
        "capacity": field.capacity,
        "residual": field.residual,
    }
    try:
        with open(bin_path, "wb") as handle:
            handle.write(np.ascontiguousarray(field.values, dtype="<f8").tobytes())
        with open(header_path, "w", encoding="utf-8") as handle:
            handle.write(json.dumps(header, sort_keys=True, indent=2) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write field export: {exc}") from exc
    return bin_path, header_path


def read_field(base: str) -> tuple[np.ndarray, dict]:
    """Load a field export; returns (values array, header dict)."""
    bin_path, header_path = field_paths(base)
    try:
        with open(header_path, "r", encoding="utf-8") as handle:
            header = json.load(handle)
        raw = np.fromfile(bin_path, dtype="<f8")
    except OSError as exc:
        raise IoError(f"cannot read field export: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise IoError(f"{header_path} is not valid JSON: {exc}") from exc
    dims = header.get("dimensions")
    if not isinstance(dims, list) or len(dims) != 2:
        raise IoError("field header lacks valid dimensions")
    if raw.size != dims[0] * dims[1]:
        raise IoError(
            f"field binary holds {raw.size} values, header promises {dims[0] * dims[1]}"
        )
    return raw.reshape(dims[0], dims[1]), header


def write_curve_csv(curve: LevelCurve, path: str):
    """Write a level curve as x,y rows at full double precision."""
    lines = ["x,y"]
    for x, y in np.asarray(curve.points):
        lines.append(f"{x:.17g},{y:.17g}")
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def write_points_csv(points, path: str):
    """Write an Nx2 point array as x,y rows at full double precision."""
    lines = ["x,y"]
    for x, y in np.asarray(points, dtype=float):
        lines.append(f"{x:.17g},{y:.17g}")
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def _fmt(value: float) -> str:
    return f"{value:.10g}"


def _svg_shape(shape: Shape, fill: str, bounds, cell: float) -> str:
    xmin, ymin, xmax, ymax = bounds
    if shape.kind == "disc":
        cx, cy = shape.center
        return (
            f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(shape.radius)}" '
            f'fill="{fill}"/>'
        )
    if shape.kind == "disc_complement":
        cx, cy = shape.center
        r = shape.radius
        rect = f"M {_fmt(xmin)} {_fmt(ymin)} H {_fmt(xmax)} V {_fmt(ymax)} H {_fmt(xmin)} Z"
        hole = (
            f"M {_fmt(cx + r)} {_fmt(cy)} "
            f"A {_fmt(r)} {_fmt(r)} 0 1 0 {_fmt(cx - r)} {_fmt(cy)} "
            f"A {_fmt(r)} {_fmt(r)} 0 1 0 {_fmt(cx + r)} {_fmt(cy)} Z"
        )
        return f'<path d="{rect} {hole}" fill="{fill}" fill-rule="evenodd"/>'
    if shape.kind == "polygon":
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in shape.vertices)
        return f'<polygon points="{pts}" fill="{fill}"/>'
    (x0, y0), (x1, y1) = shape.endpoints
    width = max(2.0 * shape.half_width, cell)
    return (
        f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" y2="{_fmt(y1)}" '
        f'stroke="{fill}" stroke-width="{_fmt(width)}" stroke-linecap="round"/>'
    )


def emit_svg(report: AnalysisReport, path: str):
    """Render the analysis as SVG: continua filled, level curves stroked.

    The viewBox matches the grid bounds with the y axis flipped to keep
    mathematical orientation. Requires at least one extracted curve.
    """
    if not report.curves:
        raise ValueError("report contains no curves to render")
    if report.spec is None:
        raise ValueError("report carries no capacitor spec for rendering")
    spec = report.spec
    xmin, ymin, xmax, ymax = spec.grid_bounds
    width = xmax - xmin
    height = ymax - ymin
    cell = spec.cell_size
    stroke = 0.004 * width
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_fmt(xmin)} {_fmt(-ymax)} {_fmt(width)} {_fmt(height)}">',
        '<g transform="scale(1,-1)">',
        f'<rect x="{_fmt(xmin)}" y="{_fmt(ymin)}" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" fill="#ffffff"/>',
        _svg_shape(spec.shape_E, "#4477aa", spec.grid_bounds, cell),
        _svg_shape(spec.shape_F, "#cc6677", spec.grid_bounds, cell),
    ]
    for level in sorted(report.curves):
        curve = report.curves[level]
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in curve.points)
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="#222222" '
            f'stroke-width="{_fmt(stroke)}"/>'
        )
    parts.append("</g>")
    parts.append("</svg>")
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write("\n".join(parts) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
