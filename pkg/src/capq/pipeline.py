"""End-to-end capacitor analysis.

One pipeline run rasterizes a capacitor, solves for the extremal
potential, extracts the requested equipotential levels, measures each
curve's empirical turning constant, and evaluates the closed-form
distortion bounds. The result is a single report whose JSON form is
byte-deterministic: identical spec and options give identical bytes.
Wall-clock runtime is kept on the report object but deliberately left out
of the serialization.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field as dataclass_field

from .bounds import BoundReport, evaluate_bound
from .errors import MissingLevel
from .geometry import CapacitorSpec, rasterize, validate_spec
from .levels import LevelCurve, extract_level
from .solver import PotentialField, solve_potential
from .turning import turning_constant

_TURNING_NOTE = (
    "turning constant is an empirical indicator; no inequality against K is asserted"
)


@dataclass
class AnalysisReport:
    """Full analysis of one capacitor run.

    levels holds one record per extracted equipotential, sorted by level;
    bounds holds the evaluated closed-form distortion bounds; provenance
    records resolution, tolerance, solver residual and iteration count,
    and runtime in seconds. The runtime entry never enters to_json.
    curves, field, and spec carry the in-memory objects for rendering and
    export; they are not serialized either.
    """

    capacity: float
    levels: list[dict]
    bounds: list[BoundReport]
    provenance: dict
    curves: dict[float, LevelCurve] = dataclass_field(default_factory=dict)
    field: PotentialField | None = None
    spec: CapacitorSpec | None = None
    comparisons: list[dict] = dataclass_field(default_factory=list)

    def to_json_dict(self) -> dict:
        provenance = {k: v for k, v in self.provenance.items() if k != "runtime"}
        return {
            "schema": "capq-report/1",
            "capacity": self.capacity,
            "levels": self.levels,
            "bounds": [b.to_dict() for b in self.bounds],
            "comparisons": self.comparisons,
            "provenance": provenance,
            "note": _TURNING_NOTE,
        }

    def to_json(self) -> str:
        """Canonical JSON: sorted keys, compact separators, no runtime."""
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))


def run_pipeline(
    spec: CapacitorSpec,
    levels: tuple[float, ...] = (),
    tol: float = 1e-10,
    turning_samples: int = 1024,
) -> AnalysisReport:
    """Solve the capacitor and analyze the requested equipotential levels.

    Each level in (-1, 1) yields an extracted curve, its turning constant
    (decimated to at most turning_samples points), and the level's
    distortion bound evaluated at the measured capacity. Duplicate levels
    collapse; records are sorted by level.
    """
    requested = sorted(set(float(a) for a in levels))
    for a in requested:
        if not -1.0 < a < 1.0:
            raise ValueError(f"levels must lie strictly inside (-1, 1), got {a}")
    start = time.perf_counter()
    validate_spec(spec)
    mask = rasterize(spec)
    field = solve_potential(mask, tol=tol)

    level_records = []
    curves: dict[float, LevelCurve] = {}
    bound_reports = [
        evaluate_bound("k_zero_level", cap=field.capacity),
        evaluate_bound("k_homotopy", cap_lower_bound=field.capacity),
    ]
    for a in requested:
        curve = extract_level(field, a)
        open_count = len(curve.points) - 1
        decimation = max(1, math.ceil(open_count / turning_samples))
        report = turning_constant(curve, decimation=decimation)
        k_bound = evaluate_bound("k_level", cap=field.capacity, a=a)
        bound_reports.append(k_bound)
        curves[a] = curve
        level_records.append(
            {
                "level": a,
                "point_count": open_count,
                "arc_length": curve.arc_length,
                "component_count": curve.component_count,
                "turning_constant": report.constant,
                "turning_witness": list(report.witness),
                "turning_samples": report.samples,
                "k_level": k_bound.K,
            }
        )
    runtime = time.perf_counter() - start
    provenance = {
        "resolution": mask.resolution,
        "tolerance": tol,
        "residual": field.residual,
        "iterations": field.iterations,
        "reliable": field.reliable,
        "runtime": runtime,
    }
    return AnalysisReport(
        capacity=field.capacity,
        levels=level_records,
        bounds=bound_reports,
        provenance=provenance,
        curves=curves,
        field=field,
        spec=spec,
    )


def compare_levels(report: AnalysisReport, a: float, b: float) -> float:
    """Distortion bound between two levels present in the report.

    Evaluates the two-level bound, appends the comparison record to the
    report, and returns the bound value. Raises MissingLevel when either
    level was not analyzed.
    """
    if not (-1.0 < a <= b < 1.0):
        raise ValueError(f"levels must satisfy -1 < a <= b < 1, got a={a}, b={b}")
    present = {rec["level"] for rec in report.levels}
    for value in (a, b):
        if value not in present:
            raise MissingLevel(f"level {value} not present in report")
    bound = evaluate_bound("k_between_levels", a=a, b=b)
    report.comparisons.append({"a": a, "b": b, "K": bound.K})
    return bound.K
