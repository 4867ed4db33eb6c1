"""Empirical bounded-turning (three-point) constant of closed curves.

For every sampled point pair (z, w) on a closed curve, the chord |z - w|
is compared with the diameters of the two subarcs the pair cuts; the
turning constant is the maximum of min{diam a+, diam a-} / |z - w|. For a
circle the constant is 1; the larger it gets, the farther the curve is
from being a quasicircle of small distortion.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCurve

# pairs closer than this fraction of the curve diameter are skipped:
# the chord ratio degenerates as w approaches z along a polyline
_CHORD_CUTOFF = 1e-6


@dataclass(frozen=True)
class TurningReport:
    """Measured turning constant with the attaining pair.

    witness holds indices into the original curve points (multiples of
    the decimation stride); samples is the number of points scanned.
    """

    constant: float
    witness: tuple[int, int]
    samples: int


def curve_diameter(points: np.ndarray) -> float:
    """Maximum pairwise Euclidean distance, chunked over rows."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or len(pts) < 2:
        raise DegenerateCurve("diameter needs at least 2 points")
    best = 0.0
    chunk = max(1, int(4e6) // max(len(pts), 1))
    for start in range(0, len(pts), chunk):
        block = pts[start : start + chunk]
        dx = block[:, None, 0] - pts[None, :, 0]
        dy = block[:, None, 1] - pts[None, :, 1]
        best = max(best, float(np.hypot(dx, dy).max()))
    return best


def _arc_diameters(points: np.ndarray) -> np.ndarray:
    """Banded diameter table for all directed subarcs.

    F[i, d] is the diameter of the arc from point i to point (i+d) mod n,
    walking forward, for d in [1, n-1]; F[:, 0] is 0. Built by sweeping
    the doubled index j and folding in the distances from point j to the
    up-to-(n-1) points before it with a suffix running maximum, so each
    pairwise distance is computed once.
    """
    n = len(points)
    doubled = np.vstack([points, points])
    F = np.zeros((n, n))
    for j in range(1, 2 * n - 1):
        lo = max(0, j - n + 1)
        ks = np.arange(lo, j)
        d = np.hypot(doubled[j, 0] - doubled[ks, 0], doubled[j, 1] - doubled[ks, 1])
        # suffix running max: g[m] = max distance from q_j back to q_{ks[m]}..q_{j-1}
        g = np.maximum.accumulate(d[::-1])[::-1]
        starts = ks[ks < n]
        if len(starts) == 0:
            continue
        offs = j - starts
        prev = F[starts, offs - 1]
        F[starts, offs] = np.maximum(prev, g[starts - lo])
    return F


def turning_constant(curve, decimation: int = 1) -> TurningReport:
    """Empirical three-point turning constant of a closed curve.

    Scans all sampled point pairs; for each, the smaller subarc diameter
    is divided by the chord. Pairs with chord below 1e-6 of the curve
    diameter are skipped. Ties resolve to the lexicographically lowest
    witness pair. Cost is quadratic in the sample count; decimation
    subsamples the curve by the given stride first.
    """
    if decimation < 1:
        raise ValueError(f"decimation must be at least 1, got {decimation}")
    pts = np.asarray(getattr(curve, "points", curve), dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise DegenerateCurve("curve must be an Nx2 point array")
    if len(pts) > 1 and np.all(pts[0] == pts[-1]):
        pts = pts[:-1]
    pts = pts[::decimation]
    n = len(pts)
    if n < 4 or len(np.unique(pts, axis=0)) < 4:
        raise DegenerateCurve(f"need at least 4 distinct points, got {n}")

    diam = curve_diameter(pts)
    cutoff = _CHORD_CUTOFF * diam
    F = _arc_diameters(pts)

    best = -1.0
    witness = (0, 1)
    for i in range(n - 1):
        js = np.arange(i + 1, n)
        chords = np.hypot(pts[js, 0] - pts[i, 0], pts[js, 1] - pts[i, 1])
        fwd = F[i, js - i]
        bwd = F[js, (i + n) - js]
        minside = np.minimum(fwd, bwd)
        ok = chords >= cutoff
        if not ok.any():
            continue
        ratios = np.where(ok, minside / np.where(ok, chords, 1.0), -np.inf)
        k = int(np.argmax(ratios))
        if ratios[k] > best:
            best = float(ratios[k])
            witness = (i, int(js[k]))
    if best < 0.0:
        raise DegenerateCurve("all point pairs fell below the chord cutoff")
    return TurningReport(
        constant=best,
        witness=(witness[0] * decimation, witness[1] * decimation),
        samples=n,
    )
