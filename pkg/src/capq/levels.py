"""Equipotential level-curve extraction and Jordan-curve diagnostics.

Level curves {u = a} are traced by marching squares over the cell-center
grid with linear interpolation along grid edges. The curve returned for a
level is the component that separates the two continua: the closed loop
with nonzero winding about the rasterized E centroid, oriented
counterclockwise. Loops that touch the grid edge are artifacts of the
truncation and are discarded.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCurve, LevelNotFound
from .geometry import OUTER
from .solver import PotentialField


@dataclass(frozen=True)
class LevelCurve:
    """One closed equipotential polyline.

    points is an (N+1) x 2 array with points[0] == points[-1];
    component_count is the number of closed loops found at this level
    before the separating one was selected.
    """

    level: float
    points: np.ndarray
    arc_length: float
    component_count: int


@dataclass(frozen=True)
class JordanDiagnostics:
    """Closure, simplicity, orientation, and winding of a polyline."""

    closed: bool
    simple: bool
    orientation: str  # "ccw", "cw", or "flat"
    winding: int


# case table: corner bits BL=1, BR=2, TR=4, TL=8 (bit set when u > a);
# entries pair the square edges S, E, N, W crossed by each contour segment
_S, _E, _N, _W = 0, 1, 2, 3
_CASES = {
    1: [(_W, _S)],
    2: [(_S, _E)],
    3: [(_W, _E)],
    4: [(_E, _N)],
    6: [(_S, _N)],
    7: [(_W, _N)],
    8: [(_W, _N)],
    9: [(_S, _N)],
    11: [(_E, _N)],
    12: [(_W, _E)],
    13: [(_S, _E)],
    14: [(_W, _S)],
}


def _edge_point(edge, signed, xs, ys):
    """Interpolated crossing point on a grid edge.

    edge = (orientation, i, j): orientation 0 is the horizontal edge from
    center (i,j) to (i,j+1), orientation 1 the vertical edge to (i+1,j).
    """
    kind, i, j = edge
    s0 = signed[i, j]
    s1 = signed[i, j + 1] if kind == 0 else signed[i + 1, j]
    t = s0 / (s0 - s1)
    if kind == 0:
        return (xs[j] + t * (xs[j + 1] - xs[j]), ys[i])
    return (xs[j], ys[i] + t * (ys[i + 1] - ys[i]))


def _square_edges(i, j):
    """Edge keys of square (i,j), indexed S, E, N, W."""
    return (
        (0, i, j),      # S: horizontal edge at row i
        (1, i, j + 1),  # E: vertical edge at column j+1
        (0, i + 1, j),  # N: horizontal edge at row i+1
        (1, i, j),      # W: vertical edge at column j
    )


def _trace_loops(signed, valid):
    """Link marching-squares segments into loops.

    Returns a list of closed loops, each a list of edge keys; open chains
    (which can only end at the grid boundary) are dropped.
    """
    n0, n1 = signed.shape
    positive = signed > 0.0
    bl = positive[:-1, :-1]
    br = positive[:-1, 1:]
    tr = positive[1:, 1:]
    tl = positive[1:, :-1]
    case = (
        bl.astype(np.uint8)
        + (br.astype(np.uint8) << 1)
        + (tr.astype(np.uint8) << 2)
        + (tl.astype(np.uint8) << 3)
    )
    usable = valid[:-1, :-1] & valid[:-1, 1:] & valid[1:, 1:] & valid[1:, :-1]
    case[~usable] = 0
    active = np.nonzero((case != 0) & (case != 15))

    adjacency = defaultdict(list)
    for i, j in zip(*active):
        c = int(case[i, j])
        edges = _square_edges(i, j)
        if c in (5, 10):
            center = (
                signed[i, j] + signed[i, j + 1] + signed[i + 1, j + 1] + signed[i + 1, j]
            )
            if c == 5:  # BL and TR positive
                pairs = [(_S, _E), (_N, _W)] if center > 0.0 else [(_S, _W), (_E, _N)]
            else:  # BR and TL positive
                pairs = [(_S, _W), (_E, _N)] if center > 0.0 else [(_S, _E), (_N, _W)]
        else:
            pairs = _CASES[c]
        for a, b in pairs:
            adjacency[edges[a]].append(edges[b])
            adjacency[edges[b]].append(edges[a])

    loops = []
    visited = set()
    for start in adjacency:
        if start in visited:
            continue
        # walk forward until the loop closes or hits a dead end
        chain = [start]
        visited.add(start)
        prev, cur = None, start
        closed = False
        while True:
            partners = adjacency[cur]
            nxt = None
            for cand in partners:
                if cand != prev:
                    nxt = cand
                    break
            if nxt is None:
                break
            if nxt == start:
                closed = True
                break
            if nxt in visited:
                break  # defensive; consistent sign data cannot reach this
            chain.append(nxt)
            visited.add(nxt)
            prev, cur = cur, nxt
        if closed and len(chain) >= 3:
            loops.append(chain)
        elif not closed:
            # open chain: walk the other direction only to mark it visited
            prev, cur = chain[1] if len(chain) > 1 else None, start
            while True:
                nxt = None
                for cand in adjacency[cur]:
                    if cand != prev and cand not in visited:
                        nxt = cand
                        break
                if nxt is None:
                    break
                visited.add(nxt)
                prev, cur = cur, nxt
    return loops


def _winding_number(points: np.ndarray, about: tuple[float, float]) -> int:
    z = (points[:, 0] - about[0]) + 1j * (points[:, 1] - about[1])
    if np.any(np.abs(z) == 0.0):
        return 0
    turns = np.angle(z[1:] / z[:-1]).sum() + np.angle(z[0] / z[-1])
    return int(round(turns / (2.0 * math.pi)))


def _polyline_length(points: np.ndarray) -> float:
    return float(np.sqrt(np.sum(np.diff(points, axis=0) ** 2, axis=1)).sum())


def extract_level(field: PotentialField, a: float) -> LevelCurve:
    """Extract the closed equipotential {u = a} separating E from F.

    The separating component is the loop with nonzero winding about the
    rasterized E centroid, counterclockwise; among several such loops the
    longest wins. Raises LevelNotFound when no closed separating loop
    exists at this level.
    """
    if not -1.0 < a < 1.0:
        raise ValueError(f"level must lie strictly inside (-1, 1), got {a}")
    mask = field.mask
    n = mask.resolution
    xmin, ymin, _, _ = mask.bounds
    xs = xmin + (np.arange(n) + 0.5) * mask.h
    ys = ymin + (np.arange(n) + 0.5) * mask.h
    signed = field.values - a
    valid = mask.classes != OUTER
    loops = _trace_loops(signed, valid)
    if not loops:
        raise LevelNotFound(f"no closed equipotential at level {a}")

    centroid = mask.e_centroid()
    best = None
    best_length = -1.0
    for chain in loops:
        pts = np.array([_edge_point(e, signed, xs, ys) for e in chain])
        keep = np.ones(len(pts), dtype=bool)
        keep[1:] = np.any(pts[1:] != pts[:-1], axis=1)
        pts = pts[keep]
        if len(pts) < 3:
            continue
        w = _winding_number(pts, centroid)
        if w == 0:
            continue
        closed_pts = np.vstack([pts, pts[:1]])
        length = _polyline_length(closed_pts)
        if length > best_length:
            best = (closed_pts, w)
            best_length = length
    if best is None:
        raise LevelNotFound(f"no separating equipotential at level {a}")
    points, w = best
    if w < 0:
        points = points[::-1].copy()
    return LevelCurve(
        level=a,
        points=points,
        arc_length=best_length,
        component_count=len(loops),
    )


def interpolate_potential(field: PotentialField, points: np.ndarray) -> np.ndarray:
    """Bilinear interpolation of the potential at plane points."""
    mask = field.mask
    n = mask.resolution
    xmin, ymin, _, _ = mask.bounds
    gx = (np.asarray(points)[:, 0] - xmin) / mask.h - 0.5
    gy = (np.asarray(points)[:, 1] - ymin) / mask.h - 0.5
    j0 = np.clip(np.floor(gx).astype(int), 0, n - 2)
    i0 = np.clip(np.floor(gy).astype(int), 0, n - 2)
    tx = np.clip(gx - j0, 0.0, 1.0)
    ty = np.clip(gy - i0, 0.0, 1.0)
    v = field.values
    return (
        v[i0, j0] * (1 - tx) * (1 - ty)
        + v[i0, j0 + 1] * tx * (1 - ty)
        + v[i0 + 1, j0] * (1 - tx) * ty
        + v[i0 + 1, j0 + 1] * tx * ty
    )


def _segments_cross(p, q, r, s, tol: float) -> bool:
    """Segment pq crosses rs, with near-touches within tol counted."""

    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    o1, o2 = orient(p, q, r), orient(p, q, s)
    o3, o4 = orient(r, s, p), orient(r, s, q)
    if (o1 > 0) != (o2 > 0) and (o3 > 0) != (o4 > 0):
        return True
    # collinear or grazing contact within tolerance
    for a, b, c in ((p, q, r), (p, q, s), (r, s, p), (r, s, q)):
        ab = math.hypot(b[0] - a[0], b[1] - a[1])
        if ab == 0.0:
            continue
        t = ((c[0] - a[0]) * (b[0] - a[0]) + (c[1] - a[1]) * (b[1] - a[1])) / (ab * ab)
        if 0.0 < t < 1.0:
            px, py = a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])
            if math.hypot(c[0] - px, c[1] - py) <= tol:
                return True
    return False


def _is_simple(points: np.ndarray, tol: float) -> bool:
    """Self-intersection scan over a closed polyline via spatial hashing."""
    segs = np.stack([points[:-1], points[1:]], axis=1)
    m = len(segs)
    if m < 2:
        return True
    lengths = np.sqrt(np.sum((segs[:, 1] - segs[:, 0]) ** 2, axis=1))
    cell = max(float(lengths.max()), tol, 1e-300)
    bins = defaultdict(list)
    for k in range(m):
        cx = int(math.floor(segs[k, :, 0].mean() / cell))
        cy = int(math.floor(segs[k, :, 1].mean() / cell))
        bins[(cx, cy)].append(k)
    for (cx, cy), members in bins.items():
        candidates = []
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                candidates.extend(bins.get((cx + dx, cy + dy), ()))
        for k in members:
            for l in candidates:
                if l <= k:
                    continue
                # adjacent segments share an endpoint by construction
                if l == k + 1 or (k == 0 and l == m - 1):
                    continue
                if _segments_cross(segs[k, 0], segs[k, 1], segs[l, 0], segs[l, 1], tol):
                    return False
    return True


def validate_jordan(curve: LevelCurve, about: tuple[float, float] | None = None) -> JordanDiagnostics:
    """Diagnostics for a level curve: closure, simplicity, orientation,
    and winding number about a reference point (the curve centroid when
    none is given). Always returns a record; never raises on bad curves.
    """
    points = np.asarray(curve.points, dtype=float)
    if len(points) < 3:
        return JordanDiagnostics(closed=False, simple=True, orientation="flat", winding=0)
    closed = bool(np.all(points[0] == points[-1]))
    ring = points if closed else np.vstack([points, points[:1]])
    x, y = ring[:-1, 0], ring[:-1, 1]
    xn, yn = ring[1:, 0], ring[1:, 1]
    area = 0.5 * float(np.sum(x * yn - xn * y))
    diam_scale = float(
        max(points[:, 0].max() - points[:, 0].min(), points[:, 1].max() - points[:, 1].min())
    )
    if about is None:
        about = (float(points[:-1, 0].mean()), float(points[:-1, 1].mean()))
    winding = _winding_number(ring[:-1], about) if len(ring) > 3 else 0
    if area > 0.0:
        orientation = "ccw"
    elif area < 0.0:
        orientation = "cw"
    else:
        orientation = "flat"
    simple = _is_simple(ring, tol=1e-9 * max(diam_scale, 1e-300))
    return JordanDiagnostics(closed=closed, simple=simple, orientation=orientation, winding=winding)
