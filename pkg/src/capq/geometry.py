"""Capacitor geometry: shapes, validation, and grid rasterization.

A capacitor is a pair of disjoint continua E and F in the plane; the field
domain is the complement. Shapes are rasterized onto a square cell grid by
classifying each cell center. Ties at shape boundaries are broken by
perturbing the query point by 1e-12 cell widths along (+x, +y), which makes
classification deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .errors import (
    DegenerateShape,
    OutOfBounds,
    OverlappingContinua,
    ResolutionTooCoarse,
)

INTERIOR = 0
BOUNDARY_E = 1
BOUNDARY_F = 2
OUTER = 3

_TIE_PERTURBATION = 1e-12


@dataclass(frozen=True)
class Shape:
    """One continuum: a disc, the closed complement of a disc (a continuum
    through infinity), a simple polygon, or a slit segment with half-width.

    Parameters by kind:
      disc / disc_complement: center=(x, y), radius > 0
      polygon: vertices = [(x, y), ...] with at least 3 non-collinear points
      slit_segment: endpoints = ((x0, y0), (x1, y1)), half_width >= 0
    """

    kind: str
    center: tuple[float, float] | None = None
    radius: float | None = None
    vertices: tuple[tuple[float, float], ...] | None = None
    endpoints: tuple[tuple[float, float], tuple[float, float]] | None = None
    half_width: float | None = None

    def __post_init__(self):
        kinds = ("disc", "disc_complement", "polygon", "slit_segment")
        if self.kind not in kinds:
            raise ValueError(f"shape kind must be one of {kinds}, got {self.kind!r}")
        if self.kind in ("disc", "disc_complement"):
            if self.center is None or self.radius is None:
                raise ValueError(f"{self.kind} requires center and radius")
        elif self.kind == "polygon":
            if self.vertices is None:
                raise ValueError("polygon requires vertices")
            object.__setattr__(
                self, "vertices", tuple((float(x), float(y)) for x, y in self.vertices)
            )
        else:
            if self.endpoints is None:
                raise ValueError("slit_segment requires endpoints")
            if self.half_width is None:
                object.__setattr__(self, "half_width", 0.0)


@dataclass(frozen=True)
class CapacitorSpec:
    """Capacitor geometry: continuum E, continuum F, and the solve grid.

    grid_bounds is (xmin, ymin, xmax, ymax) and must be square; resolution
    is the cell count per side.
    """

    shape_E: Shape
    shape_F: Shape
    grid_bounds: tuple[float, float, float, float]
    resolution: int

    def __post_init__(self):
        xmin, ymin, xmax, ymax = self.grid_bounds
        if not (xmax > xmin and ymax > ymin):
            raise ValueError(f"empty grid bounds {self.grid_bounds}")
        w, hgt = xmax - xmin, ymax - ymin
        if abs(w - hgt) > 1e-9 * max(w, hgt):
            raise ValueError(f"grid bounds must be square, got {w} x {hgt}")
        if self.resolution < 2:
            raise ValueError(f"resolution must be at least 2, got {self.resolution}")
        if self.shape_E.kind == "disc_complement" and self.shape_F.kind == "disc_complement":
            raise ValueError("at most one continuum may be a disc complement")

    @property
    def cell_size(self) -> float:
        xmin, _, xmax, _ = self.grid_bounds
        return (xmax - xmin) / self.resolution


@dataclass(frozen=True)
class GridMask:
    """Grid classification of the capacitor: every cell is interior field
    region, E continuum, F continuum, or outer (unused by the field).

    classes[i, j] is the class of the cell with center
    (xmin + (j + 0.5) h, ymin + (i + 0.5) h).
    """

    classes: np.ndarray
    h: float
    bounds: tuple[float, float, float, float]

    @property
    def resolution(self) -> int:
        return self.classes.shape[0]

    def cell_centers(self) -> tuple[np.ndarray, np.ndarray]:
        """Center coordinate arrays (X, Y), each shaped like classes."""
        xmin, ymin, _, _ = self.bounds
        n = self.resolution
        xs = xmin + (np.arange(n) + 0.5) * self.h
        ys = ymin + (np.arange(n) + 0.5) * self.h
        return np.meshgrid(xs, ys, indexing="xy")

    def e_centroid(self) -> tuple[float, float]:
        """Centroid of the rasterized E cells."""
        ii, jj = np.nonzero(self.classes == BOUNDARY_E)
        xmin, ymin, _, _ = self.bounds
        return (
            xmin + (jj.mean() + 0.5) * self.h,
            ymin + (ii.mean() + 0.5) * self.h,
        )


def _segment_distance_sq(
    X: np.ndarray, Y: np.ndarray, p0: tuple[float, float], p1: tuple[float, float]
) -> np.ndarray:
    """Squared distance from query points to the segment p0-p1."""
    vx, vy = p1[0] - p0[0], p1[1] - p0[1]
    seg2 = vx * vx + vy * vy
    if seg2 == 0.0:
        dx, dy = X - p0[0], Y - p0[1]
        return dx * dx + dy * dy
    t = np.clip(((X - p0[0]) * vx + (Y - p0[1]) * vy) / seg2, 0.0, 1.0)
    dx = X - (p0[0] + t * vx)
    dy = Y - (p0[1] + t * vy)
    return dx * dx + dy * dy


def _polygon_even_odd(X: np.ndarray, Y: np.ndarray, vertices) -> np.ndarray:
    """Even-odd ray casting membership for query points."""
    inside = np.zeros(X.shape, dtype=bool)
    n = len(vertices)
    for i in range(n):
        x0, y0 = vertices[i]
        x1, y1 = vertices[(i + 1) % n]
        crosses = (y0 > Y) != (y1 > Y)
        with np.errstate(divide="ignore", invalid="ignore"):
            xcross = x0 + (Y - y0) * (x1 - x0) / (y1 - y0)
        inside ^= crosses & (X < xcross)
    return inside


def _shape_membership(shape: Shape, X: np.ndarray, Y: np.ndarray, h: float) -> np.ndarray:
    """Cell membership for one shape at (tie-perturbed) cell centers."""
    eps = _TIE_PERTURBATION * h
    Xq, Yq = X + eps, Y + eps
    if shape.kind == "disc":
        dx, dy = Xq - shape.center[0], Yq - shape.center[1]
        return dx * dx + dy * dy <= shape.radius * shape.radius
    if shape.kind == "disc_complement":
        dx, dy = Xq - shape.center[0], Yq - shape.center[1]
        return dx * dx + dy * dy >= shape.radius * shape.radius
    if shape.kind == "polygon":
        return _polygon_even_odd(Xq, Yq, shape.vertices)
    # slit_segment, thickened to at least one cell half-width
    half = max(shape.half_width, 0.5 * h)
    return _segment_distance_sq(Xq, Yq, *shape.endpoints) <= half * half


def _polygon_area(vertices) -> float:
    area = 0.0
    n = len(vertices)
    for i in range(n):
        x0, y0 = vertices[i]
        x1, y1 = vertices[(i + 1) % n]
        area += x0 * y1 - x1 * y0
    return 0.5 * area


def _segments_intersect(p, q, r, s) -> bool:
    """Proper or improper intersection of open segments pq and rs,
    ignoring shared endpoints."""

    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    if max(p[0], q[0]) < min(r[0], s[0]) or max(r[0], s[0]) < min(p[0], q[0]):
        return False
    if max(p[1], q[1]) < min(r[1], s[1]) or max(r[1], s[1]) < min(p[1], q[1]):
        return False
    o1, o2 = orient(p, q, r), orient(p, q, s)
    o3, o4 = orient(r, s, p), orient(r, s, q)
    return (o1 > 0) != (o2 > 0) and (o3 > 0) != (o4 > 0)


def _check_polygon(shape: Shape):
    verts = shape.vertices
    if len(verts) < 3:
        raise DegenerateShape(f"polygon needs at least 3 vertices, got {len(verts)}")
    if abs(_polygon_area(verts)) < 1e-300:
        raise DegenerateShape("polygon has zero area")
    n = len(verts)
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue  # adjacent edges share a vertex by construction
            if _segments_intersect(
                verts[i], verts[(i + 1) % n], verts[j], verts[(j + 1) % n]
            ):
                raise DegenerateShape(f"polygon edges {i} and {j} intersect")


def _shape_bbox(shape: Shape) -> tuple[float, float, float, float] | None:
    """Bounding box of a bounded shape, or None for a disc complement."""
    if shape.kind == "disc":
        cx, cy = shape.center
        return (cx - shape.radius, cy - shape.radius, cx + shape.radius, cy + shape.radius)
    if shape.kind == "disc_complement":
        return None
    if shape.kind == "polygon":
        xs = [v[0] for v in shape.vertices]
        ys = [v[1] for v in shape.vertices]
        return (min(xs), min(ys), max(xs), max(ys))
    (x0, y0), (x1, y1) = shape.endpoints
    hw = shape.half_width
    return (min(x0, x1) - hw, min(y0, y1) - hw, max(x0, x1) + hw, max(y0, y1) + hw)


def _check_shape(shape: Shape, grid_bounds, h: float, label: str):
    if shape.kind in ("disc", "disc_complement"):
        if shape.radius <= 0.0:
            raise DegenerateShape(f"{label}: disc radius must be positive, got {shape.radius}")
    elif shape.kind == "polygon":
        _check_polygon(shape)
    else:
        (x0, y0), (x1, y1) = shape.endpoints
        if shape.half_width < 0.0:
            raise DegenerateShape(f"{label}: slit half-width must be nonnegative")
        if x0 == x1 and y0 == y1 and shape.half_width == 0.0:
            raise DegenerateShape(f"{label}: slit has zero length and zero width")
    bbox = _shape_bbox(shape)
    if bbox is not None:
        xmin, ymin, xmax, ymax = grid_bounds
        # half-cell slack: a shape grazing the boundary still owns cells
        if bbox[2] < xmin or bbox[0] > xmax or bbox[3] < ymin or bbox[1] > ymax:
            raise OutOfBounds(f"{label}: shape lies outside grid bounds {grid_bounds}")


def validate_spec(spec: CapacitorSpec) -> CapacitorSpec:
    """Check all capacitor invariants; return the spec unchanged if valid.

    Raises OverlappingContinua if E and F claim a common cell after
    rasterization, DegenerateShape for zero-measure shapes, OutOfBounds for
    a bounded shape entirely outside the grid.
    """
    h = spec.cell_size
    _check_shape(spec.shape_E, spec.grid_bounds, h, "E")
    _check_shape(spec.shape_F, spec.grid_bounds, h, "F")
    rasterize(spec)
    return spec


def rasterize(spec: CapacitorSpec) -> GridMask:
    """Classify every grid cell as interior, E, F, or outer.

    Slit shapes are thickened to at least one cell half-width so they stay
    continua on the grid. Raises ResolutionTooCoarse if either continuum
    rasterizes to nothing, or if E and F cells touch within an
    8-neighborhood; raises OverlappingContinua if a cell lands in both.
    """
    n = spec.resolution
    h = spec.cell_size
    xmin, ymin, _, _ = spec.grid_bounds
    xs = xmin + (np.arange(n) + 0.5) * h
    ys = ymin + (np.arange(n) + 0.5) * h
    X, Y = np.meshgrid(xs, ys, indexing="xy")

    in_e = _shape_membership(spec.shape_E, X, Y, h)
    in_f = _shape_membership(spec.shape_F, X, Y, h)
    if np.any(in_e & in_f):
        raise OverlappingContinua(
            f"{int(np.sum(in_e & in_f))} cells belong to both continua"
        )
    for mask, shape, label in ((in_e, spec.shape_E, "E"), (in_f, spec.shape_F, "F")):
        if not mask.any():
            if _shape_bbox(shape) is None:
                raise OutOfBounds(f"{label}: disc complement lies outside grid bounds")
            raise ResolutionTooCoarse(
                f"{label}: shape vanished at resolution {n} (cell size {h:.3g})"
            )
    # E and F sharing an 8-neighborhood leaves no room for the field
    dilated_e = ndimage.binary_dilation(in_e, structure=np.ones((3, 3), dtype=bool))
    if np.any(dilated_e & in_f):
        raise ResolutionTooCoarse(
            f"continua touch within one cell at resolution {n}"
        )

    classes = np.full((n, n), INTERIOR, dtype=np.uint8)
    classes[in_e] = BOUNDARY_E
    classes[in_f] = BOUNDARY_F
    return GridMask(classes=classes, h=h, bounds=tuple(spec.grid_bounds))


def annulus_capacitor(
    r: float = 0.5,
    R: float = 2.0,
    resolution: int = 1024,
    bounds: tuple[float, float, float, float] | None = None,
) -> CapacitorSpec:
    """Concentric annulus capacitor: E the inner disc of radius r, F the
    complement of the disc of radius R."""
    if not 0.0 < r < R:
        raise ValueError(f"annulus radii must satisfy 0 < r < R, got {r}, {R}")
    if bounds is None:
        half = 1.25 * R
        bounds = (-half, -half, half, half)
    return CapacitorSpec(
        shape_E=Shape(kind="disc", center=(0.0, 0.0), radius=r),
        shape_F=Shape(kind="disc_complement", center=(0.0, 0.0), radius=R),
        grid_bounds=bounds,
        resolution=resolution,
    )


def two_disc_capacitor(
    radius: float = 1.0,
    separation: float = 4.0,
    resolution: int = 512,
    bounds: tuple[float, float, float, float] | None = None,
) -> CapacitorSpec:
    """Two-disc capacitor: discs of equal radius centered at (+-d/2, 0).

    Without an unbounded continuum the grid edge acts as an insulating
    wall approximating the sphere; enlarge the bounds to shrink the
    truncation error.
    """
    d = 0.5 * separation
    if radius <= 0.0 or d <= radius:
        raise ValueError("discs must be disjoint with positive radius")
    if bounds is None:
        bounds = (-5.0, -5.0, 5.0, 5.0)
    return CapacitorSpec(
        shape_E=Shape(kind="disc", center=(-d, 0.0), radius=radius),
        shape_F=Shape(kind="disc", center=(d, 0.0), radius=radius),
        grid_bounds=bounds,
        resolution=resolution,
    )


def twisted_capacitor(
    r: float = 2.0 ** -0.5,
    resolution: int = 1024,
    bounds: tuple[float, float, float, float] | None = None,
) -> CapacitorSpec:
    """Twisted slit capacitor conformally equivalent to the annulus
    r < |z| < 1/r: E is the horizontal segment [-1, 1], F the pair of
    vertical rays |Im z| >= s0 on the imaginary axis, joined through
    infinity. The gap parameter s0 comes from the modulus equation for r.

    F is encoded as a single bracket-shaped polygon: two thin vertical
    strips of half-width h/2 that run past the grid edge and reconnect
    entirely outside the grid bounds, so the raster sees exactly the two
    rays while F stays one continuum.
    """
    from .special import solve_modulus_equation

    if not 0.0 < r < 1.0:
        raise ValueError(f"annulus parameter r must lie in (0,1), got {r}")
    m = solve_modulus_equation(r)
    s0 = 0.5 * (m ** -0.5 - m ** 0.5)
    if bounds is None:
        bounds = (-3.0, -3.0, 3.0, 3.0)
    xmin, ymin, xmax, ymax = bounds
    h = (xmax - xmin) / resolution
    w = 0.5 * h
    reach = max(abs(xmin), abs(xmax), abs(ymin), abs(ymax))
    y_far = reach + 1.0  # strip ends beyond the grid
    y_arm = reach + 0.5  # connector arms stay outside the grid
    x_in = reach + 2.0
    x_out = reach + 3.0
    bracket = Shape(
        kind="polygon",
        vertices=(
            (-w, s0),
            (w, s0),
            (w, y_arm),
            (x_in, y_arm),
            (x_in, -y_arm),
            (w, -y_arm),
            (w, -s0),
            (-w, -s0),
            (-w, -y_far),
            (x_out, -y_far),
            (x_out, y_far),
            (-w, y_far),
        ),
    )
    return CapacitorSpec(
        shape_E=Shape(kind="slit_segment", endpoints=((-1.0, 0.0), (1.0, 0.0)), half_width=0.0),
        shape_F=bracket,
        grid_bounds=bounds,
        resolution=resolution,
    )
