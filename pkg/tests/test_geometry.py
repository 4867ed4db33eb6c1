"""Capacitor shapes, spec validation, and rasterization."""

import math

import numpy as np
import pytest

from capq import (
    CapacitorSpec,
    Shape,
    annulus_capacitor,
    rasterize,
    twisted_capacitor,
    two_disc_capacitor,
    validate_spec,
)
from capq.errors import (
    DegenerateShape,
    OutOfBounds,
    OverlappingContinua,
    ResolutionTooCoarse,
)
from capq.geometry import BOUNDARY_E, BOUNDARY_F, INTERIOR, OUTER


def disc(cx, cy, radius):
    return Shape(kind="disc", center=(cx, cy), radius=radius)


def test_annulus_builder_defaults():
    spec = annulus_capacitor()
    assert spec.shape_E.kind == "disc"
    assert spec.shape_E.radius == 0.5
    assert spec.shape_F.kind == "disc_complement"
    assert spec.shape_F.radius == 2.0
    assert spec.grid_bounds == (-2.5, -2.5, 2.5, 2.5)
    assert spec.resolution == 1024


def test_two_disc_builder_centers():
    spec = two_disc_capacitor(radius=1.0, separation=4.0)
    assert spec.shape_E.center == (-2.0, 0.0)
    assert spec.shape_F.center == (2.0, 0.0)
    assert spec.shape_E.radius == 1.0


def test_cell_size():
    spec = annulus_capacitor(resolution=1000)
    assert math.isclose(spec.cell_size, 5.0 / 1000)


def test_bounds_must_be_square():
    with pytest.raises(ValueError):
        CapacitorSpec(
            shape_E=disc(0, 0, 0.5),
            shape_F=Shape(kind="disc_complement", center=(0, 0), radius=2.0),
            grid_bounds=(-2.0, -1.0, 2.0, 2.0),
            resolution=64,
        )


def test_resolution_floor():
    with pytest.raises(ValueError):
        CapacitorSpec(
            shape_E=disc(0, 0, 0.5),
            shape_F=Shape(kind="disc_complement", center=(0, 0), radius=2.0),
            grid_bounds=(-2.5, -2.5, 2.5, 2.5),
            resolution=1,
        )


def test_single_complement_only():
    with pytest.raises(ValueError):
        CapacitorSpec(
            shape_E=Shape(kind="disc_complement", center=(0, 0), radius=3.0),
            shape_F=Shape(kind="disc_complement", center=(0, 0), radius=2.0),
            grid_bounds=(-2.5, -2.5, 2.5, 2.5),
            resolution=64,
        )


def test_disc_radius_positive():
    spec = CapacitorSpec(
        shape_E=disc(0, 0, 0.0),
        shape_F=disc(2, 0, 0.5),
        grid_bounds=(-3, -3, 3, 3),
        resolution=64,
    )
    with pytest.raises(DegenerateShape):
        validate_spec(spec)


def test_polygon_needs_area():
    flat = Shape(kind="polygon", vertices=((0, 0), (1, 0), (2, 0)))
    spec = CapacitorSpec(
        shape_E=flat,
        shape_F=disc(2, 2, 0.3),
        grid_bounds=(-3, -3, 3, 3),
        resolution=64,
    )
    with pytest.raises(DegenerateShape):
        validate_spec(spec)


def test_polygon_must_be_simple():
    bowtie = Shape(kind="polygon", vertices=((0, 0), (1, 1), (1, 0), (0, 1)))
    spec = CapacitorSpec(
        shape_E=bowtie,
        shape_F=disc(2.5, 2.5, 0.2),
        grid_bounds=(-3, -3, 3, 3),
        resolution=64,
    )
    with pytest.raises(DegenerateShape):
        validate_spec(spec)


def test_zero_slit_rejected():
    slit = Shape(kind="slit_segment", endpoints=((0.0, 0.0), (0.0, 0.0)))
    spec = CapacitorSpec(
        shape_E=slit,
        shape_F=disc(2, 0, 0.5),
        grid_bounds=(-3, -3, 3, 3),
        resolution=64,
    )
    with pytest.raises(DegenerateShape):
        validate_spec(spec)


def test_shape_outside_bounds():
    spec = CapacitorSpec(
        shape_E=disc(10.0, 0.0, 0.5),
        shape_F=disc(0, 0, 0.5),
        grid_bounds=(-3, -3, 3, 3),
        resolution=64,
    )
    with pytest.raises(OutOfBounds):
        validate_spec(spec)


def test_annulus_raster_classes():
    spec = annulus_capacitor(r=0.5, R=2.0, resolution=128)
    mask = rasterize(spec)
    assert mask.classes.shape == (128, 128)
    x, y = mask.cell_centers()
    rho = np.hypot(x, y)
    assert np.all(mask.classes[rho < 0.5 - mask.h] == BOUNDARY_E)
    assert np.all(mask.classes[rho > 2.0 + mask.h] == BOUNDARY_F)
    ring = (rho > 0.5 + mask.h) & (rho < 2.0 - mask.h)
    assert np.all(mask.classes[ring] == INTERIOR)
    assert not np.any(mask.classes == OUTER)


def test_two_disc_raster_has_outer_cells():
    mask = rasterize(two_disc_capacitor(resolution=128))
    # no complement shape, so cells outside both discs stay interior
    assert not np.any(mask.classes == OUTER)
    assert np.any(mask.classes == BOUNDARY_E)
    assert np.any(mask.classes == BOUNDARY_F)


def test_e_centroid_inside_e():
    mask = rasterize(two_disc_capacitor(resolution=128))
    cx, cy = mask.e_centroid()
    assert math.hypot(cx + 2.0, cy) < 2 * mask.h


def test_overlap_rejected():
    spec = CapacitorSpec(
        shape_E=disc(0, 0, 1.0),
        shape_F=disc(0.5, 0, 1.0),
        grid_bounds=(-3, -3, 3, 3),
        resolution=64,
    )
    with pytest.raises(OverlappingContinua):
        rasterize(spec)


def test_touching_continua_rejected():
    # separated by less than one cell at res 64 on a 6-wide box
    spec = CapacitorSpec(
        shape_E=disc(-1.0, 0, 1.0),
        shape_F=disc(1.02, 0, 1.0),
        grid_bounds=(-3, -3, 3, 3),
        resolution=64,
    )
    with pytest.raises(ResolutionTooCoarse):
        rasterize(spec)


def test_tiny_shape_rejected_at_coarse_resolution():
    spec = CapacitorSpec(
        shape_E=disc(0, 0, 1e-4),
        shape_F=Shape(kind="disc_complement", center=(0, 0), radius=2.0),
        grid_bounds=(-2.5, -2.5, 2.5, 2.5),
        resolution=64,
    )
    with pytest.raises(ResolutionTooCoarse):
        rasterize(spec)


def test_complement_outside_grid():
    spec = CapacitorSpec(
        shape_E=disc(0, 0, 0.5),
        shape_F=Shape(kind="disc_complement", center=(0, 0), radius=10.0),
        grid_bounds=(-2.5, -2.5, 2.5, 2.5),
        resolution=64,
    )
    with pytest.raises(OutOfBounds):
        rasterize(spec)


def test_zero_width_slit_is_one_cell_row():
    """A horizontal slit on a grid line thickens to exactly one cell row."""
    spec = CapacitorSpec(
        shape_E=Shape(kind="slit_segment", endpoints=((-1.0, 0.0), (1.0, 0.0))),
        shape_F=Shape(kind="disc_complement", center=(0, 0), radius=2.5),
        grid_bounds=(-3, -3, 3, 3),
        resolution=64,
    )
    mask = rasterize(spec)
    rows = np.unique(np.nonzero(mask.classes == BOUNDARY_E)[0])
    assert len(rows) == 1


def test_wide_slit_covers_band():
    spec = CapacitorSpec(
        shape_E=Shape(
            kind="slit_segment", endpoints=((-1.0, 0.0), (1.0, 0.0)), half_width=0.5
        ),
        shape_F=Shape(kind="disc_complement", center=(0, 0), radius=2.5),
        grid_bounds=(-3, -3, 3, 3),
        resolution=64,
    )
    mask = rasterize(spec)
    rows = np.unique(np.nonzero(mask.classes == BOUNDARY_E)[0])
    # band of half-width 0.5 is about 10-11 rows of h = 0.09375
    assert 9 <= len(rows) <= 12


def test_twisted_capacitor_footprint():
    """The F continuum shows up as two single-column strips beside the
    imaginary axis, reaching the top and bottom walls."""
    spec = twisted_capacitor(resolution=256)
    mask = rasterize(spec)
    n = mask.resolution
    cols = np.unique(np.nonzero(mask.classes == BOUNDARY_F)[1])
    assert len(cols) == 1
    rows = np.unique(np.nonzero(mask.classes == BOUNDARY_F)[0])
    assert rows[0] == 0 and rows[-1] == n - 1
    # a gap around y = 0 where the slit E passes through
    gaps = np.setdiff1d(np.arange(n), rows)
    assert len(gaps) > 0
    e_rows = np.unique(np.nonzero(mask.classes == BOUNDARY_E)[0])
    assert len(e_rows) == 1
    assert e_rows[0] in gaps


def test_validate_spec_returns_spec():
    spec = annulus_capacitor(resolution=64)
    assert validate_spec(spec) is spec


def test_polygon_vertices_frozen():
    shape = Shape(kind="polygon", vertices=[[0, 0], [1, 0], [0, 1]])
    assert shape.vertices == ((0.0, 0.0), (1.0, 0.0), (0.0, 1.0))


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        Shape(kind="blob", center=(0, 0), radius=1.0)
