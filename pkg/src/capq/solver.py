"""Finite-difference solver for the extremal potential of a capacitor.

The potential u is harmonic on the interior cells, u = -1 on the E
continuum, u = +1 on the F continuum, with an insulating (zero normal
derivative) condition on the grid edge when no continuum reaches it. The
conformal capacity is recovered from the discrete Dirichlet energy of u;
for the concentric annulus r < |z| < R it reproduces log(R/r).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import pyamg
from scipy import ndimage
from scipy import sparse
from scipy.sparse.linalg import cg

from .errors import DisconnectedDomain, NonConvergence, OutOfAnnulus
from .geometry import BOUNDARY_E, BOUNDARY_F, INTERIOR, OUTER, GridMask

# capacity above this indicates discretization breakdown, not physics
_RELIABLE_CAPACITY_LIMIT = 1e3

_PLUS = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)


@dataclass(frozen=True)
class PotentialField:
    """Solved extremal potential on the capacitor grid.

    values holds u at every cell center: -1 on E cells, +1 on F cells,
    the harmonic solution on interior cells. capacity is derived from the
    Dirichlet energy; reliable is False when the capacity exceeds the
    trustworthy range for the discretization.
    """

    values: np.ndarray
    mask: GridMask
    capacity: float
    energy: float
    residual: float
    iterations: int
    reliable: bool


def _interior_system_mask(classes: np.ndarray) -> np.ndarray:
    """Interior cells whose component connects E to F.

    Raises DisconnectedDomain when no interior component is adjacent to
    both continua (the field would be trivial). Components adjacent to
    neither continuum are insulated pockets; they are dropped from the
    linear system and keep potential zero.
    """
    interior = classes == INTERIOR
    e_mask = classes == BOUNDARY_E
    f_mask = classes == BOUNDARY_F
    if not e_mask.any() or not f_mask.any():
        raise DisconnectedDomain("a continuum has no cells on the grid")
    labels, count = ndimage.label(interior, structure=_PLUS)
    if count == 0:
        raise DisconnectedDomain("no interior cells between the continua")
    near_e = ndimage.binary_dilation(e_mask, structure=_PLUS) & interior
    near_f = ndimage.binary_dilation(f_mask, structure=_PLUS) & interior
    labels_e = set(np.unique(labels[near_e]))
    labels_f = set(np.unique(labels[near_f]))
    if not labels_e & labels_f:
        raise DisconnectedDomain("interior does not connect E to F")
    keep = np.array(sorted(labels_e | labels_f), dtype=labels.dtype)
    return interior & np.isin(labels, keep)


def solve_potential(mask: GridMask, tol: float = 1e-10) -> PotentialField:
    """Solve the 5-point Laplace system for the extremal potential.

    Conjugate gradients on the symmetric positive-definite system with an
    algebraic multigrid preconditioner, relative residual tolerance tol,
    iteration budget 50 per grid row. Grid-edge cells with missing
    neighbors simply omit them, which is the insulating condition.
    """
    if tol <= 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    classes = mask.classes
    n0, n1 = classes.shape
    solve_mask = _interior_system_mask(classes)

    index = -np.ones(classes.shape, dtype=np.int64)
    ii = np.nonzero(solve_mask)
    n_unknown = len(ii[0])
    index[ii] = np.arange(n_unknown)
    boundary_values = np.where(
        classes == BOUNDARY_E, -1.0, np.where(classes == BOUNDARY_F, 1.0, 0.0)
    )

    rows, cols, data = [], [], []
    diagonal = np.zeros(n_unknown)
    rhs = np.zeros(n_unknown)
    for di, dj in ((1, 0), (-1, 0), (0, 1), (0, -1)):
        ni, nj = ii[0] + di, ii[1] + dj
        in_grid = (ni >= 0) & (ni < n0) & (nj >= 0) & (nj < n1)
        ci = np.clip(ni, 0, n0 - 1)
        cj = np.clip(nj, 0, n1 - 1)
        neighbor_unknown = in_grid & solve_mask[ci, cj]
        neighbor_dirichlet = in_grid & (
            (classes[ci, cj] == BOUNDARY_E) | (classes[ci, cj] == BOUNDARY_F)
        )
        diagonal += (neighbor_unknown | neighbor_dirichlet).astype(float)
        rows.append(index[ii][neighbor_unknown])
        cols.append(index[ci[neighbor_unknown], cj[neighbor_unknown]])
        data.append(-np.ones(int(neighbor_unknown.sum())))
        np.add.at(
            rhs,
            index[ii][neighbor_dirichlet],
            boundary_values[ci[neighbor_dirichlet], cj[neighbor_dirichlet]],
        )
    rows.append(np.arange(n_unknown))
    cols.append(np.arange(n_unknown))
    data.append(diagonal)
    system = sparse.csr_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
        shape=(n_unknown, n_unknown),
    )

    # the aggregation setup estimates spectral radii from random start
    # vectors; pin the seed (and restore caller state) so repeated solves
    # of one spec give byte-identical reports
    rng_state = np.random.get_state()
    np.random.seed(1508961)
    try:
        preconditioner = pyamg.smoothed_aggregation_solver(system, max_coarse=64)
    finally:
        np.random.set_state(rng_state)
    iterations = 0

    def count(_):
        nonlocal iterations
        iterations += 1

    solution, info = cg(
        system,
        rhs,
        rtol=tol,
        atol=0.0,
        maxiter=50 * max(n0, n1),
        M=preconditioner.aspreconditioner(),
        callback=count,
    )
    if info != 0:
        raise NonConvergence(
            f"conjugate gradients stopped with status {info} after {iterations} iterations"
        )
    rhs_norm = float(np.linalg.norm(rhs))
    residual = float(np.linalg.norm(rhs - system @ solution)) / rhs_norm
    # the Krylov recurrence can report success while the true residual has
    # stalled at its rounding floor; hold the solve to the requested tol
    if residual > tol:
        raise NonConvergence(
            f"linear solve stalled at relative residual {residual:.3e}, above tol {tol:.3e}"
        )

    values = boundary_values.copy()
    values[ii] = solution
    energy = _dirichlet_energy(values, classes)
    cap = 8.0 * math.pi / energy
    return PotentialField(
        values=values,
        mask=mask,
        capacity=cap,
        energy=energy,
        residual=residual,
        iterations=iterations,
        reliable=cap <= _RELIABLE_CAPACITY_LIMIT,
    )


def _dirichlet_energy(values: np.ndarray, classes: np.ndarray) -> float:
    """Discrete Dirichlet energy: sum of squared differences over grid
    edges with at least one interior endpoint. The h factors cancel in
    two dimensions."""
    interior = classes == INTERIOR
    in_domain = classes != OUTER
    total = 0.0
    for axis in (0, 1):
        lo = [slice(None)] * 2
        hi = [slice(None)] * 2
        lo[axis] = slice(0, -1)
        hi[axis] = slice(1, None)
        diff = values[tuple(hi)] - values[tuple(lo)]
        active = (
            in_domain[tuple(lo)]
            & in_domain[tuple(hi)]
            & (interior[tuple(lo)] | interior[tuple(hi)])
        )
        total += float(np.sum(diff[active] ** 2))
    return total


def capacity(field: PotentialField) -> float:
    """Conformal capacity of the solved capacitor."""
    return field.capacity


def annulus_extremal(r: float, R: float, z: complex) -> float:
    """Analytic extremal potential of the annulus r < |z| < R:
    u(z) = 2 log(|z|/r) / log(R/r) - 1, so u = -1 on the inner circle and
    u = +1 on the outer circle."""
    if not 0.0 < r < R:
        raise ValueError(f"annulus radii must satisfy 0 < r < R, got {r}, {R}")
    rho = abs(complex(z))
    if rho < r or rho > R:
        raise OutOfAnnulus(f"|z| = {rho} outside [{r}, {R}]")
    return 2.0 * math.log(rho / r) / math.log(R / r) - 1.0
