"""Hyperbolic metric of the symmetric annulus and collar computations.

The annulus A(r, 1/r) carries its complete hyperbolic metric; the unit
circle is the core closed geodesic. The collar around the core geodesic is
the sub-annulus A(r0, 1/r0) whose hyperbolic half-width is delta0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad

from .errors import QuadratureFailure

# Below this geodesic length the direct formulas hit floating-point limits
# (overflowing sinh, fully cancelling arccos); asymptotic forms take over.
_TINY_LENGTH = 1e-6


def density(r: float, z: complex) -> float:
    """Hyperbolic metric density of A(r, 1/r) at the point z:
    pi/(2 log(1/r)) / (|z| cos(pi log|z| / (2 log(1/r))))."""
    if not 0.0 < r < 1.0:
        raise ValueError(f"annulus parameter must satisfy 0 < r < 1, got {r}")
    rho = abs(z)
    if not r < rho < 1.0 / r:
        raise ValueError(f"point modulus {rho} outside the open annulus ({r}, {1.0 / r})")
    big_l = math.log(1.0 / r)
    return (math.pi / (2.0 * big_l)) / (rho * math.cos(math.pi * math.log(rho) / (2.0 * big_l)))


def geodesic_length(r: float) -> float:
    """Hyperbolic length of the core geodesic of A(r, 1/r): pi^2/log(1/r)."""
    if not 0.0 < r < 1.0:
        raise ValueError(f"annulus parameter must satisfy 0 < r < 1, got {r}")
    return math.pi * math.pi / math.log(1.0 / r)


def length_to_r(ell: float) -> float:
    """Inverse of geodesic_length: the annulus parameter with core geodesic
    length ell, r = exp(-pi^2/ell)."""
    if ell <= 0.0:
        raise ValueError(f"geodesic length must be positive, got {ell}")
    return math.exp(-math.pi * math.pi / ell)


def _log_inv_collar_radius(ell: float) -> float:
    """log(1/r0) for the collar sub-annulus, stable for all ell > 0."""
    if ell <= 0.0:
        raise ValueError(f"geodesic length must be positive, got {ell}")
    if ell < _TINY_LENGTH:
        # arccos(tanh(ell/2)) = pi/2 - ell/2 + O(ell^3)
        return (2.0 * math.pi / ell) * (0.5 * math.pi - 0.5 * ell)
    return (2.0 * math.pi / ell) * math.acos(math.tanh(0.5 * ell))


def collar_radius(ell: float) -> float:
    """Inner radius r0 of the collar A(r0, 1/r0) around the core geodesic
    of length ell: log(1/r0) = (2 pi/ell) arccos(tanh(ell/2)).

    Satisfies r < r0 < 1 for the annulus with that geodesic length. For
    ell below roughly 1e-3 the true r0 underflows double precision; use
    the logarithmic form via collar_width-side identities in that regime.
    """
    return math.exp(-_log_inv_collar_radius(ell))


def collar_width(ell: float) -> float:
    """Hyperbolic half-width delta0 of the collar:
    delta0 = arccosh(1 + 2/sinh^2(ell/2)) / 2."""
    if ell <= 0.0:
        raise ValueError(f"geodesic length must be positive, got {ell}")
    if ell < _TINY_LENGTH:
        # sinh(ell/2) ~ ell/2, so the argument is asymptotically 1 + 8/ell^2
        return 0.5 * math.acosh(1.0 + 8.0 / (ell * ell))
    s = math.sinh(0.5 * ell)
    return 0.5 * math.acosh(1.0 + 2.0 / (s * s))


def radial_distance(r: float, rho1: float, rho2: float) -> float:
    """Hyperbolic distance from |z| = rho1 to |z| = rho2 along a radial
    segment of A(r, 1/r), by adaptive quadrature of the metric density.

    Radial segments are geodesics of the annulus metric, so this is the
    true hyperbolic distance between the two circles.
    """
    if not 0.0 < r < 1.0:
        raise ValueError(f"annulus parameter must satisfy 0 < r < 1, got {r}")
    if not r < rho1 <= rho2 < 1.0 / r:
        raise ValueError(
            f"radii must satisfy r < rho1 <= rho2 < 1/r, got {rho1}, {rho2}"
        )
    if rho1 == rho2:
        return 0.0
    value, err = quad(
        lambda t: density(r, t), rho1, rho2, epsabs=1e-10, epsrel=1e-12, limit=200
    )
    if err > 1e-8:
        raise QuadratureFailure(
            f"radial distance quadrature error estimate {err} exceeds tolerance"
        )
    return value


@dataclass(frozen=True)
class CollarResult:
    """Collar of the core geodesic: length ell, ambient annulus parameter r,
    collar radius r0 with r < r0 < 1, and hyperbolic half-width delta0
    satisfying cosh(2 delta0) = 1 + 2/sinh^2(ell/2)."""

    ell: float
    r: float
    r0: float
    delta0: float

    def to_dict(self) -> dict:
        return {"ell": self.ell, "r": self.r, "r0": self.r0, "delta0": self.delta0}


def collar_from_length(ell: float) -> CollarResult:
    """Assemble the full collar record for a core geodesic of length ell."""
    return CollarResult(
        ell=ell,
        r=length_to_r(ell),
        r0=collar_radius(ell),
        delta0=collar_width(ell),
    )
