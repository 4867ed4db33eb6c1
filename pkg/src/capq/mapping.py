"""Conformal map chain to the twisted slit domain, and the extremal
radial-stretch self-map of the annulus.

The five-stage chain carries the round annulus r < |z| < 1/r onto the
twisted slit domain whose boundary continua are the horizontal segment
[-1, 1] and the vertical rays |Im z| >= s0:

  1. scale           z -> r z                     to the annulus r^2 < |z| < 1
  2. joukowski       z -> (z + 1/z)/2             to an ellipse minus [-1, 1]
  3. elliptic_sn     z -> sqrt(m) sn(2K arcsin(z)/pi, m)
                                                  to the unit disc minus a slit
  4. inversion       z -> 1/z                     to the disc exterior minus rays
  5. anti_joukowski  z -> i (z - 1/z)/2           to the twisted slit domain

The rotation by i in stage 5 orients the image so the E continuum lands on
the horizontal segment and the F continuum on the vertical rays. The
radial stretch is the piecewise power map that fixes both boundary circles
and carries |z| = s to |z| = t; it is the distortion-minimal such map.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DegenerateJacobian, DomainViolation
from .special import EllipticModulus, elliptic_K, jacobi_sn, solve_modulus_equation

# evaluation this close to the Joukowski slit tips z = +-1 is rejected:
# the stage derivative vanishes there and downstream stages blow up
_TIP_GUARD = 1e-6

STAGE_NAMES = ("scale", "joukowski", "elliptic_sn", "inversion", "anti_joukowski")


@dataclass(frozen=True)
class MapChain:
    """Parameterized five-stage conformal chain for one annulus radius r."""

    r: float
    m: EllipticModulus
    stages: tuple[str, ...]
    big_k: float
    sqrt_m: float

    @property
    def s0(self) -> float:
        """Gap parameter of the image domain: the vertical rays start at
        +- i s0."""
        return 0.5 * (1.0 / self.sqrt_m - self.sqrt_m)


def build_chain(r: float) -> MapChain:
    """Solve the modulus equation for r and parameterize all five stages."""
    if not 0.0 < r < 1.0:
        raise ValueError(f"annulus parameter r must lie in (0,1), got {r}")
    m = solve_modulus_equation(r)
    return MapChain(
        r=r,
        m=EllipticModulus(m),
        stages=STAGE_NAMES,
        big_k=elliptic_K(m),
        sqrt_m=math.sqrt(m),
    )


def evaluate_stages(chain: MapChain, z: complex) -> tuple[complex, ...]:
    """Evaluate the chain, returning all five intermediate images.

    Raises DomainViolation with the 1-based stage index when a stage
    receives a point outside its domain.
    """
    z = complex(z)
    rho = abs(z)
    inv_r = 1.0 / chain.r
    if not chain.r < rho < inv_r:
        raise DomainViolation(f"|z| = {rho} outside ({chain.r}, {inv_r})", stage=1)
    w1 = chain.r * z

    if abs(w1 - 1.0) < _TIP_GUARD or abs(w1 + 1.0) < _TIP_GUARD:
        raise DomainViolation(f"point {w1} too close to a slit tip", stage=2)
    w2 = 0.5 * (w1 + 1.0 / w1)

    u = (2.0 * chain.big_k / math.pi) * cmath.asin(w2)
    w3 = chain.sqrt_m * jacobi_sn(u, chain.m.k)
    if abs(w3) > 1.0 + 1e-6:
        raise DomainViolation(f"slit-disc image escaped the disc: |w| = {abs(w3)}", stage=3)

    if w3 == 0.0:
        raise DomainViolation("inversion received zero", stage=4)
    w4 = 1.0 / w3

    w5 = 0.5j * (w4 - 1.0 / w4)
    return (w1, w2, w3, w4, w5)


def evaluate_chain(chain: MapChain, z: complex) -> complex:
    """Image of an interior annulus point under the full chain."""
    return evaluate_stages(chain, z)[-1]


@dataclass(frozen=True)
class AnnulusSelfMap:
    """Piecewise radial power self-map of the annulus r < |z| < 1/r.

    Fixes both boundary circles pointwise, carries |z| = s to |z| = t,
    and is continuous across |z| = s. claimed_K is the larger of the two
    radial exponents; it equals the maximal distortion whenever the
    stretch dominates the reciprocal compression.
    """

    r: float
    s: float
    t: float
    alpha_inner: float
    alpha_outer: float
    claimed_K: float

    def __call__(self, z: complex) -> complex:
        z = complex(z)
        rho = abs(z)
        inv_r = 1.0 / self.r
        slack = 1e-9 * inv_r
        if rho < self.r - slack or rho > inv_r + slack:
            raise ValueError(f"|z| = {rho} outside the closed annulus [{self.r}, {inv_r}]")
        if rho <= self.s:
            return self.r ** (1.0 - self.alpha_inner) * z * rho ** (self.alpha_inner - 1.0)
        return self.r ** (self.alpha_outer - 1.0) * z * rho ** (self.alpha_outer - 1.0)


def radial_stretch(r: float, s: float, t: float) -> AnnulusSelfMap:
    """Extremal radial stretch of the annulus r < |z| < 1/r sending the
    circle |z| = s to |z| = t.

    The inner exponent is log(t/r)/log(s/r), the outer exponent
    log(rt)/log(rs); the normalizing constants make the two power maps
    agree on |z| = s and fix the boundary circles pointwise.
    """
    if not 0.0 < r < 1.0:
        raise ValueError(f"annulus parameter r must lie in (0,1), got {r}")
    inv_r = 1.0 / r
    if not (r < s < inv_r and r < t < inv_r):
        raise ValueError(
            f"interface radii must lie strictly inside ({r}, {inv_r}), got s={s}, t={t}"
        )
    alpha_inner = (math.log(t) - math.log(r)) / (math.log(s) - math.log(r))
    alpha_outer = (math.log(t) + math.log(r)) / (math.log(s) + math.log(r))
    return AnnulusSelfMap(
        r=r,
        s=s,
        t=t,
        alpha_inner=alpha_inner,
        alpha_outer=alpha_outer,
        claimed_K=max(alpha_inner, alpha_outer),
    )


def pointwise_distortion(f, z: complex, h: float) -> float:
    """Distortion |Df|^2 / J at z from central finite differences.

    In complex form the difference quotients give f_z and f_zbar; the
    distortion is (|f_z| + |f_zbar|) / (|f_z| - |f_zbar|). Requires
    0 < h < 1e-4 and, for an AnnulusSelfMap, z at least 2h inside the
    annulus and 2h away from the interface circle |z| = s.
    """
    if not 0.0 < h < 1e-4:
        raise ValueError(f"step must satisfy 0 < h < 1e-4, got {h}")
    z = complex(z)
    rho = abs(z)
    r = getattr(f, "r", None)
    s = getattr(f, "s", None)
    if r is not None:
        if rho - r < 2.0 * h or 1.0 / r - rho < 2.0 * h:
            raise ValueError(f"|z| = {rho} within 2h of the annulus boundary")
    if s is not None and abs(rho - s) < 2.0 * h:
        raise ValueError(f"|z| = {rho} within 2h of the interface circle |z| = {s}")
    fx = (f(z + h) - f(z - h)) / (2.0 * h)
    fy = (f(z + 1j * h) - f(z - 1j * h)) / (2.0 * h)
    f_z = 0.5 * (fx - 1j * fy)
    f_zbar = 0.5 * (fx + 1j * fy)
    jac = abs(f_z) ** 2 - abs(f_zbar) ** 2
    if jac <= 0.0:
        raise DegenerateJacobian(f"Jacobian determinant {jac} at {z}")
    return (abs(f_z) + abs(f_zbar)) / (abs(f_z) - abs(f_zbar))
