"""Elliptic integrals, Jacobi elliptic sine, and ring-modulus utilities.

All functions use the modulus convention: the argument k of elliptic_K is
the modulus, K(k) = integral of 1/sqrt(1 - k^2 sin^2 t) over [0, pi/2].
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import NonConvergence

# Landen recursion: stop once the descending modulus drops below this;
# at that point sn(u, k) = sin(u) to double precision.
_SMALL_MODULUS = 1e-8
_LANDEN_DEPTH = 32


@dataclass(frozen=True)
class EllipticModulus:
    """A modulus k in [0,1) together with its complement k' = sqrt(1-k^2)."""

    k: float

    def __post_init__(self):
        if not 0.0 <= self.k < 1.0:
            raise ValueError(f"modulus must lie in [0,1), got {self.k}")

    @property
    def k_prime(self) -> float:
        # sqrt((1-k)(1+k)) keeps full precision for k near 1
        return math.sqrt((1.0 - self.k) * (1.0 + self.k))


def elliptic_K(k: float) -> float:
    """Complete elliptic integral of the first kind, by the
    arithmetic-geometric mean.

    The AGM converges quadratically; the loop exits well below double
    precision, giving relative error under 1e-13 on [0, 1).
    """
    if not 0.0 <= k < 1.0:
        raise ValueError(f"elliptic_K requires 0 <= k < 1, got {k}")
    a = 1.0
    b = math.sqrt((1.0 - k) * (1.0 + k))
    for _ in range(64):
        if abs(a - b) <= 1e-16 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (2.0 * a)


def elliptic_K_prime(k: float) -> float:
    """Complementary integral K'(k) = K(sqrt(1-k^2)) for 0 < k < 1."""
    if not 0.0 < k < 1.0:
        raise ValueError(f"elliptic_K_prime requires 0 < k < 1, got {k}")
    if k < 1e-8:
        # sqrt(1-k^2) rounds to 1; the log(4/k) asymptote is exact to
        # machine precision here (next term is k^2/4 * (log(4/k) - 1))
        return math.log(4.0 / k)
    return elliptic_K(math.sqrt((1.0 - k) * (1.0 + k)))


def _landen_moduli(k: float) -> list[float]:
    """Descending Landen sequence from k down to the small-modulus floor."""
    ks = []
    kk = k
    for _ in range(_LANDEN_DEPTH):
        if kk < _SMALL_MODULUS:
            return ks
        kp = math.sqrt((1.0 - kk) * (1.0 + kk))
        kk = (1.0 - kp) / (1.0 + kp)
        ks.append(kk)
    if kk >= _SMALL_MODULUS:
        raise NonConvergence(
            f"Landen recursion failed to contract from modulus {k}"
        )
    return ks


def jacobi_sn_cn(u: complex, k: float) -> tuple[complex, complex]:
    """Jacobi sn and cn at complex argument u, modulus k, via descending
    Landen transformation.

    The argument is contracted through the descending moduli, evaluated as
    a circular sine at the bottom, then lifted back level by level. cn is
    carried through the same lift so that sn^2 + cn^2 = 1 is preserved.
    """
    if not 0.0 <= k < 1.0:
        raise ValueError(f"jacobi_sn requires 0 <= k < 1, got {k}")
    if k < _SMALL_MODULUS:
        return cmath.sin(u), cmath.cos(u)
    ks = _landen_moduli(k)
    v = u
    for k1 in ks:
        v = v / (1.0 + k1)
    s = cmath.sin(v)
    c = cmath.cos(v)
    d = 1.0 + 0.0j
    for k1 in reversed(ks):
        denom = 1.0 + k1 * s * s
        s, c, d = (1.0 + k1) * s / denom, c * d / denom, (1.0 - k1 * s * s) / denom
    return s, c


def jacobi_sn(u: complex, k: float) -> complex:
    """Jacobi elliptic sine at complex argument u, modulus k in [0,1)."""
    return jacobi_sn_cn(u, k)[0]


def groetzsch_mu(r: float) -> float:
    """Ring modulus mu(r) = (pi/2) K'(r) / K(r) of the unit disc minus the
    radial slit [0, r]; strictly decreasing on (0, 1)."""
    if not 0.0 < r < 1.0:
        raise ValueError(f"groetzsch_mu requires 0 < r < 1, got {r}")
    return 0.5 * math.pi * elliptic_K_prime(r) / elliptic_K(r)


def teichmuller_ring_modulus() -> float:
    """Modulus of the plane minus the slits [0, 1/sqrt(2)] and [1, inf).

    The affine map z -> sqrt(2) z - 1 carries the slit pair to
    [-1, 0] and [sqrt(2)-1, inf); the standard two-slit ring identity
    then gives 2 mu(2^(-1/4)).
    """
    return 2.0 * groetzsch_mu(2.0 ** -0.25)


def solve_modulus_equation(r: float) -> float:
    """Solve (pi/4) K'(m)/K(m) = log(1/r^2) for m in (0,1) by bisection.

    K'/K is strictly decreasing in m, so the root is unique. Bisection
    runs to an interval of 1e-12 within 200 steps.
    """
    if not 0.0 < r < 1.0:
        raise ValueError(f"solve_modulus_equation requires 0 < r < 1, got {r}")
    target = math.log(1.0 / (r * r))

    def residual(m: float) -> float:
        return 0.25 * math.pi * elliptic_K_prime(m) / elliptic_K(m) - target

    # K'/K -> inf as m -> 0, so any lo below r^4 leaves residual(lo) > 0;
    # the cap keeps lo clear of underflow
    lo = max(min(1e-15, r ** 4), 1e-300)
    hi = 1.0 - 1e-15
    flo = residual(lo)
    if flo <= 0.0 or residual(hi) >= 0.0:
        raise NonConvergence(
            f"modulus equation bracket failed for r={r}; "
            "the solution is not representable in double precision"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= 1e-12:
            return mid
        fmid = residual(mid)
        if (flo > 0.0) == (fmid > 0.0):
            lo, flo = mid, fmid
        else:
            hi = mid
    raise NonConvergence(
        f"modulus equation bisection did not reach 1e-12 for r={r}"
    )
