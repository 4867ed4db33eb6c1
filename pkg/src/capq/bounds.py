"""Closed-form quasiconformal distortion bounds.

Every bound is a pure formula in the capacity, the level parameters, the
annulus radii, or the hyperbolic geodesic length. The constant BETA0 is the
two-slit ring modulus at the stored reference precision; all bound values
are computed with the stored constant, and beta0_consistency exposes the
gap to the independently computed modulus for diagnostics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .collar import collar_radius
from .errors import ValidityCondition
from .special import teichmuller_ring_modulus

BETA0 = 2.4984


def beta0_consistency() -> tuple[float, float, float]:
    """Return (stored constant, computed ring modulus, absolute gap)."""
    oracle = teichmuller_ring_modulus()
    return BETA0, oracle, abs(BETA0 - oracle)


def k_level(cap: float, a: float) -> float:
    """Distortion bound for the level-a equipotential line:
    (1/(1-|a|)) * (1 + 8*beta0/cap)."""
    if cap <= 0.0:
        raise ValueError(f"capacity must be positive, got {cap}")
    if not abs(a) < 1.0:
        raise ValueError(f"level must satisfy |a| < 1, got {a}")
    return (1.0 / (1.0 - abs(a))) * (1.0 + 8.0 * BETA0 / cap)


def k_zero_level(cap: float) -> float:
    """Distortion bound for the zero level: 1 + 8*beta0/cap."""
    if cap <= 0.0:
        raise ValueError(f"capacity must be positive, got {cap}")
    return 1.0 + 8.0 * BETA0 / cap


def k_homotopy(cap_lower_bound: float) -> float:
    """Distortion bound for a quasicircle in a prescribed homotopy class.

    The input is the capacity of any doubly connected subdomain around the
    curve. The true class constant is a supremum over such subdomains, so
    any subdomain capacity gives a valid, weaker bound.
    """
    if cap_lower_bound <= 0.0:
        raise ValueError(f"capacity must be positive, got {cap_lower_bound}")
    return 1.0 + 8.0 * BETA0 / cap_lower_bound


def k_between_levels(a: float, b: float) -> float:
    """Distortion of the extremal map taking the level-a curve to the
    level-b curve: max{(b+1)/(a+1), (1-b)/(1-a)}."""
    if not (-1.0 < a < 1.0 and -1.0 < b < 1.0):
        raise ValueError(f"levels must lie in (-1,1), got a={a}, b={b}")
    if a > b:
        raise ValueError(f"levels must be ordered a <= b, got a={a}, b={b}")
    return max((b + 1.0) / (a + 1.0), (1.0 - b) / (1.0 - a))


def k_annulus_circle_map(r: float, s: float, t: float) -> float:
    """Distortion of the extremal self-map of the annulus A(r, 1/r) that
    carries the circle |z| = s onto |z| = t.

    Returns the larger of the two capacity quotients
    (log t - log r)/(log s - log r) and (log t + log r)/(log s + log r).
    Arguments with s > t are accepted by exchanging the roles of the two
    circles, which inverts both quotients.
    """
    if not 0.0 < r < 1.0:
        raise ValueError(f"inner radius must satisfy 0 < r < 1, got {r}")
    if s > t:
        s, t = t, s
    if not r < s <= t < 1.0 / r:
        raise ValueError(
            f"circle radii must satisfy r < s <= t < 1/r, got r={r}, s={s}, t={t}"
        )
    lr, ls, lt = math.log(r), math.log(s), math.log(t)
    return max((lt - lr) / (ls - lr), (lt + lr) / (ls + lr))


def k_geodesic(ell: float) -> float:
    """Distortion bound for the closed hyperbolic geodesic of length ell:
    1 + 4*beta0*ell / (pi * arccos(tanh(ell/2)))."""
    if ell <= 0.0:
        raise ValueError(f"geodesic length must be positive, got {ell}")
    return 1.0 + 4.0 * BETA0 * ell / (math.pi * math.acos(math.tanh(0.5 * ell)))


def k_geodesic_doubly_connected(ell: float) -> float:
    """Geodesic bound specialized to doubly connected domains:
    1 + 4*beta0*ell/pi^2."""
    if ell <= 0.0:
        raise ValueError(f"geodesic length must be positive, got {ell}")
    return 1.0 + 4.0 * BETA0 * ell / (math.pi * math.pi)


def k_geodesic_simplified(ell: float) -> float:
    """Cleaner but weaker geodesic estimate: 1 + (5*ell/pi)*sqrt(e^ell + 1)."""
    if ell <= 0.0:
        raise ValueError(f"geodesic length must be positive, got {ell}")
    return 1.0 + (5.0 * ell / math.pi) * math.sqrt(math.exp(ell) + 1.0)


def k_geodesic_small(ell: float) -> float:
    """Short-geodesic estimate 1 + 3*ell/2, valid for ell <= 1 provided the
    collar radius satisfies log(1/r0) >= 2*beta0."""
    if ell <= 0.0:
        raise ValueError(f"geodesic length must be positive, got {ell}")
    if ell > 1.0:
        raise ValueError(f"short-geodesic estimate requires ell <= 1, got {ell}")
    log_inv_r0 = -math.log(collar_radius(ell))
    if log_inv_r0 < 2.0 * BETA0:
        raise ValidityCondition(
            f"log(1/r0) = {log_inv_r0:.6f} < 2*beta0 = {2.0 * BETA0:.6f} at ell={ell}"
        )
    return 1.0 + 1.5 * ell


@dataclass(frozen=True)
class BoundReport:
    """One evaluated bound: its tag, the inputs used, the value K, and the
    constant the formula was evaluated with."""

    name: str
    inputs: dict = field(default_factory=dict)
    K: float = 1.0
    beta0: float = BETA0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "inputs": dict(sorted(self.inputs.items())),
            "K": self.K,
            "beta0": self.beta0,
        }


_REGISTRY = {
    "k_level": (k_level, ("cap", "a")),
    "k_zero_level": (k_zero_level, ("cap",)),
    "k_homotopy": (k_homotopy, ("cap_lower_bound",)),
    "k_between_levels": (k_between_levels, ("a", "b")),
    "k_annulus_circle_map": (k_annulus_circle_map, ("r", "s", "t")),
    "k_geodesic": (k_geodesic, ("ell",)),
    "k_geodesic_doubly_connected": (k_geodesic_doubly_connected, ("ell",)),
    "k_geodesic_simplified": (k_geodesic_simplified, ("ell",)),
    "k_geodesic_small": (k_geodesic_small, ("ell",)),
}


def bound_names() -> list[str]:
    return sorted(_REGISTRY)


def evaluate_bound(name: str, **inputs: float) -> BoundReport:
    """Evaluate one named bound and wrap the result in a BoundReport."""
    if name not in _REGISTRY:
        raise ValueError(f"unknown bound {name!r}; known: {', '.join(bound_names())}")
    func, params = _REGISTRY[name]
    missing = [p for p in params if p not in inputs]
    extra = [p for p in inputs if p not in params]
    if missing or extra:
        raise ValueError(
            f"bound {name} takes {params}; missing {missing}, unexpected {extra}"
        )
    value = func(**{p: float(inputs[p]) for p in params})
    return BoundReport(name=name, inputs={p: float(inputs[p]) for p in params}, K=value)
