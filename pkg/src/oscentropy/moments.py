"""Radial expectation values, Heisenberg-like products and bound checks.

Exact moments route through the J1 quadrature at rate 1; the asymptotic
(large D) moments drop all quantum-number dependence: <r^k> ~ (D/2 lambda)^(k/2)
and <p^t> ~ (lambda D/2)^(t/2).
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

from .laguerre_asym import J1Params, j1_exact
from .specfun import log_gamma
from .states import Space, validate

__all__ = [
    "MomentQuery",
    "BoundsReport",
    "ClassicalOrbit",
    "radial_moment",
    "heisenberg_product",
    "check_bounds",
    "characteristic_length",
]

MODES = ("exact", "asymptotic")


@dataclass(frozen=True)
class MomentQuery:
    state: object
    order: float
    space: Space = Space.POSITION
    mode: str = "exact"

    def __post_init__(self):
        if self.order < 0.0:
            raise ValueError(f"moment order must be >= 0, got {self.order}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        object.__setattr__(self, "space", Space(self.space))


def radial_moment(query, quad=None):
    """<r^k> or <p^t> for the queried state, exact or asymptotic."""
    state = query.state
    validate(state)
    k = float(query.order)
    if query.mode == "asymptotic":
        if query.space is Space.POSITION:
            return (0.5 * state.D / state.lam) ** (0.5 * k)
        return (0.5 * state.D * state.lam) ** (0.5 * k)

    lam_sign = -1.0 if query.space is Space.POSITION else 1.0
    p = J1Params(sigma=0.5 * k + 1.0, rate=1.0, kappa=2.0, m=state.n, alpha=state.alpha)
    value = j1_exact(p, quad=quad)
    log_moment = (
        log_gamma(state.n + 1.0)
        - log_gamma(state.n + state.l + 0.5 * state.D)
        + lam_sign * 0.5 * k * math.log(state.lam)
        + value.log_mag
    )
    return math.exp(log_moment)


def heisenberg_product(state, k, t, mode="exact", quad=None):
    """<r^k><p^t>; asymptotically lambda^((t-k)/2) (D/2)^((k+t)/2)."""
    validate(state)
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if mode == "asymptotic":
        return state.lam ** (0.5 * (t - k)) * (0.5 * state.D) ** (0.5 * (k + t))
    r = radial_moment(MomentQuery(state, k, Space.POSITION, "exact"), quad=quad)
    p = radial_moment(MomentQuery(state, t, Space.MOMENTUM, "exact"), quad=quad)
    return r * p


class BoundsReport(NamedTuple):
    product: float
    heisenberg_bound: float
    central_bound: float
    heisenberg_satisfied: bool
    central_satisfied: bool
    heisenberg_slack: float
    central_slack: float


def check_bounds(state, quad=None):
    """Exact <r^2><p^2> against the D^2/4 and (l + D/2)^2 lower bounds."""
    validate(state)
    product = heisenberg_product(state, 2.0, 2.0, "exact", quad=quad)
    heis = 0.25 * state.D * state.D
    central = (state.l + 0.5 * state.D) ** 2
    tol = 1e-9 * max(product, 1.0)
    return BoundsReport(
        product=product,
        heisenberg_bound=heis,
        central_bound=central,
        heisenberg_satisfied=product >= heis - tol,
        central_satisfied=product >= central - tol,
        heisenberg_slack=product - heis,
        central_slack=product - central,
    )


class ClassicalOrbit(NamedTuple):
    r_c: float
    energy: float
    angular_momentum: float


def characteristic_length(state):
    """Radius, energy and angular momentum of the effective classical orbit.

    r_c = sqrt(D / 2 lambda); at large D the particle behaves like one on a
    circular orbit of this radius with E = lambda^2 r_c^2 and L = D/2.
    """
    validate(state)
    r_c = math.sqrt(0.5 * state.D / state.lam)
    return ClassicalOrbit(r_c=r_c, energy=state.lam**2 * r_c**2,
                          angular_momentum=0.5 * state.D)
