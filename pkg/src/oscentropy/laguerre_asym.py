"""Power-moment functionals of Laguerre polynomials and their large-parameter limits.

The workhorse integral is

    J1(sigma, rate, kappa, m; alpha) =
        int_0^inf x^(alpha+sigma-1) e^(-rate x) |L_m^(alpha)(x)|^kappa dx,

evaluated exactly by log-space quadrature (j1_exact) and by its
alpha -> infinity expansion (j1_asym, through the 1/alpha correction),
with a separate closed form for the rate == 1, kappa == 2 case
(corollary_asym).  The parameter driving everything downstream is
alpha = l + D/2 - 1, so these limits are the large-D limits.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .specfun import (
    LogValue,
    QuadratureSpec,
    _laguerre_sign_log,
    integrate_log,
    laguerre_roots,
    log_gamma,
)

__all__ = [
    "J1Params",
    "AsymptoticBreakdown",
    "j1_exact",
    "j1_asym",
    "corollary_asym",
    "d1_coefficient",
]

LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class J1Params:
    sigma: float
    rate: float
    kappa: float
    m: int
    alpha: float

    def __post_init__(self):
        if not self.rate > 0.0:
            raise ValueError(f"rate must be positive, got {self.rate}")
        if not self.kappa > 0.0:
            raise ValueError(f"kappa must be positive, got {self.kappa}")
        if self.m < 0 or int(self.m) != self.m:
            raise ValueError(f"m must be a non-negative integer, got {self.m}")
        if not self.alpha > 0.0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if not self.alpha + self.sigma > 0.0:
            raise ValueError(
                f"alpha + sigma must be positive for integrability, got "
                f"{self.alpha + self.sigma}"
            )


@dataclass(frozen=True)
class AsymptoticBreakdown:
    """A total together with its labeled additive pieces (all in log space)."""

    total_log: float
    terms: tuple

    @classmethod
    def from_terms(cls, terms):
        terms = tuple((str(k), float(v)) for k, v in terms)
        return cls(total_log=math.fsum(v for _, v in terms), terms=terms)

    def term(self, label):
        for k, v in self.terms:
            if k == label:
                return v
        raise KeyError(label)


def j1_exact(p, quad=None):
    """Quadrature value of the J1 functional as a LogValue.

    Panels are split at the zeros of the degree-m polynomial and ride a
    geometric ladder around the integrand peak near (alpha+sigma-1)/rate.
    """
    if not isinstance(p, J1Params):
        raise TypeError("j1_exact expects J1Params")
    expo = p.alpha + p.sigma - 1.0
    m, alpha, rate, kappa = p.m, float(p.alpha), float(p.rate), float(p.kappa)

    def f(xs):
        xs = np.asarray(xs, dtype=float)
        s, lg = _laguerre_sign_log(m, alpha, xs)
        with np.errstate(divide="ignore"):
            log_x = np.log(xs)
        logs = expo * log_x - rate * xs + kappa * lg
        signs = np.abs(s).astype(np.int8)
        return signs, logs

    splits = tuple(laguerre_roots(m, alpha)) if m >= 1 else ()
    peak = max(expo, 0.5) / rate
    scale = math.sqrt(max(alpha + p.sigma, 2.0)) / rate
    base = quad or QuadratureSpec()
    spec = QuadratureSpec(
        target_rel_tol=base.target_rel_tol,
        max_panels=base.max_panels,
        split_points=splits,
        tail_cutoff_log=base.tail_cutoff_log,
        peak=peak,
        peak_scale=scale,
    )
    return integrate_log(f, (0.0, math.inf), spec)


def d1_coefficient(sigma, rate, kappa, m):
    """The 1/alpha coefficient of the J1 expansion (rate != 1).

    Derived by the Laplace method at the saddle y0 = 1/rate of
    log y - rate*y, carrying the amplitude y^(sigma-1) |1-y|^(kappa m) and
    the 1/alpha correction of the polynomial factor through second order.
    Cross-checked against closed-form J1 integrals for m in {0, 1, 2} and
    kappa in {2, 4}; see also d1_coefficient_printed.
    """
    s, lam, k = float(sigma), float(rate), float(kappa)
    m = float(m)
    gap = lam - 1.0
    a = (s - 1.0) * lam - k * m * lam / gap
    b = -(s - 1.0) * lam * lam - k * m * (lam / gap) ** 2
    laplace = (a * a + b + 2.0 * lam * a) / (2.0 * lam * lam) + 1.0 / 12.0
    poly_corr = m * (m + 1.0) - m * (m - 1.0) / (gap * gap) + 2.0 * m / gap
    return laplace + 0.5 * k * poly_corr


def d1_coefficient_printed(sigma, rate, kappa, m):
    """A published variant of the 1/alpha coefficient, kept verbatim.

    It agrees with :func:`d1_coefficient` at m == 0 but is short by
    kappa/(rate-1) for m >= 1 (checked against closed-form integrals);
    the derived coefficient is the one used by j1_asym.
    """
    s, lam, k = float(sigma), float(rate), float(kappa)
    m = float(m)
    poly = (
        1.0
        - 12.0 * k * m * s * lam
        + 6.0 * s * s * lam * lam
        - 12.0 * s * s * lam
        - 6.0 * s * lam * lam
        + 12.0 * s * lam
        + 6.0 * k * k * m * m
        + 12.0 * k * m * s
        - 12.0 * k * m * m * lam
        - 12.0 * k * m * lam
        + 6.0 * k * m * lam * lam
        + 6.0 * k * m * m * lam * lam
        + lam * lam
        + 6.0 * s * s
        - 2.0 * lam
        - 6.0 * s
        + 6.0 * k * m * m
    )
    return poly / (12.0 * (lam - 1.0) ** 2)


def j1_asym(p, order=0, rate_gap_warn=0.05):
    """Large-alpha expansion of J1 as a labeled breakdown of its log.

    order 0 keeps the leading coefficient only; order 1 adds the 1/alpha
    correction.  rate == 1 is outside this expansion (the |rate-1|^(kappa m)
    prefactor vanishes); use corollary_asym.  When |rate-1| is below
    rate_gap_warn the same prefactor degrades the expansion and a warning is
    emitted; pass rate_gap_warn=0 to silence.
    """
    if not isinstance(p, J1Params):
        raise TypeError("j1_asym expects J1Params")
    if order not in (0, 1):
        raise ValueError(f"order must be 0 or 1, got {order}")
    if p.rate == 1.0:
        raise ValueError("rate == 1 is outside this expansion; use corollary_asym")
    if abs(p.rate - 1.0) < rate_gap_warn:
        warnings.warn(
            f"|rate - 1| = {abs(p.rate - 1.0):.3g} < {rate_gap_warn}: the "
            "expansion degrades near rate == 1",
            stacklevel=2,
        )
    a, s, lam, k, m = float(p.alpha), float(p.sigma), float(p.rate), float(p.kappa), p.m
    terms = [
        ("alpha log alpha", a * math.log(a)),
        ("linear", -a * (1.0 + math.log(lam))),
        ("log alpha", (s + k * m - 0.5) * math.log(a)),
        (
            "constant",
            0.5 * LOG_2PI
            - (s + k * m) * math.log(lam)
            + k * m * math.log(abs(lam - 1.0))
            - k * log_gamma(m + 1.0),
        ),
    ]
    if order >= 1:
        c = 1.0 + d1_coefficient(s, lam, k, m) / a
        if c <= 0.0:
            raise ValueError(
                "order-1 correction is non-positive at this alpha; the "
                "expansion is not usable here, use order 0"
            )
        terms.append(("D1 correction", math.log(c)))
    return AsymptoticBreakdown.from_terms(terms)


def corollary_asym(sigma, m, alpha):
    """Large-alpha expansion of J1 at rate == 1, kappa == 2.

    log of alpha^(alpha+sigma+m) e^(-alpha) sqrt(2 pi / alpha) / m!.
    """
    if m < 0 or int(m) != m:
        raise ValueError(f"m must be a non-negative integer, got {m}")
    if not alpha > 0.0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    a, s = float(alpha), float(sigma)
    terms = [
        ("alpha log alpha", a * math.log(a)),
        ("linear", -a),
        ("log alpha", (s + m - 0.5) * math.log(a)),
        ("constant", 0.5 * LOG_2PI - log_gamma(m + 1.0)),
    ]
    return AsymptoticBreakdown.from_terms(terms)
