"""Renyi, Shannon and Tsallis entropies of harmonic states, exact and asymptotic.

The total entropy splits exactly into a radial and an angular part.  The
radial part is a Laguerre power-moment quadrature; the angular part is a
product of one-dimensional Gegenbauer factor integrals, one per chain
transition, with the runs of equal chain values collapsing to closed
gamma-function telescopes.  That keeps the exact angular cost O(number of
runs) even at D = 1e6.

Asymptotic (large D) breakdowns carry their subleading constants so that the
radial and angular pieces sum term-by-term to the total's canonical form.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .laguerre_asym import AsymptoticBreakdown
from .specfun import (
    LOG_2PI,
    LogValue,
    QuadratureSpec,
    _gegenbauer_sign_log,
    _laguerre_sign_log,
    digamma,
    gegenbauer_roots,
    integrate_log,
    laguerre_roots,
    log_gamma,
)
from .states import Space, validate

__all__ = [
    "EntropySpec",
    "EntropyResult",
    "UncertaintyReport",
    "entropic_moment_radial",
    "renyi_radial",
    "renyi_angular",
    "renyi_total",
    "m_tilde",
    "e_tilde",
    "e_tilde_growth_exponent",
    "shannon",
    "tsallis_from_renyi",
    "disequilibrium",
    "uncertainty_sum",
    "entropy",
]

Q_NEAR_ONE = 1e-6  # Renyi calls this close to q = 1 route to the Shannon path

MODES = ("exact", "asymptotic")


@dataclass(frozen=True)
class EntropySpec:
    q: float
    space: Space = Space.POSITION
    mode: str = "exact"

    def __post_init__(self):
        if not self.q > 0.0:
            raise ValueError(f"q must be positive, got {self.q}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        object.__setattr__(self, "space", Space(self.space))


@dataclass(frozen=True)
class EntropyResult:
    """An entropy value in nats, with its radial/angular split.

    For asymptotic mode, ``breakdown`` labels the D log D, linear-in-D,
    log D and constant pieces; ``conjecture`` marks the Shannon large-D
    formulas, which are conjectural; ``validity`` carries a note when the
    subleading terms are not small at the requested D.
    """

    value: float
    radial_part: float = None
    angular_part: float = None
    breakdown: AsymptoticBreakdown = None
    conjecture: bool = False
    validity: str = None


class UncertaintyReport(NamedTuple):
    q: float
    p: float
    sum_exact: float
    sum_asym: float
    renyi_bound: float
    renyi_slack: float
    shannon_sum: float
    shannon_bound: float
    shannon_slack: float


def _space_strength(state, space):
    return state.lam if Space(space) is Space.POSITION else 1.0 / state.lam


def _ln_q_power(q):
    """log of q^(1/(q-1)), continued through q = 1 by its limit 1."""
    if abs(q - 1.0) < Q_NEAR_ONE:
        return 1.0
    return math.log(q) / (q - 1.0)


def _alpha_j(D, j):
    return 0.5 * (D - j - 1.0)


def _chain_blocks(state):
    """Split the D-2 angular factors into trivial blocks and transitions.

    Returns (blocks, transitions): blocks are (value, j_first, j_last) spans
    where consecutive chain entries are equal; transitions are
    (j, value, next_value) at the run boundaries.  Factor index j runs
    1..D-2 and pairs chain entries (mu_j, mu_(j+1)).
    """
    runs = state.effective_runs()
    blocks = []
    transitions = []
    pos = 1
    for i, (v, mult) in enumerate(runs):
        first = pos
        last = pos + mult - 1
        if mult >= 2:
            blocks.append((v, first, last - 1))
        if i < len(runs) - 1:
            transitions.append((last, v, runs[i + 1][0]))
        pos = last + 1
    return blocks, transitions


def _with_quad(quad, splits, peak, scale):
    base = quad or QuadratureSpec()
    return QuadratureSpec(
        target_rel_tol=base.target_rel_tol,
        max_panels=base.max_panels,
        split_points=tuple(splits),
        tail_cutoff_log=base.tail_cutoff_log,
        peak=peak,
        peak_scale=scale,
    )


# ---------------------------------------------------------------------------
# angular factor integrals
# ---------------------------------------------------------------------------

def _transition_log_norm(D, j, v, v_next):
    """log of the normalization factor attached to transition factor j."""
    aj = _alpha_j(D, j)
    delta = v - v_next
    beta = aj + v_next
    return (
        math.log(aj + v)
        + log_gamma(delta + 1.0)
        + 2.0 * log_gamma(beta)
        - math.log(math.pi)
        - (1.0 - 2.0 * aj - 2.0 * v_next) * math.log(2.0)
        - log_gamma(2.0 * beta + delta)
    )


def _gegenbauer_norm_log(delta, beta):
    """log of the squared weighted norm of the degree-delta Gegenbauer polynomial."""
    return (
        math.log(math.pi)
        + (1.0 - 2.0 * beta) * math.log(2.0)
        + log_gamma(delta + 2.0 * beta)
        - log_gamma(delta + 1.0)
        - math.log(delta + beta)
        - 2.0 * log_gamma(beta)
    )


def _sin_power_log_integral(exponent):
    """log of int_0^pi sin^s theta dtheta = sqrt(pi) G((s+1)/2) / G(s/2+1)."""
    return (
        0.5 * math.log(math.pi)
        + log_gamma(0.5 * (exponent + 1.0))
        - log_gamma(0.5 * exponent + 1.0)
    )


def _angular_factor_log_I(D, j, v, v_next, q, quad=None, force_quadrature=False):
    """log of one angular factor integral at power q.

    Trivial factors (v == v_next) have the beta-function closed form; a
    transition hosts a degree v - v_next Gegenbauer polynomial and goes
    through quadrature on t = cos(theta) with splits at the polynomial zeros.
    force_quadrature sends trivial factors through quadrature too (used to
    exercise the engine against the closed forms).
    """
    aj = _alpha_j(D, j)
    delta = v - v_next
    if delta == 0 and not force_quadrature:
        return _sin_power_log_integral(2.0 * q * v + 2.0 * aj)

    beta = aj + v_next
    expo = q * v_next + aj - 0.5
    two_q = 2.0 * q

    def f(ts):
        ts = np.asarray(ts, dtype=float)
        s, lc = _gegenbauer_sign_log(delta, beta, ts)
        logs = two_q * lc
        if expo != 0.0:
            logs = logs + expo * np.log1p(-ts * ts)
        return np.abs(s).astype(np.int8), logs

    spec = _with_quad(
        quad,
        gegenbauer_roots(delta, beta),
        peak=0.0,
        scale=1.0 / math.sqrt(q * v_next + aj + 1.0),
    )
    value = integrate_log(f, (-1.0, 1.0), spec)
    if value.sign <= 0:
        raise ArithmeticError("angular factor integral must be positive")
    return value.log_mag


def _log_angular_moment(state, q, quad=None, force_quadrature=False):
    """log of the angular entropic moment: int |Y|^(2q) over the sphere.

    q * log(N^2) + log(2 pi) + sum over factors of log I_j(q), with the
    trivial runs telescoped into four log-gamma evaluations each.
    """
    D = state.D
    blocks, transitions = _chain_blocks(state)

    log_n2 = -LOG_2PI
    sum_i = 0.0
    for v, ja, je in blocks:
        count = je - ja + 1
        x_a = v + _alpha_j(D, ja)
        x_e = v + _alpha_j(D, je)
        log_n2 += (
            log_gamma(x_a + 1.0) - log_gamma(x_e + 0.5) - 0.5 * count * math.log(math.pi)
        )
        if force_quadrature:
            for j in range(ja, je + 1):
                sum_i += _angular_factor_log_I(
                    D, j, v, v, q, quad, force_quadrature=True
                )
        else:
            u_a = q * v + _alpha_j(D, ja)
            u_e = q * v + _alpha_j(D, je)
            sum_i += (
                0.5 * count * math.log(math.pi)
                + log_gamma(u_e + 0.5)
                - log_gamma(u_a + 1.0)
            )
    for j, v, v_next in transitions:
        log_n2 += _transition_log_norm(D, j, v, v_next)
        sum_i += _angular_factor_log_I(D, j, v, v_next, q, quad, force_quadrature)
    return q * log_n2 + LOG_2PI + sum_i


# ---------------------------------------------------------------------------
# angular correction factors of the large-D expansion
# ---------------------------------------------------------------------------

def _ln_m_tilde(state, q):
    runs = state.effective_runs()
    n_runs = len(runs)
    head, tail = runs[0][0], runs[-1][0]
    total = q * (head - tail) * math.log(4.0) + 0.5 * (1 - n_runs) * math.log(math.pi)
    for (v, _), (v_next, _) in zip(runs[:-1], runs[1:]):
        delta = v - v_next
        total += log_gamma(q * delta + 0.5) - q * log_gamma(delta + 1.0)
    return total


def _ln_e_tilde(state):
    runs = state.effective_runs()
    total = 0.0
    boundary = 0
    for (v, mult), (v_next, _) in zip(runs[:-1], runs[1:]):
        boundary += mult
        ak = _alpha_j(state.D, boundary)
        delta = v - v_next
        total += (
            2.0 * delta * math.log(ak + v_next)
            + log_gamma(2.0 * ak + 2.0 * v_next)
            - log_gamma(2.0 * ak + v + v_next)
            + log_gamma(ak + v_next)
            - log_gamma(ak + v)
        )
    return total


def m_tilde(state, q):
    """Transition-product correction factor of the angular asymptotics."""
    validate(state)
    if not q > 0.0:
        raise ValueError(f"q must be positive, got {q}")
    return LogValue(1, _ln_m_tilde(state, q))


def e_tilde(state):
    """Boundary-parameter correction factor of the angular asymptotics."""
    validate(state)
    return LogValue(1, _ln_e_tilde(state))


def e_tilde_growth_exponent(state):
    """The predicted large-D growth exponent, l - |mu_(D-1)|."""
    validate(state)
    runs = state.effective_runs()
    return runs[0][0] - runs[-1][0]


# ---------------------------------------------------------------------------
# radial entropic moments
# ---------------------------------------------------------------------------

def _log_radial_power_integral(state, q, quad=None):
    """log of int_0^inf x^(alpha + l(q-1)) e^(-qx) |L_n^(alpha)(x)|^(2q) dx."""
    n, l, alpha = state.n, state.l, state.alpha
    expo = alpha + l * (q - 1.0)
    two_q = 2.0 * q

    def f(xs):
        xs = np.asarray(xs, dtype=float)
        s, lg = _laguerre_sign_log(n, alpha, xs)
        with np.errstate(divide="ignore"):
            log_x = np.log(xs)
        logs = expo * log_x - q * xs + two_q * lg
        return np.abs(s).astype(np.int8), logs

    spec = _with_quad(
        quad,
        laguerre_roots(n, alpha) if n else (),
        peak=max(expo, 0.5) / q,
        scale=math.sqrt(max(expo + 1.0, 2.0)) / q,
    )
    value = integrate_log(f, (0.0, math.inf), spec)
    if value.sign <= 0:
        raise ArithmeticError("radial entropic integral must be positive")
    return value.log_mag


def entropic_moment_radial(state, q, space=Space.POSITION, quad=None):
    """The radial entropic moment int_0^inf rho(r)^q r^(D-1) dr as a LogValue.

    Momentum space is the lambda -> 1/lambda substitution.  The convergence
    condition D/2 + l q - 1 > -1 holds for every valid state but is guarded
    anyway.
    """
    validate(state)
    if not q > 0.0:
        raise ValueError(f"q must be positive, got {q}")
    if not 0.5 * state.D + state.l * q - 1.0 > -1.0:
        raise ValueError("entropic moment does not converge for these parameters")
    lam = _space_strength(state, space)
    n, alpha, D = state.n, state.alpha, state.D
    log_w = (
        (q - 1.0) * math.log(2.0)
        + (q - 1.0) * 0.5 * D * math.log(lam)
        + q * (log_gamma(n + 1.0) - log_gamma(alpha + n + 1.0))
        + _log_radial_power_integral(state, q, quad)
    )
    return LogValue(1, log_w)


def _ln_c_tilde(n, l, q):
    """log of the constant in the radial Renyi large-D expansion."""
    total = (q - 1.0) * math.log(2.0) + 0.5 * (1.0 - q) * LOG_2PI
    total -= l * q * math.log(q)
    if n:
        total += 2.0 * q * n * math.log(abs(q - 1.0) / q)
    total -= q * log_gamma(n + 1.0)
    return total


def _radial_asym_breakdown(state, q, space):
    D, n = state.D, state.n
    lam = _space_strength(state, Space(space))
    ln_d = math.log(D)
    qn_coeff = q * n / (1.0 - q)
    terms = [
        ("D log D", 0.5 * D * ln_d),
        ("linear", 0.5 * D * (_ln_q_power(q) - math.log(2.0 * lam) - 1.0)),
        ("log D", (qn_coeff - 0.5) * ln_d),
        (
            "constant",
            _ln_c_tilde(n, state.l, q) / (1.0 - q)
            + (0.5 - qn_coeff) * math.log(2.0),
        ),
    ]
    return AsymptoticBreakdown.from_terms(terms)


def _angular_asym_breakdown(state, q):
    D = state.D
    ln_d = math.log(D)
    const = -0.5 * math.log(4.0 * math.pi) + (
        q * _ln_e_tilde(state) + _ln_m_tilde(state, q)
    ) / (1.0 - q)
    terms = [
        ("D log D", -0.5 * D * ln_d),
        ("linear", 0.5 * D * math.log(2.0 * math.e * math.pi)),
        ("log D", 0.5 * ln_d),
        ("constant", const),
    ]
    return AsymptoticBreakdown.from_terms(terms)


def renyi_radial(state, q, space=Space.POSITION, mode="exact", quad=None):
    """Radial Renyi entropy; q near 1 routes to the radial Shannon path."""
    validate(state)
    if not q > 0.0:
        raise ValueError(f"q must be positive, got {q}")
    if abs(q - 1.0) < Q_NEAR_ONE:
        if mode == "exact":
            value = _shannon_radial_exact(state, space, quad)
        else:
            lam = _space_strength(state, space)
            value = 0.5 * state.D * math.log(state.D) - 0.5 * state.D * math.log(
                2.0 * lam
            )
        return EntropyResult(value=value, radial_part=value, angular_part=0.0)
    if mode == "exact":
        w = entropic_moment_radial(state, q, space, quad)
        value = w.log_mag / (1.0 - q)
        return EntropyResult(value=value, radial_part=value, angular_part=0.0)
    if mode != "asymptotic":
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    bd = _radial_asym_breakdown(state, q, space)
    return EntropyResult(
        value=bd.total_log, radial_part=bd.total_log, angular_part=0.0, breakdown=bd
    )


def renyi_angular(state, q, mode="exact", quad=None, force_quadrature=False):
    """Angular Renyi entropy of the hyperspherical harmonic."""
    validate(state)
    if not q > 0.0:
        raise ValueError(f"q must be positive, got {q}")
    if abs(q - 1.0) < Q_NEAR_ONE and mode == "exact":
        value = _shannon_angular_exact(state, quad)
        return EntropyResult(value=value, radial_part=0.0, angular_part=value)
    if mode == "exact":
        value = _log_angular_moment(state, q, quad, force_quadrature) / (1.0 - q)
        return EntropyResult(value=value, radial_part=0.0, angular_part=value)
    if mode != "asymptotic":
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    bd = _angular_asym_breakdown(state, q)
    return EntropyResult(
        value=bd.total_log, radial_part=0.0, angular_part=bd.total_log, breakdown=bd
    )


def _merge_breakdowns(radial, angular):
    labels = [k for k, _ in radial.terms]
    merged = [(k, radial.term(k) + angular.term(k)) for k in labels]
    return AsymptoticBreakdown.from_terms(merged)


def renyi_total(state, q, space=Space.POSITION, mode="exact", quad=None):
    """Total Renyi entropy, radial plus angular (the split is exact)."""
    validate(state)
    if not q > 0.0:
        raise ValueError(f"q must be positive, got {q}")
    if abs(q - 1.0) < Q_NEAR_ONE:
        res = shannon(state, space, "exact" if mode == "exact" else "conjecture", quad)
        return res
    if mode == "exact":
        rad = renyi_radial(state, q, space, "exact", quad).value
        ang = renyi_angular(state, q, "exact", quad).value
        return EntropyResult(value=rad + ang, radial_part=rad, angular_part=ang)
    if mode != "asymptotic":
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    rad_bd = _radial_asym_breakdown(state, q, space)
    ang_bd = _angular_asym_breakdown(state, q)
    bd = _merge_breakdowns(rad_bd, ang_bd)
    value = bd.total_log
    validity = None
    sub = abs(bd.term("log D")) + abs(bd.term("constant"))
    if sub > 0.1 * abs(value):
        validity = (
            f"subleading terms are {sub:.3g} against a total of {value:.3g} "
            f"at D={state.D}; the expansion is not yet dominant here"
        )
    return EntropyResult(
        value=value,
        radial_part=rad_bd.total_log,
        angular_part=ang_bd.total_log,
        breakdown=bd,
        validity=validity,
    )


# ---------------------------------------------------------------------------
# Shannon entropies
# ---------------------------------------------------------------------------

def _shannon_radial_exact(state, space, quad=None):
    """- int rho log rho r^(D-1) dr by signed log-space quadrature."""
    lam = _space_strength(state, space)
    n, l, alpha, D = state.n, state.l, state.alpha, state.D
    log_c = (
        math.log(2.0)
        + log_gamma(n + 1.0)
        - log_gamma(alpha + n + 1.0)
        + 0.5 * D * math.log(lam)
    )

    def f(xs):
        xs = np.asarray(xs, dtype=float)
        s, lg = _laguerre_sign_log(n, alpha, xs)
        with np.errstate(divide="ignore"):
            log_x = np.log(xs)
        bracket = log_c - xs + l * log_x + 2.0 * lg
        weight_log = alpha * log_x - xs + 2.0 * lg
        signs = np.sign(bracket).astype(np.int8)
        with np.errstate(divide="ignore"):
            logs = weight_log + np.log(np.abs(bracket))
        dead = (s == 0) | np.isneginf(lg)
        signs = np.where(dead, np.int8(0), signs)
        logs = np.where(dead, -math.inf, logs)
        return signs, logs

    spec = _with_quad(
        quad,
        laguerre_roots(n, alpha) if n else (),
        peak=max(alpha, 0.5),
        scale=math.sqrt(max(alpha + 1.0, 2.0)),
    )
    integral = integrate_log(f, (0.0, math.inf), spec)
    scale_log = log_gamma(n + 1.0) - log_gamma(alpha + n + 1.0)
    return -integral.sign * math.exp(scale_log + integral.log_mag)


def _transition_shannon_term(D, j, v, v_next, quad=None):
    """Expectation of log(|C|^2 sin^(2 v_next)) under one transition factor."""
    aj = _alpha_j(D, j)
    delta = v - v_next
    beta = aj + v_next
    norm_log = _gegenbauer_norm_log(delta, beta)

    def f(ts):
        ts = np.asarray(ts, dtype=float)
        s, lc = _gegenbauer_sign_log(delta, beta, ts)
        log_one_mt2 = np.log1p(-ts * ts)
        bracket = 2.0 * lc + v_next * log_one_mt2
        weight_log = 2.0 * lc + (beta - 0.5) * log_one_mt2
        signs = np.sign(bracket).astype(np.int8)
        with np.errstate(divide="ignore", invalid="ignore"):
            logs = weight_log + np.log(np.abs(bracket))
        dead = (s == 0) | np.isneginf(lc)
        signs = np.where(dead, np.int8(0), signs)
        logs = np.where(dead, -math.inf, logs)
        return signs, logs

    spec = _with_quad(
        quad,
        gegenbauer_roots(delta, beta),
        peak=0.0,
        scale=1.0 / math.sqrt(beta + 1.0),
    )
    num = integrate_log(f, (-1.0, 1.0), spec)
    if num.sign == 0:
        return 0.0
    return num.sign * math.exp(num.log_mag - norm_log)


def _shannon_angular_exact(state, quad=None):
    """- int |Y|^2 log |Y|^2 over the sphere, factor by factor.

    The log of the harmonic splits into a sum over factors, so each
    cross-term is a one-dimensional integral against that factor's own
    normalized weight; trivial runs have digamma closed forms.
    """
    D = state.D
    blocks, transitions = _chain_blocks(state)

    log_n2 = -LOG_2PI
    expectation = 0.0
    for v, ja, je in blocks:
        count = je - ja + 1
        x_a = v + _alpha_j(D, ja)
        x_e = v + _alpha_j(D, je)
        log_n2 += (
            log_gamma(x_a + 1.0) - log_gamma(x_e + 0.5) - 0.5 * count * math.log(math.pi)
        )
        if v:
            expectation += v * (digamma(x_e + 0.5) - digamma(x_a + 1.0))
    for j, v, v_next in transitions:
        log_n2 += _transition_log_norm(D, j, v, v_next)
        expectation += _transition_shannon_term(D, j, v, v_next, quad)
    return -log_n2 - expectation


def shannon(state, space=Space.POSITION, mode="exact", quad=None):
    """Shannon entropy, exact or the conjectured large-D leading term.

    Conjecture mode returns (D/2) log(e pi / lambda) in position space and
    (D/2) log(e pi lambda) in momentum space, flagged conjecture=True.
    """
    validate(state)
    if mode in ("conjecture", "asymptotic"):
        lam = _space_strength(state, space)
        D = state.D
        ln_d = math.log(D)
        radial = 0.5 * D * ln_d - 0.5 * D * math.log(2.0 * lam)
        angular = -0.5 * D * ln_d + 0.5 * D * math.log(2.0 * math.e * math.pi)
        bd = AsymptoticBreakdown.from_terms(
            [("linear", 0.5 * D * (1.0 + math.log(math.pi) - math.log(lam)))]
        )
        return EntropyResult(
            value=radial + angular,
            radial_part=radial,
            angular_part=angular,
            breakdown=bd,
            conjecture=True,
        )
    if mode != "exact":
        raise ValueError("mode must be 'exact' or 'conjecture'")
    rad = _shannon_radial_exact(state, space, quad)
    ang = _shannon_angular_exact(state, quad)
    return EntropyResult(value=rad + ang, radial_part=rad, angular_part=ang)


# ---------------------------------------------------------------------------
# derived measures and uncertainty sums
# ---------------------------------------------------------------------------

def tsallis_from_renyi(renyi_value, q):
    """T_q = [exp((1-q) R_q) - 1] / (1-q)."""
    if abs(q - 1.0) < Q_NEAR_ONE:
        raise ValueError("Tsallis conversion needs q != 1")
    return math.expm1((1.0 - q) * renyi_value) / (1.0 - q)


def disequilibrium(state, space=Space.POSITION, quad=None, convention="integral"):
    """Density self-overlap int rho^2 = exp(-R_2).

    convention="printed" returns exp(+R_2) instead, matching a published
    sign variant; the default is the one consistent with W_q = e^((1-q) R_q).
    """
    r2 = renyi_total(state, 2.0, space, "exact", quad).value
    if convention == "integral":
        return math.exp(-r2)
    if convention == "printed":
        return math.exp(r2)
    raise ValueError("convention must be 'integral' or 'printed'")


def conjugate_exponent(q):
    """p with 1/p + 1/q = 2; defined for q > 1/2."""
    if not q > 0.5:
        raise ValueError(f"conjugate exponent needs q > 1/2, got {q}")
    return q / (2.0 * q - 1.0)


def uncertainty_sum(state, q, quad=None):
    """Position-momentum Renyi (and Shannon) uncertainty sums with bounds.

    The exact sum R_q[position] + R_p[momentum] with 1/p + 1/q = 2 is
    compared against D log(p^(1/(2(p-1))) q^(1/(2(q-1))) pi); the ground
    state saturates it.  The Shannon sum is compared against D (1 + log pi).
    """
    validate(state)
    if not q > 0.5:
        raise ValueError(f"uncertainty sum needs q > 1/2, got {q}")
    if abs(q - 1.0) < Q_NEAR_ONE:
        raise ValueError("q == 1 is the Shannon case; its sum is reported anyway")
    p = conjugate_exponent(q)
    D = state.D
    sum_exact = (
        renyi_total(state, q, Space.POSITION, "exact", quad).value
        + renyi_total(state, p, Space.MOMENTUM, "exact", quad).value
    )
    sum_asym = (
        renyi_total(state, q, Space.POSITION, "asymptotic").value
        + renyi_total(state, p, Space.MOMENTUM, "asymptotic").value
    )
    renyi_bound = D * (
        math.log(math.pi)
        + 0.5 * _ln_q_power(q)
        + 0.5 * _ln_q_power(p)
    )
    shannon_sum = (
        shannon(state, Space.POSITION, "exact", quad).value
        + shannon(state, Space.MOMENTUM, "exact", quad).value
    )
    shannon_bound = D * (1.0 + math.log(math.pi))
    return UncertaintyReport(
        q=q,
        p=p,
        sum_exact=sum_exact,
        sum_asym=sum_asym,
        renyi_bound=renyi_bound,
        renyi_slack=sum_exact - renyi_bound,
        shannon_sum=shannon_sum,
        shannon_bound=shannon_bound,
        shannon_slack=shannon_sum - shannon_bound,
    )


def entropy(state, spec, quad=None):
    """Dispatch an EntropySpec to the Renyi or Shannon implementation."""
    if abs(spec.q - 1.0) < Q_NEAR_ONE:
        mode = "exact" if spec.mode == "exact" else "conjecture"
        return shannon(state, spec.space, mode, quad)
    return renyi_total(state, spec.q, spec.space, spec.mode, quad)
