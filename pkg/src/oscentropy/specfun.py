"""Log-space special functions, orthogonal polynomials and quadrature.

Everything downstream of this module runs at Laguerre/Gegenbauer parameters
of order D/2 with D up to 1e6 or more.  Gamma factors and polynomial values
overflow double precision long before any final answer does, so all
intermediate values travel as an explicit sign plus the natural log of the
magnitude (:class:`LogValue`).  Plain floats are only formed at the final
conversion step.

The quadrature engine (:func:`integrate_log`) uses adaptive Gauss-Legendre
panels between caller-supplied split points (typically polynomial zeros)
plus a geometric ladder of panels centered on the integrand's peak, and
accumulates panel contributions by compensated summation on shifted
exponentials.
"""

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "LogValue",
    "QuadratureSpec",
    "ConvergenceError",
    "log_gamma",
    "log_pochhammer",
    "digamma",
    "laguerre_eval",
    "laguerre_roots",
    "gegenbauer_eval",
    "gegenbauer_roots",
    "integrate_log",
    "as_vectorized",
]

_NEG_INF = float("-inf")
LOG_2PI = math.log(2.0 * math.pi)


class ConvergenceError(ArithmeticError):
    """Raised when the quadrature cannot reach the requested tolerance.

    ``estimate`` holds the last relative-error estimate (a plain float, may
    be inf when nothing converged at all).
    """

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


@dataclass(frozen=True)
class LogValue:
    """A real number stored as ``sign * exp(log_mag)``.

    sign is -1, 0 or +1; log_mag is the natural log of the magnitude and is
    normalized to -inf when sign == 0.  Multiplication adds log magnitudes
    and multiplies signs; zero is absorbing.  Conversion to float round-trips
    to within one ulp of double rounding (the exp/log composition), which is
    the best a log-magnitude carrier can do.
    """

    sign: int
    log_mag: float

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or +1, got {self.sign}")
        if self.sign == 0 and self.log_mag != _NEG_INF:
            object.__setattr__(self, "log_mag", _NEG_INF)

    @classmethod
    def from_float(cls, x):
        x = float(x)
        if x == 0.0:
            return cls(0, _NEG_INF)
        if math.isnan(x) or math.isinf(x):
            raise ValueError(f"cannot represent {x} as a LogValue")
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @classmethod
    def from_log(cls, log_mag, sign=1):
        if log_mag == _NEG_INF:
            return cls(0, _NEG_INF)
        return cls(sign, float(log_mag))

    def to_float(self):
        if self.sign == 0:
            return 0.0
        try:
            return self.sign * math.exp(self.log_mag)
        except OverflowError:
            return self.sign * math.inf

    @property
    def is_zero(self):
        return self.sign == 0

    def __float__(self):
        return self.to_float()

    def __mul__(self, other):
        if not isinstance(other, LogValue):
            other = LogValue.from_float(other)
        s = self.sign * other.sign
        if s == 0:
            return LogValue(0, _NEG_INF)
        return LogValue(s, self.log_mag + other.log_mag)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, LogValue):
            other = LogValue.from_float(other)
        if other.sign == 0:
            raise ZeroDivisionError("division by zero LogValue")
        if self.sign == 0:
            return LogValue(0, _NEG_INF)
        return LogValue(self.sign * other.sign, self.log_mag - other.log_mag)

    def __neg__(self):
        return LogValue(-self.sign, self.log_mag)

    def __abs__(self):
        return LogValue(abs(self.sign), self.log_mag)

    def __add__(self, other):
        if not isinstance(other, LogValue):
            other = LogValue.from_float(other)
        s, l = _signed_logadd_scalar(self.sign, self.log_mag, other.sign, other.log_mag)
        return LogValue(s, l)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, LogValue):
            other = LogValue.from_float(other)
        return self + (-other)

    def __pow__(self, p):
        p = float(p)
        if self.sign == 0:
            if p > 0:
                return LogValue(0, _NEG_INF)
            if p == 0:
                return LogValue(1, 0.0)
            raise ZeroDivisionError("zero LogValue to a negative power")
        if self.sign < 0:
            if p != int(p):
                raise ValueError("negative LogValue to a non-integer power")
            s = -1 if int(p) % 2 else 1
        else:
            s = 1
        return LogValue(s, p * self.log_mag)


LogValue.ZERO = LogValue(0, _NEG_INF)
LogValue.ONE = LogValue(1, 0.0)


def _signed_logadd_scalar(s1, l1, s2, l2):
    """Add two (sign, log) scalars, returning (sign, log)."""
    if s1 == 0:
        return s2, l2
    if s2 == 0:
        return s1, l1
    if l1 == _NEG_INF and l2 == _NEG_INF:
        return 0, _NEG_INF
    if s1 == s2:
        return s1, np.logaddexp(l1, l2)
    if l1 == l2:
        return 0, _NEG_INF
    if l1 > l2:
        return s1, l1 + math.log1p(-math.exp(l2 - l1))
    return s2, l2 + math.log1p(-math.exp(l1 - l2))


def _signed_logaddexp(s1, l1, s2, l2):
    """Vectorized signed log-add on ndarrays of signs and log magnitudes."""
    s1 = np.asarray(s1, dtype=np.int8)
    s2 = np.asarray(s2, dtype=np.int8)
    l1 = np.asarray(l1, dtype=float)
    l2 = np.asarray(l2, dtype=float)
    shape = np.broadcast_shapes(s1.shape, l1.shape, s2.shape, l2.shape)
    s1, l1, s2, l2 = (np.broadcast_to(a, shape) for a in (s1, l1, s2, l2))

    out_s = np.zeros(shape, dtype=np.int8)
    out_l = np.full(shape, _NEG_INF)

    only1 = (s1 != 0) & (s2 == 0)
    only2 = (s1 == 0) & (s2 != 0)
    out_s[only1] = s1[only1]
    out_l[only1] = l1[only1]
    out_s[only2] = s2[only2]
    out_l[only2] = l2[only2]

    both = (s1 != 0) & (s2 != 0) & ~(np.isneginf(l1) & np.isneginf(l2))
    same = both & (s1 == s2)
    if same.any():
        out_s[same] = s1[same]
        out_l[same] = np.logaddexp(l1[same], l2[same])
    opp = both & (s1 != s2) & (l1 != l2)
    if opp.any():
        first = opp & (l1 > l2)
        second = opp & ~first
        with np.errstate(divide="ignore"):
            out_s[first] = s1[first]
            out_l[first] = l1[first] + np.log1p(-np.exp(l2[first] - l1[first]))
            out_s[second] = s2[second]
            out_l[second] = l2[second] + np.log1p(-np.exp(l1[second] - l2[second]))
    # exact cancellation (same log, opposite sign) stays at the zero default
    return out_s, out_l


def _signed_logsumexp(signs, logs):
    """Compensated signed log-sum-exp over flat arrays -> LogValue.

    Shifts by the running maximum and accumulates sign * exp(log - max) with
    math.fsum, so panel sums keep full double precision even for thousands
    of terms of mixed sign.
    """
    signs = np.asarray(signs)
    logs = np.asarray(logs, dtype=float)
    live = signs != 0
    if not live.any():
        return LogValue.ZERO
    m = float(np.max(logs[live]))
    if m == _NEG_INF:
        return LogValue.ZERO
    total = math.fsum(
        float(s) * math.exp(float(l) - m)
        for s, l in zip(signs[live], logs[live])
    )
    if total == 0.0:
        return LogValue.ZERO
    return LogValue(1 if total > 0 else -1, m + math.log(abs(total)))


# ---------------------------------------------------------------------------
# gamma-family scalars
# ---------------------------------------------------------------------------

def log_gamma(x):
    """Natural log of Gamma(x) for x > 0 (libm lgamma behind the contract)."""
    x = float(x)
    if not x > 0.0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def log_pochhammer(x, a):
    """log of Gamma(x+a)/Gamma(x); exactly 0 for a == 0."""
    x = float(x)
    a = float(a)
    if not x > 0.0:
        raise ValueError(f"log_pochhammer requires x > 0, got {x}")
    if not x + a > 0.0:
        raise ValueError(f"log_pochhammer requires x + a > 0, got {x + a}")
    if a == 0.0:
        return 0.0
    return math.lgamma(x + a) - math.lgamma(x)


# Bernoulli terms B_2k/(2k) for the digamma asymptotic series.
_DIGAMMA_TAIL = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)


def digamma(x):
    """psi(x) = d/dx log Gamma(x) for x > 0, accurate to ~1e-14."""
    x = float(x)
    if not x > 0.0:
        raise ValueError(f"digamma requires x > 0, got {x}")
    acc = 0.0
    while x < 12.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    tail = 0.0
    power = inv2
    for c in _DIGAMMA_TAIL:
        tail += c * power
        power *= inv2
    return acc + math.log(x) - 0.5 / x - tail


# ---------------------------------------------------------------------------
# orthogonal polynomials, sign-tracked log recurrences
# ---------------------------------------------------------------------------

def _laguerre_sign_log(n, alpha, x):
    """Evaluate the generalized Laguerre polynomial of degree n at x (ndarray).

    Returns (signs, logs).  The three-term recurrence is carried entirely in
    signed log form, which keeps it stable for alpha up to ~1e7 where the
    plain recurrence overflows.
    """
    x = np.asarray(x, dtype=float)
    s_prev = np.ones(x.shape, dtype=np.int8)
    l_prev = np.zeros(x.shape)
    if n == 0:
        return s_prev, l_prev
    a1 = alpha + 1.0 - x
    s_cur = np.sign(a1).astype(np.int8)
    with np.errstate(divide="ignore"):
        l_cur = np.log(np.abs(a1))
    for k in range(1, n):
        coeff = 2.0 * k + alpha + 1.0 - x
        with np.errstate(divide="ignore"):
            log_coeff = np.log(np.abs(coeff))
        t1_s = (np.sign(coeff) * s_cur).astype(np.int8)
        t1_l = log_coeff + l_cur
        t2_s = (-s_prev).astype(np.int8)
        t2_l = math.log(k + alpha) + l_prev
        s_new, l_new = _signed_logaddexp(t1_s, t1_l, t2_s, t2_l)
        l_new = l_new - math.log(k + 1.0)
        s_prev, l_prev = s_cur, l_cur
        s_cur, l_cur = s_new, l_new
    return s_cur, l_cur


def _gegenbauer_sign_log(m, alpha, t):
    """Gegenbauer polynomial of degree m and parameter alpha at t (ndarray)."""
    t = np.asarray(t, dtype=float)
    s_prev = np.ones(t.shape, dtype=np.int8)
    l_prev = np.zeros(t.shape)
    if m == 0:
        return s_prev, l_prev
    c1 = 2.0 * alpha * t
    s_cur = np.sign(c1).astype(np.int8)
    with np.errstate(divide="ignore"):
        l_cur = np.log(np.abs(c1))
    for k in range(1, m):
        coeff = 2.0 * (k + alpha) * t
        with np.errstate(divide="ignore"):
            log_coeff = np.log(np.abs(coeff))
        t1_s = (np.sign(coeff) * s_cur).astype(np.int8)
        t1_l = log_coeff + l_cur
        b = k + 2.0 * alpha - 1.0
        t2_s = (-np.sign(b) * s_prev).astype(np.int8)
        with np.errstate(divide="ignore"):
            t2_l = math.log(abs(b)) if b != 0.0 else _NEG_INF
        t2_l = t2_l + l_prev
        s_new, l_new = _signed_logaddexp(t1_s, t1_l, t2_s, t2_l)
        l_new = l_new - math.log(k + 1.0)
        s_prev, l_prev = s_cur, l_cur
        s_cur, l_cur = s_new, l_new
    return s_cur, l_cur


def laguerre_eval(n, alpha, x):
    """Value of the generalized Laguerre polynomial as a LogValue."""
    if n < 0 or n != int(n):
        raise ValueError(f"degree must be a non-negative integer, got {n}")
    if not alpha > -1.0:
        raise ValueError(f"alpha must exceed -1, got {alpha}")
    if x < 0.0:
        raise ValueError(f"x must be non-negative, got {x}")
    s, l = _laguerre_sign_log(int(n), float(alpha), np.array([x]))
    return LogValue(int(s[0]), float(l[0]))


def gegenbauer_eval(m, alpha, t):
    """Value of the Gegenbauer polynomial as a LogValue."""
    if m < 0 or m != int(m):
        raise ValueError(f"degree must be a non-negative integer, got {m}")
    if not alpha > -0.5:
        raise ValueError(f"alpha must exceed -1/2, got {alpha}")
    if not -1.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [-1, 1], got {t}")
    s, l = _gegenbauer_sign_log(int(m), float(alpha), np.array([t]))
    return LogValue(int(s[0]), float(l[0]))


def _bracketed_roots(sign_log_fn, grid, expected, context):
    """Find sign-change brackets of a polynomial on a candidate grid.

    Refines the grid (up to a few doublings) until exactly ``expected``
    brackets are found; the zeros of the classical orthogonal families are
    simple, so sign changes are the complete story.
    """
    grid = np.unique(grid)
    for _ in range(8):
        s, _ = sign_log_fn(grid)
        idx = np.nonzero(s[:-1] * s[1:] < 0)[0]
        exact = np.nonzero(s == 0)[0]
        if len(idx) + len(exact) >= expected:
            brackets = [(grid[i], grid[i + 1]) for i in idx]
            for i in exact:
                lo = grid[max(i - 1, 0)]
                hi = grid[min(i + 1, len(grid) - 1)]
                brackets.append((lo, hi))
            brackets.sort()
            if len(brackets) == expected:
                return brackets
        # densify and retry
        mids = 0.5 * (grid[:-1] + grid[1:])
        grid = np.unique(np.concatenate([grid, mids]))
    raise RuntimeError(
        f"could not isolate {expected} roots for {context}; "
        f"found {len(idx)} sign changes"
    )


def _refine_root(sign_log_fn, deriv_ratio_fn, lo, hi, rel_tol):
    """Bisection to a tight bracket, then guarded Newton polish."""
    s_lo, _ = sign_log_fn(np.array([lo]))
    s_lo = int(s_lo[0])
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= rel_tol * max(abs(mid), 1e-300):
            break
        s_mid, _ = sign_log_fn(np.array([mid]))
        s_mid = int(s_mid[0])
        if s_mid == 0:
            return mid
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    for _ in range(4):
        step = deriv_ratio_fn(x)
        if not math.isfinite(step):
            break
        x_new = x - step
        if not lo < x_new < hi:
            break
        if abs(x_new - x) <= 1e-16 * max(abs(x), 1e-300):
            x = x_new
            break
        x = x_new
    return x


def laguerre_roots(n, alpha, rel_tol=1e-12):
    """The n simple positive roots of the degree-n Laguerre polynomial, ascending.

    Each root is bracketed by a sign change of the log-form recurrence and
    refined by bisection plus a few guarded Newton steps (the derivative is
    minus the degree n-1 polynomial at alpha+1).
    """
    if n < 1 or n != int(n):
        raise ValueError(f"need degree >= 1, got {n}")
    if not alpha > -1.0:
        raise ValueError(f"alpha must exceed -1, got {alpha}")
    n = int(n)
    alpha = float(alpha)
    if n == 1:
        return [alpha + 1.0]

    hi = 2.0 * n + alpha + 2.0 + 2.0 * math.sqrt(2.0 * n + alpha + 2.0)
    sign_inf = 1 if n % 2 == 0 else -1
    fn = lambda xs: _laguerre_sign_log(n, alpha, xs)
    for _ in range(200):
        s, _ = fn(np.array([hi]))
        if int(s[0]) == sign_inf:
            break
        hi *= 1.5

    pieces = [np.linspace(hi * 1e-9, hi, max(128, 16 * n))]
    if alpha > 30.0:
        # roots cluster around alpha+1 at scale sqrt(2 alpha) for large alpha
        center = alpha + 1.0
        width = math.sqrt(2.0 * (alpha + 1.0))
        reach = math.sqrt(2.0 * n + 1.0) + 2.0
        cluster = center + width * np.linspace(-reach, reach, 8 * n + 9)
        pieces.append(np.clip(cluster, hi * 1e-9, hi))
    grid = np.concatenate(pieces)

    brackets = _bracketed_roots(fn, grid, n, f"Laguerre(n={n}, alpha={alpha})")

    def deriv_ratio(x):
        s_v, l_v = fn(np.array([x]))
        s_d, l_d = _laguerre_sign_log(n - 1, alpha + 1.0, np.array([x]))
        if int(s_d[0]) == 0:
            return math.nan
        # d/dx L_n^(a) = -L_{n-1}^(a+1)
        ratio_sign = -int(s_v[0]) * int(s_d[0])
        return ratio_sign * math.exp(float(l_v[0]) - float(l_d[0]))

    return [
        _refine_root(fn, deriv_ratio, lo, hi_, rel_tol) for lo, hi_ in brackets
    ]


def gegenbauer_roots(m, alpha, rel_tol=1e-12):
    """The m roots of the degree-m Gegenbauer polynomial on (-1, 1), ascending."""
    if m < 0 or m != int(m):
        raise ValueError(f"degree must be a non-negative integer, got {m}")
    if not alpha > -0.5:
        raise ValueError(f"alpha must exceed -1/2, got {alpha}")
    m = int(m)
    alpha = float(alpha)
    if m == 0:
        return []
    if m == 1:
        return [0.0]

    pieces = [np.linspace(-1.0 + 1e-12, 1.0 - 1e-12, max(256, 32 * m))]
    if alpha > 30.0:
        reach = (math.sqrt(2.0 * m + 1.0) + 2.0) / math.sqrt(alpha)
        reach = min(reach, 1.0 - 1e-12)
        pieces.append(np.linspace(-reach, reach, 8 * m + 9))
    grid = np.concatenate(pieces)

    fn = lambda ts: _gegenbauer_sign_log(m, alpha, ts)
    brackets = _bracketed_roots(fn, grid, m, f"Gegenbauer(m={m}, alpha={alpha})")

    def deriv_ratio(t):
        s_v, l_v = fn(np.array([t]))
        s_d, l_d = _gegenbauer_sign_log(m - 1, alpha + 1.0, np.array([t]))
        if int(s_d[0]) == 0:
            return math.nan
        # d/dt C_m^(a) = 2a C_{m-1}^(a+1)
        ratio_sign = int(s_v[0]) * int(s_d[0])
        return ratio_sign * math.exp(float(l_v[0]) - float(l_d[0]) - math.log(2.0 * alpha))

    return [
        _refine_root(fn, deriv_ratio, lo, hi, rel_tol) for lo, hi in brackets
    ]


# ---------------------------------------------------------------------------
# adaptive log-space quadrature
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureSpec:
    """Controls for :func:`integrate_log`.

    split_points are interior locations where the integrand changes character
    (typically polynomial zeros); panels never straddle them.  peak and
    peak_scale, when supplied by the caller, position the geometric panel
    ladder; otherwise the peak is located by a coarse scan of the log
    magnitude.  tail_cutoff_log stops the infinite-tail ladder once a panel
    falls this far (in log) below the accumulated total.
    """

    target_rel_tol: float = 1e-10
    max_panels: int = 4096
    split_points: tuple = ()
    tail_cutoff_log: float = -46.0
    peak: float | None = None
    peak_scale: float | None = None

    def __post_init__(self):
        if not 0.0 < self.target_rel_tol < 1.0:
            raise ValueError("target_rel_tol must lie in (0, 1)")
        if self.max_panels < 4:
            raise ValueError("max_panels must be at least 4")
        pts = tuple(float(p) for p in self.split_points)
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise ValueError("split_points must be strictly ascending")
        object.__setattr__(self, "split_points", pts)


DEFAULT_QUADRATURE = QuadratureSpec()


@lru_cache(maxsize=None)
def _gl_rule(order):
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return nodes, np.log(weights)


_GL_LO = 16
_GL_HI = 32


def as_vectorized(f_scalar):
    """Adapt a scalar x -> LogValue integrand to the vectorized interface."""

    def f(xs):
        vals = [f_scalar(float(x)) for x in np.asarray(xs, dtype=float)]
        s = np.array([v.sign for v in vals], dtype=np.int8)
        l = np.array([v.log_mag for v in vals], dtype=float)
        return s, l

    return f


def _eval_panel(f, lo, hi, order):
    nodes, log_w = _gl_rule(order)
    half = 0.5 * (hi - lo)
    x = 0.5 * (lo + hi) + half * nodes
    s, l = f(x)
    return _signed_logsumexp(s, np.asarray(l, dtype=float) + log_w + math.log(half))


def _panel_pair(f, lo, hi):
    """(coarse, fine, |fine - coarse| log) for one panel."""
    coarse = _eval_panel(f, lo, hi, _GL_LO)
    fine = _eval_panel(f, lo, hi, _GL_HI)
    diff = fine + (-coarse)
    return fine, diff.log_mag


def _scan_peak(f, lo, hi):
    """Coarse argmax of the integrand's log magnitude on [lo, hi]."""
    xs = np.linspace(lo, hi, 129)[1:-1]
    _, l = f(xs)
    best = int(np.argmax(l))
    return float(xs[best])


def _probe_peak_infinite(f, lo, scale):
    """Doubling probe toward +inf until the log magnitude turns over."""
    best_x, best_l = lo + scale, _NEG_INF
    drops = 0
    x = lo + scale
    for _ in range(80):
        _, l = f(np.array([x]))
        l = float(l[0])
        if l > best_l:
            best_l, best_x = l, x
            drops = 0
        else:
            drops += 1
            if drops >= 4:
                break
        x = lo + (x - lo) * 2.0
    return best_x


def _ladder_points(peak, scale, lo, hi):
    offsets = [0.0]
    step = 1.0
    while step <= 2.0 ** 16:
        offsets.extend((step, -step))
        step *= 2.0
    pts = [peak + scale * o for o in offsets]
    return [p for p in pts if lo < p < hi]


def integrate_log(f, domain, spec=None):
    """Integrate a signed log-space integrand, returning a LogValue.

    ``f`` maps an ndarray of abscissae to (signs, log magnitudes); wrap a
    scalar x -> LogValue callable with :func:`as_vectorized` if needed.
    ``domain`` is (a, b) with finite a and b possibly +inf.  Pure: identical
    inputs produce bit-identical output.

    Raises :class:`ConvergenceError` when the panel budget is exhausted
    before the estimated relative error reaches spec.target_rel_tol.
    """
    spec = spec or DEFAULT_QUADRATURE
    a, b = (float(domain[0]), float(domain[1]))
    if not math.isfinite(a):
        raise ValueError("left endpoint must be finite")
    if b <= a:
        raise ValueError("domain must satisfy a < b")
    infinite = math.isinf(b)

    splits = [p for p in spec.split_points if a < p < b]
    span_hi = b if not infinite else max(a + 1.0, *(splits or [a + 1.0])) * 2.0 + 10.0

    peak = spec.peak
    if peak is None:
        if infinite:
            peak = _probe_peak_infinite(f, a, max(1.0, abs(a)))
        else:
            peak = _scan_peak(f, a, b)
    peak = min(max(peak, a), span_hi)

    scale = spec.peak_scale
    if scale is None or scale <= 0.0:
        scale = max((span_hi - a) / 64.0, 1e-12)

    points = sorted(set([a] + splits + _ladder_points(peak, scale, a, min(b, span_hi))))
    if infinite:
        frontier = max(points[-1], peak + scale)
        if frontier > points[-1]:
            points.append(frontier)
    else:
        if points[-1] < b:
            points.append(b)
    # merge near-coincident breakpoints
    merged = [points[0]]
    for p in points[1:]:
        if p - merged[-1] > 1e-13 * max(abs(p), 1.0):
            merged.append(p)
    points = merged

    panels = []  # entries [lo, hi, value LogValue, err_log]
    budget = spec.max_panels

    def add_panel(lo, hi):
        nonlocal budget
        if budget <= 0:
            raise ConvergenceError(
                f"quadrature exceeded max_panels={spec.max_panels} on "
                f"[{lo:.6g}, {hi:.6g}]",
                estimate=math.inf,
            )
        budget -= 1
        value, err_log = _panel_pair(f, lo, hi)
        panels.append([lo, hi, value, err_log])

    for lo, hi in zip(points[:-1], points[1:]):
        add_panel(lo, hi)

    def mag_log():
        logs = [p[2].log_mag for p in panels if p[2].sign != 0]
        if not logs:
            return _NEG_INF
        m = max(logs)
        return m + math.log(math.fsum(math.exp(l - m) for l in logs))

    # geometric extension over the infinite tail
    if infinite:
        left = points[-1]
        tail_scale = max(scale, (left - peak) / 8.0, 1e-6 * max(1.0, abs(left)))
        quiet = 0
        for _ in range(200):
            right = left + tail_scale
            add_panel(left, right)
            contrib = panels[-1][2]
            total_mag = mag_log()
            if contrib.sign == 0 or contrib.log_mag < total_mag + spec.tail_cutoff_log:
                quiet += 1
                if quiet >= 2:
                    break
            else:
                quiet = 0
            left = right
            tail_scale *= 2.0
        else:
            raise ConvergenceError(
                "infinite tail did not decay within the panel ladder",
                estimate=math.inf,
            )

    # adaptive refinement: split the worst panel until every error estimate
    # sits below the target, re-tightening if the final check disagrees
    log_tol = math.log(spec.target_rel_tol)
    for _round in range(4):
        threshold = log_tol + mag_log() - math.log(8.0) - _round * math.log(32.0)
        working = True
        while working:
            working = False
            worst = max(range(len(panels)), key=lambda i: panels[i][3])
            if panels[worst][3] > threshold:
                lo, hi, _, _ = panels.pop(worst)
                mid = 0.5 * (lo + hi)
                add_panel(lo, mid)
                add_panel(mid, hi)
                working = True
        total = _signed_logsumexp(
            np.array([p[2].sign for p in panels], dtype=np.int8),
            np.array([p[2].log_mag for p in panels], dtype=float),
        )
        errs = [p[3] for p in panels if p[3] > _NEG_INF]
        if not errs:
            return total
        m = max(errs)
        err_total = m + math.log(math.fsum(math.exp(e - m) for e in errs))
        ref = total.log_mag if total.sign != 0 else mag_log()
        if err_total <= log_tol + ref + math.log(4.0):
            return total
    raise ConvergenceError(
        "quadrature error estimate did not reach target_rel_tol="
        f"{spec.target_rel_tol:g}",
        estimate=math.exp(min(err_total - ref, 700.0)),
    )
