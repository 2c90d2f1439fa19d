"""D-dimensional harmonic oscillator states and their densities.

A state is labeled by the dimension D, the oscillator strength lambda, the
principal number n and the chain of angular numbers mu_1 >= mu_2 >= ... >=
|mu_(D-1)|.  The chain is stored run-length encoded so that D = 1e6 states
cost O(number of runs); every downstream product iterates over runs, never
over individual chain entries.
"""

import math
import re
from dataclasses import dataclass
from enum import Enum

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
    "Space",
    "HarmonicState",
    "ValidationError",
    "validate",
    "energy",
    "radial_density",
    "mu_families",
    "parse_state",
    "format_state",
]


class Space(str, Enum):
    POSITION = "position"
    MOMENTUM = "momentum"


class ValidationError(ValueError):
    """A hyperquantum chain violating the ordering constraints.

    Carries the index of the first offending run and the offending values.
    """

    def __init__(self, message, index=None, values=None):
        super().__init__(message)
        self.index = index
        self.values = values


@dataclass(frozen=True)
class HarmonicState:
    """State (D, lambda, n, {mu}) with the mu chain as (value, multiplicity) runs.

    The field is named ``lam`` because ``lambda`` is reserved in Python; the
    text serialization uses the key ``lambda``.
    """

    D: int
    lam: float
    n: int
    mu_runs: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "mu_runs", tuple((int(v), int(m)) for v, m in self.mu_runs)
        )

    @property
    def l(self):
        """Orbital number, the leading chain value (|m| when D == 2)."""
        v = self.mu_runs[0][0]
        return abs(v) if v < 0 else v

    @property
    def m(self):
        """The signed final chain entry."""
        return self.mu_runs[-1][0]

    @property
    def alpha(self):
        """Laguerre parameter l + D/2 - 1 of the radial eigenfunction."""
        return self.l + 0.5 * self.D - 1.0

    def effective_runs(self):
        """Runs with the final entry replaced by |m|, merging if needed.

        All density and entropy formulas see only |mu_(D-1)|; a negative
        final entry equal in magnitude to the preceding run folds into it.
        """
        runs = list(self.mu_runs)
        if runs and runs[-1][0] < 0:
            v, mult = runs[-1]
            runs[-1] = (-v, mult)
            if len(runs) >= 2 and runs[-2][0] == runs[-1][0]:
                pv, pm = runs[-2]
                runs[-2:] = [(pv, pm + runs[-1][1])]
        return tuple(runs)


def validate(state):
    """Check the hyperquantum chain constraints; raise ValidationError if broken."""
    if int(state.D) != state.D or state.D < 2:
        raise ValidationError(f"D must be an integer >= 2, got {state.D}")
    if not state.lam > 0.0:
        raise ValidationError(f"lambda must be positive, got {state.lam}")
    if int(state.n) != state.n or state.n < 0:
        raise ValidationError(f"n must be a non-negative integer, got {state.n}")
    runs = state.mu_runs
    if not runs:
        raise ValidationError("mu chain must be non-empty")
    total = 0
    for i, (v, mult) in enumerate(runs):
        if mult < 1:
            raise ValidationError(
                f"run {i} has non-positive multiplicity {mult}", index=i, values=(v, mult)
            )
        total += mult
    if total != state.D - 1:
        raise ValidationError(
            f"chain multiplicities sum to {total}, expected D - 1 = {state.D - 1}"
        )
    for i in range(1, len(runs)):
        if runs[i][0] >= runs[i - 1][0]:
            raise ValidationError(
                f"chain values must strictly decrease across runs; "
                f"run {i - 1} -> {i} goes {runs[i - 1][0]} -> {runs[i][0]}",
                index=i,
                values=(runs[i - 1][0], runs[i][0]),
            )
    for i, (v, mult) in enumerate(runs):
        if v < 0:
            last = i == len(runs) - 1
            if not last or mult != 1:
                raise ValidationError(
                    f"run {i} carries negative value {v}; only a final "
                    f"multiplicity-1 entry may be negative",
                    index=i,
                    values=(v, mult),
                )
            if len(runs) >= 2 and abs(v) > runs[i - 1][0]:
                raise ValidationError(
                    f"|m| = {abs(v)} exceeds the preceding chain value {runs[i - 1][0]}",
                    index=i,
                    values=(runs[i - 1][0], v),
                )


def energy(state):
    """E = lambda (2n + l + D/2)."""
    validate(state)
    return state.lam * (2.0 * state.n + state.l + 0.5 * state.D)


def _space_strength(state, space):
    """Oscillator strength seen by the radial factor in the given space.

    The momentum density is the position one with lambda -> 1/lambda, which
    makes its radial factor integrate to one against p^(D-1) dp.
    """
    return state.lam if Space(space) is Space.POSITION else 1.0 / state.lam


def radial_density(state, r, space=Space.POSITION):
    """Radial density rho_(n,l)(r) (or its momentum twin) as a LogValue."""
    validate(state)
    if not r > 0.0:
        raise ValueError(f"r must be positive, got {r}")
    lam = _space_strength(state, space)
    n, l, alpha, D = state.n, state.l, state.alpha, state.D
    x = lam * r * r
    s, lg = _laguerre_sign_log(n, alpha, np.array([x]))
    if int(s[0]) == 0:
        return LogValue.ZERO
    log_norm = (
        math.log(2.0)
        + log_gamma(n + 1.0)
        - log_gamma(alpha + n + 1.0)
        + 0.5 * D * math.log(lam)
    )
    log_val = log_norm - x + (l * math.log(x) if l else 0.0) + 2.0 * float(lg[0])
    return LogValue(1, log_val)


def radial_norm_check(state, space=Space.POSITION, quad=None):
    """Integral of the radial density against r^(D-1) dr; should be 1."""
    validate(state)
    lam = _space_strength(state, space)
    n, alpha, D = state.n, state.alpha, state.D

    def f(rs):
        rs = np.asarray(rs, dtype=float)
        s, lg = _laguerre_sign_log(n, alpha, lam * rs * rs)
        x = lam * rs * rs
        with np.errstate(divide="ignore"):
            log_r = np.log(rs)
            log_x = np.log(x)
        log_norm = (
            math.log(2.0)
            + log_gamma(n + 1.0)
            - log_gamma(alpha + n + 1.0)
            + 0.5 * D * math.log(lam)
        )
        logs = log_norm - x + state.l * log_x + 2.0 * lg + (D - 1.0) * log_r
        return (s.astype(np.int8) ** 2), logs

    peak = math.sqrt(max(alpha + 1.0, 0.5) / lam)
    scale = peak / (2.0 * math.sqrt(max(alpha + 2.0, 2.0))) + 1e-6
    splits = tuple(
        math.sqrt(root / lam) for root in (laguerre_roots(n, alpha) if n else [])
    )
    base = quad or QuadratureSpec()
    spec = QuadratureSpec(
        target_rel_tol=base.target_rel_tol,
        max_panels=base.max_panels,
        split_points=splits,
        tail_cutoff_log=base.tail_cutoff_log,
        peak=peak,
        peak_scale=scale,
    )
    return integrate_log(f, (0.0, math.inf), spec).to_float()


def mu_families(state):
    """Appendix-style family decomposition of the raw chain.

    Returns (families, N) where families is a tuple of (boundary_index,
    family_size) pairs, boundary indices counted 1-based along the chain.
    """
    validate(state)
    families = []
    boundary = 0
    for v, mult in state.mu_runs:
        boundary += mult
        families.append((boundary, mult))
    return tuple(families), len(families)


_STATE_RE = re.compile(r"^(D|lambda|n|mu)=(.*)$")


def parse_state(text):
    """Parse the compact form ``D=..;lambda=..;n=..;mu=v1^m1,v2^m2,...``.

    Whitespace is ignored everywhere; a bare ``v`` in the mu list means
    ``v^1``.  Raises ValueError on malformed input.
    """
    compact = re.sub(r"\s+", "", text)
    fields = {}
    for part in compact.split(";"):
        if not part:
            continue
        m = _STATE_RE.match(part)
        if not m:
            raise ValueError(f"unrecognized state field {part!r}")
        fields[m.group(1)] = m.group(2)
    missing = {"D", "lambda", "n", "mu"} - set(fields)
    if missing:
        raise ValueError(f"state string missing fields: {sorted(missing)}")
    runs = []
    for item in fields["mu"].split(","):
        if not item:
            raise ValueError("empty entry in mu list")
        if "^" in item:
            v, mult = item.split("^", 1)
            runs.append((int(v), int(mult)))
        else:
            runs.append((int(item), 1))
    state = HarmonicState(
        D=int(fields["D"]), lam=float(fields["lambda"]), n=int(fields["n"]),
        mu_runs=tuple(runs),
    )
    validate(state)
    return state


def format_state(state):
    """Inverse of :func:`parse_state`."""
    mu = ",".join(f"{v}^{m}" for v, m in state.mu_runs)
    return f"D={state.D};lambda={state.lam:.17g};n={state.n};mu={mu}"
