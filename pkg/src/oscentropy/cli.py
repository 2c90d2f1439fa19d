"""Command-line interface: single evaluations, grid sweeps and convergence studies.

Subcommands: moments, renyi, shannon, asym, sums, converge.  Output is CSV
(default) or JSON with a '#' provenance comment echoing the full input.
Exit codes: 0 success, 2 argument errors, 3 numeric convergence failure.
"""

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .entropies import renyi_total, shannon, uncertainty_sum
from .laguerre_asym import J1Params, j1_asym, j1_exact
from .moments import MomentQuery, radial_moment
from .report import fit_loglog_slope
from .specfun import ConvergenceError, QuadratureSpec
from .states import HarmonicState, Space, ValidationError, parse_state, validate


def _fmt(x):
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _quad_from_args(args):
    tol = args.tol
    if tol is None:
        tol = float(os.environ.get("OSC_DEFAULT_TOL", 1e-10))
    return QuadratureSpec(target_rel_tol=tol, max_panels=args.max_panels)


def _parse_grid(text, cast=float):
    values = [cast(v) for v in text.split(",") if v]
    if not values:
        raise ValueError("empty grid")
    return values


def _grid_state(D, lam, n, l):
    if l > 0:
        runs = ((l, 1), (0, D - 2)) if D > 2 else ((l, 1),)
    else:
        runs = ((0, D - 1),)
    state = HarmonicState(D=D, lam=lam, n=n, mu_runs=runs)
    validate(state)
    return state


def _states_from_args(args):
    if getattr(args, "state", None):
        return [parse_state(args.state)]
    if getattr(args, "grid_D", None):
        ds = _parse_grid(args.grid_D, int)
        return [_grid_state(D, args.lam, args.n, args.l) for D in ds]
    raise ValueError("provide --state or --grid-D (with --n/--l/--lambda)")


def _map_ordered(fn, items, parallelism):
    if parallelism <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=parallelism) as pool:
        return list(pool.map(fn, items))


def _spaces(arg):
    if arg == "both":
        return [Space.POSITION, Space.MOMENTUM]
    return [Space(arg)]


# ---------------------------------------------------------------------------
# subcommand evaluators: each returns (columns, rows)
# ---------------------------------------------------------------------------

def _run_moments(args):
    quad = _quad_from_args(args)
    states = _states_from_args(args)
    ks = _parse_grid(args.k)
    work = [(s, k, sp) for s in states for k in ks for sp in _spaces(args.space)]

    def one(item):
        state, k, space = item
        exact = radial_moment(MomentQuery(state, k, space, "exact"), quad=quad)
        asym = radial_moment(MomentQuery(state, k, space, "asymptotic"))
        rel = abs(asym - exact) / abs(exact) if exact else math.inf
        return {
            "D": state.D, "lambda": state.lam, "n": state.n, "l": state.l,
            "k": k, "space": space.value, "exact": exact, "asym": asym,
            "rel_err": rel,
        }

    cols = ["D", "lambda", "n", "l", "k", "space", "exact", "asym", "rel_err"]
    return cols, _map_ordered(one, work, args.parallelism)


def _run_renyi(args):
    quad = _quad_from_args(args)
    states = _states_from_args(args)
    qs = _parse_grid(args.q)
    modes = ["exact", "asymptotic"] if args.mode == "both" else [args.mode]
    work = [
        (s, q, sp, m)
        for s in states for q in qs for sp in _spaces(args.space) for m in modes
    ]

    def one(item):
        state, q, space, mode = item
        res = renyi_total(state, q, space, mode, quad=quad)
        return {
            "D": state.D, "lambda": state.lam, "n": state.n, "l": state.l,
            "q": q, "space": space.value, "mode": mode,
            "radial": res.radial_part, "angular": res.angular_part,
            "value": res.value,
        }

    cols = ["D", "lambda", "n", "l", "q", "space", "mode", "radial", "angular", "value"]
    return cols, _map_ordered(one, work, args.parallelism)


def _run_shannon(args):
    quad = _quad_from_args(args)
    states = _states_from_args(args)
    modes = ["exact", "conjecture"] if args.mode == "both" else [args.mode]
    work = [(s, sp, m) for s in states for sp in _spaces(args.space) for m in modes]

    def one(item):
        state, space, mode = item
        res = shannon(state, space, mode, quad=quad)
        return {
            "D": state.D, "lambda": state.lam, "n": state.n, "l": state.l,
            "space": space.value, "mode": mode,
            "radial": res.radial_part, "angular": res.angular_part,
            "value": res.value, "conjecture": int(res.conjecture),
        }

    cols = ["D", "lambda", "n", "l", "space", "mode", "radial", "angular",
            "value", "conjecture"]
    return cols, _map_ordered(one, work, args.parallelism)


def _run_asym(args):
    quad = _quad_from_args(args)
    alphas = _parse_grid(args.alpha_grid)

    def one(alpha):
        p = J1Params(sigma=args.sigma, rate=args.rate, kappa=args.kappa,
                     m=args.m, alpha=alpha)
        exact_log = j1_exact(p, quad=quad).log_mag
        asym_log = j1_asym(p, args.order).total_log
        return {
            "sigma": args.sigma, "rate": args.rate, "kappa": args.kappa,
            "m": args.m, "order": args.order, "alpha": alpha,
            "exact_log": exact_log, "asym_log": asym_log,
            "rel_err": abs(math.expm1(exact_log - asym_log)),
        }

    rows = _map_ordered(one, alphas, args.parallelism)
    fit = fit_loglog_slope(alphas, [max(r["rel_err"], 1e-300) for r in rows])
    for r in rows:
        r["fitted_slope"] = fit.slope
        r["slope_ci"] = fit.ci_halfwidth
    cols = ["sigma", "rate", "kappa", "m", "order", "alpha", "exact_log",
            "asym_log", "rel_err", "fitted_slope", "slope_ci"]
    return cols, rows


def _run_sums(args):
    quad = _quad_from_args(args)
    states = _states_from_args(args)
    qs = _parse_grid(args.q)
    work = [(s, q) for s in states for q in qs]

    def one(item):
        state, q = item
        rep = uncertainty_sum(state, q, quad=quad)
        return {
            "D": state.D, "q": rep.q, "p": rep.p,
            "sum_exact": rep.sum_exact, "bound": rep.renyi_bound,
            "slack": rep.renyi_slack,
        }

    cols = ["D", "q", "p", "sum_exact", "bound", "slack"]
    return cols, _map_ordered(one, work, args.parallelism)


def _run_converge(args):
    quad = _quad_from_args(args)
    quantity = args.quantity
    if quantity == "j1":
        grid = _parse_grid(args.alpha_grid)

        def one(alpha):
            p = J1Params(sigma=args.sigma, rate=args.rate, kappa=args.kappa,
                         m=args.m, alpha=alpha)
            e = j1_exact(p, quad=quad).log_mag
            a = j1_asym(p, args.order).total_log
            return e, a, abs(math.expm1(e - a))

    else:
        grid = _parse_grid(args.D_grid, int)

        def one(D):
            state = _grid_state(D, args.lam, args.n, args.l)
            space = Space(args.space if args.space != "both" else "position")
            if quantity == "moment":
                e = radial_moment(MomentQuery(state, args.k, space, "exact"), quad=quad)
                a = radial_moment(MomentQuery(state, args.k, space, "asymptotic"))
            elif quantity == "renyi_total":
                e = renyi_total(state, args.q, space, "exact", quad=quad).value
                a = renyi_total(state, args.q, space, "asymptotic").value
            elif quantity == "shannon_total":
                e = shannon(state, space, "exact", quad=quad).value
                a = shannon(state, space, "conjecture").value
            else:
                raise ValueError(f"unknown quantity {quantity!r}")
            return e, a, abs(a - e) / (abs(e) if e else 1.0)

    triples = _map_ordered(one, grid, args.parallelism)
    fit = fit_loglog_slope(grid, [max(t[2], 1e-300) for t in triples])
    rows = [
        {
            "quantity": quantity, "grid_value": g, "exact": t[0], "asym": t[1],
            "rel_err": t[2], "fitted_slope": fit.slope, "slope_ci": fit.ci_halfwidth,
        }
        for g, t in zip(grid, triples)
    ]
    cols = ["quantity", "grid_value", "exact", "asym", "rel_err",
            "fitted_slope", "slope_ci"]
    return cols, rows


COMMANDS = {
    "moments": _run_moments,
    "renyi": _run_renyi,
    "shannon": _run_shannon,
    "asym": _run_asym,
    "sums": _run_sums,
    "converge": _run_converge,
}


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _provenance(args):
    skip = {"func", "out"}
    echo = " ".join(
        f"{k}={v}" for k, v in sorted(vars(args).items())
        if k not in skip and v is not None
    )
    return f"# oscentropy {echo}"


def _render_csv(cols, rows, args):
    lines = [_provenance(args), ",".join(cols)]
    for r in rows:
        lines.append(",".join(_fmt(r[c]) for c in cols))
    return "\n".join(lines) + "\n"


def _render_json(cols, rows, args):
    doc = {
        "provenance": _provenance(args),
        "columns": cols,
        "rows": [{c: r[c] for c in cols} for r in rows],
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def _check_finite(rows):
    for r in rows:
        for k, v in r.items():
            if isinstance(v, float) and not math.isfinite(v):
                raise ConvergenceError(f"non-finite value in column {k!r}")


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_common(sub, state=True):
    sub.add_argument("--out", help="output path (default stdout)")
    sub.add_argument("--format", choices=["csv", "json"], default="csv")
    sub.add_argument("--tol", type=float, default=None,
                     help="quadrature relative tolerance "
                          "(default 1e-10, or OSC_DEFAULT_TOL)")
    sub.add_argument("--max-panels", type=int, default=4096)
    sub.add_argument("--parallelism", type=int, default=1)
    if state:
        sub.add_argument("--state", help='state string "D=..;lambda=..;n=..;mu=v^m,..."')
        sub.add_argument("--grid-D", help="comma-separated D values (with --n/--l)")
        sub.add_argument("--n", type=int, default=0)
        sub.add_argument("--l", type=int, default=0)
        sub.add_argument("--lambda", dest="lam", type=float, default=1.0)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="oscentropy",
        description="Moments and entropies of D-dimensional harmonic states",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("moments", help="radial expectation values")
    _add_common(p)
    p.add_argument("--k", required=True, help="moment order(s), comma separated")
    p.add_argument("--space", choices=["position", "momentum", "both"],
                   default="position")

    p = subs.add_parser("renyi", help="Renyi entropies")
    _add_common(p)
    p.add_argument("--q", required=True, help="Renyi order(s), comma separated")
    p.add_argument("--space", choices=["position", "momentum", "both"],
                   default="position")
    p.add_argument("--mode", choices=["exact", "asymptotic", "both"],
                   default="both")

    p = subs.add_parser("shannon", help="Shannon entropies")
    _add_common(p)
    p.add_argument("--space", choices=["position", "momentum", "both"],
                   default="position")
    p.add_argument("--mode", choices=["exact", "conjecture", "both"],
                   default="both")

    p = subs.add_parser("asym", help="Laguerre functional asymptotics")
    _add_common(p, state=False)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--rate", type=float, required=True)
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--alpha-grid", required=True)
    p.add_argument("--order", type=int, choices=[0, 1], default=0)

    p = subs.add_parser("sums", help="position-momentum uncertainty sums")
    _add_common(p)
    p.add_argument("--q", required=True, help="Renyi order(s), comma separated")

    p = subs.add_parser("converge", help="exact-vs-asymptotic convergence study")
    _add_common(p)
    p.add_argument("--quantity", required=True,
                   choices=["moment", "renyi_total", "shannon_total", "j1"])
    p.add_argument("--D-grid", help="comma separated D grid")
    p.add_argument("--alpha-grid", help="comma separated alpha grid (j1)")
    p.add_argument("--k", type=float, default=2.0)
    p.add_argument("--q", type=float, default=2.0)
    p.add_argument("--space", choices=["position", "momentum", "both"],
                   default="position")
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--rate", type=float, default=2.0)
    p.add_argument("--kappa", type=float, default=2.0)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--order", type=int, choices=[0, 1], default=0)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cols, rows = COMMANDS[args.command](args)
        _check_finite(rows)
        if args.format == "json":
            text = _render_json(cols, rows, args)
        else:
            text = _render_csv(cols, rows, args)
    except ConvergenceError as exc:
        print(f"oscentropy: convergence failure: {exc}", file=sys.stderr)
        return 3
    except (ValidationError, ValueError) as exc:
        print(f"oscentropy: {exc}", file=sys.stderr)
        print(parser.format_usage(), file=sys.stderr, end="")
        return 2
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
