"""Command-line front end.

Every verb prints one JSON document on stdout, except ``dist transform``
which defaults to CSV vertex pairs for plotting.  Exit status is 0 on
success, 2 when inputs cannot be read or validated and 1 when a
computation fails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from . import experiments as ex
from . import limits, orders, skorokhod
from .dist import AtomicDistribution
from .pwl import TOL

__all__ = ["main", "build_parser", "default_tol"]

TOL_ENV = "IQFCALC_TOL"

PWL_TRANSFORMS = ("idf", "iqf", "iqf0", "iqf1", "lorenz")
POINT_TRANSFORMS = ("cvar", "hl", "psi", "stoploss", "potential")


class InputError(Exception):
    """Bad input file or flag; maps to exit status 2."""


def default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return TOL
    try:
        tol = float(raw)
    except ValueError:
        raise InputError(f"{TOL_ENV}={raw!r} is not a number")
    if not tol >= 0:
        raise InputError(f"{TOL_ENV} must be nonnegative")
    return tol


# -- loading -----------------------------------------------------------------


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror or e}")
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON ({e.msg} at line {e.lineno} column {e.colno})")


def load_law(path: str) -> AtomicDistribution:
    data = _read_json(path)
    try:
        return AtomicDistribution.from_dict(data)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"{path}: not a distribution ({e})")


def load_experiment(path: str) -> ex.BinaryExperiment:
    data = _read_json(path)
    try:
        return ex.BinaryExperiment.from_dict(data)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"{path}: not an experiment ({e})")


def load_family(directory: str) -> list[AtomicDistribution]:
    d = Path(directory)
    if not d.is_dir():
        raise InputError(f"{directory} is not a directory")
    files = sorted(d.glob("*.json"))
    if not files:
        raise InputError(f"{directory} contains no .json laws")
    return [load_law(str(f)) for f in files]


def parse_grid(text: str) -> np.ndarray:
    """``"lo:hi:n"`` or a comma-separated list of numbers."""
    try:
        if ":" in text:
            lo, hi, n = text.split(":")
            n = int(n)
            if n < 1:
                raise ValueError
            return np.linspace(float(lo), float(hi), n)
        pts = np.array([float(t) for t in text.split(",") if t.strip()])
    except ValueError:
        raise InputError(f"invalid grid {text!r}; use lo:hi:n or a comma list")
    if pts.size == 0 or not np.all(np.isfinite(pts)):
        raise InputError(f"invalid grid {text!r}")
    return pts


# -- output ------------------------------------------------------------------


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, indent=2, allow_nan=False))
    out.write("\n")


def _emit_csv(points, header, out) -> None:
    out.write(",".join(header) + "\n")
    for a, b in points:
        out.write(f"{float(a)!r},{float(b)!r}\n")


# -- verbs -------------------------------------------------------------------


def _transform_curve(law: AtomicDistribution, which: str):
    return {
        "idf": law.idf,
        "iqf": law.iqf,
        "iqf0": law.iqf_shift0,
        "iqf1": law.iqf_shift1,
        "lorenz": law.iqf_shift0,
    }[which]


def _point_transform(law: AtomicDistribution, which: str, grid: Optional[np.ndarray]):
    fn: Callable = {
        "cvar": law.cvar,
        "hl": law.hardy_littlewood,
        "psi": law.psi,
        "stoploss": law.stop_loss,
        "potential": law.potential,
    }[which]
    if grid is None:
        if which == "cvar":
            bp = law.iqf_shift0.breakpoints
            grid = bp[bp > 0]
        elif which == "hl":
            bp = law.iqf_shift1.breakpoints
            grid = bp[bp < 1]
        else:
            grid = law.idf.breakpoints
    return grid, np.asarray(fn(grid), dtype=float)


def cmd_dist_transform(args, out) -> None:
    law = load_law(args.law)
    grid = parse_grid(args.grid) if args.grid else None
    if args.which in PWL_TRANSFORMS:
        f = _transform_curve(law, args.which)
        if grid is not None:
            xs, ys = grid, np.asarray(f(grid), dtype=float)
        else:
            xs, ys = f.breakpoints, f.values
        if args.format == "json":
            _emit(f.to_dict() if grid is None else {"points": [[float(a), float(b)] for a, b in zip(xs, ys)]}, out)
        else:
            _emit_csv(zip(xs, ys), ("x", args.which), out)
        return
    xs, ys = _point_transform(law, args.which, grid)
    if args.format == "json":
        _emit({"points": [[float(a), float(b)] for a, b in zip(xs, ys)]}, out)
    else:
        _emit_csv(zip(xs, ys), ("x", args.which), out)


def cmd_dist_from_samples(args, out) -> None:
    try:
        law = AtomicDistribution.from_csv(args.csv)
    except OSError as e:
        raise InputError(f"cannot read {args.csv}: {e.strerror or e}")
    except ValueError as e:
        raise InputError(f"{args.csv}: {e}")
    _emit(law.to_dict(), out)


def cmd_order(args, out) -> None:
    X, Y = load_law(args.a), load_law(args.b)
    witness = {"icx": orders.icx_witness, "decx": orders.decx_witness, "cx": orders.cx_witness}[args.kind]
    w = witness(X, Y, args.tol)
    _emit({"verdict": w is None, "witness_u": w}, out)


def cmd_bound_cantelli(args, out) -> None:
    bound, law = orders.cantelli_extremal(args.sigma, args.t)
    _emit({"bound": bound, "law": law.to_dict()}, out)


def cmd_bound_positive(args, out) -> None:
    bound, law = orders.positive_tail_extremal(args.a, args.b)
    _emit({"bound": bound, "law": law.to_dict()}, out)


def cmd_limits_diag(args, out) -> None:
    family = load_family(args.dir)
    _emit(limits.family_diagnostics(family, args.u, args.v, args.delta).to_dict(), out)


def cmd_limits_dominate(args, out) -> None:
    family = load_family(args.dir)
    _emit(limits.dominating_variable(family).to_dict(), out)


def cmd_exp_risk(args, out) -> None:
    _emit(ex.risk_function(load_experiment(args.exp)).to_dict(), out)


def cmd_exp_bayes(args, out) -> None:
    _emit(ex.bayes_risk_curve(load_experiment(args.exp)).to_dict(), out)


def cmd_exp_compare(args, out) -> None:
    A, B = load_experiment(args.a), load_experiment(args.b)
    d_ab, D = ex.deficiency(A, B)
    d_ba, _ = ex.deficiency(B, A)
    _emit(
        {
            "more_informative_AB": ex.more_informative(A, B, args.tol),
            "more_informative_BA": ex.more_informative(B, A, args.tol),
            "delta2_AB": d_ab,
            "delta2_BA": d_ba,
            "Delta2": D,
        },
        out,
    )


def cmd_exp_canon(args, out) -> None:
    mu = load_law(args.mu)
    _emit(ex.canonical_experiment(mu).to_dict(), out)


def cmd_embed_plan(args, out) -> None:
    mu0, mu = load_law(args.mu0), load_law(args.mu)
    _emit(skorokhod.plan_embedding(mu0, mu, args.tol).to_dict(), out)


def cmd_embed_verify(args, out) -> None:
    mu0, mu = load_law(args.mu0), load_law(args.mu)
    if args.n < 1 or args.workers < 1:
        raise InputError("--n and --workers must be positive")
    report = skorokhod.monte_carlo_verify(mu0, mu, args.n, args.seed, args.workers, args.tol)
    _emit(report.to_dict(), out)


# -- parser ------------------------------------------------------------------


def build_parser(tol: float = TOL) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="iqfcalc", description="Exact IDF/IQF calculus for atomic laws.")
    p.add_argument("-o", "--output", help="write to this file instead of stdout")
    top = p.add_subparsers(dest="verb", required=True)

    def with_tol(sp):
        sp.add_argument("--tol", type=float, default=tol, help=f"tolerance (default {tol:g}, env {TOL_ENV})")
        return sp

    dist = top.add_parser("dist", help="transforms of a single law").add_subparsers(dest="sub", required=True)
    t = dist.add_parser("transform", help="dump a transform as vertices or on a grid")
    t.add_argument("law")
    t.add_argument("which", choices=PWL_TRANSFORMS + POINT_TRANSFORMS)
    t.add_argument("--grid", help="lo:hi:n or comma-separated abscissae")
    t.add_argument("--format", choices=("csv", "json"), default="csv")
    t.set_defaults(func=cmd_dist_transform)
    s = dist.add_parser("from-samples", help="empirical law from a CSV of values[,weights]")
    s.add_argument("csv")
    s.set_defaults(func=cmd_dist_from_samples)

    order = top.add_parser("order", help="convex order tests")
    order.add_argument("kind", choices=("icx", "decx", "cx"))
    order.add_argument("a")
    order.add_argument("b")
    with_tol(order).set_defaults(func=cmd_order)

    bound = top.add_parser("bound", help="sharp tail bounds").add_subparsers(dest="sub", required=True)
    c = bound.add_parser("cantelli", help="P(Z >= t) for mean 0, standard deviation sigma")
    c.add_argument("--sigma", type=float, required=True)
    c.add_argument("--t", type=float, required=True)
    c.set_defaults(func=cmd_bound_cantelli)
    pos = bound.add_parser("positive", help="P(Z > a) for Z > 0, mean 1, E[Z^2] = b")
    pos.add_argument("--a", type=float, required=True)
    pos.add_argument("--b", type=float, required=True)
    pos.set_defaults(func=cmd_bound_positive)

    lim = top.add_parser("limits", help="family diagnostics").add_subparsers(dest="sub", required=True)
    dg = lim.add_parser("diag", help="oscillation, UI modulus and moment bound")
    dg.add_argument("dir")
    dg.add_argument("--u", type=float, default=0.25)
    dg.add_argument("--v", type=float, default=0.75)
    dg.add_argument("--delta", type=float, default=0.1)
    dg.set_defaults(func=cmd_limits_diag)
    dm = lim.add_parser("dominate", help="icx-dominating law of |X| over the family")
    dm.add_argument("dir")
    dm.set_defaults(func=cmd_limits_dominate)

    exp = top.add_parser("exp", help="binary experiments").add_subparsers(dest="sub", required=True)
    r = exp.add_parser("risk", help="risk function")
    r.add_argument("exp")
    r.set_defaults(func=cmd_exp_risk)
    b = exp.add_parser("bayes", help="minimum Bayes risk curve")
    b.add_argument("exp")
    b.set_defaults(func=cmd_exp_bayes)
    cm = exp.add_parser("compare", help="informativeness and deficiencies")
    cm.add_argument("a")
    cm.add_argument("b")
    with_tol(cm).set_defaults(func=cmd_exp_compare)
    cn = exp.add_parser("canon", help="canonical measure pair of a ratio law")
    cn.add_argument("mu")
    cn.set_defaults(func=cmd_exp_canon)

    emb = top.add_parser("embed", help="Chacon-Walsh embedding").add_subparsers(dest="sub", required=True)
    pl = emb.add_parser("plan", help="interval sequence from mu0 to mu")
    pl.add_argument("mu0")
    pl.add_argument("mu")
    with_tol(pl).set_defaults(func=cmd_embed_plan)
    vf = emb.add_parser("verify", help="Monte Carlo check of the plan")
    vf.add_argument("mu0")
    vf.add_argument("mu")
    vf.add_argument("--n", type=int, default=100_000)
    vf.add_argument("--seed", type=int, default=0)
    vf.add_argument("--workers", type=int, default=1)
    with_tol(vf).set_defaults(func=cmd_embed_verify)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    try:
        tol = default_tol()
    except InputError as e:
        print(f"iqfcalc: error: {e}", file=sys.stderr)
        return 2
    parser = build_parser(tol)
    args = parser.parse_args(argv)
    if getattr(args, "tol", 0.0) < 0:
        print("iqfcalc: error: --tol must be nonnegative", file=sys.stderr)
        return 2
    try:
        if args.output:
            with open(args.output, "w") as out:
                args.func(args, out)
        else:
            args.func(args, sys.stdout)
    except InputError as e:
        print(f"iqfcalc: error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"iqfcalc: error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # computation failure
        print(f"iqfcalc: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    return 0
