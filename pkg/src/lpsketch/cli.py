"""Command-line front end: ``lpsketch <subcommand> [options]``.

Exit codes: 0 success, 1 usage or input error, 2 numerical or solver failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import ecc, genbench, sketch
from .errors import LpSketchError, NumericalFailure, InfeasibleProjection, SolveFailure, UnboundedProjection
from .instances import GenConfig, gen_feasible, gen_infeasible
from .lp_model import load_lp, save_lp
from .project import project_lp
from .retrieve import Method, full_pipeline
from .solver import solve

NUMERICAL = (NumericalFailure, InfeasibleProjection, UnboundedProjection, SolveFailure)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage().strip()}\n{self.prog}: error: {message}")


def _default_seed():
    env = os.environ.get("LPSKETCH_SEED")
    return int(env) if env not in (None, "") else 0


def _emit(doc, out):
    text = json.dumps(doc, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _projector_args(p):
    p.add_argument("--eps", type=float, default=0.2)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--kind", choices=[k.value for k in sketch.ProjectorKind], default="sparse")
    p.add_argument("--q", type=float, default=None)


def build_parser():
    parser = _Parser(prog="lpsketch", description="Random projections for standard-form LPs.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out", default=None)
        return p

    p = add("gen", "generate a random instance")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--density", type=float, default=1.0)
    p.add_argument("--infeasible", action="store_true")

    p = add("solve", "solve an LP file with the simplex method")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--theta", type=float, default=None)

    p = add("project", "write the projected LP")
    p.add_argument("--in", dest="infile", required=True)
    _projector_args(p)

    p = add("retrieve", "project, solve and retrieve an approximate solution")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--method", choices=[m.value for m in Method], default="pinv")
    _projector_args(p)

    p = add("bench", "run a benchmark sweep and write CSV")
    p.add_argument("--grid", required=True)
    p.add_argument("--cells", type=int, default=None, help="use only the first N cells")
    p.add_argument("--per-cell", type=int, default=10)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--with-means", action="store_true")
    _projector_args(p)

    p = add("jll-check", "distortion statistics for random points")
    p.add_argument("--m", type=int, default=1000)
    p.add_argument("--points", type=int, default=50)
    _projector_args(p)

    p = add("ecc", "encode, corrupt and decode a text")
    p.add_argument("--text", required=True)
    p.add_argument("--rate", type=float, default=0.1)
    p.add_argument("--delta", type=float, default=0.5)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--q", type=float, default=ecc.ECC_Q)
    p.add_argument("--padded", action="store_true", help="7 bits per character")
    return parser


def _cmd_gen(a):
    cfg = GenConfig(a.m, a.n, a.density, a.seed, not a.infeasible)
    if cfg.feasible:
        lp, x = gen_feasible(cfg)
        extra = {"planted_x": x.tolist()}
    else:
        lp, y = gen_infeasible(cfg)
        extra = {"certificate": y.tolist()}
    if a.out:
        save_lp(lp, a.out, **extra)
    else:
        print(json.dumps(dict(lp.to_dict(), **extra)))


def _cmd_solve(a):
    lp = load_lp(a.infile)
    if a.theta is not None:
        lp = lp.with_theta(a.theta)
    res = solve(lp)
    _emit(res.to_dict(), a.out)


def _k_for(a, n):
    return a.k if a.k is not None else sketch.projected_dimension(n, a.eps)


def _cmd_project(a):
    lp = load_lp(a.infile)
    T = sketch.sample_projector(a.kind, _k_for(a, lp.n), lp.m, a.seed, q=a.q)
    prj = project_lp(lp, T)
    _emit({"projector": T.to_dict(), "lp": prj.projected.to_dict()}, a.out)


def _cmd_retrieve(a):
    lp = load_lp(a.infile)
    rep = full_pipeline(lp, a.eps, a.method, a.seed, k=a.k, kind=a.kind, q=a.q)
    _emit(rep.to_dict(), a.out)


def _cmd_bench(a):
    grid = genbench.load_grid(a.grid)
    if a.cells is not None:
        grid = grid[: a.cells]
    records = genbench.run_bench(grid, a.eps, a.per_cell, a.seed, k=a.k, kind=a.kind, q=a.q, threads=a.threads)
    if a.with_means:
        records = records + genbench.cell_means(records)
    if a.out:
        genbench.write_csv(records, a.out)
    else:
        genbench.write_csv(records, "/dev/stdout")


def _cmd_jll(a):
    rng = np.random.default_rng(sketch.derive_seed(a.seed, 0))
    pts = rng.standard_normal((a.points, a.m))
    T = sketch.sample_projector(a.kind, _k_for(a, a.points), a.m, sketch.derive_seed(a.seed, 1), q=a.q)
    stats = sketch.distortion_stats(T, pts, a.eps)
    _emit(dict(stats.to_dict(), k=T.k, projector=T.to_dict()), a.out)


def _cmd_ecc(a):
    noise = ecc.NoiseModel(a.delta, a.rate, sketch.derive_seed(a.seed, 2))
    rep = ecc.run_ecc_demo(a.text, noise, k=a.k, epsilon=a.eps, seed=a.seed, q=a.q, padded=a.padded)
    _emit(rep.to_dict(), a.out)


COMMANDS = {
    "gen": _cmd_gen,
    "solve": _cmd_solve,
    "project": _cmd_project,
    "retrieve": _cmd_retrieve,
    "bench": _cmd_bench,
    "jll-check": _cmd_jll,
    "ecc": _cmd_ecc,
}


def dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if args.seed is None:
        try:
            args.seed = _default_seed()
        except ValueError:
            print("lpsketch: error: LPSKETCH_SEED is not an integer", file=sys.stderr)
            return 1
    try:
        COMMANDS[args.command](args)
    except NUMERICAL as exc:
        print(f"lpsketch: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (LpSketchError, ValueError, KeyError, OSError) as exc:
        print(f"lpsketch: error: {exc}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
