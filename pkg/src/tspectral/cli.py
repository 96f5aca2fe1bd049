"""Experiment runner.

Every subcommand writes its data files into ``--out`` (default:
``$TS_DEFAULT_OUT`` or ``./ts_out``) and prints a JSON summary on stdout.

Exit codes: 0 when the run's checks pass, 1 when a numerical check fails,
2 on usage errors (bad flags, bad geometry file, parameters out of range).

Examples::

    tspectral parseval --geometry identity.json --L 20 --N 4096
    tspectral embedding --s 1 --seeds 50 --out runs/a
    tspectral solve --geometry g.json --alpha 0.7 --s 0 --input f.csv
    tspectral green --alpha 1.5 --t0 -2,0,2 --eps 0.05
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import io
from .discretization import build_grid, weighted_norm
from .distributions import delta_convergence_study
from .errors import TransmutationError
from .geometry import make_geometry, validate_geometry
from .hermite import gram_matrix
from .sobolev import check_embedding, embedding_constant, random_hs_sample
from .solver import AgingSymbol, apply_aging_operator, green_sweep, solve_aging
from .transmutation import pullback, transmute
from .weighted_fourier import iwft, spectral_norm, wft

GEOMETRY_SCHEMA = """\
geometry file (JSON):
  {"kind": "identity" | "affine" | "hadamard" | "composed",
   "params": {"a": >0, "b": real} | {"t_shift": real} | {"maps": [<scale>, ...]},
   "weight": {"kind": "constant", "c": >0} | {"kind": "poly", "p": real}
           | {"kind": "coeffs", "coeffs": [c0, c1, ...]}}"""


class UsageError(Exception):
    pass


def _floats(text: str) -> list:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated reals, got {text!r}")


def _load_geometry(path):
    if path is None:
        return make_geometry({})
    try:
        desc = json.loads(Path(path).read_text(encoding="utf-8"))
        return make_geometry(desc)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, TransmutationError) as exc:
        raise UsageError(f"cannot load geometry {path!s}: {exc}\n{GEOMETRY_SCHEMA}")


def _grid(args):
    return build_grid(_load_geometry(args.geometry), args.L, args.N)


def _out_dir(args) -> Path:
    out = Path(args.out or os.environ.get("TS_DEFAULT_OUT") or "ts_out")
    out.mkdir(parents=True, exist_ok=True)
    return out


def _wavepacket_signal(grid, rng):
    """Random sum of Gaussian wave packets in y, pulled back to t."""
    y = grid.y_nodes
    v = np.zeros_like(y, dtype=complex)
    for _ in range(rng.integers(1, 5)):
        c, w, k = rng.uniform(-5, 5), rng.uniform(0.5, 2.0), rng.uniform(-3, 3)
        amp = rng.standard_normal() + 1j * rng.standard_normal()
        v += amp * np.exp(-0.5 * ((y - c) / w) ** 2 + 1j * k * y)
    return pullback(grid, v)


# ---------------------------------------------------------------------------
# subcommands; each returns (passed, summary dict)
# ---------------------------------------------------------------------------

def cmd_validate_geometry(args):
    g = _load_geometry(args.geometry)
    rep = validate_geometry(g, args.samples)
    d = rep.to_dict()
    d["geometry"] = g.descriptor()
    io.write_json(_out_dir(args) / "validate_geometry.json", d)
    return rep.passed, d


def cmd_parseval(args):
    grid = _grid(args)
    rng = np.random.default_rng(args.seed)
    rows = []
    for i in range(args.signals):
        f = _wavepacket_signal(grid, rng)
        nf = weighted_norm(f)
        F = wft(f)
        v = transmute(f)
        rows.append({
            "signal": i,
            "plancherel": abs(spectral_norm(F) - nf) / nf,
            "unitarity": abs(float(np.sqrt(grid.dy) * np.linalg.norm(v.samples)) - nf) / nf,
            "roundtrip": float(np.max(np.abs(iwft(F).samples - f.samples)) / np.max(np.abs(f.samples))),
        })
    worst = max(max(r["plancherel"], r["unitarity"], r["roundtrip"]) for r in rows)
    d = {"L": grid.half_width, "N": grid.n_points, "max_residual": worst, "tol": args.tol,
         "pass": worst <= args.tol, "signals": rows}
    io.write_json(_out_dir(args) / "parseval.json", d)
    return d["pass"], {k: d[k] for k in ("L", "N", "max_residual", "tol", "pass")}


def cmd_hermite_gram(args):
    grid = _grid(args)
    G = gram_matrix(grid.geometry, grid, args.modes - 1)
    dev = np.abs(G - np.eye(args.modes))
    off = dev - np.diag(np.diag(dev))
    d = {"modes": args.modes, "max_offdiag": float(off.max()), "max_deviation": float(dev.max()),
         "tol": args.tol, "pass": bool(dev.max() <= args.tol)}
    io.write_json(_out_dir(args) / "hermite_gram.json", d)
    return d["pass"], d


def cmd_delta_scaling(args):
    grid = _grid(args)
    g = grid.geometry
    tau = args.tau[0]
    phi = lambda t: np.exp(-0.5 * g.psi(t) ** 2)  # noqa: E731
    tab = delta_convergence_study(g, grid, tau, phi, sorted(args.eps, reverse=True))
    io.write_csv(_out_dir(args) / "delta_scaling.csv", ["eps", "abs_error", "est_order"], tab.rows())
    orders = tab.orders
    ok = bool(np.all((orders >= args.order_min) & (orders <= args.order_max)))
    d = {"tau": tau, "orders": orders.tolist(), "abs_error": tab.abs_error.tolist(), "pass": ok}
    return ok, d


def cmd_embedding(args):
    if args.seeds < 1:
        raise UsageError("--seeds must be >= 1")
    grid = _grid(args)
    reports = []
    for seed in range(args.seeds):
        f = random_hs_sample(seed, args.s, args.margin, grid)
        r = check_embedding(f, args.s).to_dict()
        r["seed"] = seed
        reports.append(r)
    bad = sum(not r["pass"] for r in reports)
    d = {"s": args.s, "C_s": embedding_constant(args.s), "margin": args.margin,
         "geometry": grid.geometry.descriptor(), "L": grid.half_width, "N": grid.n_points,
         "max_ratio": max(r["ratio"] for r in reports), "violations": bad, "pass": bad == 0,
         "reports": reports}
    io.write_json(_out_dir(args) / "embedding.json", d)
    return d["pass"], {k: d[k] for k in ("s", "C_s", "max_ratio", "violations", "pass")}


def cmd_solve(args):
    a = AgingSymbol(args.alpha)
    grid = _grid(args)
    if args.input is None:
        raise UsageError("solve needs --input <signal.csv> with columns t,y,re,im")
    try:
        f = io.read_signal_csv(args.input, grid)
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc))
    rep = solve_aging(f, a, args.s)
    back = apply_aging_operator(rep.solution, a)
    scale = max(float(np.max(np.abs(f.samples))), np.finfo(float).tiny)
    residual = float(np.max(np.abs(back.samples - f.samples)) / scale)
    out = _out_dir(args)
    io.write_signal_csv(out / "solution.csv", rep.solution)
    d = rep.to_dict()
    d["residual"] = residual
    d["pass"] = bool(rep.bound_holds and residual <= 1e-9)
    io.write_json(out / "solve_report.json", d)
    return d["pass"], d


def cmd_green(args):
    a = AgingSymbol(args.alpha)
    if len(args.eps) != 1:
        raise UsageError("green takes exactly one --eps value")
    grid = _grid(args)
    t0s = args.t0 if args.t0 is not None else args.tau
    rep = green_sweep(grid.geometry, grid, a, t0s, args.eps[0])
    rows = [(t0, a.alpha, sup) for t0, sup in zip(rep.t0, rep.sups)]
    io.write_csv(_out_dir(args) / "green_sweep.csv", ["t0", "alpha", "sup_envelope"], rows)
    return rep.passed, rep.to_dict()


def cmd_envelope_csv(args):
    grid = _grid(args)
    if args.input is not None:
        try:
            f = io.read_signal_csv(args.input, grid)
        except (OSError, ValueError) as exc:
            raise UsageError(str(exc))
    else:
        f = random_hs_sample(args.seed, args.s, args.margin, grid)
    rep = check_embedding(f, args.s)
    env = rep.rhs / grid.omega_nodes
    rows = zip(grid.t_nodes, f.samples.real, env, -env)
    io.write_csv(_out_dir(args) / "envelope.csv", ["t", "u", "plus_env", "minus_env"], rows)
    return rep.passed, rep.to_dict()


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tspectral", description=__doc__.split("\n\n")[0],
                                epilog=GEOMETRY_SCHEMA, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, grid=True):
        sp.add_argument("--geometry", metavar="PATH", help="geometry JSON (default: identity, omega=1)")
        if grid:
            sp.add_argument("--L", type=float, default=20.0, help="y half width (default 20)")
            sp.add_argument("--N", type=int, default=4096, help="grid size, power of two (default 4096)")
        sp.add_argument("--out", metavar="DIR", help="output directory")
        return sp

    sp = common(sub.add_parser("validate-geometry", help="spot-check psi' > 0 and omega > 0"), grid=False)
    sp.add_argument("--samples", type=int, default=100)
    sp.set_defaults(func=cmd_validate_geometry)

    sp = common(sub.add_parser("parseval", help="isometry residuals on random wave packets"))
    sp.add_argument("--signals", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.set_defaults(func=cmd_parseval)

    sp = common(sub.add_parser("hermite-gram", help="Gram matrix of the weighted Hermite basis"))
    sp.add_argument("--modes", type=int, default=21)
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.set_defaults(func=cmd_hermite_gram)

    sp = common(sub.add_parser("delta-scaling", help="mollified weighted delta convergence table"))
    sp.add_argument("--tau", type=_floats, default=[0.0])
    sp.add_argument("--eps", type=_floats, default=[0.4, 0.2, 0.1, 0.05])
    sp.add_argument("--order-min", type=float, default=1.5)
    sp.add_argument("--order-max", type=float, default=2.5)
    sp.set_defaults(func=cmd_delta_scaling)

    sp = common(sub.add_parser("embedding", help="Sobolev embedding ratios on random H^s signals"))
    sp.add_argument("--s", type=float, default=1.0)
    sp.add_argument("--seeds", type=int, default=50)
    sp.add_argument("--margin", type=float, default=0.6)
    sp.set_defaults(func=cmd_embedding)

    sp = common(sub.add_parser("solve", help="solve (D^alpha + I) u = f for a CSV signal"))
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--s", type=float, default=0.0)
    sp.add_argument("--input", metavar="CSV")
    sp.set_defaults(func=cmd_solve)

    sp = common(sub.add_parser("green", help="envelope sweep of mollified Green's functions"))
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--t0", type=_floats, default=None)
    sp.add_argument("--tau", type=_floats, default=[0.0], help="alias of --t0")
    sp.add_argument("--eps", type=_floats, default=[0.05])
    sp.set_defaults(func=cmd_green)

    sp = common(sub.add_parser("envelope-csv", help="signal and its +-C_s/omega envelope"))
    sp.add_argument("--s", type=float, default=1.0)
    sp.add_argument("--input", metavar="CSV")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--margin", type=float, default=0.6)
    sp.set_defaults(func=cmd_envelope_csv)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits 2 on bad flags
    try:
        passed, summary = args.func(args)
    except (UsageError, TransmutationError) as exc:
        print(f"{parser.prog} {args.command}: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    summary = {"command": args.command, **summary}
    print(json.dumps(summary, indent=2, sort_keys=True))
    return 0 if passed else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
