"""Command-line front end: deterministic CSV/JSON emission of every result."""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import __version__
from .chain import ChainSpec, amplitude_set, endpoint_amplitude_grid, mode_basis
from .errors import ConfigurationError, DomainError, ResourceError, SingularInputError, ValidationError
from .one_qubit import Qubit1State, lambda0_variant_a, lambda0_variant_b, lambda1_1q, receiver_state_1q
from .optimize import OptProblem, OptResult, objective_landscape, optimize, summary_table, uniform_curve
from .oracle import evolve_and_trace
from .solvers import solve_first_order, solve_zero_order, zero_order_system
from .states import region_metrics
from .two_qubit import alpha_table, random_density, receiver_from_sender, validate_density

NUMERIC_EXIT = 3


def _fmt(value: float, precision: str) -> str:
    if precision == "full":
        return repr(float(value))
    return f"{value:.6g}"


def _complex_pair(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def _matrix_pairs(m: np.ndarray) -> list:
    return [[_complex_pair(z) for z in row] for row in m]


def _parse_grid(text: str) -> np.ndarray:
    try:
        lo, hi, step = (float(x) for x in text.split(":"))
    except ValueError as exc:
        raise ConfigurationError(f"grid must be lo:hi:step, got {text!r}") from exc
    if step <= 0 or hi < lo:
        raise ConfigurationError(f"bad grid {text!r}")
    return np.arange(lo, hi + 1e-12, step)


def _emit(args, header: list[str], rows: list, meta: dict) -> None:
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        if args.format == "csv":
            writer = csv.writer(out)
            writer.writerow(header)
            for row in rows:
                writer.writerow([cell if isinstance(cell, str) else _fmt(cell, args.precision)
                                 for cell in row])
        else:
            data = [dict(zip(header, [cell if isinstance(cell, str) else float(cell)
                                      for cell in row])) for row in rows]
            json.dump({"meta": meta, "data": data}, out, indent=2)
            out.write("\n")
    finally:
        if args.out:
            out.close()


def _emit_object(args, payload, meta: dict) -> None:
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        json.dump({"meta": meta, "data": payload}, out, indent=2)
        out.write("\n")
    finally:
        if args.out:
            out.close()


def _meta(args, command: str) -> dict:
    return {"n": args.n, "command": command, "version": __version__}


def _result_payload(res: OptResult) -> dict:
    payload = {
        "case": res.case, "lambda0_mode": res.lambda0_mode, "feasible": res.feasible,
        "t_opt": res.t_opt, "b_opt": res.b_opt, "lambda0_opt": res.lambda0_opt,
        "lambda1": res.lambda1, "lambda2": res.lambda2,
        "S1": res.s1, "S2": res.s2, "S12": res.s12, "objective": res.objective,
    }
    if res.x0 is not None:
        payload["x0"] = [_complex_pair(z) for z in res.x0]
    if res.x1 is not None:
        payload["x1"] = [_complex_pair(z) for z in res.x1]
    return payload


def cmd_amplitudes(args) -> int:
    basis = mode_basis(args.n)
    ts = _parse_grid(args.scan)
    f = endpoint_amplitude_grid(basis, ts)
    rows = [(t, z.real, z.imag, abs(z) ** 2) for t, z in zip(ts, f)]
    _emit(args, ["t", "f_re", "f_im", "f_abs2"], rows, _meta(args, "amplitudes"))
    return 0


def cmd_one_qubit(args) -> int:
    spec = ChainSpec(args.n)
    state = Qubit1State.pure(args.a1sq, args.phase)
    rho = receiver_state_1q(state, args.t, args.b, spec)
    payload = {
        "receiver": _matrix_pairs(rho),
        "lambda1": _complex_pair(lambda1_1q(args.t, args.b, spec)),
    }
    if args.a1sq < 1.0:
        payload["lambda0_variant_a"] = lambda0_variant_a(state, args.t, args.b, spec)
    if args.a1sq > 0.0:
        payload["lambda0_variant_b"] = lambda0_variant_b(state, args.t, args.b, spec)
    _emit_object(args, payload, _meta(args, "one-qubit"))
    return 0


def _load_sender(path: str) -> np.ndarray:
    with open(path) as fh:
        raw = json.load(fh)
    m = np.array([[complex(re, im) for re, im in row] for row in raw])
    return validate_density(m, psd_tol=None)


def cmd_map(args) -> int:
    spec = ChainSpec(args.n)
    table = alpha_table(amplitude_set(mode_basis(args.n), args.t), args.b, spec)
    rho_r = receiver_from_sender(table, _load_sender(args.sender))
    _emit_object(args, {"receiver": _matrix_pairs(rho_r)}, _meta(args, "map"))
    return 0


def cmd_solve(args) -> int:
    spec = ChainSpec(args.n)
    table = alpha_table(amplitude_set(mode_basis(args.n), args.t), args.b, spec)
    first = solve_first_order(table.first)
    t0, b_vec = zero_order_system(table)
    zero = solve_zero_order(t0, b_vec, args.lambda0_value)
    payload = {
        "lambda2": _complex_pair(table.second),
        "lambda1_all": [] if first is None else [_complex_pair(z) for z in first.eigenvalues],
        "lambda1_selected": None if first is None else first.lambda1,
        "x1": None if first is None else [_complex_pair(z) for z in first.x1],
        "lambda0": args.lambda0_value,
        "x0": [_complex_pair(z) for z in zero.x0],
        "residual": zero.residual,
    }
    _emit_object(args, payload, _meta(args, "solve"))
    return 0


def cmd_region(args) -> int:
    spec = ChainSpec(args.n)
    rows = []
    for t in _parse_grid(args.t_grid):
        for b in _parse_grid(args.b_grid):
            for l0 in _parse_grid(args.lambda0_grid):
                rep = region_metrics(spec, float(t), float(b), float(l0), args.case)
                rows.append((t, b, l0, rep.s1, rep.s2, rep.s12))
    _emit(args, ["t", "b", "lambda0", "S1", "S2", "S12"], rows, _meta(args, "region"))
    return 0


def _problem_from_args(args) -> OptProblem:
    mode = "fixed_one" if args.lambda0 == "one" else "free"
    kwargs = {"case": args.case, "lambda0_mode": mode}
    if args.t_window:
        lo, hi = (float(x) for x in args.t_window.split(":"))
        kwargs["t_window"] = (lo, hi)
    return OptProblem(**kwargs)


def cmd_optimize(args) -> int:
    spec = ChainSpec(args.n)
    problem = _problem_from_args(args)
    res = optimize(problem, spec)
    _emit_object(args, _result_payload(res), _meta(args, "optimize"))
    if args.dump and res.feasible:
        header, rows = objective_landscape(spec, problem, res.b_opt)
        with open(args.dump, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            for row in rows:
                writer.writerow([_fmt(c, args.precision) for c in row])
    return 0


def cmd_curve(args) -> int:
    spec = ChainSpec(args.n)
    b_grid = _parse_grid(args.b_grid) if args.b_grid else None
    if b_grid is not None:
        pts = uniform_curve(spec, b_window=(float(b_grid[0]), float(b_grid[-1])),
                            b_step=float(b_grid[1] - b_grid[0]) if len(b_grid) > 1 else 0.25)
    else:
        pts = uniform_curve(spec)
    rows = [(p.b, p.t, p.lam) for p in pts]
    _emit(args, ["b", "t", "lambda"], rows, _meta(args, "curve"))
    return 0


def cmd_oracle_check(args) -> int:
    spec = ChainSpec(args.n)
    rng = np.random.default_rng(args.seed)
    basis = mode_basis(args.n)
    worst = 0.0
    for _ in range(args.samples):
        rho_s = random_density(rng)
        t = rng.uniform(0.0, 2.0 * args.n)
        b = rng.uniform(0.0, 6.0)
        table = alpha_table(amplitude_set(basis, t), b, spec)
        dev = np.linalg.norm(receiver_from_sender(table, rho_s) - evolve_and_trace(rho_s, t, b, spec))
        worst = max(worst, float(dev))
    print(f"max Frobenius deviation analytic vs oracle (n={args.n}, "
          f"samples={args.samples}): {_fmt(worst, args.precision)}")
    return 0


def cmd_table1(args) -> int:
    spec = ChainSpec(args.n)
    mode = "fixed_one" if args.lambda0 == "one" else "free"
    results = summary_table(spec, mode)
    rows = []
    for case in (1, 2, 3, 4):
        res = results[case]
        rows.append((
            f"case{case}",
            res.s1, res.s2,
            res.lambda1 if res.lambda1 is not None else float("nan"),
            res.lambda2 if res.lambda2 is not None else float("nan"),
            res.t_opt, res.b_opt, res.lambda0_opt,
        ))
    _emit(args, ["case", "S1", "S2", "lambda1", "lambda2", "t_opt", "b_opt", "lambda0_opt"],
          rows, _meta(args, "table1"))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mqtransfer",
        description="Block-scaled coherence transfer through spin-1/2 chains",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, needs_tb: bool = False) -> None:
        p.add_argument("--n", type=int, required=True, help="chain length")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--seed", type=int, default=1)
        p.add_argument("--precision", choices=("6", "full"), default="6")
        if needs_tb:
            p.add_argument("--t", type=float, required=True)
            p.add_argument("--b", type=float, required=True)

    p = sub.add_parser("amplitudes", help="endpoint amplitude over a time grid")
    common(p)
    p.add_argument("--scan", required=True, help="time grid lo:hi:step")
    p.set_defaults(func=cmd_amplitudes)

    p = sub.add_parser("one-qubit", help="one-qubit receiver matrix and scale factors")
    common(p, needs_tb=True)
    p.add_argument("--a1sq", type=float, required=True)
    p.add_argument("--phase", type=float, default=0.0)
    p.set_defaults(func=cmd_one_qubit, format="json")

    p = sub.add_parser("map", help="two-qubit receiver for a sender matrix file")
    common(p, needs_tb=True)
    p.add_argument("--sender", required=True, help="JSON file, 4x4 row-major [re, im] pairs")
    p.set_defaults(func=cmd_map, format="json")

    p = sub.add_parser("solve", help="scale factors and vectors at one point")
    common(p, needs_tb=True)
    p.add_argument("--lambda0", dest="lambda0_value", type=float, required=True)
    p.set_defaults(func=cmd_solve, format="json")

    p = sub.add_parser("region", help="region metrics over parameter grids")
    common(p)
    p.add_argument("--t-grid", required=True, help="lo:hi:step")
    p.add_argument("--b-grid", required=True, help="lo:hi:step")
    p.add_argument("--lambda0-grid", required=True, help="lo:hi:step")
    p.add_argument("--case", type=int, choices=(1, 2, 3, 4), default=3)
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("optimize", help="maximize a case objective")
    common(p)
    p.add_argument("--case", type=int, choices=(1, 2, 3, 4), required=True)
    p.add_argument("--lambda0", choices=("free", "one"), default="free")
    p.add_argument("--t-window", default=None, help="override search window lo:hi")
    p.add_argument("--dump", default=None, help="CSV landscape dump path")
    p.set_defaults(func=cmd_optimize, format="json")

    p = sub.add_parser("curve", help="uniform-scaling constraint curve")
    common(p)
    p.add_argument("--b-grid", default=None, help="lo:hi:step")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("oracle-check", help="max deviation of the analytic map vs dense evolution")
    common(p)
    p.add_argument("--samples", type=int, default=20)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("table1", help="summary of all four cases for one chain")
    common(p)
    p.add_argument("--lambda0", choices=("free", "one"), default="free")
    p.set_defaults(func=cmd_table1)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigurationError, ValidationError, SingularInputError,
            DomainError, ResourceError, OSError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return NUMERIC_EXIT


if __name__ == "__main__":
    sys.exit(main())
