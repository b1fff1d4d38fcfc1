"""Command-line surface for the descriptor pipelines.

Parallelism is controlled by the QLD_THREADS environment variable; when it
is unset, all available cores are used.
"""

from __future__ import annotations

import argparse
import sys

from ._parallel import THREADS_ENV_VAR
from .descriptors import GridSpec, QuadratureRule, classical_ld_field, default_steps
from .dynamics import SaddleParams, TimeGrid
from .experiments import (
    DEFAULT_SCAN_MODES,
    DEFAULT_SEED,
    desk_fig1_config,
    difference_field,
    fig1_pipeline,
    fig2_pipeline,
    fig2_preset,
    paper_fig1_config,
    ratio_check,
    width_scan,
)
from .gridio import (
    GRID_CSV_HEADER,
    RATIO_CHECK_HEADER,
    WIDTH_SCAN_HEADER,
    field_csv_rows,
    read_grid_file,
    write_csv,
    write_grid_file,
)
from .thimble import SamplerConfig, quantum_ld_field


def _parse_grid(text: str) -> tuple[int, int]:
    try:
        nq, np_ = text.lower().split("x")
        return int(nq), int(np_)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like 400x400, got {text!r}")


def _parse_modes_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok]
    except ValueError:
        raise argparse.ArgumentTypeError(f"modes list must be like 10,100,800, got {text!r}")


def _onoff(text: str) -> bool:
    if text not in ("on", "off"):
        raise argparse.ArgumentTypeError(f"expected on or off, got {text!r}")
    return text == "on"


def _add_system_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lambda", dest="lam", type=float, default=3.0,
                   help="saddle eigenvalue rate (default 3)")
    p.add_argument("--time-horizon", type=float, default=8.0 / 3.0,
                   help="half window T of the descriptor integral (default 8/3)")


def _add_grid_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--grid", type=_parse_grid, default=(64, 64), metavar="NQxNP",
                   help="lattice size, e.g. 400x400 (default 64x64)")
    p.add_argument("--qrange", type=float, nargs=2, default=(-1.0, 1.0), metavar=("A", "B"))
    p.add_argument("--prange", type=float, nargs=2, default=(-1.0, 1.0), metavar=("A", "B"))
    p.add_argument("--quad-steps", type=int, default=None,
                   help="time quadrature steps (default max(4096, 16*modes))")
    p.add_argument("--out", required=True, help="output LDG1 path")
    p.add_argument("--csv-out", default=None, help="also export q,p,value rows as CSV")


def _grid_spec(args) -> GridSpec:
    nq, np_ = args.grid
    return GridSpec(args.qrange[0], args.qrange[1], args.prange[0], args.prange[1], nq, np_)


def _write_field(field, args) -> None:
    write_grid_file(field, args.out)
    print(f"wrote {args.out} ({field.grid.nq}x{field.grid.np} {field.kind} field)")
    if args.csv_out:
        write_csv(field_csv_rows(field), args.csv_out, GRID_CSV_HEADER)
        print(f"wrote {args.csv_out}")


def _cmd_classical(args) -> int:
    params = SaddleParams(args.lam, args.time_horizon)
    steps = args.quad_steps if args.quad_steps else default_steps(0)
    quad = QuadratureRule.trapezoid(TimeGrid(params.T, steps))
    _write_field(classical_ld_field(_grid_spec(args), params, quad), args)
    return 0


def _cmd_quantum(args) -> int:
    params = SaddleParams(args.lam, args.time_horizon, args.hbar)
    config = SamplerConfig.for_params(
        params, args.modes, args.samples, args.seed,
        sharing=args.sharing, antithetic=args.antithetic, steps=args.quad_steps,
    )
    _write_field(quantum_ld_field(_grid_spec(args), params, config), args)
    return 0


def _cmd_diff(args) -> int:
    quantum = read_grid_file(args.quantum)
    classical = read_grid_file(args.classical)
    diff = difference_field(quantum, classical, args.normalize)
    write_grid_file(diff, args.out)
    print(f"wrote {args.out} (difference field, {args.normalize} normalization)")
    if args.csv_out:
        write_csv(field_csv_rows(diff), args.csv_out, GRID_CSV_HEADER)
        print(f"wrote {args.csv_out}")
    return 0


def _cmd_width_scan(args) -> int:
    params = SaddleParams(args.lam, args.time_horizon)
    rows = width_scan(args.modes_list, params, args.samples, args.seed)
    write_csv((r.as_tuple() for r in rows), args.out, WIDTH_SCAN_HEADER)
    for r in rows:
        print(f"N={r.N:5d}  sigma_mc={r.sigma_mc:.6f}  sigma_theory={r.sigma_theory:.6f}  "
              f"rel_err={r.rel_err:.4%}")
    print(f"wrote {args.out}")
    return 0


def _cmd_ratio_check(args) -> int:
    params1 = SaddleParams(args.lam, args.time_horizon)
    params2 = SaddleParams(args.lam2, args.time_horizon2)
    rows = ratio_check(params1, params2, args.modes_list, args.samples, args.seed)
    if args.out:
        write_csv((r.as_tuple() for r in rows), args.out, RATIO_CHECK_HEADER)
    for r in rows:
        print(f"N={r.N:5d}  mc_ratio={r.mc_ratio:.6f}  theory_ratio={r.theory_ratio:.6f}  "
              f"rel_err={r.rel_err:.4%}")
    if args.out:
        print(f"wrote {args.out}")
    return 0


def _cmd_fig1(args) -> int:
    config = desk_fig1_config(args.seed) if args.preset == "desk" else paper_fig1_config(args.seed)
    result = fig1_pipeline(config, args.out_dir)
    print(f"wrote {len(result['files'])} grid files, manifest {result['manifest']}")
    return 0


def _cmd_fig2(args) -> int:
    kw = fig2_preset(args.preset)
    if args.samples:
        kw["samples"] = args.samples
    params = SaddleParams(args.lam, args.time_horizon)
    result = fig2_pipeline(params, args.out_dir, kw["N_list"], kw["samples"], args.seed)
    for r in result["rows"]:
        print(f"N={r.N:5d}  sigma_mc={r.sigma_mc:.6f}  sigma_theory={r.sigma_theory:.6f}  "
              f"rel_err={r.rel_err:.4%}")
    print(f"manifest {result['manifest']}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qld",
        description="Classical and quantum Lagrangian descriptor fields for the "
                    "1-DoF Hamiltonian saddle.",
        epilog=f"Set {THREADS_ENV_VAR} to bound the worker thread count "
               f"(default: all cores).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classical", help="classical descriptor field -> LDG1 file")
    _add_system_args(p)
    _add_grid_args(p)
    p.set_defaults(func=_cmd_classical)

    p = sub.add_parser("quantum", help="thimble-averaged descriptor field -> LDG1 file")
    _add_system_args(p)
    _add_grid_args(p)
    p.add_argument("--modes", type=int, default=10, help="mode cutoff N (default 10)")
    p.add_argument("--samples", type=int, default=1200)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--sharing", choices=("shared", "per-point"), default="shared")
    p.add_argument("--antithetic", type=_onoff, default=True, metavar="on|off")
    p.set_defaults(func=_cmd_quantum)

    p = sub.add_parser("diff", help="normalized difference of two LDG1 fields")
    p.add_argument("quantum", help="quantum field file")
    p.add_argument("classical", help="classical field file")
    p.add_argument("--normalize", choices=("max_abs", "none", "zscore"), default="max_abs")
    p.add_argument("--out", required=True)
    p.add_argument("--csv-out", default=None)
    p.set_defaults(func=_cmd_diff)

    p = sub.add_parser("width-scan", help="MC vs analytic manifold width -> CSV")
    _add_system_args(p)
    p.add_argument("--modes-list", type=_parse_modes_list,
                   default=list(DEFAULT_SCAN_MODES), metavar="N1,N2,...")
    p.add_argument("--samples", type=int, default=1200)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_width_scan)

    p = sub.add_parser("ratio-check", help="cutoff-independent width ratio of two systems")
    _add_system_args(p)
    p.add_argument("--lambda2", dest="lam2", type=float, required=True)
    p.add_argument("--time-horizon2", type=float, required=True)
    p.add_argument("--modes-list", type=_parse_modes_list, default=[50, 200],
                   metavar="N1,N2,...")
    p.add_argument("--samples", type=int, default=5000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_ratio_check)

    p = sub.add_parser("fig1", help="difference-field pipeline (desk or paper scale)")
    p.add_argument("--preset", choices=("desk", "paper"), default="desk")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=_cmd_fig1)

    p = sub.add_parser("fig2", help="width-scan pipeline (CSV table + manifest)")
    _add_system_args(p)
    p.add_argument("--preset", choices=("desk", "paper"), default="paper")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=_cmd_fig2)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # one-line diagnostic, nonzero exit
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
