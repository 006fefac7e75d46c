"""Command-line front end: validate | protocol | sweep | field.

All numeric output is formatted with 17 significant digits so identical
configs and tolerances produce byte-identical CSV/JSON files.  CSV files are
comma-separated with a header row, LF line endings, UTF-8.  JSON files keep a
stable key order.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .bloch import plane_condition_check
from .config import load_config, verify_physics
from .dynamics import monitor, scalar_velocity
from .errors import ConfigError, NoConvergence, PlaneViolation, PmesimError
from .field import DEFAULT_RESOLUTION, field_grid
from .lindblad import validate_environment
from .protocol import run_two_step, sweep_tsi

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_CONFIG = 2
EXIT_PHYSICS = 3


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) if isinstance(v, float) else str(v)
                              for v in row) + "\n")


def _write_json(path: Path, payload: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def _trajectory_rows(traj, series, env, t_offset: float = 0.0):
    for t, r, d in zip(traj.times, traj.states, series.values):
        yield (float(t + t_offset), float(r[0]), float(r[1]), float(r[2]),
               float(d), scalar_velocity(r, env))


TRAJ_HEADER = ["t", "r1", "r2", "r3", "D_T_to_F", "v"]


def cmd_validate(args) -> int:
    cfg = load_config(args.config)
    any_invalid = False
    for name, spec in cfg.environments.items():
        report = validate_environment(spec.env)
        print(f"environment {name}:")
        print(f"  Hermiticity deviation H: {report.herm_dev_h:.3e}")
        print(f"  Hermiticity deviation C: {report.herm_dev_c:.3e}")
        print(f"  min eigenvalue of C:     {report.min_eig_c:.3e}")
        print(f"  plane condition (r3=0):  {plane_condition_check(spec.env)}")
        if not report.accepted:
            any_invalid = True
            for p in report.problems:
                print(f"  PROBLEM: {p}")
    if any_invalid:
        return EXIT_PHYSICS
    for name, r_star in verify_physics(cfg).items():
        print(f"environment {name}: steady state r* = "
              f"({r_star[0]:.6f}, {r_star[1]:.6f}, {r_star[2]:.6f})")
    print("all environments valid")
    return EXIT_OK


def cmd_protocol(args) -> int:
    cfg = load_config(args.config)
    if args.epsilon is not None:
        cfg = _override_epsilon(cfg, args.epsilon)
    if cfg.t_si is None:
        raise ConfigError("protocol command needs t_SI in the config")
    verify_physics(cfg)
    scenario = cfg.scenario()
    res = run_two_step(scenario, cfg.t_si)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    env_f, env_a = scenario.env_f, scenario.env_a
    _write_csv(out / "direct.csv", TRAJ_HEADER,
               _trajectory_rows(res.direct.trajectory, res.direct.series, env_f))
    # Copy 2: auxiliary leg up to t_SI, then the target leg shifted by t_SI.
    leg1_mask = res.aux_trajectory.times <= cfg.t_si
    rows = []
    for t, r, d in zip(res.aux_trajectory.times[leg1_mask],
                       res.aux_trajectory.states[leg1_mask],
                       res.aux_series.values[leg1_mask]):
        rows.append((float(t), float(r[0]), float(r[1]), float(r[2]),
                     float(d), scalar_velocity(r, env_a)))
    rows.extend(_trajectory_rows(res.leg2_trajectory, res.leg2_series, env_f,
                                 t_offset=cfg.t_si))
    _write_csv(out / "twostep.csv", TRAJ_HEADER, rows)
    _write_csv(out / "aux.csv", TRAJ_HEADER,
               _trajectory_rows(res.aux_trajectory, res.aux_series, env_a))
    _write_json(out / "summary.json", _summary_payload(res, scenario.epsilon))
    print(f"wrote {out / 'summary.json'}")
    return EXIT_OK


def _summary_payload(res, epsilon: float) -> dict:
    return {
        "t_SF": float(res.t_sf),
        "t_SA": None if res.t_sa is None else float(res.t_sa),
        "t_SI": float(res.t_si),
        "t_IF": float(res.t_if),
        "case": res.case_label.value,
        "pme_type": res.pme_type.value,
        "pme_occurs": bool(res.pme_occurs),
        "epsilon": float(epsilon),
        "d_SF": float(res.d_sf),
        "d_A_at_tSI": float(res.d_a_at_tsi),
        "d_F_at_tSI": float(res.d_f_at_tsi),
    }


def _override_epsilon(cfg, epsilon: float):
    from dataclasses import replace

    if epsilon <= 0:
        raise ConfigError("epsilon must be positive")
    return replace(cfg, epsilon=epsilon)


def cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    if args.epsilon is not None:
        cfg = _override_epsilon(cfg, args.epsilon)
    if not cfg.sweep_grid:
        raise ConfigError("sweep command needs a non-empty sweep grid")
    verify_physics(cfg)
    scenario = cfg.scenario()
    sweep = sweep_tsi(scenario, cfg.sweep_grid)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    for pt in sweep.points:
        if pt.result is None:
            rows.append((pt.t_si, "", "", "", "", f"error: {pt.error}"))
        else:
            r = pt.result
            rows.append((pt.t_si, r.t_if, pt.t_si + r.t_if,
                         r.pme_type.value, str(r.pme_occurs).lower(), "ok"))
    _write_csv(out / "sweep.csv",
               ["t_SI", "t_IF", "total", "pme_type", "pme_occurs", "status"], rows)
    _write_json(out / "sweep_argmin.json", {
        "best_t_SI": None if sweep.best_t_si is None else float(sweep.best_t_si),
        "best_total": None if sweep.best_total is None else float(sweep.best_total),
        "any_pme": bool(sweep.any_pme),
        "epsilon": float(scenario.epsilon),
    })
    print(f"wrote {out / 'sweep.csv'}")
    return EXIT_OK


def cmd_field(args) -> int:
    cfg = load_config(args.config)
    if args.env not in cfg.environments:
        raise ConfigError(f"no environment named {args.env!r} in config")
    verify_physics(cfg)
    env = cfg.environments[args.env].env
    grid = field_grid(env, args.resolution)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    for (r1, r2), (v1, v2), vmag in zip(grid.points, grid.vectors,
                                        grid.magnitudes):
        if vmag > 0:
            d1, d2 = v1 / vmag, v2 / vmag
        else:
            d1 = d2 = 0.0
        rows.append((float(r1), float(r2), float(v1), float(v2), float(vmag),
                     float(d1), float(d2)))
    path = out / f"field_{args.env}.csv"
    _write_csv(path, ["r1", "r2", "v1", "v2", "vmag", "dir1", "dir2"], rows)
    print(f"wrote {path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pmesim",
        description="Two-step relaxation protocols for Markovian qubits",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a scenario config")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("protocol", help="run the two-step protocol")
    p.add_argument("--config", required=True)
    p.add_argument("--out-dir", default=".")
    p.add_argument("--epsilon", type=float, default=None)
    p.set_defaults(func=cmd_protocol)

    p = sub.add_parser("sweep", help="sweep the switch time t_SI")
    p.add_argument("--config", required=True)
    p.add_argument("--out-dir", default=".")
    p.add_argument("--epsilon", type=float, default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("field", help="export the velocity field on the disk")
    p.add_argument("--config", required=True)
    p.add_argument("--env", default="F")
    p.add_argument("--out-dir", default=".")
    p.add_argument("--resolution", type=int, default=DEFAULT_RESOLUTION)
    p.set_defaults(func=cmd_field)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(json.dumps({"error": "config", "message": str(exc)}), file=sys.stderr)
        return EXIT_CONFIG
    except (NoConvergence,) as exc:
        print(json.dumps({"error": "no_convergence", "message": str(exc)}),
              file=sys.stderr)
        return EXIT_RUNTIME
    except (PlaneViolation, PmesimError) as exc:
        print(json.dumps({"error": "physics", "message": str(exc)}), file=sys.stderr)
        return EXIT_PHYSICS


if __name__ == "__main__":
    sys.exit(main())
