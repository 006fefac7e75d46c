"""Trace-distance monitor figure: blue direct, green auxiliary, yellow
post-switch curves with the epsilon guide line and switch-time markers."""

import argparse
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .io import TRAJ_COLUMNS, SchemaError, read_summary, read_table

BLUE = "tab:blue"
GREEN = "tab:green"
YELLOW = "gold"
FLOOR = 1e-12


def render_monitor_figure(out_image, run_dirs=(), direct_csv=None,
                          aux_csv=None, t_max=None):
    """Render the monitor panel and save it; returns the figure.

    Each run directory must hold the protocol command's summary.json and
    twostep.csv; the post-switch part (t >= t_SI) of every run is drawn in
    yellow.  The direct curve (blue) and the full auxiliary curve (green)
    default to direct.csv / aux.csv of the first run directory when present.
    """
    run_dirs = [Path(d) for d in run_dirs]
    if direct_csv is None and run_dirs and (run_dirs[0] / "direct.csv").exists():
        direct_csv = run_dirs[0] / "direct.csv"
    if aux_csv is None and run_dirs and (run_dirs[0] / "aux.csv").exists():
        aux_csv = run_dirs[0] / "aux.csv"
    if direct_csv is None and not run_dirs:
        raise SchemaError("nothing to plot: need --run or --direct")

    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    epsilon = None
    if direct_csv is not None:
        tab = read_table(direct_csv, TRAJ_COLUMNS)
        ax.plot(tab["t"], np.maximum(tab["D_T_to_F"], FLOOR), color=BLUE,
                lw=1.8, label=r"direct $S \to F$")
    if aux_csv is not None:
        tab = read_table(aux_csv, TRAJ_COLUMNS)
        ax.plot(tab["t"], np.maximum(tab["D_T_to_F"], FLOOR), color=GREEN,
                lw=1.8, label=r"auxiliary $S \to A$")
    for k, run in enumerate(run_dirs):
        summary = read_summary(run / "summary.json")
        epsilon = summary["epsilon"]
        t_si = summary["t_SI"]
        tab = read_table(run / "twostep.csv", TRAJ_COLUMNS)
        mask = tab["t"] >= t_si - 1e-12
        ax.plot(tab["t"][mask], np.maximum(tab["D_T_to_F"][mask], FLOOR),
                color=YELLOW, lw=1.8,
                label=rf"switched, $t_{{SI}} = {t_si:g}$")
        ax.axvline(t_si, color="0.6", ls=":", lw=0.9)
    if epsilon is not None:
        ax.axhline(epsilon, color="0.4", ls="--", lw=1.0,
                   label=rf"$\epsilon = {epsilon:g}$")
    ax.set_yscale("log")
    if t_max is not None:
        ax.set_xlim(0.0, t_max)
    ax.set_xlabel(r"$t$")
    ax.set_ylabel(r"$D_T$ to $r_F$")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_image, dpi=150)
    return fig


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="pmefigs-monitor",
        description="Trace-distance curve figure from protocol exports",
    )
    parser.add_argument("--run", action="append", default=[],
                        help="protocol output dir with summary.json + "
                             "twostep.csv (repeatable)")
    parser.add_argument("--direct", default=None,
                        help="direct.csv override (default: first run dir)")
    parser.add_argument("--aux", default=None,
                        help="aux.csv override (default: first run dir)")
    parser.add_argument("--t-max", type=float, default=None)
    parser.add_argument("--out", required=True)
    args = parser.parse_args(argv)
    try:
        fig = render_monitor_figure(args.out, run_dirs=args.run,
                                    direct_csv=args.direct, aux_csv=args.aux,
                                    t_max=args.t_max)
        plt.close(fig)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
