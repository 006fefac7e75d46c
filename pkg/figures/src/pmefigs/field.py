"""Velocity-field figure: quiver + magnitude colormap on the unit disk."""

import argparse
import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .io import FIELD_COLUMNS, TRAJ_COLUMNS, SchemaError, read_table


def render_field_figure(field_csvs, trajectory_csvs, out_image, marks=(),
                        titles=None):
    """Render one panel per field export, trajectories overlaid on each.

    Arrows show the normalized flow direction, colors its magnitude; each
    trajectory gets a start dot and an end star, and extra (label, x, y)
    marks can be pinned on every panel.  Returns the figure (already saved).
    """
    fields = [read_table(p, FIELD_COLUMNS) for p in field_csvs]
    trajs = [read_table(p, TRAJ_COLUMNS) for p in trajectory_csvs]
    n = len(fields)
    fig, axes = plt.subplots(1, n, figsize=(5.4 * n, 4.8), squeeze=False)
    for k, (ax, f) in enumerate(zip(axes[0], fields)):
        q = ax.quiver(f["r1"], f["r2"], f["dir1"], f["dir2"], f["vmag"],
                      cmap="viridis", scale=35, width=2.8e-3)
        fig.colorbar(q, ax=ax, label=r"$|\dot r|$")
        ax.add_patch(plt.Circle((0, 0), 1.0, fill=False, color="black", lw=1.2))
        for tr in trajs:
            ax.plot(tr["r1"], tr["r2"], color="crimson", lw=1.6)
            ax.plot(tr["r1"][0], tr["r2"][0], "o", color="black", ms=5)
            ax.plot(tr["r1"][-1], tr["r2"][-1], "*", color="black", ms=10)
        for label, x, y in marks:
            ax.plot(x, y, "s", color="black", ms=4)
            ax.annotate(label, (x, y), textcoords="offset points", xytext=(5, 5))
        if titles:
            ax.set_title(titles[k])
        ax.set_xlim(-1.12, 1.12)
        ax.set_ylim(-1.12, 1.12)
        ax.set_aspect("equal")
        ax.set_xlabel(r"$r_1$")
        ax.set_ylabel(r"$r_2$")
    fig.tight_layout()
    fig.savefig(out_image, dpi=150)
    return fig


def _parse_mark(text):
    try:
        label, coords = text.split(":", 1)
        x, y = (float(v) for v in coords.split(","))
    except ValueError as exc:
        raise SchemaError(f"bad --mark {text!r}, expected LABEL:X,Y") from exc
    return label, x, y


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="pmefigs-field",
        description="Quiver/colormap figure from field CSV exports",
    )
    parser.add_argument("--field", action="append", required=True,
                        help="field CSV (repeat for multiple panels)")
    parser.add_argument("--trajectory", action="append", default=[],
                        help="trajectory CSV to overlay (repeatable)")
    parser.add_argument("--mark", action="append", default=[],
                        metavar="LABEL:X,Y", help="extra labeled point")
    parser.add_argument("--title", action="append", default=None,
                        help="panel title (repeat, one per field)")
    parser.add_argument("--out", required=True)
    args = parser.parse_args(argv)
    try:
        marks = [_parse_mark(m) for m in args.mark]
        fig = render_field_figure(args.field, args.trajectory, args.out,
                                  marks=marks, titles=args.title)
        plt.close(fig)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
