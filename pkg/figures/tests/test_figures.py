"""Smoke tests for the figure scripts plus the curve-color contract."""

import subprocess

import matplotlib.pyplot as plt
import numpy as np
import pytest
from matplotlib.colors import to_rgba

from fig_helpers import FIXTURE_NAMES
from pmefigs import SchemaError, render_monitor_figure
from pmefigs.field import main as field_main
from pmefigs.monitor import main as monitor_main


def run_script(name, *args):
    return subprocess.run([name, *args], capture_output=True, text=True)


def count_color(ax, color):
    target = to_rgba(color)
    return sum(1 for line in ax.lines if to_rgba(line.get_color()) == target)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_field_script_all_fixtures(name, exports, tmp_path):
    d = exports[name]
    out = tmp_path / f"{name}_field.png"
    proc = run_script("pmefigs-field",
                      "--field", str(d / "field_F.csv"),
                      "--field", str(d / "field_A.csv"),
                      "--trajectory", str(d / "direct.csv"),
                      "--trajectory", str(d / "twostep.csv"),
                      "--out", str(out))
    assert proc.returncode == 0, proc.stderr
    assert out.stat().st_size > 0


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_monitor_script_all_fixtures(name, exports, tmp_path):
    out = tmp_path / f"{name}_monitor.png"
    proc = run_script("pmefigs-monitor", "--run", str(exports[name]),
                      "--out", str(out))
    assert proc.returncode == 0, proc.stderr
    assert out.stat().st_size > 0


def test_three_switch_panel_colors(fig2a_runs, tmp_path):
    out = tmp_path / "panel.png"
    fig = render_monitor_figure(out, run_dirs=[str(d) for d in fig2a_runs])
    ax = fig.axes[0]
    assert count_color(ax, "tab:blue") == 1
    assert count_color(ax, "tab:green") == 1
    assert count_color(ax, "gold") == 3
    plt.close(fig)
    assert out.stat().st_size > 0


def test_direct_only_single_blue(exports, tmp_path):
    out = tmp_path / "direct_only.png"
    fig = render_monitor_figure(out,
                                direct_csv=exports["fig2a"] / "direct.csv")
    ax = fig.axes[0]
    assert count_color(ax, "tab:blue") == 1
    assert count_color(ax, "tab:green") == 0
    assert count_color(ax, "gold") == 0
    plt.close(fig)


def test_oscillating_aux_curve(exports, tmp_path):
    # the auxiliary monitor of the oscillation-dominated fixture is not
    # monotone, so the green curve shows its damped oscillations
    out = tmp_path / "figA1_monitor.png"
    fig = render_monitor_figure(out, run_dirs=[str(exports["figA1"])])
    target = to_rgba("tab:green")
    (green,) = [l for l in fig.axes[0].lines
                if to_rgba(l.get_color()) == target]
    y = green.get_ydata()
    signs = np.sign(np.diff(y[:400]))
    assert np.sum(np.abs(np.diff(signs[signs != 0]))) >= 2
    plt.close(fig)


def test_missing_column_exits_nonzero(exports, tmp_path):
    src = (exports["fig1"] / "field_F.csv").read_text().splitlines()
    header = src[0].split(",")
    drop = header.index("vmag")
    broken = tmp_path / "broken.csv"
    broken.write_text("\n".join(
        ",".join(v for i, v in enumerate(line.split(",")) if i != drop)
        for line in src) + "\n")
    out = tmp_path / "x.png"
    proc = run_script("pmefigs-field", "--field", str(broken),
                      "--out", str(out))
    assert proc.returncode != 0
    assert "vmag" in proc.stderr
    assert not out.exists()


def test_missing_trajectory_column_api(exports, tmp_path):
    broken = tmp_path / "broken.csv"
    broken.write_text("t,r1,r2\n0,0.5,-0.5\n")
    with pytest.raises(SchemaError):
        render_monitor_figure(tmp_path / "x.png", direct_csv=broken)


def test_all_zero_field(tmp_path):
    rows = ["r1,r2,v1,v2,vmag,dir1,dir2"]
    for x in (-0.5, 0.0, 0.5):
        for y in (-0.5, 0.0, 0.5):
            rows.append(f"{x},{y},0,0,0,0,0")
    path = tmp_path / "zero.csv"
    path.write_text("\n".join(rows) + "\n")
    out = tmp_path / "zero.png"
    assert field_main(["--field", str(path), "--out", str(out)]) == 0
    assert out.stat().st_size > 0


def test_monitor_without_inputs_fails():
    assert monitor_main(["--out", "/tmp/nothing.png"]) == 1


def test_bad_mark_rejected(exports, tmp_path):
    proc = run_script("pmefigs-field",
                      "--field", str(exports["fig1"] / "field_F.csv"),
                      "--mark", "S;0.5,-0.5",
                      "--out", str(tmp_path / "x.png"))
    assert proc.returncode != 0


def test_marks_and_titles(exports, tmp_path):
    out = tmp_path / "marked.png"
    assert field_main(["--field", str(exports["fig1"] / "field_F.csv"),
                       "--mark", "S:0.5,-0.5", "--mark", "F:0.5,0.5",
                       "--title", "target", "--out", str(out)]) == 0
    assert out.stat().st_size > 0
