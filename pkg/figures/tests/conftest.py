"""Generate simulator CLI exports once per session for the figure tests.

The figure package consumes the simulator only through its command-line
interface, so everything here shells out to `pmesim`.
"""

import json

import pytest

from fig_helpers import FIXTURE_NAMES, fixture_config, run_cli


@pytest.fixture(scope="session")
def exports(tmp_path_factory):
    """{fixture name: dir} with protocol + field exports for each fixture."""
    out = {}
    for name in FIXTURE_NAMES:
        d = tmp_path_factory.mktemp(f"exports_{name}")
        run_cli("protocol", "--config", fixture_config(name),
                "--out-dir", str(d))
        run_cli("field", "--config", fixture_config(name), "--env", "F",
                "--out-dir", str(d), "--resolution", "15")
        run_cli("field", "--config", fixture_config(name), "--env", "A",
                "--out-dir", str(d), "--resolution", "15")
        out[name] = d
    return out


@pytest.fixture(scope="session")
def fig2a_runs(tmp_path_factory):
    """Three protocol runs of the fig2a scenario at its three switch times."""
    cfg = json.loads(open(fixture_config("fig2a")).read())
    dirs = []
    for t_si in (0.1, 0.15, 0.25):
        cfg["t_SI"] = t_si
        d = tmp_path_factory.mktemp(f"fig2a_tsi{int(t_si * 100)}")
        path = d / "scenario.config"
        path.write_text(json.dumps(cfg))
        run_cli("protocol", "--config", str(path), "--out-dir", str(d))
        dirs.append(d)
    return dirs
