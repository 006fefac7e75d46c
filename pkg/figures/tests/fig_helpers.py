"""Helpers for the figure tests: locate configs and shell out to pmesim."""

import subprocess
from importlib.resources import files

FIXTURE_NAMES = ["fig1", "fig2a", "fig2b", "fig2c", "figA1"]


def fixture_config(name: str) -> str:
    return str(files("pmesim") / "fixtures" / f"{name}.config")


def run_cli(*args):
    proc = subprocess.run(["pmesim", *args], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return proc
