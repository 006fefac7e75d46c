"""CLI commands, exit codes, and bit-stable exports."""

import json

import pytest

from helpers import fixture_path
from pmesim.cli import main
from pmesim.protocol import classify_pme_type


def read_csv(path):
    lines = path.read_text(encoding="utf-8").splitlines()
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return header, rows


class TestValidate:
    def test_shipped_fixture_valid(self, capsys):
        assert main(["validate", "--config", fixture_path("fig2a")]) == 0
        out = capsys.readouterr().out
        assert "all environments valid" in out
        assert "steady state" in out

    def test_physics_failure_exit_3(self, tmp_path):
        bad = tmp_path / "bad.config"
        bad.write_text(json.dumps({
            "environments": {"F": {
                "C": [[[1, 0], [0, 0], [0, 0]],
                      [[0, 0], [1, 0], [0, 0]],
                      [[0, 0], [0, 0], [-0.1, 0]]],
                "h": [0, 0, 0]}},
            "initial_state": [0.5, -0.5, 0],
        }))
        assert main(["validate", "--config", str(bad)]) == 3

    def test_malformed_complex_exit_2(self, tmp_path):
        bad = tmp_path / "bad.config"
        bad.write_text(json.dumps({
            "environments": {"F": {"C": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
                                   "h": [0, 0, 0]}},
        }))
        assert main(["validate", "--config", str(bad)]) == 2

    def test_invalid_json_exit_2(self, tmp_path):
        bad = tmp_path / "bad.config"
        bad.write_text("{not json")
        assert main(["validate", "--config", str(bad)]) == 2


class TestProtocol:
    def test_fig2a_summary(self, tmp_path):
        out = tmp_path / "out"
        assert main(["protocol", "--config", fixture_path("fig2a"),
                     "--out-dir", str(out)]) == 0
        summary = json.loads((out / "summary.json").read_text())
        assert summary["pme_type"] == "weak_type_A"
        assert summary["case"] == "case1_crossing"
        assert summary["t_SI"] == 0.1
        assert summary["pme_occurs"] is True
        for name in ("direct.csv", "twostep.csv", "aux.csv"):
            header, rows = read_csv(out / name)
            assert header == ["t", "r1", "r2", "r3", "D_T_to_F", "v"]
            assert len(rows) > 100

    def test_fig2c_repelled_strong(self, tmp_path):
        out = tmp_path / "out"
        assert main(["protocol", "--config", fixture_path("fig2c"),
                     "--out-dir", str(out)]) == 0
        summary = json.loads((out / "summary.json").read_text())
        assert summary["case"] == "case3_repelled"
        assert summary["pme_type"] == "strong"

    def test_summary_round_trip_classification(self, tmp_path):
        out = tmp_path / "out"
        main(["protocol", "--config", fixture_path("fig2a"), "--out-dir", str(out)])
        s = json.loads((out / "summary.json").read_text())
        rederived = classify_pme_type(s["d_SF"], s["d_A_at_tSI"], s["d_F_at_tSI"])
        assert rederived.value == s["pme_type"]
        assert s["pme_occurs"] == (s["t_SI"] + s["t_IF"] < s["t_SF"])

    def test_deterministic_output(self, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        main(["protocol", "--config", fixture_path("fig2b"), "--out-dir", str(out1)])
        main(["protocol", "--config", fixture_path("fig2b"), "--out-dir", str(out2)])
        for name in ("summary.json", "direct.csv", "twostep.csv", "aux.csv"):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


class TestSweep:
    def test_fig2a_three_types(self, tmp_path):
        out = tmp_path / "out"
        assert main(["sweep", "--config", fixture_path("fig2a"),
                     "--out-dir", str(out)]) == 0
        header, rows = read_csv(out / "sweep.csv")
        assert header == ["t_SI", "t_IF", "total", "pme_type", "pme_occurs", "status"]
        assert [r[3] for r in rows] == ["weak_type_A", "weak_type_B", "strong"]
        assert all(r[5] == "ok" for r in rows)
        argmin = json.loads((out / "sweep_argmin.json").read_text())
        assert argmin["any_pme"] is True
        assert argmin["best_t_SI"] in [float(r[0]) for r in rows]

    def test_empty_grid_exit_2(self, tmp_path):
        cfg = json.loads(open(fixture_path("fig2a")).read())
        cfg["sweep"] = []
        path = tmp_path / "nogrid.config"
        path.write_text(json.dumps(cfg))
        assert main(["sweep", "--config", str(path)]) == 2


class TestField:
    def test_fixture_export(self, tmp_path):
        out = tmp_path / "out"
        assert main(["field", "--config", fixture_path("fig1"), "--env", "F",
                     "--out-dir", str(out), "--resolution", "21"]) == 0
        header, rows = read_csv(out / "field_F.csv")
        assert header == ["r1", "r2", "v1", "v2", "vmag", "dir1", "dir2"]
        for r in rows:
            r1, r2, v1, v2, vmag = map(float, r[:5])
            assert r1 * r1 + r2 * r2 <= 1 + 1e-12
            assert vmag == pytest.approx((v1 * v1 + v2 * v2) ** 0.5)

    def test_small_resolution_masked(self, tmp_path):
        out = tmp_path / "out"
        main(["field", "--config", fixture_path("fig1"), "--env", "F",
              "--out-dir", str(out), "--resolution", "3"])
        _, rows = read_csv(out / "field_F.csv")
        assert len(rows) <= 9

    def test_plane_violation_exit_3(self, tmp_path):
        bad = tmp_path / "bad.config"
        bad.write_text(json.dumps({
            "environments": {"F": {
                "C": [[[1, 0], [0, 0], [0, 0]],
                      [[0, 0], [1, 0], [0, 0]],
                      [[0, 0], [0, 0], [1, 0]]],
                "h": [1, 0, 0]}},
            "initial_state": [0.5, -0.5, 0],
        }))
        assert main(["field", "--config", str(bad), "--env", "F",
                     "--out-dir", str(tmp_path)]) == 3

    def test_unknown_env_exit_2(self, tmp_path):
        assert main(["field", "--config", fixture_path("fig1"), "--env", "Q",
                     "--out-dir", str(tmp_path)]) == 2
