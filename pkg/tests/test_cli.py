import json

import numpy as np

from legspheres.cli import main


def run(args):
    return main(args)


class TestExportPlots:
    def test_anchor_rows_exact(self, tmp_path):
        out = tmp_path / "plots.csv"
        assert run(["export-plots", "--eps", "0.1", "--format", "csv",
                    "--out", str(out)]) == 0
        rows = {}
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "t,q_n1,slope"
        for line in lines[1:]:
            t, q, s = (float(v) for v in line.split(","))
            rows[t] = (q, s)
        assert len(rows) == 101
        assert abs(rows[1.0][0] + 0.1) < 1e-12 and abs(rows[1.0][1]) < 1e-12
        assert abs(rows[0.0][0]) < 1e-12 and abs(rows[0.0][1] - 1.0) < 1e-12
        assert abs(rows[-1.0][0] - 0.1) < 1e-12 and abs(rows[-1.0][1]) < 1e-12

    def test_json_schema(self, tmp_path):
        out = tmp_path / "plots.json"
        assert run(["export-plots", "--out", str(out)]) == 0
        data = json.loads(out.read_text())
        assert set(data["meta"]) == {"n", "eps", "seed", "version"}
        assert set(data["records"][0]) == {"t", "q_n1", "slope"}

    def test_byte_identical_reruns(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run(["export-plots", "--format", "csv", "--out", str(a)])
        run(["export-plots", "--format", "csv", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()


class TestExportFront:
    def test_unknot_polyline_closed_with_two_cusps(self, tmp_path):
        out = tmp_path / "unknot.json"
        assert run(["export-front", "unknot", "--n", "1", "--out", str(out)]) == 0
        recs = json.loads(out.read_text())["records"]
        assert sum(r["cusp"] for r in recs) == 2
        assert recs[0]["q"] == recs[-1]["q"]
        assert recs[0]["z"] == recs[-1]["z"]
        # x-direction reversal count along the closed polyline equals 2
        xs = np.array([r["q"][0] for r in recs[:-1]])
        d = np.diff(np.concatenate([xs, xs[:1]]))
        d = d[np.abs(d) > 1e-12]
        flips = int(np.count_nonzero(np.sign(d) != np.sign(np.roll(d, -1))))
        assert flips == 2

    def test_disk_family_slices(self, tmp_path):
        out = tmp_path / "family.json"
        assert run(["export-front", "disk-family", "--n", "2",
                    "--t-grid=-1,0,1", "--out", str(out)]) == 0
        recs = json.loads(out.read_text())["records"]
        by_t = {}
        for r in recs:
            by_t.setdefault(r["t"], []).append(r)
        assert set(by_t) == {-1.0, 0.0, 1.0}
        assert all(abs(r["z"] - 2.0) < 1e-12 for r in by_t[1.0])
        assert all(abs(r["z"] + 2.0) < 1e-12 for r in by_t[-1.0])
        # the transverse slice degenerates onto the pole and is flagged
        assert all(r["cusp"] for r in by_t[0.0])
        assert all(abs(r["q"][-1] - 1.0) < 1e-12 for r in by_t[0.0])

    def test_sstab_two_flat_disks(self, tmp_path):
        out = tmp_path / "sstab.json"
        assert run(["export-front", "sstab", "--n", "2", "--eps", "0.1",
                    "--out", str(out)]) == 0
        recs = json.loads(out.read_text())["records"]
        zs = {round(r["z"], 12) for r in recs}
        assert zs == {round(float(np.sqrt(1.1)), 12)}
        assert not any(r["cusp"] for r in recs)

    def test_lambda_has_cusp_ring(self, tmp_path):
        out = tmp_path / "lambda.json"
        assert run(["export-front", "lambda", "--n", "1", "--out", str(out)]) == 0
        recs = json.loads(out.read_text())["records"]
        assert any(r["cusp"] for r in recs)

    def test_env_var_output_dir(self, tmp_path, monkeypatch):
        monkeypatch.setenv("LEGSPHERES_OUT_DIR", str(tmp_path))
        assert run(["export-plots"]) == 0
        assert (tmp_path / "plots_eps0.1.json").exists()


class TestVerifyCommand:
    def test_exit_zero_and_report(self, tmp_path):
        out = tmp_path / "report.json"
        assert run(["verify", "jet", "--n", "1", "--out", str(out)]) == 0
        data = json.loads(out.read_text())
        assert all(r["passed"] for r in data["reports"])

    def test_all_has_at_least_twenty_checks(self, tmp_path):
        out = tmp_path / "all.json"
        assert run(["verify", "all", "--n", "1", "--eps", "0.1",
                    "--out", str(out)]) == 0
        data = json.loads(out.read_text())
        assert len(data["reports"]) >= 20

    def test_wide_eps(self, tmp_path):
        out = tmp_path / "iso.json"
        assert run(["verify", "isotopy", "--n", "1", "--eps", "0.4",
                    "--out", str(out)]) == 0

    def test_usage_errors(self):
        assert run(["verify", "isotopy", "--eps", "0.9"]) == 2
        assert run(["verify", "isotopy", "--n", "7"]) == 2
        assert run(["verify", "bogus"]) == 2
        assert run(["--nonsense"]) == 2

    def test_io_error_exit_code(self, tmp_path):
        missing = tmp_path / "no" / "such" / "dir" / "x.json"
        assert run(["verify", "jet", "--n", "1", "--out", str(missing)]) == 3


class TestOpenbookCommand:
    def test_build_and_glue(self, capsys):
        assert run(["openbook", "build", "--disks", "L",
                    "--ops", "stabilize:L;surgery:+L+core;surgery:-L+core"]) == 0
        out = capsys.readouterr().out
        assert "reduced: +tw(L+core)" in out
        assert run(["openbook", "glue-fixtures"]) == 0
        out = capsys.readouterr().out
        assert "D(T*S^n)" in out and "tau(S0)" in out
