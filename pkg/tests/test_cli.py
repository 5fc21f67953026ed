import json

import numpy as np
import pytest

import invsphere as iv
from invsphere.cli import run


def write_csv(tmp_path, name, rows):
    path = tmp_path / name
    iv.write_dataset(iv.Dataset(np.asarray(rows, dtype=float)), str(path), "csv")
    return str(path)


class TestEmbedUnembed:
    def test_roundtrip_csv(self, tmp_path):
        inp = write_csv(tmp_path, "in.csv", [[1.0, 2.0], [0.5, -0.3]])
        emb = str(tmp_path / "emb.csv")
        out = str(tmp_path / "out.csv")
        assert run(["embed", "--input", inp, "--output", emb, "--s", "2.0"]) == 0
        assert run(["unembed", "--input", emb, "--output", out, "--s", "2.0"]) == 0
        back = iv.read_dataset(out, "csv")
        np.testing.assert_allclose(back.points, [[1, 2], [0.5, -0.3]], atol=1e-12)

    def test_roundtrip_f64le(self, tmp_path):
        X = iv.Dataset(np.random.default_rng(0).standard_normal((20, 3)))
        inp = str(tmp_path / "in.bin")
        iv.write_dataset(X, inp, "f64le")
        emb = str(tmp_path / "emb.bin")
        out = str(tmp_path / "out.bin")
        assert run(["embed", "--input", inp, "--output", emb,
                    "--format", "f64le", "--s", "1.5"]) == 0
        assert run(["unembed", "--input", emb, "--output", out,
                    "--format", "f64le", "--s", "1.5"]) == 0
        back = iv.read_dataset(out, "f64le")
        np.testing.assert_allclose(back.points, X.points, atol=1e-12)

    def test_general_direction(self, tmp_path):
        inp = write_csv(tmp_path, "in.csv", [[1.0, 2.0]])
        vf = write_csv(tmp_path, "v.csv", [[0.0, 0.6, 0.8]])
        emb = str(tmp_path / "emb.csv")
        out = str(tmp_path / "out.csv")
        assert run(["embed", "--input", inp, "--output", emb,
                    "--s", "1.0", "--v-file", vf]) == 0
        assert run(["unembed", "--input", emb, "--output", out,
                    "--s", "1.0", "--v-file", vf]) == 0
        np.testing.assert_allclose(iv.read_dataset(out).points, [[1, 2]], atol=1e-9)

    def test_mean_norm_scale_default(self, tmp_path):
        inp = write_csv(tmp_path, "in.csv", [[3.0, 4.0], [0.0, 5.0]])
        emb = str(tmp_path / "emb.csv")
        assert run(["embed", "--input", inp, "--output", emb]) == 0
        expected = iv.embed_simplified(iv.read_dataset(inp), 5.0)
        np.testing.assert_allclose(iv.read_dataset(emb).points, expected.points, atol=1e-15)

    def test_unembed_south_pole_exit_3(self, tmp_path, capsys):
        inp = write_csv(tmp_path, "in.csv", [[0.0, -1.0]])
        out = str(tmp_path / "out.csv")
        assert run(["unembed", "--input", inp, "--output", out, "--s", "1.0"]) == 3
        assert "PointAtSouthPole" in capsys.readouterr().err

    def test_missing_input_exit_1(self, tmp_path):
        assert run(["embed", "--input", str(tmp_path / "nope.csv"),
                    "--output", str(tmp_path / "o.csv"), "--s", "1"]) == 1

    def test_bad_scale_exit_2(self, tmp_path, capsys):
        inp = write_csv(tmp_path, "in.csv", [[1.0]])
        assert run(["embed", "--input", inp,
                    "--output", str(tmp_path / "o.csv"), "--s", "-1"]) == 2
        assert "InvalidScale" in capsys.readouterr().err

    def test_usage_error_exit_1(self):
        assert run(["embed"]) == 1

    def test_no_partial_output_on_failure(self, tmp_path):
        inp = write_csv(tmp_path, "in.csv", [[0.0, -1.0]])
        out = tmp_path / "out.csv"
        assert run(["unembed", "--input", inp, "--output", str(out), "--s", "1"]) == 3
        assert not out.exists()


class TestCapBall:
    def test_cap2ball_hand_case(self, tmp_path):
        rec = tmp_path / "cap.json"
        rec.write_text(json.dumps({"p": [0.6, 0.8], "b": 0.0, "s": 1.0}))
        out = tmp_path / "ball.json"
        assert run(["cap2ball", "--input", str(rec), "--output", str(out)]) == 0
        got = json.loads(out.read_text())
        np.testing.assert_allclose(got["c"], [0.75], atol=1e-12)
        assert abs(got["r"] - 1.25) < 1e-12

    def test_ball2cap_roundtrip(self, tmp_path):
        rec = tmp_path / "ball.json"
        rec.write_text(json.dumps({"c": [0.75], "r": 1.25, "s": 1.0}))
        out = tmp_path / "cap.json"
        assert run(["ball2cap", "--input", str(rec), "--output", str(out)]) == 0
        got = json.loads(out.read_text())
        np.testing.assert_allclose(got["p"], [0.6, 0.8], atol=1e-12)
        assert abs(got["b"]) < 1e-12

    def test_cap2spheroid(self, tmp_path):
        rec = tmp_path / "cap.json"
        rec.write_text(json.dumps({"p": [0.0, 0.6, 0.8], "b": 0.3, "s": 1.0}))
        vf = write_csv(tmp_path, "v.csv", [[0.0, 0.6, 0.8]])
        out = tmp_path / "sph.json"
        assert run(["cap2spheroid", "--input", str(rec), "--v-file", vf,
                    "--output", str(out)]) == 0
        got = json.loads(out.read_text())
        assert set(got) == {"c", "a1", "r1", "r2", "s"}
        assert 0 < got["r1"] <= got["r2"]

    def test_degenerate_cap_exit_2(self, tmp_path, capsys):
        rec = tmp_path / "cap.json"
        rec.write_text(json.dumps({"p": [0.6, 0.8], "b": 1.5, "s": 1.0}))
        assert run(["cap2ball", "--input", str(rec),
                    "--output", str(tmp_path / "o.json")]) == 2
        assert "DegenerateCap" in capsys.readouterr().err

    def test_cap_over_singularity_exit_3(self, tmp_path, capsys):
        rec = tmp_path / "cap.json"
        rec.write_text(json.dumps({"p": [0.0, -1.0], "b": 0.5, "s": 1.0}))
        assert run(["cap2ball", "--input", str(rec),
                    "--output", str(tmp_path / "o.json")]) == 3
        assert "CapContainsSouthPole" in capsys.readouterr().err

    def test_missing_field_exit_1(self, tmp_path, capsys):
        rec = tmp_path / "cap.json"
        rec.write_text(json.dumps({"p": [0.6, 0.8], "s": 1.0}))
        assert run(["cap2ball", "--input", str(rec),
                    "--output", str(tmp_path / "o.json")]) == 1
        assert "InputFormatError" in capsys.readouterr().err

    def test_malformed_json_exit_1(self, tmp_path):
        rec = tmp_path / "cap.json"
        rec.write_text("{not json")
        assert run(["cap2ball", "--input", str(rec),
                    "--output", str(tmp_path / "o.json")]) == 1


class TestAnalysis:
    def test_sweep_writes_table(self, tmp_path):
        X = iv.generate("gaussian", 3, 200, seed=0)
        inp = str(tmp_path / "in.csv")
        iv.write_dataset(X, inp, "csv")
        out = tmp_path / "sweep.csv"
        assert run(["sweep", "--input", inp, "--output", str(out),
                    "--grid-size", "10"]) == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0].startswith("# best_s=")
        assert len(lines) == 11
        s_vals = [float(l.split(",")[0]) for l in lines[1:]]
        assert s_vals == sorted(s_vals)

    def test_abid_json(self, tmp_path):
        X = iv.generate("gaussian", 5, 500, seed=1)
        inp = str(tmp_path / "in.csv")
        iv.write_dataset(X, inp, "csv")
        out = tmp_path / "abid.json"
        assert run(["abid", "--input", inp, "--output", str(out)]) == 0
        got = json.loads(out.read_text())
        assert abs(got["value"] - 5.0) < 1.5
        assert got["n_skipped"] == 0

    def test_knn_eval_perfect_recall(self, tmp_path):
        base = iv.generate("gaussian", 4, 300, seed=2)
        queries = iv.generate("gaussian", 4, 20, seed=3)
        bp = str(tmp_path / "base.csv")
        qp = str(tmp_path / "q.csv")
        iv.write_dataset(base, bp, "csv")
        iv.write_dataset(queries, qp, "csv")
        out = tmp_path / "report.json"
        assert run(["knn-eval", "--base", bp, "--queries", qp,
                    "--k", "5", "--output", str(out)]) == 0
        got = json.loads(out.read_text())
        assert got["recall"] == 1.0
        assert got["n_queries"] == 20

    def test_generate_then_read(self, tmp_path):
        out = str(tmp_path / "gen.bin")
        assert run(["generate", "--kind", "uniform_ball", "--d", "3",
                    "--n", "100", "--seed", "4", "--output", out,
                    "--format", "f64le"]) == 0
        X = iv.read_dataset(out, "f64le")
        assert X.points.shape == (100, 3)
        expected = iv.generate("uniform_ball", 3, 100, seed=4)
        np.testing.assert_array_equal(X.points, expected.points)

    def test_bridge_ops(self, tmp_path):
        rng = np.random.default_rng(5)
        x = rng.standard_normal((10, 3))
        y = rng.standard_normal((10, 3))
        xp = write_csv(tmp_path, "x.csv", x)
        yp = write_csv(tmp_path, "y.csv", y)
        out = str(tmp_path / "vals.csv")
        assert run(["bridge", "--op", "dot-embedded", "--x", xp, "--y", yp,
                    "--s", "1.5", "--output", out]) == 0
        got = iv.read_dataset(out, "csv").points[:, 0]
        ctx = iv.MetricContext(1.5)
        expected = [iv.dot_embedded(a, b, ctx) for a, b in zip(x, y)]
        np.testing.assert_allclose(got, expected, atol=1e-15)

    def test_bridge_row_mismatch_exit_2(self, tmp_path):
        xp = write_csv(tmp_path, "x.csv", [[1.0, 2.0]])
        yp = write_csv(tmp_path, "y.csv", [[1.0, 2.0], [3.0, 4.0]])
        assert run(["bridge", "--op", "dot-embedded", "--x", xp, "--y", yp,
                    "--s", "1", "--output", str(tmp_path / "o.csv")]) == 2

    def test_bridge_singular_record_exit_3(self, tmp_path, capsys):
        xp = write_csv(tmp_path, "x.csv", [[0.0, 0.0, -1.0]])
        yp = write_csv(tmp_path, "y.csv", [[1.0, 0.0, 0.0]])
        assert run(["bridge", "--op", "dot-original", "--x", xp, "--y", yp,
                    "--s", "1", "--output", str(tmp_path / "o.csv")]) == 3
        err = capsys.readouterr().err
        assert "PointAtSouthPole" in err and "record 0" in err
