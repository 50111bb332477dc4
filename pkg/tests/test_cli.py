import json

import numpy as np
import pytest

from graphonsp.cli import dispatch, parse_graphon_spec, parse_motif_spec
from graphonsp.sampling import graph_from_edgelist


class TestParseGraphonSpec:
    def test_er(self):
        w = parse_graphon_spec("er:0.5")
        assert w.eval(0.1, 0.9) == 0.5

    def test_expdist(self):
        w = parse_graphon_spec("expdist:10")
        assert w.eval(0.2, 0.2) == pytest.approx(1.0)
        assert w.eval(0.0, 1.0) == pytest.approx(np.exp(-10.0))

    def test_sinprod(self):
        w = parse_graphon_spec("sinprod:0.5,0.5,3.5")
        assert w.eval(0.5, 1.0) == pytest.approx(0.5 + 0.5 * np.sin(3.5 * np.pi * 0.5))

    def test_file(self, tmp_path):
        path = tmp_path / "grid.csv"
        np.savetxt(path, np.array([[0.0, 1.0], [1.0, 0.0]]), delimiter=",")
        w = parse_graphon_spec(f"file:{path}")
        assert w.eval(0.1, 0.9) == 1.0

    def test_malformed_specs(self):
        for bad in ("er", "er:2.0", "unknown:1", "sinprod:0.5", "sinprod:a,b,c"):
            with pytest.raises(ValueError):
                parse_graphon_spec(bad)


class TestParseMotifSpec:
    def test_named(self):
        assert parse_motif_spec("edge").k == 2
        assert parse_motif_spec("triangle").edges == ((0, 1), (1, 2), (0, 2))
        assert parse_motif_spec("path3").edges == ((0, 1), (1, 2))

    def test_custom(self):
        m = parse_motif_spec("custom:0-1,1-2,2-3")
        assert m.k == 4 and len(m.edges) == 3

    def test_unknown(self):
        with pytest.raises(ValueError):
            parse_motif_spec("square")


class TestDispatch:
    def test_sample_writes_edge_list(self, tmp_path, capsys):
        out = tmp_path / "g.edges"
        code = dispatch(["sample", "--graphon", "er:0.5", "--n", "100",
                         "--seed", "7", "--out", str(out)])
        assert code == 0
        g = graph_from_edgelist(out)
        assert g.n == 100

    def test_sample_reproducible(self, tmp_path):
        a, b = tmp_path / "a.edges", tmp_path / "b.edges"
        dispatch(["sample", "--graphon", "er:0.3", "--n", "50", "--seed", "9",
                  "--out", str(a)])
        dispatch(["sample", "--graphon", "er:0.3", "--n", "50", "--seed", "9",
                  "--out", str(b)])
        assert a.read_text() == b.read_text()

    def test_solve_matches_analytic_solution(self, tmp_path):
        out = tmp_path / "g.csv"
        code = dispatch(["solve", "--graphon", "expsum:0.5", "--panels", "10",
                         "--basis", "5", "--input", "y", "--points", "200",
                         "--out", str(out)])
        assert code == 0
        rows = np.loadtxt(out, delimiter=",", skiprows=1)
        x, y = rows[:, 0], rows[:, 1]
        exact = (4 - 6 * np.exp(-0.5)) * np.exp(-x / 2)
        assert np.abs(y - exact).max() / np.abs(exact).max() < 1e-2

    def test_design_consensus_json(self, capsys):
        code = dispatch(["design", "--graphon", "er:0.5", "--order", "5",
                         "--ideal", "1,0,0,0,0"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["residual"] < 1e-6
        assert len(payload["h"]) == 6 and payload["h"][0] == 0.0
        assert payload["rank_used"] >= 1

    def test_fg_operator_csv(self, tmp_path):
        out = tmp_path / "op.csv"
        code = dispatch(["fg-operator", "--graphon", "er:0.5", "--panels", "10",
                         "--basis", "5", "--out", str(out)])
        assert code == 0
        entries = np.loadtxt(out, delimiter=",")
        assert entries.shape == (5, 5)
        assert entries[0, 0] == pytest.approx(0.5, abs=1e-9)

    def test_homdensity_json(self, capsys):
        code = dispatch(["homdensity", "--motif", "triangle", "--graphon",
                         "er:0.5", "--samples", "1000", "--seed", "1"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["estimate"] == pytest.approx(0.125)
        assert payload["samples"] == 1000

    def test_experiment_convergence_writes_csv(self, tmp_path, capsys):
        code = dispatch(["experiment:convergence", "--graphon", "expsum:0.5",
                         "--n-values", "50,100", "--seeds", "0,1",
                         "--out-dir", str(tmp_path)])
        assert code == 0
        assert (tmp_path / "convergence.csv").exists()
        assert "mean discrepancy" in capsys.readouterr().out

    def test_experiment_lowpass_writes_csvs(self, tmp_path):
        code = dispatch(["experiment:lowpass", "--graphon", "er:0.5",
                         "--n", "100", "--seeds", "0",
                         "--out-dir", str(tmp_path)])
        assert code == 0
        assert (tmp_path / "lowpass.csv").exists()
        assert list(tmp_path.glob("lowpass_*_curves.csv"))

    def test_validation_failures_exit_2(self, tmp_path, capsys):
        assert dispatch(["sample", "--graphon", "er:2.0", "--n", "10",
                         "--out", str(tmp_path / "g.edges")]) == 2
        assert "error" in capsys.readouterr().err
        assert dispatch(["solve", "--graphon", "er:0.5", "--panels", "4",
                         "--basis", "9", "--input", "y",
                         "--out", str(tmp_path / "s.csv")]) == 2
        assert dispatch(["design", "--graphon", "er:0.5", "--order", "3",
                         "--ideal", "1,0,0", "--basis", "5"]) == 2

    def test_unknown_flag_exits_2(self, capsys):
        assert dispatch(["sample", "--bogus", "1"]) == 2

    def test_unreadable_grid_path_exits_2(self, tmp_path, capsys):
        assert dispatch(["fg-operator", "--graphon", "file:/no/such/file.csv",
                         "--out", str(tmp_path / "x.csv")]) == 2

    def test_help_lists_flags(self, capsys):
        assert dispatch(["solve", "--help"]) == 0
        text = capsys.readouterr().out
        for flag in ("--graphon", "--panels", "--basis", "--input", "--points",
                     "--out"):
            assert flag in text
