import json

import numpy as np
import pytest

from corrsynth import load_csv, write_csv
from corrsynth.cli import main


@pytest.fixture
def source_csv(tmp_path, make_correlated):
    d = make_correlated(31, 300, 4, names=("alpha", "beta", "gamma", "delta"))
    p = str(tmp_path / "src.csv")
    write_csv(d, p)
    return p


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestStats:
    def test_json_payload(self, capsys, source_csv):
        code, out, err = run(capsys, "stats", "--input", source_csv)
        assert code == 0
        payload = json.loads(out)
        assert payload["format_version"] == 1
        assert payload["columns"] == ["alpha", "beta", "gamma", "delta"]
        assert len(payload["means"]) == 4

    def test_missing_file(self, capsys, tmp_path):
        code, out, err = run(capsys, "stats", "--input", str(tmp_path / "no.csv"))
        assert code == 1
        assert "error" in err
        assert out == ""

    def test_bad_cell(self, capsys, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("a,b\n1,x\n2,3\n")
        code, _, err = run(capsys, "stats", "--input", str(p))
        assert code == 1
        assert err.count("\n") == 1


class TestCorr:
    def test_csv_to_file(self, capsys, source_csv, tmp_path):
        out_path = str(tmp_path / "c.csv")
        code, _, _ = run(capsys, "corr", "--input", source_csv, "--out", out_path)
        assert code == 0
        mat = load_csv(out_path)
        assert mat.columns == ("alpha", "beta", "gamma", "delta")
        np.testing.assert_allclose(np.diag(mat.values), 1.0)

    def test_json_to_stdout(self, capsys, source_csv):
        code, out, _ = run(capsys, "corr", "--input", source_csv, "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert len(payload["entries"]) == 16

    def test_csv_to_stdout(self, capsys, source_csv):
        code, out, _ = run(capsys, "corr", "--input", source_csv)
        assert code == 0
        assert out.splitlines()[0] == "alpha,beta,gamma,delta"


class TestMpole:
    def test_pair(self, capsys, source_csv):
        code, out, _ = run(
            capsys, "mpole", "--input", source_csv, "--columns", "alpha,beta"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["subset"] == ["alpha", "beta"]
        assert 0.0 <= payload["mp"] <= 1.0
        assert len(payload["minimizer"]) == 2

    def test_single_column_rejected(self, capsys, source_csv):
        code, out, err = run(
            capsys, "mpole", "--input", source_csv, "--columns", "alpha"
        )
        assert code == 1
        assert "2" in err

    def test_unknown_column(self, capsys, source_csv):
        code, _, err = run(
            capsys, "mpole", "--input", source_csv, "--columns", "alpha,nope"
        )
        assert code == 1
        assert "nope" in err


class TestFitGenerate:
    def test_fit_writes_blueprint(self, capsys, source_csv, tmp_path):
        bp = str(tmp_path / "bp.json")
        code, _, _ = run(capsys, "fit", "--input", source_csv, "--out", bp)
        assert code == 0
        with open(bp) as fh:
            assert json.load(fh)["format_version"] == 1

    def test_generate_from_input(self, capsys, source_csv, tmp_path):
        out = str(tmp_path / "syn.csv")
        code, _, _ = run(
            capsys, "generate", "--input", source_csv,
            "--rows", "128", "--seed", "42", "--out", out,
        )
        assert code == 0
        syn = load_csv(out)
        assert syn.n_rows == 128
        with open(out + ".meta.json") as fh:
            meta = json.load(fh)
        assert meta["seed"] == 42
        assert meta["mode"] == "exact"
        assert meta["applied_jitter"] == 0.0

    def test_generate_from_blueprint_matches_inline(self, capsys, source_csv, tmp_path):
        bp = str(tmp_path / "bp.json")
        run(capsys, "fit", "--input", source_csv, "--out", bp)
        a = str(tmp_path / "a.csv")
        b = str(tmp_path / "b.csv")
        run(capsys, "generate", "--input", source_csv, "--rows", "64",
            "--seed", "7", "--out", a)
        run(capsys, "generate", "--blueprint", bp, "--rows", "64",
            "--seed", "7", "--out", b)
        with open(a, "rb") as fa, open(b, "rb") as fb:
            assert fa.read() == fb.read()

    def test_generate_requires_one_source(self, capsys, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(["generate", "--rows", "10", "--out", str(tmp_path / "x.csv")])
        assert exc.value.code == 1

    def test_exact_rank_error_is_data_error(self, capsys, source_csv, tmp_path):
        code, _, err = run(
            capsys, "generate", "--input", source_csv,
            "--rows", "3", "--seed", "1", "--out", str(tmp_path / "x.csv"),
        )
        assert code == 1
        assert "rows" in err


class TestVerifyCommand:
    def test_pass_exit_zero(self, capsys, source_csv, tmp_path):
        syn = str(tmp_path / "syn.csv")
        run(capsys, "generate", "--input", source_csv, "--rows", "256",
            "--seed", "42", "--out", syn)
        code, out, _ = run(
            capsys, "verify", "--source", source_csv, "--synthetic", syn,
            "--max-order", "4",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["pass"] is True

    def test_fail_exit_two(self, capsys, source_csv, tmp_path):
        d = load_csv(source_csv)
        vals = d.values.copy()
        vals[:, 0] = np.random.default_rng(1).permutation(vals[:, 0])
        broken = str(tmp_path / "broken.csv")
        from corrsynth import Dataset

        write_csv(Dataset(d.columns, vals), broken)
        code, out, _ = run(
            capsys, "verify", "--source", source_csv, "--synthetic", broken,
        )
        assert code == 2
        assert json.loads(out)["pass"] is False

    def test_column_mismatch_is_data_error(self, capsys, source_csv, tmp_path):
        d = load_csv(source_csv)
        from corrsynth import Dataset

        renamed = str(tmp_path / "renamed.csv")
        write_csv(Dataset(("w", "x", "y", "z"), d.values), renamed)
        code, _, err = run(
            capsys, "verify", "--source", source_csv, "--synthetic", renamed,
        )
        assert code == 1


class TestUsageErrors:
    def test_unknown_subcommand(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 1

    def test_no_arguments(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 1

    def test_bad_flag_value(self, capsys, source_csv):
        with pytest.raises(SystemExit) as exc:
            main(["generate", "--input", source_csv, "--rows", "ten",
                  "--out", "x.csv"])
        assert exc.value.code == 1
