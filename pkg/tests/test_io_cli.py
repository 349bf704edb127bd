"""Dataset containers, CSV ingestion, and the command-line surface."""

import json

import numpy as np
import pytest

from skewlink import (
    GroupedDataset,
    load_binomial,
    load_grazeffe2008,
    load_multinomial,
    parse_binomial_csv,
    parse_multinomial_csv,
)
from skewlink.cli import main

# content hashes of the embedded tables; any edit to the reference data
# must be deliberate enough to update these
FINNEY_SHA = "41c7af268e87ec31b88fce1f2b14faef9f832cb6984be2ca9bac2c1e7f1ad08a"
GRAZEFFE_SHA = "7ab7e2816496efa16dcf38be5e2fe4efe6854cac8e33f4d91306b5c49e4814bf"


class TestBuiltins:
    def test_finney_shape_and_totals(self, finney):
        assert finney.n_rows == 17
        assert finney.n_trials == 818
        assert finney.covariate_names == ("intercept", "logdose", "rotenone", "deguelin")
        # mixture rows are the reference level: both indicators zero
        mixture = (finney.X[:, 2] == 0) & (finney.X[:, 3] == 0)
        assert mixture.sum() == 6

    def test_finney_fingerprint_pinned(self, finney):
        assert finney.fingerprint() == FINNEY_SHA

    def test_grazeffe_shape_and_totals(self, snail):
        assert snail.n_rows == 5
        assert snail.n_categories == 4
        assert snail.n_total == 4800
        np.testing.assert_array_equal(snail.counts[4], [58, 49, 133, 660])
        np.testing.assert_array_equal(snail.counts[0], [654, 125, 72, 249])

    def test_grazeffe_fingerprint_pinned(self, snail):
        assert snail.fingerprint() == GRAZEFFE_SHA

    def test_dose_scaling(self):
        scaled = load_grazeffe2008(dose_scale=20.0)
        assert scaled.X[:, 1].max() == pytest.approx(1.0)
        assert scaled.X[:, 2].max() == pytest.approx(1.0)

    def test_unknown_names(self):
        with pytest.raises(KeyError):
            load_binomial("nope")
        with pytest.raises(KeyError):
            load_multinomial("nope")


class TestGroupedDataset:
    def test_rejects_successes_above_trials(self):
        with pytest.raises(ValueError):
            GroupedDataset(np.ones((1, 1)), [5], [3])

    def test_rejects_missing_intercept(self):
        with pytest.raises(ValueError):
            GroupedDataset(np.full((2, 1), 2.0), [1, 1], [2, 2])

    def test_rejects_fractional_counts(self):
        with pytest.raises(ValueError):
            GroupedDataset(np.ones((1, 1)), [1.5], [3])

    def test_rank_deficiency_warns(self):
        X = np.column_stack([np.ones(3), [1.0, 1.0, 1.0]])
        with pytest.warns(UserWarning, match="rank deficient"):
            GroupedDataset(X, [1, 1, 1], [2, 2, 2])

    def test_arrays_frozen(self, finney):
        with pytest.raises(ValueError):
            finney.X[0, 0] = 7.0


class TestCsvParsing:
    def test_one_row_file(self, tmp_path):
        path = tmp_path / "tiny.csv"
        path.write_text("x,s,t\n0,1,2\n")
        data = parse_binomial_csv(path, ["x"], "s", "t")
        assert data.n_rows == 1
        np.testing.assert_array_equal(data.X[0], [1.0, 0.0])
        assert data.successes[0] == 1 and data.trials[0] == 2

    def test_successes_above_trials_named(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x,s,t\n0,5,3\n")
        with pytest.raises(ValueError, match="row 1"):
            parse_binomial_csv(path, ["x"], "s", "t")

    def test_missing_column_named(self, tmp_path):
        path = tmp_path / "cols.csv"
        path.write_text("x,s\n0,1\n")
        with pytest.raises(ValueError, match="'t'"):
            parse_binomial_csv(path, ["x"], "s", "t")

    def test_non_numeric_cell_named(self, tmp_path):
        path = tmp_path / "nan.csv"
        path.write_text("x,s,t\n0,1,2\nfoo,1,2\n")
        with pytest.raises(ValueError, match="row 2.*'x'"):
            parse_binomial_csv(path, ["x"], "s", "t")

    def test_roundtrip_matches_builtin(self, tmp_path, finney):
        path = tmp_path / "finney.csv"
        rows = ["logdose,rotenone,deguelin,s,t"]
        for i in range(finney.n_rows):
            rows.append(
                f"{finney.X[i,1]},{finney.X[i,2]:.0f},{finney.X[i,3]:.0f},"
                f"{finney.successes[i]},{finney.trials[i]}"
            )
        path.write_text("\n".join(rows) + "\n")
        parsed = parse_binomial_csv(path, ["logdose", "rotenone", "deguelin"], "s", "t")
        np.testing.assert_array_equal(parsed.X, finney.X)
        np.testing.assert_array_equal(parsed.successes, finney.successes)

    def test_multinomial_file(self, tmp_path):
        path = tmp_path / "multi.csv"
        path.write_text("dose,c1,c2,c3\n0,5,3,2\n1,1,1,8\n")
        data = parse_multinomial_csv(path, ["dose"], ["c1", "c2", "c3"])
        assert data.n_categories == 3
        assert data.n_total == 20

    def test_multinomial_negative_count(self, tmp_path):
        path = tmp_path / "neg.csv"
        path.write_text("dose,c1,c2\n0,5,-1\n")
        with pytest.raises(ValueError, match="negative"):
            parse_multinomial_csv(path, ["dose"], ["c1", "c2"])


class TestCli:
    def test_fit_builtin(self, capsys):
        assert main(["fit", "--data", "finney1947", "--link", "cloglog"]) == 0
        out = capsys.readouterr().out
        assert "-370.3" in out

    def test_missing_file_exits_one(self, capsys):
        assert main(["fit", "--data", "missing.csv", "--covariates", "x"]) == 1
        assert "error" in capsys.readouterr().err

    def test_csv_without_covariates_exits_one(self, tmp_path, capsys):
        path = tmp_path / "d.csv"
        path.write_text("x,s,t\n0,1,2\n")
        assert main(["fit", "--data", str(path)]) == 1

    def test_bayes_requires_seed(self, capsys):
        assert main(["bayes", "--data", "finney1947"]) == 1
        assert "seed" in capsys.readouterr().err

    def test_compare_orders_by_aic(self, capsys, tmp_path):
        out_path = tmp_path / "cmp.json"
        code = main(["compare", "--data", "finney1947",
                     "--links", "weibull,cloglog,probit,logit",
                     "--format", "json", "--out", str(out_path)])
        assert code == 0
        report = json.loads(out_path.read_text())
        names = [row["model"] for row in report["comparison"]]
        assert names[0] == "cloglog" and names[1] == "weibull"

    def test_json_report_roundtrip_aic_identity(self, tmp_path):
        out_path = tmp_path / "fit.json"
        assert main(["fit", "--data", "finney1947", "--link", "logit",
                     "--format", "json", "--out", str(out_path)]) == 0
        report = json.loads(out_path.read_text())
        assert report["aic"] == -2.0 * report["log_lik"] + 2.0 * report["n_params"]
        assert report["bic"] == pytest.approx(
            -2.0 * report["log_lik"] + report["n_params"] * np.log(report["n_obs"]),
            rel=1e-15,
        )
        assert report["dataset"]["fingerprint"] == FINNEY_SHA

    def test_reports_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        args = ["fit", "--data", "finney1947", "--link", "probit",
                "--seed", "3", "--format", "json"]
        assert main([*args, "--out", str(a)]) == 0
        assert main([*args, "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_bayes_smoke_with_chain_export(self, tmp_path, capsys):
        chain_path = tmp_path / "chain.csv"
        out_path = tmp_path / "bayes.json"
        code = main([
            "bayes", "--data", "finney1947", "--seed", "9",
            "--prior", "noninf", "--burn", "200", "--keep", "300", "--thin", "1",
            "--format", "json", "--out", str(out_path),
            "--chain-out", str(chain_path),
        ])
        assert code == 0
        report = json.loads(out_path.read_text())
        assert report["prior"]["kind"] == "noninformative"
        assert set(report["posterior"]) == {"gamma", "intercept", "logdose",
                                            "rotenone", "deguelin"}
        lines = chain_path.read_text().splitlines()
        assert len(lines) == 301

    def test_multinomial_csv_path(self, tmp_path, capsys):
        path = tmp_path / "snail.csv"
        snail = load_grazeffe2008()
        rows = ["dose,dose2,c1,c2,c3,c4"]
        for i in range(snail.n_rows):
            rows.append(",".join(
                [str(snail.X[i, 1]), str(snail.X[i, 2])]
                + [str(int(c)) for c in snail.counts[i]]
            ))
        path.write_text("\n".join(rows) + "\n")
        code = main(["multinomial", "--data", str(path),
                     "--covariates", "dose,dose2",
                     "--count-cols", "c1,c2,c3,c4", "--link", "logit"])
        assert code == 0
        out = capsys.readouterr().out
        assert "11362.39" in out

    def test_gamma_fixed_flag(self, capsys):
        assert main(["fit", "--data", "finney1947", "--link", "weibull",
                     "--gamma-fixed", "3.60235"]) == 0
        out = capsys.readouterr().out
        assert "converged = True" in out
