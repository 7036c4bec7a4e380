import pytest

from gibbsbo.cli import ConfigError, RunConfig, main, parse_config


class TestParseConfig:
    def test_minimal_valid(self):
        cfg = parse_config("seed = 42\nexperiment = cauchy_g\nsamples = 100000")
        assert cfg.seed == 42
        assert cfg.experiment == "cauchy_g"
        assert cfg.samples == 100_000
        assert cfg.R == 5.0  # default filled

    def test_comments_and_blanks(self):
        cfg = parse_config(
            "# campaign\n\nexperiment = cauchy_g  # inline\nseed = 1\n")
        assert cfg.seed == 1

    def test_unknown_key_names_line(self):
        with pytest.raises(ConfigError, match="line 2.*banana"):
            parse_config("experiment = cauchy_g\nbanana = 1")

    def test_malformed_value_names_line(self):
        with pytest.raises(ConfigError, match="line 2"):
            parse_config("experiment = cauchy_g\nsamples = ten")

    def test_negative_samples_rejected(self):
        with pytest.raises(ConfigError, match="samples"):
            parse_config("experiment = cauchy_g\nsamples = -5")

    def test_missing_experiment(self):
        with pytest.raises(ConfigError, match="experiment"):
            parse_config("seed = 1")

    def test_unknown_experiment(self):
        with pytest.raises(ConfigError, match="unknown experiment"):
            parse_config("experiment = teleport")

    def test_list_values(self):
        cfg = parse_config(
            "experiment = density_lp\nN_list = 4, 8\np_list = 1.0, 2.0")
        assert cfg.N_list == [4, 8]
        assert cfg.p_list == [1.0, 2.0]

    def test_overrides_win(self):
        cfg = parse_config("experiment = cauchy_g\nseed = 1",
                           overrides={"seed": 7})
        assert cfg.seed == 7

    def test_default_seed_published(self):
        assert RunConfig(experiment="cauchy_g").seed == 42


class TestMain:
    def test_unknown_experiment_exits_2(self, capsys):
        assert main(["teleport"]) == 2

    def test_happy_path_writes_outputs(self, tmp_path, capsys):
        code = main(["cauchy_g", "--samples", "20000", "--seed", "3",
                     "--out", str(tmp_path)])
        assert code == 0
        csv_path = tmp_path / "cauchy_g_3.csv"
        verdict_path = tmp_path / "cauchy_g_3.verdict.txt"
        assert csv_path.exists() and verdict_path.exists()
        header = csv_path.read_text().splitlines()[0]
        assert header == "N,M,exact,mc,mc_se,verdict"

    def test_csv_deterministic(self, tmp_path):
        a = tmp_path / "a"
        b = tmp_path / "b"
        main(["cauchy_g", "--samples", "20000", "--out", str(a)])
        main(["cauchy_g", "--samples", "20000", "--out", str(b)])
        assert ((a / "cauchy_g_42.csv").read_bytes()
                == (b / "cauchy_g_42.csv").read_bytes())

    def test_underpowered_run_exits_1(self, tmp_path):
        # 10 samples: SE too large to conclude -> inconclusive -> exit 1
        code = main(["cauchy_g", "--samples", "10", "--out", str(tmp_path)])
        assert code == 1
        text = (tmp_path / "cauchy_g_42.verdict.txt").read_text()
        assert "INCONCLUSIVE" in text

    def test_invariance_t0_passes(self, tmp_path):
        cfg = tmp_path / "inv.cfg"
        cfg.write_text("experiment = invariance\nt = 0\nN = 4\nsamples = 2000\n")
        code = main(["invariance", "--config", str(cfg), "--out", str(tmp_path)])
        assert code == 0
        header = (tmp_path / "invariance_42.csv").read_text().splitlines()[0]
        assert header == ("observable,t0_est,t0_se,t_est,t_se,"
                          "diff,combined_se,verdict")

    def test_bad_config_path_exits_2(self, tmp_path, capsys):
        assert main(["cauchy_g", "--config", str(tmp_path / "nope.cfg")]) == 2

    def test_config_error_exits_2(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("banana = 1\n")
        assert main(["cauchy_g", "--config", str(cfg)]) == 2
