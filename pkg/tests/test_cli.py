from seqdisc.cli import main


def _read(path):
    with open(path, "rb") as fh:
        return fh.read()


class TestOptimal:
    def test_report_contents(self, capsys):
        assert main(["optimal", "--s", "0.04", "--p1", "0.5"]) == 0
        out = capsys.readouterr().out
        for token in ("ssd_joint", "protocol1", "protocol2", "protocol3",
                      "at_least_one_ssd", "at_least_one_p3"):
            assert token in out
        assert "0.64" in out and "0.96" in out and "0.9216" in out
        assert "0.886153846154" in out

    def test_symmetry_broken_case_label(self, capsys):
        assert main(["optimal", "--s", "0.36", "--p1", "0.5"]) == 0
        out = capsys.readouterr().out
        ssd_line = [l for l in out.splitlines() if l.startswith("ssd_joint")][0]
        assert "CaseII" in ssd_line

    def test_orthogonal_states_all_one(self, capsys):
        assert main(["optimal", "--s", "0", "--p1", "0.5"]) == 0
        out = capsys.readouterr().out
        for line in out.splitlines():
            if line.startswith(("ssd_joint", "protocol", "at_least")):
                assert line.split()[1] == "1"

    def test_invalid_scenario_exits_2(self, capsys):
        assert main(["optimal", "--s", "0.04", "--p1", "0.7"]) == 2
        assert "error" in capsys.readouterr().err


class TestSweep:
    def test_figure2_header_and_shape(self, tmp_path):
        out = tmp_path / "fig2.csv"
        assert main(["sweep", "--figure", "2", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "P1,Pb_max_t0.06,Pb_max_t0.1"
        assert len(lines) == 201

    def test_byte_stable_output(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["sweep", "--figure", "6c", "--out", str(a)]) == 0
        assert main(["sweep", "--figure", "6c", "--out", str(b)]) == 0
        assert _read(a) == _read(b)

    def test_custom_sweep(self, tmp_path):
        out = tmp_path / "custom.csv"
        code = main(
            ["sweep", "--variable", "P1", "--start", "0.1", "--stop", "0.5", "--steps", "5",
             "--s", "0.04", "--quantities", "protocol1,ssd", "--out", str(out)]
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "P1,protocol1,ssd"
        assert len(lines) == 6
        assert lines[-1].startswith("0.5,0.96,0.64")

    def test_empty_cells_for_undefined_proportions(self, tmp_path):
        out = tmp_path / "fig6a.csv"
        assert main(["sweep", "--figure", "6a", "--out", str(out)]) == 0
        rows = [l.split(",") for l in out.read_text().splitlines()[1:]]
        low_t = [r for r in rows if float(r[0]) < 0.5]
        assert all(r[2] == "" for r in low_t)  # s = 0.5 column infeasible there
        assert "nan" not in out.read_text().lower()

    def test_unwritable_path_exits_3(self, tmp_path, capsys):
        target = tmp_path / "missing_dir" / "out.csv"
        assert main(["sweep", "--figure", "2", "--out", str(target)]) == 3
        assert "I/O" in capsys.readouterr().err

    def test_stdout_output(self, capsys):
        assert main(["sweep", "--figure", "2", "--out", "-"]) == 0
        assert capsys.readouterr().out.startswith("P1,")


class TestCorrelations:
    def test_report_fields(self, capsys):
        assert main(["correlations", "--s", "0.36", "--p1", "0.3", "--t", "0.6"]) == 0
        out = capsys.readouterr().out
        for token in ("tau_abe", "d_right", "d_left", "prop_left", "d_symm"):
            assert token in out

    def test_undefined_proportions_printed(self, capsys):
        assert main(["correlations", "--s", "0.36", "--p1", "0.3", "--t", "1.0"]) == 0
        assert "undefined" in capsys.readouterr().out

    def test_infeasible_t_exits_2(self, capsys):
        assert main(["correlations", "--s", "0.36", "--p1", "0.3", "--t", "0.2"]) == 2


class TestSimulate:
    def test_defaults_run_clean(self, capsys):
        code = main(["simulate", "--s", "0.04", "--p1", "0.5", "--n", "50000", "--seed", "1"])
        assert code == 0
        out = capsys.readouterr().out
        assert "error_count          0" in out

    def test_single_trial(self, capsys):
        assert main(["simulate", "--s", "0.04", "--p1", "0.5", "--n", "1"]) == 0

    def test_infeasible_q_exits_2(self, capsys):
        code = main(
            ["simulate", "--s", "0.04", "--p1", "0.5", "--t", "0.2", "--q1b", "0.01",
             "--n", "10"]
        )
        assert code == 2


class TestVerify:
    def test_filtered_quantity_passes(self, capsys):
        assert main(["verify", "--quantity", "protocol1"]) == 0
        out = capsys.readouterr().out
        assert "protocol1" in out and "PASS" in out and "FAIL" not in out

    def test_unreachable_tolerance_fails(self, capsys):
        code = main(["verify", "--quantity", "joint", "--tolerance", "1e-12"])
        assert code == 5
        assert "FAIL" in capsys.readouterr().out
