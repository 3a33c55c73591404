import json
import subprocess
import sys

import pytest

from decadic.cli import _canonical, main

CBRT192 = 192 ** (1 / 3)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSturmianCommand:
    def test_reference_multiplet(self, capsys):
        code, out, _ = run_cli(capsys, "sturmian", "--alpha", "2", "--beta", "0", "-N", "2")
        assert code == 0
        doc = json.loads(out)
        assert [s["d"] for s in doc["solutions"]] == [-12.0, -4.0]
        assert [s["F"] for s in doc["solutions"]] == [-4.0, 4.0]
        assert all(s["validated"] for s in doc["solutions"])
        assert doc["spec"]["big_m"] == 1

    def test_empty_result_exits_one(self, capsys):
        code, out, _ = run_cli(capsys, "sturmian", "--alpha", "0", "--beta", "1", "-N", "2")
        assert code == 1
        assert json.loads(out)["solutions"] == []

    def test_invalid_input_exits_two(self, capsys):
        code, _, err = run_cli(capsys, "sturmian", "-N", "0")
        assert code == 2
        assert "n_states" in err

    def test_wrong_mode_exits_two(self, capsys):
        code, _, err = run_cli(capsys, "sturmian", "-N", "2", "-M", "2")
        assert code == 2
        assert "M = 1" in err


class TestEnergiesCommand:
    def test_reference_multiplet(self, capsys):
        code, out, _ = run_cli(capsys, "energies", "--alpha", "0", "--beta", "0", "-N", "3")
        assert code == 0
        doc = json.loads(out)
        energies = [s["E"] for s in doc["solutions"]]
        assert energies == pytest.approx([0.0, CBRT192], abs=1e-9)
        assert doc["solutions"][1]["d"] == pytest.approx(CBRT192**2 / 4)

    def test_n1_gives_single_negative_energy(self, capsys):
        code, out, _ = run_cli(capsys, "energies", "--alpha", "0.3", "--beta", "1.5", "-N", "1")
        assert code == 0
        doc = json.loads(out)
        assert [s["E"] for s in doc["solutions"]] == pytest.approx([-3.0])

    def test_invalid_m_exits_two(self, capsys):
        code, _, err = run_cli(capsys, "energies", "-N", "3", "-M", "1")
        assert code == 2
        assert "M = 2" in err


class TestCoupledCommand:
    def test_m3_reference(self, capsys):
        code, out, _ = run_cli(capsys, "coupled", "--alpha", "0", "--beta", "0",
                               "-M", "3", "-N", "3")
        assert code == 0
        doc = json.loads(out)
        pairs = [(s["E"], s["d"]) for s in doc["solutions"]]
        assert len(pairs) == 2
        assert pairs[0][0] == pytest.approx(-5.9634570, abs=1e-6)
        assert pairs[1][0] == pytest.approx(10.7320301, abs=1e-6)

    def test_agrees_with_energies_at_m2(self, capsys):
        code_c, out_c, _ = run_cli(capsys, "coupled", "--alpha", "0.5", "--beta", "-0.5",
                                   "-M", "2", "-N", "2")
        code_e, out_e, _ = run_cli(capsys, "energies", "--alpha", "0.5", "--beta", "-0.5",
                                   "-N", "2")
        assert code_c == 0 and code_e == 0
        es_c = [s["E"] for s in json.loads(out_c)["solutions"]]
        es_e = [s["E"] for s in json.loads(out_e)["solutions"]]
        assert es_c == pytest.approx(es_e, abs=1e-8)

    def test_empty_result_exits_one(self, capsys):
        # an extreme rank tolerance makes the acceptance gate reject every
        # candidate; an empty accepted set is a valid outcome and exits 1
        code, out, _ = run_cli(capsys, "coupled", "--alpha", "1", "--beta", "2",
                               "-M", "3", "-N", "2", "--rank-tol", "1e-30")
        assert code == 1
        assert json.loads(out)["solutions"] == []

    def test_degenerate_small_system_exits_two(self, capsys):
        code, _, err = run_cli(capsys, "coupled", "--alpha", "0", "--beta", "0",
                               "-M", "4", "-N", "2")
        assert code == 2
        assert "M <= N + 1" in err


class TestWedgesCommand:
    def test_triple_choice(self, capsys):
        code, out, _ = run_cli(capsys, "wedges", "--degree", "3")
        assert code == 0
        doc = json.loads(out)
        assert len(doc["pairs"]) == 3
        assert doc["self_symmetric"] == []

    def test_quartic_reference_values(self, capsys):
        import math
        code, out, _ = run_cli(capsys, "wedges", "--degree", "2")
        doc = json.loads(out)
        right = doc["pairs"][0]["right"]
        assert right["lo"] == pytest.approx(-math.pi / 8, abs=1e-12)
        assert right["hi"] == pytest.approx(math.pi / 8, abs=1e-12)
        assert len(doc["self_symmetric"]) == 2

    def test_delta_mode(self, capsys):
        import math
        code, out, _ = run_cli(capsys, "wedges", "--delta", "4")
        doc = json.loads(out)
        assert doc["half_width"] == pytest.approx(math.pi / 12, abs=1e-12)
        assert not doc["second_pair_real_compatible"]

    def test_requires_exactly_one_mode(self, capsys):
        assert run_cli(capsys, "wedges")[0] == 2
        assert run_cli(capsys, "wedges", "--degree", "3", "--delta", "1")[0] == 2


class TestShootCommand:
    def test_recovers_reference_energy(self, capsys):
        d = CBRT192**2 / 4
        code, out, _ = run_cli(capsys, "shoot", "--alpha", "0", "--beta", "0",
                               "-M", "2", "-N", "3", "--d", repr(d),
                               "--e-guess", "5.5")
        assert code == 0
        doc = json.loads(out)
        assert doc["result"]["converged"] is True
        assert doc["result"]["energy"] == pytest.approx(CBRT192, abs=1e-6)

    def test_non_convergence_exits_one(self, capsys):
        code, out, _ = run_cli(capsys, "shoot", "--alpha", "0", "--beta", "0",
                               "-M", "2", "-N", "3", "--d", "8.32",
                               "--e-guess", "-50", "--e-bound", "100")
        assert code == 1
        assert json.loads(out)["result"]["converged"] is False


class TestSweepCommand:
    def test_grid_shape_and_discriminant(self, capsys, tmp_path):
        out_file = tmp_path / "sweep.csv"
        code, _, _ = run_cli(capsys, "sweep", "-M", "1", "-N", "2",
                             "--alpha-min", "-4", "--alpha-max", "4", "--alpha-steps", "9",
                             "--beta-min", "-4", "--beta-max", "4", "--beta-steps", "9",
                             "--out", str(out_file))
        assert code == 0
        lines = out_file.read_text().strip().split("\n")
        assert lines[0] == "alpha,beta,n_real,validated"
        assert len(lines) == 1 + 9 * 9
        for line in lines[1:]:
            a_s, b_s, n_s, v_s = line.split(",")
            a, b, n = float(a_s), float(b_s), int(n_s)
            if a * a > 4 * b:
                assert n == 2, line
            elif a * a < 4 * b:
                assert n == 0, line
            else:
                # discriminant boundary: double coupling, still counted twice
                assert n == 2, line
            assert v_s == "true"

    def test_single_point_grid(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "-M", "1", "-N", "2",
                               "--alpha-min", "2", "--alpha-max", "2", "--alpha-steps", "1",
                               "--beta-min", "0", "--beta-max", "0", "--beta-steps", "1",
                               "--jobs", "1")
        assert code == 0
        lines = out.strip().split("\n")
        assert len(lines) == 2
        assert lines[1].endswith(",2,true")

    def test_invalid_grid_exits_two(self, capsys):
        code, _, _ = run_cli(capsys, "sweep", "-M", "1", "-N", "2",
                             "--alpha-min", "0", "--alpha-max", "1", "--alpha-steps", "0",
                             "--beta-min", "0", "--beta-max", "1", "--beta-steps", "3")
        assert code == 2

    def test_unsupported_m_exits_two(self, capsys):
        code, _, _ = run_cli(capsys, "sweep", "-M", "3", "-N", "2",
                             "--alpha-min", "0", "--alpha-max", "1", "--alpha-steps", "2",
                             "--beta-min", "0", "--beta-max", "1", "--beta-steps", "2")
        assert code == 2


class TestCanonicalJson:
    def test_round_trip_is_byte_identical(self, capsys):
        for argv in (("sturmian", "--alpha", "2", "--beta", "0", "-N", "2"),
                     ("energies", "--alpha", "0", "--beta", "0", "-N", "3"),
                     ("wedges", "--degree", "3"),
                     ("wedges", "--delta", "1.0")):
            _, out, _ = run_cli(capsys, *argv)
            doc = json.loads(out)
            assert _canonical(doc) + "\n" == out

    def test_float_format(self, capsys):
        _, out, _ = run_cli(capsys, "sturmian", "--alpha", "2", "--beta", "0", "-N", "2")
        assert "-1.200000000000e+01" in out

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "result.json"
        code, out, _ = run_cli(capsys, "sturmian", "--alpha", "2", "--beta", "0",
                               "-N", "2", "--out", str(path))
        assert code == 0
        assert out == ""
        doc = json.loads(path.read_text())
        assert doc["spec"]["alpha"] == 2.0


class TestEntryPoint:
    def test_console_script(self):
        proc = subprocess.run([sys.executable, "-m", "decadic.cli", "--version"],
                              capture_output=True, text=True)
        assert proc.returncode == 0
        assert proc.stdout.strip() == "0.1.0"

    def test_malformed_flags_exit_two(self):
        proc = subprocess.run([sys.executable, "-m", "decadic.cli", "sturmian", "--bogus"],
                              capture_output=True, text=True)
        assert proc.returncode == 2
