import math

import pytest

import mrenew.cli as cli
from mrenew import NonConvergenceError
from mrenew.cli import run


def _rows(output):
    lines = output.strip().splitlines()
    return lines[0].split(","), [line.split(",") for line in lines[1:]]


class TestTransformCommand:
    def test_identity_case_with_both_solvers(self, capsys):
        code = run(
            "transform --i 0 --j 0 --s-grid 1:1:1 --lambda 0 --alpha 1 --solver both".split()
        )
        assert code == 0
        header, rows = _rows(capsys.readouterr().out)
        assert header == ["s", "rbar_oracle", "rbar_closedform", "rel_diff"]
        assert len(rows) == 1
        s, oracle, closed, rel = map(float, rows[0])
        assert s == 1.0
        assert oracle == pytest.approx(1.0, abs=1e-12)
        assert closed == pytest.approx(1.0, abs=1e-12)
        assert rel == pytest.approx(0.0, abs=1e-12)

    def test_solver_specific_columns(self, capsys):
        assert run("transform --i 0 --j 1 --s-grid 1:2:3 --lambda 1 --alpha 1 --solver oracle".split()) == 0
        header, rows = _rows(capsys.readouterr().out)
        assert header == ["s", "rbar_oracle"]
        assert len(rows) == 3

        assert run("transform --i 0 --j 1 --s-grid 1:2:3 --lambda 1 --alpha 1 --solver closedform".split()) == 0
        header, rows = _rows(capsys.readouterr().out)
        assert header == ["s", "rbar_closedform"]
        assert len(rows) == 3

    def test_grid_endpoints_inclusive(self, capsys):
        assert run("transform --i 0 --j 0 --s-grid 1:3:5 --lambda 0.5 --alpha 1".split()) == 0
        _, rows = _rows(capsys.readouterr().out)
        s_values = [float(r[0]) for r in rows]
        assert s_values == [1.0, 1.5, 2.0, 2.5, 3.0]


class TestRenewalCommand:
    def test_no_arrivals_renewal_is_constant_one(self, capsys):
        assert run("renewal --i 0 --j 0 --t-grid 0.5:2:4 --lambda 0 --alpha 1 --method gs".split()) == 0
        header, rows = _rows(capsys.readouterr().out)
        assert header == ["t", "R"]
        assert len(rows) == 4
        for row in rows:
            assert float(row[1]) == pytest.approx(1.0, abs=1e-6)

    def test_euler_method(self, capsys):
        assert run("renewal --i 1 --j 0 --t-grid 1:1:1 --lambda 0 --alpha 1 --method euler".split()) == 0
        _, rows = _rows(capsys.readouterr().out)
        assert float(rows[0][1]) == pytest.approx(1.0 - math.exp(-1.0), abs=1e-5)


class TestSimulateCommand:
    ARGS = "simulate --i 0 --j 0 --t-grid 0.5:1:2 --lambda 1 --alpha 1 --paths 400 --seed 9".split()

    def test_csv_shape(self, capsys):
        assert run(self.ARGS) == 0
        header, rows = _rows(capsys.readouterr().out)
        assert header == ["t", "mean", "std_error"]
        assert len(rows) == 2
        assert float(rows[0][1]) >= 1.0

    def test_bit_stable_across_runs_and_workers(self, capsys):
        assert run(self.ARGS) == 0
        first = capsys.readouterr().out
        assert run(self.ARGS) == 0
        second = capsys.readouterr().out
        assert run(self.ARGS + ["--workers", "3"]) == 0
        third = capsys.readouterr().out
        assert first == second == third


class TestHypergCommand:
    def test_single_value(self, capsys):
        assert run("hyperg --a 1 --b 2 --z 1".split()) == 0
        out = capsys.readouterr().out.strip()
        assert float(out) == pytest.approx(math.e - 1.0, rel=1e-15)


class TestArgumentErrors:
    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["unknown"],
            ["transform", "--i", "0"],
            ["transform", "--i", "0", "--j", "0", "--s-grid", "1:2", "--lambda", "1", "--alpha", "1"],
            ["transform", "--i", "0", "--j", "0", "--s-grid", "1:2:0", "--lambda", "1", "--alpha", "1"],
            ["renewal", "--i", "0", "--j", "0", "--t-grid", "1:1:1", "--lambda", "1", "--alpha", "1", "--method", "talbot"],
            ["renewal", "--i", "0", "--j", "0", "--t-grid", "1:1:1", "--lambda", "1", "--alpha", "1"],
        ],
    )
    def test_exit_code_two(self, argv, capsys):
        assert run(argv) == 2
        capsys.readouterr()

    def test_invalid_parameter_value_maps_to_two(self, capsys):
        # alpha <= 0 fails QueueParams validation
        code = run("transform --i 0 --j 0 --s-grid 1:1:1 --lambda 1 --alpha 0".split())
        assert code == 2
        assert "invalid arguments" in capsys.readouterr().err


class TestNumericalFailureExit:
    def test_nonconvergence_maps_to_one(self, capsys, monkeypatch):
        def _explode(*args, **kwargs):
            raise NonConvergenceError("forced failure", residual=1.0)

        monkeypatch.setattr(cli, "solve_row_adaptive", _explode)
        code = run("transform --i 0 --j 0 --s-grid 1:1:1 --lambda 1 --alpha 1 --solver oracle".split())
        assert code == 1
        assert "numerical failure" in capsys.readouterr().err


class TestValidateCommand:
    def test_quick_suite_passes(self, capsys):
        assert run(["validate", "--quick"]) == 0
        out = capsys.readouterr().out
        assert "two_oracle_agreement" in out
        assert "closed_form_vs_oracle" in out
        assert "inversion_vs_simulation" in out
        assert "FAIL" not in out
