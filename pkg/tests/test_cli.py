import json
from fractions import Fraction

from stochgame.cli import main
from stochgame.gamefile import fixture_path

BAD_GAME = """states 1
actions1 1
actions2 1
reward 1 1 1 1/2
transition 1 1 1 1 99/100
"""

SLOW_SIGN_GAME = """states 1
actions1 2
actions2 2
reward 1 1 1 3/4
reward 1 1 2 1/4
reward 1 2 1 1/4
reward 1 2 2 1/2
transition 1 1 1 1 1
transition 1 1 2 1 1
transition 1 2 1 1 1
transition 1 2 2 1 1
"""


class TestDiscounted:
    def test_big_match(self, capsys):
        code = main(["discounted", "big_match", "--lambda", "1/4", "--precision", "10"])
        out = capsys.readouterr().out
        assert code == 0
        assert "value     1/2" in out

    def test_json_output(self, capsys):
        code = main(
            ["discounted", "big_match", "--lambda", "1/4", "--precision", "10", "--json"]
        )
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["value"] == "1/2"
        assert payload["command"] == "discounted"
        assert Fraction(payload["radius"]) <= Fraction(1, 2**10)
        assert payload["state"] == 1

    def test_digits_flag(self, capsys):
        code = main(
            ["discounted", "single_1x1", "--lambda", "1/2", "--precision", "8", "--digits", "4"]
        )
        assert code == 0
        assert "0.3333" in capsys.readouterr().out

    def test_explicit_file_path(self, capsys):
        code = main(
            ["discounted", str(fixture_path("single_mp")), "--lambda", "1/2", "--precision", "8"]
        )
        assert code == 0


class TestValue:
    def test_big_match(self, capsys):
        code = main(["value", "big_match", "--precision", "10", "--json"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["value"] == "1/2"
        assert payload["shallow_ladder_disagreements"] == []

    def test_one_state_game_reaches_matrix_value(self, capsys):
        code = main(["value", "single_mp", "--precision", "8", "--json"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert abs(Fraction(payload["value"]) - Fraction(1, 2)) <= Fraction(1, 2**8)

    def test_trace_flag(self, capsys):
        code = main(["value", "single_mp", "--precision", "6", "--trace"])
        assert code == 0
        assert "trace" in capsys.readouterr().out


class TestOracle:
    def test_values_with_exactness_flag(self, capsys):
        code = main(["oracle", "big_match", "--lambda", "1/4", "--tol", "1/4096"])
        out = capsys.readouterr().out
        assert code == 0
        assert "state 1: 1/2" in out
        assert "exact fixed point: yes" in out

    def test_json(self, capsys):
        code = main(["oracle", "cycle_mdp", "--lambda", "1/2", "--tol", "1/1024", "--json"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["values"] == ["2/3", "1/3"]
        assert payload["exact_fixed_point"] is True


class TestCheck:
    def test_fixture_passes(self, capsys):
        code = main(["check", "two_state_2x2"])
        out = capsys.readouterr().out
        assert code == 0
        assert "FAIL" not in out
        assert "kronecker-equivalence" in out

    def test_absorbing_fixture_runs_identity(self, capsys):
        code = main(["check", "absorbing_mix", "--json"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        outcome = {o["name"]: o for o in payload["outcomes"]}
        assert outcome["absorbing-identity"]["passed"]
        assert outcome["absorbing-identity"]["detail"] == ""


class TestInfo:
    def test_summary(self, capsys):
        code = main(["info", "big_match"])
        out = capsys.readouterr().out
        assert code == 0
        assert "states: 3" in out
        assert "absorbing: True" in out

    def test_list_fixtures(self, capsys):
        code = main(["info", "--list-fixtures"])
        assert code == 0
        assert "big_match" in capsys.readouterr().out


class TestExitCodes:
    def test_validation_error_on_missing_file(self, capsys):
        code = main(["info", "no_such_game_anywhere"])
        assert code == 2
        assert "error" in capsys.readouterr().err

    def test_validation_error_on_bad_document(self, tmp_path, capsys):
        path = tmp_path / "bad.game"
        path.write_text(BAD_GAME)
        code = main(["discounted", str(path), "--lambda", "1/2"])
        assert code == 2
        assert "99/100" in capsys.readouterr().err

    def test_resource_cap_exit(self, capsys):
        code = main(
            ["discounted", "single_mp", "--lambda", "1/2", "--max-entries", "3"]
        )
        assert code == 3
        assert "cap" in capsys.readouterr().err

    def test_undecided_sign_exit(self, tmp_path, capsys):
        path = tmp_path / "slow.game"
        path.write_text(SLOW_SIGN_GAME)
        code = main(["value", str(path), "--precision", "4", "--anchor-cap", "2"])
        assert code == 4
        assert "anchor" in capsys.readouterr().err

    def test_bad_lambda_is_validation_error(self, capsys):
        code = main(["discounted", "single_mp", "--lambda", "3/2"])
        assert code == 2


def test_oracle_on_inexact_game(capsys):
    code = main(["oracle", "two_state_3x3", "--lambda", "1/4", "--tol", "1/65536", "--json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["values"]) == 2
    assert len(payload["decimals"]) == 2
