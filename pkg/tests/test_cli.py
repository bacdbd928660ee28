"""End-to-end coverage of the command-line interface."""

import json

import pytest

from splitqm import cli

S3_MUL = [
    [0, 1, 2, 3, 4, 5],
    [1, 2, 0, 4, 5, 3],
    [2, 0, 1, 5, 3, 4],
    [3, 5, 4, 0, 2, 1],
    [4, 3, 5, 1, 0, 2],
    [5, 4, 3, 2, 1, 0],
]

BASE_CONFIG = {
    "schema": 1,
    "splitting": {"A": {"type": "integer"}, "B": {"type": "integer"}},
    "maps": {
        "sign": {"A": {"sign": "1"}, "B": {"sign": "1"}},
        "weights": {"A": {"support": [[1, "1"]]}, "B": {"support": [[2, "3/2"]]}},
    },
    "sampler": {"seed": 7, "samples": 300, "length_bound": 5, "exponent_bound": 4},
}


@pytest.fixture
def config_path(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(BASE_CONFIG))
    return str(path)


def _write(tmp_path, payload, name="custom.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def test_eval_prints_the_split_value(config_path, capsys):
    assert cli.main(["eval", "--config", config_path, "sign", "a b^-2 a^3 b"]) == 0
    assert capsys.readouterr().out == "2\n"
    assert cli.main(["eval", "--config", config_path, "sign", ""]) == 0
    assert capsys.readouterr().out == "0\n"


def test_homogenize_drops_bounded_terms(config_path, capsys):
    assert cli.main(["homogenize", "--config", config_path, "weights", "a^3"]) == 0
    assert capsys.readouterr().out == "0\n"
    assert cli.main(["homogenize", "--config", config_path, "weights", "a b"]) == 0
    assert capsys.readouterr().out.strip() != ""


def test_malformed_words_are_usage_errors(config_path, capsys):
    assert cli.main(["eval", "--config", config_path, "sign", "a q"]) == 2
    err = capsys.readouterr().err
    assert "word error" in err
    assert "(at position 2)" in err


def test_unknown_map_is_a_config_error(config_path, capsys):
    assert cli.main(["defect", "--config", config_path, "nope"]) == 2
    assert "no such map" in capsys.readouterr().err


def test_missing_config_is_a_parser_error(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["eval", "sign", "a"])
    assert info.value.code == 2
    assert "requires --config" in capsys.readouterr().err


def test_unknown_subcommand_is_a_parser_error(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["frobnicate"])
    assert info.value.code == 2


def test_defect_report_is_deterministic(config_path, capsys):
    argv = ["defect", "--config", config_path, "weights"]
    assert cli.main(argv) == 0
    first = capsys.readouterr().out
    assert cli.main(argv) == 0
    assert capsys.readouterr().out == first
    assert "factor defect A: 2" in first
    assert "factor defect B: 3" in first
    assert "split defect: 3" in first
    assert "gromov norm: 3" in first
    assert "doubling witness: gap 6 (attained)" in first


def test_defect_report_in_json(config_path, capsys):
    assert cli.main(["defect", "--config", config_path, "weights", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["split defect"] == "3"
    assert payload["factor defect A"] == "2"


def test_seed_override_keeps_exact_rows(config_path, capsys):
    outputs = []
    for seed in ("123", "124"):
        assert cli.main(["defect", "--config", config_path, "weights", "--seed", seed]) == 0
        outputs.append(capsys.readouterr().out)
    for out in outputs:
        assert "split defect: 3" in out


def test_decompose_reports_zero_residual(config_path, capsys):
    assert cli.main(["decompose", "--config", config_path, "weights"]) == 0
    out = capsys.readouterr().out
    assert "max residual: 0" in out
    assert "words checked: 300" in out


def test_decompose_rejects_unbounded_maps(config_path, capsys):
    assert cli.main(["decompose", "--config", config_path, "sign"]) == 2
    assert "usage error" in capsys.readouterr().err


def test_tau_check_reports_a_witness(config_path, capsys):
    assert cli.main(["tau-check", "--config", config_path, "weights", "3", "--samples", "50"]) == 0
    out = capsys.readouterr().out
    assert "condition holds: False" in out
    assert "violation witness: '" in out


def test_qc_growth_runs_without_a_config(capsys):
    assert cli.main(["qc-growth", "--depth", "4"]) == 0
    out = capsys.readouterr().out
    assert "ladder p=2 norms: 1 2 3 4" in out
    assert "ladder p=3 norms (foreign prime): 0 0 0 0" in out
    assert "staircase norms: 1 2 3 4" in out


def test_defect_space_report(capsys):
    assert cli.main(["defect-space"]) == 0
    out = capsys.readouterr().out
    assert "vectors checked" in out
    assert "slack" in out


def test_qrep_report(capsys):
    assert cli.main(["qrep"]) == 0
    out = capsys.readouterr().out
    assert "small-subgroup check" in out or "delta" in out


def test_rademacher_report(capsys):
    assert cli.main(["rademacher"]) == 0
    first = capsys.readouterr().out
    assert "split defect: 3" in first
    assert "gromov norm: 3" in first
    assert cli.main(["rademacher"]) == 0
    assert capsys.readouterr().out == first


def test_selftest_subset_without_config(capsys):
    assert cli.main(["selftest", "--only", "2,13"]) == 0
    out = capsys.readouterr().out
    assert "[ 2] PASS" in out
    assert "[13] PASS" in out
    assert "[ 1]" not in out
    assert "[cfg] SKIP config map checks (no config supplied)" in out


def test_selftest_negative_control_fails_criterion_9(capsys):
    assert cli.main(["selftest", "--only", "9", "--debug-literal-convention"]) == 1
    out = capsys.readouterr().out
    assert "[ 9] FAIL" in out


def test_selftest_runs_config_map_checks(config_path, capsys):
    assert cli.main(["selftest", "--only", "13", "--config", config_path]) == 0
    out = capsys.readouterr().out
    assert "[13] PASS" in out
    assert "[cfg] PASS map 'sign'" in out
    assert "[cfg] PASS map 'weights'" in out


def test_table_factor_config(tmp_path, capsys):
    payload = {
        "schema": 1,
        "splitting": {
            "A": {"type": "table", "mul": S3_MUL},
            "B": {"type": "cyclic", "n": 3},
        },
        "maps": {
            "weights": {"A": {"support": [[1, "1"]]}, "B": {"support": [[1, "1/2"]]}},
        },
        "sampler": {"seed": 7, "samples": 100, "length_bound": 4, "exponent_bound": 2},
    }
    path = _write(tmp_path, payload)
    assert cli.main(["eval", "--config", path, "weights", "A[1] b^2"]) == 0
    assert capsys.readouterr().out == "1/2\n"
    assert cli.main(["defect", "--config", path, "weights"]) == 0


def test_broken_table_factor_is_a_config_error(tmp_path, capsys):
    rows = [list(row) for row in S3_MUL]
    rows[3][3] = 1  # not a Latin square any more
    payload = {
        "schema": 1,
        "splitting": {
            "A": {"type": "table", "mul": rows},
            "B": {"type": "cyclic", "n": 3},
        },
        "maps": {},
        "sampler": {},
    }
    path = _write(tmp_path, payload)
    assert cli.main(["defect-space", "--config", path]) == 2
    assert "config error: splitting.A" in capsys.readouterr().err


@pytest.mark.parametrize(
    "mutate, fragment",
    [
        (lambda c: c.pop("schema"), "schema"),
        (lambda c: c["maps"]["sign"]["A"].update({"sign": "x/y"}), "maps.sign.A.sign"),
        (lambda c: c["maps"]["sign"]["A"].update({"weird": 1}), "maps.sign.A.weird"),
        (
            lambda c: c["maps"]["weights"]["A"].update({"support": [[1, "1"], [-1, "1"]]}),
            "conflicting value",
        ),
        (lambda c: c["sampler"].update({"samples": "many"}), "sampler.samples"),
    ],
)
def test_config_errors_carry_their_json_path(tmp_path, capsys, mutate, fragment):
    payload = json.loads(json.dumps(BASE_CONFIG))
    mutate(payload)
    path = _write(tmp_path, payload)
    assert cli.main(["eval", "--config", path, "sign", "a"]) == 2
    err = capsys.readouterr().err
    assert "config error" in err
    assert fragment in err


def test_invalid_json_is_a_config_error(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert cli.main(["eval", "--config", str(path), "sign", "a"]) == 2
    assert "invalid JSON" in capsys.readouterr().err
