import json

import pytest

from brouwerlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bn_json(capsys):
    code, out, _ = run(capsys, "bn", "2", "--json")
    assert code == 0 and json.loads(out)["carrier_size"] == 5


def test_json_flag_before_subcommand(capsys):
    code, out, _ = run(capsys, "--json", "bn", "1")
    assert json.loads(out)["carrier_size"] == 2


def test_check_refutes_weak_lem(capsys):
    code, out, _ = run(capsys, "--json", "check", "~p | ~~p", "--algebra", "bn:2")
    rep = json.loads(out)
    assert code == 1 and rep["status"] == "refuted"
    assert rep["countermodel"]["valuation"] == {"p": ["{1}"]}


def test_check_valid_in_factor(capsys):
    code, out, _ = run(capsys, "--json", "check", "~p | ~~p", "--algebra", "bn:2", "--factor", "U1")
    assert code == 0 and json.loads(out)["carrier_size"] == 3


def test_check_poset_and_degrees_files(capsys, tmp_path):
    poset = tmp_path / "v.txt"
    poset.write_text("elements: r x y\ncovers: r<x r<y\n")
    code, out, _ = run(capsys, "--json", "check", "~p | ~~p", "--algebra", f"poset:{poset}")
    assert code == 1
    pres = tmp_path / "d.txt"
    pres.write_text("generators: a b\njump: a b\n")
    code, out, _ = run(capsys, "--json", "check", "~p | ~~p", "--algebra", f"degrees:{pres}")
    assert code == 0 and json.loads(out)["status"] == "valid"


def test_countermodel_and_oracle(capsys):
    code, out, _ = run(capsys, "--json", "countermodel", "p | ~p", "--max-n", "2")
    assert code == 1 and set(json.loads(out)["countermodel"]) == {"n", "x", "valuation", "value"}
    code, out, _ = run(capsys, "--json", "countermodel", "p -> p", "--max-n", "2")
    assert code == 0 and json.loads(out)["status"] == "not_found_up_to_bound"
    code, out, _ = run(capsys, "--json", "oracle", "~p | ~~p", "--max-worlds", "3")
    assert code == 1 and json.loads(out)["kripke_countermodel"]["worlds"] == 3


def test_witness_example(capsys):
    code, out, _ = run(capsys, "--json", "witness", "--n", "2", "--k", "1", "--X1", "1",
                       "--formula", "p | ~p")
    rep = json.loads(out)
    assert code == 1
    assert rep["equation_equal"] and rep["formula_status"] == "refuted"
    assert rep["isomorphic_to_bn"] and rep["countermodel"]["gamma_ok"]


def test_witness_checks_only(capsys):
    code, out, _ = run(capsys, "--json", "witness", "--n", "2", "--k", "2", "--X1", "1", "--X2", "1,2")
    assert code == 0 and json.loads(out)["status"] == "checked"


def test_output_is_deterministic(capsys):
    argv = ["--json", "witness", "--n", "2", "--k", "1", "--X1", "", "--formula", "~p | ~~p"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


@pytest.mark.parametrize("argv, flag", [
    (["witness", "--n", "2", "--k", "2", "--X1", "1"], "--X2"),
    (["witness", "--n", "2", "--k", "1", "--X1", "3"], "--X"),
    (["witness", "--n", "2", "--k", "1", "--X1", "x"], "--X1"),
    (["check", "p &", "--algebra", "bn:2"], "FORMULA"),
    (["check", "p", "--algebra", "bn:two"], "--algebra"),
    (["check", "p", "--algebra", "bn:2", "--factor", "U9"], "--factor"),
])
def test_usage_errors(capsys, argv, flag):
    code, _, err = run(capsys, *argv)
    assert code == 2 and flag in err


def test_unknown_flag(capsys):
    with pytest.raises(SystemExit) as info:
        main(["bn", "2", "--bogus"])
    assert info.value.code == 2
    assert "--bogus" in capsys.readouterr().err
