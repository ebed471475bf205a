import json

import pytest

from membrane.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def as_json(out):
    return json.loads(out)


@pytest.mark.parametrize("m,n,count", [(1, 1, 2), (0, 3, 1), (2, 2, 6), (3, 2, 10)])
def test_shuffle_counts(capsys, m, n, count):
    code, out, _ = run(capsys, "shuffle", str(m), str(n), "--json")
    assert code == 0 and as_json(out)["count"] == count


def test_shuffle_human_and_restricted(capsys):
    code, out, _ = run(capsys, "shuffle", "2", "2", "--restricted", "1", "1")
    assert code == 0 and out.strip().endswith("count: 4")
    code, out, _ = run(capsys, "shuffle", "2", "1", "--sigma", "[2,1]", "--tau", "[1]", "--json")
    assert as_json(out)["shuffles"] == [[2, 1, 3], [2, 3, 1], [3, 2, 1]]


@pytest.mark.parametrize("bad", [["shuffle", "2", "2", "--sigma", "[1,1]"], ["shuffle", "2", "2", "--sigma", "oops"], ["shuffle", "-1", "2"]])
def test_shuffle_usage_errors(capsys, bad):
    code, _, err = run(capsys, *bad)
    assert code == 2 and json.loads(err)["error"] == "usage"


def test_unknown_command_and_suite(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "verify", "nonsense")[0] == 2


def test_verify_hopf_vacuous_and_small(capsys):
    code, out, _ = run(capsys, "verify", "hopf", "--max-degree", "0")
    assert code == 0 and out.count("PASS") == 5
    code, out, _ = run(capsys, "verify", "hopf", "--max-degree", "3", "--alphabet", "2", "--json")
    lines = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and all(r["passed"] for r in lines)


@pytest.mark.parametrize("suite", ["thm15", "group-like", "lemma21"])
def test_verify_exact_suites_pass(capsys, suite):
    code, out, _ = run(capsys, "verify", suite, "--max-degree", "2", "--json")
    assert code == 0
    for line in out.splitlines():
        assert json.loads(line)["max_deviation"] == 0


def test_verify_cocycle_control_passes_and_perturbed_fails(capsys):
    assert run(capsys, "verify", "cocycle", "--epsilon", "0")[0] == 0
    code, out, _ = run(capsys, "verify", "cocycle", "--json")
    assert code == 1 and json.loads(out)["max_deviation"] > 1e-5


def test_verify_homotopy_reports_failure(capsys):
    code, out, _ = run(capsys, "verify", "homotopy", "--json")
    rep = json.loads(out)
    assert code == 1 and rep["checked"] == 36
    assert rep["max_deviation"] == pytest.approx(0.1 / 360, rel=1e-8)


def test_integrate_examples(tmp_path, capsys):
    spec = tmp_path / "c.json"
    spec.write_text(json.dumps({"forms": ["one", "one"]}))
    code, out, _ = run(capsys, "integrate", str(spec), "--json")
    assert code == 0 and as_json(out)["value"] == "1/4"
    spec.write_text(json.dumps({"forms": ["one"], "rectangle": [0, 2, 0, 3]}))
    assert as_json(run(capsys, "integrate", str(spec), "--json")[1])["value"] == "6"


def test_integrate_gauss_with_oracle(tmp_path, capsys):
    spec = tmp_path / "p.json"
    spec.write_text(json.dumps({"forms": [{"poly": [[1, 0, 0], [1, 1, 0]]}, "y", {"poly": [[1, 1, 1], ["-1/2", 0, 0]]}]}))
    code, out, _ = run(capsys, "integrate", str(spec), "--sx", "[2,1,3]", "--sy", "[3,1,2]", "--method", "gauss", "--oracle", "--json")
    doc = as_json(out)
    assert code == 0 and doc["oracle"] == "-133/14400" and abs(doc["difference"]) < 1e-15


def test_integrate_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "integrate", str(bad))[0] == 2
    assert run(capsys, "integrate", str(tmp_path / "missing.json"))[0] == 2
    sing = tmp_path / "s.json"
    sing.write_text(json.dumps({"forms": ["singular", "one"]}))
    assert run(capsys, "integrate", str(sing))[0] == 3
    ev = tmp_path / "e.json"
    ev.write_text(json.dumps({"forms": ["cos"]}))
    assert run(capsys, "integrate", str(ev), "--method", "exact")[0] == 2


def test_zeta_examples(capsys):
    doc = as_json(run(capsys, "zeta", "--field", "Q", "--s", "2", "--json")[1])
    assert doc["value"] == pytest.approx(1.0471976, abs=1e-7)
    assert doc["normalization"] == "s/2" and "runtime_ms" not in doc and doc["truncation"]["t_max"] == 50.0
    doc = as_json(run(capsys, "zeta", "--field", "Qi", "--s", "2", "--json")[1])
    assert doc["value"] == pytest.approx(0.6106438, abs=1e-7)
    doc = as_json(run(capsys, "zeta", "--field", "Q:sqrt5", "--s", "2", "--membrane", "--json")[1])
    assert doc["value"] == pytest.approx(0.117703, abs=1e-5)


def test_zeta_multiple_and_timing(capsys):
    doc = as_json(run(capsys, "zeta", "--s", "4", "--s", "2", "--sigma1", "[2,1]", "--json", "--timing")[1])
    assert doc["permutations"]["sigma1"] == [2, 1] and doc["runtime_ms"] >= 0


@pytest.mark.parametrize(
    "argv,code",
    [
        (["zeta", "--s", "1"], 3),
        (["zeta", "--s", "2", "--radius", "3"], 4),
        (["zeta", "--s", "2", "--tmax", "2"], 4),
        (["zeta", "--field", "Q:sqrt10"], 2),
        (["zeta", "--field", "Q", "--membrane"], 2),
        (["zeta", "--s", "2", "--s", "3", "--sigma2", "[1,2]"], 2),
        (["zeta", "--s", "2", "--s", "3", "--method", "mc"], 2),
    ],
)
def test_zeta_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_accuracy_error_carries_diagnostics(capsys):
    code, _, err = run(capsys, "zeta", "--s", "2", "--radius", "3")
    doc = json.loads(err)
    assert code == 4 and doc["diagnostics"]["tail_bounds"]["lattice"] > 1


def test_global_flags_before_subcommand(capsys):
    code, out, _ = run(capsys, "--json", "shuffle", "1", "1")
    assert code == 0 and as_json(out)["count"] == 2


def test_same_seed_same_output(capsys):
    a = run(capsys, "zeta", "--s", "3", "--method", "mc", "--samples", "20000", "--seed", "5", "--json")[1]
    b = run(capsys, "zeta", "--s", "3", "--method", "mc", "--samples", "20000", "--seed", "5", "--json")[1]
    c = run(capsys, "zeta", "--s", "3", "--method", "mc", "--samples", "20000", "--seed", "6", "--json")[1]
    assert a == b and a != c
