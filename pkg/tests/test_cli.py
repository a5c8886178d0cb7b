import io
import json

import pytest

from gammaeval.cli import EXIT_FAILED, EXIT_OK, EXIT_UNSOLVED, EXIT_USAGE, main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_find_221_json():
    code, out, _ = run("find", "--shift", "2,2,1", "--json")
    assert code == EXIT_OK
    fams = json.loads(out)
    assert {(f["z0"], f["b0"], f["c0"]) for f in fams} == {("-1/8", "-1/3", "2/3"), ("-1/8", "1/3", "5/6")}


def test_find_degenerate_shift():
    code, out, _ = run("find", "--shift", "0,0,0")
    assert code == EXIT_UNSOLVED and "degenerate shift" in out


def test_find_negative_components_and_global_flags_anywhere():
    code, out, _ = run("--json", "find", "--shift", "-1,3,2")
    assert code == EXIT_OK and len(json.loads(out)) == 8
    code2, out2, _ = run("find", "--shift", "-1,3,2", "--json")
    assert out2 == out


def test_verify_corpus_entry():
    code, out, _ = run("verify", "--identity", "corpus:ebisu-221-1", "--prec", "200")
    assert code == EXIT_OK and "status: numeric" in out


def test_verify_known_false_recurrence_fails():
    code, _, _ = run("verify", "--identity", "corpus:recurrence-g-quarter-printed")
    assert code == EXIT_FAILED


def test_json_is_deterministic():
    first = run("verify", "--identity", "corpus:cm-64", "--json")[1]
    assert first == run("verify", "--identity", "corpus:cm-64", "--json")[1]
    json.loads(first)


def test_qverify_builtin_and_specialized():
    code, out, _ = run("qverify", "--identity", "q-chern", "--order", "20", "--json")
    assert code == EXIT_OK and json.loads(out)["status"] == "exact"
    assert run("qverify", "--identity", "q-cc21", "--order", "15", "--specialize", "b=1/3")[0] == EXIT_OK
    assert run("qverify", "--identity", "corpus:q-rahman-printed", "--order", "10")[0] == EXIT_FAILED


def test_closed_form():
    code, out, _ = run("closed-form", "--shift", "2,2,1", "--family", "2", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["form"]["R0"] == "16/27"


def test_closed_form_with_clausen():
    code, out, _ = run("closed-form", "--shift", "-1,3,2", "--family", "7", "--clausen", "--json")
    data = json.loads(out)
    assert code == EXIT_OK and data["family"]["z0"] == "1/4"
    assert data["clausen"]["certification"]["status"] == "numeric"


def test_derive_with_negative_argument():
    code, out, _ = run("derive", "--shift", "2,2,1", "--family", "0,1/3,5/6", "--z", "-1/8", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["admissibility"]["t^2"] == "8*z + 1"


def test_recurrence_subcommand():
    code, out, _ = run("recurrence", "--upper", "1/2,t,1-t", "--lower", "1,1/2+t", "--z", "1/4", "--json")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["params"]["order"] == 2 and data["params"]["infeasible_orders"] == [1]


def test_recurrence_not_found_is_diagnostic():
    code, _, _ = run("recurrence", "--upper", "1/2,t,1-t", "--lower", "1,1/2+t", "--z", "1/4", "--max-order", "1")
    assert code == EXIT_UNSOLVED


def test_corpus_subcommand():
    code, out, _ = run("corpus", "--filter", "q-*", "--json")
    assert code == EXIT_OK and len(json.loads(out)) == 8
    code, out, _ = run("corpus", "--filter", "nothing-*")
    assert code == EXIT_OK and "0 entries" in out
    code, out, _ = run("corpus", "--list", "--status", "failed")
    assert code == EXIT_OK and "recurrence-g-quarter-printed" in out


@pytest.mark.parametrize("argv", [
    [],
    ["find"],
    ["find", "--shift", "1,2"],
    ["verify", "--identity", "corpus:nope"],
    ["qverify", "--identity", "q-chern", "--specialize", "x=1"],
    ["closed-form", "--shift", "2,2,1", "--family", "9"],
    ["corpus", "--prec", "8"],
])
def test_usage_errors(argv):
    code, _, err = run(*argv)
    assert code == EXIT_USAGE and "usage error" in err


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("GAMMAEVAL_ORDER", "12")
    code, out, _ = run("qverify", "--identity", "q-eq9", "--json")
    assert code == EXIT_OK and json.loads(out)["order"] == 12
    monkeypatch.setenv("GAMMAEVAL_PREC", "lots")
    assert run("verify", "--identity", "corpus:cm-64")[0] == EXIT_USAGE


def test_version_and_help():
    assert run("--version")[0] == EXIT_OK
    assert run("find", "--help")[0] == EXIT_OK
