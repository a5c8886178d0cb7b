import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gammaeval import corpus
from gammaeval.records import IdentityRecord

ALL = corpus.names()


def test_corpus_contents():
    assert len(ALL) == 28
    for wanted in ("ebisu-221-1", "ebisu-132-quarter", "clausen-eb1", "cf-3f2-quarter", "cm-64", "cm-43",
                   "q-chern", "q-eq9", "q-eq10", "q-cw-cor10", "q-cc21", "q-rahman", "recurrence-g-quarter"):
        assert wanted in ALL


@pytest.mark.parametrize("name", ALL)
def test_json_round_trip(name):
    rec = corpus.load(name)
    again = IdentityRecord.from_json(json.loads(rec.dumps()))
    assert again == rec and again.to_json() == rec.to_json()
    assert rec.source and rec.status in ("certified", "derived", "failed")


@settings(max_examples=30)
@given(st.sampled_from(ALL), st.sampled_from(["certified", "derived", "failed", "unchecked"]))
def test_with_status_round_trip(name, status):
    rec = corpus.load(name).with_status(status)
    assert IdentityRecord.from_json(rec.dumps()) == rec


def test_bad_records():
    with pytest.raises(ValueError):
        IdentityRecord("mystery", "1", "1")
    with pytest.raises(ValueError):
        IdentityRecord("gamma-eval", "1", "1", status="maybe")


def test_resolve_forms(tmp_path):
    assert corpus.resolve("corpus:cm-64") == corpus.load("cm-64")
    assert corpus.resolve("cm-64") == corpus.load("cm-64")
    path = tmp_path / "r.json"
    path.write_text(corpus.load("cm-64").dumps())
    assert corpus.resolve(str(path)) == corpus.load("cm-64")
    with pytest.raises(corpus.UnknownEntry):
        corpus.resolve("corpus:nope")


def test_select_and_empty_match():
    assert [r.name for r in corpus.select("q-*", "certified")] == [
        "q-cc21", "q-chern", "q-cw-cor10", "q-eq10", "q-eq9", "q-rahman"]
    assert corpus.run("no-such-*") == []


def test_q_filter_rows_are_consistent():
    rows = corpus.run("q-*")
    assert [r.name for r in rows] == sorted(r.name for r in rows)
    assert all(r.consistent for r in rows)
    printed = {r.name: r for r in rows if r.expected == "failed"}
    assert set(printed) == {"q-cc21-printed", "q-rahman-printed"}
    assert all(r.outcome == "fail" and r.worst == "q^2" for r in printed.values())


@pytest.mark.slow
def test_full_corpus_consistent():
    rows = corpus.run(jobs=2)
    assert len(rows) == len(ALL)
    bad = [r.name for r in rows if not r.consistent]
    assert bad == []
    table = corpus.table(rows, timings=False)
    assert "unexpected" not in table
