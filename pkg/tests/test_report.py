import json
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from dealab import dea, report
from dealab.errors import InputError

import table2


def test_rank_reproduces_printed_order():
    assert [r.name for r in report.rank(table2.reports())] == table2.ORDER


def test_rank_from_reversed_input():
    got = [r.name for r in report.rank(table2.reports()[::-1])]
    # exact ties keep input order, so only the identical-score blocks flip
    tied_ccr = ["glove-50-linear", "tfidf-1000-linear"]
    tied_tfidf = ["tfidf-10000-linear", "tfidf-5000-linear", "tfidf-500-linear", "tfidf-15000-linear"]
    expected = list(table2.ORDER)
    expected[0:2] = tied_ccr[::-1]
    expected[4:8] = tied_tfidf[::-1]
    assert got == expected


def test_rank_empty_and_stable():
    assert report.rank([]) == []
    a, b = table2.reports()[4:6]
    assert report.rank([a, b]) == [a, b]
    assert report.rank([b, a]) == [b, a]


@settings(max_examples=50)
@given(st.permutations(range(len(table2.ROWS))))
def test_rank_is_idempotent_permutation(perm):
    reps = [table2.reports()[i] for i in perm]
    once = report.rank(reps)
    assert sorted(r.name for r in once) == sorted(table2.ORDER)
    assert report.rank(once) == once


def _row(name):
    body = report.render(report.rank(table2.reports()), "table").body
    return next(line for line in body.splitlines() if line.startswith(name))


def test_table_rows_match_printed_conventions():
    assert _row("glove-50-linear").endswith("1.000  1.000  1.000  +  +  →")
    assert _row("roberta-base, lr=1e-4").split()[-5:] == ["0.501", "1.000", "0.501", "+", "↓"]
    # only the BCC flag is set: it sits in the second flag column
    assert _row("roberta-base, lr=1e-4").endswith("0.501  1.000  0.501     +  ↓")
    assert _row("tfidf-500-linear").endswith("0.999  1.000  0.999")


def test_rts_hidden_for_non_bcc_efficient():
    r = table2.reports()[0]
    odd = replace(r, bcc_efficient=False)
    assert "→" not in report.render([odd], "table").body.splitlines()[2]


def test_csv_empty_is_header_only():
    body = report.render([], "csv").body
    assert body == ",".join(report.FIELDS) + "\n"


def test_csv_round_trip_at_display_precision():
    reps = table2.reports()
    back = report.parse_csv_report(report.render(reps, "csv").body)
    assert len(back) == len(reps)
    for rec, r in zip(back, reps):
        assert rec["name"] == r.name
        assert rec["theta_ccr"] == pytest.approx(round(r.theta_ccr, 3))
        assert rec["theta_bcc"] == pytest.approx(round(r.theta_bcc, 3))
        assert rec["scale_efficiency"] == pytest.approx(round(r.scale_efficiency, 3))
        assert rec["bcc_efficient"] == r.bcc_efficient
        assert rec["rts"] == (None if r.rts is None else r.rts.value)
        assert rec["reference_set_bcc"] == list(r.reference_set_bcc)


def test_json_schema(d1):
    records = json.loads(report.render(dea.analyze(d1), "json").body)
    assert [set(rec) for rec in records] == [set(report.FIELDS)] * 3
    assert records[2]["rts"] == "DRS" and records[1]["rts"] is None
    assert records[1]["reference_set_ccr"] == ["A"]


def test_unknown_format():
    with pytest.raises(InputError):
        report.render([], "xml")


def test_frontier_rendering(d2):
    f = dea.frontier2d(d2)
    assert json.loads(report.render_frontier(f, "json").body) == {
        "efficient": ["A", "B"],
        "weakly_efficient": ["C"],
        "enveloped": [],
    }
    assert "weakly_efficient: C" in report.render_frontier(f).body
