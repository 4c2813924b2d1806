import json
import re

import pytest

from relkit.budget import Budget
from relkit.catalog import bundled_catalog, parse_catalog, parse_set
from relkit.group import PermGroup
from relkit.relation import is_defined_by
from relkit.report import (
    CONFIRMED,
    REFUTED,
    TRUSTED,
    UNKNOWN,
    ClaimReport,
    Verifier,
    counts,
    format_records,
    format_text,
    verify_catalog,
    worker_count,
)
from relkit.setorbits import is_regular_set

SMALL = """\
[entry]
id = C5
degree = 5
gen = (1,2,3,4,5)
claim = order 5
claim = order 10
claim = no-regular-set
claim = regular-set [1,2]
claim = regular-set [1,9]
claim = regular-set-sizes 1..4
claim = not-rg
claim = orbit-size 2 5
claim = subgroups 2

[entry]
id = D5
degree = 5
gen = (1,2,3,4,5)
gen = (2,5)(3,4)
claim = defined-by [1,2]
claim = defined-by size 1
claim = rg
claim = conjugate C5

[entry]
id = C5p
degree = 6
claim = order 5
note = generators not printed

[entry]
id = BIG
degree = 22
gen = (1,2)
claim = defined-by [1,2]
claim = no-regular-set
"""


@pytest.fixture(scope="module")
def small():
    return parse_catalog(SMALL)


def verdicts(reports):
    return [(r.entry, r.claim, r.verdict) for r in reports]


def test_small_catalog_verdicts(small):
    got = verdicts(verify_catalog(small, workers=1))
    assert got == [
        ("C5", "order 5", CONFIRMED),
        ("C5", "order 10", REFUTED),
        ("C5", "no-regular-set", REFUTED),
        ("C5", "regular-set [1,2]", CONFIRMED),
        ("C5", "regular-set [1,9]", REFUTED),
        ("C5", "regular-set-sizes 1..4", CONFIRMED),
        ("C5", "not-rg", CONFIRMED),
        ("C5", "orbit-size 2 5", CONFIRMED),
        ("C5", "subgroups 2", CONFIRMED),
        ("D5", "defined-by [1,2]", CONFIRMED),
        ("D5", "defined-by size 1", REFUTED),
        ("D5", "rg", CONFIRMED),
        ("D5", "conjugate C5", REFUTED),
        ("C5p", "order 5", UNKNOWN),
        ("BIG", "defined-by [1,2]", TRUSTED),
        ("BIG", "no-regular-set", TRUSTED),
    ]


def test_refutations_carry_computed_values(small):
    reps = {(r.entry, r.claim): r for r in verify_catalog(small, workers=1)}
    assert reps["C5", "order 10"].value == "5"
    r = reps["C5", "no-regular-set"]
    assert r.value == "{1,2,3,4}" and r.details == "y=[1]"
    assert "outside" in reps["C5", "regular-set [1,9]"].value


def test_selection_keeps_catalog_order(small):
    got = verify_catalog(small, selected=["D5", "C5"], workers=1)
    assert [r.entry for r in got][:1] == ["C5"]
    assert {r.entry for r in got} == {"C5", "D5"}


def test_budget_refusal_becomes_unknown(small):
    got = verify_catalog(small, selected=["D5"], budget=Budget(max_degree_exact=4), workers=1)
    assert {r.verdict for r in got if r.claim.startswith("defined-by")} == {UNKNOWN}
    assert any("--max-degree-exact" in r.reason for r in got)


def test_records_are_json_in_fixed_field_order():
    r = ClaimReport("A", "order 5", CONFIRMED, elapsed=1.23456)
    assert list(json.loads(r.record())) == list(ClaimReport.FIELDS)
    assert json.loads(r.record(timings=True))["elapsed"] == 1.235


def test_text_report_layout(small):
    reports = verify_catalog(small, workers=1)
    text = format_text(reports)
    assert "TRUSTED (not recomputed)" in text
    main, trusted = text.split("TRUSTED (not recomputed)")
    assert "BIG" not in main and "BIG" in trusted
    c = counts(reports)
    assert text.rstrip().endswith(f"unknown {c['unknown']}  trusted {c['trusted']}")


def test_workers_from_environment(monkeypatch):
    monkeypatch.setenv("RELKIT_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("RELKIT_THREADS", "0")
    assert worker_count() >= 1


def test_parallel_output_is_byte_identical():
    entries = bundled_catalog()
    chosen = [e.id for e in entries if e.degree <= 9]
    one = format_records(verify_catalog(entries, chosen, workers=1))
    many = format_records(verify_catalog(entries, chosen, workers=3))
    assert one == many
    single = "".join(format_records(verify_catalog(entries, [i], workers=1)) for i in chosen)
    assert single == one


def test_witnesses_replay():
    entries = bundled_catalog()
    by_id = {e.id: e for e in entries}
    chosen = [e.id for e in entries if e.degree <= 9]
    replayed = 0
    for r in verify_catalog(entries, chosen, workers=1):
        if r.verdict != CONFIRMED:
            continue
        e = by_id[r.entry]
        G = PermGroup(e.permutations(), degree=e.degree)
        m = re.fullmatch(r"y=(\[[\d,]*\])", r.details)
        if m:
            assert is_regular_set(G, parse_set(m[1]).mask(e.degree))
            replayed += 1
        if r.claim.startswith("defined-by"):
            for part in r.details.split("; "):
                sets = part.split(":", 1)[-1].removeprefix("x=")
                seeds = [parse_set(s).mask(e.degree) for s in sets.split(";")]
                assert is_defined_by(G, seeds)
                replayed += 1
    assert replayed >= 10


def test_lemma_instances_for_g61():
    v = Verifier(bundled_catalog())
    e = v.by_id["G_6_1"]
    inst = list(v.lemma_instances(e))
    assert inst
