import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cbr import samples
from cbr.errors import SizeCapExceeded
from cbr.identification import minimal_representation
from cbr.oracle import (
    ClassificationProfile,
    ModelFlavor,
    RationaleKind,
    SweepId,
    SweepReport,
    choice_function_at,
    choice_function_count,
    classify,
    enumerate_choice_functions,
    enumerate_rationales,
    rationale_rows,
    representable,
    representation_table,
    representations,
    sweep,
)
from cbr.relations import BinaryRelation, rows_asymmetric, rows_complete, rows_transitive

from .conftest import choice_functions


def brute_count(n, keep):
    """Filter every irreflexive relation on n points (independent of the product enumeration)."""
    off = [(a, b) for a in range(n) for b in range(n) if a != b]
    total = 0
    for code in range(1 << len(off)):
        rows = [0] * n
        for i, (a, b) in enumerate(off):
            if code >> i & 1:
                rows[a] |= 1 << b
        total += keep(tuple(rows))
    return total


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_rationale_counts_match_brute_force(n):
    po = lambda r: rows_asymmetric(r) and rows_transitive(r)  # noqa: E731
    to = lambda r: rows_asymmetric(r) and rows_complete(r)  # noqa: E731
    assert len(rationale_rows(n, RationaleKind.PARTIAL_ORDER)) == brute_count(n, po)
    assert len(rationale_rows(n, RationaleKind.TOURNAMENT)) == brute_count(n, to)
    assert len(rationale_rows(n, RationaleKind.LINEAR_ORDER)) == brute_count(n, lambda r: po(r) and to(r))
    assert len(rationale_rows(n, RationaleKind.ASYMMETRIC)) == brute_count(n, rows_asymmetric)


def test_rationale_counts():
    assert [len(rationale_rows(n, "PartialOrder")) for n in (3, 4)] == [19, 219]
    assert [len(rationale_rows(n, "Tournament")) for n in (3, 4)] == [8, 64]
    assert [len(rationale_rows(n, "LinearOrder")) for n in (3, 4)] == [6, 24]
    assert len(rationale_rows(5, "LinearOrder")) == 120


def test_rationales_are_distinct_relations():
    rels = list(enumerate_rationales(3, RationaleKind.PARTIAL_ORDER))
    assert len(set(rels)) == len(rels) == 19
    assert all(isinstance(r, BinaryRelation) for r in rels)


def test_size_caps():
    with pytest.raises(SizeCapExceeded):
        rationale_rows(6, RationaleKind.TOURNAMENT)
    with pytest.raises(SizeCapExceeded):
        list(enumerate_choice_functions(5))
    with pytest.raises(SizeCapExceeded):
        sweep(5, SweepId.THEOREM1)
    with pytest.raises(SizeCapExceeded):
        classify(samples.rational("abcde"))


def test_choice_function_counts():
    assert [choice_function_count(n) for n in (2, 3, 4)] == [2, 24, 20736]
    assert len(list(enumerate_choice_functions(3))) == 24
    assert len(set(enumerate_choice_functions(3))) == 24


@given(st.integers(0, 20735))
def test_indexing_matches_enumeration(i):
    assert choice_function_at(4, i) == next(enumerate_choice_functions(4, i, i + 1))


@pytest.mark.parametrize("flavor", list(ModelFlavor))
def test_pruned_search_matches_table_n3(flavor):
    table = representation_table(3, flavor)
    for C in enumerate_choice_functions(3):
        got = representations(C, flavor, cap=None)
        want = table.get(C.table, [])
        assert sorted((p.first.rows, p.second.rows) for p in got.pairs) == sorted(want)
        assert got.count == len(want)


@settings(max_examples=40)
@given(st.integers(0, 20735), st.sampled_from([ModelFlavor.CBR, ModelFlavor.TCBR, ModelFlavor.TSM, ModelFlavor.EPH]))
def test_pruned_search_matches_table_n4(i, flavor):
    C = choice_function_at(4, i)
    want = representation_table(4, flavor).get(C.table, [])
    assert representations(C, flavor, cap=None).count == len(want)


def test_frozen_population_counts():
    assert len(representation_table(3, ModelFlavor.CBR)) == 18
    assert len(representation_table(4, ModelFlavor.CBR)) == 504
    assert len(representation_table(4, ModelFlavor.TCBR)) == 504
    assert len(representation_table(3, ModelFlavor.RSM)) == 12
    assert len(representation_table(3, ModelFlavor.EPH)) == 12
    assert len(representation_table(4, ModelFlavor.WARP_RATIONAL)) == 24


def test_representations_examples():
    C = samples.mixed_reversals()
    found = representations(C, ModelFlavor.CBR, cap=None)
    assert found.count == 12
    r_min = minimal_representation(C)[0]
    assert all(r_min <= p.first for p in found.pairs)
    assert representations(samples.breaks_rwarp()).count == 0
    R = samples.rational("xywz")
    L = BinaryRelation.linear_order(R.universe, "xywz")
    assert any(len(p.first) == 0 and p.second == L for p in representations(R, cap=None).pairs)


def test_representation_cap_keeps_exact_count():
    found = representations(samples.mixed_reversals(), cap=3)
    assert len(found.pairs) == 3 and found.count == 12 and found.capped


def test_rsm_search_capped_at_four():
    with pytest.raises(SizeCapExceeded):
        representable(samples.rational("abcde"), ModelFlavor.RSM)


def test_classify_examples():
    prof = classify(samples.mixed_reversals())
    assert prof.flags[ModelFlavor.CBR] and not prof.flags[ModelFlavor.RSM]
    assert prof.disagreements == []
    assert prof.reversals["weak"] == 1
    assert all(classify(samples.rational("zyxw")).flags.values())
    assert not classify(samples.breaks_nc()).flags[ModelFlavor.CBR]
    again = ClassificationProfile.from_dict(json.loads(json.dumps(prof.to_dict())))
    assert again.to_dict() == prof.to_dict()


@given(choice_functions(min_n=2, max_n=4))
def test_classify_lattice(C):
    f = classify(C).flags
    if f[ModelFlavor.WARP_RATIONAL]:
        assert all(f.values())
    if f[ModelFlavor.TCBR]:
        assert f[ModelFlavor.CBR]
    if f[ModelFlavor.TSM]:
        assert f[ModelFlavor.RSM]


def test_sweep_report_round_trip():
    rep = sweep(3, SweepId.WARP)
    assert rep.population == 24 and rep.counts["warp"] == 6 and rep.ok
    again = SweepReport.from_dict(json.loads(rep.to_json()))
    assert again.to_dict() == rep.to_dict()
    assert set(rep.to_dict()) == {"sweep", "n", "population", "counterexamples", "counts", "runtime_ms"}


@pytest.mark.parametrize("check", [SweepId.THEOREM1, SweepId.IDENCOR, SweepId.DBL])
def test_sweep_deterministic_across_threads(check):
    one = sweep(3, check, threads=1).to_dict(include_runtime=False)
    two = sweep(3, check, threads=3).to_dict(include_runtime=False)
    assert json.dumps(one) == json.dumps(two)


def test_sampled_sweep_seeded():
    a = sweep(4, SweepId.IDEN2, seed=7, samples=300).to_dict(include_runtime=False)
    b = sweep(4, SweepId.IDEN2, seed=7, samples=300).to_dict(include_runtime=False)
    assert a == b and a["population"] == 300


@pytest.mark.parametrize("check", list(SweepId))
def test_every_sweep_clean_at_three(check):
    rep = sweep(3, check)
    assert rep.counterexamples == [] and rep.counts["counterexamples"] == 0


@pytest.mark.parametrize(
    "check", [SweepId.SMALL_MENU, SweepId.IDENCOR, SweepId.RMAX, SweepId.SYNTH, SweepId.WARP, SweepId.LATTICE]
)
def test_supporting_sweeps_clean_at_four(check):
    rep = sweep(4, check)
    assert rep.counts["counterexamples"] == 0, rep.counterexamples[:1]


def test_lattice_records_eph_profile():
    c = sweep(4, SweepId.LATTICE).counts
    assert c["eph_failing_nbc"] == 0
    assert c["eph"] >= c["warp_rational"] == 24
