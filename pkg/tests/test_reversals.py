import pytest
from hypothesis import given

from cbr import samples
from cbr.choice import ChoiceFunction
from cbr.errors import NotDecomposable
from cbr.relations import closure_rows
from cbr.reversals import (
    Kind,
    Mode,
    check_exclusivity,
    check_smp,
    decompose_double,
    double_reversal_pairs,
    find_reversals,
    has_double_reversal,
    has_single_reversal,
    revealed_r,
    revealed_rows,
    reversal_summary,
)

from .conftest import cbr_functions


def described(C):
    return [r.describe(C.universe) for r in find_reversals(C)]


def test_mixed_reversals():
    C = samples.mixed_reversals()
    assert described(C) == [
        "strong (xy) reversal due to z on {x,y}",
        "weak (zx) reversal due to w on {x,z}",
    ]


def test_never_chosen_fixture_reversals():
    C = samples.breaks_nc()
    got = {(r.kind, r.x, r.y, r.trigger) for r in find_reversals(C)}
    y, x, z = (C.universe.index(a) for a in "yxz")
    assert got == {(Kind.WEAK, y, x, z), (Kind.STRONG, z, x, y)}


def test_rational_has_none():
    C = samples.rational("wxyz")
    assert find_reversals(C) == []
    assert len(revealed_r(C)) == 0
    n = C.size
    assert all(has_single_reversal(C, a, b) is None for a in range(n) for b in range(n) if a != b)


@pytest.mark.parametrize("mode", list(Mode))
def test_revealed_relation_of_mixed(mode):
    assert revealed_r(samples.mixed_reversals(), mode).pairs() == [("x", "w"), ("z", "x")]


def test_double_reversal_chain():
    C = samples.mixed_reversals()
    u = C.universe
    pair, mid, top = has_double_reversal(C, "x", "y")
    assert (u.fmt(pair), u.fmt(mid), u.fmt(top)) == ("{x,y}", "{x,y,z}", "{x,y,z,w}")
    assert has_single_reversal(C, "x", "y") == (pair, mid)
    assert double_reversal_pairs(C) == [(u.index("x"), u.index("y"))]


def test_decompose_mixed():
    C = samples.mixed_reversals()
    strong, weak = decompose_double(C, has_double_reversal(C, "x", "y"))
    u = C.universe
    assert strong.describe(u) == "strong (xy) reversal due to z on {x,y}"
    assert weak.describe(u) == "weak (zx) reversal due to w on {x,z}"


def test_decompose_double_flip_fixture():
    R, P = samples.double_flip_rationales()
    from cbr.representation import RepresentationPair, induced_choice

    C = induced_choice(RepresentationPair(R, P))
    strong, weak = decompose_double(C, has_double_reversal(C, "x", "y"))
    u = C.universe
    assert (strong.kind, u.labels[strong.trigger]) == (Kind.STRONG, "z")
    assert (weak.kind, u.labels[weak.x], u.labels[weak.y], u.labels[weak.trigger]) == (Kind.WEAK, "z", "x", "w")


def test_decompose_failure():
    # pairs x>y, x>z, y>z with C(xyz)=y and C(xyzw)=x but no strong (xy) reversal inside {x,y,z}
    C = ChoiceFunction.from_rows(
        "xyzw",
        {"xy": "x", "xz": "x", "xw": "x", "yz": "y", "yw": "y", "zw": "z",
         "xyz": "y", "xyw": "x", "xzw": "x", "yzw": "y", "xyzw": "x"},
    )
    with pytest.raises(NotDecomposable):
        decompose_double(C, has_double_reversal(C, "x", "y"))


def test_smp_and_exclusivity_on_mixed():
    C = samples.mixed_reversals()
    assert check_smp(C).passed and check_exclusivity(C).passed


def test_exclusivity_failure_fixture():
    v = check_exclusivity(samples.breaks_nbc())
    assert not v.passed and v.witness["weak"]["kind"] == "weak"


def test_summary():
    assert reversal_summary(samples.mixed_reversals()) == {
        "weak": 1, "strong": 1, "double_reversal_pairs": [["x", "y"]]
    }


def test_same_alternative_rejected():
    with pytest.raises(ValueError):
        has_single_reversal(samples.mixed_reversals(), "x", "x")


@given(cbr_functions(max_n=5))
def test_modes_agree_on_representable(case):
    C, _, _ = case
    assert closure_rows(revealed_rows(C, Mode.SMALL_MENU)) == closure_rows(revealed_rows(C, Mode.FULL_MENU))


@given(cbr_functions(max_n=5))
def test_structural_properties_on_representable(case):
    C, _, _ = case
    assert check_smp(C).passed
    assert check_exclusivity(C).passed
    for x, y in double_reversal_pairs(C):
        decompose_double(C, has_double_reversal(C, x, y))
