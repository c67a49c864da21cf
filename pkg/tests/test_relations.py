import pytest
from hypothesis import given
from hypothesis import strategies as st

from cbr.relations import (
    BinaryRelation,
    Universe,
    bits,
    is_acyclic,
    is_asymmetric,
    is_complete,
    is_linear_order,
    is_partial_order,
    is_tournament,
    is_transitive,
    maximal_set,
    minimal_set,
    restrict,
    subsets,
    transitive_closure,
)

from .conftest import relations, tournaments

U3 = Universe(("x", "y", "z"))
U4 = Universe(("x", "y", "z", "w"))


def rel(u, *pairs):
    return BinaryRelation.from_pairs(u, [tuple(p) for p in pairs])


class TestUniverse:
    def test_labels_and_masks(self):
        assert U4.size == 4 and U4.full == 0b1111
        assert U4.mask(["x", "z"]) == 0b101
        assert U4.names(0b1010) == ["y", "w"]

    def test_rejects_duplicates_and_empty(self):
        with pytest.raises(ValueError):
            Universe(("x", "x"))
        with pytest.raises(ValueError):
            Universe(())

    def test_unknown_label(self):
        with pytest.raises(Exception):
            U3.index("q")

    def test_menus_ordered_by_size(self):
        sizes = [m.bit_count() for m in U4.menus(min_size=2)]
        assert sizes == sorted(sizes) and len(sizes) == 11

    def test_of_size(self):
        assert Universe.of_size(3).labels == ("a", "b", "c")


def test_bit_helpers():
    assert list(bits(0b1011)) == [0, 1, 3]
    assert sorted(subsets(0b101)) == [0, 0b1, 0b100, 0b101]


class TestPredicates:
    def test_two_cycle_is_not_asymmetric(self):
        assert not is_asymmetric(rel(U3, "xy", "yx"))

    def test_missing_link(self):
        r = rel(U3, "xy", "yz")
        assert not is_transitive(r) and is_acyclic(r)

    def test_cyclic_tournament(self):
        r = rel(U3, "xy", "yz", "zx")
        assert is_complete(r) and not is_acyclic(r) and is_tournament(r) and not is_linear_order(r)

    def test_linear_order(self):
        r = BinaryRelation.linear_order(U4, "xyzw")
        assert is_linear_order(r) and is_partial_order(r) and len(r) == 6

    def test_irreflexive_enforced(self):
        with pytest.raises(ValueError):
            BinaryRelation.from_pairs(U3, [("x", "x")])


class TestClosure:
    def test_chain(self):
        assert transitive_closure(rel(U3, "xy", "yz")) == rel(U3, "xy", "yz", "xz")

    def test_cycle_drops_diagonal(self):
        c = transitive_closure(rel(U3, "xy", "yx"))
        assert c == rel(U3, "xy", "yx")

    @given(st.integers(1, 6).flatmap(relations))
    def test_idempotent_and_extensive(self, r):
        c = transitive_closure(r)
        assert r <= c and transitive_closure(c) == c and is_transitive(c)


class TestMinMax:
    def test_minimal_excludes_dominators(self):
        r = rel(U4, "zx", "zw", "xw")
        assert U4.names(minimal_set(["x", "y", "z", "w"], r)) == ["w"]

    def test_empty_relation_has_no_minimal(self):
        assert minimal_set(U4.full, BinaryRelation.empty(U4)) == 0

    def test_out_of_menu_edges_ignored(self):
        r = rel(U4, "zx", "xw")
        assert U4.names(minimal_set(["x", "y", "z"], r)) == ["x"]

    def test_maximal(self):
        assert U3.names(maximal_set(U3.full, rel(U3, "xy", "yz", "xz"))) == ["x"]
        assert maximal_set(U3.full, rel(U3, "xy", "yz", "zx")) == 0
        assert U4.names(maximal_set(U4.full, rel(U4, "zx", "zw", "xw"))) == ["y", "z"]

    def test_restrict(self):
        assert restrict(rel(U4, "zx", "xw"), ["x", "z"]) == rel(U4, "zx")
        assert len(restrict(BinaryRelation.linear_order(U4, "xyzw"), ["y"])) == 0
        assert len(restrict(BinaryRelation.linear_order(U4, "xyzw"), ["x", "y", "w"])) == 3

    @given(st.integers(1, 6).flatmap(lambda n: st.tuples(relations(n), st.integers(1, (1 << n) - 1))))
    def test_max_inside_shortlist(self, case):
        r, menu = case
        assert maximal_set(menu, r) & minimal_set(menu, r) == 0
        assert maximal_set(menu, r) & ~menu == 0

    @given(st.integers(1, 6).flatmap(lambda n: st.tuples(tournaments(n), st.integers(1, (1 << n) - 1), st.just(n))))
    def test_tournament_has_at_most_one_maximum(self, case):
        rows, menu, n = case
        assert maximal_set(menu, BinaryRelation(Universe.of_size(n), rows)).bit_count() <= 1

    @given(st.integers(1, 6).flatmap(lambda n: st.tuples(relations(n), st.integers(1, (1 << n) - 1))))
    def test_only_restriction_matters(self, case):
        r, menu = case
        sub = restrict(r, menu)
        assert minimal_set(menu, r) == minimal_set(menu, sub)
        assert maximal_set(menu, r) == maximal_set(menu, sub)


def test_set_algebra():
    a, b = rel(U3, "xy"), rel(U3, "yz")
    assert (a | b) == rel(U3, "xy", "yz")
    assert (a & b) == BinaryRelation.empty(U3)
    assert ((a | b) - a) == b
    assert a < (a | b)
    assert a.inverse() == rel(U3, "yx")
    assert ("x", "y") in a and list(a) == [("x", "y")]
