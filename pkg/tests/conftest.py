import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cbr.choice import ChoiceFunction
from cbr.relations import BinaryRelation, Universe, closure_rows
from cbr.representation import Flavor, induced_table

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def choice_functions(draw, min_n=2, max_n=4):
    """Arbitrary total choice functions."""
    n = draw(st.integers(min_n, max_n))
    u = Universe.of_size(n)
    table = [-1] * (1 << n)
    for m in range(1, 1 << n):
        members = [i for i in range(n) if m >> i & 1]
        table[m] = draw(st.sampled_from(members))
    return ChoiceFunction(u, tuple(table))


@st.composite
def relations(draw, n, density=0.5):
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return BinaryRelation.from_index_pairs(Universe.of_size(n), chosen)


@st.composite
def partial_orders(draw, n):
    """Transitive closure of a random subset of a random linear order."""
    order = draw(st.permutations(range(n)))
    cands = [(order[i], order[j]) for i in range(n) for j in range(i + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(cands), max_size=len(cands)))
    rows = [0] * n
    for (a, b), k in zip(cands, keep):
        if k:
            rows[a] |= 1 << b
    return closure_rows(rows)


@st.composite
def tournaments(draw, n):
    rows = [0] * n
    for a in range(n):
        for b in range(a + 1, n):
            if draw(st.booleans()):
                rows[a] |= 1 << b
            else:
                rows[b] |= 1 << a
    return tuple(rows)


@st.composite
def cbr_functions(draw, min_n=2, max_n=5):
    """``(C, R_rows, P_rows)`` where ``C`` is induced by a random valid CBR pair."""
    n = draw(st.integers(min_n, max_n))
    r = draw(partial_orders(n))
    p = draw(tournaments(n))
    table, _ = induced_table(r, p, Flavor.CBR, n)
    from hypothesis import assume

    assume(table is not None)
    return ChoiceFunction(Universe.of_size(n), table), r, p


@pytest.fixture
def xyzw():
    return Universe(("x", "y", "z", "w"))
