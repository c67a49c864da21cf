"""Exhaustive ground truth at small sizes.

Everything here decides representability by brute force: enumerate rationale
pairs, evaluate every menu, compare.  The axiom-based code elsewhere in the
package is checked against these answers by the sweeps at the bottom.
"""

from __future__ import annotations

import enum
import itertools
import json
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional

from . import axioms as ax
from .choice import ChoiceFunction, to_document
from .errors import AxiomFailure, InternalInvariantBreach, NotDecomposable, SizeCapExceeded
from .identification import _allowed_rows, in_class, minimal_representation, r_max
from .relations import (
    BinaryRelation,
    Universe,
    bits,
    closure_rows,
    cols_of,
    rows_complete,
    rows_transitive,
)
from .representation import (
    Flavor,
    RepresentationPair,
    eval_rows,
    induced_table,
    synthesize_cbr,
    synthesize_tcbr,
    verify,
)
from .reversals import (
    Kind,
    Mode,
    _reversals,
    decompose_double,
    double_reversal_pairs,
    reversal_summary,
    revealed_rows,
)

MAX_RATIONALE_N = 5
MAX_SWEEP_N = 4
MAX_COUNTEREXAMPLES = 50


class RationaleKind(enum.Enum):
    PARTIAL_ORDER = "PartialOrder"
    TOURNAMENT = "Tournament"
    LINEAR_ORDER = "LinearOrder"
    ASYMMETRIC = "Asymmetric"


class ModelFlavor(enum.Enum):
    WARP_RATIONAL = "WARP_RATIONAL"
    CBR = "CBR"
    TCBR = "TCBR"
    RSM = "RSM"
    TSM = "TSM"
    EPH = "EPH"


# first-kind, second-kind, evaluation rule
_SPACE = {
    ModelFlavor.WARP_RATIONAL: (None, RationaleKind.LINEAR_ORDER, Flavor.CBR),
    ModelFlavor.CBR: (RationaleKind.PARTIAL_ORDER, RationaleKind.TOURNAMENT, Flavor.CBR),
    ModelFlavor.TCBR: (RationaleKind.PARTIAL_ORDER, RationaleKind.LINEAR_ORDER, Flavor.TCBR),
    ModelFlavor.RSM: (RationaleKind.ASYMMETRIC, RationaleKind.ASYMMETRIC, Flavor.RSM),
    ModelFlavor.TSM: (RationaleKind.PARTIAL_ORDER, RationaleKind.PARTIAL_ORDER, Flavor.TSM),
    ModelFlavor.EPH: (RationaleKind.LINEAR_ORDER, RationaleKind.LINEAR_ORDER, Flavor.EPH),
}


def _kind(kind) -> RationaleKind:
    return kind if isinstance(kind, RationaleKind) else RationaleKind(kind)


# -- enumeration --------------------------------------------------------------


def _pairs(n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _kind_ok(rows, kind: Optional[RationaleKind]) -> bool:
    if kind is None:
        return not any(rows)
    if kind is RationaleKind.ASYMMETRIC:
        return True
    if kind is RationaleKind.TOURNAMENT:
        return rows_complete(rows)
    if kind is RationaleKind.PARTIAL_ORDER:
        return rows_transitive(rows)
    return rows_complete(rows) and rows_transitive(rows)


@lru_cache(maxsize=None)
def rationale_rows(n: int, kind) -> tuple[tuple[int, ...], ...]:
    """Row tuples of every relation of ``kind`` on ``n`` points, in a fixed order."""
    kind = _kind(kind)
    if not 1 <= n <= MAX_RATIONALE_N:
        raise SizeCapExceeded(f"rationale enumeration supports 1 <= n <= {MAX_RATIONALE_N}, got {n}")
    pairs = _pairs(n)
    # 0: unrelated, 1: i above j, 2: j above i
    options = (1, 2) if kind in (RationaleKind.TOURNAMENT, RationaleKind.LINEAR_ORDER) else (0, 1, 2)
    out = []
    for combo in itertools.product(options, repeat=len(pairs)):
        rows = [0] * n
        for (i, j), o in zip(pairs, combo):
            if o == 1:
                rows[i] |= 1 << j
            elif o == 2:
                rows[j] |= 1 << i
        rows = tuple(rows)
        if _kind_ok(rows, kind):
            out.append(rows)
    return tuple(out)


def enumerate_rationales(n: int, kind, universe: Optional[Universe] = None) -> Iterator[BinaryRelation]:
    """Every relation of the given kind on ``n`` alternatives, without repeats."""
    rows = rationale_rows(n, _kind(kind))
    u = universe or Universe.of_size(n)
    if u.size != n:
        raise ValueError("universe size does not match n")
    for r in rows:
        yield BinaryRelation(u, r)


def _check_sweep_n(n: int) -> None:
    if not 2 <= n <= MAX_SWEEP_N:
        raise SizeCapExceeded(f"exhaustive choice enumeration supports 2 <= n <= {MAX_SWEEP_N}, got {n}")


@lru_cache(maxsize=None)
def _menu_layout(n: int):
    u = Universe.of_size(n)
    menus = list(u.menus(min_size=2))
    return u, menus, [list(bits(m)) for m in menus]


def choice_function_count(n: int) -> int:
    _check_sweep_n(n)
    total = 1
    for m in _menu_layout(n)[1]:
        total *= m.bit_count()
    return total


def _base_table(n):
    t = [-1] * (1 << n)
    for i in range(n):
        t[1 << i] = i
    return t


def choice_function_at(n: int, index: int) -> ChoiceFunction:
    """The ``index``-th function in the order used by :func:`enumerate_choice_functions`."""
    u, menus, members = _menu_layout(n)
    if not 0 <= index < choice_function_count(n):
        raise IndexError(index)
    t = _base_table(n)
    for m, opts in zip(reversed(menus), reversed(members)):
        index, k = divmod(index, len(opts))
        t[m] = opts[k]
    return ChoiceFunction(u, tuple(t))


def enumerate_choice_functions(n: int, start: int = 0, stop: Optional[int] = None) -> Iterator[ChoiceFunction]:
    """All choice functions on ``n`` alternatives; the last menu varies fastest."""
    _check_sweep_n(n)
    u, menus, members = _menu_layout(n)
    total = choice_function_count(n)
    stop = total if stop is None else min(stop, total)
    if start >= stop:
        return
    it = itertools.product(*members)
    if start:
        it = itertools.islice(it, start, None)
    t = _base_table(n)
    for _ in range(stop - start):
        combo = next(it)
        for m, c in zip(menus, combo):
            t[m] = c
        yield ChoiceFunction(u, tuple(t))


# -- global tables -------------------------------------------------------------


@lru_cache(maxsize=None)
def representation_table(n: int, flavor) -> dict:
    """Map from induced choice table to every rationale pair of ``flavor`` inducing it.

    Built by evaluating the full search space, without any pruning.
    """
    flavor = ModelFlavor(flavor)
    _check_sweep_n(n)
    first_kind, second_kind, rule = _SPACE[flavor]
    firsts = ((0,) * n,) if first_kind is None else rationale_rows(n, first_kind)
    seconds = rationale_rows(n, second_kind)
    out: dict = {}
    for f in firsts:
        for s in seconds:
            table, _ = induced_table(f, s, rule, n, stop_early=True)
            if table is not None:
                out.setdefault(table, []).append((f, s))
    return out


# -- per-function search ---------------------------------------------------------


def _candidates(C: ChoiceFunction, flavor: ModelFlavor):
    """Every pair in the flavor's space that agrees with ``C`` on two-element menus."""
    n = C.size
    first_kind, second_kind, _ = _SPACE[flavor]
    if flavor is ModelFlavor.EPH:
        lin = rationale_rows(n, RationaleKind.LINEAR_ORDER)
        yield from itertools.product(lin, lin)
        return
    pw = C.pairwise_rows
    won = [(a, b) for a in range(n) for b in bits(pw[a])]
    free_second = (1, 2) if second_kind in (RationaleKind.TOURNAMENT, RationaleKind.LINEAR_ORDER) else (0, 1, 2)
    # a first-stage edge against the pairwise winner would flip that pair
    first_choices = [()] if first_kind is None else itertools.chain.from_iterable(
        itertools.combinations(won, k) for k in range(len(won) + 1)
    )
    for chosen in first_choices:
        first = [0] * n
        for a, b in chosen:
            first[a] |= 1 << b
        first = tuple(first)
        if not _kind_ok(first, first_kind):
            continue
        forced = [0] * n
        loose = []
        for a, b in won:
            if first[a] >> b & 1:
                loose.append((a, b))
            else:
                forced[a] |= 1 << b
        for combo in itertools.product(free_second, repeat=len(loose)):
            second = list(forced)
            for (a, b), o in zip(loose, combo):
                if o == 1:
                    second[a] |= 1 << b
                elif o == 2:
                    second[b] |= 1 << a
            second = tuple(second)
            if _kind_ok(second, second_kind):
                yield first, second


def _matches(C: ChoiceFunction, first, second, rule: Flavor, menus) -> bool:
    fc, sc = cols_of(first), cols_of(second)
    t = C.table
    return all(eval_rows(m, first, second, rule, fc, sc) == t[m] for m in menus)


def _search(C: ChoiceFunction, flavor: ModelFlavor):
    rule = _SPACE[flavor][2]
    menus = list(C.universe.menus(min_size=2))
    # larger menus first: they reject most candidates
    menus.reverse()
    for first, second in _candidates(C, flavor):
        if _matches(C, first, second, rule, menus):
            yield first, second


@dataclass
class RepresentationSearch:
    pairs: list
    count: int
    capped: bool


def representations(C: ChoiceFunction, flavor=ModelFlavor.CBR, cap: Optional[int] = 64) -> RepresentationSearch:
    """Every rationale pair of ``flavor`` inducing ``C``.

    ``count`` is always exact; ``pairs`` holds at most ``cap`` of them
    (all of them when ``cap`` is None).
    """
    flavor = ModelFlavor(flavor)
    n = C.size
    limit = MAX_SWEEP_N if flavor is ModelFlavor.RSM else MAX_RATIONALE_N
    if n > limit:
        raise SizeCapExceeded(f"{flavor.value} search supports at most {limit} alternatives")
    rule = _SPACE[flavor][2]
    u = C.universe
    out, count = [], 0
    for f, s in _search(C, flavor):
        count += 1
        if cap is None or len(out) < cap:
            out.append(RepresentationPair(BinaryRelation(u, f), BinaryRelation(u, s), rule))
    return RepresentationSearch(out, count, cap is not None and count > cap)


def representable(C: ChoiceFunction, flavor=ModelFlavor.CBR) -> bool:
    flavor = ModelFlavor(flavor)
    if C.size > (MAX_SWEEP_N if flavor is ModelFlavor.RSM else MAX_RATIONALE_N):
        raise SizeCapExceeded(f"{flavor.value} search is capped at this size")
    return next(_search(C, flavor), None) is not None


def rsm_by_characterization(C: ChoiceFunction) -> bool:
    """Shortlist representability via Expansion together with WWARP."""
    return ax.passes(C, ax.AxiomId.EXPANSION) and ax.passes(C, ax.AxiomId.WWARP)


# -- classification ----------------------------------------------------------------


@dataclass
class ClassificationProfile:
    flags: dict
    methods: dict
    reversals: dict
    disagreements: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "flags": {k.value: v for k, v in self.flags.items()},
            "methods": {k.value: v for k, v in self.methods.items()},
            "reversals": self.reversals,
            "disagreements": list(self.disagreements),
        }

    @classmethod
    def from_dict(cls, d) -> "ClassificationProfile":
        return cls(
            {ModelFlavor(k): v for k, v in d["flags"].items()},
            {ModelFlavor(k): v for k, v in d["methods"].items()},
            d["reversals"],
            list(d.get("disagreements", [])),
        )


def classify(C: ChoiceFunction) -> ClassificationProfile:
    """Representability under every model flavor, with the method used for each."""
    if C.size > MAX_SWEEP_N:
        raise SizeCapExceeded(f"classification needs exhaustive search, capped at {MAX_SWEEP_N} alternatives")
    flags, methods, disagree = {}, {}, []

    def decide(flavor, axiom_answer, label):
        found = representable(C, flavor)
        flags[flavor] = found
        methods[flavor] = f"exhaustive search, cross-checked against {label}"
        if axiom_answer != found:
            disagree.append({"flavor": flavor.value, "exhaustive": found, label: axiom_answer})

    decide(ModelFlavor.WARP_RATIONAL, ax.passes(C, ax.AxiomId.WARP), "WARP")
    decide(ModelFlavor.CBR, ax.is_cbr(C), "NC+WCC*+NBC*+R-WARP")
    decide(ModelFlavor.TCBR, ax.is_tcbr(C), "NC+WCC*+NBC*+R-SARP")
    decide(ModelFlavor.RSM, rsm_by_characterization(C), "Expansion+WWARP")
    for flavor in (ModelFlavor.TSM, ModelFlavor.EPH):
        flags[flavor] = representable(C, flavor)
        methods[flavor] = "exhaustive search"
    return ClassificationProfile(flags, methods, reversal_summary(C), disagree)


# -- sweeps --------------------------------------------------------------------------


class SweepId(enum.Enum):
    THEOREM1 = "THEOREM1"
    THEOREM2 = "THEOREM2"
    SMP = "SMP"
    IDENCOR = "IDENCOR"
    IDEN1 = "IDEN1"
    IDEN2 = "IDEN2"
    PROP_RSM = "PROP_RSM"
    PROP_TSM = "PROP_TSM"
    RWARPSTAR = "RWARPSTAR"
    EXCLUSIVITY = "EXCLUSIVITY"
    NE = "NE"
    DBL = "DBL"
    LEMMA_REV = "LEMMA_REV"
    WARP = "WARP"
    SMALL_MENU = "SMALL_MENU"
    LATTICE = "LATTICE"
    RSM_CHAR = "RSM_CHAR"
    SYNTH = "SYNTH"
    RMAX = "RMAX"


@dataclass
class SweepReport:
    sweep: str
    n: int
    population: int
    counterexamples: list
    counts: dict
    runtime_ms: int = 0

    @property
    def ok(self) -> bool:
        return not self.counts.get("counterexamples", 0)

    def to_dict(self, include_runtime: bool = True) -> dict:
        d = {
            "sweep": self.sweep,
            "n": self.n,
            "population": self.population,
            "counterexamples": self.counterexamples,
            "counts": dict(sorted(self.counts.items())),
        }
        if include_runtime:
            d["runtime_ms"] = self.runtime_ms
        return d

    def to_json(self, include_runtime: bool = True) -> str:
        return json.dumps(self.to_dict(include_runtime), indent=2)

    @classmethod
    def from_dict(cls, d) -> "SweepReport":
        return cls(d["sweep"], d["n"], d["population"], list(d["counterexamples"]), dict(d["counts"]), d.get("runtime_ms", 0))


def _doc(C):
    return to_document(C)["choices"]


def _key(C):
    return C.table


# Each per-function check returns (counts, counterexample-or-None, collected-or-None).


def _chk_equivalence(C, flavor, axioms_ok):
    found = _key(C) in representation_table(C.size, flavor)
    c = Counter(axioms_pass=int(axioms_ok), representable=int(found))
    bad = None
    if found != axioms_ok:
        bad = {"choices": _doc(C), "axioms": axioms_ok, "exhaustive": found}
    return c, bad, None


def _cbr_reps(C):
    return representation_table(C.size, ModelFlavor.CBR).get(_key(C))


def _chk_cbr_equivalence(C, ctx):
    return _chk_equivalence(C, ModelFlavor.CBR, ax.is_cbr(C))


def _chk_tcbr_equivalence(C, ctx):
    return _chk_equivalence(C, ModelFlavor.TCBR, ax.is_tcbr(C))


def _over_representable(fn):
    def run(C, ctx):
        reps = _cbr_reps(C)
        if reps is None:
            return Counter(), None, None
        c, bad, got = fn(C, reps)
        c["representable"] += 1
        return c, bad, got

    return run


@_over_representable
def _chk_smp(C, reps):
    from .reversals import check_smp

    v = check_smp(C)
    return Counter(), None if v.passed else {"choices": _doc(C), "witness": v.witness}, None


@_over_representable
def _chk_exclusivity(C, reps):
    v = ax.check(C, ax.AxiomId.EXCLUSIVITY)
    return Counter(), None if v.passed else {"choices": _doc(C), "witness": v.witness}, None


@_over_representable
def _chk_ne(C, reps):
    v = ax.check(C, ax.AxiomId.NEGATIVE_EXPANSION)
    return Counter(), None if v.passed else {"choices": _doc(C), "witness": v.witness}, None


def _double_chains(C):
    n, t, full = C.size, C.table, C.universe.full
    for x, y in double_reversal_pairs(C):
        pair = 1 << x | 1 << y
        for s in range(full + 1):
            if s & pair != pair or s == pair or t[s] != y:
                continue
            for s2 in range(full + 1):
                if s2 & s == s and s2 != s and t[s2] == x:
                    yield pair, s, s2


@_over_representable
def _chk_dbl(C, reps):
    c = Counter()
    for w in _double_chains(C):
        c["chains"] += 1
        try:
            decompose_double(C, w)
        except NotDecomposable as e:
            return c, {"choices": _doc(C), "chain": [C.universe.fmt(m) for m in w], "error": str(e)}, None
    return c, None, None


def _rev_constraints_hold(r, first, second) -> bool:
    x, y, z = r.x, r.y, r.trigger

    def has(rows, a, b):
        return bool(rows[a] >> b & 1)

    if r.kind is Kind.WEAK:
        return has(first, x, y) and has(first, y, z) and has(second, y, x)
    return (
        has(first, z, x)
        and has(second, x, y)
        and has(second, y, z)
        and not has(first, x, y)
        and not has(first, y, x)
    )


@_over_representable
def _chk_reversal_constraints(C, reps):
    c = Counter()
    revs = _reversals(C)
    for first, second in reps:
        for r in revs:
            c["checks"] += 1
            if not _rev_constraints_hold(r, first, second):
                u = C.universe
                return c, {
                    "choices": _doc(C),
                    "reversal": r.to_dict(u),
                    "R": [list(p) for p in BinaryRelation(u, first).pairs()],
                    "P": [list(p) for p in BinaryRelation(u, second).pairs()],
                }, None
    return c, None, None


def _chk_rwarpstar(C, ctx):
    pre = ax.passes(C, ax.AxiomId.R_WARP) and ax.passes(C, ax.AxiomId.WCC_STAR)
    c = Counter(premise=int(pre))
    if pre and not ax.passes(C, ax.AxiomId.R_WARP_STAR):
        return c, {"choices": _doc(C), "witness": ax.check(C, ax.AxiomId.R_WARP_STAR).witness}, None
    return c, None, None


@_over_representable
def _chk_idencor(C, reps):
    small = tuple(C.table[m] for m in C.universe.menus(min_size=2) if m.bit_count() <= 3)
    return Counter(), None, (small, C.table)


@_over_representable
def _chk_iden1(C, reps):
    u = C.universe
    r_c, p_c = minimal_representation(C)
    meet = [C.universe.full] * C.size
    for f, _ in reps:
        meet = [a & b for a, b in zip(meet, f)]
    meet = tuple(meet)
    bad = None
    if meet != r_c.rows:
        bad = {"choices": _doc(C), "problem": "R^c differs from the intersection of first rationales",
               "r_min": [list(p) for p in r_c.pairs()],
               "intersection": [list(p) for p in BinaryRelation(u, meet).pairs()]}
    else:
        with_min = [s for f, s in reps if f == r_c.rows]
        if not with_min:
            bad = {"choices": _doc(C), "problem": "no representation uses R^c"}
        for s in with_min:
            if any(p & ~q for p, q in zip(p_c.rows, s)):
                bad = {"choices": _doc(C), "problem": "P^c not inside a second rationale paired with R^c",
                       "P": [list(p) for p in BinaryRelation(u, s).pairs()]}
                break
    return Counter(), bad, None


@_over_representable
def _chk_iden2(C, reps):
    u = C.universe
    valid = set(reps)
    c = Counter()
    for f in rationale_rows(C.size, RationaleKind.PARTIAL_ORDER):
        for s in rationale_rows(C.size, RationaleKind.TOURNAMENT):
            c["candidates"] += 1
            member = in_class(C, BinaryRelation(u, f), BinaryRelation(u, s))
            if member != ((f, s) in valid):
                return c, {"choices": _doc(C), "in_class": member,
                           "R": [list(p) for p in BinaryRelation(u, f).pairs()],
                           "P": [list(p) for p in BinaryRelation(u, s).pairs()]}, None
            c["members"] += member
    return c, None, None


def _no_weak(C):
    return not any(r.kind is Kind.WEAK for r in _reversals(C))


@_over_representable
def _chk_prop_rsm(C, reps):
    no_weak = _no_weak(C)
    if C.size <= 3:
        rsm = _key(C) in representation_table(C.size, ModelFlavor.RSM)
    else:
        rsm = rsm_by_characterization(C)
    c = Counter(rsm=int(rsm), no_weak=int(no_weak))
    bad = None if rsm == no_weak else {"choices": _doc(C), "rsm": rsm, "no_weak_reversals": no_weak}
    return c, bad, None


def _chk_prop_tsm(C, ctx):
    if _key(C) not in representation_table(C.size, ModelFlavor.TCBR):
        return Counter(), None, None
    no_weak = _no_weak(C)
    tsm = _key(C) in representation_table(C.size, ModelFlavor.TSM)
    c = Counter(tcbr_representable=1, tsm=int(tsm), no_weak=int(no_weak))
    bad = None if tsm == no_weak else {"choices": _doc(C), "tsm": tsm, "no_weak_reversals": no_weak}
    return c, bad, None


def _chk_rsm_char(C, ctx):
    char = rsm_by_characterization(C)
    found = _key(C) in representation_table(C.size, ModelFlavor.RSM)
    c = Counter(rsm=int(found))
    return c, (None if char == found else {"choices": _doc(C), "characterization": char, "exhaustive": found}), None


def _chk_warp(C, ctx):
    warp = ax.passes(C, ax.AxiomId.WARP)
    rational = _key(C) in representation_table(C.size, ModelFlavor.WARP_RATIONAL)
    c = Counter(warp=int(warp), warp_rational=int(rational))
    return c, (None if warp == rational else {"choices": _doc(C), "warp": warp, "rational": rational}), None


@_over_representable
def _chk_small_menu(C, reps):
    full = closure_rows(revealed_rows(C, Mode.FULL_MENU))
    small = closure_rows(revealed_rows(C, Mode.SMALL_MENU))
    c = Counter(raw_equal=int(revealed_rows(C, Mode.FULL_MENU) == revealed_rows(C, Mode.SMALL_MENU)))
    if full != small:
        u = C.universe
        return c, {"choices": _doc(C),
                   "full": [list(p) for p in BinaryRelation(u, full).pairs()],
                   "small": [list(p) for p in BinaryRelation(u, small).pairs()]}, None
    return c, None, None


def _chk_lattice(C, ctx):
    n, key = C.size, _key(C)
    has = {f: key in representation_table(n, f) for f in
           (ModelFlavor.WARP_RATIONAL, ModelFlavor.CBR, ModelFlavor.TCBR, ModelFlavor.TSM, ModelFlavor.EPH)}
    has[ModelFlavor.RSM] = key in representation_table(n, ModelFlavor.RSM) if n <= 3 else rsm_by_characterization(C)
    c = Counter({f.value.lower(): int(v) for f, v in has.items()})
    eph = has[ModelFlavor.EPH]
    c["eph_and_cbr"] = int(eph and has[ModelFlavor.CBR])
    c["eph_and_tcbr"] = int(eph and has[ModelFlavor.TCBR])
    c["eph_with_weak_reversal"] = int(eph and not _no_weak(C))
    c["eph_failing_nbc"] = int(eph and not ax.passes(C, ax.AxiomId.NBC))
    broken = []
    if has[ModelFlavor.TCBR] and not has[ModelFlavor.CBR]:
        broken.append("TCBR without CBR")
    if has[ModelFlavor.TSM] and not has[ModelFlavor.RSM]:
        broken.append("TSM without RSM")
    if has[ModelFlavor.WARP_RATIONAL] and not all(has.values()):
        broken.append("WARP-rational but some flavor fails")
    return c, ({"choices": _doc(C), "violations": broken} if broken else None), None


def _chk_synth(C, ctx):
    """Synthesized pairs reproduce ``C``; T-CBR synthesis yields a linear order."""
    c = Counter()
    problems = []
    for name, fn, ok in (("cbr", synthesize_cbr, ax.is_cbr(C)), ("tcbr", synthesize_tcbr, ax.is_tcbr(C))):
        if not ok:
            continue
        c[name] += 1
        try:
            rep = fn(C)
        except (AxiomFailure, InternalInvariantBreach) as e:
            problems.append({"synthesis": name, "error": str(e)})
            continue
        v = verify(C, rep)
        if not v.ok:
            problems.append({"synthesis": name, "mismatches": list(v.mismatches)})
    return c, ({"choices": _doc(C), "problems": problems} if problems else None), None


@_over_representable
def _chk_rmax(C, reps):
    """Each maximal admissible first rationale is used by some representation."""
    firsts = {f for f, _ in reps}
    allowed = _allowed_rows(C)
    maxima, truncated = r_max(C)
    c = Counter(maxima=len(maxima), truncated=int(truncated))
    u = C.universe
    for r in maxima:
        if r.rows not in firsts:
            return c, {"choices": _doc(C), "unused_maximum": [list(p) for p in r.pairs()]}, None
    for f in firsts:
        if any(a & ~b for a, b in zip(f, allowed)):
            return c, {"choices": _doc(C), "first_outside_bound": [list(p) for p in BinaryRelation(u, f).pairs()]}, None
    return c, None, None


_CHECKS = {
    SweepId.THEOREM1: _chk_cbr_equivalence,
    SweepId.THEOREM2: _chk_tcbr_equivalence,
    SweepId.SMP: _chk_smp,
    SweepId.IDENCOR: _chk_idencor,
    SweepId.IDEN1: _chk_iden1,
    SweepId.IDEN2: _chk_iden2,
    SweepId.PROP_RSM: _chk_prop_rsm,
    SweepId.PROP_TSM: _chk_prop_tsm,
    SweepId.RWARPSTAR: _chk_rwarpstar,
    SweepId.EXCLUSIVITY: _chk_exclusivity,
    SweepId.NE: _chk_ne,
    SweepId.DBL: _chk_dbl,
    SweepId.LEMMA_REV: _chk_reversal_constraints,
    SweepId.WARP: _chk_warp,
    SweepId.SMALL_MENU: _chk_small_menu,
    SweepId.LATTICE: _chk_lattice,
    SweepId.RSM_CHAR: _chk_rsm_char,
    SweepId.SYNTH: _chk_synth,
    SweepId.RMAX: _chk_rmax,
}


def _run_range(check: SweepId, n: int, start: int, stop: int):
    fn = _CHECKS[check]
    counts: Counter = Counter()
    bad, collected = [], []
    for C in enumerate_choice_functions(n, start, stop):
        c, b, got = fn(C, None)
        counts.update(c)
        if b is not None:
            counts["counterexamples"] += 1
            if len(bad) < MAX_COUNTEREXAMPLES:
                bad.append(b)
        if got is not None:
            collected.append(got)
    return counts, bad, collected


def _idencor_finish(n, collected, counts, bad):
    groups: dict = {}
    for small, table in collected:
        groups.setdefault(small, set()).add(table)
    counts["classes"] = len(groups)
    u = Universe.of_size(n)
    for tables in groups.values():
        if len(tables) > 1:
            counts["counterexamples"] += 1
            if len(bad) < MAX_COUNTEREXAMPLES:
                a, b = sorted(tables)[:2]
                bad.append({"first": _doc(ChoiceFunction(u, a)), "second": _doc(ChoiceFunction(u, b))})


def _iden2_sampled(n, samples, seed):
    """Random candidates against random representable functions."""
    rng = random.Random(seed)
    table = representation_table(n, ModelFlavor.CBR)
    keys = sorted(table)
    firsts = rationale_rows(n, RationaleKind.PARTIAL_ORDER)
    seconds = rationale_rows(n, RationaleKind.TOURNAMENT)
    u = Universe.of_size(n)
    counts: Counter = Counter()
    bad = []
    for _ in range(samples):
        key = keys[rng.randrange(len(keys))]
        C = ChoiceFunction(u, key)
        reps = table[key]
        # half the draws come from the true class so both answers get exercised
        if rng.random() < 0.5:
            f, s = reps[rng.randrange(len(reps))]
        else:
            f, s = firsts[rng.randrange(len(firsts))], seconds[rng.randrange(len(seconds))]
        member = in_class(C, BinaryRelation(u, f), BinaryRelation(u, s))
        t, _ = induced_table(f, s, Flavor.CBR, n, stop_early=True)
        ok = t == key
        counts["candidates"] += 1
        counts["members"] += member
        if member != ok:
            counts["counterexamples"] += 1
            if len(bad) < MAX_COUNTEREXAMPLES:
                bad.append({"choices": _doc(C), "in_class": member, "verified": ok,
                            "R": [list(p) for p in BinaryRelation(u, f).pairs()],
                            "P": [list(p) for p in BinaryRelation(u, s).pairs()]})
    return counts, bad


def sweep(n: int, check, threads: int = 1, seed: int = 0, samples: int = 10_000) -> SweepReport:
    """Run one exhaustive check over every choice function on ``n`` alternatives.

    ``IDEN2`` is exhaustive over candidate pairs at ``n <= 3`` and draws
    ``samples`` seeded candidates at ``n = 4``.  Results do not depend on
    ``threads``.
    """
    check = SweepId(check)
    _check_sweep_n(n)
    t0 = time.perf_counter()
    if check is SweepId.IDEN2 and n >= 4:
        counts, bad = _iden2_sampled(n, samples, seed)
        counts.setdefault("counterexamples", 0)
        report = SweepReport(check.value, n, samples, bad, dict(counts))
        report.runtime_ms = int((time.perf_counter() - t0) * 1000)
        return report
    total = choice_function_count(n)
    threads = max(1, int(threads))
    if threads == 1:
        parts = [_run_range(check, n, 0, total)]
    else:
        step = -(-total // threads)
        bounds = [(i, min(i + step, total)) for i in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_run_range, *zip(*[(check, n, a, b) for a, b in bounds])))
    counts: Counter = Counter()
    bad, collected = [], []
    for c, b, got in parts:
        counts.update(c)
        bad.extend(b)
        collected.extend(got)
    del bad[MAX_COUNTEREXAMPLES:]
    if check is SweepId.IDENCOR:
        _idencor_finish(n, collected, counts, bad)
    counts.setdefault("counterexamples", 0)
    report = SweepReport(check.value, n, total, bad, dict(counts))
    report.runtime_ms = int((time.perf_counter() - t0) * 1000)
    return report
