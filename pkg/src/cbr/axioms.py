"""Axiom checkers with replayable counterexample witnesses.

Each checker is a generator of witnesses in canonical order; :func:`check`
takes the first one (or all of them).  Witnesses are plain dicts of labels
and sorted label lists so they serialize to JSON unchanged, and
:func:`replay` re-verifies a witness against the choice function directly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .choice import ChoiceFunction
from .relations import bits, closure_rows, min_mask, cols_of
from .reversals import (
    Kind,
    Mode,
    _reversals,
    exclusivity_witnesses,
    revealed_rows,
    reversal_summary,
)


class AxiomId(enum.Enum):
    NC = "NC"
    WCC_STAR = "WCC_STAR"
    NBC_STAR = "NBC_STAR"
    R_WARP = "R_WARP"
    R_SARP = "R_SARP"
    R_WARP_STAR = "R_WARP_STAR"
    WWARP = "WWARP"
    WARP = "WARP"
    EXPANSION = "EXPANSION"
    NEGATIVE_EXPANSION = "NEGATIVE_EXPANSION"
    ALWAYS_CHOSEN = "ALWAYS_CHOSEN"
    NBC = "NBC"
    EXCLUSIVITY = "EXCLUSIVITY"


CBR_AXIOMS = (AxiomId.NC, AxiomId.WCC_STAR, AxiomId.NBC_STAR, AxiomId.R_WARP)
TCBR_AXIOMS = (AxiomId.NC, AxiomId.WCC_STAR, AxiomId.NBC_STAR, AxiomId.R_SARP)


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: AxiomId
    passed: bool
    witness: Optional[dict] = None
    witnesses: tuple = ()

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        d = {"pass": self.passed, "witness": self.witness}
        if self.witnesses:
            d["witnesses"] = list(self.witnesses)
        return d

    @classmethod
    def from_dict(cls, axiom, d) -> "AxiomVerdict":
        return cls(AxiomId(axiom), d["pass"], d["witness"], tuple(d.get("witnesses", ())))


# -- shared derived data ------------------------------------------------------


def revealed_closure(C: ChoiceFunction) -> tuple[int, ...]:
    """Rows of the transitive closure of the full-menu revealed relation."""
    cached = C.__dict__.get("_rbar")
    if cached is None:
        cached = closure_rows(revealed_rows(C, Mode.FULL_MENU))
        C.__dict__["_rbar"] = cached
    return cached


def dominance_rows(C: ChoiceFunction, rows=None) -> tuple[int, ...]:
    """``x -> y`` iff some menu chooses ``x`` while ``y`` survives rejection by ``rows``.

    ``rows`` defaults to the closure of the revealed relation.
    """
    default = rows is None
    if default:
        cached = C.__dict__.get("_dominance")
        if cached is not None:
            return cached
        rows = revealed_closure(C)
    cols = cols_of(rows)
    out = [0] * C.size
    t = C.table
    for m in range(3, C.universe.full + 1):
        if m & (m - 1) == 0:
            continue
        x = t[m]
        out[x] |= m & ~min_mask(m, rows, cols) & ~(1 << x)
    out = tuple(out)
    if default:
        C.__dict__["_dominance"] = out
    return out


def _names(C, mask):
    return sorted(C.universe.names(mask))


def _lab(C, i):
    return C.universe.labels[i]


def _nonsingleton(C):
    full = C.universe.full
    return [m for m in range(3, full + 1) if m & (m - 1)]


# -- witness generators -------------------------------------------------------


def _nc(C: ChoiceFunction) -> Iterator[dict]:
    beats = C.pairwise_rows
    for m in C.universe.menus(min_size=2):
        x = C.table[m]
        if not beats[x] & m:
            yield {"menu": _names(C, m), "choice": _lab(C, x)}


def _wcc_star(C: ChoiceFunction) -> Iterator[dict]:
    t = C.table
    for m in C.universe.menus(min_size=3):
        c = t[m]
        for y in bits(m & ~(1 << c)):
            xy = 1 << c | 1 << y
            if not any(t[m & ~(1 << z)] in (c, y) for z in bits(m & ~xy)):
                yield {"menu": _names(C, m), "pair": [_lab(C, c), _lab(C, y)], "choice": _lab(C, c)}


def _path(rows, src, dst):
    """Shortest edge path src -> ... -> dst in the digraph ``rows`` (BFS)."""
    prev = {src: None}
    frontier = [src]
    while frontier:
        nxt = []
        for a in frontier:
            for b in bits(rows[a]):
                if b == dst:
                    path = [b, a]
                    while prev[a] is not None:
                        a = prev[a]
                        path.append(a)
                    return path[::-1]
                if b not in prev:
                    prev[b] = a
                    nxt.append(b)
        frontier = nxt
    return None


def _plus_rows(rows):
    """Reachability by paths of one or more edges (cycles keep their diagonal)."""
    n = len(rows)
    out = list(rows)
    for k in range(n):
        for a in range(n):
            if out[a] >> k & 1:
                out[a] |= out[k]
    return out


def _nbc_star(C: ChoiceFunction) -> Iterator[dict]:
    # chains of two or more revealed steps; a lone step is left to the other axioms
    rel = revealed_rows(C, Mode.FULL_MENU)
    plus = _plus_rows(rel)
    beats = C.pairwise_rows
    for a in range(C.size):
        seen = 0
        for m in bits(rel[a]):
            for b in bits(plus[m] & ~beats[a] & ~seen):
                seen |= 1 << b
                chain = [a] + _path(rel, m, b)
                yield {"chain": [_lab(C, i) for i in chain]}


def _r_warp(C: ChoiceFunction) -> Iterator[dict]:
    d = dominance_rows(C)
    for x in range(C.size):
        for y in bits(d[x]):
            if x < y and d[y] >> x & 1:
                yield {
                    "x": _lab(C, x),
                    "y": _lab(C, y),
                    "menu_x": _names(C, _dominance_menu(C, x, y)),
                    "menu_y": _names(C, _dominance_menu(C, y, x)),
                }


def _dominance_menu(C, x, y):
    rows = revealed_closure(C)
    cols = cols_of(rows)
    for m in C.universe.menus(min_size=2):
        if C.table[m] == x and m >> y & 1 and not min_mask(m, rows, cols) >> y & 1:
            return m
    raise AssertionError("dominance edge without a supporting menu")


def _find_cycle(rows):
    """Some directed cycle (list of nodes, first not repeated) or None."""
    n = len(rows)
    color = [0] * n
    stack_pos = {}
    path = []

    def dfs(a):
        color[a] = 1
        stack_pos[a] = len(path)
        path.append(a)
        for b in bits(rows[a]):
            if color[b] == 1:
                return path[stack_pos[b]:]
            if color[b] == 0:
                found = dfs(b)
                if found:
                    return found
        color[a] = 2
        path.pop()
        del stack_pos[a]
        return None

    for a in range(n):
        if color[a] == 0:
            found = dfs(a)
            if found:
                return found
    return None


def _r_sarp(C: ChoiceFunction) -> Iterator[dict]:
    d = dominance_rows(C)
    cyc = _find_cycle(d)
    if cyc is None:
        return
    steps = []
    for i, a in enumerate(cyc):
        b = cyc[(i + 1) % len(cyc)]
        steps.append({"chosen": _lab(C, a), "over": _lab(C, b), "menu": _names(C, _dominance_menu(C, a, b))})
    yield {"cycle": steps}


def _r_warp_star(C: ChoiceFunction) -> Iterator[dict]:
    t = C.table
    full = C.universe.full
    n = C.size
    for x in range(n):
        for y in bits(C.pairwise_rows[x]):
            pair = 1 << x | 1 << y
            rest = full & ~pair
            for e in _submasks_sorted(rest):
                s = pair | e
                if not e or t[s] != x:
                    continue
                inner = [pair | f for f in _submasks_sorted(e) if f and f != e and t[pair | f] == y]
                if not inner:
                    continue
                for g in _submasks_sorted(full & ~s):
                    if g and t[s | g] == y:
                        yield {
                            "pair": [_lab(C, x), _lab(C, y)],
                            "inner": _names(C, inner[0]),
                            "middle": _names(C, s),
                            "outer": _names(C, s | g),
                        }
                        break


def _submasks_sorted(mask):
    out = []
    sub = mask
    while True:
        out.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & mask
    out.sort(key=lambda m: (m.bit_count(), m))
    return out


def _wwarp(C: ChoiceFunction) -> Iterator[dict]:
    t = C.table
    full = C.universe.full
    for x in range(C.size):
        for y in bits(C.pairwise_rows[x]):
            pair = 1 << x | 1 << y
            for e in _submasks_sorted(full & ~pair):
                s = pair | e
                if not e or t[s] != x:
                    continue
                for f in _submasks_sorted(e):
                    if f and f != e and t[pair | f] == y:
                        yield {"pair": [_lab(C, x), _lab(C, y)], "inner": _names(C, pair | f), "outer": _names(C, s)}
                        break


def _warp(C: ChoiceFunction) -> Iterator[dict]:
    t = C.table
    n = C.size
    chosen_over = [0] * n  # chosen_over[x]: alternatives present when x was chosen
    first_menu = {}
    for m in C.universe.menus(min_size=2):
        x = t[m]
        for y in bits(m & ~(1 << x)):
            if not chosen_over[x] >> y & 1:
                chosen_over[x] |= 1 << y
                first_menu[(x, y)] = m
    for x in range(n):
        for y in bits(chosen_over[x]):
            if x < y and chosen_over[y] >> x & 1:
                yield {
                    "x": _lab(C, x),
                    "y": _lab(C, y),
                    "menu_x": _names(C, first_menu[(x, y)]),
                    "menu_y": _names(C, first_menu[(y, x)]),
                }


def _expansion(C: ChoiceFunction) -> Iterator[dict]:
    t = C.table
    by_choice = [[] for _ in range(C.size)]
    for m in C.universe.menus(min_size=2):
        by_choice[t[m]].append(m)
    for x, menus in enumerate(by_choice):
        for i, s in enumerate(menus):
            for s2 in menus[i + 1:]:
                if t[s | s2] != x:
                    yield {"menus": [_names(C, s), _names(C, s2)], "choice": _lab(C, x), "union_choice": _lab(C, t[s | s2])}


def _negative_expansion(C: ChoiceFunction) -> Iterator[dict]:
    t = C.table
    by_choice = [[] for _ in range(C.size)]
    for m in C.universe.menus(min_size=2):
        by_choice[t[m]].append(m)
    for x, menus in enumerate(by_choice):
        for i, s in enumerate(menus):
            for s2 in menus[i + 1:]:
                u = s | s2
                y = t[u]
                if y != x and (s & s2) >> y & 1:
                    yield {"menus": [_names(C, s), _names(C, s2)], "pair": [_lab(C, x), _lab(C, y)]}


def _always_chosen(C: ChoiceFunction) -> Iterator[dict]:
    beats = C.pairwise_rows
    for m in C.universe.menus(min_size=3):
        for x in bits(m):
            if m & ~(1 << x) & ~beats[x] == 0 and C.table[m] != x:
                yield {"menu": _names(C, m), "winner": _lab(C, x), "choice": _lab(C, C.table[m])}


def _nbc(C: ChoiceFunction) -> Iterator[dict]:
    cyc = _find_cycle(C.pairwise_rows)
    if cyc is not None:
        yield {"cycle": [_lab(C, i) for i in cyc]}


_CHECKERS = {
    AxiomId.NC: _nc,
    AxiomId.WCC_STAR: _wcc_star,
    AxiomId.NBC_STAR: _nbc_star,
    AxiomId.R_WARP: _r_warp,
    AxiomId.R_SARP: _r_sarp,
    AxiomId.R_WARP_STAR: _r_warp_star,
    AxiomId.WWARP: _wwarp,
    AxiomId.WARP: _warp,
    AxiomId.EXPANSION: _expansion,
    AxiomId.NEGATIVE_EXPANSION: _negative_expansion,
    AxiomId.ALWAYS_CHOSEN: _always_chosen,
    AxiomId.NBC: _nbc,
    AxiomId.EXCLUSIVITY: exclusivity_witnesses,
}


def witnesses(C: ChoiceFunction, axiom: AxiomId) -> Iterator[dict]:
    return _CHECKERS[AxiomId(axiom)](C)


def check(C: ChoiceFunction, axiom, all_witnesses: bool = False) -> AxiomVerdict:
    axiom = AxiomId(axiom)
    gen = witnesses(C, axiom)
    if all_witnesses:
        found = tuple(gen)
        return AxiomVerdict(axiom, not found, found[0] if found else None, found)
    w = next(gen, None)
    return AxiomVerdict(axiom, w is None, w)


def passes(C: ChoiceFunction, axiom) -> bool:
    return next(witnesses(C, axiom), None) is None


def first_failure(C: ChoiceFunction, axioms=CBR_AXIOMS) -> Optional[AxiomVerdict]:
    for a in axioms:
        v = check(C, a)
        if not v.passed:
            return v
    return None


def is_cbr(C: ChoiceFunction) -> bool:
    return all(passes(C, a) for a in CBR_AXIOMS)


def is_tcbr(C: ChoiceFunction) -> bool:
    return all(passes(C, a) for a in TCBR_AXIOMS)


# -- replay -------------------------------------------------------------------


def replay(C: ChoiceFunction, axiom, witness: dict) -> bool:
    """True iff ``witness`` really falsifies ``axiom`` on ``C``.

    Checks the witness against the raw choice table, independently of the
    generator that produced it.
    """
    axiom = AxiomId(axiom)
    u = C.universe
    ix = u.index

    def ch(menu):
        return u.labels[C.table[u.mask(menu)]]

    def pc(a, b):
        return ch([a, b]) == a

    if axiom is AxiomId.NC:
        menu, x = witness["menu"], witness["choice"]
        return ch(menu) == x and all(not pc(x, y) for y in menu if y != x)
    if axiom is AxiomId.WCC_STAR:
        menu, (x, y) = witness["menu"], witness["pair"]
        if len(menu) < 3 or ch(menu) not in (x, y):
            return False
        return all(ch([a for a in menu if a != z]) not in (x, y) for z in menu if z not in (x, y))
    if axiom is AxiomId.NBC_STAR:
        chain = witness["chain"]
        rel = revealed_rows(C, Mode.FULL_MENU)
        steps = all(rel[ix(a)] >> ix(b) & 1 for a, b in zip(chain, chain[1:]))
        closes = chain[0] == chain[-1] or not pc(chain[0], chain[-1])
        return len(chain) >= 3 and steps and closes
    if axiom is AxiomId.R_WARP:
        x, y = witness["x"], witness["y"]
        return (
            ch(witness["menu_x"]) == x
            and ch(witness["menu_y"]) == y
            and _survives(C, witness["menu_x"], y)
            and _survives(C, witness["menu_y"], x)
        )
    if axiom is AxiomId.R_SARP:
        steps = witness["cycle"]
        chosen = [s["chosen"] for s in steps]
        if len(set(chosen)) != len(chosen) or len(chosen) < 2:
            return False
        for i, s in enumerate(steps):
            if s["over"] != chosen[(i + 1) % len(chosen)]:
                return False
            if ch(s["menu"]) != s["chosen"] or not _survives(C, s["menu"], s["over"]):
                return False
        return True
    if axiom is AxiomId.R_WARP_STAR:
        (x, y) = witness["pair"]
        a, b, c = (set(witness[k]) for k in ("inner", "middle", "outer"))
        return (
            {x, y} < a < b < c
            and pc(x, y)
            and ch(b) == x
            and ch(a) == y
            and ch(c) == y
        )
    if axiom is AxiomId.WWARP:
        (x, y) = witness["pair"]
        a, b = set(witness["inner"]), set(witness["outer"])
        return {x, y} <= a <= b and pc(x, y) and ch(b) == x and ch(a) == y
    if axiom is AxiomId.WARP:
        x, y = witness["x"], witness["y"]
        mx, my = witness["menu_x"], witness["menu_y"]
        return ch(mx) == x and y in mx and ch(my) == y and x in my
    if axiom is AxiomId.EXPANSION:
        s, s2 = witness["menus"]
        x = witness["choice"]
        return ch(s) == x and ch(s2) == x and ch(sorted(set(s) | set(s2))) != x
    if axiom is AxiomId.NEGATIVE_EXPANSION:
        s, s2 = witness["menus"]
        x, y = witness["pair"]
        both = set(s) & set(s2)
        return {x, y} <= both and ch(s) == x and ch(s2) == x and ch(sorted(set(s) | set(s2))) == y
    if axiom is AxiomId.ALWAYS_CHOSEN:
        menu, x = witness["menu"], witness["winner"]
        return all(pc(x, y) for y in menu if y != x) and ch(menu) != x
    if axiom is AxiomId.NBC:
        cyc = witness["cycle"]
        return len(cyc) >= 3 and all(pc(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))
    if axiom is AxiomId.EXCLUSIVITY:
        return (
            _is_reversal(C, witness["weak"])
            and _is_reversal(C, witness["strong"])
            and witness["weak"]["kind"] == "weak"
            and witness["strong"]["kind"] == "strong"
            and witness["weak"]["pair"] == witness["strong"]["pair"] == witness["pair"]
        )
    raise ValueError(axiom)


def _survives(C, menu, y) -> bool:
    """``y`` is in ``menu`` and outside its minimal set under the revealed closure."""
    u = C.universe
    rows = revealed_closure(C)
    m = u.mask(menu)
    return bool(m >> u.index(y) & 1) and not min_mask(m, rows, cols_of(rows)) >> u.index(y) & 1


def _is_reversal(C, r: dict) -> bool:
    u = C.universe
    x, y = r["pair"]
    base, z = r["base"], r["trigger"]
    ch = lambda menu: u.labels[C.table[u.mask(menu)]]  # noqa: E731
    if z in base or x not in base or y not in base:
        return False
    ok = ch([x, y]) == x and ch(base) == x and ch([*base, z]) == y
    weak = ch([x, z]) == x
    return ok and (weak == (r["kind"] == "weak"))


# -- report -------------------------------------------------------------------


@dataclass
class AnalysisReport:
    alternatives: list
    verdicts: dict = field(default_factory=dict)
    reversals: dict = field(default_factory=dict)
    cbr_representable: bool = False
    tcbr_representable: bool = False

    def to_dict(self) -> dict:
        return {
            "alternatives": list(self.alternatives),
            "axioms": {a.value: v.to_dict() for a, v in self.verdicts.items()},
            "reversals": self.reversals,
            "cbr_representable": self.cbr_representable,
            "tcbr_representable": self.tcbr_representable,
        }

    @classmethod
    def from_dict(cls, d) -> "AnalysisReport":
        return cls(
            alternatives=list(d["alternatives"]),
            verdicts={AxiomId(k): AxiomVerdict.from_dict(k, v) for k, v in d["axioms"].items()},
            reversals=d["reversals"],
            cbr_representable=d["cbr_representable"],
            tcbr_representable=d["tcbr_representable"],
        )


def report(C: ChoiceFunction, all_witnesses: bool = False) -> AnalysisReport:
    verdicts = {a: check(C, a, all_witnesses) for a in AxiomId}
    summary = reversal_summary(C)
    summary["list"] = [r.to_dict(C.universe) for r in _reversals(C)]
    return AnalysisReport(
        alternatives=list(C.universe.labels),
        verdicts=verdicts,
        reversals=summary,
        cbr_representable=all(verdicts[a].passed for a in CBR_AXIOMS),
        tcbr_representable=all(verdicts[a].passed for a in TCBR_AXIOMS),
    )


__all__ = [
    "AxiomId",
    "AxiomVerdict",
    "AnalysisReport",
    "CBR_AXIOMS",
    "TCBR_AXIOMS",
    "Kind",
    "check",
    "passes",
    "replay",
    "report",
    "is_cbr",
    "is_tcbr",
    "first_failure",
    "dominance_rows",
    "revealed_closure",
]
