"""Choice reversals, the relation they reveal, and the structural checks built on them.

An ``(x, y)`` reversal due to ``z`` is a base menu ``S`` with ``{x, y} <= S``,
``z`` not in ``S``, ``C({x,y}) = C(S) = x`` and ``C(S | {z}) = y``.  It is
weak when ``x`` beats ``z`` pairwise and strong when ``z`` beats ``x``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .choice import ChoiceFunction
from .errors import NotDecomposable
from .relations import BinaryRelation, bits


class Kind(enum.Enum):
    WEAK = "weak"
    STRONG = "strong"


class Mode(enum.Enum):
    FULL_MENU = "full"
    SMALL_MENU = "small"


@dataclass(frozen=True, order=True)
class Reversal:
    x: int
    y: int
    base_size: int
    base: int
    trigger: int
    kind: Kind

    @property
    def pair(self) -> tuple[int, int]:
        return self.x, self.y

    @property
    def top(self) -> int:
        return self.base | 1 << self.trigger

    def to_dict(self, universe) -> dict:
        lab = universe.labels
        return {
            "pair": [lab[self.x], lab[self.y]],
            "base": sorted(universe.names(self.base)),
            "trigger": lab[self.trigger],
            "kind": self.kind.value,
        }

    def describe(self, universe) -> str:
        lab = universe.labels
        return (
            f"{self.kind.value} ({lab[self.x]}{lab[self.y]}) reversal due to "
            f"{lab[self.trigger]} on {universe.fmt(self.base)}"
        )


@dataclass(frozen=True)
class Verdict:
    name: str
    passed: bool
    witness: Optional[dict] = None


def _reversals(C: ChoiceFunction) -> tuple[Reversal, ...]:
    cached = C.__dict__.get("_reversals")
    if cached is not None:
        return cached
    n = C.size
    full = C.universe.full
    table = C.table
    beats = C.pairwise_rows
    found = []
    for x in range(n):
        for y in bits(beats[x]):
            pair = 1 << x | 1 << y
            rest = full & ~pair
            for extra in _submasks(rest):
                base = pair | extra
                if table[base] != x:
                    continue
                for z in bits(rest & ~extra):
                    if table[base | 1 << z] == y:
                        kind = Kind.WEAK if beats[x] >> z & 1 else Kind.STRONG
                        found.append(Reversal(x, y, base.bit_count(), base, z, kind))
    found.sort()
    result = tuple(found)
    C.__dict__["_reversals"] = result
    return result


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def find_reversals(C: ChoiceFunction) -> list[Reversal]:
    """Every reversal of ``C``, sorted by pair, base size, base mask, trigger."""
    return list(_reversals(C))


def revealed_rows(C: ChoiceFunction, mode: Mode = Mode.FULL_MENU) -> tuple[int, ...]:
    key = "_revealed_" + mode.value
    cached = C.__dict__.get(key)
    if cached is not None:
        return cached
    rows = _revealed_full(C) if mode is Mode.FULL_MENU else _revealed_small(C)
    C.__dict__[key] = rows
    return rows


def _revealed_full(C: ChoiceFunction) -> tuple[int, ...]:
    rows = [0] * C.size
    for r in _reversals(C):
        if r.kind is Kind.WEAK:
            rows[r.x] |= 1 << r.y  # weak (xy) due z: x above y
            rows[r.y] |= 1 << r.trigger  # weak (wx) due y: x above y
        else:
            rows[r.trigger] |= 1 << r.x  # strong (yw) due x: x above y
    return tuple(rows)


def _revealed_small(C: ChoiceFunction) -> tuple[int, ...]:
    n = C.size
    t = C.table
    b = C.pairwise_rows

    def gt(p, q):
        return b[p] >> q & 1

    rows = [0] * n
    for x in range(n):
        for y in range(n):
            if y == x or not gt(x, y):
                continue
            hit = False
            for z in range(n):
                if z in (x, y):
                    continue
                c = t[1 << x | 1 << y | 1 << z]
                # (i) x > y > z, x > z, C(xyz) = y
                if gt(y, z) and gt(x, z) and c == y:
                    hit = True
                # (ii) z > x > y, z > y, C(xyz) = x
                elif gt(z, x) and gt(z, y) and c == x:
                    hit = True
                # (iii) y > z > x > y, C(xyz) = z
                elif gt(y, z) and gt(z, x) and c == z:
                    hit = True
                # (iv) x > y > z, C(xyz) = x, C(yzw) = y, C(xyzw) = z: a strong
                # (yz) reversal due to x only shows up on the quadruple
                elif gt(y, z) and c == x:
                    yz = 1 << y | 1 << z
                    for w in range(n):
                        if w not in (x, y, z) and t[yz | 1 << w] == y and t[yz | 1 << w | 1 << x] == z:
                            hit = True
                            break
                if hit:
                    break
            if hit:
                rows[x] |= 1 << y
    return tuple(rows)


def revealed_r(C: ChoiceFunction, mode: Mode = Mode.FULL_MENU) -> BinaryRelation:
    """The reversal-revealed relation, from all menus or from menus of at most four alternatives."""
    return BinaryRelation(C.universe, revealed_rows(C, mode))


# -- single / double reversals -----------------------------------------------


def _idx(C, a):
    return a if isinstance(a, int) else C.universe.index(a)


def _supersets(C: ChoiceFunction, mask: int, strict: bool = True):
    rest = C.universe.full & ~mask
    out = [mask | e for e in _submasks(rest) if e or not strict]
    out.sort(key=lambda m: (m.bit_count(), m))
    return out


def has_single_reversal(C: ChoiceFunction, x, y) -> Optional[tuple[int, int]]:
    """Chain ``({x,y}, S)`` with ``x`` beating ``y`` pairwise and ``C(S) = y``."""
    x, y = _idx(C, x), _idx(C, y)
    if x == y:
        raise ValueError("a reversal needs two distinct alternatives")
    pair = 1 << x | 1 << y
    if C.table[pair] != x:
        return None
    for s in _supersets(C, pair):
        if C.table[s] == y:
            return pair, s
    return None


def has_double_reversal(C: ChoiceFunction, x, y) -> Optional[tuple[int, int, int]]:
    """Chain ``({x,y}, S, S')`` with ``C({x,y}) = x``, ``C(S) = y``, ``C(S') = x``."""
    x, y = _idx(C, x), _idx(C, y)
    if x == y:
        raise ValueError("a reversal needs two distinct alternatives")
    pair = 1 << x | 1 << y
    if C.table[pair] != x:
        return None
    for s in _supersets(C, pair):
        if C.table[s] != y:
            continue
        for s2 in _supersets(C, s):
            if C.table[s2] == x:
                return pair, s, s2
    return None


def double_reversal_pairs(C: ChoiceFunction) -> list[tuple[int, int]]:
    n = C.size
    return [(x, y) for x in range(n) for y in range(n) if x != y and has_double_reversal(C, x, y)]


def decompose_double(C: ChoiceFunction, witness: tuple[int, int, int]) -> tuple[Reversal, Reversal]:
    """Split a double-reversal chain into a strong and a weak reversal.

    Returns the strong ``(x, y)`` reversal due to some ``z1`` whose menus lie
    inside the middle menu of the chain, together with a weak ``(z1, x)``
    reversal due to some ``z2`` inside the top menu.
    """
    pair, mid, top = witness
    x = C.table[pair]
    (y,) = [i for i in bits(pair) if i != x]
    revs = _reversals(C)
    for s in revs:
        if s.kind is not Kind.STRONG or s.pair != (x, y) or s.top & ~mid:
            continue
        z1 = s.trigger
        for w in revs:
            if w.kind is Kind.WEAK and w.pair == (z1, x) and not w.top & ~top:
                return s, w
    lab = C.universe.labels
    raise NotDecomposable(
        f"double ({lab[x]}{lab[y]}) reversal along "
        f"{' < '.join(C.universe.fmt(m) for m in witness)} has no strong/weak decomposition"
    )


# -- structural properties ---------------------------------------------------


def _smp_ok(C: ChoiceFunction, r: Reversal) -> bool:
    t = C.table
    b = C.pairwise_rows
    x, y, z = r.x, r.y, r.trigger
    xyz = 1 << x | 1 << y | 1 << z

    def gt(p, q):
        return b[p] >> q & 1

    if r.kind is Kind.WEAK:
        return bool(gt(x, y) and gt(y, z) and t[xyz] == y)
    if gt(x, y) and gt(y, z) and gt(z, x) and t[xyz] == y:
        return True
    if gt(z, x) and gt(x, y) and t[xyz] == z:
        for w in range(C.size):
            if w in (x, y, z):
                continue
            if t[1 << x | 1 << y | 1 << w] == x and t[xyz | 1 << w] == y:
                return True
    return False


def check_smp(C: ChoiceFunction) -> Verdict:
    """Every reversal is already visible on pairs, triples (and one quadruple)."""
    for r in _reversals(C):
        if not _smp_ok(C, r):
            return Verdict("SMP", False, {"reversal": r.to_dict(C.universe)})
    return Verdict("SMP", True)


def exclusivity_witnesses(C: ChoiceFunction):
    first = {}
    for r in _reversals(C):
        first.setdefault((r.pair, r.kind), r)
    for (pair, kind), r in sorted(first.items(), key=lambda kv: kv[1]):
        if kind is Kind.WEAK and (pair, Kind.STRONG) in first:
            u = C.universe
            yield {
                "pair": [u.labels[pair[0]], u.labels[pair[1]]],
                "weak": r.to_dict(u),
                "strong": first[(pair, Kind.STRONG)].to_dict(u),
            }


def check_exclusivity(C: ChoiceFunction) -> Verdict:
    """No pair displays both a weak and a strong reversal."""
    w = next(exclusivity_witnesses(C), None)
    return Verdict("EXCLUSIVITY", w is None, w)


def reversal_summary(C: ChoiceFunction) -> dict:
    revs = _reversals(C)
    lab = C.universe.labels
    return {
        "weak": sum(r.kind is Kind.WEAK for r in revs),
        "strong": sum(r.kind is Kind.STRONG for r in revs),
        "double_reversal_pairs": [[lab[a], lab[b]] for a, b in double_reversal_pairs(C)],
    }
