"""Bounds on the rationales of any CBR representation of a choice function.

``R^c`` (closure of the revealed relation) is contained in every first
rationale; pairs in ``Q̂`` are in none.  The admissible first rationales are
exactly the transitive relations between ``R^c`` and ``pairwise ∖ Q̂``, and
for a given first rationale ``R`` the admissible second rationales are the
tournaments containing ``P̂_R ∪ (pairwise ∖ R)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .axioms import CBR_AXIOMS, dominance_rows, first_failure
from .choice import ChoiceFunction
from .errors import InternalInvariantBreach, NotRepresentable
from .relations import (
    BinaryRelation,
    Universe,
    bits,
    closure_rows,
    rows_asymmetric,
    rows_complete,
    rows_transitive,
)
from .reversals import Kind, Mode, _reversals, revealed_rows

DEFAULT_CAP = 256


def _require_cbr(C: ChoiceFunction) -> None:
    failed = first_failure(C, CBR_AXIOMS)
    if failed is not None:
        raise NotRepresentable(failed)


def p_hat(C: ChoiceFunction, R: BinaryRelation) -> BinaryRelation:
    """``(x, y)`` iff some menu chooses ``x`` while ``y`` is present and not R-minimal."""
    return BinaryRelation(C.universe, dominance_rows(C, R.rows))


def q_hat_rows(C: ChoiceFunction) -> tuple[int, ...]:
    cached = C.__dict__.get("_q_hat")
    if cached is not None:
        return cached
    n = C.size
    rows = [0] * n
    weak_pairs = set()
    for r in _reversals(C):
        if r.kind is Kind.STRONG:
            # strong (x w) reversal on S: x is kept off everything else in S,
            # and nothing in S may sit above x
            rows[r.x] |= r.base & ~(1 << r.x)
            for a in bits(r.base & ~(1 << r.x)):
                rows[a] |= 1 << r.x
        else:
            weak_pairs.add((r.x, r.y))
    t = C.table
    for w, x in weak_pairs:
        need = 1 << w | 1 << x
        for m in range(1, C.universe.full + 1):
            if m & need == need and t[m] == w:
                rows[x] |= m & ~(1 << x)
    out = tuple(rows)
    C.__dict__["_q_hat"] = out
    return out


def q_hat(C: ChoiceFunction) -> BinaryRelation:
    """Pairs that no first rationale of a representation can contain."""
    return BinaryRelation(C.universe, q_hat_rows(C))


def r_min_rows(C: ChoiceFunction, check_modes: bool = False) -> tuple[int, ...]:
    small = closure_rows(revealed_rows(C, Mode.SMALL_MENU))
    if check_modes:
        full = closure_rows(revealed_rows(C, Mode.FULL_MENU))
        if full != small:
            raise InternalInvariantBreach("small-menu and full-menu revealed relations disagree")
    return small


def minimal_representation(C: ChoiceFunction, check_modes: bool = False):
    """``(R^c, P^c)``: the smallest first rationale and the lower bound ``P̂`` for it.

    ``P^c`` is generally not complete; any tournament containing it and
    ``pairwise ∖ R^c`` completes the representation.
    """
    _require_cbr(C)
    r = r_min_rows(C, check_modes)
    u = C.universe
    return BinaryRelation(u, r), BinaryRelation(u, dominance_rows(C, r))


def _allowed_rows(C: ChoiceFunction) -> tuple[int, ...]:
    q = q_hat_rows(C)
    return tuple(b & ~qq for b, qq in zip(C.pairwise_rows, q))


def r_max(C: ChoiceFunction, cap: int = DEFAULT_CAP) -> tuple[list[BinaryRelation], bool]:
    """Inclusion-maximal transitive relations between ``R^c`` and ``pairwise ∖ Q̂``.

    Depth-first over the free pairs in index order, including a pair before
    excluding it; each inclusion is closed transitively and the branch is cut
    as soon as the closure leaves the allowed set or hits an excluded pair.
    Returns ``(relations, truncated)``.
    """
    _require_cbr(C)
    base = r_min_rows(C)
    allowed = _allowed_rows(C)
    if any(b & ~a for b, a in zip(base, allowed)):
        raise InternalInvariantBreach("R^c is not inside pairwise minus Q-hat")
    n = C.size
    free = [(a, b) for a in range(n) for b in bits(allowed[a] & ~base[a])]

    found: list[tuple[int, ...]] = []
    truncated = False

    def fits(rows, excluded):
        return all(r & ~a == 0 and r & e == 0 for r, a, e in zip(rows, allowed, excluded))

    def extendable(rows):
        for a in range(n):
            for b in bits(allowed[a] & ~rows[a]):
                grown = list(rows)
                grown[a] |= 1 << b
                grown = closure_rows(grown)
                if all(g & ~al == 0 for g, al in zip(grown, allowed)):
                    return True
        return False

    def dfs(i, rows, excluded):
        nonlocal truncated
        if truncated:
            return
        while i < len(free) and rows[free[i][0]] >> free[i][1] & 1:
            i += 1
        if i == len(free):
            if not extendable(rows):
                if len(found) >= cap:
                    truncated = True
                    return
                found.append(rows)
            return
        a, b = free[i]
        grown = list(rows)
        grown[a] |= 1 << b
        grown = closure_rows(grown)
        if fits(grown, excluded):
            dfs(i + 1, grown, excluded)
        ex = list(excluded)
        ex[a] |= 1 << b
        dfs(i + 1, rows, tuple(ex))

    dfs(0, tuple(base), (0,) * n)
    u = C.universe
    return [BinaryRelation(u, r) for r in found], truncated


def in_class(C: ChoiceFunction, R: BinaryRelation, P: BinaryRelation) -> bool:
    """Membership test for the full class of CBR representations of ``C``."""
    _require_cbr(C)
    r, p = R.rows, P.rows
    if not (rows_transitive(r) and rows_asymmetric(r)):
        return False
    if not (rows_complete(p) and rows_asymmetric(p)):
        return False
    base = r_min_rows(C)
    allowed = _allowed_rows(C)
    if any(b & ~x for b, x in zip(base, r)) or any(x & ~a for x, a in zip(r, allowed)):
        return False
    need = dominance_rows(C, r)
    pw = C.pairwise_rows
    return all((nd | (w & ~x)) & ~pp == 0 for nd, w, x, pp in zip(need, pw, r, p))


@dataclass
class IdentificationReport:
    r_min: BinaryRelation
    p_min: BinaryRelation
    q_hat: BinaryRelation
    r_max: list = field(default_factory=list)
    truncated: bool = False

    def to_dict(self) -> dict:
        return {
            "alternatives": list(self.r_min.universe.labels),
            "r_min": [list(p) for p in self.r_min.pairs()],
            "p_min": [list(p) for p in self.p_min.pairs()],
            "q_hat": [list(p) for p in self.q_hat.pairs()],
            "r_max": [[list(p) for p in r.pairs()] for r in self.r_max],
            "truncated": self.truncated,
        }

    @classmethod
    def from_dict(cls, d) -> "IdentificationReport":
        u = Universe(tuple(d["alternatives"]))
        rel = lambda ps: BinaryRelation.from_pairs(u, ps)  # noqa: E731
        return cls(rel(d["r_min"]), rel(d["p_min"]), rel(d["q_hat"]), [rel(r) for r in d["r_max"]], d["truncated"])


def identify(C: ChoiceFunction, cap: int = DEFAULT_CAP) -> IdentificationReport:
    r, p = minimal_representation(C)
    maxima, truncated = r_max(C, cap)
    return IdentificationReport(r, p, q_hat(C), maxima, truncated)
