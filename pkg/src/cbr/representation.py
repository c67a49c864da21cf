"""Two-stage rationale pairs: evaluation, synthesis from data, verification."""

from __future__ import annotations

import enum
import json
import logging
from dataclasses import dataclass
from typing import Optional

from .axioms import CBR_AXIOMS, TCBR_AXIOMS, dominance_rows, first_failure, revealed_closure
from .choice import ChoiceFunction
from .errors import AxiomFailure, InternalInvariantBreach, InvalidRepresentation
from .relations import (
    BinaryRelation,
    Universe,
    bits,
    closure_rows,
    cols_of,
    max_mask,
    min_mask,
    rows_asymmetric,
    rows_complete,
    rows_transitive,
)

log = logging.getLogger(__name__)


class Flavor(enum.Enum):
    CBR = "CBR"
    TCBR = "TCBR"
    RSM = "RSM"
    TSM = "TSM"
    EPH = "EPH"


@dataclass(frozen=True)
class RepresentationPair:
    """``first`` is R (or P1), ``second`` is P (or P2)."""

    first: BinaryRelation
    second: BinaryRelation
    flavor: Flavor = Flavor.CBR

    def __post_init__(self):
        if self.first.universe != self.second.universe:
            raise ValueError("rationales must share a universe")
        object.__setattr__(self, "flavor", Flavor(self.flavor))

    @property
    def universe(self) -> Universe:
        return self.first.universe

    def flavor_valid(self) -> bool:
        return flavor_valid(self.first.rows, self.second.rows, self.flavor)

    def to_dict(self) -> dict:
        return {
            "flavor": self.flavor.value,
            "alternatives": list(self.universe.labels),
            "R": [list(p) for p in self.first.pairs()],
            "P": [list(p) for p in self.second.pairs()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d, universe: Optional[Universe] = None) -> "RepresentationPair":
        u = universe or Universe(tuple(d["alternatives"]))
        return cls(BinaryRelation.from_pairs(u, d["R"]), BinaryRelation.from_pairs(u, d["P"]), Flavor(d["flavor"]))

    @classmethod
    def from_json(cls, text: str, universe: Optional[Universe] = None) -> "RepresentationPair":
        return cls.from_dict(json.loads(text), universe)


def flavor_valid(first, second, flavor: Flavor) -> bool:
    flavor = Flavor(flavor)
    if not (rows_asymmetric(first) and rows_asymmetric(second)):
        return False
    if flavor is Flavor.CBR:
        return rows_transitive(first) and rows_complete(second)
    if flavor is Flavor.TCBR:
        return rows_transitive(first) and rows_complete(second) and rows_transitive(second)
    if flavor is Flavor.RSM:
        return True
    if flavor is Flavor.TSM:
        return rows_transitive(first) and rows_transitive(second)
    # EPH: two linear orders
    return all(rows_complete(r) and rows_transitive(r) for r in (first, second))


# -- evaluation ---------------------------------------------------------------


def eval_rows(menu: int, first, second, flavor: Flavor, first_cols=None, second_cols=None) -> int:
    """Index chosen from ``menu``, or -1 when there is no unique choice."""
    fc = first_cols if first_cols is not None else cols_of(first)
    sc = second_cols if second_cols is not None else cols_of(second)
    if flavor is Flavor.CBR or flavor is Flavor.TCBR:
        short = menu & ~min_mask(menu, first, fc)
    elif flavor is Flavor.EPH:
        short = menu
        if menu & (menu - 1):
            worst = [x for x in bits(menu) if not first[x] & menu]
            if len(worst) != 1:
                return -1
            short = menu & ~(1 << worst[0])
    else:
        short = max_mask(menu, fc)
    best = max_mask(short, sc)
    if best == 0 or best & (best - 1):
        return -1
    return best.bit_length() - 1


def evaluate(menu, rep: RepresentationPair) -> Optional[str]:
    """The alternative ``rep`` picks from ``menu``, or ``None`` for no unique choice."""
    u = rep.universe
    m = menu if isinstance(menu, int) else u.mask(menu)
    if m <= 0 or m & ~u.full:
        raise ValueError("menu must be a nonempty subset of the universe")
    c = eval_rows(m, rep.first.rows, rep.second.rows, rep.flavor)
    return None if c < 0 else u.labels[c]


def induced_table(first, second, flavor: Flavor, n: int, stop_early: bool = False):
    """``(table, failing_menus)``; the table is None if any menu fails."""
    fc, sc = cols_of(first), cols_of(second)
    table = [-1] * (1 << n)
    bad = []
    for m in range(1, 1 << n):
        c = eval_rows(m, first, second, flavor, fc, sc)
        if c < 0:
            bad.append(m)
            if stop_early:
                break
        table[m] = c
    return (None if bad else tuple(table)), bad


def induced_choice(rep: RepresentationPair) -> ChoiceFunction:
    """Totalize :func:`evaluate`; raises :class:`InvalidRepresentation` listing failing menus."""
    u = rep.universe
    table, bad = induced_table(rep.first.rows, rep.second.rows, rep.flavor, u.size)
    if table is None:
        bad.sort(key=lambda m: (m.bit_count(), m))
        raise InvalidRepresentation(bad, u)
    return ChoiceFunction(u, table)


@dataclass(frozen=True)
class Verification:
    ok: bool
    mismatches: tuple = ()

    def __bool__(self):
        return self.ok


def verify(C: ChoiceFunction, rep: RepresentationPair) -> Verification:
    """Compare ``C`` menu by menu against what ``rep`` picks."""
    if rep.universe != C.universe:
        raise ValueError("representation and choice function use different universes")
    u = C.universe
    fc, sc = cols_of(rep.first.rows), cols_of(rep.second.rows)
    bad = []
    for m in u.menus(min_size=1):
        got = eval_rows(m, rep.first.rows, rep.second.rows, rep.flavor, fc, sc)
        if got != C.table[m]:
            bad.append(
                {
                    "menu": sorted(u.names(m)),
                    "expected": u.labels[C.table[m]],
                    "got": None if got < 0 else u.labels[got],
                }
            )
    return Verification(not bad, tuple(bad))


# -- synthesis ----------------------------------------------------------------


def _pair(C, first, second, flavor):
    u = C.universe
    return RepresentationPair(BinaryRelation(u, first), BinaryRelation(u, second), flavor)


def synthesize_cbr(C: ChoiceFunction) -> RepresentationPair:
    """Build ``(R^c, P1 | P2)`` from the data; raises :class:`AxiomFailure` if A1-A4 fail."""
    failed = first_failure(C, CBR_AXIOMS)
    if failed is not None:
        raise AxiomFailure(failed)
    r = revealed_closure(C)
    p1 = dominance_rows(C, r)
    p1_inv = cols_of(p1)
    p = tuple(p1[a] | (r[a] & ~(p1[a] | p1_inv[a])) for a in range(C.size))
    if not (rows_complete(p) and rows_asymmetric(p)):
        raise InternalInvariantBreach("synthesized second rationale is not a tournament")
    return _pair(C, r, p, Flavor.CBR)


def synthesize_tcbr(C: ChoiceFunction, strict: bool = True) -> RepresentationPair:
    """Build ``(R^c, tc(P1) | rest of R^c)`` with a linear second rationale.

    With ``strict=False`` an order-check failure is logged and the pair is
    returned anyway instead of raising :class:`InternalInvariantBreach`.
    """
    failed = first_failure(C, TCBR_AXIOMS)
    if failed is not None:
        raise AxiomFailure(failed)
    r = revealed_closure(C)
    p1 = closure_rows(dominance_rows(C, r))
    p1_inv = cols_of(p1)
    p = tuple(p1[a] | (r[a] & ~(p1[a] | p1_inv[a])) for a in range(C.size))
    if not (rows_complete(p) and rows_asymmetric(p) and rows_transitive(p)):
        msg = "synthesized second rationale is not a linear order"
        if strict:
            raise InternalInvariantBreach(msg)
        log.warning(msg)
    return _pair(C, r, p, Flavor.TCBR)
