"""Choice functions, their JSON document format, and the pairwise relation."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

from .errors import (
    ChoiceNotInMenu,
    DuplicateMenu,
    MalformedDocument,
    MissingMenu,
    UnknownAlternative,
)
from .relations import BinaryRelation, Universe, bits


@dataclass(frozen=True)
class ChoiceFunction:
    """A total single-valued choice function.

    ``table[mask]`` is the index of the alternative chosen from menu ``mask``;
    ``table[0]`` is ``-1``.  Singletons always choose their only member.
    """

    universe: Universe
    table: tuple[int, ...]

    def __post_init__(self):
        table = tuple(self.table)
        object.__setattr__(self, "table", table)
        if len(table) != 1 << self.universe.size:
            raise ValueError("choice table must have one entry per subset of the universe")
        if table[0] != -1:
            raise ValueError("the empty menu has no choice (table[0] must be -1)")
        for m in range(1, len(table)):
            c = table[m]
            if not (0 <= c < self.universe.size and m >> c & 1):
                raise ValueError(f"choice from {self.universe.fmt(m)} is not a member of the menu")

    @classmethod
    def from_mapping(cls, universe: Universe, choices: Mapping) -> "ChoiceFunction":
        """Build from ``{menu: label}`` where menus are label iterables or masks.

        Singleton menus may be omitted; every other menu must be present.
        """
        table = [-1] * (1 << universe.size)
        for menu, pick in choices.items():
            m = menu if isinstance(menu, int) else universe.mask(menu)
            table[m] = universe.index(pick)
        for i in range(universe.size):
            table[1 << i] = i
        missing = [m for m in range(1, len(table)) if table[m] < 0]
        if missing:
            raise MissingMenu(f"no choice for menu {universe.fmt(missing[0])}", universe.names(missing[0]))
        return cls(universe, tuple(table))

    @classmethod
    def from_rows(cls, labels, rows) -> "ChoiceFunction":
        """Convenience constructor: ``rows`` maps strings like ``"xyz"`` to labels."""
        u = Universe(tuple(labels))
        return cls.from_mapping(u, {tuple(k): v for k, v in rows.items()})

    @property
    def size(self) -> int:
        return self.universe.size

    def __call__(self, menu) -> str:
        return choice(self, menu)

    def pick(self, mask: int) -> int:
        return self.table[mask]

    @cached_property
    def pairwise_rows(self) -> tuple[int, ...]:
        n = self.universe.size
        rows = [0] * n
        for a in range(n):
            for b in range(a + 1, n):
                if self.table[1 << a | 1 << b] == a:
                    rows[a] |= 1 << b
                else:
                    rows[b] |= 1 << a
        return tuple(rows)

    def beats(self, a: int, b: int) -> bool:
        """``a`` is chosen over ``b`` from the pair menu."""
        return bool(self.pairwise_rows[a] >> b & 1)

    def items(self):
        """``(menu_mask, chosen_index)`` for every non-singleton menu, canonical order."""
        for m in self.universe.menus(min_size=2):
            yield m, self.table[m]

    def __repr__(self) -> str:
        return f"ChoiceFunction({self.universe.labels!r}, {len(self.table) - 1} menus)"


def choice(C: ChoiceFunction, menu) -> str:
    m = menu if isinstance(menu, int) else C.universe.mask(menu)
    if m <= 0 or m & ~C.universe.full:
        raise ValueError("menu must be a nonempty subset of the universe")
    return C.universe.labels[C.table[m]]


def pairwise(C: ChoiceFunction) -> BinaryRelation:
    """``(a, b)`` is in the result iff ``a`` is chosen from ``{a, b}``."""
    return BinaryRelation(C.universe, C.pairwise_rows)


# -- document format ---------------------------------------------------------


def _canonical_menu(universe: Universe, m: int) -> list[str]:
    return sorted(universe.names(m))


def _menu_order(universe: Universe, m: int):
    return (m.bit_count(), _canonical_menu(universe, m))


def to_document(C: ChoiceFunction) -> dict:
    u = C.universe
    menus = sorted((m for m in range(1, u.full + 1) if m.bit_count() >= 2), key=lambda m: _menu_order(u, m))
    return {
        "alternatives": list(u.labels),
        "choices": [{"menu": _canonical_menu(u, m), "choice": u.labels[C.table[m]]} for m in menus],
    }


def serialize(C: ChoiceFunction) -> str:
    return json.dumps(to_document(C), indent=2) + "\n"


def from_document(doc) -> ChoiceFunction:
    if not isinstance(doc, dict):
        raise MalformedDocument("document must be a JSON object")
    extra = set(doc) - {"alternatives", "choices"}
    if extra:
        raise MalformedDocument(f"unknown top-level keys: {sorted(extra)}")
    if "alternatives" not in doc or "choices" not in doc:
        raise MalformedDocument("document needs 'alternatives' and 'choices'")
    alts = doc["alternatives"]
    if not isinstance(alts, list) or not all(isinstance(a, str) for a in alts):
        raise MalformedDocument("'alternatives' must be a list of strings")
    try:
        u = Universe(tuple(alts))
    except ValueError as exc:
        raise MalformedDocument(str(exc)) from None
    entries = doc["choices"]
    if not isinstance(entries, list):
        raise MalformedDocument("'choices' must be a list")

    table = [-1] * (1 << u.size)
    seen = set()
    for entry in entries:
        if not isinstance(entry, dict) or set(entry) != {"menu", "choice"}:
            raise MalformedDocument(f"choice entry must have exactly 'menu' and 'choice': {entry!r}")
        menu, pick = entry["menu"], entry["choice"]
        if not isinstance(menu, list) or not menu or not all(isinstance(a, str) for a in menu):
            raise MalformedDocument(f"menu must be a nonempty list of labels: {menu!r}", menu)
        if not isinstance(pick, str):
            raise MalformedDocument(f"choice must be a label: {pick!r}", menu)
        if len(set(menu)) != len(menu):
            raise MalformedDocument(f"menu {menu!r} repeats an alternative", menu)
        for a in [*menu, pick]:
            if a not in u._position:
                raise UnknownAlternative(f"unknown alternative {a!r} in menu {menu!r}", menu)
        m = u.mask(menu)
        if m in seen:
            raise DuplicateMenu(f"menu {sorted(menu)!r} listed more than once", menu)
        seen.add(m)
        c = u.index(pick)
        if not m >> c & 1:
            raise ChoiceNotInMenu(f"choice {pick!r} is not in menu {sorted(menu)!r}", menu)
        table[m] = c

    for i in range(u.size):
        table[1 << i] = i
    for m in u.menus(min_size=2):
        if table[m] < 0:
            raise MissingMenu(f"no choice for menu {_canonical_menu(u, m)!r}", _canonical_menu(u, m))
    return ChoiceFunction(u, tuple(table))


def parse(text: str) -> ChoiceFunction:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"invalid JSON: {exc}") from None
    return from_document(doc)


def load(path) -> ChoiceFunction:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
