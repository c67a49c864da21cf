"""Finite binary relations over a labelled universe.

Alternatives are identified by their index in a :class:`Universe`.  A menu
is an ``int`` bitmask over those indices and a relation is stored as one
bitmask row per alternative: bit ``b`` of ``rows[a]`` is set iff ``(a, b)``
belongs to the relation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

MAX_UNIVERSE = 16


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def subsets(mask: int) -> Iterator[int]:
    """Yield every submask of ``mask`` (including 0 and ``mask`` itself)."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class Universe:
    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if not 1 <= len(labels) <= MAX_UNIVERSE:
            raise ValueError(f"universe size must be in 1..{MAX_UNIVERSE}, got {len(labels)}")
        if any(not isinstance(a, str) or not a for a in labels):
            raise ValueError("alternative labels must be non-empty strings")
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate alternative labels in {labels!r}")

    @classmethod
    def of_size(cls, n: int) -> "Universe":
        """Default labels ``a, b, c, ...`` for an ``n``-element universe."""
        return cls(tuple("abcdefghijklmnop"[:n]))

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    @cached_property
    def _position(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.labels)}

    def index(self, label: str) -> int:
        try:
            return self._position[label]
        except KeyError:
            raise KeyError(f"unknown alternative {label!r}") from None

    def mask(self, labels: Iterable[str]) -> int:
        m = 0
        for a in labels:
            m |= 1 << self.index(a)
        return m

    def names(self, mask: int) -> list[str]:
        return [self.labels[i] for i in bits(mask)]

    def menus(self, min_size: int = 1) -> list[int]:
        """Nonempty menus ordered by size, then by mask."""
        out = [m for m in range(1, self.full + 1) if m.bit_count() >= min_size]
        out.sort(key=lambda m: (m.bit_count(), m))
        return out

    def fmt(self, mask: int) -> str:
        return "{" + ",".join(self.names(mask)) + "}"


@dataclass(frozen=True)
class BinaryRelation:
    """An irreflexive set of ordered pairs, stored as bitmask rows.

    Asymmetry, transitivity and completeness are predicates, not
    construction-time constraints, so cyclic relations stay representable.
    """

    universe: Universe
    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        n = self.universe.size
        if len(rows) != n:
            raise ValueError(f"expected {n} rows, got {len(rows)}")
        full = self.universe.full
        for a, row in enumerate(rows):
            if row & ~full:
                raise ValueError("relation row references an alternative outside the universe")
            if row >> a & 1:
                raise ValueError(f"reflexive pair ({self.universe.labels[a]}, {self.universe.labels[a]})")

    @classmethod
    def empty(cls, universe: Universe) -> "BinaryRelation":
        return cls(universe, (0,) * universe.size)

    @classmethod
    def from_pairs(cls, universe: Universe, pairs: Iterable[Sequence[str]]) -> "BinaryRelation":
        rows = [0] * universe.size
        for a, b in pairs:
            rows[universe.index(a)] |= 1 << universe.index(b)
        return cls(universe, tuple(rows))

    @classmethod
    def from_index_pairs(cls, universe: Universe, pairs: Iterable[tuple[int, int]]) -> "BinaryRelation":
        rows = [0] * universe.size
        for a, b in pairs:
            rows[a] |= 1 << b
        return cls(universe, tuple(rows))

    @classmethod
    def linear_order(cls, universe: Universe, ranking: Sequence[str]) -> "BinaryRelation":
        """The strict linear order ranking[0] > ranking[1] > ..."""
        if sorted(ranking) != sorted(universe.labels):
            raise ValueError("a linear order must rank every alternative exactly once")
        return cls.from_pairs(
            universe, [(ranking[i], ranking[j]) for i in range(len(ranking)) for j in range(i + 1, len(ranking))]
        )

    @cached_property
    def cols(self) -> tuple[int, ...]:
        """``cols[b]`` is the mask of all ``a`` with ``(a, b)`` in the relation."""
        cols = [0] * self.universe.size
        for a, row in enumerate(self.rows):
            for b in bits(row):
                cols[b] |= 1 << a
        return tuple(cols)

    def has(self, a: int, b: int) -> bool:
        return bool(self.rows[a] >> b & 1)

    def index_pairs(self) -> list[tuple[int, int]]:
        return [(a, b) for a, row in enumerate(self.rows) for b in bits(row)]

    def pairs(self) -> list[tuple[str, str]]:
        lab = self.universe.labels
        return [(lab[a], lab[b]) for a, b in self.index_pairs()]

    def __contains__(self, pair) -> bool:
        a, b = pair
        return self.has(self.universe.index(a), self.universe.index(b))

    def __len__(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def __iter__(self):
        return iter(self.pairs())

    def _check(self, other: "BinaryRelation") -> None:
        if self.universe != other.universe:
            raise ValueError("relations are over different universes")

    def __or__(self, other: "BinaryRelation") -> "BinaryRelation":
        self._check(other)
        return BinaryRelation(self.universe, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def __and__(self, other: "BinaryRelation") -> "BinaryRelation":
        self._check(other)
        return BinaryRelation(self.universe, tuple(a & b for a, b in zip(self.rows, other.rows)))

    def __sub__(self, other: "BinaryRelation") -> "BinaryRelation":
        self._check(other)
        return BinaryRelation(self.universe, tuple(a & ~b for a, b in zip(self.rows, other.rows)))

    def __le__(self, other: "BinaryRelation") -> bool:
        self._check(other)
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def __lt__(self, other: "BinaryRelation") -> bool:
        return self <= other and self != other

    def inverse(self) -> "BinaryRelation":
        return BinaryRelation(self.universe, self.cols)

    def __repr__(self) -> str:
        body = ", ".join(f"{a}{b}" for a, b in self.pairs())
        return f"BinaryRelation({{{body}}})"


# -- raw row helpers (shared by the hot loops of the oracle) ----------------


def closure_rows(rows: Sequence[int]) -> tuple[int, ...]:
    """Reachability over distinct pairs (Warshall on bit rows, diagonal dropped)."""
    out = list(rows)
    n = len(out)
    for k in range(n):
        kb = 1 << k
        rk = out[k]
        for i in range(n):
            if out[i] & kb:
                out[i] |= rk
    return tuple(r & ~(1 << i) for i, r in enumerate(out))


def cols_of(rows: Sequence[int]) -> tuple[int, ...]:
    cols = [0] * len(rows)
    for a, row in enumerate(rows):
        for b in bits(row):
            cols[b] |= 1 << a
    return tuple(cols)


def min_mask(menu: int, rows: Sequence[int], cols: Sequence[int]) -> int:
    out = 0
    for x in bits(menu):
        if cols[x] & menu and not rows[x] & menu:
            out |= 1 << x
    return out


def max_mask(menu: int, cols: Sequence[int]) -> int:
    out = 0
    for y in bits(menu):
        if not cols[y] & menu:
            out |= 1 << y
    return out


def rows_transitive(rows: Sequence[int]) -> bool:
    for a, row in enumerate(rows):
        for b in bits(row):
            if rows[b] & ~row & ~(1 << a):
                return False
    return True


def rows_asymmetric(rows: Sequence[int]) -> bool:
    return all(not rows[b] >> a & 1 for a, row in enumerate(rows) for b in bits(row))


def rows_complete(rows: Sequence[int]) -> bool:
    n = len(rows)
    return all(rows[a] >> b & 1 or rows[b] >> a & 1 for a in range(n) for b in range(a + 1, n))


def rows_acyclic(rows: Sequence[int]) -> bool:
    reach = closure_rows(rows)
    return all(not reach[b] >> a & 1 for a, row in enumerate(reach) for b in bits(row))


# -- public operations -------------------------------------------------------


def transitive_closure(rel: BinaryRelation) -> BinaryRelation:
    """Smallest transitive superset of ``rel`` over distinct pairs.

    A cycle through ``a`` shows up as a symmetric pair rather than as ``(a, a)``,
    which keeps the result irreflexive.
    """
    return BinaryRelation(rel.universe, closure_rows(rel.rows))


def is_transitive(rel: BinaryRelation) -> bool:
    return rows_transitive(rel.rows)


def is_asymmetric(rel: BinaryRelation) -> bool:
    return rows_asymmetric(rel.rows)


def is_complete(rel: BinaryRelation) -> bool:
    return rows_complete(rel.rows)


def is_acyclic(rel: BinaryRelation) -> bool:
    return rows_acyclic(rel.rows)


def is_partial_order(rel: BinaryRelation) -> bool:
    return rows_transitive(rel.rows) and rows_asymmetric(rel.rows)


def is_tournament(rel: BinaryRelation) -> bool:
    return rows_complete(rel.rows) and rows_asymmetric(rel.rows)


def is_linear_order(rel: BinaryRelation) -> bool:
    return is_tournament(rel) and rows_transitive(rel.rows)


def _menu_mask(menu, universe: Universe) -> int:
    if isinstance(menu, int):
        if menu <= 0 or menu & ~universe.full:
            raise ValueError(f"menu mask {menu:#x} is empty or outside the universe")
        return menu
    m = universe.mask(menu)
    if not m:
        raise ValueError("menus must be nonempty")
    return m


def minimal_set(menu, rel: BinaryRelation) -> int:
    """Alternatives of ``menu`` dominated in-menu that dominate nothing in-menu.

    ``menu`` may be a mask or an iterable of labels; the result is a mask.
    """
    m = _menu_mask(menu, rel.universe)
    return min_mask(m, rel.rows, rel.cols)


def maximal_set(menu, rel: BinaryRelation) -> int:
    """Alternatives of ``menu`` not dominated by any other member."""
    m = _menu_mask(menu, rel.universe)
    return max_mask(m, rel.cols)


def restrict(rel: BinaryRelation, menu) -> BinaryRelation:
    m = _menu_mask(menu, rel.universe)
    return BinaryRelation(
        rel.universe, tuple(row & m if m >> a & 1 else 0 for a, row in enumerate(rel.rows))
    )
