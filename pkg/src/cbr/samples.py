"""Small hand-written choice functions used in docs, tests and the CLI.

Keys are menus written as strings of single-letter labels.
"""

from .choice import ChoiceFunction
from .relations import BinaryRelation, Universe

XYZW = ("x", "y", "z", "w")

# one strong (xy) reversal due to z and one weak (zx) reversal due to w
MIXED_REVERSALS = {
    "xy": "x", "xz": "z", "xw": "x", "yz": "y", "yw": "y", "zw": "z",
    "xyz": "y", "xyw": "x", "xzw": "x", "yzw": "y",
    "xyzw": "x",
}

# each of these breaks exactly one of NC, WCC*, NBC*, R-WARP
BREAKS_NC = {
    "xy": "y", "xz": "z", "yz": "y",
    "xyz": "x",
}

BREAKS_WCC = {
    "xy": "x", "xz": "z", "xw": "w", "yz": "z", "yw": "y", "zw": "w",
    "xyz": "z", "xyw": "w", "xzw": "w", "yzw": "y",
    "xyzw": "y",
}

BREAKS_NBC = {
    "xy": "x", "xz": "z", "xw": "x", "yz": "y", "yw": "y", "zw": "z",
    "xyz": "y", "xyw": "y", "xzw": "x", "yzw": "z",
    "xyzw": "y",
}

BREAKS_RWARP = {
    "xy": "x", "xz": "x", "xw": "x", "yz": "y", "yw": "y", "zw": "z",
    "xyz": "y", "xyw": "x", "xzw": "x", "yzw": "y",
    "xyzw": "x",
}

# rationales producing C(xy)=x, C(xyz)=y, C(xyzw)=x
DOUBLE_FLIP_R = [("z", "x"), ("z", "w"), ("x", "w")]
DOUBLE_FLIP_P = ["x", "y", "z", "w"]


def mixed_reversals() -> ChoiceFunction:
    return ChoiceFunction.from_rows(XYZW, MIXED_REVERSALS)


def breaks_nc() -> ChoiceFunction:
    return ChoiceFunction.from_rows(("x", "y", "z"), BREAKS_NC)


def breaks_wcc() -> ChoiceFunction:
    return ChoiceFunction.from_rows(XYZW, BREAKS_WCC)


def breaks_nbc() -> ChoiceFunction:
    return ChoiceFunction.from_rows(XYZW, BREAKS_NBC)


def breaks_rwarp() -> ChoiceFunction:
    return ChoiceFunction.from_rows(XYZW, BREAKS_RWARP)


def double_flip_rationales():
    u = Universe(XYZW)
    return BinaryRelation.from_pairs(u, DOUBLE_FLIP_R), BinaryRelation.linear_order(u, DOUBLE_FLIP_P)


def rational(ranking) -> ChoiceFunction:
    """The choice function that maximizes the linear order ``ranking`` (best first)."""
    u = Universe(tuple(sorted(ranking)))
    pos = {a: i for i, a in enumerate(ranking)}
    table = [-1] * (1 << u.size)
    for m in range(1, 1 << u.size):
        table[m] = u.index(min(u.names(m), key=pos.__getitem__))
    return ChoiceFunction(u, tuple(table))
