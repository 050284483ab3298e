"""Named parameter regimes of C~2 and the supported zero-class choices used by the CLI."""

from __future__ import annotations

from .group import AffineWeylGroup
from .ordered import WeightFunction

# weights on (t, s, t'); a = L(t), b = L(s), c = L(t')
C2_REGIMES = {
    "a>c,b>0": (2, 1, 1),
    "a>c,b=0": (2, 0, 1),
    "a=c>0,b>0": (1, 1, 1),
    "a=c>0,b=0": (1, 0, 1),
    "a=c=0,b>0": (0, 1, 0),
    "zero": (0, 0, 0),
}

# reduced words of the elements of maximal weight among the special longest elements
C2_WMAX = {
    "a>c,b>0": ["tsts"],
    "a>c,b=0": ["tsts", "tst"],
    "a=c>0,b>0": ["tsts", "t'st's"],
    "a=c>0,b=0": ["tsts", "tst", "t'st's", "t'st'", "tt'"],
    "a=c=0,b>0": ["sts", "stst", "st's", "st'st'"],
}


def regime_weight(name: str, group: AffineWeylGroup | None = None) -> WeightFunction:
    if name not in C2_REGIMES:
        raise KeyError(f"unknown regime {name!r}; expected one of {sorted(C2_REGIMES)}")
    W = group or AffineWeylGroup("C", 2)
    t, s, tp = C2_REGIMES[name]
    return WeightFunction.integer(W, {"t": t, "s": s, "t'": tp})


def zero_class_cases() -> list[tuple[str, int, dict]]:
    """(type, rank, class weights) covering every zero-class choice with a
    non-trivial positive part, as used by the finite case analysis."""
    cases = []
    for t, r in (("G", 2), ("F", 4), ("B", 3), ("B", 4)):
        cases.append((t, r, {"t": 0, "s": 1}))
        cases.append((t, r, {"t": 1, "s": 0}))
    for r in (2, 3):
        for vals in ({"t": 2, "s": 0, "t'": 1}, {"t": 1, "s": 0, "t'": 1},
                     {"t": 1, "s": 1, "t'": 0}, {"t": 0, "s": 1, "t'": 0},
                     {"t": 1, "s": 0, "t'": 0}):
            cases.append(("C", r, vals))
    return cases
