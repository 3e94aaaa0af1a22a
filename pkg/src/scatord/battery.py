"""Shared test batteries: hand-derived rank facts and the rank-1 sentence battery."""

from __future__ import annotations

from .blocks import BlockAtom, F, W, WSTAR, Z, normalize
from .parser import parse_term
from .terms import Fin, Omega, OmegaStar, OrderTerm, Sum, concat

# Terms with hand-derived condensation ranks.  Each entry was worked out by
# iterating the block quotient on paper.
RANK_BATTERY = [
    ("0", 0),
    ("5", 0),
    ("w", 1),
    ("w*", 1),
    ("z", 1),
    ("w+w", 1),
    ("w*3", 1),
    ("w+2+w*", 1),
    ("w+w*", 1),
    ("1+z+1", 1),
    ("w+1", 1),
    ("w^2", 2),
    ("omega(1+w)", 2),
    ("omegastar(w*)", 2),
    ("w^2*3+w", 2),
    ("omega(z)", 2),
    ("w+w^2", 2),
    ("omegastar(w)", 2),
]


def rank_battery():
    return [(parse_term(text), rank) for text, rank in RANK_BATTERY]


def battery_terms():
    return [t for t, _ in rank_battery()]


# The 20-term rank-1 battery: block-atom sequences over {F(1..3), W, Wstar, Z}
# with up to 4 blocks, no two adjacent atoms mergeable, pairwise
# non-isomorphic.  Covers every anchor shape.
_A = {
    "F1": BlockAtom(F, 1),
    "F2": BlockAtom(F, 2),
    "F3": BlockAtom(F, 3),
    "W": BlockAtom(W),
    "S": BlockAtom(WSTAR),
    "Z": BlockAtom(Z),
}

SCOTT_BATTERY_SHAPES = [
    ("W",),
    ("S",),
    ("Z",),
    ("W", "S"),
    ("W", "W"),
    ("S", "S"),
    ("W", "Z"),
    ("Z", "S"),
    ("Z", "Z"),
    ("F1", "Z"),
    ("Z", "F1"),
    ("F1", "Z", "F1"),
    ("F1", "S"),
    ("W", "F1"),
    ("W", "F1", "S"),
    ("W", "F2", "S"),
    ("W", "W", "W"),
    ("W", "F1", "Z"),
    ("Z", "F1", "S"),
    ("F2", "Z", "F1"),
]


def _atom_term(name: str) -> OrderTerm:
    if name.startswith("F"):
        return Fin(int(name[1:]))
    if name == "W":
        return Omega(Fin(1))
    if name == "S":
        return OmegaStar(Fin(1))
    if name == "Z":
        return Sum((OmegaStar(Fin(1)), Omega(Fin(1))))
    raise ValueError(name)


def scott_battery():
    terms = []
    for shapes in SCOTT_BATTERY_SHAPES:
        t = normalize(concat(*[_atom_term(s) for s in shapes]))
        terms.append(t)
    return terms


def scott_battery_atoms():
    return [tuple(_A[s] for s in shapes) for shapes in SCOTT_BATTERY_SHAPES]
