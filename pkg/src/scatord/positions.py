"""Finite descriptions of elements of term orders, and interval extraction.

A position is a path of coordinates into a term: At(i) selects the i-th
element under Fin or the i-th part under Sum, Left(i) the i-th copy from
the left under Omega, Right(j) the j-th copy from the right under
OmegaStar.  Cutting a term at a strictly increasing tuple of positions and
removing the cut points decomposes it into interval terms; the family is
closed under this because a tail of an omega-sum is again an omega-sum.
"""

from __future__ import annotations

from itertools import combinations

from .blocks import normalize
from .terms import EMPTY, Fin, Omega, OmegaStar, OrderTerm, Sum, TermError, concat

AT = "at"
LEFT = "left"
RIGHT = "right"

# Position: tuple of (kind, index) coordinates.


class PositionError(TermError):
    pass


def position_key(pos):
    """Sort key realizing the element order (Right indices count downward)."""
    return tuple(-i if kind == RIGHT else i for kind, i in pos)


def position_valid(t: OrderTerm, pos) -> bool:
    try:
        _check(t, pos)
        return True
    except PositionError:
        return False


def _check(t: OrderTerm, pos):
    if not pos:
        raise PositionError("position ends above a leaf")
    (kind, i), rest = pos[0], pos[1:]
    if i < 0:
        raise PositionError("negative index")
    if isinstance(t, Fin):
        if kind != AT or i >= t.n or rest:
            raise PositionError("bad coordinate %r for Fin(%d)" % ((kind, i), t.n))
        return
    if isinstance(t, Sum):
        if kind != AT or i >= len(t.parts):
            raise PositionError("bad coordinate %r for Sum" % ((kind, i),))
        _check(t.parts[i], rest)
        return
    if isinstance(t, Omega):
        if kind != LEFT:
            raise PositionError("expected Left under Omega")
        _check(t.body, rest)
        return
    if isinstance(t, OmegaStar):
        if kind != RIGHT:
            raise PositionError("expected Right under OmegaStar")
        _check(t.body, rest)
        return
    raise PositionError("unknown term %r" % (t,))


def enumerate_positions(t: OrderTerm, index_cap: int):
    """All positions with Omega/OmegaStar indices <= index_cap, in order.

    Fin indices are never restricted.
    """
    if index_cap < 1:
        raise PositionError("index_cap must be >= 1")
    out = []
    _enum(t, index_cap, (), out)
    return out


def _enum(t, cap, prefix, out):
    if isinstance(t, Fin):
        for i in range(t.n):
            out.append(prefix + ((AT, i),))
    elif isinstance(t, Sum):
        for k, part in enumerate(t.parts):
            _enum(part, cap, prefix + ((AT, k),), out)
    elif isinstance(t, Omega):
        for i in range(cap + 1):
            _enum(t.body, cap, prefix + ((LEFT, i),), out)
    elif isinstance(t, OmegaStar):
        for j in range(cap, -1, -1):
            _enum(t.body, cap, prefix + ((RIGHT, j),), out)
    else:
        raise TermError("unknown term %r" % (t,))


def enumerate_cuts(t: OrderTerm, m: int, index_cap: int):
    """All strictly increasing m-tuples of capped positions, in order."""
    if m < 0:
        raise PositionError("tuple length must be >= 0")
    if m == 0:
        return [()]
    positions = enumerate_positions(t, index_cap)
    return list(combinations(positions, m))


def cut_decompose(t: OrderTerm, cuts) -> list:
    """Intervals L_0, ..., L_m with t = L_0 + {pt} + L_1 + ... + {pt} + L_m.

    Cut positions must be valid and strictly increasing; every interval is
    returned normalized.
    """
    cuts = list(cuts)
    for pos in cuts:
        _check(t, pos)
    keys = [position_key(p) for p in cuts]
    if any(a >= b for a, b in zip(keys, keys[1:])):
        raise PositionError("cut tuple is not strictly increasing")
    return [normalize(piece) for piece in _decompose(t, cuts)]


def _decompose(t: OrderTerm, cuts) -> list:
    if not cuts:
        return [t]
    if isinstance(t, Fin):
        idx = [pos[0][1] for pos in cuts]
        pieces = [Fin(idx[0])]
        for a, b in zip(idx, idx[1:]):
            pieces.append(Fin(b - a - 1))
        pieces.append(Fin(t.n - 1 - idx[-1]))
        return pieces
    if isinstance(t, Sum):
        by_part = {}
        for pos in cuts:
            by_part.setdefault(pos[0][1], []).append(pos[1:])
        intervals = []
        acc = []
        for k, part in enumerate(t.parts):
            if k not in by_part:
                acc.append(part)
                continue
            sub = _decompose(part, by_part[k])
            intervals.append(concat(*(acc + [sub[0]])))
            intervals.extend(sub[1:-1])
            acc = [sub[-1]]
        intervals.append(concat(*acc))
        return intervals
    if isinstance(t, Omega):
        imax = max(pos[0][1] for pos in cuts)
        virtual = Sum(tuple([t.body] * (imax + 1)))
        translated = [((AT, pos[0][1]),) + pos[1:] for pos in cuts]
        pieces = _decompose(virtual, translated)
        pieces[-1] = concat(pieces[-1], t)
        return pieces
    if isinstance(t, OmegaStar):
        jmax = max(pos[0][1] for pos in cuts)
        virtual = Sum(tuple([t.body] * (jmax + 1)))
        translated = [((AT, jmax - pos[0][1]),) + pos[1:] for pos in cuts]
        pieces = _decompose(virtual, translated)
        pieces[0] = concat(t, pieces[0])
        return pieces
    raise TermError("unknown term %r" % (t,))


def prefix_suffix(t: OrderTerm, pos):
    """The pair (before, after) of open intervals around a single position."""
    pre, suf = cut_decompose(t, [pos])
    return pre, suf


def position_to_json(pos):
    return [[kind, i] for kind, i in pos]


def position_from_json(data):
    return tuple((kind, int(i)) for kind, i in data)
