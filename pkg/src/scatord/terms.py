"""Term algebra for scattered linear orders of finite condensation rank.

A term denotes a countable linear order built from finite orders by
omega-sums and reverse-omega-sums of a single repeated body:

    Fin(n)        the finite order with n elements (n = 0 is the empty order)
    Sum(parts)    concatenation, left to right
    Omega(t)      t + t + t + ...          (an ascending infinite sum)
    OmegaStar(t)  ... + t + t + t          (a descending infinite sum)

The grammar is well-founded, so every term denotes a scattered order whose
condensation rank is finite.  Common abbreviations (omega = Omega(Fin(1)),
omega* = OmegaStar(Fin(1)), zeta = omega* + omega) are plain derived terms,
not extra constructors.
"""

from __future__ import annotations

from dataclasses import dataclass


class TermError(ValueError):
    """Malformed term or invalid operation on a term."""


@dataclass(frozen=True)
class OrderTerm:
    """Base class for order terms."""

    def __add__(self, other: "OrderTerm") -> "OrderTerm":
        return concat(self, other)


@dataclass(frozen=True)
class Fin(OrderTerm):
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise TermError("Fin size must be a natural number, got %r" % (self.n,))


@dataclass(frozen=True)
class Sum(OrderTerm):
    parts: tuple

    def __post_init__(self):
        if not self.parts:
            raise TermError("Sum needs at least one part")
        for p in self.parts:
            if not isinstance(p, OrderTerm):
                raise TermError("Sum part is not an OrderTerm: %r" % (p,))


@dataclass(frozen=True)
class Omega(OrderTerm):
    body: OrderTerm


@dataclass(frozen=True)
class OmegaStar(OrderTerm):
    body: OrderTerm


EMPTY = Fin(0)
ONE = Fin(1)
OMEGA = Omega(ONE)
OMEGA_STAR = OmegaStar(ONE)
ZETA = Sum((OMEGA_STAR, OMEGA))


def concat(*terms: OrderTerm) -> OrderTerm:
    """Raw concatenation; splices nested Sums but applies no other rewriting."""
    parts = []
    for t in terms:
        if isinstance(t, Sum):
            parts.extend(t.parts)
        else:
            parts.append(t)
    if not parts:
        return EMPTY
    if len(parts) == 1:
        return parts[0]
    return Sum(tuple(parts))


def repeat(t: OrderTerm, m: int) -> OrderTerm:
    """m-fold concatenation of t (T*m in the surface grammar)."""
    if m < 0:
        raise TermError("repeat count must be >= 0")
    if m == 0:
        return EMPTY
    return concat(*([t] * m))


def omega_power(k: int) -> OrderTerm:
    """k-fold Omega nesting of the singleton (w^k in the surface grammar)."""
    if k < 0:
        raise TermError("omega power must be >= 0")
    t: OrderTerm = ONE
    for _ in range(k):
        t = Omega(t)
    return t


def size(t: OrderTerm):
    """Number of elements; None means infinite."""
    if isinstance(t, Fin):
        return t.n
    if isinstance(t, Sum):
        total = 0
        for p in t.parts:
            s = size(p)
            if s is None:
                return None
            total += s
        return total
    if isinstance(t, (Omega, OmegaStar)):
        return 0 if size(t.body) == 0 else None
    raise TermError("unknown term %r" % (t,))


def is_empty(t: OrderTerm) -> bool:
    return size(t) == 0


def reverse(t: OrderTerm) -> OrderTerm:
    """The order-reversed term (an anti-isomorphic copy)."""
    if isinstance(t, Fin):
        return t
    if isinstance(t, Sum):
        return Sum(tuple(reverse(p) for p in reversed(t.parts)))
    if isinstance(t, Omega):
        return OmegaStar(reverse(t.body))
    if isinstance(t, OmegaStar):
        return Omega(reverse(t.body))
    raise TermError("unknown term %r" % (t,))


def term_to_text(t: OrderTerm) -> str:
    """Render a term in the surface grammar (parse_term round-trips it)."""
    if isinstance(t, Fin):
        return str(t.n)
    if isinstance(t, Sum):
        return "+".join(_item_text(p) for p in t.parts)
    return _item_text(t)


def _item_text(t: OrderTerm) -> str:
    if isinstance(t, Fin):
        return str(t.n)
    if isinstance(t, Sum):
        return "(" + term_to_text(t) + ")"
    if isinstance(t, Omega):
        if t.body == ONE:
            return "w"
        depth, core = _omega_depth(t)
        if core == ONE and depth > 1:
            return "w^%d" % depth
        return "omega(" + term_to_text(t.body) + ")"
    if isinstance(t, OmegaStar):
        if t.body == ONE:
            return "w*"
        return "omegastar(" + term_to_text(t.body) + ")"
    raise TermError("unknown term %r" % (t,))


def _omega_depth(t: OrderTerm):
    depth = 0
    while isinstance(t, Omega):
        depth += 1
        t = t.body
    return depth, t


def iter_subterms(t: OrderTerm):
    yield t
    if isinstance(t, Sum):
        for p in t.parts:
            yield from iter_subterms(p)
    elif isinstance(t, (Omega, OmegaStar)):
        yield from iter_subterms(t.body)
