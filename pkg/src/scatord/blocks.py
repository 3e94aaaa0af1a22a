"""Block condensation for order terms.

Two points of a linear order lie in the same 1-block when the closed
interval between them is finite.  A 1-block of a term order has one of four
shapes: a finite block F(n), an ascending block W (looks like omega), a
descending block Wstar (looks like omega*), or a two-sided block Z (looks
like the integers).

``blocks1`` computes the sequence of 1-blocks of a term as a *block form*,
a term-shaped object whose leaves are block atoms.  Collapsing every atom
to a single point and normalizing gives the condensation quotient, and
iterating the quotient until it is finite gives the condensation rank.

Merge table.  Adjacent blocks B, B' (B to the left) fuse into one block
exactly when every final segment of B is finite (B is F or Wstar) and every
initial segment of B' is finite (B' is F or W): any two points straddling
the seam are then separated by a finite set on each side.  A failing seam
certifies an infinite side, so fusing is never transitive through it;
one merge pass per seam suffices.  The fused shapes are F+F = F (sizes
add), F+W = W, Wstar+F = Wstar, and Wstar+W = Z.
"""

from __future__ import annotations

from dataclasses import dataclass

from .terms import (
    EMPTY,
    Fin,
    Omega,
    OmegaStar,
    OrderTerm,
    Sum,
    TermError,
    concat,
    is_empty,
    reverse,
)

F = "F"
W = "W"
WSTAR = "Wstar"
Z = "Z"


@dataclass(frozen=True)
class BlockAtom:
    shape: str
    count: int = 0  # element count, only meaningful for F

    def __post_init__(self):
        if self.shape not in (F, W, WSTAR, Z):
            raise TermError("bad block shape %r" % (self.shape,))
        if self.shape == F and self.count < 1:
            raise TermError("finite block needs size >= 1")

    def __str__(self):
        return "F(%d)" % self.count if self.shape == F else self.shape


def mergeable(left: BlockAtom, right: BlockAtom) -> bool:
    return left.shape in (F, WSTAR) and right.shape in (F, W)


def merge_atoms(left: BlockAtom, right: BlockAtom) -> BlockAtom:
    if not mergeable(left, right):
        raise TermError("atoms %s | %s do not merge" % (left, right))
    if left.shape == F and right.shape == F:
        return BlockAtom(F, left.count + right.count)
    if left.shape == F and right.shape == W:
        return BlockAtom(W)
    if left.shape == WSTAR and right.shape == F:
        return BlockAtom(WSTAR)
    return BlockAtom(Z)


# --- block forms -----------------------------------------------------------
#
# BForm ::= BLeaf(atom) | BCat(parts) | BOmega(body) | BOmegaStar(body)
#
# A block form denotes a sequence of block atoms.  BCat parts are kept
# flattened, so parts are leaves or (starred) omega repetitions.  A BOmega
# has a first atom but no last one; a BOmegaStar has a last atom but no
# first one.  The invariant is that no two adjacent atoms in the denoted
# sequence are mergeable.


@dataclass(frozen=True)
class BForm:
    pass


@dataclass(frozen=True)
class BLeaf(BForm):
    atom: BlockAtom


@dataclass(frozen=True)
class BCat(BForm):
    parts: tuple


@dataclass(frozen=True)
class BOmega(BForm):
    body: BForm


@dataclass(frozen=True)
class BOmegaStar(BForm):
    body: BForm


EMPTY_BF = BCat(())


def bf_is_empty(bf: BForm) -> bool:
    return isinstance(bf, BCat) and not bf.parts


def _flat(bf: BForm):
    if isinstance(bf, BCat):
        for p in bf.parts:
            yield from _flat(p)
    else:
        yield bf


def first_atom(bf: BForm):
    """First atom of the denoted sequence, or None (empty, or no first block)."""
    for part in _flat(bf):
        if isinstance(part, BLeaf):
            return part.atom
        if isinstance(part, BOmega):
            return first_atom(part.body)
        return None  # BOmegaStar: the sequence has no first element
    return None


def last_atom(bf: BForm):
    parts = list(_flat(bf))
    for part in reversed(parts):
        if isinstance(part, BLeaf):
            return part.atom
        if isinstance(part, BOmegaStar):
            return last_atom(part.body)
        return None  # BOmega: no last element
    return None


def _strip_first(bf: BForm) -> BForm:
    """Remove the first atom.  Caller guarantees it is reachable."""
    parts = list(_flat(bf))
    head = parts[0]
    if isinstance(head, BLeaf):
        return BCat(tuple(parts[1:]))
    if isinstance(head, BOmega):
        # unroll one copy: body + BOmega(body), then strip from the copy
        rest = [_strip_first(head.body), head] + parts[1:]
        return BCat(tuple(p for r in rest for p in _flat(r)))
    raise TermError("no strippable first atom")


def _strip_last(bf: BForm) -> BForm:
    parts = list(_flat(bf))
    tail = parts[-1]
    if isinstance(tail, BLeaf):
        return BCat(tuple(parts[:-1]))
    if isinstance(tail, BOmegaStar):
        rest = parts[:-1] + [tail, _strip_last(tail.body)]
        return BCat(tuple(p for r in rest for p in _flat(r)))
    raise TermError("no strippable last atom")


_MAX_UNROLL = 16


def bcat(*forms: BForm) -> BForm:
    """Concatenate block forms, merging atoms across every seam.

    Seams against an omega repetition are resolved by unrolling one copy,
    which terminates because a repetition body never self-merges.
    """
    queue = []
    for f in forms:
        queue.extend(_flat(f))
    out = []
    guard = 0
    while queue:
        part = queue.pop(0)
        while out:
            left = out[-1]
            la = last_atom(left)
            fa = first_atom(part)
            if la is None or fa is None or not mergeable(la, fa):
                break
            guard += 1
            if guard > _MAX_UNROLL * (len(out) + len(queue) + 4):
                raise TermError("non-terminating block merge")
            if isinstance(left, BLeaf) and isinstance(part, BLeaf):
                out.pop()
                part = BLeaf(merge_atoms(la, fa))
                continue
            if isinstance(left, BOmegaStar):
                # ... h h h | part  ->  ... h h h  h | part
                out.pop()
                out.append(left)
                out.extend(_flat(left.body))
                continue
            if isinstance(part, BOmega):
                # left | h h h ...  ->  left | h  h h h ...
                queue[0:0] = list(_flat(part.body)) + [part]
                part = queue.pop(0)
                continue
            raise TermError("unexpected seam %r | %r" % (left, part))
        out.append(part)
    out = [p for p in out if not bf_is_empty(p)]
    if len(out) == 1:
        return out[0]
    return BCat(tuple(out))


def reverse_bf(bf: BForm) -> BForm:
    if isinstance(bf, BLeaf):
        a = bf.atom
        if a.shape == W:
            return BLeaf(BlockAtom(WSTAR))
        if a.shape == WSTAR:
            return BLeaf(BlockAtom(W))
        return bf
    if isinstance(bf, BCat):
        return BCat(tuple(reverse_bf(p) for p in reversed(bf.parts)))
    if isinstance(bf, BOmega):
        return BOmegaStar(reverse_bf(bf.body))
    if isinstance(bf, BOmegaStar):
        return BOmega(reverse_bf(bf.body))
    raise TermError("unknown block form %r" % (bf,))


def blocks1(t: OrderTerm) -> BForm:
    """The 1-block form of a term.  Fin(0) yields the empty form."""
    if isinstance(t, Fin):
        if t.n == 0:
            return EMPTY_BF
        return BLeaf(BlockAtom(F, t.n))
    if isinstance(t, Sum):
        return bcat(*[blocks1(p) for p in t.parts])
    if isinstance(t, Omega):
        return _blocks_omega(t.body)
    if isinstance(t, OmegaStar):
        return reverse_bf(_blocks_omega(reverse(t.body)))
    raise TermError("unknown term %r" % (t,))


def _blocks_omega(body: OrderTerm) -> BForm:
    bs = blocks1(body)
    if bf_is_empty(bs):
        return EMPTY_BF
    if isinstance(bs, BLeaf) and bs.atom.shape == F:
        return BLeaf(BlockAtom(W))
    fa = first_atom(bs)
    la = last_atom(bs)
    if fa is not None and la is not None and mergeable(la, fa):
        # seams between consecutive copies fuse; peel the head copy
        head = _strip_last(bs)
        return bcat(head, BOmega(bcat(BLeaf(la), head)))
    return BOmega(bs)


def atom_list(bf: BForm):
    """The finite atom sequence of bf, or None if it is infinite."""
    if isinstance(bf, BLeaf):
        return [bf.atom]
    if isinstance(bf, BCat):
        out = []
        for p in bf.parts:
            sub = atom_list(p)
            if sub is None:
                return None
            out.extend(sub)
        return out
    return None


def bf_to_text(bf: BForm) -> str:
    if isinstance(bf, BLeaf):
        return str(bf.atom)
    if isinstance(bf, BCat):
        if not bf.parts:
            return "(empty)"
        return " + ".join(bf_to_text(p) for p in bf.parts)
    if isinstance(bf, BOmega):
        return "omega[ " + bf_to_text(bf.body) + " ]"
    if isinstance(bf, BOmegaStar):
        return "omegastar[ " + bf_to_text(bf.body) + " ]"
    raise TermError("unknown block form %r" % (bf,))


def quotient_term(bf: BForm) -> OrderTerm:
    """Collapse every atom to a single point."""
    if isinstance(bf, BLeaf):
        return Fin(1)
    if isinstance(bf, BCat):
        if not bf.parts:
            return EMPTY
        return concat(*[quotient_term(p) for p in bf.parts])
    if isinstance(bf, BOmega):
        return Omega(quotient_term(bf.body))
    if isinstance(bf, BOmegaStar):
        return OmegaStar(quotient_term(bf.body))
    raise TermError("unknown block form %r" % (bf,))


# --- normalization ---------------------------------------------------------


def normalize(t: OrderTerm) -> OrderTerm:
    """Canonicalize a term without changing its isomorphism type.

    Sound rules only: Sum flattening, coalescing of adjacent finite parts,
    elimination of empty parts, Omega/OmegaStar of the empty order, and
    absorption of a finite part into an adjacent block that can swallow it
    (a W block to its right, or a Wstar block to its left).  No rewriting
    beyond that; e.g. w+w^2 is left alone even though it is isomorphic to
    w^2 (the back-and-forth decision procedure handles such pairs).
    """
    if isinstance(t, Fin):
        return t
    if isinstance(t, Omega):
        b = normalize(t.body)
        return EMPTY if is_empty(b) else Omega(b)
    if isinstance(t, OmegaStar):
        b = normalize(t.body)
        return EMPTY if is_empty(b) else OmegaStar(b)
    if isinstance(t, Sum):
        parts = []
        for p in t.parts:
            q = normalize(p)
            if isinstance(q, Fin) and q.n == 0:
                continue
            sub = q.parts if isinstance(q, Sum) else (q,)
            for s in sub:
                if isinstance(s, Fin) and parts and isinstance(parts[-1], Fin):
                    parts[-1] = Fin(parts[-1].n + s.n)
                else:
                    parts.append(s)
        parts = _absorb_finite(parts)
        if not parts:
            return EMPTY
        if len(parts) == 1:
            return parts[0]
        return Sum(tuple(parts))
    raise TermError("unknown term %r" % (t,))


def _absorb_finite(parts):
    changed = True
    while changed:
        changed = False
        for i, p in enumerate(parts):
            if not isinstance(p, Fin):
                continue
            rest = parts[i + 1:]
            if rest:
                fa = first_atom(bcat(*[blocks1(r) for r in rest]))
                if fa is not None and fa.shape == W:
                    del parts[i]
                    changed = True
                    break
            before = parts[:i]
            if before:
                la = last_atom(bcat(*[blocks1(b) for b in before]))
                if la is not None and la.shape == WSTAR:
                    del parts[i]
                    changed = True
                    break
    return parts


# --- condensation and rank -------------------------------------------------


def condense(t: OrderTerm) -> OrderTerm:
    """The quotient of t by the 1-block relation, as a normalized term."""
    return normalize(quotient_term(blocks1(t)))


def condense_iter(t: OrderTerm, k: int) -> OrderTerm:
    if k < 0:
        raise TermError("iteration count must be >= 0")
    u = normalize(t)
    for _ in range(k):
        u = condense(u)
    return u


def hausdorff_rank(t: OrderTerm) -> int:
    """Least k such that the k-fold condensation of t is finite."""
    u = normalize(t)
    k = 0
    while not isinstance(u, Fin):
        u = condense(u)
        k += 1
    return k


def canonical_rank1(t: OrderTerm):
    """Canonical block-atom tuple for terms of rank <= 1.

    The atom sequence of a rank <= 1 term is finite and classifies the term
    up to isomorphism.  Returns None when the rank exceeds 1.
    """
    atoms = atom_list(blocks1(normalize(t)))
    if atoms is None:
        return None
    return tuple(atoms)


@dataclass(frozen=True)
class SimplicityReport:
    simple: bool
    type: str  # "omega" | "omega_star" | "omega_plus_omega_star" | "none"


def is_simple(t: OrderTerm) -> SimplicityReport:
    """Whether t is an omega-sum, omega*-sum, or omega-then-omega*-sum of
    strictly lower-rank pieces whose ranks approach the rank of t on each
    present side.

    Operative test: after rank-1 many condensations the term must reduce to
    a single W atom (type omega), a single Wstar atom (type omega*), or the
    exact two-atom sequence W then Wstar (type omega + omega*).
    """
    u = normalize(t)
    alpha = hausdorff_rank(u)
    if alpha == 0:
        raise TermError("simplicity is defined for terms of rank >= 1")
    core = condense_iter(u, alpha - 1)
    atoms = atom_list(blocks1(core))
    assert atoms is not None, "rank-1 core must have finitely many blocks"
    shapes = [a.shape for a in atoms]
    if shapes == [W]:
        return SimplicityReport(True, "omega")
    if shapes == [WSTAR]:
        return SimplicityReport(True, "omega_star")
    if shapes == [W, WSTAR]:
        return SimplicityReport(True, "omega_plus_omega_star")
    return SimplicityReport(False, "none")
