"""Canonical sentences for rank-1 term orders and the complexity classifier.

For a rank-1 order written as a finite sequence of 1-blocks L_1 + ... + L_n
there is an explicit level-3 difference sentence: it asserts the existence
of block representatives in order satisfying the existential block
descriptions, that every such representative tuple satisfies the universal
block descriptions, that there are at most n blocks, and the linear order
axioms.  The one-block and two-block end-limit types (omega, omega*,
omega + omega*) and the two-sided-block types m + zeta + n admit purely
universal level-3 sentences instead; those are generated directly.

``classify`` reports, for any term, the best upper bound this toolkit
derives for a defining sentence (difference level 2r+1 in general, purely
universal for the end-limit sum types) and, at rank 1, whether that bound
is optimal: it is whenever the block sequence embeds one of the
two-ascending-limit patterns, and the universal form is optimal on the
end-limit and two-sided families.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import formulas as fm
from .backforth import iso
from .blocks import (
    F,
    W,
    WSTAR,
    Z,
    BlockAtom,
    canonical_rank1,
    hausdorff_rank,
    is_simple,
    normalize,
)
from .formulas import (
    And,
    ComplexityClass,
    Exists,
    Forall,
    Formula,
    Not,
    Pi,
    Sigma,
    SchemaAnd,
    SchemaOr,
    classify_complexity,
    class_le,
    conj,
    dSigma,
    disj,
    eq,
    finite_above,
    finite_below,
    implies,
    lt,
    sim,
)
from .terms import OrderTerm, term_to_text


class ScottError(ValueError):
    pass


# --- the explicit auxiliary formulas -----------------------------------------


def make_phi_ax() -> Formula:
    """Conjunction of the linear order axioms (irreflexive, transitive, total)."""
    x, y, z = "x", "y", "z"
    irrefl = Forall((x,), Not(lt(x, x)))
    trans = Forall((x, y, z), implies(conj(lt(x, y), lt(y, z)), lt(x, z)))
    total = Forall((x, y), disj(lt(x, y), eq(x, y), lt(y, x)))
    return And((irrefl, trans, total))


def make_successor(x: str = "x", y: str = "y") -> Formula:
    """y is the immediate successor of x."""
    z = ".t"
    closed = Forall((z,), implies(conj(fm.le(x, z), fm.le(z, y)),
                                  disj(eq(x, z), eq(z, y))))
    return And((lt(x, y), closed))


def make_phi_r(x: str = "x") -> Formula:
    """Infinitely many elements sit to the right of x inside its 1-block."""
    y, z = ".r", ".rs"
    body = implies(conj(fm.le(x, y), sim(1, y, x)),
                   Exists((z,), make_successor(y, z)))
    return Forall((y,), body)


def make_phi_l(x: str = "x") -> Formula:
    """Infinitely many elements sit to the left of x inside its 1-block."""
    y, z = ".l", ".lp"
    body = implies(conj(fm.le(y, x), sim(1, y, x)),
                   Exists((z,), make_successor(z, y)))
    return Forall((y,), body)


def make_phi_m(m: int, x: str = "x") -> Formula:
    """x lies in a finite 1-block of exactly m elements."""
    if m < 1:
        raise ScottError("block size must be >= 1")
    upper_vars = tuple(".u%d" % i for i in range(m + 2))
    at_most = Forall(upper_vars,
                     implies(conj(*[sim(1, v, x) for v in upper_vars]),
                             fm.some_equal(upper_vars)))
    lower_vars = tuple(".v%d" % i for i in range(m))
    at_least = Exists(lower_vars,
                      conj(*([sim(1, v, x) for v in lower_vars]
                             + [fm.ascending(lower_vars)])))
    return And((at_most, at_least))


def sim_formula(k: int) -> Formula:
    """The k-block relation as a formula with free variables x, y."""
    if k < 1:
        raise ScottError("use equality for the 0-block relation")
    return sim(k, "x", "y")


# --- rank-1 sentences ---------------------------------------------------------


@dataclass(frozen=True)
class ScottSentence:
    formula: Formula
    source: OrderTerm
    block_shapes: tuple
    claimed_class: ComplexityClass

    def to_json(self):
        return {
            "term": term_to_text(self.source),
            "blocks": [str(a) for a in self.block_shapes],
            "claimed_class": str(self.claimed_class),
            "formula": fm.to_json(self.formula),
        }


def _universal_clause(atom: BlockAtom, x: str) -> Formula:
    if atom.shape == W:
        return make_phi_r(x)
    if atom.shape == WSTAR:
        return make_phi_l(x)
    if atom.shape == Z:
        return And((make_phi_r(x), make_phi_l(x)))
    return eq(x, x)


def _existential_clause(atom: BlockAtom, x: str) -> Formula:
    if atom.shape == W:
        return Not(make_phi_l(x))
    if atom.shape == WSTAR:
        return Not(make_phi_r(x))
    if atom.shape == Z:
        return eq(x, x)
    return make_phi_m(atom.count, x)


def _ordered_distinct_blocks(names) -> Formula:
    parts = []
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            parts.append(Not(sim(1, names[i], names[j])))
            parts.append(lt(names[i], names[j]))
    return conj(*parts)


def _dsigma3_sentence(atoms) -> Formula:
    n = len(atoms)
    xs = tuple("x%d" % (i + 1) for i in range(n))
    exist = Exists(xs, conj(_ordered_distinct_blocks(xs),
                            *[_existential_clause(a, x) for a, x in zip(atoms, xs)]))
    univ = Forall(xs, implies(_ordered_distinct_blocks(xs),
                              conj(*[_universal_clause(a, x)
                                     for a, x in zip(atoms, xs)])))
    over = tuple("x%d" % i for i in range(n + 2))
    pairs = []
    for i in range(len(over)):
        for j in range(i + 1, len(over)):
            pairs.append(sim(1, over[i], over[j]))
    at_most_n = Forall(over, disj(*pairs))
    return And((exist, univ, at_most_n, make_phi_ax()))


def _count_clause(n: int, finite_side) -> Formula:
    """Exactly n elements have a finite predecessor (or successor) set."""
    at_most_vars = tuple(".c%d" % i for i in range(n + 1))
    at_most = Forall(at_most_vars,
                     implies(conj(*[finite_side(v) for v in at_most_vars]),
                             fm.some_equal(at_most_vars)))
    if n == 0:
        return at_most
    at_least_vars = tuple(".d%d" % i for i in range(n))
    at_least = Exists(at_least_vars,
                      conj(*([finite_side(v) for v in at_least_vars]
                             + [fm.ascending(at_least_vars)])))
    return conj(at_most, at_least)


def _doubly_infinite(x) -> Formula:
    return And((Not(finite_below(x)), Not(finite_above(x))))


def _pi3_end_limit_sentence(shapes) -> Formula:
    """Universal level-3 sentences for omega, omega*, and omega + omega*."""
    x = "x"
    nonempty = SchemaOr("at_least_elements", ())
    if shapes == (W,):
        all_fin_below = Forall((x,), finite_below(x))
        all_inf_above = Forall((x,), Not(finite_above(x)))
        return And((nonempty, all_fin_below, all_inf_above, make_phi_ax()))
    if shapes == (WSTAR,):
        all_fin_above = Forall((x,), finite_above(x))
        all_inf_below = Forall((x,), Not(finite_below(x)))
        return And((nonempty, all_fin_above, all_inf_below, make_phi_ax()))
    if shapes == (W, WSTAR):
        no_middle = Forall((x,), disj(finite_below(x), finite_above(x)))
        inf_left = SchemaAnd("at_least_finpred", ())
        inf_right = SchemaAnd("at_least_finsucc", ())
        return And((no_middle, inf_left, inf_right, make_phi_ax()))
    raise ScottError("not an end-limit shape list: %r" % (shapes,))


def _pi3_two_sided_sentence(m: int, n: int) -> Formula:
    """Universal level-3 sentence for m + zeta + n (m, n >= 0)."""
    x, y = ".zx", ".zy"
    left_count = _count_clause(m, finite_below)
    right_count = _count_clause(n, finite_above)
    one_middle_block = Forall((x, y),
                              implies(conj(_doubly_infinite(x), _doubly_infinite(y)),
                                      sim(1, x, y)))
    evars = tuple(".e%d" % i for i in range(m + n + 1))
    enough = Exists(evars, fm.ascending(evars))
    return And((left_count, right_count, one_middle_block, enough, make_phi_ax()))


def _two_sided_params(shapes_atoms):
    """(m, n) when the atom list is F(m)? Z F(n)?; None otherwise."""
    atoms = list(shapes_atoms)
    m = n = 0
    if atoms and atoms[0].shape == F:
        m = atoms[0].count
        atoms = atoms[1:]
    if atoms and atoms[-1].shape == F:
        n = atoms[-1].count
        atoms = atoms[:-1]
    if len(atoms) == 1 and atoms[0].shape == Z:
        return m, n
    return None


def scott_rank1(t: OrderTerm) -> ScottSentence:
    """The canonical defining sentence of a rank-1 term."""
    t = normalize(t)
    if hausdorff_rank(t) != 1:
        raise ScottError("defining sentences are generated for rank-1 terms")
    atoms = canonical_rank1(t)
    assert atoms is not None
    report = classify(t)
    if report.upper_bound == Pi(3):
        formula = _pi3_formula_for(atoms)
        got = classify_complexity(formula)
        if got == Pi(3):
            return ScottSentence(formula, t, atoms, Pi(3))
        # fall back to the difference form; the universal attempt missed
    formula = _dsigma3_sentence(atoms)
    got = classify_complexity(formula)
    assert class_le(got, dSigma(3)), "template classified above d-Sigma_3: %s" % got
    return ScottSentence(formula, t, atoms, dSigma(3))


def _pi3_formula_for(atoms) -> Formula:
    shapes = tuple(a.shape for a in atoms)
    if shapes in ((W,), (WSTAR,), (W, WSTAR)):
        return _pi3_end_limit_sentence(shapes)
    params = _two_sided_params(atoms)
    if params is not None:
        return _pi3_two_sided_sentence(*params)
    raise ScottError("no universal form for shapes %r" % (shapes,))


def sat_scott(sentence: ScottSentence, u: OrderTerm) -> bool:
    """Truth of a canonical sentence in a term order.

    A defining sentence holds exactly in the isomorphic copies of its
    source, so satisfaction is decided through the isomorphism procedure.
    """
    if sentence.source is None:
        raise ScottError("sentence carries no source metadata")
    return iso(sentence.source, normalize(u))


# --- simple-order preservation sentences --------------------------------------


def simple_axioms(t: OrderTerm) -> list:
    """The universal preservation sentences for an omega-sum, omega*-sum, or
    omega-then-omega*-sum term: block uniqueness at the top rank, unbounded
    block chains one rank down, and end-block existence.
    """
    t = normalize(t)
    alpha = hausdorff_rank(t)
    report = is_simple(t)
    if not report.simple:
        raise ScottError("term is not simple")
    beta = alpha - 1
    x, y, z = "x", "y", "z"
    first_block = Exists((x,), Forall((y,), implies(lt(y, x), sim(beta, y, x))))
    last_block = Exists((x,), Forall((y,), implies(lt(x, y), sim(beta, y, x))))
    if report.type == "omega":
        return [Forall((x, y), sim(alpha, x, y)),
                SchemaAnd("block_chain", (beta,)),
                first_block]
    if report.type == "omega_star":
        return [Forall((x, y), sim(alpha, x, y)),
                SchemaAnd("block_chain", (beta,)),
                last_block]
    # omega + omega*
    return [Forall((x, y, z), disj(sim(alpha, x, y), sim(alpha, x, z))),
            SchemaAnd("block_chain_two_sided", (beta,)),
            first_block,
            last_block]


# --- the term classifier -------------------------------------------------------


@dataclass(frozen=True)
class ComplexityReport:
    term: OrderTerm
    rank: int
    simple: bool
    simple_type: str
    upper_bound: ComplexityClass
    optimal: bool | None
    rationale: str

    def to_json(self):
        return {
            "term": term_to_text(self.term),
            "rank": self.rank,
            "simple": self.simple,
            "simple_type": self.simple_type,
            "upper_bound": str(self.upper_bound),
            "optimal": self.optimal,
            "rationale": self.rationale,
        }


def _embeds_hard_pattern(atoms) -> bool:
    """Whether the block sequence contains an interval of one of the hard
    shapes: two ascending limits in a row (omega+omega and its mirror),
    a limit running into a two-sided block (omega+zeta, zeta+omega*), or
    omega + n + omega* with n > 0.  Such an interval forces the difference
    form: no purely existential or purely universal level-3 sentence pins
    the order.
    """
    shapes = [a.shape for a in atoms]
    n = len(shapes)
    for i in range(n):
        for j in range(i + 1, n):
            if any(s != F for s in shapes[i + 1:j]):
                continue
            gap = sum(a.count for a in atoms[i + 1:j] if a.shape == F)
            left, right = shapes[i], shapes[j]
            if left in (W, Z) and right == W:
                return True
            if left == WSTAR and right in (WSTAR, Z):
                return True
            if j == i + 1 and left in (W, Z) and right == Z:
                return True
            if j == i + 1 and left == Z and right == WSTAR:
                return True
            if gap >= 1 and left in (W, Z) and right in (WSTAR, Z):
                return True
    return False


def classify(t: OrderTerm) -> ComplexityReport:
    """Best sentence-complexity upper bound for a term, with an optimality
    verdict at rank 1."""
    t = normalize(t)
    alpha = hausdorff_rank(t)
    if alpha == 0:
        return ComplexityReport(t, 0, False, "none", dSigma(1), None,
                                "finite order: bounded-quantifier sentence")
    simp = is_simple(t)
    if alpha >= 2:
        if simp.simple:
            return ComplexityReport(t, alpha, True, simp.type, Pi(2 * alpha + 1),
                                    None, "single end-limit sum type")
        return ComplexityReport(t, alpha, False, "none", dSigma(2 * alpha + 1),
                                None, "general bound at rank %d" % alpha)
    atoms = canonical_rank1(t)
    if _embeds_hard_pattern(atoms):
        return ComplexityReport(t, 1, simp.simple, simp.type, dSigma(3), True,
                                "block sequence embeds a hard two-limit interval")
    shapes = tuple(a.shape for a in atoms)
    if shapes in ((W,), (WSTAR,), (W, WSTAR)) or _two_sided_params(atoms) is not None:
        return ComplexityReport(t, 1, simp.simple, simp.type, Pi(3), True,
                                "end-limit or two-sided family: universal form")
    return ComplexityReport(t, 1, simp.simple, simp.type, dSigma(3), None,
                            "difference bound; optimality open for this shape")
