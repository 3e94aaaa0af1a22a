"""Infinitary formulas over the language of linear orders.

The AST has finitary connectives plus schema connectives: countable
conjunctions or disjunctions of a parametrized formula family drawn from a
fixed catalog, indexed by a natural number.  Keeping the families symbolic
makes formulas serializable and lets the complexity classifier work
syntactically.

Complexity classes follow the usual normal form: a level-0 formula is
finitary quantifier-free; a level-k existential formula is a countable
disjunction of existentially quantified formulas one level down; a level-k
universal formula is the negation of one.  ``classify_complexity`` assigns
the least class derivable from the closure rules (finite boolean
combinations stay at level; countable disjunction is existential;
countable conjunction is universal; a root conjunction of an existential
and a universal formula of the same level is the difference class d-Sigma).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


class FormulaError(ValueError):
    pass


@dataclass(frozen=True)
class Formula:
    pass


@dataclass(frozen=True)
class Atomic(Formula):
    op: str  # "<" or "="
    left: str
    right: str

    def __post_init__(self):
        if self.op not in ("<", "="):
            raise FormulaError("atomic op must be < or =")


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    parts: tuple


@dataclass(frozen=True)
class Or(Formula):
    parts: tuple


@dataclass(frozen=True)
class Exists(Formula):
    vars: tuple
    body: Formula


@dataclass(frozen=True)
class Forall(Formula):
    vars: tuple
    body: Formula


@dataclass(frozen=True)
class SchemaOr(Formula):
    family: str
    args: tuple


@dataclass(frozen=True)
class SchemaAnd(Formula):
    family: str
    args: tuple


TRUE = And(())
FALSE = Or(())


def lt(x, y):
    return Atomic("<", x, y)


def eq(x, y):
    return Atomic("=", x, y)


def le(x, y):
    return Or((lt(x, y), eq(x, y)))


def conj(*parts):
    flat = [p for p in parts if p != TRUE]
    if any(p == FALSE for p in flat):
        return FALSE
    if not flat:
        return TRUE
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def disj(*parts):
    flat = [p for p in parts if p != FALSE]
    if any(p == TRUE for p in flat):
        return TRUE
    if not flat:
        return FALSE
    if len(flat) == 1:
        return flat[0]
    return Or(tuple(flat))


def implies(a, b):
    return disj(Not(a), b)


def between(z, x, y):
    """z lies in the closed interval [x, y] or [y, x]."""
    return disj(conj(le(x, z), le(z, y)), conj(le(y, z), le(z, x)))


def ascending(names):
    return conj(*[lt(a, b) for a, b in zip(names, names[1:])])


def some_equal(names):
    pairs = []
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            pairs.append(eq(names[i], names[j]))
    return disj(*pairs)


def sim(k: int, x: str, y: str) -> Formula:
    """x and y are in the same k-block (the closed interval between them
    collapses after k condensations).  Level 0 is equality."""
    if k < 0:
        raise FormulaError("block level must be >= 0")
    if k == 0:
        return eq(x, y)
    if k == 1:
        return SchemaOr("interval_at_most", (x, y))
    return SchemaOr("sim_step", (x, y, k - 1))


# --- the family catalog -----------------------------------------------------

def _vs(prefix, count, start=0):
    return tuple(".%s%d" % (prefix, i) for i in range(start, start + count))


def _fam_interval_at_most(n, x, y):
    zs = _vs("z", n + 1)
    body = implies(conj(*[between(z, x, y) for z in zs]), some_equal(zs))
    return Forall(zs, body)


def _fam_sim_step(n, x, y, k):
    w = ".w"
    if n == 0:
        return Forall((w,), implies(between(w, x, y), FALSE))
    zs = _vs("s", n)
    cover = Forall((w,), implies(between(w, x, y), disj(*[sim(k, w, z) for z in zs])))
    return Exists(zs, cover)


def _fam_at_most_below(n, x):
    zs = _vs("z", n + 1)
    return Forall(zs, implies(conj(*[lt(z, x) for z in zs]), some_equal(zs)))


def _fam_at_most_above(n, x):
    zs = _vs("z", n + 1)
    return Forall(zs, implies(conj(*[lt(x, z) for z in zs]), some_equal(zs)))


def _fam_at_least_below(n, x):
    if n == 0:
        return TRUE
    zs = _vs("z", n)
    return Exists(zs, conj(ascending(zs), lt(zs[-1], x)))


def _fam_at_least_above(n, x):
    if n == 0:
        return TRUE
    zs = _vs("z", n)
    return Exists(zs, conj(lt(x, zs[0]), ascending(zs)))


def _fam_at_least_elements(n):
    if n == 0:
        return TRUE
    zs = _vs("e", n)
    if n == 1:
        return Exists(zs, eq(zs[0], zs[0]))
    return Exists(zs, ascending(zs))


def _fam_at_least_finpred(n):
    if n == 0:
        return TRUE
    zs = _vs("p", n)
    return Exists(zs, conj(ascending(zs), *[finite_below(z) for z in zs]))


def _fam_at_least_finsucc(n):
    if n == 0:
        return TRUE
    zs = _vs("q", n)
    return Exists(zs, conj(ascending(zs), *[finite_above(z) for z in zs]))


def _fam_block_chain(n, k):
    xs = _vs("b", n + 1)
    links = [Not(sim(k, a, b)) for a, b in zip(xs, xs[1:])]
    return Exists(xs, conj(ascending(xs), *links))


def _fam_block_chain_two_sided(n, k):
    xs = _vs("b", n + 1)
    ys = _vs("d", n + 1)
    chain = xs + tuple(reversed(ys))
    links = [Not(sim(k, a, b)) for a, b in zip(chain, chain[1:])]
    return Exists(chain, conj(ascending(chain), *links))


FAMILIES = {
    "interval_at_most": _fam_interval_at_most,
    "sim_step": _fam_sim_step,
    "at_most_below": _fam_at_most_below,
    "at_most_above": _fam_at_most_above,
    "at_least_below": _fam_at_least_below,
    "at_least_above": _fam_at_least_above,
    "at_least_elements": _fam_at_least_elements,
    "at_least_finpred": _fam_at_least_finpred,
    "at_least_finsucc": _fam_at_least_finsucc,
    "block_chain": _fam_block_chain,
    "block_chain_two_sided": _fam_block_chain_two_sided,
}


def instantiate(family: str, n: int, args: tuple) -> Formula:
    try:
        builder = FAMILIES[family]
    except KeyError:
        raise FormulaError("unknown schema family %r" % family)
    return builder(n, *args)


def finite_below(x):
    """x has finitely many predecessors."""
    return SchemaOr("at_most_below", (x,))


def finite_above(x):
    return SchemaOr("at_most_above", (x,))


def infinite_below(x):
    return SchemaAnd("at_least_below", (x,))


def infinite_above(x):
    return SchemaAnd("at_least_above", (x,))


# --- complexity classification ----------------------------------------------


@dataclass(frozen=True)
class ComplexityClass:
    kind: str  # "QF" | "Sigma" | "Pi" | "dSigma"
    level: int

    def __str__(self):
        if self.kind == "QF":
            return "QF"
        if self.kind == "dSigma":
            return "d-Sigma_%d" % self.level
        return "%s_%d" % (self.kind, self.level)


QF = ComplexityClass("QF", 0)


def Sigma(k):
    return ComplexityClass("Sigma", k)


def Pi(k):
    return ComplexityClass("Pi", k)


def dSigma(k):
    return ComplexityClass("dSigma", k)


def class_le(a: ComplexityClass, b: ComplexityClass) -> bool:
    """The containment order: Sigma_k, Pi_k < d-Sigma_k < Sigma_{k+1}, Pi_{k+1}."""
    if a == b or a.kind == "QF":
        return True
    if b.kind == "QF":
        return False
    if a.kind == b.kind:
        return a.level <= b.level
    if a.kind == "dSigma":
        return a.level < b.level
    if b.kind == "dSigma":
        return a.level <= b.level
    # Sigma vs Pi or Pi vs Sigma
    return a.level < b.level


_SAMPLE_NS = (1, 2, 3)


def _norm(sig, pi):
    return (min(sig, pi + 1), min(pi, sig + 1))


@lru_cache(maxsize=None)
def _levels(f: Formula):
    """(least existential level, least universal level, is finitary QF)."""
    if isinstance(f, Atomic):
        return (0, 0, True)
    if isinstance(f, Not):
        s, p, qf = _levels(f.body)
        return (p, s, qf)
    if isinstance(f, (And, Or)):
        if not f.parts:
            return (0, 0, True)
        subs = [_levels(p) for p in f.parts]
        if all(q for _, _, q in subs):
            return (0, 0, True)
        sig = max(s for s, _, _ in subs)
        pi = max(p for _, p, _ in subs)
        sig, pi = _norm(sig, pi)
        return (sig, pi, False)
    if isinstance(f, Exists):
        s, p, _ = _levels(f.body)
        sig = min(max(s, 1), p + 1)
        sig, pi = _norm(sig, sig + 1)
        return (sig, pi, False)
    if isinstance(f, Forall):
        s, p, _ = _levels(f.body)
        pi = min(max(p, 1), s + 1)
        sig, pi = _norm(pi + 1, pi)
        return (sig, pi, False)
    if isinstance(f, SchemaOr):
        samples = [_levels(instantiate(f.family, n, f.args)) for n in _SAMPLE_NS]
        sig = max(max(s for s, _, _ in samples), 1)
        sig, pi = _norm(sig, sig + 1)
        return (sig, pi, False)
    if isinstance(f, SchemaAnd):
        samples = [_levels(instantiate(f.family, n, f.args)) for n in _SAMPLE_NS]
        pi = max(max(p for _, p, _ in samples), 1)
        sig, pi = _norm(pi + 1, pi)
        return (sig, pi, False)
    raise FormulaError("unknown formula node %r" % (f,))


def classify_complexity(f: Formula) -> ComplexityClass:
    sig, pi, qf = _levels(f)
    if qf:
        return QF
    if isinstance(f, And) and len(f.parts) >= 2:
        kd = max(min(s, p) for s, p, _ in (_levels(part) for part in f.parts))
        if kd >= 1 and kd < sig and kd < pi:
            return dSigma(kd)
    if sig < pi:
        return Sigma(sig)
    if pi < sig:
        return Pi(pi)
    return _tiebreak(f, sig)


def _tiebreak(f: Formula, level: int) -> ComplexityClass:
    if isinstance(f, (Or, Exists, SchemaOr)):
        return Sigma(level)
    if isinstance(f, (And, Forall, SchemaAnd)):
        return Pi(level)
    if isinstance(f, Not):
        inner = _tiebreak(f.body, level)
        return Pi(level) if inner.kind == "Sigma" else Sigma(level)
    return Sigma(level)


# --- finite-model evaluation -------------------------------------------------

_EVAL_MAX = 12


def _qdepth(f: Formula) -> int:
    if isinstance(f, Atomic):
        return 0
    if isinstance(f, Not):
        return _qdepth(f.body)
    if isinstance(f, (And, Or)):
        return max((_qdepth(p) for p in f.parts), default=0)
    if isinstance(f, (Exists, Forall)):
        return len(f.vars) + _qdepth(f.body)
    if isinstance(f, (SchemaOr, SchemaAnd)):
        return 1 + _qdepth(instantiate(f.family, 2, f.args))
    raise FormulaError("unknown formula node %r" % (f,))


def eval_finite(f: Formula, model, assignment=None) -> bool:
    """Truth of f in the finite order 0 < 1 < ... < n-1.

    The model may be an int or a Fin term.  Schema connectives are
    evaluated with index bound n + quantifier depth + 1, which is exact on
    finite orders: beyond it the family instances are monotone-constant.
    """
    from .terms import Fin as _Fin

    if isinstance(model, _Fin):
        n = model.n
    elif isinstance(model, int):
        n = model
    else:
        raise FormulaError("model must be a size or a Fin term")
    if n > _EVAL_MAX:
        raise FormulaError("finite evaluation limited to %d elements" % _EVAL_MAX)
    env = dict(assignment or {})
    bound = n + _qdepth(f) + 1
    return _eval(f, n, env, bound)


def _eval(f, n, env, bound):
    if isinstance(f, Atomic):
        a, b = env[f.left], env[f.right]
        return a < b if f.op == "<" else a == b
    if isinstance(f, Not):
        return not _eval(f.body, n, env, bound)
    if isinstance(f, And):
        return all(_eval(p, n, env, bound) for p in f.parts)
    if isinstance(f, Or):
        return any(_eval(p, n, env, bound) for p in f.parts)
    if isinstance(f, Exists):
        return _eval_quant(f.vars, f.body, n, env, bound, True)
    if isinstance(f, Forall):
        return _eval_quant(f.vars, f.body, n, env, bound, False)
    if isinstance(f, SchemaOr):
        return any(_eval(instantiate(f.family, i, f.args), n, env, bound)
                   for i in range(bound + 1))
    if isinstance(f, SchemaAnd):
        return all(_eval(instantiate(f.family, i, f.args), n, env, bound)
                   for i in range(bound + 1))
    raise FormulaError("unknown formula node %r" % (f,))


def _eval_quant(names, body, n, env, bound, existential):
    if not names:
        return _eval(body, n, env, bound)
    head, rest = names[0], names[1:]
    for v in range(n):
        env[head] = v
        ok = _eval_quant(rest, body, n, env, bound, existential)
        if existential and ok:
            del env[head]
            return True
        if not existential and not ok:
            del env[head]
            return False
    if head in env:
        del env[head]
    return not existential


# --- serialization and printing ----------------------------------------------


def to_json(f: Formula):
    if isinstance(f, Atomic):
        return {"node": "atomic", "op": f.op, "left": f.left, "right": f.right}
    if isinstance(f, Not):
        return {"node": "not", "body": to_json(f.body)}
    if isinstance(f, And):
        return {"node": "and", "parts": [to_json(p) for p in f.parts]}
    if isinstance(f, Or):
        return {"node": "or", "parts": [to_json(p) for p in f.parts]}
    if isinstance(f, Exists):
        return {"node": "exists", "vars": list(f.vars), "body": to_json(f.body)}
    if isinstance(f, Forall):
        return {"node": "forall", "vars": list(f.vars), "body": to_json(f.body)}
    if isinstance(f, SchemaOr):
        return {"node": "schema_or", "family": f.family, "args": list(f.args)}
    if isinstance(f, SchemaAnd):
        return {"node": "schema_and", "family": f.family, "args": list(f.args)}
    raise FormulaError("unknown formula node %r" % (f,))


def from_json(data) -> Formula:
    node = data["node"]
    if node == "atomic":
        return Atomic(data["op"], data["left"], data["right"])
    if node == "not":
        return Not(from_json(data["body"]))
    if node == "and":
        return And(tuple(from_json(p) for p in data["parts"]))
    if node == "or":
        return Or(tuple(from_json(p) for p in data["parts"]))
    if node == "exists":
        return Exists(tuple(data["vars"]), from_json(data["body"]))
    if node == "forall":
        return Forall(tuple(data["vars"]), from_json(data["body"]))
    if node == "schema_or":
        return SchemaOr(data["family"], tuple(data["args"]))
    if node == "schema_and":
        return SchemaAnd(data["family"], tuple(data["args"]))
    raise FormulaError("unknown node kind %r" % node)


def _texvar(v: str) -> str:
    return v.lstrip(".")


def to_tex(f: Formula) -> str:
    if isinstance(f, Atomic):
        return "%s %s %s" % (_texvar(f.left), f.op, _texvar(f.right))
    if isinstance(f, Not):
        return r"\neg(%s)" % to_tex(f.body)
    if isinstance(f, And):
        if not f.parts:
            return r"\top"
        return "(" + r" \land ".join(to_tex(p) for p in f.parts) + ")"
    if isinstance(f, Or):
        if not f.parts:
            return r"\bot"
        return "(" + r" \lor ".join(to_tex(p) for p in f.parts) + ")"
    if isinstance(f, Exists):
        return r"\exists %s\, %s" % (" ".join(map(_texvar, f.vars)), to_tex(f.body))
    if isinstance(f, Forall):
        return r"\forall %s\, %s" % (" ".join(map(_texvar, f.vars)), to_tex(f.body))
    if isinstance(f, SchemaOr):
        return r"\bigvee_{n\in\omega} \mathrm{%s}_n(%s)" % (
            f.family.replace("_", r"\_"), ", ".join(str(a) for a in f.args))
    if isinstance(f, SchemaAnd):
        return r"\bigwedge_{n\in\omega} \mathrm{%s}_n(%s)" % (
            f.family.replace("_", r"\_"), ", ".join(str(a) for a in f.args))
    raise FormulaError("unknown formula node %r" % (f,))


def pretty(f: Formula) -> str:
    if isinstance(f, Atomic):
        return "%s %s %s" % (_texvar(f.left), f.op, _texvar(f.right))
    if isinstance(f, Not):
        return "~(%s)" % pretty(f.body)
    if isinstance(f, And):
        if not f.parts:
            return "true"
        return "(" + " & ".join(pretty(p) for p in f.parts) + ")"
    if isinstance(f, Or):
        if not f.parts:
            return "false"
        return "(" + " | ".join(pretty(p) for p in f.parts) + ")"
    if isinstance(f, Exists):
        return "E %s.(%s)" % (" ".join(map(_texvar, f.vars)), pretty(f.body))
    if isinstance(f, Forall):
        return "A %s.(%s)" % (" ".join(map(_texvar, f.vars)), pretty(f.body))
    if isinstance(f, SchemaOr):
        return "OR_n %s(%s)" % (f.family, ", ".join(str(a) for a in f.args))
    if isinstance(f, SchemaAnd):
        return "AND_n %s(%s)" % (f.family, ", ".join(str(a) for a in f.args))
    raise FormulaError("unknown formula node %r" % (f,))
