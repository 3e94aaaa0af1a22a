"""Finite-level back-and-forth relations between term orders.

``leq_bf(A, B, k)`` decides A <=_k B: every level-k universal infinitary
sentence true in A holds in B.  The inductive definition quantifies over
all finite tuples of B; by the standard partition property, a tuple
challenge decomposes into componentwise interval conditions one level
down, so the decision procedure plays challenges one cut at a time:

    A <=_k B  iff  B <=_{k-1} A, and every capped single cut of B can be
    answered by a cut of A whose open prefix dominates the challenged
    prefix at level k-1, such that the suffix pair again has the matching
    property (up to the tuple budget).

Enumeration over the infinite structures is capped: challenge positions
use Omega/OmegaStar indices up to index_cap(level) (responders get twice
that, so structurally shifted copies stay answerable) and challenge chains
are bounded by tuple_cap(level).  Caps are empirical; use
``cap_stability_check`` to qualify a verdict.  On pairs of finite orders
nothing is capped and the procedure is exact; ``brute_force_leq`` is an
independent literal implementation of the definition used to validate it.

Exact fast paths (each provable from the definition, and exercised against
the brute-force oracle on small finite orders):
  * level 0 always holds; level 1 is the cardinality law |B| <= |A|;
  * one side finite, one infinite: false at level >= 2 ("at most n
    elements" is universal; "infinitely many" is level 2);
  * both finite and large: A <=_k B iff |A| = |B| for k >= 2.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field

from .blocks import canonical_rank1, hausdorff_rank, normalize
from .positions import enumerate_positions, position_to_json, prefix_suffix
from .terms import Fin, OrderTerm, size, term_to_text

sys.setrecursionlimit(40000)

_FINITE_GAME_LIMIT = 16  # run the real game below this size; closed form above


class LevelError(ValueError):
    pass


@dataclass(frozen=True)
class Caps:
    """Cut-enumeration caps; scale multiplies every cap (used for stability)."""

    scale: int = 1
    index_override: int | None = None
    tuple_override: int | None = None
    responder_factor: int = 2
    max_level: int = 6

    def __post_init__(self):
        if self.scale < 1:
            raise LevelError("cap scale must be >= 1")
        for v in (self.index_override, self.tuple_override):
            if v is not None and v < 1:
                raise LevelError("cap overrides must be >= 1")

    def index_cap(self, k: int) -> int:
        base = self.index_override if self.index_override else 2 ** (k + 1)
        return base * self.scale

    def tuple_cap(self, k: int) -> int:
        base = self.tuple_override if self.tuple_override else 2 ** k
        return base * self.scale

    def responder_cap(self, k: int) -> int:
        return self.index_cap(k) * self.responder_factor

    def scaled(self, factor: int) -> "Caps":
        return Caps(
            scale=self.scale * factor,
            index_override=self.index_override,
            tuple_override=self.tuple_override,
            responder_factor=self.responder_factor,
            max_level=self.max_level,
        )

    def key(self):
        return (self.scale, self.index_override, self.tuple_override,
                self.responder_factor)

    def to_json(self, k: int):
        return {"index": self.index_cap(k), "tuple": self.tuple_cap(k)}


DEFAULT_CAPS = Caps()

_LEQ_MEMO: dict = {}
_GAME_MEMO: dict = {}
_CLASS_MEMO: dict = {}


def reset_caches():
    _LEQ_MEMO.clear()
    _GAME_MEMO.clear()
    _CLASS_MEMO.clear()
    _brute.cache_clear()


@dataclass(frozen=True)
class BFResult:
    holds: bool
    level: int
    caps: dict
    witness: dict | None = None

    def to_json(self):
        out = {"holds": self.holds, "level": self.level, "caps": self.caps}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _classes(t: OrderTerm, cap: int):
    """Positions of t deduplicated by their (prefix, suffix) interval pair."""
    key = (t, cap)
    hit = _CLASS_MEMO.get(key)
    if hit is not None:
        return hit
    seen = set()
    out = []
    for pos in enumerate_positions(t, cap):
        pre, suf = prefix_suffix(t, pos)
        if (pre, suf) in seen:
            continue
        seen.add((pre, suf))
        out.append((pre, suf, pos))
    _CLASS_MEMO[key] = out
    return out


def _leq(A: OrderTerm, B: OrderTerm, k: int, caps: Caps) -> bool:
    if A == B or k <= 0:
        return True
    sA, sB = size(A), size(B)
    if k == 1:
        if sB is None:
            return sA is None
        return sA is None or sB <= sA
    key = (A, B, k, caps.key())
    hit = _LEQ_MEMO.get(key)
    if hit is not None:
        return hit
    if sA is not None and sB is not None:
        if max(sA, sB) > _FINITE_GAME_LIMIT:
            res = sA == sB
        else:
            res = _game(A, B, k, None, caps)
    elif (sA is None) != (sB is None):
        res = False
    else:
        res = _game(A, B, k, caps.tuple_cap(k), caps)
    _LEQ_MEMO[key] = res
    return res


def _candidates(resp, preD, sufD):
    """Response classes, most promising first (term-identical prefixes win)."""
    exact, same_pre, rest = [], [], []
    for cand in resp:
        if cand[0] == preD and cand[1] == sufD:
            exact.append(cand)
        elif cand[0] == preD:
            same_pre.append(cand)
        else:
            rest.append(cand)
    return exact + same_pre + rest


def _game(X: OrderTerm, Y: OrderTerm, k: int, t, caps: Caps) -> bool:
    """Suffix-matching game state: challenges come from Y, answers from X."""
    key = (X, Y, k, t, caps.key())
    hit = _GAME_MEMO.get(key)
    if hit is not None:
        return hit
    res = _game_eval(X, Y, k, t, caps)
    _GAME_MEMO[key] = res
    return res


def _game_eval(X, Y, k, t, caps):
    if not _leq(Y, X, k - 1, caps):
        return False
    if t == 0:
        return True
    finite = size(X) is not None and size(Y) is not None
    cap = caps.index_cap(k)
    rcap = caps.responder_cap(k)
    chal = _classes(Y, cap)
    resp = _classes(X, rcap) if not finite else _classes(X, cap)
    t2 = None if t is None else t - 1
    for preD, sufD, _pos in chal:
        answered = False
        for preC, sufC, _cpos in _candidates(resp, preD, sufD):
            if _leq(preD, preC, k - 1, caps) and _game(sufC, sufD, k, t2, caps):
                answered = True
                break
        if not answered:
            return False
    return True


def leq_bf(A: OrderTerm, B: OrderTerm, k: int, caps: Caps = DEFAULT_CAPS) -> BFResult:
    """Decide A <=_k B under the given caps."""
    if k < 0:
        raise LevelError("level must be >= 0")
    if k > caps.max_level:
        raise LevelError("level %d above configured maximum %d" % (k, caps.max_level))
    A = normalize(A)
    B = normalize(B)
    holds = _leq(A, B, k, caps)
    witness = None if holds else _false_witness(A, B, k, caps)
    return BFResult(holds, k, caps.to_json(k), witness)


def _false_witness(A, B, k, caps):
    sA, sB = size(A), size(B)
    if k == 1:
        return {"kind": "size-law", "left": sA, "right": sB}
    if (sA is None) != (sB is None):
        return {"kind": "finiteness-mismatch", "left": sA, "right": sB}
    if sA is not None and sB is not None and max(sA, sB) > _FINITE_GAME_LIMIT:
        return {"kind": "cardinality", "left": sA, "right": sB}
    steps = []
    X, Y = A, B
    t = None if (sA is not None and sB is not None) else caps.tuple_cap(k)
    guard = 0
    while True:
        guard += 1
        if guard > 10000:
            break
        if not _leq(Y, X, k - 1, caps):
            steps.append({"kind": "flip", "left": term_to_text(Y),
                          "right": term_to_text(X), "level": k - 1})
            break
        finite = size(X) is not None and size(Y) is not None
        chal = _classes(Y, caps.index_cap(k))
        resp = _classes(X, caps.responder_cap(k)) if not finite else _classes(X, caps.index_cap(k))
        t2 = None if t is None else t - 1
        move = None
        for preD, sufD, pos in chal:
            passing = None
            for preC, sufC, cpos in _candidates(resp, preD, sufD):
                if not _leq(preD, preC, k - 1, caps):
                    continue
                if _game(sufC, sufD, k, t2, caps):
                    passing = "answered"
                    break
                if passing is None:
                    passing = (preC, sufC, cpos)
            if passing == "answered":
                continue
            move = (preD, sufD, pos, passing)
            break
        if move is None:
            break
        preD, sufD, pos, passing = move
        step = {
            "kind": "challenge",
            "position": position_to_json(pos),
            "prefix": term_to_text(preD),
            "suffix": term_to_text(sufD),
        }
        if passing is None:
            step["note"] = "no response satisfies the level-%d prefix condition" % (k - 1)
            steps.append(step)
            break
        preC, sufC, cpos = passing
        step["response"] = position_to_json(cpos)
        step["response_suffix"] = term_to_text(sufC)
        steps.append(step)
        X, Y, t = sufC, sufD, t2
    return {"kind": "challenge-chain", "level": k, "steps": steps}


def replay_witness(A: OrderTerm, B: OrderTerm, k: int, caps: Caps, result: BFResult) -> bool:
    """Re-run the decision and confirm the recorded verdict still holds."""
    fresh = leq_bf(A, B, k, caps)
    if fresh.holds != result.holds:
        return False
    if result.witness is None:
        return True
    return fresh.witness is not None and fresh.witness == result.witness


# --- stability -------------------------------------------------------------


@dataclass(frozen=True)
class StabilityReport:
    verdicts: tuple
    scales: tuple
    stable: bool

    def to_json(self):
        return {"verdicts": list(self.verdicts), "scales": list(self.scales),
                "stable": self.stable}


def cap_stability_check(A: OrderTerm, B: OrderTerm, k: int,
                        caps: Caps = DEFAULT_CAPS) -> StabilityReport:
    """Evaluate under caps, doubled caps, and quadrupled caps."""
    verdicts = []
    scales = (1, 2, 4)
    for f in scales:
        verdicts.append(leq_bf(A, B, k, caps.scaled(f)).holds)
    stable = verdicts[0] == verdicts[1] == verdicts[2]
    return StabilityReport(tuple(verdicts), scales, stable)


# --- isomorphism -----------------------------------------------------------


class RankError(ValueError):
    pass


_MAX_ISO_RANK = 2


def iso(A: OrderTerm, B: OrderTerm, caps: Caps = DEFAULT_CAPS) -> bool:
    """Isomorphism of term orders.

    Rank 0: equality of sizes.  Rank 1: equality of canonical block-atom
    sequences.  Rank 2: both directions of <=_{2r+2} (a true verdict is
    cap-qualified; see iso_report).
    """
    return iso_report(A, B, caps)["holds"]


def iso_report(A: OrderTerm, B: OrderTerm, caps: Caps = DEFAULT_CAPS) -> dict:
    A = normalize(A)
    B = normalize(B)
    if A == B:
        return {"holds": True, "method": "canonical", "qualified": False}
    rA = hausdorff_rank(A)
    rB = hausdorff_rank(B)
    if rA != rB:
        return {"holds": False, "method": "rank", "qualified": False,
                "ranks": [rA, rB]}
    if rA == 0:
        return {"holds": False, "method": "canonical", "qualified": False}
    if rA == 1:
        same = canonical_rank1(A) == canonical_rank1(B)
        return {"holds": same, "method": "canonical", "qualified": False}
    if rA > _MAX_ISO_RANK:
        raise RankError("rank %d above configured maximum %d" % (rA, _MAX_ISO_RANK))
    k = 2 * rA + 2
    forward = _leq(A, B, k, caps)
    backward = forward and _leq(B, A, k, caps)
    holds = forward and backward
    return {"holds": holds, "method": "backforth", "level": k,
            "qualified": holds}


# --- brute-force oracle on finite orders ------------------------------------

from functools import lru_cache

_BRUTE_MAX_SIZE = 8
_BRUTE_MAX_LEVEL = 4


def brute_force_leq(A, B, k: int) -> bool:
    """Literal back-and-forth on finite orders: exhaustive tuple challenges
    over all levels below k, no caps.

    A pointed pair with matching tuple patterns is represented by its
    vector of interval sizes; pattern-mismatched responses are pruned
    because they already fail at level 0.
    """
    nA = _brute_size(A)
    nB = _brute_size(B)
    if nA > _BRUTE_MAX_SIZE or nB > _BRUTE_MAX_SIZE:
        raise LevelError("brute force limited to size %d" % _BRUTE_MAX_SIZE)
    if k > _BRUTE_MAX_LEVEL:
        raise LevelError("brute force limited to level %d" % _BRUTE_MAX_LEVEL)
    if k < 0:
        raise LevelError("level must be >= 0")
    return _brute((nA,), (nB,), k)


def _brute_size(x) -> int:
    if isinstance(x, Fin):
        return x.n
    if isinstance(x, OrderTerm):
        s = size(x)
        if s is None:
            raise LevelError("brute force needs a finite order")
        return s
    if isinstance(x, int):
        if x < 0:
            raise LevelError("negative size")
        return x
    return len(list(x))


@lru_cache(maxsize=None)
def _brute(ga: tuple, gb: tuple, k: int) -> bool:
    # (A, marked tuple) <=_k (B, marked tuple), both given as gap vectors.
    if k == 0:
        return True
    for beta in range(k):
        for db in _refinements(gb):
            answered = False
            for da in _refinements_matching(ga, tuple(len(c) - 1 for c in db)):
                if _brute(_flatten(db), _flatten(da), beta):
                    answered = True
                    break
            if not answered:
                return False
    return True


def _flatten(comps):
    out = []
    for c in comps:
        out.extend(c)
    return tuple(out)


def _compositions(s: int, parts: int):
    if parts == 1:
        yield (s,)
        return
    for first in range(s + 1):
        for rest in _compositions(s - first, parts - 1):
            yield (first,) + rest


def _gap_choices(s: int):
    # place j new points in a gap of size s, splitting it into j+1 parts
    out = []
    for j in range(s + 1):
        out.extend(_compositions(s - j, j + 1))
    return out


def _refinements(gaps: tuple):
    if not gaps:
        yield ()
        return
    head, rest = gaps[0], gaps[1:]
    for choice in _gap_choices(head):
        for tail in _refinements(rest):
            yield (choice,) + tail


def _refinements_matching(gaps: tuple, arities: tuple):
    if not gaps:
        yield ()
        return
    head, rest = gaps[0], gaps[1:]
    j = arities[0]
    if head < j:
        return
    for choice in _compositions(head - j, j + 1):
        for tail in _refinements_matching(rest, arities[1:]):
            yield (choice,) + tail
