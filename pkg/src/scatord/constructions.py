"""Deterministic, replayable stage constructions.

Each run simulates one of the enumeration-driven constructions at desk
scale: instead of machine indices, an explicit schedule per parameter says
at which stages that parameter's enumeration receives a new element.  All
runs grow a finite structure stage by stage; elements are never moved or
removed, so every stage embeds into the next and the whole run replays
byte-for-byte from its inputs.

Kinds:
  * pi3: an ascending backbone; each firing of parameter x inserts fresh
    elements between every adjacent pair inside the gap (x, x+1) (or one
    element per firing under the sparse rule).  All schedules finite means
    the limit stays an ascending chain; an infinite schedule makes one gap
    dense.
  * sigma3: limit-point constructions; a firing appends an element at the
    end of gap x (variant omega_plus_omega) or grows gap x on both sides
    (variant omega_plus_zeta).  Starred variants are order reversals.
  * priority: workers x = 0, 1, ... each try to place a marked block of n
    constants; the least firing worker acts, placing its block after the
    least non-initiated worker's block, pushing endpoint elements around
    its own block, and initiating every higher worker.
  * blockred: movable-marker chains C_0 ... C_{N-1}; chain n grows while
    its current witness x for "for all y: R(n, x, y)" keeps being refuted
    and freezes once a witness survives, so in the limit the marker pair
    of chain n lies in one block exactly when such a witness exists.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .blocks import normalize
from .terms import OMEGA, OrderTerm


class ConstructionError(ValueError):
    pass


# --- schedules ---------------------------------------------------------------


@dataclass(frozen=True)
class Schedule:
    kind: str  # "finite" | "periodic"
    stages: tuple = ()
    start: int = 0
    period: int = 1

    def __post_init__(self):
        if self.kind not in ("finite", "periodic"):
            raise ConstructionError("schedule kind must be finite or periodic")
        if self.kind == "finite":
            if list(self.stages) != sorted(set(self.stages)):
                raise ConstructionError("finite schedule stages must be strictly increasing")
            if any(s < 0 for s in self.stages):
                raise ConstructionError("stages must be naturals")
        else:
            if self.period < 1:
                raise ConstructionError("period must be >= 1")
            if self.start < 0:
                raise ConstructionError("start must be a natural")

    def fires(self, stage: int) -> bool:
        if self.kind == "finite":
            return stage in self.stages
        return stage >= self.start and (stage - self.start) % self.period == 0

    @property
    def infinite(self) -> bool:
        return self.kind == "periodic"

    def to_json(self):
        if self.kind == "finite":
            return {"finite": list(self.stages)}
        return {"periodic": {"start": self.start, "period": self.period}}


@dataclass(frozen=True)
class EnumerationFamily:
    schedules: tuple  # tuple of (x, Schedule) pairs, x strictly increasing

    def schedule(self, x: int) -> Schedule:
        for xx, s in self.schedules:
            if xx == x:
                return s
        return Schedule("finite", ())

    def fires(self, x: int, stage: int) -> bool:
        return self.schedule(x).fires(stage)

    def firing(self, stage: int):
        return [x for x, s in self.schedules if s.fires(stage)]

    def infinite_params(self):
        return [x for x, s in self.schedules if s.infinite]

    def to_json(self):
        return {"schedules": {str(x): s.to_json() for x, s in self.schedules}}

    @staticmethod
    def from_json(data) -> "EnumerationFamily":
        if "schedules" not in data:
            raise ConstructionError("schedule file needs a 'schedules' map")
        pairs = []
        for key, spec in data["schedules"].items():
            x = int(key)
            if "finite" in spec:
                pairs.append((x, Schedule("finite", tuple(spec["finite"]))))
            elif "periodic" in spec:
                p = spec["periodic"]
                pairs.append((x, Schedule("periodic", (), int(p["start"]),
                                          int(p["period"]))))
            else:
                raise ConstructionError("schedule for %s must be finite or periodic" % key)
        pairs.sort()
        return EnumerationFamily(tuple(pairs))

    @staticmethod
    def from_file(path) -> "EnumerationFamily":
        with open(path) as fh:
            return EnumerationFamily.from_json(json.load(fh))


def empty_family() -> EnumerationFamily:
    return EnumerationFamily(())


# --- runs --------------------------------------------------------------------


@dataclass
class ConstructionRun:
    kind: str
    stages: int
    order: list  # element ids in order, final stage
    events: list  # (stage, kind, payload) dicts
    snapshots: list  # per-stage orders (stage 0 .. stages)
    workers: dict | None = None
    meta: dict = field(default_factory=dict)

    def to_json(self):
        out = {
            "kind": self.kind,
            "stages": self.stages,
            "elements": sorted(self.order),
            "order": list(self.order),
            "events": list(self.events),
        }
        if self.workers is not None:
            out["workers"] = {str(x): w for x, w in self.workers.items()}
        if self.meta:
            out["meta"] = self.meta
        return out


def _event(events, stage, kind, **payload):
    e = {"stage": stage, "event": kind}
    e.update(payload)
    events.append(e)


# --- pi3: one dense gap vs an ascending chain ---------------------------------


def run_pi3_omega(family: EnumerationFamily, stages: int,
                  insertion_rule: str = "doubling") -> ConstructionRun:
    if insertion_rule not in ("doubling", "sparse"):
        raise ConstructionError("insertion rule must be doubling or sparse")
    if stages < 0:
        raise ConstructionError("stage count must be >= 0")
    backbone = ["b0"]
    gaps: dict = {}
    events: list = []
    fresh = 0
    _event(events, 0, "backbone", element="b0")
    snapshots = [_pi3_order(backbone, gaps)]
    for s in range(1, stages + 1):
        bid = "b%d" % s
        backbone.append(bid)
        gaps.setdefault(s - 1, [])
        _event(events, s, "backbone", element=bid)
        for x in family.firing(s):
            if x + 1 >= len(backbone):
                continue  # gap endpoints not both present yet
            gap = gaps.setdefault(x, [])
            if insertion_rule == "doubling":
                # one fresh element between every adjacent pair in [x, x+1]
                count = len(gap) + 1
                new_gap = []
                for i in range(count):
                    eid = "f%d.%d" % (s, fresh)
                    fresh += 1
                    new_gap.append(eid)
                    _event(events, s, "insert", element=eid, gap=x, slot=i)
                    if i < len(gap):
                        new_gap.append(gap[i])
                gaps[x] = new_gap
            else:
                eid = "f%d.%d" % (s, fresh)
                fresh += 1
                gap.insert(0, eid)
                _event(events, s, "insert", element=eid, gap=x, slot=0)
        snapshots.append(_pi3_order(backbone, gaps))
    return ConstructionRun("pi3_omega", stages, snapshots[-1], events, snapshots,
                           meta={"insertion_rule": insertion_rule,
                                 "gap_sizes": {str(x): len(g) for x, g in gaps.items()}})


def _pi3_order(backbone, gaps):
    out = []
    for i, b in enumerate(backbone):
        out.append(b)
        out.extend(gaps.get(i, ()))
    return out


# --- sigma3: limit-point constructions -----------------------------------------

_SIGMA3_VARIANTS = ("omega_plus_omega", "omega_star_sq", "omega_plus_zeta",
                    "zeta_plus_omega_star")


def run_sigma3_limit(family: EnumerationFamily, stages: int,
                     variant: str = "omega_plus_omega") -> ConstructionRun:
    if variant not in _SIGMA3_VARIANTS:
        raise ConstructionError("unknown variant %r" % variant)
    reverse = variant in ("omega_star_sq", "zeta_plus_omega_star")
    two_sided = variant in ("omega_plus_zeta", "zeta_plus_omega_star")
    backbone = ["b0"]
    left: dict = {}
    right: dict = {}
    events: list = []
    _event(events, 0, "backbone", element="b0")
    snapshots = [["b0"]]
    for s in range(1, stages + 1):
        bid = "b%d" % s
        backbone.append(bid)
        _event(events, s, "backbone", element=bid)
        for x in family.firing(s):
            if x >= len(backbone):
                continue
            if two_sided:
                lid = "g%d.a" % s
                rid = "g%d.b" % s
                left.setdefault(x, []).append(lid)
                right.setdefault(x, []).insert(0, rid)
                _event(events, s, "insert", element=lid, gap=x, side="left")
                _event(events, s, "insert", element=rid, gap=x, side="right")
            else:
                eid = "g%d" % s
                left.setdefault(x, []).append(eid)
                _event(events, s, "insert", element=eid, gap=x, side="end")
        snap = []
        for i, b in enumerate(backbone):
            snap.append(b)
            snap.extend(left.get(i, ()))
            snap.extend(right.get(i, ()))
        if reverse:
            snap = list(reversed(snap))
        snapshots.append(snap)
    growth = {str(x): len(left.get(x, ())) + len(right.get(x, ()))
              for x in set(left) | set(right)}
    return ConstructionRun("sigma3_" + variant, stages, snapshots[-1], events,
                           snapshots, meta={"variant": variant,
                                            "reversed": reverse,
                                            "gap_sizes": growth})


# --- priority construction -----------------------------------------------------


def run_priority(family: EnumerationFamily, n: int, stages: int) -> ConstructionRun:
    if n < 1:
        raise ConstructionError("block size must be >= 1")
    if stages < 0:
        raise ConstructionError("stage count must be >= 0")
    order: list = []
    events: list = []
    constants: dict = {}  # x -> list of n ids, or absent if initiated
    history: dict = {}  # x -> dict(actions, initiations, last_defined)
    snapshots = [list(order)]
    max_x = max([x for x, _ in family.schedules], default=-1)

    def record(x):
        return history.setdefault(x, {"actions": 0, "initiations": 0,
                                      "last_defined": None, "defined": False})

    for s in range(1, stages + 1):
        firing = family.firing(s)
        if not firing:
            snapshots.append(list(order))
            continue
        x = min(firing)
        rec = record(x)
        rec["actions"] += 1
        if x not in constants:
            ids = ["c%d.%d" % (s, i) for i in range(1, n + 1)]
            if not constants:
                pos = len(order)
            else:
                y0 = min(constants)
                pos = order.index(constants[y0][-1]) + 1
            order[pos:pos] = ids
            constants[x] = ids
            rec["last_defined"] = s
            rec["defined"] = True
            _event(events, s, "define", worker=x, constants=ids)
        ids = constants[x]
        left_id = "e%d.l" % s
        right_id = "e%d.r" % s
        i1 = order.index(ids[0])
        order[i1:i1] = [left_id]
        i2 = order.index(ids[-1]) + 1
        order[i2:i2] = [right_id]
        _event(events, s, "endpoints", worker=x, left=left_id, right=right_id)
        targets = [y for y in range(x + 1, max_x + 1)]
        for y in targets:
            record(y)["initiations"] += 1
            if y in constants:
                del constants[y]
                history[y]["defined"] = False
        _event(events, s, "initiate", worker=x, targets=targets)
        snapshots.append(list(order))
    workers = {x: {"actions": h["actions"], "initiations": h["initiations"],
                   "last_defined": h["last_defined"],
                   "defined_at_end": h["defined"],
                   "constants": constants.get(x)}
               for x, h in history.items()}
    return ConstructionRun("priority", stages, list(order), events, snapshots,
                           workers=workers, meta={"block_size": n})


# --- block reduction -----------------------------------------------------------


@dataclass(frozen=True)
class RelationTable:
    """Rows define R(n, x, y) for specific (n, x); everything else is false.

    y_rule is "all", "none", or {"period": k, "holes": [...]} meaning
    R(n, x, y) fails exactly when y mod period is in holes.
    """

    rows: tuple  # tuple of (n, x, rule) with rule "all" | "none" | (period, holes)

    def holds(self, n: int, x: int, y: int) -> bool:
        for rn, rx, rule in self.rows:
            if rn == n and rx == x:
                if rule == "all":
                    return True
                if rule == "none":
                    return False
                period, holes = rule
                return (y % period) not in holes
        return False

    def witness_candidates(self, n: int):
        return sorted(rx for rn, rx, _ in self.rows if rn == n)

    def region_count(self):
        return max((rn for rn, _, _ in self.rows), default=-1) + 1

    def in_s(self, n: int) -> bool:
        """Independent evaluation of: exists x, for all y, R(n, x, y)."""
        for rn, rx, rule in self.rows:
            if rn != n:
                continue
            if rule == "all":
                return True
            if rule == "none":
                continue
            period, holes = rule
            if not any(h in range(period) for h in [h % period for h in holes]):
                return True
        return False

    def to_json(self):
        out = []
        for rn, rx, rule in self.rows:
            if rule in ("all", "none"):
                out.append({"n": rn, "x": rx, "y_rule": rule})
            else:
                out.append({"n": rn, "x": rx,
                            "y_rule": {"period": rule[0], "holes": list(rule[1])}})
        return {"rows": out}

    @staticmethod
    def from_json(data) -> "RelationTable":
        rows = []
        for row in data["rows"]:
            rule = row["y_rule"]
            if rule in ("all", "none"):
                rows.append((int(row["n"]), int(row["x"]), rule))
            else:
                rows.append((int(row["n"]), int(row["x"]),
                             (int(rule["period"]), tuple(rule["holes"]))))
        return RelationTable(tuple(rows))

    @staticmethod
    def from_file(path) -> "RelationTable":
        with open(path) as fh:
            return RelationTable.from_json(json.load(fh))


def run_block_reduction(table: RelationTable, count: int, stages: int) -> ConstructionRun:
    if count < 1:
        raise ConstructionError("need at least one chain")
    chains = {n: ["m%d" % n] for n in range(count)}  # marker element first
    witness = {n: 0 for n in range(count)}  # current witness candidate x
    last_growth = {n: 0 for n in range(count)}
    events: list = []
    snapshots = []

    def order_now():
        out = []
        for n in range(count):
            out.extend(chains[n])
        return out

    snapshots.append(order_now())
    for s in range(1, stages + 1):
        for n in range(count):
            x = witness[n]
            if table.holds(n, x, s):
                continue  # witness survives the stage-s test
            witness[n] = x + 1
            eid = "g%d.%d" % (n, s)
            chains[n].append(eid)
            last_growth[n] = s
            _event(events, s, "grow", chain=n, element=eid, refuted_witness=x)
        snapshots.append(order_now())
    pairs = [("m%d" % n, "m%d" % (n + 1)) for n in range(count - 1)]
    meta = {
        "pairs": [list(p) for p in pairs],
        "witnesses": {str(n): witness[n] for n in range(count)},
        "last_growth": {str(n): last_growth[n] for n in range(count)},
        "s_membership": {str(n): table.in_s(n) for n in range(count)},
        "table": table.to_json(),
    }
    return ConstructionRun("block_reduction", stages, order_now(), events,
                           snapshots, meta=meta)


# --- diagnostics -----------------------------------------------------------------


@dataclass(frozen=True)
class ConvergenceReport:
    kind: str
    regions: tuple
    verdict: str  # "consistent-with-target" | "diverging" | "inconclusive"
    details: str

    def to_json(self):
        return {"kind": self.kind, "regions": [dict(r) for r in self.regions],
                "verdict": self.verdict, "details": self.details}


def _gap_stats(run: ConstructionRun):
    stats: dict = {}
    for e in run.events:
        if e["event"] != "insert":
            continue
        g = e["gap"]
        st = stats.setdefault(g, {"gap": g, "inserts": 0, "last": 0})
        st["inserts"] += 1
        st["last"] = max(st["last"], e["stage"])
    return stats


def diagnose(run: ConstructionRun, target: OrderTerm | None = None) -> ConvergenceReport:
    """Monotone log statistics only; never claims isomorphism with the target."""
    if run.kind.startswith("pi3") or run.kind.startswith("sigma3"):
        stats = _gap_stats(run)
        cutoff = run.stages - max(run.stages // 4, 1)
        growing = [g for g, st in stats.items()
                   if st["inserts"] >= 2 and st["last"] > cutoff]
        regions = tuple(sorted(stats.values(), key=lambda st: st["gap"]))
        if run.stages < 4:
            return ConvergenceReport(run.kind, regions, "inconclusive",
                                     "too few stages to extrapolate")
        want_growing = 0
        if target is not None and normalize(target) != normalize(OMEGA):
            want_growing = 1
        if len(growing) == want_growing:
            verdict = "consistent-with-target"
            details = "%d actively growing gap(s), matching the target shape" % len(growing)
        else:
            verdict = "diverging"
            details = "%d actively growing gap(s); target expects %d" % (
                len(growing), want_growing)
        return ConvergenceReport(run.kind, regions, verdict, details)
    if run.kind == "priority":
        actions = [e for e in run.events if e["event"] == "endpoints"]
        if not actions:
            return ConvergenceReport(run.kind, (), "inconclusive",
                                     "no worker ever acted")
        cutoff = run.stages - max(run.stages // 4, 1)
        per_worker: dict = {}
        for e in actions:
            w = per_worker.setdefault(e["worker"], {"worker": e["worker"],
                                                    "actions": 0, "last": 0})
            w["actions"] += 1
            w["last"] = max(w["last"], e["stage"])
        cofinal = [w for w, st in per_worker.items()
                   if st["actions"] >= 3 and st["last"] > cutoff]
        regions = tuple(sorted(per_worker.values(), key=lambda st: st["worker"]))
        stable = [w for w in cofinal
                  if run.workers and run.workers.get(w, {}).get("defined_at_end")]
        if len(cofinal) == 1 and stable == cofinal:
            return ConvergenceReport(run.kind, regions, "consistent-with-target",
                                     "unique cofinally acting worker %d with stable "
                                     "constants" % cofinal[0])
        return ConvergenceReport(run.kind, regions, "diverging",
                                 "cofinally acting workers: %r" % (sorted(cofinal),))
    if run.kind == "block_reduction":
        cutoff = run.stages // 2
        regions = []
        mismatches = []
        for n_str, last in sorted(run.meta["last_growth"].items(), key=lambda kv: int(kv[0])):
            frozen = last <= cutoff
            expected = run.meta["s_membership"][n_str]
            regions.append({"chain": int(n_str), "last_growth": last,
                            "frozen": frozen, "in_s": expected})
            if frozen != expected:
                mismatches.append(int(n_str))
        if not mismatches:
            return ConvergenceReport(run.kind, tuple(regions),
                                     "consistent-with-target",
                                     "frozen/growing pattern matches the table")
        return ConvergenceReport(run.kind, tuple(regions), "diverging",
                                 "chains %r disagree with the table" % mismatches)
    raise ConstructionError("unknown run kind %r" % run.kind)
