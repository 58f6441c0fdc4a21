"""Counterexample search for open questions about pre-topological groups."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from ..errors import InvalidInput, UnknownQuestion
from ..group import group_catalog
from ..ptg import PreTopGroup, covering_index, is_discrete_subset, vxv_condition
from ..quotient import dense_restriction_open
from ..setfam import cardinal_report, subspace
from .enumerate import all_group_pretopologies, enumerate_group_pretopologies, is_orbit_representative, parse_filter
from .registry import closed_subgroups, sep
from .suite import GENERAL_MAX, Instance, Witness, make_witness, materialize


@dataclass(frozen=True)
class Question:
    id: str
    text: str
    predicate: Callable[[PreTopGroup], object]   # detail when the instance answers "no", else None
    stream: str = "pretop"                         # "pretop" or "general"
    note: str = ""


def _sym_str(p):
    f = p.report.flags
    if f["symmetrically"] and not f["strongly"]:
        return {"symmetrically": True, "strongly": False}
    return None


def _vxv(p):
    if not p.report.strongly:
        return None
    ok, w = vxv_condition(p)
    return None if ok else w


def _para_t2(p):
    f = p.report.flags
    if f["para"] and not f["pretopological"] and sep(p).t2:
        return {"para": True, "t2": True, "pretopological": False}
    return None


def _ib_c(p):
    if not p.report.pretopological:
        return None
    ib = covering_index(p)
    c = cardinal_report(p.topology).cellularity
    return {"covering_index": ib, "cellularity": c} if ib > c else None


def _discrete_closed(p):
    if not p.report.pretopological:
        return None
    for h in p.subgroups:
        if h != 1 << p.e and is_discrete_subset(p, h) and not p.topology.is_closed(h):
            return {"H": h, "closure": p.closure(h)}
    return None


def _dense_k(p):
    if not p.report.almost:
        return None
    full = p.group.full
    for h in closed_subgroups(p):
        hsub = subspace(p.topology, h)
        for k in p.subgroups:
            if p.closure(k) != full or not dense_restriction_open(p, h, k):
                continue
            if p.closure(k & h) & h != h:
                return {"H": h, "K": k, "K_meet_H": k & h}
    return None


def _t0_creg(p):
    if p.report.pretopological and sep(p).t0 and not sep(p).completely_regular:
        return {"t0": True, "completely_regular": False}
    return None


QUESTIONS: dict[str, Question] = {q.id: q for q in (
    Question("Q-SYM-STR", "is every symmetrically pre-topological group strongly pre-topological?", _sym_str,
             note="on finite groups every pre-topological group is strongly pre-topological, "
                  "so no finite counterexample exists; the search is a consistency check"),
    Question("Q-VXV", "in a strongly pre-topological group, does each open U at x contain VxV for an open V at e?",
             _vxv, note="open question; either outcome is reported, none is asserted"),
    Question("Q-PARA-T2-COMPACT", "is every compact Hausdorff para-pre-topological group pre-topological?", _para_t2,
             stream="general",
             note="finite spaces are compact; finite para groups are almost topological, so none is expected"),
    Question("Q-IB-C", "is the covering index at most the cellularity? (finite analogue, suggestive only)", _ib_c),
    Question("Q-DISCRETE-CLOSED", "must a nontrivial discrete subgroup be closed?", _discrete_closed,
             note="a witness shows that discreteness alone does not force closedness"),
    Question("Q-DENSE-K", "if π restricted to a dense K is open, is K∩H dense in H?", _dense_k),
    Question("Q-T0-CREG", "is every T0 pre-topological group completely regular?", _t0_creg),
)}


@dataclass(frozen=True)
class SearchTask:
    question: str
    lo: int = 1
    hi: int = 6
    filter: str | None = None
    dedup: bool = True
    shards: int = 1

    def __post_init__(self):
        if self.lo < 1 or self.hi < self.lo:
            raise InvalidInput(f"bad order bounds {self.lo}..{self.hi}")
        if self.shards < 1:
            raise InvalidInput("shard count must be positive")
        if self.question not in QUESTIONS:
            raise UnknownQuestion(f"unknown question {self.question!r}", {"known": sorted(QUESTIONS)})


@dataclass
class Exhausted:
    question: str
    orders: tuple[int, int]
    groups: list = field(default_factory=list)
    instances: int = 0
    dedup: bool = True
    note: str = ""

    def to_json(self) -> dict:
        return {"question": self.question, "orders": list(self.orders), "groups": self.groups,
                "instances": self.instances, "dedup": self.dedup, "note": self.note}


def search_instances(task: SearchTask) -> tuple[list[Instance], list[dict]]:
    q = QUESTIONS[task.question]
    pred = parse_filter(task.filter)
    insts, groups = [], []
    for g in group_catalog(task.lo, task.hi):
        general = q.stream == "general" and g.order <= GENERAL_MAX
        if general:
            tops = [p for p in all_group_pretopologies(g)
                    if not task.dedup or is_orbit_representative(g, p.topology.members)]
        else:
            tops = enumerate_group_pretopologies(g, dedup=task.dedup)
        members = sorted(p.topology.members for p in tops if pred is None or pred(p))
        groups.append({"name": g.name, "order": g.order, "instances": len(members),
                       "stream": "all pre-topologies" if general else "pre-topological groups"})
        insts.extend(Instance(g.name, m, "general" if general else "group") for m in members)
    return insts, groups


def _scan(args):
    qid, chunk, offset = args
    pred = QUESTIONS[qid].predicate
    for i, inst in enumerate(chunk):
        d = pred(materialize(inst))
        if d is not None:
            return offset + i, d
    return None


def search_counterexample(task: SearchTask) -> Witness | Exhausted:
    """First instance (in canonical order) answering the question negatively, or a certificate."""
    q = QUESTIONS[task.question]
    insts, groups = search_instances(task)
    if task.shards <= 1:
        hit = _scan((task.question, insts, 0))
    else:
        size = max(1, -(-len(insts) // task.shards))
        parts = [(task.question, insts[i:i + size], i) for i in range(0, len(insts), size)]
        with ProcessPoolExecutor(max_workers=task.shards) as pool:
            hits = [h for h in pool.map(_scan, parts) if h is not None]
        hit = min(hits, key=lambda h: h[0]) if hits else None
    if hit is not None:
        idx, detail = hit
        w = make_witness(task.question, materialize(insts[idx]), detail)
        w.reports["question"] = q.text
        return w
    return Exhausted(task.question, (task.lo, task.hi), groups, len(insts), task.dedup, q.note)
