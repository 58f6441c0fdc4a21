"""Run the theorem registry over enumerated instances and collect witnesses."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from ..errors import InvalidInput
from ..group import FiniteGroup, catalog_group, cyclic, group_catalog, group_spec, is_subgroup
from ..ptg import FLAG_ORDER, PreTopGroup, is_discrete_subset
from ..setfam import PreTopology
from .enumerate import all_group_pretopologies, enumerate_group_pretopologies, is_orbit_representative
from .registry import DEFAULT_REGISTRY, EXPERIMENTAL, PROVEN, TheoremRecord, registry_by_id, sep

GENERAL_MAX = 4          # orders whose every pre-topology is paired with each group
WITNESS_LIMIT = 5        # witnesses kept per theorem in a report


@dataclass(frozen=True)
class Instance:
    group: str
    members: tuple[int, ...]
    kind: str            # "group" (pre-topological group) or "general"


@lru_cache(maxsize=None)
def _group(name: str) -> FiniteGroup:
    return catalog_group(name)


def materialize(inst: Instance) -> PreTopGroup:
    g = _group(inst.group)
    return PreTopGroup(g, PreTopology.trusted(g.universe, inst.members))


def instances(lo: int, hi: int, dedup: bool = False, general_max: int = GENERAL_MAX) -> list[Instance]:
    """Catalog groups of order lo..hi, each with its pre-topological groups and,
    for small orders, every other pre-topology as well; canonical order."""
    if lo < 1 or hi < lo:
        raise InvalidInput(f"bad order range {lo}..{hi}")
    out = []
    for g in group_catalog(lo, hi):
        ptgs = {p.topology.members for p in enumerate_group_pretopologies(g, dedup=dedup)}
        every = set(ptgs)
        if g.order <= general_max:
            for p in all_group_pretopologies(g):
                m = p.topology.members
                if m not in every and (not dedup or is_orbit_representative(g, m)):
                    every.add(m)
        for m in sorted(every):
            out.append(Instance(g.name, m, "group" if m in ptgs else "general"))
    return out


# witnesses

@dataclass
class Witness:
    subject: str                 # theorem id or question id
    group: dict
    family: dict                 # {"universe": [...], "sets": [[...]]}
    reports: dict = field(default_factory=dict)

    def instance(self) -> PreTopGroup:
        from ..io import family_from_data, group_from_data
        g = group_from_data(self.group)
        _, masks = family_from_data(self.family, g.universe)
        return PreTopGroup(g, PreTopology.of(g.universe, masks))

    def to_json(self) -> dict:
        return {"subject": self.subject, "group": self.group, "family": self.family, "reports": self.reports}

    @classmethod
    def from_json(cls, data: dict) -> "Witness":
        return cls(data["subject"], data["group"], data["family"], data.get("reports", {}))


def _flags(ptg: PreTopGroup) -> dict:
    return {k: ptg.report.flags[k] for k in FLAG_ORDER}


def make_witness(subject: str, ptg: PreTopGroup, detail) -> Witness:
    from ..io import family_json, render
    s = sep(ptg)
    reports = {
        "classification": _flags(ptg),
        "separation": {"t0": s.t0, "t1": s.t1, "t2": s.t2, "regular": s.regular,
                       "completely_regular": s.completely_regular},
        "detail": render(detail, ptg.group.universe),
    }
    return Witness(subject, group_spec(ptg.group), family_json(ptg.topology), reports)


def evaluate(theorem: TheoremRecord, ptg: PreTopGroup):
    """'skip', 'pass', or the failure detail."""
    if not theorem.hypothesis(ptg):
        return "skip"
    try:
        ok, detail = theorem.conclusion(ptg)
    except Exception as exc:  # a total predicate should never raise; report it as a failure
        ok, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
    return "pass" if ok else {"detail": detail}


def replay(w: Witness, registry=DEFAULT_REGISTRY) -> bool:
    """Re-run the check named by the witness; True when the recorded verdict reproduces."""
    from .search import QUESTIONS
    ptg = w.instance()
    if w.subject in QUESTIONS:
        return QUESTIONS[w.subject].predicate(ptg) is not None
    th = registry_by_id(registry).get(w.subject)
    if th is None:
        raise InvalidInput(f"unknown witness subject {w.subject!r}")
    return isinstance(evaluate(th, ptg), dict)


# running

def _run_chunk(args):
    chunk, ids = args
    reg = registry_by_id()
    theorems = [reg[i] for i in ids]
    out = []
    for inst in chunk:
        ptg = materialize(inst)
        row = []
        for th in theorems:
            r = evaluate(th, ptg)
            if isinstance(r, dict):
                r = make_witness(th.id, ptg, r["detail"]).to_json()
            row.append(r)
        out.append(row)
    return out


def _chunks(items: Sequence, size: int) -> list:
    return [list(items[i:i + size]) for i in range(0, len(items), size)]


def run_rows(insts: Sequence[Instance], registry: Sequence[TheoremRecord], jobs: int = 1) -> list:
    ids = [t.id for t in registry]
    default_ids = {t.id for t in DEFAULT_REGISTRY}
    if jobs <= 1 or any(i not in default_ids for i in ids):
        reg = {t.id: t for t in registry}
        rows = []
        for inst in insts:
            ptg = materialize(inst)
            row = []
            for i in ids:
                r = evaluate(reg[i], ptg)
                if isinstance(r, dict):
                    r = make_witness(i, ptg, r["detail"]).to_json()
                row.append(r)
            rows.append(row)
        return rows
    size = max(1, len(insts) // (jobs * 8) or 1)
    parts = _chunks(insts, size)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_run_chunk, [(p, ids) for p in parts]))
    return [row for part in results for row in part]


def prose_findings() -> list[dict]:
    """Claims about the worked examples that the library checks directly."""
    from ..fixtures import p6
    z6 = cyclic(6)
    bad = z6.universe.mask(["0", "1", "5"])
    p = p6()
    discrete_nonclosed = [
        z6.universe.labels_of(h) for h in p.subgroups
        if is_discrete_subset(p, h) and not p.topology.is_closed(h)
    ]
    return [{
        "kind": "erratum-candidate",
        "claim": "{0,1,5} is a discrete non-closed subgroup of Z6 with the mod-6 pre-topology",
        "check": "is_subgroup",
        "result": is_subgroup(z6, bad),
        "reason": "1+1=2 is not in {0,1,5}",
        "discrete_nonclosed_subgroups_of_P6": discrete_nonclosed,
    }]


def run_theorem_suite(insts: Sequence[Instance], registry: Sequence[TheoremRecord] = DEFAULT_REGISTRY,
                      jobs: int = 1, certificate: dict | None = None) -> dict:
    rows = run_rows(insts, registry, jobs)
    theorems = []
    proven_bad = findings_bad = 0
    for j, th in enumerate(registry):
        passed = skipped = 0
        viol = []
        for row in rows:
            r = row[j]
            if r == "pass":
                passed += 1
            elif r == "skip":
                skipped += 1
            else:
                viol.append(r)
        if viol:
            if th.status == PROVEN:
                proven_bad += 1
            else:
                findings_bad += 1
        verdict = "OK"
        if viol:
            verdict = "IMPLEMENTATION-OR-ERRATUM" if th.status == PROVEN else "FINDING"
        theorems.append({
            "id": th.id, "status": th.status, "statement": th.statement, "assumes": th.assumes,
            "pass": passed, "skip": skipped, "violation_count": len(viol),
            "violations": viol[:WITNESS_LIMIT], "verdict": verdict,
        })
    cert = dict(certificate or {})
    cert["instances"] = len(insts)
    cert["pretopological_groups"] = sum(1 for i in insts if i.kind == "group")
    return {
        "theorems": theorems,
        "findings": prose_findings(),
        "certificate": cert,
        "summary": {"proven_violations": proven_bad, "experimental_findings": findings_bad,
                    "theorems": len(registry)},
    }


def suite(lo: int = 1, hi: int = 6, jobs: int = 1, dedup: bool = False, general_max: int = GENERAL_MAX,
          registry: Sequence[TheoremRecord] = DEFAULT_REGISTRY) -> dict:
    insts = instances(lo, hi, dedup=dedup, general_max=general_max)
    groups = []
    for g in group_catalog(lo, hi):
        mine = [i for i in insts if i.group == g.name]
        groups.append({"name": g.name, "order": g.order, "instances": len(mine),
                       "pretopological_groups": sum(1 for i in mine if i.kind == "group")})
    cert = {"orders": [lo, hi], "dedup": dedup, "general_max": general_max, "groups": groups}
    return run_theorem_suite(insts, registry, jobs, cert)
