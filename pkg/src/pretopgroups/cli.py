"""Command-line interface: ``pretop <command> [options]``.

Exit status is 0 on success, 1 when a check fails or a proven theorem is
violated (a witness is printed), and 2 for invalid input.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import caps
from .errors import CapExceeded, InvalidInput, PretopError
from .explore.enumerate import count_pretopologies, enumerate_group_pretopologies, parse_filter
from .explore.search import QUESTIONS, SearchTask, search_counterexample
from .explore.suite import Witness, suite
from .fixtures import fixture, group_from_name
from .group import FiniteGroup, group_catalog, is_normal, is_subgroup
from .io import dumps, family_json, load_family, load_group, render, validate
from .prenorm import (
    ONE, build_chain, construct_prenorm, dyadic_prenorm, is_precontinuous_prenorm, prenorm_axioms_witness,
    pseudometrics_from, sandwich_witness, ball,
)
from .ptg import FLAG_ORDER, PreTopGroup
from .quotient import coset_space, quotient_group_pretop_unchecked
from .separation import function_from_levels, is_completely_regular, level_values, separation_report
from .setfam import PreTopology, cardinal_report, is_pretopology, minimal_prebase, SetFamily, Universe

COMMANDS = ("check", "classify", "separation", "closure", "quotient", "prenorm", "enumerate", "search", "suite")


class Failed(Exception):
    """A check ran and failed; carries the report to print before exiting 1."""

    def __init__(self, report):
        self.report = report


def parse_orders(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise InvalidInput(f"bad --orders value {text!r}; expected LO..HI") from None
    if a < 1 or b < a:
        raise InvalidInput(f"bad --orders range {text!r}")
    return a, b


def _group_arg(value: str) -> FiniteGroup:
    if Path(value).exists():
        return load_group(value)
    try:
        return group_from_name(value)
    except InvalidInput:
        raise InvalidInput(f"no group file or builtin group named {value!r}") from None


def load_instance(args) -> PreTopGroup:
    if args.fixture:
        return fixture(args.fixture)
    if not args.group:
        raise InvalidInput("give --fixture NAME or --group FILE with --family FILE")
    g = _group_arg(args.group)
    if not args.family:
        raise InvalidInput("--group needs a --family FILE")
    _, masks = load_family(args.family, g.universe)
    return PreTopGroup(g, PreTopology.of(g.universe, masks))


def load_space(args) -> tuple[PreTopology, PreTopGroup | None]:
    if args.fixture or args.group:
        p = load_instance(args)
        return p.topology, p
    if not args.family:
        raise InvalidInput("give --fixture, --group with --family, or --family")
    uni, masks = load_family(args.family)
    return PreTopology.of(uni, masks), None


def _labels(arg: str | None, uni: Universe, what: str) -> int:
    if arg is None:
        raise InvalidInput(f"this command needs --{what}")
    parts = [p.strip() for p in arg.split(",") if p.strip()]
    return uni.mask(parts)


# commands

def cmd_check(args) -> dict:
    out = {"command": "check", "group": None, "pretopological_group": None}
    if args.fixture or args.group:
        if args.fixture:
            p = fixture(args.fixture)
            g, uni, masks = p.group, p.group.universe, list(p.topology.members)
        else:
            g = _group_arg(args.group)
            if not args.family:
                out["group"] = _group_summary(g)
                out["pretopology"] = None
                out["ok"] = True
                return out
            uni = g.universe
            _, masks = load_family(args.family, uni)
        out["group"] = _group_summary(g)
    else:
        if not args.family:
            raise InvalidInput("give --fixture, --group or --family")
        g = None
        uni, masks = load_family(args.family)
    fam = SetFamily.of(uni, masks)
    ok, witness = is_pretopology(fam)
    pre = {"valid": ok, "witness": render(witness, uni) if witness else None, "size": len(fam)}
    if ok:
        top = PreTopology.trusted(uni, fam.members)
        pre["minimal_prebase"] = minimal_prebase(top).labelled()
        if g is not None:
            out["pretopological_group"] = PreTopGroup(g, top).report.pretopological
    out["pretopology"] = pre
    out["ok"] = ok
    if not ok:
        raise Failed(out)
    return out


def _group_summary(g: FiniteGroup) -> dict:
    return {"name": g.name, "order": g.order, "elements": list(g.labels), "abelian": g.is_abelian,
            "identity": g.labels[g.identity]}


def cmd_classify(args) -> dict:
    p = load_instance(args)
    rep = p.report
    return {
        "command": "classify",
        "group": p.group.name,
        "order": p.group.order,
        "opens": len(p.topology),
        "flags": {k: rep.flags[k] for k in FLAG_ORDER},
        "witnesses": render(rep.witnesses, p.group.universe),
    }


def cmd_separation(args) -> dict:
    top, _ = load_space(args)
    uni = top.universe
    s = separation_report(top)
    out = {
        "command": "separation",
        "t0": s.t0, "t1": s.t1, "t2": s.t2, "regular": s.regular, "completely_regular": s.completely_regular,
        "witnesses": render(s.witnesses, uni),
        "separating_function": _sep_function(top, s.separating_function),
        "query": None,
    }
    if args.subset is not None:
        c = _labels(args.subset, uni, "subset")
        if args.point is None:
            raise InvalidInput("--subset in separation needs --point")
        z = uni.index(args.point)
        ok, levels = is_completely_regular(top, z, c)
        out["query"] = {"z": uni.labels[z], "C": uni.labels_of(c), "separable": ok,
                        "function": _levels_json(top, levels) if ok else None}
    return out


def _levels_json(top: PreTopology, levels) -> dict:
    uni = top.universe
    vals = function_from_levels(uni.size, levels)
    return {"levels": [uni.labels_of(b) for b in levels],
            "values": {uni.labels[x]: str(v) for x, v in enumerate(vals)}}


def _sep_function(top, sf):
    if sf is None:
        return None
    uni = top.universe
    return {"z": uni.labels[sf["z"]], "C": uni.labels_of(sf["C"]), **_levels_json(top, sf["levels"])}


def cmd_closure(args) -> dict:
    top, _ = load_space(args)
    uni = top.universe
    s = _labels(args.subset, uni, "subset")
    return {
        "command": "closure",
        "set": uni.labels_of(s),
        "closure": uni.labels_of(top.closure(s)),
        "interior": uni.labels_of(top.interior(s)),
        "closed": top.is_closed(s),
        "open": s in top.member_set,
    }


def cmd_quotient(args) -> dict:
    p = load_instance(args)
    g = p.group
    h = _labels(args.subgroup, g.universe, "subgroup")
    q = coset_space(p, h)
    s = separation_report(q.topology)
    out = {
        "command": "quotient",
        "subgroup": g.universe.labels_of(h),
        "side": q.side,
        "cosets": [g.universe.labels_of(c) for c in q.cosets],
        "labels": list(q.universe.labels),
        "topology": q.topology.labelled(),
        "flags": {"pi_open": q.pi_open, "local_prebase": q.local_prebase_ok, "t1": q.t1,
                  "regular": s.regular, "discrete": q.is_discrete, "subgroup_closed": p.topology.is_closed(h),
                  "subgroup_open": p.is_open(h), "normal": is_normal(g, h)},
        "quotient_group": None,
    }
    if is_normal(g, h):
        qp = quotient_group_pretop_unchecked(p, h)
        out["quotient_group"] = {"flags": {k: qp.report.flags[k] for k in FLAG_ORDER}}
    return out


def _values(n, uni) -> dict:
    return {uni.labels[x]: str(v) for x, v in enumerate(n.values)}


def _prenorm_entry(p: PreTopGroup, u: int, detailed: bool) -> tuple[dict, bool]:
    uni = p.group.universe
    chain = build_chain(p, u)
    n = construct_prenorm(chain)
    sw = sandwich_witness(chain, n)
    ax = prenorm_axioms_witness(n)
    m = dyadic_prenorm(chain)
    entry = {
        "U": uni.labels_of(u),
        "chain": [uni.labels_of(s) for s in chain.sets],
        "values": _values(n, uni),
        "axioms_witness": render(ax, uni),
        "sandwich_witness": render(sw, uni),
        "precontinuous": is_precontinuous_prenorm(p, n),
        "markov": {
            "values": _values(m, uni),
            "unit_ball": uni.labels_of(ball(m, ONE)),
            "sandwich_witness": render(sandwich_witness(chain, m), uni),
            "precontinuous": is_precontinuous_prenorm(p, m),
        },
    }
    if detailed:
        rho, sigma = pseudometrics_from(n)
        entry["pseudometric"] = {
            "right": [[str(v) for v in row] for row in rho.values],
            "left": [[str(v) for v in row] for row in sigma.values],
            "right_invariant": rho.right_invariant, "left_invariant": sigma.left_invariant,
        }
    return entry, sw is None and ax is None


def cmd_prenorm(args) -> dict:
    p = load_instance(args)
    uni = p.group.universe
    if args.subset is not None:
        targets = [_labels(args.subset, uni, "subset")]
    else:
        targets = list(p.opens_at_e)
    entries, ok = [], True
    for u in targets:
        e, good = _prenorm_entry(p, u, args.subset is not None)
        entries.append(e)
        ok = ok and good
    out = {"command": "prenorm", "group": p.group.name, "chains": entries, "ok": ok}
    if not ok:
        raise Failed(out)
    return out


def cmd_enumerate(args) -> dict:
    lo, hi = parse_orders(args.orders or "1..4")
    pred = parse_filter(args.filter)
    n_cap = caps.cap("enumerate_n")
    pretops = [{"n": n, "count": count_pretopologies(n)} for n in range(lo, min(hi, n_cap) + 1)]
    groups = []
    for g in group_catalog(lo, hi):
        full = enumerate_group_pretopologies(g, filter=pred)
        up_to = enumerate_group_pretopologies(g, filter=pred, dedup=True)
        entry = {"name": g.name, "order": g.order, "count": len(full), "up_to_automorphism": len(up_to)}
        if args.list:
            entry["families"] = [family_json(p.topology)["sets"] for p in (up_to if args.dedup else full)]
        groups.append(entry)
    return {"command": "enumerate", "orders": [lo, hi], "filter": args.filter, "pretopologies": pretops,
            "groups": groups}


def cmd_search(args) -> dict:
    if not args.question:
        raise InvalidInput(f"search needs --question (one of {', '.join(sorted(QUESTIONS))})")
    lo, hi = parse_orders(args.orders or "1..6")
    task = SearchTask(args.question, lo, hi, args.filter, dedup=args.dedup, shards=args.jobs)
    r = search_counterexample(task)
    out = {"command": "search", "question": args.question, "text": QUESTIONS[args.question].text}
    if isinstance(r, Witness):
        out.update(result="witness", witness=r.to_json(), certificate=None)
    else:
        out.update(result="exhausted", witness=None, certificate=r.to_json())
    return out


def cmd_suite(args) -> dict:
    lo, hi = parse_orders(args.orders or "1..6")
    rep = suite(lo, hi, jobs=args.jobs, dedup=args.dedup)
    rep["command"] = "suite"
    if rep["summary"]["proven_violations"]:
        raise Failed(rep)
    return rep


HANDLERS = {
    "check": cmd_check, "classify": cmd_classify, "separation": cmd_separation, "closure": cmd_closure,
    "quotient": cmd_quotient, "prenorm": cmd_prenorm, "enumerate": cmd_enumerate, "search": cmd_search,
    "suite": cmd_suite,
}


# text output

def _yes(b) -> str:
    return "yes" if b else "no"


def to_text(rep: dict) -> str:
    cmd = rep.get("command")
    lines = []
    if cmd == "classify":
        lines.append(f"{rep['group']} (order {rep['order']}, {rep['opens']} open sets)")
        for k, v in rep["flags"].items():
            lines.append(f"  {k:<22} {_yes(v)}")
            w = rep["witnesses"].get(k)
            if w is not None and not v:
                if "records" in w:
                    lines.append(f"      {w['count']} failure(s), first: {w['records'][0]}")
                else:
                    lines.append(f"      because: {', '.join(w['because'])}")
        if "intersection_closed" in rep["witnesses"]:
            w = rep["witnesses"]["intersection_closed"]
            lines.append(f"  intersection witness: {w['records'][0]}")
    elif cmd == "separation":
        for k in ("t0", "t1", "t2", "regular", "completely_regular"):
            lines.append(f"  {k:<20} {_yes(rep[k])}")
            if k in rep["witnesses"]:
                lines.append(f"      witness: {rep['witnesses'][k]}")
        if rep["query"]:
            lines.append(f"  separate {rep['query']['z']} from {rep['query']['C']}: {_yes(rep['query']['separable'])}")
            if rep["query"]["function"]:
                lines.append(f"      levels: {rep['query']['function']['levels']}")
    elif cmd == "prenorm":
        for e in rep["chains"]:
            lines.append(f"U = {e['U']}  chain {e['chain']}")
            lines.append("  " + "  ".join(f"{k}:{v}" for k, v in e["values"].items()))
            lines.append(f"  sandwich {'ok' if e['sandwich_witness'] is None else e['sandwich_witness']}"
                         f"; pre-continuous {_yes(e['precontinuous'])}")
            lines.append("  markov " + "  ".join(f"{k}:{v}" for k, v in e["markov"]["values"].items())
                         + f"  unit ball {e['markov']['unit_ball']}")
    elif cmd == "suite":
        lines.append(f"{'theorem':<32} {'status':<13} {'pass':>6} {'skip':>6} {'viol':>5}  verdict")
        for t in rep["theorems"]:
            lines.append(f"{t['id']:<32} {t['status']:<13} {t['pass']:>6} {t['skip']:>6} "
                         f"{t['violation_count']:>5}  {t['verdict']}")
        for f in rep["findings"]:
            lines.append(f"finding ({f['kind']}): {f['claim']} -> {f['check']} = {f['result']}")
        c = rep["certificate"]
        lines.append(f"{c['instances']} instances, orders {c['orders'][0]}..{c['orders'][1]}")
    elif cmd == "search":
        lines.append(f"{rep['question']}: {rep['text']}")
        if rep["result"] == "witness":
            w = rep["witness"]
            lines.append(f"  witness on {w['group']['name']}: {w['family']['sets']}")
            lines.append(f"  detail: {w['reports']['detail']}")
        else:
            c = rep["certificate"]
            lines.append(f"  exhausted: {c['instances']} instances, orders {c['orders'][0]}..{c['orders'][1]}")
            if c["note"]:
                lines.append(f"  note: {c['note']}")
    elif cmd == "enumerate":
        for e in rep["pretopologies"]:
            lines.append(f"  pre-topologies on {e['n']} points: {e['count']}")
        for e in rep["groups"]:
            lines.append(f"  {e['name']:<10} {e['count']:>5} pre-topological groups, {e['up_to_automorphism']} up to automorphism")
    elif cmd == "check":
        if rep["group"]:
            lines.append(f"group {rep['group']['name']} of order {rep['group']['order']}: valid")
        pre = rep["pretopology"]
        if pre is not None:
            lines.append(f"pre-topology ({pre['size']} sets): {'valid' if pre['valid'] else 'invalid'}")
            if pre["witness"]:
                lines.append(f"  witness: {pre['witness']}")
        if rep["pretopological_group"] is not None:
            lines.append(f"pre-topological group: {_yes(rep['pretopological_group'])}")
    else:
        for k, v in rep.items():
            if k != "command":
                lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pretop", description="Finite pre-topological groups.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--fixture", help="builtin instance: P6, P4, discrete:<group>, indiscrete:<group>")
    ap.add_argument("--group", help="group file, or a builtin name such as cyclic:4 or D4")
    ap.add_argument("--family", help="family file with universe and sets")
    ap.add_argument("--subgroup", help="comma-separated element labels")
    ap.add_argument("--subset", help="comma-separated element labels")
    ap.add_argument("--point", help="element label (separation query)")
    ap.add_argument("--orders", help="order range LO..HI")
    ap.add_argument("--question", help="question id for search")
    ap.add_argument("--filter", help="classification filter such as pretopological&!topological")
    ap.add_argument("--jobs", type=int, default=1)
    dd = ap.add_mutually_exclusive_group()
    dd.add_argument("--dedup", dest="dedup", action="store_true", default=None,
                    help="identify automorphic pre-topologies")
    dd.add_argument("--no-dedup", dest="dedup", action="store_false")
    ap.add_argument("--list", action="store_true", help="enumerate: list the families")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--out", help="write the report here instead of stdout")
    return ap


_DEDUP_DEFAULT = {"search": True, "suite": False, "enumerate": False}


def run(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.dedup is None:
        args.dedup = _DEDUP_DEFAULT.get(args.command, False)
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return 2
    code = 0
    try:
        rep = HANDLERS[args.command](args)
    except Failed as f:
        rep, code = f.report, 1
    except PretopError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = dumps(rep) if args.format == "json" else to_text(rep)
    if args.format == "json":
        validate(rep, f"report_{args.command}")
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
