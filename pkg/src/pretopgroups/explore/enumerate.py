"""Exhaustive enumeration of pre-topologies and of group pre-topologies."""
from __future__ import annotations

from typing import Callable, Iterator, Sequence

from .. import caps
from ..errors import InvalidInput
from ..group import FiniteGroup, automorphisms, enumerate_subgroups
from ..ptg import FLAG_ORDER, NbhdSystem, PreTopGroup, nbhd_axioms_report, topology_from_system
from ..setfam import PreTopology, Universe, canonical


def _union_closed_bodies(n: int) -> Iterator[list[int]]:
    """Nontrivial members of every union-closed family on n points that contains X.

    Subsets are decided in increasing integer order.  Every union s|t is larger
    than both s and t, so a subset already forced by two chosen members is
    decided when reached and the walk never backtracks over a dead end.
    """
    full = (1 << n) - 1
    forced = [0] * (full + 1)
    chosen: list[int] = []

    def go(s: int):
        if s == full:
            yield list(chosen)
            return
        if not forced[s]:
            yield from go(s + 1)
        marks = [s | t for t in chosen]
        for m in marks:
            forced[m] += 1
        chosen.append(s)
        yield from go(s + 1)
        chosen.pop()
        for m in marks:
            forced[m] -= 1

    if n == 0:
        yield []
        return
    yield from go(1)


def enumerate_pretopologies(n: int, universe: Universe | None = None) -> Iterator[PreTopology]:
    """Every pre-topology on n points, in a fixed order (the indiscrete one first)."""
    caps.require("enumerate_n", n, "pre-topology enumeration")
    uni = universe or Universe.range(n)
    if uni.size != n:
        raise InvalidInput("universe size does not match n")
    full = uni.full
    for body in _union_closed_bodies(n):
        yield PreTopology.trusted(uni, canonical([0, full, *body]))


def count_pretopologies(n: int) -> int:
    caps.require("enumerate_n", n, "pre-topology enumeration")
    return sum(1 for _ in _union_closed_bodies(n))


# filters over classification flags

def parse_filter(text) -> Callable[[PreTopGroup], bool] | None:
    """``None``, a callable, or text such as ``pretopological&!topological``."""
    if text is None or callable(text):
        return text
    terms = []
    for raw in str(text).split("&"):
        t = raw.strip()
        neg = t.startswith("!")
        name = t[1:].strip() if neg else t
        if name not in FLAG_ORDER:
            raise InvalidInput(f"unknown classification flag {name!r}")
        terms.append((name, neg))
    if not terms:
        return None

    def pred(ptg: PreTopGroup) -> bool:
        flags = ptg.report.flags
        return all(flags[name] != neg for name, neg in terms)

    pred.text = str(text)
    return pred


# neighbourhood systems at e

def _antichains(cands: Sequence[int], start: int = 0) -> Iterator[list[int]]:
    """Nonempty antichains (under inclusion) of ``cands``, depth first in index order."""
    chosen: list[int] = []

    def go(i: int):
        for j in range(i, len(cands)):
            c = cands[j]
            if all(c & d not in (c, d) for d in chosen):
                chosen.append(c)
                yield list(chosen)
                yield from go(j + 1)
                chosen.pop()

    yield from go(start)


def shards(g: FiniteGroup, mode: str = "subgroups") -> int:
    """Number of first-level shards: one per possible first member of the system."""
    return len(_candidates(g, mode))


def _candidates(g: FiniteGroup, mode: str) -> list[int]:
    if mode == "subgroups":
        return list(enumerate_subgroups(g))
    if mode == "exhaustive":
        caps.require("exhaustive_nbhd", g.order, "antichain scan over all identity neighbourhoods")
        bit = 1 << g.identity
        return list(canonical(s for s in range(g.full + 1) if s & bit))
    raise InvalidInput(f"unknown enumeration mode {mode!r}")


def neighbourhood_systems(g: FiniteGroup, mode: str = "subgroups", shard: int | None = None) -> Iterator[tuple[int, ...]]:
    """Candidate systems passing all four neighbourhood axioms.

    In ``subgroups`` mode the candidates are subgroups only: a member U of a
    minimal system with some V, W in it and VW ⊆ U satisfies U ⊆ U·U ⊆ U, so it
    is a subgroup.  ``exhaustive`` scans every antichain of identity
    neighbourhoods and is used to cross-check that shortcut.
    """
    cands = _candidates(g, mode)
    idx = range(len(cands)) if shard is None else [shard]
    for i in idx:
        first = cands[i]
        for rest in _antichains(cands, i + 1):
            if any(first & d in (first, d) for d in rest):
                continue
            system = NbhdSystem(g, tuple([first, *rest]))
            if nbhd_axioms_report(system).all:
                yield system.members
        system = NbhdSystem(g, (first,))
        if nbhd_axioms_report(system).all:
            yield system.members


def _image_tables(g: FiniteGroup) -> list[list[int]]:
    key = ("aut_masks",)
    if key not in g._cache:
        tables = []
        for phi in automorphisms(g):
            t = [0] * (g.full + 1)
            for m in range(1, g.full + 1):
                low = m & -m
                t[m] = t[m ^ low] | 1 << phi[low.bit_length() - 1]
            tables.append(t)
        g._cache[key] = tables
    return g._cache[key]


def canonical_form(g: FiniteGroup, members: Sequence[int]) -> tuple[int, ...]:
    """Least image of a family under the automorphism group, as a sorted int tuple."""
    best = tuple(sorted(members))
    for t in _image_tables(g):
        cand = tuple(sorted([t[u] for u in members]))
        if cand < best:
            best = cand
    return best


def is_orbit_representative(g: FiniteGroup, members: Sequence[int]) -> bool:
    return canonical_form(g, members) == tuple(sorted(members))


def enumerate_group_pretopologies(g: FiniteGroup, filter=None, dedup: bool = False,
                                  mode: str = "subgroups", shard: int | None = None) -> list[PreTopGroup]:
    """Pre-topological groups on g, sorted by their open-set tuple."""
    pred = parse_filter(filter)
    caps.require("group_filtered" if pred else "group_full", g.order, "group pre-topology enumeration")
    seen: dict[tuple, PreTopGroup] = {}
    for members in neighbourhood_systems(g, mode, shard):
        top = topology_from_system(g, members)
        key = top.members
        if key in seen:
            continue
        seen[key] = PreTopGroup(g, top)
    out = []
    for key in sorted(seen):
        if dedup and not is_orbit_representative(g, key):
            continue
        ptg = seen[key]
        if pred is None or pred(ptg):
            out.append(ptg)
    return out


def all_group_pretopologies(g: FiniteGroup) -> Iterator[PreTopGroup]:
    """Every pre-topology on the underlying set, paired with g (not filtered)."""
    for top in enumerate_pretopologies(g.order, g.universe):
        yield PreTopGroup(g, top)
