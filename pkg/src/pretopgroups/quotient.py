"""Coset spaces with the quotient pre-topology and the isomorphism theorems."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from . import caps
from .errors import (
    CosetCapExceeded, NotClosedSubgroup, NotNormal, NotOpenMap, NotPreContinuous,
    NotPreTopGroup, NotSubgroup, NotSurjective,
)
from .group import GroupHom, coset_labels, cosets, is_normal, is_subgroup, isomorphisms, kernel, quotient_group, validate_group
from .ptg import PreTopGroup
from .separation import separation_report, t1_witness
from .setfam import PreTopology, Universe, compress, elements, subspace


@dataclass(frozen=True, eq=False)
class QuotientSpace:
    base: PreTopGroup
    subgroup: int
    side: str
    cosets: tuple[int, ...]
    topology: PreTopology
    projection: tuple[int, ...]

    @property
    def universe(self) -> Universe:
        return self.topology.universe

    def image(self, s: int) -> int:
        r = 0
        for x in elements(s):
            r |= 1 << self.projection[x]
        return r

    def preimage(self, w: int) -> int:
        r = 0
        for i in elements(w):
            r |= self.cosets[i]
        return r

    @cached_property
    def pi_open(self) -> bool:
        return all(self.image(u) in self.topology.member_set for u in self.base.topology.members)

    @cached_property
    def local_prebase_ok(self) -> bool:
        """{π(xU) : U open at e} is a local pre-base at each coset xH."""
        g = self.base.group
        top = self.topology
        for i, c in enumerate(self.cosets):
            x = elements(c)[0]
            cand = [self.image(g.lmul(x, u)) for u in self.base.opens_at_e]
            if not all(s in top.member_set for s in cand):
                return False
            for w in top.members:
                if w >> i & 1 and not any(s & ~w == 0 for s in cand):
                    return False
        return True

    @cached_property
    def is_discrete(self) -> bool:
        return len(self.topology) == 1 << len(self.cosets)

    @cached_property
    def t1(self) -> bool:
        return t1_witness(self.topology) is None


def coset_space(ptg: PreTopGroup, h: int, side: str = "left") -> QuotientSpace:
    g = ptg.group
    if not is_subgroup(g, h):
        raise NotSubgroup(f"{g.universe.fmt(h)} is not a subgroup", {"H": h})
    m = g.order // h.bit_count()
    limit = caps.cap("cosets")
    if m > limit:
        raise CosetCapExceeded(f"{m} cosets exceed cap {limit}", {"cap": "cosets", "limit": limit, "value": m})
    cs = cosets(g, h, side)
    proj = [0] * g.order
    for i, c in enumerate(cs):
        for x in elements(c):
            proj[x] = i
    opens = ptg.topology.member_set
    members = []
    for w in range(1 << m):
        pre = 0
        for i in elements(w):
            pre |= cs[i]
        if pre in opens:
            members.append(w)
    uni = Universe(coset_labels(g, cs, side))
    return QuotientSpace(ptg, h, side, cs, PreTopology.trusted(uni, members), tuple(proj))


def discrete_iff_open_check(ptg: PreTopGroup, h: int) -> bool:
    q = coset_space(ptg, h)
    return q.is_discrete == ptg.is_open(h)


def quotient_group_pretop(ptg: PreTopGroup, h: int) -> PreTopGroup:
    g = ptg.group
    if not ptg.report.pretopological:
        raise NotPreTopGroup("base is not a pre-topological group")
    if not is_subgroup(g, h):
        raise NotSubgroup(f"{g.universe.fmt(h)} is not a subgroup", {"H": h})
    if not is_normal(g, h):
        raise NotNormal(f"{g.universe.fmt(h)} is not normal", {"H": h})
    if not ptg.topology.is_closed(h):
        raise NotClosedSubgroup(f"{g.universe.fmt(h)} is not closed", {"H": h})
    q = coset_space(ptg, h)
    qg, _ = quotient_group(g, h)
    return PreTopGroup(qg, q.topology)


def _lemma_pairs(ptg: PreTopGroup) -> tuple:
    """Pairs (V, U) of opens at e such that WV ⊆ U for some open W at e."""
    store = ptg.__dict__.setdefault("_memo", {})
    if "lemma_pairs" not in store:
        g = ptg.group
        at_e = ptg.opens_at_e
        pairs = []
        for v in at_e:
            # some W works iff some atom at e works
            prods = [g.setmul(w, v) for w in ptg.atoms_e]
            for u in at_e:
                if any(p & ~u == 0 for p in prods):
                    pairs.append((v, u))
        store["lemma_pairs"] = tuple(pairs)
    return store["lemma_pairs"]


def closure_sandwich_ok(ptg: PreTopGroup, q: QuotientSpace) -> bool:
    """WV ⊆ U implies closure(π(V)) ⊆ π(U), for opens U, V, W containing e."""
    cl: dict = {}
    for v, u in _lemma_pairs(ptg):
        if v not in cl:
            cl[v] = q.topology.closure(q.image(v))
        if cl[v] & ~q.image(u):
            return False
    return True


def quotient_group_report(ptg: PreTopGroup, h: int) -> dict:
    qptg = quotient_group_pretop(ptg, h)
    q = coset_space(ptg, h)
    sep = separation_report(q.topology)
    return {
        "pretopological": qptg.report.pretopological,
        "regular": sep.regular,
        "sandwich": closure_sandwich_ok(ptg, q),
        "ptg": qptg,
    }


def is_precontinuous_map(a: PreTopGroup, b: PreTopGroup, phi: Sequence[int]) -> bool:
    for w in b.topology.members:
        pre = sum(1 << x for x, y in enumerate(phi) if w >> y & 1)
        if pre not in a.opens:
            return False
    return True


def is_open_map(a: PreTopGroup, b: PreTopGroup, phi: Sequence[int]) -> bool:
    for u in a.topology.members:
        img = 0
        for x in elements(u):
            img |= 1 << phi[x]
        if img not in b.opens:
            return False
    return True


def first_isomorphism_check(p: GroupHom, g: PreTopGroup, h: PreTopGroup):
    if not p.surjective:
        raise NotSurjective("homomorphism is not onto")
    if not is_precontinuous_map(g, h, p.map):
        raise NotPreContinuous("homomorphism is not pre-continuous")
    if not is_open_map(g, h, p.map):
        raise NotOpenMap("homomorphism is not open")
    n = kernel(p)
    q = coset_space(g, n)
    phi = tuple(p.map[elements(c)[0]] for c in q.cosets)
    qg, _ = quotient_group(g.group, n)
    bij = len(set(phi)) == h.group.order == len(q.cosets)
    hom = all(phi[qg.table[a][b]] == h.group.table[phi[a]][phi[b]] for a in range(qg.order) for b in range(qg.order))
    qptg = PreTopGroup(qg, q.topology)
    cont = is_precontinuous_map(qptg, h, phi)
    opn = is_open_map(qptg, h, phi)
    report = {
        "kernel": n,
        "bijective": bij,
        "homomorphism": hom,
        "precontinuous": cont,
        "inverse_precontinuous": opn,
        "kernel_closed": g.topology.is_closed(n),
    }
    return bij and hom and cont and opn, report


def isomorphic(a: PreTopGroup, b: PreTopGroup) -> bool:
    if a.group.order != b.group.order:
        return False
    caps.require("isomorphism", a.group.order, "isomorphism search")
    if len(a.topology) != len(b.topology):
        return False
    target = b.opens
    for phi in isomorphisms(a.group, b.group):
        if all(_image(phi, u) in target for u in a.topology.members):
            return True
    return False


def _image(phi, s):
    r = 0
    for x in elements(s):
        r |= 1 << phi[x]
    return r


def subgroup_ptg(ptg: PreTopGroup, s: int) -> PreTopGroup:
    """A subgroup with its subspace pre-topology, as a group in its own right."""
    g = ptg.group
    idx = elements(s)
    pos = {x: i for i, x in enumerate(idx)}
    table = [[pos[g.table[a][b]] for b in idx] for a in idx]
    sg = validate_group(table, [g.labels[x] for x in idx], f"{g.name}|sub")
    return PreTopGroup(sg, subspace(ptg.topology, s))


def _homeomorphic_via(a: PreTopology, b: PreTopology, phi: Sequence[int]) -> bool:
    if sorted(phi) != list(range(b.universe.size)) or len(phi) != a.universe.size:
        return False
    return {_image(phi, u) for u in a.members} == b.member_set


def second_isomorphism_ok(ptg: PreTopGroup, n: int, h0: int) -> bool:
    """With H = G/N and H₀ ⊆ H closed normal, xG₀ ↦ (xN)H₀ is a pre-isomorphism G/G₀ → H/H₀."""
    q = coset_space(ptg, n)
    hq = quotient_group_pretop_unchecked(ptg, n)
    g0 = q.preimage(h0)
    left = coset_space(ptg, g0)
    right = coset_space(hq, h0)
    phi = [right.projection[q.projection[elements(c)[0]]] for c in left.cosets]
    return _homeomorphic_via(left.topology, right.topology, phi)


def quotient_group_pretop_unchecked(ptg: PreTopGroup, h: int) -> PreTopGroup:
    q = coset_space(ptg, h)
    qg, _ = quotient_group(ptg.group, h)
    return PreTopGroup(qg, q.topology)


def third_isomorphism_ok(ptg: PreTopGroup, h: int, m: int) -> bool:
    """With H closed normal and M a subgroup, x(H) ↦ π(x) is a pre-isomorphism MH/H → π(M)."""
    g = ptg.group
    mh = g.setmul(m, h)
    sub = subgroup_ptg(ptg, mh)
    left = coset_space(sub, compress(h, mh))
    q = coset_space(ptg, h)
    pm = q.image(m)
    pos = {c: i for i, c in enumerate(elements(pm))}
    idx = elements(mh)
    phi = [pos[q.projection[idx[elements(c)[0]]]] for c in left.cosets]
    return _homeomorphic_via(left.topology, subspace(q.topology, pm), phi)


def dense_restriction_open(ptg: PreTopGroup, h: int, k: int) -> bool:
    """r = π restricted to K maps opens of K onto opens of π(K)."""
    q = coset_space(ptg, h)
    pk = q.image(k)
    k_opens = {u & k for u in ptg.topology.members}
    pk_opens = {w & pk for w in q.topology.members}
    return all(q.image(t) in pk_opens for t in k_opens)
