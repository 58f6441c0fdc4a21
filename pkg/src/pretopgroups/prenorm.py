"""Prenorms built from chains of symmetric neighbourhoods of the identity.

All values are dyadic rationals and all arithmetic is exact.  Shortest paths
are run on integer numerators over the common denominator 2^k of a chain.
"""
from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Sequence

from .errors import InvalidChain, InvalidInput, KernelNotNormal, NotAlmostTopological, NotInvariantChain
from .group import FiniteGroup, is_normal, is_subgroup, quotient_group
from .ptg import NbhdSystem, PreTopGroup, construct_from_nbhd_system
from .setfam import elements, mask_key

_DYADIC_RE = re.compile(r"^(\d+)(?:/2\^(\d+))?$")


@total_ordering
@dataclass(frozen=True)
class Dyadic:
    """numerator / 2**exponent, kept with an odd numerator (or 0 over 2^0)."""

    numerator: int
    exponent: int = 0

    def __post_init__(self):
        n, k = self.numerator, self.exponent
        if n < 0 or k < 0:
            raise InvalidInput("dyadic values are non-negative")
        if n == 0:
            k = 0
        while k and n % 2 == 0:
            n //= 2
            k -= 1
        object.__setattr__(self, "numerator", n)
        object.__setattr__(self, "exponent", k)

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        m = _DYADIC_RE.match(text.strip())
        if not m:
            raise InvalidInput(f"not a dyadic rational: {text!r}")
        return cls(int(m.group(1)), int(m.group(2) or 0))

    @classmethod
    def pow2(cls, k: int) -> "Dyadic":
        """2^-k for k ≥ 0."""
        return cls(1, k)

    def _scaled(self, other: "Dyadic"):
        k = max(self.exponent, other.exponent)
        return self.numerator << (k - self.exponent), other.numerator << (k - other.exponent), k

    def __add__(self, other: "Dyadic") -> "Dyadic":
        a, b, k = self._scaled(other)
        return Dyadic(a + b, k)

    def __lt__(self, other: "Dyadic") -> bool:
        a, b, _ = self._scaled(other)
        return a < b

    def __mul__(self, m: int) -> "Dyadic":
        return Dyadic(self.numerator * m, self.exponent)

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def __str__(self) -> str:
        return f"{self.numerator}/2^{self.exponent}"


ZERO = Dyadic(0)
ONE = Dyadic(1)


@dataclass(frozen=True)
class Prenorm:
    group: FiniteGroup
    values: tuple[Dyadic, ...]

    def __call__(self, x: int) -> Dyadic:
        return self.values[x]


def prenorm_axioms_witness(n: Prenorm):
    g = n.group
    v = n.values
    if v[g.identity] != ZERO:
        return {"axiom": "identity", "x": g.identity}
    for x in range(g.order):
        if v[g.inverse[x]] != v[x]:
            return {"axiom": "symmetry", "x": x}
        for y in range(g.order):
            if v[x] + v[y] < v[g.table[x][y]]:
                return {"axiom": "subadditivity", "x": x, "y": y}
    return None


@dataclass(frozen=True)
class NbhdChain:
    ptg: PreTopGroup
    sets: tuple[int, ...]

    def __post_init__(self):
        w = chain_witness(self.ptg, self.sets)
        if w is not None:
            raise InvalidChain(w["reason"], w)

    @property
    def depth(self) -> int:
        return len(self.sets) - 1

    @property
    def core(self) -> int:
        return self.sets[-1]


def chain_witness(ptg: PreTopGroup, sets: Sequence[int]):
    g = ptg.group
    if not sets:
        return {"reason": "empty chain"}
    for i, u in enumerate(sets):
        if not ptg.is_open(u) or not u >> g.identity & 1:
            return {"reason": "member is not an open neighbourhood of e", "n": i}
        if g.setinv(u) != u:
            return {"reason": "member is not symmetric", "n": i}
    for i in range(len(sets) - 1):
        if g.setmul(sets[i + 1], sets[i + 1]) & ~sets[i]:
            return {"reason": "square of a member escapes its predecessor", "n": i + 1}
    last = sets[-1]
    if g.setmul(last, last) != last:
        return {"reason": "last member is not idempotent", "n": len(sets) - 1}
    return None


def _symmetric_candidates(ptg: PreTopGroup) -> list[int]:
    g = ptg.group
    cands = [u for u in ptg.opens_at_e if g.setinv(u) == u]
    return sorted(cands, key=lambda u: (-u.bit_count(), mask_key(u)))


def build_chain(ptg: PreTopGroup, u: int, depth: int | None = None) -> NbhdChain:
    if not ptg.report.almost:
        raise NotAlmostTopological("instance is not almost topological")
    g = ptg.group
    if not ptg.is_open(u) or not u >> g.identity & 1:
        raise InvalidInput("U must be an open neighbourhood of the identity")
    cands = _symmetric_candidates(ptg)
    first = next((v for v in cands if v & ~u == 0), None)
    if first is None:
        raise NotAlmostTopological("no symmetric open set inside U", {"U": u})
    sets = [first]
    limit = g.order if depth is None else depth
    while True:
        prev = sets[-1]
        nxt = next((v for v in cands if g.setmul(v, v) & ~prev == 0), None)
        if nxt is None:
            raise NotAlmostTopological("no square-root neighbourhood", {"U": prev})
        if nxt == prev:
            break
        if len(sets) - 1 >= limit:
            raise InvalidChain("chain did not stabilise within the depth limit", {"depth": limit})
        sets.append(nxt)
    return NbhdChain(ptg, tuple(sets))


def step_costs(chain: NbhdChain) -> tuple[list[int], int]:
    """Costs in units of 2^-k: 0 on the core, 2^(k-m) for deepest level m, 2·2^k outside U₀."""
    g = chain.ptg.group
    k = chain.depth
    core = chain.core
    costs = []
    for x in range(g.order):
        bit = 1 << x
        if core & bit:
            costs.append(0)
        elif chain.sets[0] & bit:
            m = max(i for i, s in enumerate(chain.sets) if s & bit)
            costs.append(1 << (k - m))
        else:
            costs.append(2 << k)
    return costs, k


def shortest_paths(g: FiniteGroup, costs: Sequence[int]) -> list[int]:
    """Dijkstra from e along edges y -> y·a with weight costs[a]."""
    inf = None
    dist: list = [inf] * g.order
    dist[g.identity] = 0
    heap = [(0, g.identity)]
    done = [False] * g.order
    while heap:
        d, y = heapq.heappop(heap)
        if done[y]:
            continue
        done[y] = True
        row = g.table[y]
        for a in range(g.order):
            z = row[a]
            nd = d + costs[a]
            if dist[z] is None or nd < dist[z]:
                dist[z] = nd
                heapq.heappush(heap, (nd, z))
    return dist


def construct_prenorm(chain: NbhdChain) -> Prenorm:
    costs, k = step_costs(chain)
    dist = shortest_paths(chain.ptg.group, costs)
    return Prenorm(chain.ptg.group, tuple(Dyadic(d, k) for d in dist))


def _dyadic_levels(chain: NbhdChain) -> tuple[list[int], int]:
    """f(x) in units of 2^-j: the least r = Σ 2^-nᵢ (levels 1..j) with x ∈ U_{n₁}⋯U_{n_m}·core, else 1."""
    g = chain.ptg.group
    k = chain.depth
    j = max(k - 1, 0)
    core = chain.core
    one = 1 << j
    f = [one] * g.order
    for r in range(one):
        # digits of r from the coarsest level down
        s = 1 << g.identity
        for level in range(1, j + 1):
            if r >> (j - level) & 1:
                s = g.setmul(s, chain.sets[level])
        s = g.setmul(s, core)
        for x in elements(s):
            if r < f[x]:
                f[x] = r
    return f, j


def dyadic_prenorm(chain: NbhdChain) -> Prenorm:
    """Prenorm N(x) = max over y of |f(yx) - f(y)| built from products of chain members.

    Unlike the path construction this one always satisfies the sandwich for a
    chain with U_{n+1}² ⊆ U_n.
    """
    g = chain.ptg.group
    f, j = _dyadic_levels(chain)
    vals = []
    for x in range(g.order):
        vals.append(Dyadic(max(abs(f[g.table[y][x]] - f[y]) for y in range(g.order)), j))
    return Prenorm(g, tuple(vals))


def sandwich_witness(chain: NbhdChain, n: Prenorm):
    """First level where {N < 2^-i} ⊆ U_i ⊆ {N ≤ 2·2^-i} fails, or None."""
    for i, u in enumerate(chain.sets):
        lo = ball(n, Dyadic.pow2(i))
        hi = sum(1 << x for x, v in enumerate(n.values) if not Dyadic(2, i) < v)
        if lo & ~u:
            return {"n": i, "side": "lower", "U": u, "set": lo}
        if u & ~hi:
            return {"n": i, "side": "upper", "U": u, "set": hi}
    return None


def ball(n: Prenorm, eps: Dyadic) -> int:
    return sum(1 << x for x, v in enumerate(n.values) if v < eps)


def is_precontinuous_prenorm(ptg: PreTopGroup, n: Prenorm) -> bool:
    for eps in sorted(set(v for v in n.values if v != ZERO)):
        b = ball(n, eps)
        if not any(u & ~b == 0 for u in ptg.opens_at_e):
            return False
    return True


def markov_separation(ptg: PreTopGroup, u: int) -> Prenorm:
    """A pre-continuous prenorm with unit ball inside U, from the greedy chain at U."""
    return dyadic_prenorm(build_chain(ptg, u))


def separating_values(n: Prenorm, a: int) -> list[Dyadic]:
    """f(x) = min(N(x·a⁻¹), 1)."""
    g = n.group
    ai = g.inverse[a]
    return [min(n.values[g.table[x][ai]], ONE) for x in range(g.order)]


@dataclass(frozen=True)
class Pseudometric:
    group: FiniteGroup
    values: tuple[tuple[Dyadic, ...], ...]
    left_invariant: bool
    right_invariant: bool


def pseudometric_witness(d: Pseudometric):
    v = d.values
    n = d.group.order
    for x in range(n):
        if v[x][x] != ZERO:
            return {"axiom": "diagonal", "x": x}
        for y in range(n):
            if v[x][y] != v[y][x]:
                return {"axiom": "symmetry", "x": x, "y": y}
            for z in range(n):
                if v[x][y] + v[y][z] < v[x][z]:
                    return {"axiom": "triangle", "x": x, "y": y, "z": z}
    return None


def _invariance(g: FiniteGroup, v) -> tuple[bool, bool]:
    n = g.order
    t = g.table
    left = all(v[t[a][x]][t[a][y]] == v[x][y] for a in range(n) for x in range(n) for y in range(n))
    right = all(v[t[x][a]][t[y][a]] == v[x][y] for a in range(n) for x in range(n) for y in range(n))
    return left, right


def pseudometrics_from(n: Prenorm) -> tuple[Pseudometric, Pseudometric]:
    g = n.group
    t, inv = g.table, g.inverse
    rho = tuple(tuple(n.values[t[x][inv[y]]] for y in range(g.order)) for x in range(g.order))
    sigma = tuple(tuple(n.values[t[inv[x]][y]] for y in range(g.order)) for x in range(g.order))
    out = []
    for vals in (rho, sigma):
        left, right = _invariance(g, vals)
        out.append(Pseudometric(g, vals, left, right))
    return out[0], out[1]


def metric_ball(d: Pseudometric, center: int, eps: Dyadic) -> int:
    return sum(1 << y for y, v in enumerate(d.values[center]) if v < eps)


def ball_prebase_check(ptg: PreTopGroup) -> dict:
    """Balls of the right-invariant pseudometrics from chains started at each atom at e:
    do they form a local pre-base at e, and are the atoms among them?"""
    g = ptg.group
    balls = set()
    for a in ptg.atoms_e:
        chain = build_chain(ptg, a)
        rho, _ = pseudometrics_from(construct_prenorm(chain))
        for i in range(chain.depth + 2):
            balls.add(metric_ball(rho, g.identity, Dyadic.pow2(i)))
    all_open = all(ptg.is_open(b) for b in balls)
    prebase = all_open and all(any(b & ~u == 0 for b in balls) for u in ptg.opens_at_e)
    atoms_found = all(a in balls for a in ptg.atoms_e)
    return {"balls_open": all_open, "local_prebase": prebase, "atoms_recovered": atoms_found}


def invariant_prenorm(chain: NbhdChain) -> Prenorm:
    g = chain.ptg.group
    for i, u in enumerate(chain.sets):
        for x in range(g.order):
            if g.conj(x, u) != u:
                raise NotInvariantChain("chain member is not conjugation invariant", {"g": x, "n": i})
    n = construct_prenorm(chain)
    t, inv = g.table, g.inverse
    for x in range(g.order):
        for y in range(g.order):
            if n.values[t[t[x][y]][inv[x]]] != n.values[y]:
                raise RuntimeError("conjugation invariance failed for an invariant chain")
    return n


def prenorm_quotient(ptg: PreTopGroup, chain: NbhdChain):
    """Quotient by Z = {N = 0}; returns (H, N_H) with H carrying the ball topology."""
    g = ptg.group
    n = construct_prenorm(chain)
    z = sum(1 << x for x, v in enumerate(n.values) if v == ZERO)
    if z != chain.core:
        raise RuntimeError("zero set of the prenorm differs from the chain core")
    if not is_subgroup(g, z) or not is_normal(g, z):
        raise KernelNotNormal("zero set is not a normal subgroup", {"H": z})
    qg, pi = quotient_group(g, z)
    vals = [None] * qg.order
    for x in range(g.order):
        c = pi.map[x]
        if vals[c] is None:
            vals[c] = n.values[x]
        elif vals[c] != n.values[x]:
            raise RuntimeError("quotient prenorm is not well defined")
    balls = {pi.image(ball(n, Dyadic.pow2(i))) for i in range(chain.depth + 1)}
    hptg = construct_from_nbhd_system(NbhdSystem(qg, tuple(balls)))
    return hptg, Prenorm(qg, tuple(vals))
