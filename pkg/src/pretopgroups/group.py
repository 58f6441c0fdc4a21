"""Finite groups given by Cayley tables, with subgroups, cosets and homomorphisms."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product as iproduct
from typing import Callable, Iterable, Iterator, Sequence

from . import caps
from .errors import InvalidInput, NoIdentity, NoInverse, NotAssociative, NotNormal, NotSubgroup
from .setfam import Universe, canonical, elements


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    universe: Universe
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def order(self) -> int:
        return self.universe.size

    @property
    def labels(self) -> tuple[str, ...]:
        return self.universe.labels

    @property
    def full(self) -> int:
        return self.universe.full

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.universe == other.universe and self.table == other.table

    def __hash__(self):
        return hash((self.universe, self.table))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    # set arithmetic on bitmasks, memoised per group
    def lmul(self, g: int, s: int) -> int:
        """g·S"""
        key = ("l", g, s)
        c = self._cache
        r = c.get(key)
        if r is None:
            row = self.table[g]
            r = 0
            for x in elements(s):
                r |= 1 << row[x]
            c[key] = r
        return r

    def rmul(self, s: int, g: int) -> int:
        """S·g"""
        key = ("r", g, s)
        c = self._cache
        r = c.get(key)
        if r is None:
            t = self.table
            r = 0
            for x in elements(s):
                r |= 1 << t[x][g]
            c[key] = r
        return r

    def setmul(self, a: int, b: int) -> int:
        key = ("m", a, b)
        c = self._cache
        r = c.get(key)
        if r is None:
            r = 0
            for x in elements(a):
                r |= self.lmul(x, b)
            c[key] = r
        return r

    def setinv(self, s: int) -> int:
        key = ("i", s)
        c = self._cache
        r = c.get(key)
        if r is None:
            inv = self.inverse
            r = 0
            for x in elements(s):
                r |= 1 << inv[x]
            c[key] = r
        return r

    def conj(self, g: int, s: int) -> int:
        """g S g⁻¹"""
        return self.rmul(self.lmul(g, s), self.inverse[g])

    def power(self, s: int, k: int) -> int:
        r = s
        for _ in range(k - 1):
            r = self.setmul(r, s)
        return r

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for g in range(self.order):
            k, x = 1, g
            while x != self.identity:
                x = self.table[x][g]
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        n = self.order
        return all(t[a][b] == t[b][a] for a in range(n) for b in range(a + 1, n))

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by element order then index."""
        gens: list[int] = []
        current = 1 << self.identity
        for g in sorted(range(self.order), key=lambda x: (-self.element_orders[x], x)):
            if current == self.full:
                break
            if not current >> g & 1:
                gens.append(g)
                current = subgroup_generated(self, current | 1 << g)
        return tuple(gens)


def validate_group(table: Sequence[Sequence], labels: Sequence[str] | None = None, name: str = "") -> FiniteGroup:
    n = len(table)
    if n == 0:
        raise InvalidInput("empty table")
    if labels is None:
        labels = [str(i) for i in range(n)]
    uni = Universe(tuple(labels))
    if uni.size != n:
        raise InvalidInput("table size does not match the element list")
    rows = []
    for i, row in enumerate(table):
        if len(row) != n:
            raise InvalidInput(f"row {i} has length {len(row)}, expected {n}")
        out = []
        for v in row:
            if isinstance(v, int) and not isinstance(v, bool):
                if not 0 <= v < n:
                    raise InvalidInput(f"entry {v!r} out of range")
                out.append(v)
            elif isinstance(v, str):
                out.append(uni.index(v))
            else:
                raise InvalidInput(f"bad table entry {v!r}")
        rows.append(tuple(out))
    t = tuple(rows)
    ident = None
    for e in range(n):
        if all(t[e][x] == x and t[x][e] == x for x in range(n)):
            ident = e
            break
    if ident is None:
        raise NoIdentity("no two-sided identity")
    inv = []
    for x in range(n):
        y = next((y for y in range(n) if t[x][y] == ident and t[y][x] == ident), None)
        if y is None:
            raise NoInverse(f"element {uni.labels[x]} has no inverse", {"x": x})
        inv.append(y)
    for x in range(n):
        tx = t[x]
        for y in range(n):
            xy = tx[y]
            ty = t[y]
            txy = t[xy]
            for z in range(n):
                if txy[z] != tx[ty[z]]:
                    raise NotAssociative(
                        f"({uni.labels[x]},{uni.labels[y]},{uni.labels[z]}): "
                        f"({uni.labels[x]}{uni.labels[y]}){uni.labels[z]} != {uni.labels[x]}({uni.labels[y]}{uni.labels[z]})",
                        {"x": uni.labels[x], "y": uni.labels[y], "z": uni.labels[z]},
                    )
    return FiniteGroup(uni, t, ident, tuple(inv), name)


def from_operation(elems: Sequence, op: Callable, labels: Sequence[str], name: str) -> FiniteGroup:
    idx = {e: i for i, e in enumerate(elems)}
    table = [[idx[op(a, b)] for b in elems] for a in elems]
    return validate_group(table, labels, name)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidInput("cyclic order must be positive")
    return from_operation(list(range(n)), lambda a, b: (a + b) % n, [str(i) for i in range(n)], f"Z{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup, name: str | None = None) -> FiniteGroup:
    elems = [(a, b) for a in range(g.order) for b in range(h.order)]
    labels = [f"({g.labels[a]},{h.labels[b]})" for a, b in elems]
    return from_operation(
        elems,
        lambda x, y: (g.table[x[0]][y[0]], h.table[x[1]][y[1]]),
        labels,
        name or f"{g.name}x{h.name}",
    )


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon; the pair (k, f) stands for r^k s^f."""
    elems = [(k, f) for f in (0, 1) for k in range(n)]
    labels = [("s" if f else "r") + str(k) for k, f in elems]

    def op(x, y):
        k1, f1 = x
        k2, f2 = y
        return ((k1 + (-k2 if f1 else k2)) % n, f1 ^ f2)

    return from_operation(elems, op, labels, f"D{n}")


def quaternion() -> FiniteGroup:
    # unit quaternions as (sign, basis) with basis in 1,i,j,k
    rule = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elems = [(s, b) for b in "1ijk" for s in (1, -1)]
    labels = [("" if s > 0 else "-") + b for s, b in elems]

    def op(x, y):
        s, b = rule[(x[1], y[1])]
        return (x[0] * y[0] * s, b)

    return from_operation(elems, op, labels, "Q8")


def alternating4() -> FiniteGroup:
    def parity(p):
        inv = sum(1 for i in range(4) for j in range(i + 1, 4) if p[i] > p[j])
        return inv % 2

    elems = [p for p in permutations(range(4)) if parity(p) == 0]
    labels = ["".join(map(str, p)) for p in elems]
    return from_operation(elems, lambda p, q: tuple(p[q[i]] for i in range(4)), labels, "A4")


def dicyclic3() -> FiniteGroup:
    """Z3 ⋊ Z4 with the generator of Z4 acting by inversion."""
    elems = [(a, b) for b in range(4) for a in range(3)]
    labels = [f"({a},{b})" for a, b in elems]

    def op(x, y):
        a1, b1 = x
        a2, b2 = y
        return ((a1 + (a2 if b1 % 2 == 0 else -a2)) % 3, (b1 + b2) % 4)

    return from_operation(elems, op, labels, "Dic3")


def _catalog_builders() -> dict:
    z = cyclic
    return {
        "Z1": lambda: z(1), "Z2": lambda: z(2), "Z3": lambda: z(3),
        "Z4": lambda: z(4), "Z2xZ2": lambda: direct_product(z(2), z(2)),
        "Z5": lambda: z(5),
        "Z6": lambda: z(6), "S3": lambda: _renamed(dihedral(3), "S3"),
        "Z7": lambda: z(7),
        "Z8": lambda: z(8), "Z4xZ2": lambda: direct_product(z(4), z(2)),
        "Z2xZ2xZ2": lambda: direct_product(direct_product(z(2), z(2)), z(2), "Z2xZ2xZ2"),
        "D4": lambda: dihedral(4), "Q8": quaternion,
        "Z9": lambda: z(9), "Z3xZ3": lambda: direct_product(z(3), z(3)),
        "Z10": lambda: z(10), "D5": lambda: dihedral(5),
        "Z11": lambda: z(11),
        "Z12": lambda: z(12), "Z2xZ6": lambda: direct_product(z(2), z(6)),
        "D6": lambda: dihedral(6), "A4": alternating4, "Dic3": dicyclic3,
    }


def _renamed(g: FiniteGroup, name: str) -> FiniteGroup:
    return FiniteGroup(g.universe, g.table, g.identity, g.inverse, name)


CATALOG_NAMES = tuple(_catalog_builders())
_catalog_cache: dict = {}


def catalog_group(name: str) -> FiniteGroup:
    if name not in _catalog_cache:
        builders = _catalog_builders()
        if name not in builders:
            raise InvalidInput(f"unknown catalog group {name!r}")
        _catalog_cache[name] = builders[name]()
    return _catalog_cache[name]


def group_catalog(lo: int = 1, hi: int = 12) -> list[FiniteGroup]:
    """One group per isomorphism class for each order in [lo, hi] (hi ≤ 12)."""
    if hi > 12:
        raise caps.CapExceeded("the built-in catalog stops at order 12", {"cap": "catalog", "limit": 12, "value": hi})
    out = [catalog_group(n) for n in CATALOG_NAMES]
    return [g for g in out if lo <= g.order <= hi]


# subgroups and cosets

def is_subgroup(g: FiniteGroup, s: int) -> bool:
    if not s >> g.identity & 1:
        return False
    if g.setmul(s, s) != s:
        return False
    return g.setinv(s) == s


def subgroup_generated(g: FiniteGroup, s: int) -> int:
    h = s | 1 << g.identity
    while True:
        nxt = g.setmul(h, h) | g.setinv(h)
        if nxt == h:
            return h
        h = nxt


def enumerate_subgroups(g: FiniteGroup) -> tuple[int, ...]:
    caps.require("subgroups", g.order, "subgroup enumeration")
    cyclic_subs = {subgroup_generated(g, 1 << x) for x in range(g.order)}
    found = set(cyclic_subs)
    frontier = set(found)
    while frontier:
        new = set()
        for a in frontier:
            for b in cyclic_subs:
                j = subgroup_generated(g, a | b)
                if j not in found:
                    new.add(j)
        found |= new
        frontier = new
    return canonical(found)


def _require_subgroup(g: FiniteGroup, h: int) -> None:
    if not is_subgroup(g, h):
        raise NotSubgroup(f"{g.universe.fmt(h)} is not a subgroup", {"H": h})


def cosets(g: FiniteGroup, h: int, side: str = "left") -> tuple[int, ...]:
    """Cosets ordered by their least element (which is the representative)."""
    _require_subgroup(g, h)
    seen = 0
    out = []
    for x in range(g.order):
        if seen >> x & 1:
            continue
        c = g.lmul(x, h) if side == "left" else g.rmul(h, x)
        out.append(c)
        seen |= c
    return tuple(out)


def is_normal(g: FiniteGroup, h: int) -> bool:
    _require_subgroup(g, h)
    return all(g.conj(x, h) == h for x in range(g.order))


@dataclass(frozen=True)
class GroupHom:
    domain: FiniteGroup
    codomain: FiniteGroup
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def image(self, s: int) -> int:
        r = 0
        for x in elements(s):
            r |= 1 << self.map[x]
        return r

    def preimage(self, s: int) -> int:
        r = 0
        for x, y in enumerate(self.map):
            if s >> y & 1:
                r |= 1 << x
        return r

    @property
    def surjective(self) -> bool:
        return len(set(self.map)) == self.codomain.order


def is_homomorphism(g: FiniteGroup, h: FiniteGroup, phi: Sequence[int]) -> bool:
    if len(phi) != g.order:
        raise InvalidInput("map must be total on the domain")
    for x in range(g.order):
        for y in range(g.order):
            if phi[g.table[x][y]] != h.table[phi[x]][phi[y]]:
                return False
    return True


def kernel(hom: GroupHom) -> int:
    e = hom.codomain.identity
    return sum(1 << x for x, y in enumerate(hom.map) if y == e)


def coset_labels(g: FiniteGroup, cs: Sequence[int], side: str = "left") -> tuple[str, ...]:
    return tuple((f"{g.labels[elements(c)[0]]}+H" if side == "left" else f"H+{g.labels[elements(c)[0]]}") for c in cs)


def quotient_group(g: FiniteGroup, h: int) -> tuple[FiniteGroup, GroupHom]:
    if not is_normal(g, h):
        raise NotNormal(f"{g.universe.fmt(h)} is not normal", {"H": h})
    cs = cosets(g, h)
    which = [0] * g.order
    for i, c in enumerate(cs):
        for x in elements(c):
            which[x] = i
    reps = [elements(c)[0] for c in cs]
    table = [[which[g.table[a][b]] for b in reps] for a in reps]
    q = validate_group(table, coset_labels(g, cs), f"{g.name}/H")
    return q, GroupHom(g, q, tuple(which))


def _extend(g: FiniteGroup, h: FiniteGroup, gens: Sequence[int], imgs: Sequence[int]):
    phi = {g.identity: h.identity}
    queue = [g.identity]
    while queue:
        x = queue.pop()
        for s, t in zip(gens, imgs):
            y = g.table[x][s]
            v = h.table[phi[x]][t]
            if y in phi:
                if phi[y] != v:
                    return None
            else:
                phi[y] = v
                queue.append(y)
    if len(phi) != g.order:
        return None
    return tuple(phi[x] for x in range(g.order))


def isomorphisms(g: FiniteGroup, h: FiniteGroup) -> Iterator[tuple[int, ...]]:
    """All group isomorphisms g → h, as index maps, in lexicographic image order."""
    if g.order != h.order:
        return
    gens = g.generators
    cands = [[y for y in range(h.order) if h.element_orders[y] == g.element_orders[s]] for s in gens]
    for imgs in iproduct(*cands):
        phi = _extend(g, h, gens, imgs)
        if phi is not None and len(set(phi)) == h.order:
            yield phi


def automorphisms(g: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    key = ("aut",)
    if key not in g._cache:
        g._cache[key] = tuple(isomorphisms(g, g))
    return g._cache[key]


def group_spec(g: FiniteGroup) -> dict:
    return {
        "name": g.name,
        "elements": list(g.labels),
        "table": [[g.labels[v] for v in row] for row in g.table],
    }
