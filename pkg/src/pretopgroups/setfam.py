"""Set families and pre-topologies on a finite labelled universe.

Subsets are plain ``int`` bitsets: bit ``i`` is set when element ``i`` belongs
to the subset.  Families keep their members in a canonical order (size first,
then the sorted index tuple) so every derived output is deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from . import caps
from .errors import EmptySubspace, InvalidInput, NotPreTopology, NotSubfamily, UniverseNotCovered


def elements(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def from_indices(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@lru_cache(maxsize=1 << 16)
def mask_key(mask: int) -> tuple:
    return (mask.bit_count(), tuple(elements(mask)))


def canonical(masks: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(masks), key=mask_key))


def subsets_of(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class Universe:
    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise InvalidInput("universe must be nonempty")
        if len(set(labels)) != len(labels):
            raise InvalidInput("universe labels must be distinct")

    @classmethod
    def range(cls, n: int) -> "Universe":
        return cls(tuple(str(i) for i in range(n)))

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    @cached_property
    def _index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise InvalidInput(f"unknown element label {label!r}") from None

    def mask(self, labels: Iterable) -> int:
        return from_indices(self.index(x) for x in labels)

    def labels_of(self, mask: int) -> list[str]:
        return [self.labels[i] for i in elements(mask)]

    def fmt(self, mask: int) -> str:
        return "{" + ",".join(self.labels_of(mask)) + "}"


@dataclass(frozen=True)
class SetFamily:
    universe: Universe
    members: tuple[int, ...]

    @classmethod
    def of(cls, universe: Universe, masks: Iterable[int]) -> "SetFamily":
        masks = canonical(masks)
        full = universe.full
        for m in masks:
            if m & ~full:
                raise InvalidInput("subset outside the universe")
        return cls(universe, masks)

    @classmethod
    def from_labels(cls, universe: Universe, sets: Iterable[Iterable]) -> "SetFamily":
        return cls.of(universe, [universe.mask(s) for s in sets])

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, mask) -> bool:
        return mask in self.member_set

    @cached_property
    def member_set(self) -> frozenset:
        return frozenset(self.members)

    @property
    def union(self) -> int:
        u = 0
        for m in self.members:
            u |= m
        return u

    def labelled(self) -> list[list[str]]:
        return [self.universe.labels_of(m) for m in self.members]


class PreTopology(SetFamily):
    """A union-closed family containing the empty set and the whole universe.

    ``PreTopology.of`` validates; ``PreTopology.trusted`` skips the check and is
    meant for outputs of closure algorithms.
    """

    @classmethod
    def of(cls, universe: Universe, masks: Iterable[int]) -> "PreTopology":
        fam = SetFamily.of(universe, masks)
        ok, witness = is_pretopology(fam)
        if not ok:
            raise NotPreTopology("family is not a pre-topology", witness)
        return cls(universe, fam.members)

    @classmethod
    def trusted(cls, universe: Universe, masks: Iterable[int]) -> "PreTopology":
        return cls(universe, canonical(masks))

    @cached_property
    def nonempty(self) -> tuple[int, ...]:
        return tuple(m for m in self.members if m)

    @cached_property
    def minimal_nonempty(self) -> tuple[int, ...]:
        ne = self.nonempty
        return tuple(u for u in ne if not any(v != u and v & ~u == 0 for v in ne))

    @cached_property
    def atoms(self) -> tuple[tuple[int, ...], ...]:
        """atoms[z]: the minimal opens containing z."""
        out = []
        for z in range(self.universe.size):
            bit = 1 << z
            nb = [u for u in self.members if u & bit]
            out.append(tuple(u for u in nb if not any(v != u and v & ~u == 0 for v in nb)))
        return tuple(out)

    def interior(self, s: int) -> int:
        acc = 0
        for u in self.members:
            if u & ~s == 0:
                acc |= u
        return acc

    def closure(self, s: int) -> int:
        avoid = 0
        for u in self.members:
            if u & s == 0:
                avoid |= u
        return self.universe.full & ~avoid

    def is_closed(self, s: int) -> bool:
        return (self.universe.full & ~s) in self.member_set

    @cached_property
    def closed_sets(self) -> tuple[int, ...]:
        full = self.universe.full
        return canonical(full & ~u for u in self.members)

    def fmt(self) -> str:
        return "{" + ", ".join(self.universe.fmt(m) for m in self.members) + "}"


def _masks_of(universe: Universe, generators) -> list[int]:
    if isinstance(generators, SetFamily):
        return list(generators.members)
    return list(generators)


def union_close(universe: Universe, generators) -> PreTopology:
    gens = _masks_of(universe, generators)
    cover = 0
    for g in gens:
        cover |= g
    if cover != universe.full:
        raise UniverseNotCovered("generators do not cover the universe", {"missing": universe.full & ~cover})
    closed = {0}
    for g in gens:
        if g in closed:
            continue
        closed |= {c | g for c in closed}
    return PreTopology.trusted(universe, closed)


def is_pretopology(family: SetFamily):
    """Return ``(ok, witness)``; the witness names what is missing."""
    members = family.member_set
    full = family.universe.full
    if 0 not in members:
        return False, {"missing": "empty"}
    if family.union != full:
        return False, {"missing": "cover", "set": full & ~family.union}
    ms = family.members
    for i, u in enumerate(ms):
        for v in ms[i + 1:]:
            if (u | v) not in members:
                return False, {"U": u, "V": v, "union": u | v}
    if full not in members:
        return False, {"missing": "full"}
    return True, None


def is_prebase(candidate: SetFamily, pretop: PreTopology) -> bool:
    for b in candidate.members:
        if b not in pretop.member_set:
            raise NotSubfamily("candidate member is not open", {"set": b})
    for u in pretop.members:
        acc = 0
        for b in candidate.members:
            if b & ~u == 0:
                acc |= b
        if acc != u:
            return False
    return True


def minimal_prebase(pretop: PreTopology) -> SetFamily:
    keep = []
    for u in pretop.nonempty:
        below = 0
        for v in pretop.members:
            if v != u and v & ~u == 0:
                below |= v
        if below != u:
            keep.append(u)
    return SetFamily.of(pretop.universe, keep)


def interior(pretop: PreTopology, s: int) -> int:
    return pretop.interior(s)


def closure(pretop: PreTopology, s: int) -> int:
    return pretop.closure(s)


def compress(mask: int, s: int) -> int:
    """Re-index the bits of ``mask`` that lie in ``s`` onto 0..|s|-1."""
    out = 0
    for j, i in enumerate(elements(s)):
        if mask >> i & 1:
            out |= 1 << j
    return out


def expand(mask: int, s: int) -> int:
    out = 0
    for j, i in enumerate(elements(s)):
        if mask >> j & 1:
            out |= 1 << i
    return out


def traces(pretop: PreTopology, s: int) -> frozenset:
    return frozenset(u & s for u in pretop.members)


def subspace(pretop: PreTopology, s: int) -> PreTopology:
    if s == 0:
        raise EmptySubspace("subspace of the empty set")
    sub = Universe(tuple(pretop.universe.labels_of(s)))
    return PreTopology.trusted(sub, (compress(t, s) for t in traces(pretop, s)))


def is_connected(pretop: PreTopology, s: int) -> bool:
    if s == 0:
        raise EmptySubspace("connectedness of the empty set")
    tr = traces(pretop, s)
    return not any(t and t != s and (s & ~t) in tr for t in tr)


def component(pretop: PreTopology, z: int) -> int:
    n = pretop.universe.size
    caps.require("component", n, "component scan")
    bit = 1 << z
    rest = pretop.universe.full & ~bit
    acc = bit
    for sub in subsets_of(rest):
        s = sub | bit
        if s & ~acc and is_connected(pretop, s):
            acc |= s
    return acc


@dataclass(frozen=True)
class CardinalReport:
    weight: int
    character: tuple[int, ...]
    cellularity: int
    density: int
    cellular_family: tuple[int, ...]
    dense_set: int


def max_disjoint(sets: Sequence[int]) -> tuple[int, ...]:
    """Largest pairwise-disjoint subfamily, exact branch and bound."""
    sets = list(sets)
    best: list = []

    def go(i, chosen, used):
        nonlocal best
        if len(chosen) + (len(sets) - i) <= len(best):
            return
        if i == len(sets):
            best = list(chosen)
            return
        s = sets[i]
        if s & used == 0:
            chosen.append(s)
            go(i + 1, chosen, used | s)
            chosen.pop()
        go(i + 1, chosen, used)

    go(0, [], 0)
    return tuple(best)


def min_hitting_set(n: int, sets: Sequence[int]) -> int:
    """Smallest subset meeting every member of ``sets``; first in lexicographic order."""
    if not sets:
        return 0
    for k in range(1, n + 1):
        for combo in combinations(range(n), k):
            m = from_indices(combo)
            if all(m & s for s in sets):
                return m
    raise InvalidInput("a member of the family is empty")


def cardinal_report(pretop: PreTopology) -> CardinalReport:
    mins = pretop.minimal_nonempty
    cell = max_disjoint(mins)
    dense = min_hitting_set(pretop.universe.size, mins)
    return CardinalReport(
        weight=len(minimal_prebase(pretop)),
        character=tuple(len(a) for a in pretop.atoms),
        cellularity=len(cell),
        density=dense.bit_count(),
        cellular_family=cell,
        dense_set=dense,
    )


def is_resolvable(pretop: PreTopology):
    """Return ``(True, (A, B))`` for a split into two disjoint dense sets, else ``(False, None)``.

    Backtracking 2-colouring: every minimal nonempty open needs both colours.
    """
    n = pretop.universe.size
    edges = pretop.minimal_nonempty
    if any(e.bit_count() < 2 for e in edges):
        return False, None
    by_point = [[e for e in edges if e >> i & 1] for i in range(n)]

    def go(i, a, b):
        if i == n:
            return a, b
        bit = 1 << i
        for na, nb in ((a | bit, b), (a, b | bit)):
            assigned = na | nb
            if all(not (e & ~assigned == 0 and (e & na == 0 or e & nb == 0)) for e in by_point[i]):
                res = go(i + 1, na, nb)
                if res:
                    return res
        return None

    res = go(0, 0, 0)
    if res is None:
        return False, None
    return True, res


def product_universe(a: PreTopology, b: PreTopology) -> Universe:
    return Universe(tuple(f"({x},{y})" for x in a.universe.labels for y in b.universe.labels))


def box(a: PreTopology, b: PreTopology, u: int, v: int) -> int:
    """u × v as a mask over product_universe(a, b)."""
    nb = b.universe.size
    m = 0
    for i in elements(u):
        for j in elements(v):
            m |= 1 << (i * nb + j)
    return m


def is_product_open(a: PreTopology, b: PreTopology, s: int) -> bool:
    """Whether s is a union of boxes of opens, without building the product family."""
    covered = 0
    for u in a.nonempty:
        for v in b.nonempty:
            bx = box(a, b, u, v)
            if bx & ~s == 0:
                covered |= bx
    return covered == s


def product(a: PreTopology, b: PreTopology) -> PreTopology:
    na, nb = a.universe.size, b.universe.size
    caps.require("product", na * nb, "product space")
    uni = product_universe(a, b)

    limit = caps.cap("product_family")
    closed = {0}
    for u in a.nonempty:
        for v in b.nonempty:
            g = box(a, b, u, v)
            if g in closed:
                continue
            closed |= {c | g for c in closed}
            if len(closed) > limit:
                raise caps.CapExceeded("product family too large", {"cap": "product_family", "limit": limit})
    return PreTopology.trusted(uni, closed)


def discrete(universe: Universe) -> PreTopology:
    return PreTopology.trusted(universe, range(universe.full + 1))


def indiscrete(universe: Universe) -> PreTopology:
    return PreTopology.trusted(universe, (0, universe.full))
