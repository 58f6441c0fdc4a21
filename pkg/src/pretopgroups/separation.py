"""Separation axioms on finite pre-topologies, including an exact test for
functional separation by maps into the unit interval.

A finite-valued f: X -> [0,1] is pre-continuous exactly when each contiguous
run of its level sets (ordered by value) has open union.  Single levels are
runs, and unions of open sets are open, so this is the same as every level set
being open.  Consequently a separating map for (z, C) exists iff some open set
B with z in B, B disjoint from C, has open complement.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import NotClosed, NotT1, PointInSet
from .setfam import PreTopology, elements


@dataclass(frozen=True)
class SeparationReport:
    t0: bool
    t1: bool
    t2: bool
    regular: bool
    completely_regular: bool
    witnesses: dict = field(default_factory=dict)
    separating_function: tuple | None = None


def _pairs(n):
    for y in range(n):
        for z in range(y + 1, n):
            yield y, z


def t0_witness(top: PreTopology):
    for y, z in _pairs(top.universe.size):
        pair = 1 << y | 1 << z
        if not any(u & pair in (1 << y, 1 << z) for u in top.members):
            return {"x": y, "y": z}
    return None


def t1_witness(top: PreTopology):
    n = top.universe.size
    for y in range(n):
        for z in range(n):
            if y != z and not any(u >> y & 1 and not u >> z & 1 for u in top.members):
                return {"x": y, "y": z}
    return None


def t2_witness(top: PreTopology):
    atoms = top.atoms
    for y, z in _pairs(top.universe.size):
        if not any(a & b == 0 for a in atoms[y] for b in atoms[z]):
            return {"x": y, "y": z}
    return None


def regular_witness(top: PreTopology):
    """First (z, closed A) with z outside A that no pair of disjoint opens separates."""
    atoms = top.atoms
    for a in top.closed_sets:
        for z in range(top.universe.size):
            if a >> z & 1:
                continue
            # some open O ⊇ A misses V iff A misses closure(V)
            if not any(top.closure(v) & a == 0 for v in atoms[z]):
                return {"z": z, "A": a}
    return None


def _clopen_split(top: PreTopology, z: int, c: int):
    full = top.universe.full
    for b in top.members:
        if b >> z & 1 and b & c == 0 and (full & ~b) in top.member_set:
            return b
    return None


def _split_open(top: PreTopology, block: int, keep: int):
    """A nonempty proper open part p of ``block`` with block-p open and keep ⊆ block-p."""
    best = None
    for p in top.members:
        if p and p & ~block == 0 and p != block and p & keep == 0:
            rest = block & ~p
            if rest in top.member_set:
                if best is None or (p.bit_count(), p) < (best.bit_count(), best):
                    best = p
    return best


def refine_levels(top: PreTopology, z: int, c: int, bottom: int) -> list[int]:
    """Split [bottom, rest] greedily into smaller open levels, z staying at the bottom
    and C inside the top block."""
    full = top.universe.full
    levels = [bottom, full & ~bottom]
    changed = True
    while changed:
        changed = False
        out = []
        for i, blk in enumerate(levels):
            keep = 0
            if i == 0:
                keep = 1 << z
            if i == len(levels) - 1:
                keep |= c
            p = _split_open(top, blk, keep)
            if p is None:
                out.append(blk)
                continue
            changed = True
            q = blk & ~p
            if i == 0:
                out.extend([q, p])     # z stays in the first part
            else:
                out.extend([p, q])     # C stays in the last part
        levels = out
    return levels


def level_values(k: int) -> list[Fraction]:
    return [Fraction(i, k - 1) for i in range(k)] if k > 1 else [Fraction(0)]


def is_completely_regular(top: PreTopology, z: int, c: int):
    """Return ``(ok, levels)``; ``levels`` is an ordered partition of X, bottom block first."""
    if not top.is_closed(c):
        raise NotClosed(f"{top.universe.fmt(c)} is not closed", {"set": c})
    if c >> z & 1:
        raise PointInSet("the point lies in the closed set", {"z": z, "set": c})
    b = _clopen_split(top, z, c)
    if b is None:
        return False, None
    if b == top.universe.full:
        # C is empty; the constant map works
        return True, [b]
    return True, refine_levels(top, z, c, b)


def function_from_levels(n: int, levels: Sequence[int]) -> list[Fraction]:
    vals = level_values(len(levels))
    out = [Fraction(0)] * n
    for v, blk in zip(vals, levels):
        for x in elements(blk):
            out[x] = v
    return out


def is_precontinuous_function(top: PreTopology, values: Sequence) -> bool:
    """Every contiguous run of level sets (sorted by value) has open union."""
    distinct = sorted(set(values))
    blocks = []
    for v in distinct:
        blocks.append(sum(1 << x for x, w in enumerate(values) if w == v))
    for i in range(len(blocks)):
        acc = 0
        for j in range(i, len(blocks)):
            acc |= blocks[j]
            if acc not in top.member_set:
                return False
    return True


def functional_separation_witness(top: PreTopology):
    """First (z, closed C ∌ z) with no separating map, or None."""
    for c in top.closed_sets:
        for z in range(top.universe.size):
            if not c >> z & 1 and _clopen_split(top, z, c) is None:
                return {"z": z, "C": c}
    return None


def completely_regular_space(top: PreTopology) -> bool:
    if t1_witness(top) is not None:
        raise NotT1("complete regularity is defined for T1 spaces")
    return functional_separation_witness(top) is None


def separation_report(top: PreTopology) -> SeparationReport:
    w0, w1, w2 = t0_witness(top), t1_witness(top), t2_witness(top)
    wr = regular_witness(top)
    wc = functional_separation_witness(top)
    t1 = w1 is None
    wit = {}
    for key, w in (("t0", w0), ("t1", w1), ("t2", w2)):
        if w is not None:
            wit[key] = w
    if not t1:
        wit["regular"] = {"because": ["t1"]}
        wit["completely_regular"] = {"because": ["t1"]}
    else:
        if wr is not None:
            wit["regular"] = wr
        if wc is not None:
            wit["completely_regular"] = wc
    sep = None
    if t1 and wc is None:
        # sample separating map for the first nontrivial pair, for display
        for c in top.closed_sets:
            if c == 0:
                continue
            z = next((x for x in range(top.universe.size) if not c >> x & 1), None)
            if z is not None:
                sep = {"z": z, "C": c, "levels": is_completely_regular(top, z, c)[1]}
                break
    return SeparationReport(
        t0=w0 is None,
        t1=t1,
        t2=w2 is None,
        regular=t1 and wr is None,
        completely_regular=t1 and wc is None,
        witnesses=wit,
        separating_function=sep,
    )
