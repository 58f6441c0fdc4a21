"""Groups carrying a pre-topology: classification, neighbourhood systems, atoms.

Most checks reduce to atoms (minimal open sets at a point).  On a finite space
every open set containing x contains an atom at x, so a condition of the form
"for every open W at x there is some open inside W with property P" only has
to be checked on atoms.  The literal forms live in the test oracles.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import AxiomsViolated, InvalidInput, NotPreTopGroup
from .group import FiniteGroup, enumerate_subgroups, is_normal, is_subgroup
from .setfam import PreTopology, SetFamily, canonical, component, elements, is_connected, traces, union_close

WITNESS_CAP = 64


@dataclass(frozen=True, eq=False)
class PreTopGroup:
    group: FiniteGroup
    topology: PreTopology

    def __post_init__(self):
        if self.group.universe.labels != self.topology.universe.labels:
            raise InvalidInput("group and pre-topology live on different universes")

    def __eq__(self, other):
        return (
            isinstance(other, PreTopGroup)
            and self.group == other.group
            and self.topology.members == other.topology.members
        )

    def __hash__(self):
        return hash((self.group, self.topology.members))

    @property
    def e(self) -> int:
        return self.group.identity

    @property
    def opens(self) -> frozenset:
        return self.topology.member_set

    def is_open(self, s: int) -> bool:
        return s in self.topology.member_set

    @cached_property
    def opens_at_e(self) -> tuple[int, ...]:
        bit = 1 << self.e
        return tuple(u for u in self.topology.members if u & bit)

    @property
    def atoms(self) -> tuple[tuple[int, ...], ...]:
        return self.topology.atoms

    @cached_property
    def atoms_e(self) -> tuple[int, ...]:
        return self.topology.atoms[self.e]

    @cached_property
    def report(self) -> "ClassificationReport":
        return classify(self)

    @cached_property
    def subgroups(self) -> tuple[int, ...]:
        return enumerate_subgroups(self.group)

    def closure(self, s: int) -> int:
        return self.topology.closure(s)


@dataclass(frozen=True)
class ClassificationReport:
    flags: dict
    witnesses: dict

    def __getattr__(self, name):
        try:
            return self.__dict__["flags"][name]
        except KeyError:
            raise AttributeError(name) from None


FLAG_ORDER = (
    "right_ptg", "left_ptg", "semi", "inverse_continuous", "quasi", "para",
    "pretopological", "square_root_condition", "symmetric_condition", "strongly",
    "symmetrically", "almost", "intersection_closed", "topological",
)


class _Collector:
    def __init__(self):
        self.records: list = []
        self.count = 0

    def add(self, rec: dict):
        self.count += 1
        if len(self.records) < WITNESS_CAP:
            self.records.append(rec)

    @property
    def ok(self) -> bool:
        return self.count == 0


def classify(ptg: PreTopGroup) -> ClassificationReport:
    g = ptg.group
    top = ptg.topology
    opens = top.member_set
    n = g.order
    atoms = top.atoms

    right, left, inv = _Collector(), _Collector(), _Collector()
    for u in top.members:
        for x in range(n):
            ur = g.rmul(u, x)
            if ur not in opens:
                right.add({"U": u, "g": x, "image": ur})
            ul = g.lmul(x, u)
            if ul not in opens:
                left.add({"U": u, "g": x, "image": ul})
        ui = g.setinv(u)
        if ui not in opens:
            inv.add({"U": u, "image": ui})

    # joint continuity: for each (x, y) every atom W at xy must contain A·B
    # for some atoms A at x, B at y
    para = _Collector()
    for x in range(n):
        for y in range(n):
            prods = [g.setmul(a, b) for a in atoms[x] for b in atoms[y]]
            for w in atoms[g.table[x][y]]:
                if not any(p & ~w == 0 for p in prods):
                    para.add({"W": w, "x": x, "y": y})

    sqrt, sym = _Collector(), _Collector()
    for a in ptg.atoms_e:
        if not any(g.setmul(b, b) & ~a == 0 for b in ptg.atoms_e):
            sqrt.add({"U": a})
        if g.setinv(a) != a:
            sym.add({"U": a})

    # distinct atoms at one point meet in a non-open set, and conversely a
    # union-closed family with unique atoms is intersection-closed
    inter = _Collector()
    seen = set()
    for x in range(n):
        for u, v in combinations(atoms[x], 2):
            if (u, v) not in seen:
                seen.add((u, v))
                inter.add({"U": u, "V": v, "intersection": u & v})

    f = {
        "right_ptg": right.ok,
        "left_ptg": left.ok,
        "inverse_continuous": inv.ok,
        "para": para.ok,
        "square_root_condition": sqrt.ok,
        "symmetric_condition": sym.ok,
        "intersection_closed": inter.ok,
    }
    f["semi"] = f["right_ptg"] and f["left_ptg"]
    f["quasi"] = f["semi"] and f["inverse_continuous"]
    f["pretopological"] = f["para"] and f["inverse_continuous"]
    f["strongly"] = f["pretopological"] and f["square_root_condition"]
    f["symmetrically"] = f["pretopological"] and f["symmetric_condition"]
    f["almost"] = f["strongly"] and f["symmetrically"]
    f["topological"] = f["pretopological"] and f["intersection_closed"]
    flags = {k: f[k] for k in FLAG_ORDER}

    raw = {
        "right_ptg": right, "left_ptg": left, "inverse_continuous": inv, "para": para,
        "square_root_condition": sqrt, "symmetric_condition": sym, "intersection_closed": inter,
    }
    derived = {
        "semi": ("right_ptg", "left_ptg"),
        "quasi": ("semi", "inverse_continuous"),
        "pretopological": ("para", "inverse_continuous"),
        "strongly": ("pretopological", "square_root_condition"),
        "symmetrically": ("pretopological", "symmetric_condition"),
        "almost": ("strongly", "symmetrically"),
        "topological": ("pretopological", "intersection_closed"),
    }
    witnesses = {}
    for k in FLAG_ORDER:
        if flags[k]:
            continue
        if k in raw:
            witnesses[k] = {"count": raw[k].count, "records": raw[k].records}
        else:
            witnesses[k] = {"because": [p for p in derived[k] if not flags[p]]}
    return ClassificationReport(flags, witnesses)


# neighbourhood systems at the identity

@dataclass(frozen=True)
class NbhdSystem:
    group: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        ms = canonical(self.members)
        object.__setattr__(self, "members", ms)
        bit = 1 << self.group.identity
        if not ms:
            raise InvalidInput("neighbourhood system must be nonempty")
        for u in ms:
            if not u & bit or u & ~self.group.full:
                raise InvalidInput("every member must contain the identity")


@dataclass(frozen=True)
class AxiomsReport:
    holds: tuple[bool, bool, bool, bool]
    witnesses: dict

    @property
    def all(self) -> bool:
        return all(self.holds)


def nbhd_axioms_report(system: NbhdSystem) -> AxiomsReport:
    g = system.group
    ms = system.members
    wit: dict = {}
    holds = [True, True, True, True]

    def fail(i, rec):
        holds[i - 1] = False
        wit.setdefault(i, rec)

    for u in ms:
        if not any(g.setmul(v, w) & ~u == 0 for v in ms for w in ms):
            fail(1, {"U": u})
            break
    for u in ms:
        if not any(g.setinv(v) & ~u == 0 for v in ms):
            fail(2, {"U": u})
            break
    for u in ms:
        bad = next((x for x in elements(u) if not any(g.rmul(v, x) & ~u == 0 for v in ms)), None)
        if bad is not None:
            fail(3, {"U": u, "g": bad})
            break
    for u in ms:
        bad = next((x for x in range(g.order) if not any(g.conj(x, v) & ~u == 0 for v in ms)), None)
        if bad is not None:
            fail(4, {"U": u, "g": bad})
            break
    return AxiomsReport(tuple(holds), wit)


def topology_from_system(g: FiniteGroup, members: Iterable[int]) -> PreTopology:
    gens = {g.rmul(u, a) for u in members for a in range(g.order)}
    return union_close(g.universe, sorted(gens))


def local_open_sets(g: FiniteGroup, members: Sequence[int]) -> tuple[int, ...]:
    """{W : every x in W has some U in the system with Ux ⊆ W}, by scanning all subsets."""
    out = []
    for w in range(g.full + 1):
        if all(any(g.rmul(u, x) & ~w == 0 for u in members) for x in elements(w)):
            out.append(w)
    return canonical(out)


def construct_from_nbhd_system(system: NbhdSystem, verify: bool = True) -> PreTopGroup:
    rep = nbhd_axioms_report(system)
    if not rep.all:
        bad = rep.holds.index(False) + 1
        raise AxiomsViolated(f"axiom ({bad}) fails", {"axiom": bad, **rep.witnesses[bad]})
    g = system.group
    top = topology_from_system(g, system.members)
    if verify and top.members != local_open_sets(g, system.members):
        raise RuntimeError("reconstruction identity failed")
    return PreTopGroup(g, top)


def atoms_at(obj, x: int) -> SetFamily:
    top = obj.topology if isinstance(obj, PreTopGroup) else obj
    return SetFamily(top.universe, top.atoms[x])


def _require_pretop(ptg: PreTopGroup):
    if not ptg.report.pretopological:
        raise NotPreTopGroup("instance is not a pre-topological group")


def check_finite_props(ptg: PreTopGroup) -> dict:
    _require_pretop(ptg)
    g = ptg.group
    square_root = all(any(g.setmul(v, v) & ~u == 0 for v in ptg.opens_at_e) for u in ptg.opens_at_e)
    atoms = []
    for a in ptg.atoms_e:
        powers = all(g.power(a, k) == a for k in range(2, g.order + 1))
        atoms.append({"U": a, "inverse_is_atom": g.setinv(a) in ptg.atoms_e, "powers_stable": powers})
    ok = square_root and all(r["inverse_is_atom"] and r["powers_stable"] for r in atoms)
    return {"square_root": square_root, "atoms": atoms, "ok": ok}


def almost_characterization(ptg: PreTopGroup) -> bool:
    _require_pretop(ptg)
    g = ptg.group
    at_e = ptg.opens_at_e
    return all(any(g.setmul(v, g.setinv(v)) & ~u == 0 for v in at_e) for u in at_e)


@dataclass(frozen=True)
class ComponentReport:
    component: int
    is_subgroup: bool
    closed: bool
    invariant: bool
    connected_space: bool
    generation: bool | None

    @property
    def ok(self) -> bool:
        return self.is_subgroup and self.closed and self.invariant and self.generation is not False


def generates_by_powers(g: FiniteGroup, u: int) -> bool:
    s = u | g.setinv(u)
    acc, p = s, s
    for _ in range(g.order):
        p = g.setmul(p, s)
        acc |= p
    return acc == g.full


def component_of_identity(ptg: PreTopGroup) -> ComponentReport:
    g = ptg.group
    c = component(ptg.topology, ptg.e)
    sub = is_subgroup(g, c)
    connected = is_connected(ptg.topology, g.full)
    gen = None
    if connected:
        gen = all(generates_by_powers(g, u) for u in ptg.opens_at_e)
    return ComponentReport(
        component=c,
        is_subgroup=sub,
        closed=ptg.topology.is_closed(c),
        invariant=sub and is_normal(g, c),
        connected_space=connected,
        generation=gen,
    )


def translates(g: FiniteGroup, u: int, side: str = "left") -> tuple[int, ...]:
    if side == "left":
        return canonical(g.lmul(x, u) for x in range(g.order))
    return canonical(g.rmul(u, x) for x in range(g.order))


def min_translate_cover(g: FiniteGroup, u: int) -> int:
    ts = translates(g, u)
    for k in range(1, len(ts) + 1):
        for combo in combinations(ts, k):
            acc = 0
            for t in combo:
                acc |= t
            if acc == g.full:
                return k
    raise RuntimeError("translates of a set containing e always cover the group")


def covering_index(ptg: PreTopGroup) -> int:
    return max(min_translate_cover(ptg.group, u) for u in ptg.atoms_e)


def is_discrete_subset(ptg: PreTopGroup, s: int) -> bool:
    tr = traces(ptg.topology, s)
    return all(1 << x in tr for x in elements(s))


def is_u_disjoint(g: FiniteGroup, b: int, u: int) -> bool:
    for a in elements(b):
        if g.lmul(a, u) & b & ~(1 << a):
            return False
    return True


def family_is_discrete(g: FiniteGroup, b: int, v: int) -> bool:
    """Every xV meets at most one of the translates aV, a in B."""
    tv = [g.lmul(a, v) for a in elements(b)]
    for x in range(g.order):
        xv = g.lmul(x, v)
        if sum(1 for t in tv if t & xv) > 1:
            return False
    return True


def discrete_subgroup_report(ptg: PreTopGroup) -> list[dict]:
    g = ptg.group
    almost = ptg.report.almost
    sym_at_e = [v for v in ptg.opens_at_e if g.setinv(v) == v]
    out = []
    for h in ptg.subgroups:
        disc = is_discrete_subset(ptg, h)
        closed = ptg.topology.is_closed(h)
        opn = ptg.is_open(h)
        lemma = None
        if almost and disc:
            lemma = True
            for u in ptg.atoms_e:
                if u & h != 1 << ptg.e:
                    continue
                if not is_u_disjoint(g, h, u):
                    lemma = False
                for v in sym_at_e:
                    if g.power(v, 4) & ~u == 0 and not family_is_discrete(g, h, v):
                        lemma = False
        out.append({
            "H": h, "discrete": disc, "closed": closed, "open": opn,
            "open_implies_closed": (not opn) or closed, "discrete_family": lemma,
        })
    return out


# further checks used by the theorem registry

def translation_prebase_ok(ptg: PreTopGroup) -> bool:
    g = ptg.group
    for x in range(g.order):
        shifted = [g.lmul(x, b) for b in ptg.atoms_e]
        if not all(ptg.is_open(s) for s in shifted):
            return False
        bit = 1 << x
        for w in ptg.topology.members:
            if w & bit and not any(s & ~w == 0 for s in shifted):
                return False
    return True


def closure_estimate_ok(ptg: PreTopGroup) -> bool:
    g = ptg.group
    for a in range(1, g.full + 1):
        cl = ptg.closure(a)
        meet = g.full
        for u in ptg.atoms_e:
            au = g.setmul(a, u)
            if cl & ~au:
                return False
            meet &= au
        if meet != cl:
            return False
    return True


def subgroup_closure_ok(ptg: PreTopGroup) -> bool:
    return all(is_subgroup(ptg.group, ptg.closure(h)) for h in ptg.subgroups)


def symmetric_closure_ok(ptg: PreTopGroup) -> bool:
    g = ptg.group
    for a in range(1, g.full + 1):
        if g.setinv(a) == a:
            cl = ptg.closure(a)
            if g.setinv(cl) != cl:
                return False
    return True


def vxv_condition(ptg: PreTopGroup):
    """For every x and open U ∋ x some open V ∋ e has VxV ⊆ U; returns (ok, witness)."""
    g = ptg.group
    for x in range(g.order):
        for c in ptg.atoms[x]:
            if not any(g.setmul(g.rmul(v, x), v) & ~c == 0 for v in ptg.atoms_e):
                return False, {"x": x, "U": c}
    return True, None


def center(g: FiniteGroup) -> int:
    return sum(1 << z for z in range(g.order) if all(g.table[z][x] == g.table[x][z] for x in range(g.order)))


def inverse_from_local_condition(ptg: PreTopGroup) -> bool:
    """∀U ∋ e open ∃V ∋ e open with V⁻¹ ⊆ U."""
    g = ptg.group
    return all(any(g.setinv(v) & ~u == 0 for v in ptg.atoms_e) for u in ptg.atoms_e)
