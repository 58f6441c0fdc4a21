"""Registry of theorems checked over enumerated instances.

Each record pairs a hypothesis with a conclusion.  A conclusion returns
``(ok, detail)`` where ``detail`` locates the first failure.  Entries marked
EXPERIMENTAL test finite analogues or claims that are known to be shaky; a
failure there is a finding, not a bug.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..group import FiniteGroup, is_normal, is_subgroup
from ..prenorm import (
    ONE, build_chain, construct_prenorm, dyadic_prenorm, is_precontinuous_prenorm, markov_separation,
    prenorm_axioms_witness, sandwich_witness, separating_values, ball,
)
from ..ptg import (
    PreTopGroup, almost_characterization, center, check_finite_props, component_of_identity,
    covering_index, family_is_discrete, inverse_from_local_condition, is_discrete_subset,
    is_u_disjoint, symmetric_closure_ok, translation_prebase_ok, vxv_condition,
)
from ..quotient import (
    closure_sandwich_ok, coset_space, dense_restriction_open, first_isomorphism_check,
    quotient_group_pretop_unchecked, second_isomorphism_ok, subgroup_ptg, third_isomorphism_ok,
)
from ..group import quotient_group
from ..separation import functional_separation_witness, is_precontinuous_function, separation_report
from ..setfam import cardinal_report, is_resolvable, subspace, elements

PROVEN = "PROVEN"
EXPERIMENTAL = "EXPERIMENTAL"


@dataclass(frozen=True)
class TheoremRecord:
    id: str
    hypothesis: Callable[[PreTopGroup], bool]
    conclusion: Callable[[PreTopGroup], tuple]
    statement: str
    status: str = PROVEN
    assumes: str = ""


# cached per-instance helpers

def _memo(ptg: PreTopGroup, key: str, fn):
    store = ptg.__dict__.setdefault("_memo", {})
    if key not in store:
        store[key] = fn()
    return store[key]


def sep(ptg: PreTopGroup):
    return _memo(ptg, "sep", lambda: separation_report(ptg.topology))


def closed_subgroups(ptg: PreTopGroup) -> tuple:
    return _memo(ptg, "closed_subgroups", lambda: tuple(h for h in ptg.subgroups if ptg.topology.is_closed(h)))


def normal_subgroups(ptg: PreTopGroup) -> tuple:
    return _memo(ptg, "normal_subgroups", lambda: tuple(h for h in ptg.subgroups if is_normal(ptg.group, h)))


def _flag(name):
    def hyp(ptg):
        return ptg.report.flags[name]
    hyp.__name__ = name
    return hyp


def _all(*names):
    def hyp(ptg):
        f = ptg.report.flags
        return all(f[n] for n in names)
    return hyp


def _ok(cond, detail=None):
    return (True, None) if cond else (False, detail or {})


def _first(items):
    for ok, detail in items:
        if not ok:
            return False, detail
    return True, None


# conclusions

def _t0_regular(ptg):
    s = sep(ptg)
    return _ok(s.regular, s.witnesses.get("regular"))


def _open_subgroup_closed(ptg):
    for h in ptg.subgroups:
        if ptg.is_open(h) and not ptg.topology.is_closed(h):
            return False, {"H": h}
    return True, None


def _square_root(ptg):
    return _ok(check_finite_props(ptg)["square_root"])


def _atom_powers(ptg):
    for rec in check_finite_props(ptg)["atoms"]:
        if not (rec["inverse_is_atom"] and rec["powers_stable"]):
            return False, rec
    return True, None


def _para_almost(ptg):
    return _ok(ptg.report.almost, {"flags": "almost"})


def _subgroup_closure(ptg):
    for h in ptg.subgroups:
        c = ptg.closure(h)
        if not is_subgroup(ptg.group, c):
            return False, {"H": h, "closure": c}
    return True, None


def _symmetric_closure(ptg):
    return _ok(symmetric_closure_ok(ptg))


def _closure_estimate(ptg):
    g = ptg.group
    side = "left" if ptg.report.left_ptg and ptg.report.inverse_continuous else "right"
    for a in range(1, g.full + 1):
        cl = ptg.closure(a)
        meet = g.full
        for u in ptg.atoms_e:
            au = g.setmul(a, u) if side == "left" else g.setmul(u, a)
            if cl & ~au:
                return False, {"A": a, "U": u, "side": side}
            meet &= au
        if meet != cl:
            return False, {"A": a, "intersection": meet, "closure": cl, "side": side}
    return True, None


def _left_inv_right(ptg):
    return _ok(ptg.report.right_ptg and ptg.report.quasi)


def _inverse_from_local(ptg):
    return _ok(ptg.report.quasi)


def _translation_prebase(ptg):
    return _ok(translation_prebase_ok(ptg))


def _quotients(ptg, subgroups):
    for h in subgroups:
        yield h, coset_space(ptg, h)


def _quotient_pi_open(ptg):
    for h, q in _quotients(ptg, closed_subgroups(ptg)):
        if not q.pi_open:
            return False, {"H": h, "property": "pi_open"}
        if not q.local_prebase_ok:
            return False, {"H": h, "property": "local_prebase"}
    return True, None


def _quotient_t1(ptg):
    for h, q in _quotients(ptg, closed_subgroups(ptg)):
        if not q.t1:
            return False, {"H": h}
    return True, None


def _quotient_translations(ptg):
    g = ptg.group
    for h, q in _quotients(ptg, closed_subgroups(ptg)):
        opens = q.topology.member_set
        for a in range(g.order):
            for w in q.topology.members:
                if q.image(g.lmul(a, q.preimage(w))) not in opens:
                    return False, {"H": h, "a": a, "W_in_quotient": q.universe.labels_of(w)}
    return True, None


def _discrete_iff_open(ptg):
    for h, q in _quotients(ptg, ptg.subgroups):
        if q.is_discrete != ptg.is_open(h):
            return False, {"H": h, "discrete": q.is_discrete, "open": ptg.is_open(h)}
    return True, None


def _quotient_regular(ptg):
    for h, q in _quotients(ptg, closed_subgroups(ptg)):
        s = separation_report(q.topology)
        if not s.regular:
            from ..io import render
            return False, {"H": h, "witness_in_quotient": render(s.witnesses.get("regular"), q.universe)}
    return True, None


def _closure_lemma(ptg):
    for h, q in _quotients(ptg, closed_subgroups(ptg)):
        if not closure_sandwich_ok(ptg, q):
            return False, {"H": h}
    return True, None


def _quotient_group(ptg):
    pre = ptg.report.pretopological
    for h in closed_subgroups(ptg):
        if not is_normal(ptg.group, h):
            continue
        qp = quotient_group_pretop_unchecked(ptg, h)
        if not qp.report.semi:
            return False, {"H": h, "property": "semi"}
        if pre and not qp.report.pretopological:
            return False, {"H": h, "property": "pretopological"}
    return True, None


def _projection_checks(ptg):
    for n in normal_subgroups(ptg):
        qp = quotient_group_pretop_unchecked(ptg, n)
        _, pi = quotient_group(ptg.group, n)
        yield n, pi, qp


def _first_iso(ptg):
    for n, pi, qp in _projection_checks(ptg):
        ok, rep = first_isomorphism_check(pi, ptg, qp)
        if not ok:
            return False, {"N": n, **{k: v for k, v in rep.items() if k != "kernel"}}
    return True, None


def _first_iso_kernel(ptg):
    for n, pi, qp in _projection_checks(ptg):
        _, rep = first_isomorphism_check(pi, ptg, qp)
        if not rep["kernel_closed"]:
            return False, {"N": n}
    return True, None


def _second_iso(ptg):
    for n in normal_subgroups(ptg):
        hq = quotient_group_pretop_unchecked(ptg, n)
        for h0 in hq.subgroups:
            if hq.topology.is_closed(h0) and is_normal(hq.group, h0):
                if not second_isomorphism_ok(ptg, n, h0):
                    return False, {"N": n, "H0_in_quotient": hq.group.universe.labels_of(h0)}
    return True, None


def _third_iso(ptg):
    for h in closed_subgroups(ptg):
        if not is_normal(ptg.group, h):
            continue
        for m in ptg.subgroups:
            if not third_isomorphism_ok(ptg, h, m):
                return False, {"H": h, "M": m}
    return True, None


def _almost_char(ptg):
    lit = almost_characterization(ptg)
    return _ok(lit == ptg.report.almost, {"criterion": lit, "almost": ptg.report.almost})


def _prenorm_chain(ptg, build=dyadic_prenorm):
    for u in ptg.opens_at_e:
        chain = build_chain(ptg, u)
        n = build(chain)
        w = prenorm_axioms_witness(n) or sandwich_witness(chain, n)
        if w is not None:
            return False, {"U": u, **w}
    return True, None


def _path_prenorm_chain(ptg):
    return _prenorm_chain(ptg, construct_prenorm)


def _markov(ptg):
    top = ptg.topology
    for u in ptg.opens_at_e:
        n = markov_separation(ptg, u)
        if prenorm_axioms_witness(n) is not None:
            return False, {"U": u, "reason": "prenorm axioms"}
        if not is_precontinuous_prenorm(ptg, n):
            return False, {"U": u, "reason": "not pre-continuous"}
        if ball(n, ONE) & ~u:
            return False, {"U": u, "reason": "unit ball escapes U"}
        for a in range(ptg.group.order):
            if not is_precontinuous_function(top, separating_values(n, a)):
                return False, {"U": u, "a": a, "reason": "separating map not pre-continuous"}
    return True, None


def _complete_regularity(ptg):
    w = functional_separation_witness(ptg.topology)
    if w is not None:
        return False, w
    s = sep(ptg)
    if s.t1 and not s.completely_regular:
        return False, {"reason": "T1 but not completely regular"}
    return True, None


def _component(ptg):
    r = component_of_identity(ptg)
    return _ok(r.is_subgroup and r.closed and r.invariant, {"component": r.component})


def _connected(ptg):
    return _memo(ptg, "connected", lambda: component_of_identity(ptg).connected_space)


def _generation(ptg):
    return _ok(component_of_identity(ptg).generation is True)


def _vxv(ptg):
    return vxv_condition(ptg)[0]


def _center(ptg):
    z = center(ptg.group)
    for k in normal_subgroups(ptg):
        if is_discrete_subset(ptg, k) and k & ~z:
            return False, {"K": k, "center": z}
    return True, None


def _u_disjoint_sets(g: FiniteGroup, u: int):
    """Maximal U-disjoint subsets (the lemma's conclusion is hereditary)."""
    n = g.order
    clash = [0] * n
    for a in range(n):
        au = g.lmul(a, u) & ~(1 << a)
        for b in elements(au):
            clash[a] |= 1 << b
            clash[b] |= 1 << a
    out = []

    def go(i, chosen, banned):
        if i == n:
            if all(clash[x] & chosen or chosen >> x & 1 for x in range(n)):
                out.append(chosen)
            return
        if not banned >> i & 1:
            go(i + 1, chosen | 1 << i, banned | clash[i])
        go(i + 1, chosen, banned)

    go(0, 0, 0)
    return out


def _discrete_family(ptg):
    g = ptg.group
    sym = [v for v in ptg.opens_at_e if g.setinv(v) == v]
    for v in sym:
        v4 = g.power(v, 4)
        targets = [u for u in ptg.opens_at_e if v4 & ~u == 0]
        minimal = [u for u in targets if not any(w != u and w & ~u == 0 for w in targets)]
        for u in minimal:
            for b in _u_disjoint_sets(g, u):
                if not is_u_disjoint(g, b, u):
                    raise RuntimeError("U-disjoint search returned a bad set")
                if not family_is_discrete(g, b, v):
                    return False, {"U": u, "V": v, "B": b}
    return True, None


def _resolvable(ptg):
    return _memo(ptg, "resolvable", lambda: is_resolvable(ptg.topology)[0])


def _resolvable_subgroup(ptg):
    if _resolvable(ptg):
        return True, None
    for h in ptg.subgroups:
        if is_resolvable(subspace(ptg.topology, h))[0]:
            return False, {"H": h}
    return True, None


def _resolvable_dense(ptg):
    if _resolvable(ptg):
        return True, None
    for h in ptg.subgroups:
        if h != ptg.group.full and ptg.closure(h) == ptg.group.full:
            return False, {"H": h}
    return True, None


def _resolvable_nonclosed(ptg):
    if _resolvable(ptg):
        return True, None
    for h in ptg.subgroups:
        if not ptg.topology.is_closed(h):
            return False, {"H": h}
    return True, None


def _ib_le_c(ptg):
    ib = covering_index(ptg)
    c = cardinal_report(ptg.topology).cellularity
    return _ok(ib <= c, {"covering_index": ib, "cellularity": c})


def _dense_restriction(ptg):
    full = ptg.group.full
    dense = [k for k in ptg.subgroups if ptg.closure(k) == full]
    for h in closed_subgroups(ptg):
        for k in dense:
            if not dense_restriction_open(ptg, h, k):
                return False, {"H": h, "K": k}
    return True, None


pretop = _flag("pretopological")


def _semi(ptg):
    return ptg.report.semi


def _left_or_right(ptg):
    return ptg.report.left_ptg or ptg.report.right_ptg


def _left_inv(ptg):
    return ptg.report.left_ptg and ptg.report.inverse_continuous


def _one_side_inv(ptg):
    return (ptg.report.left_ptg or ptg.report.right_ptg) and ptg.report.inverse_continuous


def _t0_pretop(ptg):
    return ptg.report.pretopological and sep(ptg).t0


def _semi_local_inverse(ptg):
    return ptg.report.semi and inverse_from_local_condition(ptg)


def _connected_pretop(ptg):
    return ptg.report.pretopological and _connected(ptg)


def _center_hyp(ptg):
    return _connected_pretop(ptg) and _vxv(ptg)


almost = _flag("almost")

DEFAULT_REGISTRY: tuple[TheoremRecord, ...] = (
    TheoremRecord("T0_REGULAR", _t0_pretop, _t0_regular,
                  "a T0 pre-topological group is regular", assumes="pretopological, T0"),
    TheoremRecord("OPEN_SUBGROUP_CLOSED", _left_or_right, _open_subgroup_closed,
                  "open subgroups of a right or left pre-topological group are closed", assumes="left or right"),
    TheoremRecord("FINITE_SQUARE_ROOT", pretop, _square_root,
                  "in a finite pre-topological group every U at e contains an open V at e with V² ⊆ U",
                  assumes="pretopological"),
    TheoremRecord("FINITE_ATOM_POWERS", pretop, _atom_powers,
                  "an atom U at e of a finite pre-topological group has U⁻¹ an atom and Uⁿ = U",
                  assumes="pretopological"),
    TheoremRecord("PARA_FINITE_ALMOST", _flag("para"), _para_almost,
                  "a finite para-pre-topological group is almost topological", assumes="para"),
    TheoremRecord("SUBGROUP_CLOSURE", _flag("quasi"), _subgroup_closure,
                  "the closure of a subgroup of a quasi-pre-topological group is a subgroup", assumes="quasi"),
    TheoremRecord("SYMMETRIC_CLOSURE", _flag("inverse_continuous"), _symmetric_closure,
                  "with continuous inversion the closure of a symmetric set is symmetric",
                  assumes="inverse_continuous"),
    TheoremRecord("CLOSURE_ESTIMATE", _one_side_inv, _closure_estimate,
                  "closure(A) ⊆ AU for U at e, and closure(A) is the meet of the AU (UA on the right side)",
                  assumes="left or right, inverse_continuous"),
    TheoremRecord("LEFT_INVERSE_RIGHT", _left_inv, _left_inv_right,
                  "a left pre-topological group with continuous inversion is right and quasi",
                  assumes="left, inverse_continuous"),
    TheoremRecord("INVERSE_FROM_LOCAL", _semi_local_inverse, _inverse_from_local,
                  "semi plus V⁻¹ ⊆ U locally at e gives a quasi-pre-topological group",
                  assumes="semi, local inverse condition"),
    TheoremRecord("TRANSLATION_PREBASE", pretop, _translation_prebase,
                  "left translates of a local pre-base at e form a local pre-base at each point",
                  assumes="pretopological"),
    TheoremRecord("QUOTIENT_PI_OPEN", _semi, _quotient_pi_open,
                  "for closed H the projection onto G/H is open and the π(xU) form a local pre-base",
                  assumes="semi"),
    TheoremRecord("QUOTIENT_T1", _semi, _quotient_t1,
                  "the coset space by a closed subgroup is T1", assumes="semi"),
    TheoremRecord("QUOTIENT_TRANSLATIONS", pretop, _quotient_translations,
                  "left translations of G/H are pre-homeomorphisms", assumes="pretopological"),
    TheoremRecord("QUOTIENT_GROUP", _semi, _quotient_group,
                  "G/H by a closed normal H is semi, and pre-topological when G is", assumes="semi"),
    TheoremRecord("DISCRETE_IFF_OPEN", pretop, _discrete_iff_open,
                  "G/H is discrete exactly when H is open", assumes="pretopological"),
    TheoremRecord("QUOTIENT_REGULAR", pretop, _quotient_regular,
                  "the coset space by a closed subgroup is regular", assumes="pretopological"),
    TheoremRecord("QUOTIENT_CLOSURE_LEMMA", pretop, _closure_lemma,
                  "WV ⊆ U at e implies closure(π(V)) ⊆ π(U)", assumes="pretopological"),
    TheoremRecord("FIRST_ISOMORPHISM", _semi, _first_iso,
                  "for an open pre-continuous homomorphism onto H the induced map G/N → H is a pre-isomorphism",
                  assumes="semi"),
    TheoremRecord("SECOND_ISOMORPHISM", _flag("left_ptg"), _second_iso,
                  "G/G₀ and H/H₀ are pre-isomorphic for H = G/N and H₀ closed normal", assumes="left"),
    TheoremRecord("THIRD_ISOMORPHISM", pretop, _third_iso,
                  "MH/H is pre-isomorphic to π(M) for H closed normal", assumes="pretopological"),
    TheoremRecord("ALMOST_CHARACTERIZATION", pretop, _almost_char,
                  "almost topological exactly when each U at e contains VV⁻¹ for an open V at e",
                  assumes="pretopological"),
    TheoremRecord("PRENORM_CHAIN", almost, _prenorm_chain,
                  "the chain prenorm satisfies the axioms and {N < 2⁻ⁿ} ⊆ Uₙ ⊆ {N ≤ 2·2⁻ⁿ}", assumes="almost"),
    TheoremRecord("MARKOV", almost, _markov,
                  "each U at e has a pre-continuous prenorm with unit ball inside U", assumes="almost"),
    TheoremRecord("COMPLETE_REGULARITY", almost, _complete_regularity,
                  "points and closed sets are separated by pre-continuous maps into [0,1]", assumes="almost"),
    TheoremRecord("COMPONENT", pretop, _component,
                  "the component of e is a closed invariant subgroup", assumes="pretopological"),
    TheoremRecord("CONNECTED_GENERATION", _connected_pretop, _generation,
                  "a connected group is generated by any open U at e together with U⁻¹",
                  assumes="pretopological, connected"),
    TheoremRecord("CENTER", _center_hyp, _center,
                  "under the VxV condition discrete normal subgroups of a connected group are central",
                  assumes="pretopological, connected, VxV condition"),
    TheoremRecord("DISCRETE_FAMILY_LEMMA", almost, _discrete_family,
                  "for V symmetric with V⁴ ⊆ U the translates aV over a U-disjoint B form a discrete family",
                  assumes="almost"),
    TheoremRecord("RESOLVABLE_SUBGROUP", pretop, _resolvable_subgroup,
                  "a group with a resolvable subgroup is resolvable", assumes="pretopological"),
    TheoremRecord("RESOLVABLE_DENSE_SUBGROUP", pretop, _resolvable_dense,
                  "a proper dense subgroup makes the group resolvable", assumes="pretopological"),
    TheoremRecord("RESOLVABLE_NONCLOSED_SUBGROUP", pretop, _resolvable_nonclosed,
                  "a non-closed subgroup makes the group resolvable", assumes="pretopological"),
    TheoremRecord("IB_LE_C_FINITE", pretop, _ib_le_c,
                  "covering index ≤ cellularity (finite analogue; suggestive only)",
                  status=EXPERIMENTAL, assumes="pretopological"),
    TheoremRecord("FIRST_ISO_KERNEL_CLOSED", _semi, _first_iso_kernel,
                  "the kernel of an open pre-continuous homomorphism is closed",
                  status=EXPERIMENTAL, assumes="semi"),
    TheoremRecord("PATH_PRENORM_SANDWICH", almost, _path_prenorm_chain,
                  "the shortest-path prenorm over level costs satisfies the same sandwich",
                  status=EXPERIMENTAL, assumes="almost"),
    TheoremRecord("DENSE_RESTRICTION_OPEN", almost, _dense_restriction,
                  "π restricted to a dense subgroup K is open onto π(K)",
                  status=EXPERIMENTAL, assumes="almost"),
)


def registry_by_id(registry=DEFAULT_REGISTRY) -> dict:
    return {t.id: t for t in registry}
