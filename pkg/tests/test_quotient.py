from conftest import m
import pytest

from pretopgroups.errors import NotClosedSubgroup, NotPreTopGroup, NotSurjective
from pretopgroups.explore.enumerate import enumerate_group_pretopologies
from pretopgroups.fixtures import discrete_group, indiscrete_group
from pretopgroups.group import GroupHom, cyclic, group_catalog
from pretopgroups.quotient import (
    closure_sandwich_ok, coset_space, dense_restriction_open, discrete_iff_open_check,
    first_isomorphism_check, isomorphic, quotient_group_pretop, second_isomorphism_ok, third_isomorphism_ok,
)

Z6 = cyclic(6)


def test_p6_quotients(P6):
    q = coset_space(P6, m(Z6, 0, 3))
    assert len(q.cosets) == 3 and q.is_discrete
    q2 = coset_space(P6, m(Z6, 0, 2, 4))
    assert len(q2.cosets) == 2 and q2.is_discrete
    assert len(coset_space(P6, Z6.full).cosets) == 1


def test_discrete_iff_open(P6):
    assert discrete_iff_open_check(P6, m(Z6, 0, 3))
    assert discrete_iff_open_check(indiscrete_group(Z6), 1)
    d = discrete_group(Z6)
    assert all(discrete_iff_open_check(d, h) for h in d.subgroups)


def test_quotient_group(P6, P4):
    qp = quotient_group_pretop(P6, m(Z6, 0, 3))
    assert qp.group.order == 3 and len(qp.topology) == 8 and qp.report.pretopological
    assert len(quotient_group_pretop(discrete_group(Z6), m(Z6, 0, 3)).topology) == 8
    assert quotient_group_pretop(indiscrete_group(Z6), Z6.full).group.order == 1
    with pytest.raises(NotPreTopGroup):
        quotient_group_pretop(P4, m(cyclic(4), 0, 2))
    with pytest.raises(NotClosedSubgroup):
        quotient_group_pretop(indiscrete_group(Z6), 1)


def test_first_isomorphism(P6):
    z3 = discrete_group(cyclic(3))
    ok, rep = first_isomorphism_check(GroupHom(Z6, z3.group, tuple(x % 3 for x in range(6))), P6, z3)
    assert ok and rep["kernel"] == m(Z6, 0, 3)
    ok, rep = first_isomorphism_check(GroupHom(Z6, Z6, tuple(range(6))), P6, P6)
    assert ok and rep["kernel"] == 1
    triv = indiscrete_group(cyclic(1))
    ok, rep = first_isomorphism_check(GroupHom(Z6, triv.group, (0,) * 6), P6, triv)
    assert ok and rep["kernel"] == Z6.full
    with pytest.raises(NotSurjective):
        first_isomorphism_check(GroupHom(Z6, Z6, (0,) * 6), P6, P6)


def test_isomorphic(P6, P4):
    assert isomorphic(P6, P6)
    assert not isomorphic(P4, discrete_group(cyclic(4)))


def test_quotient_theorems_on_enumerated_instances():
    for g in group_catalog(1, 6):
        for p in enumerate_group_pretopologies(g):
            for h in p.subgroups:
                q = coset_space(p, h)
                assert q.pi_open and q.local_prebase_ok
                assert discrete_iff_open_check(p, h)
                assert closure_sandwich_ok(p, q)
                if p.topology.is_closed(h):
                    assert q.t1


def test_isomorphism_theorems_on_enumerated_instances():
    from pretopgroups.group import is_normal
    for g in group_catalog(1, 6):
        for p in enumerate_group_pretopologies(g):
            closed_normal = [h for h in p.subgroups if is_normal(g, h) and p.topology.is_closed(h)]
            for h in closed_normal:
                for mm in p.subgroups:
                    assert third_isomorphism_ok(p, h, mm)


def test_second_isomorphism_example(P6):
    # G/{0,3} is Z3 discrete; its only closed normal subgroups are trivial and everything
    assert second_isomorphism_ok(P6, m(Z6, 0, 3), 1)
    assert second_isomorphism_ok(P6, m(Z6, 0, 3), 0b111)


def test_dense_restriction_counterexample():
    """A dense subgroup K whose restricted quotient map is not open."""
    from pretopgroups.group import catalog_group
    from pretopgroups.ptg import NbhdSystem, construct_from_nbhd_system
    g = catalog_group("Z2xZ2xZ2")
    u = g.universe
    c = next(x for x in range(8) if g.labels[x] == "((0,0),1)")
    b = next(x for x in range(8) if g.labels[x] == "((0,1),0)")
    a = next(x for x in range(8) if g.labels[x] == "((1,0),0)")
    p = construct_from_nbhd_system(NbhdSystem(g, (1 | 1 << c, 1 | 1 << b)))
    h = 1 | 1 << a
    k = 1 | 1 << g.table[b][c] | 1 << g.table[a][c] | 1 << g.table[a][b]
    assert p.topology.is_closed(h)
    assert p.closure(k) == u.full
    assert not dense_restriction_open(p, h, k)
