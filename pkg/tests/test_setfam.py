from conftest import m
import oracles
import pytest

from pretopgroups.errors import InvalidInput, NotPreTopology, UniverseNotCovered
from pretopgroups.fixtures import P6_SETS
from pretopgroups.setfam import (
    PreTopology, SetFamily, Universe, cardinal_report, closure, component, discrete, indiscrete,
    interior, is_connected, is_prebase, is_product_open, product_universe, is_pretopology, is_resolvable, minimal_prebase, product,
    subspace, union_close,
)

Z6 = Universe.range(6)


def fam(uni, sets):
    return [uni.mask(str(x) for x in s) for s in sets]


def test_union_close_generators_give_p6():
    gens = [[0, 3], [1, 4], [2, 5], [0, 2, 4], [1, 3, 5]]
    top = union_close(Z6, fam(Z6, gens))
    assert len(top) == 22
    assert set(top.members) == set(fam(Z6, P6_SETS))


def test_union_close_trivial_cases():
    x = Universe.range(3)
    assert union_close(x, [x.full]).members == (0, x.full)
    assert len(union_close(x, [1, 2, 4])) == 8


def test_is_pretopology_witness():
    u = Universe.range(2)
    ok, w = is_pretopology(SetFamily.of(u, [0, 1, 2]))
    assert not ok
    assert w["union"] == 3


def test_p6_and_p4_are_pretopologies(P6, P4):
    assert is_pretopology(P6.topology)[0]
    assert is_pretopology(P4.topology)[0]


def test_pretopology_checks_are_eager():
    u = Universe.range(2)
    with pytest.raises(NotPreTopology):
        PreTopology.of(u, [0, 1, 2])
    with pytest.raises(InvalidInput):
        PreTopology.of(u, [0, 1])


def test_prebase(P6):
    gens = fam(Z6, [[0, 3], [1, 4], [2, 5], [0, 2, 4], [1, 3, 5]])
    assert is_prebase(SetFamily.of(Z6, gens), P6.topology)
    assert is_prebase(P6.topology, P6.topology)
    two = Universe.range(2)
    assert not is_prebase(SetFamily.of(two, [3]), discrete(two))


def test_minimal_prebase(P6, P4):
    mp = minimal_prebase(P6.topology)
    assert sorted(mp.members) == sorted(fam(Z6, [[0, 3], [1, 4], [2, 5], [0, 2, 4], [1, 3, 5]]))
    assert len(minimal_prebase(P4.topology)) == 4
    assert all(s.bit_count() == 3 for s in minimal_prebase(P4.topology))
    x = Universe.range(4)
    assert minimal_prebase(indiscrete(x)).members == (x.full,)


def test_weight_matches_oracle_on_small_spaces():
    from pretopgroups.explore.enumerate import enumerate_pretopologies
    for top in enumerate_pretopologies(4):
        assert len(minimal_prebase(top)) == oracles.weight(oracles.opens_of(top))


def test_interior_and_closure(P6):
    t = P6.topology
    assert closure(t, m(Z6, 0)) == m(Z6, 0)
    assert interior(t, m(Z6, 0, 3, 4)) == m(Z6, 0, 3)
    assert closure(t, Z6.full) == Z6.full
    assert interior(t, 0) == 0


def test_closure_matches_literal_definition():
    from pretopgroups.explore.enumerate import enumerate_pretopologies
    for top in enumerate_pretopologies(3):
        opens = oracles.opens_of(top)
        pts = set(top.universe.labels)
        for s in range(top.universe.full + 1):
            lit = oracles.closure(opens, pts, frozenset(top.universe.labels_of(s)))
            assert set(top.universe.labels_of(top.closure(s))) == lit


def test_subspace(P6):
    s = m(Z6, 0, 3)
    sub = subspace(P6.topology, s)
    assert len(sub) == 4
    x = Universe.range(4)
    assert len(subspace(discrete(x), 0b0111)) == 8
    assert len(subspace(indiscrete(x), 0b0111)) == 2


def test_connectedness(P6):
    assert component(P6.topology, 0) == 1
    x = Universe.range(3)
    assert is_connected(indiscrete(x), x.full)
    assert not is_connected(P6.topology, m(Z6, 0, 3))


def test_cardinals_of_p6(P6):
    r = cardinal_report(P6.topology)
    assert r.weight == 5
    assert r.character[0] == 2
    assert r.cellularity == 3
    assert r.density == 3
    assert r.dense_set == m(Z6, 0, 1, 2)


@pytest.mark.parametrize("k", [1, 2, 4])
def test_cardinals_trivial_spaces(k):
    x = Universe.range(k)
    ri, rd = cardinal_report(indiscrete(x)), cardinal_report(discrete(x))
    assert (ri.weight, ri.cellularity, ri.density, set(ri.character)) == (1, 1, 1, {1})
    assert (rd.weight, rd.cellularity, rd.density, set(rd.character)) == (k, k, k, {1})


def test_resolvable(P6):
    ok, (a, b) = is_resolvable(P6.topology)
    assert ok and a & b == 0
    for u in P6.topology.nonempty:
        assert u & a and u & b
    assert not is_resolvable(discrete(Universe.range(3)))[0]
    assert is_resolvable(indiscrete(Universe.range(2)))[0]


def test_product():
    a, b = Universe.range(2), Universe.range(3)
    assert len(product(discrete(a), discrete(b))) == 64
    assert len(product(indiscrete(a), indiscrete(b))) == 2


def test_product_box_is_open(P6):
    t = P6.topology
    uni = product_universe(t, t)
    bx = uni.mask([f"({x},{y})" for x in "03" for y in "03"])
    assert is_product_open(t, t, bx)
    assert not is_product_open(t, t, uni.mask(["(0,0)", "(3,3)"]))


def test_product_open_agrees_with_materialized():
    a = union_close(Universe.range(2), [1, 3])
    b = union_close(Universe.range(3), [1, 6, 7])
    pr = product(a, b)
    for s in range(pr.universe.full + 1):
        assert is_product_open(a, b, s) == (s in pr.member_set)


def test_universe_errors():
    with pytest.raises(InvalidInput):
        Universe(("a", "a"))
    with pytest.raises(InvalidInput):
        Z6.mask(["7"])
