from itertools import permutations

import pytest

from pretopgroups.errors import NoIdentity, NoInverse, NotAssociative, NotNormal, NotSubgroup
from pretopgroups.group import (
    CATALOG_NAMES, GroupHom, automorphisms, catalog_group, cosets, cyclic, dihedral, direct_product,
    enumerate_subgroups, group_catalog, is_homomorphism, is_normal, is_subgroup, isomorphisms, kernel,
    quotient_group, subgroup_generated, validate_group,
)

Z6 = cyclic(6)


def mk(g, *xs):
    return g.universe.mask(str(x) for x in xs)


def brute_subgroups(g):
    out = set()
    for s in range(1, g.full + 1):
        pts = [x for x in range(g.order) if s >> x & 1]
        if g.identity in pts and all(g.table[a][g.inverse[b]] in pts for a in pts for b in pts):
            out.add(s)
    return out


def test_validate_tables():
    assert Z6.order == 6 and Z6.is_abelian
    with pytest.raises((NoInverse, NoIdentity, NotAssociative)):
        validate_group([[0, 1, 2], [1, 1, 2], [2, 2, 0]])
    with pytest.raises(NoIdentity):
        validate_group([[1, 0], [0, 0]])
    with pytest.raises(NotAssociative) as exc:
        validate_group([["e", "a", "b"], ["a", "e", "a"], ["b", "b", "e"]], ["e", "a", "b"])
    assert exc.value.detail == {"x": "a", "y": "a", "z": "b"}


def test_small_groups():
    assert cyclic(1).order == 1
    k = direct_product(cyclic(2), cyclic(2))
    assert k.order == 4 and all(o <= 2 for o in k.element_orders)


def test_subgroup_checks():
    assert not is_subgroup(Z6, mk(Z6, 0, 1, 5))
    assert is_subgroup(Z6, mk(Z6, 0, 3))
    assert subgroup_generated(Z6, mk(Z6, 2)) == mk(Z6, 0, 2, 4)


def test_cosets_and_quotient():
    h = mk(Z6, 0, 3)
    assert cosets(Z6, h) == (mk(Z6, 0, 3), mk(Z6, 1, 4), mk(Z6, 2, 5))
    q, pi = quotient_group(Z6, h)
    assert next(isomorphisms(q, cyclic(3)), None) is not None
    assert quotient_group(Z6, Z6.full)[0].order == 1
    assert next(isomorphisms(quotient_group(Z6, 1)[0], Z6), None) is not None


def test_normality():
    s3 = catalog_group("S3")
    refl = next(h for h in enumerate_subgroups(s3) if h.bit_count() == 2)
    assert not is_normal(s3, refl)
    with pytest.raises(NotNormal):
        quotient_group(s3, refl)
    with pytest.raises(NotSubgroup):
        cosets(Z6, mk(Z6, 0, 1))


def test_subgroup_counts():
    assert enumerate_subgroups(Z6) == (1, mk(Z6, 0, 3), mk(Z6, 0, 2, 4), Z6.full)
    assert len(enumerate_subgroups(cyclic(4))) == 3
    assert len(enumerate_subgroups(cyclic(1))) == 1


@pytest.mark.parametrize("name", [n for n in CATALOG_NAMES if catalog_group(n).order <= 8])
def test_subgroups_match_brute_force(name):
    g = catalog_group(name)
    assert set(enumerate_subgroups(g)) == brute_subgroups(g)


def test_homomorphisms():
    z3 = cyclic(3)
    mod3 = tuple(x % 3 for x in range(6))
    assert is_homomorphism(Z6, z3, mod3)
    assert kernel(GroupHom(Z6, z3, mod3)) == mk(Z6, 0, 3)
    triv = cyclic(1)
    assert kernel(GroupHom(Z6, triv, (0,) * 6)) == Z6.full
    assert not is_homomorphism(Z6, Z6, tuple((x + 1) % 6 for x in range(6)))


def test_catalog():
    orders = [g.order for g in group_catalog(1, 12)]
    # number of groups of each order up to isomorphism
    expected = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1, 12: 5}
    assert {n: orders.count(n) for n in expected} == expected


@pytest.mark.parametrize("g", [cyclic(4), direct_product(cyclic(2), cyclic(2)), dihedral(3), cyclic(6)])
def test_automorphisms_match_brute_force(g):
    brute = [p for p in permutations(range(g.order)) if is_homomorphism(g, g, p)]
    assert sorted(automorphisms(g)) == sorted(brute)


def test_catalog_groups_pairwise_non_isomorphic():
    gs = group_catalog(1, 8)
    for i, a in enumerate(gs):
        for b in gs[i + 1:]:
            if a.order == b.order:
                assert next(isomorphisms(a, b), None) is None
