from itertools import combinations

from conftest import m
import oracles
import pytest

from pretopgroups.errors import NotClosed, NotT1, PointInSet
from pretopgroups.explore.enumerate import enumerate_pretopologies
from pretopgroups.separation import (
    completely_regular_space, function_from_levels, is_completely_regular, is_precontinuous_function,
    separation_report,
)
from pretopgroups.setfam import Universe, discrete, indiscrete

Z6 = Universe.range(6)


def brute_separating_map(top, z, c):
    """Search every assignment of values {0, 1/2, 1}: f(z)=0, f=1 on C, every run of levels open."""
    n = top.universe.size
    from itertools import product
    for vals in product((0, 1, 2), repeat=n):
        if vals[z] != 0 or any(vals[x] != 2 for x in range(n) if c >> x & 1):
            continue
        if is_precontinuous_function(top, vals):
            return True
    return False


def literal_regular(top):
    opens = oracles.opens_of(top)
    pts = frozenset(top.universe.labels)
    closed = [pts - u for u in opens]
    for a in closed:
        for z in pts - a:
            if not any(z in u and a <= v and not u & v for u in opens for v in opens):
                return False
    return True


def test_p6(P6):
    r = separation_report(P6.topology)
    assert r.t0 and r.t1 and r.t2 and r.regular and r.completely_regular


def test_indiscrete_fails_everything():
    r = separation_report(indiscrete(Universe.range(3)))
    assert not (r.t0 or r.t1 or r.t2 or r.regular or r.completely_regular)


def test_p4(P4):
    r = separation_report(P4.topology)
    assert r.t0 and not r.t2


def test_complete_regularity_levels(P6):
    ok, levels = is_completely_regular(P6.topology, 0, m(Z6, 1, 4))
    assert ok
    assert levels == [m(Z6, 0, 3), m(Z6, 2, 5), m(Z6, 1, 4)]
    vals = function_from_levels(6, levels)
    assert is_precontinuous_function(P6.topology, vals)
    assert [str(v) for v in vals] == ["0", "1", "1/2", "0", "1", "1/2"]


def test_complete_regularity_trivial_spaces():
    x = Universe.range(3)
    assert is_completely_regular(discrete(x), 0, 0b110)[0]
    assert is_completely_regular(indiscrete(x), 0, 0)[0]  # C empty: constant map
    assert completely_regular_space(discrete(x))


def test_complete_regularity_errors(P6):
    with pytest.raises(NotClosed):
        is_completely_regular(P6.topology, 0, m(Z6, 1, 2))
    with pytest.raises(PointInSet):
        is_completely_regular(P6.topology, 1, m(Z6, 1, 4))
    with pytest.raises(NotT1):
        completely_regular_space(indiscrete(Universe.range(2)))


def test_report_matches_literal_definitions():
    for n in (1, 2, 3, 4):
        for top in enumerate_pretopologies(n):
            opens = oracles.opens_of(top)
            pts = list(top.universe.labels)
            r = separation_report(top)
            t0 = all(any((x in u) != (y in u) for u in opens) for x, y in combinations(pts, 2))
            t1 = all(any(x in u and y not in u for u in opens) for x in pts for y in pts if x != y)
            assert r.t0 == t0
            assert r.t1 == t1
            assert r.t2 == oracles.is_t2(opens, pts)
            assert r.regular == (t1 and literal_regular(top))


def test_functional_separation_matches_three_level_search():
    # three values suffice when a separating map exists at all: {B, rest} already works
    for top in enumerate_pretopologies(3):
        for c in top.closed_sets:
            for z in range(3):
                if not c >> z & 1:
                    assert is_completely_regular(top, z, c)[0] == brute_separating_map(top, z, c)
