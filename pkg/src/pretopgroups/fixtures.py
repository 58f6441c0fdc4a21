"""Built-in instances and fixture-name resolution."""
from __future__ import annotations

from .errors import InvalidInput
from .group import FiniteGroup, catalog_group, cyclic, CATALOG_NAMES
from .ptg import PreTopGroup
from .setfam import PreTopology, discrete, indiscrete

# open sets of the two mod-n examples, listed as printed
P6_SETS = [
    [], [0, 3], [1, 4], [2, 5], [0, 2, 4], [1, 3, 5], [0, 1, 3, 4], [0, 2, 3, 5], [0, 2, 3, 4],
    [0, 1, 3, 5], [1, 2, 4, 5], [0, 1, 2, 4], [1, 3, 4, 5], [0, 2, 4, 5], [1, 2, 3, 5],
    [0, 1, 2, 3, 4], [0, 1, 3, 4, 5], [0, 2, 3, 4, 5], [0, 1, 2, 3, 5], [0, 1, 2, 4, 5],
    [1, 2, 3, 4, 5], [0, 1, 2, 3, 4, 5],
]

P4_SETS = [[], [0, 1, 3], [0, 1, 2], [1, 2, 3], [0, 2, 3], [0, 1, 2, 3]]


def _from_sets(g: FiniteGroup, sets) -> PreTopGroup:
    top = PreTopology.of(g.universe, [g.universe.mask(map(str, s)) for s in sets])
    return PreTopGroup(g, top)


def p6() -> PreTopGroup:
    return _from_sets(cyclic(6), P6_SETS)


def p4() -> PreTopGroup:
    return _from_sets(cyclic(4), P4_SETS)


def group_from_name(desc: str) -> FiniteGroup:
    """``cyclic:n`` or a catalog name such as ``D4`` or ``Z2xZ2``."""
    kind, _, arg = desc.partition(":")
    if kind == "cyclic":
        try:
            return cyclic(int(arg))
        except ValueError:
            raise InvalidInput(f"bad cyclic order in {desc!r}") from None
    if desc in CATALOG_NAMES:
        return catalog_group(desc)
    raise InvalidInput(f"unknown group desc {desc!r}")


def discrete_group(g: FiniteGroup) -> PreTopGroup:
    return PreTopGroup(g, discrete(g.universe))


def indiscrete_group(g: FiniteGroup) -> PreTopGroup:
    return PreTopGroup(g, indiscrete(g.universe))


def fixture(name: str) -> PreTopGroup:
    if name == "P6":
        return p6()
    if name == "P4":
        return p4()
    kind, _, rest = name.partition(":")
    if kind == "discrete" and rest:
        return discrete_group(group_from_name(rest))
    if kind == "indiscrete" and rest:
        return indiscrete_group(group_from_name(rest))
    raise InvalidInput(f"unknown fixture {name!r}")


def fixtures() -> dict:
    return {"P6": p6(), "P4": p4()}
