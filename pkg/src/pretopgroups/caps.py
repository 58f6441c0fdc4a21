"""Brute-force size limits.

Defaults can be overridden with ``PRETOP_CAP_OVERRIDE="component=12,cosets=20"``.
"""
import os

from .errors import CapExceeded, InvalidInput

DEFAULTS = {
    "component": 10,        # points scanned by the connected-subset search
    "product": 64,          # points of a materialized product space
    "product_family": 1 << 16,
    "subgroups": 32,        # group order for subgroup enumeration
    "cosets": 16,           # coset count for quotient materialization
    "isomorphism": 12,      # group order for isomorphism search
    "enumerate_n": 5,       # points for enumerating all pre-topologies
    "group_full": 8,        # group order for unfiltered group enumeration
    "group_filtered": 12,   # group order when a classification filter is given
    "exhaustive_nbhd": 6,   # group order for the literal antichain scan
}


def _overrides() -> dict:
    raw = os.environ.get("PRETOP_CAP_OVERRIDE", "").strip()
    out = {}
    if not raw:
        return out
    for part in raw.split(","):
        if not part.strip():
            continue
        key, sep, value = part.partition("=")
        key = key.strip()
        if not sep or key not in DEFAULTS:
            raise InvalidInput(f"bad PRETOP_CAP_OVERRIDE entry: {part!r}")
        try:
            out[key] = int(value)
        except ValueError:
            raise InvalidInput(f"bad PRETOP_CAP_OVERRIDE value: {part!r}") from None
    return out


def cap(name: str) -> int:
    return _overrides().get(name, DEFAULTS[name])


def require(name: str, value: int, what: str = "") -> None:
    limit = cap(name)
    if value > limit:
        raise CapExceeded(f"{what or name}: {value} exceeds cap {limit}", {"cap": name, "limit": limit, "value": value})
