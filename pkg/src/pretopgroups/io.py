"""Reading group and family files, and turning reports into JSON-ready values."""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema

from .errors import InvalidInput, SchemaError
from .group import FiniteGroup, catalog_group, cyclic, direct_product, validate_group, CATALOG_NAMES
from .setfam import PreTopology, SetFamily, Universe, elements

# keys whose integer values are subsets, and keys whose values are points
SET_KEYS = frozenset({
    "U", "V", "W", "A", "B", "C", "H", "K", "M", "N", "image", "intersection", "union", "set",
    "closure", "component", "center", "missing", "K_meet_H", "core",
})
POINT_KEYS = frozenset({"g", "x", "y", "z", "a"})


@lru_cache(maxsize=None)
def schema(name: str) -> dict:
    text = resources.files("pretopgroups").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def validate(data, name: str) -> None:
    v = jsonschema.Draft202012Validator(schema(name))
    err = jsonschema.exceptions.best_match(v.iter_errors(data))
    if err is not None:
        path = "/".join(str(p) for p in err.absolute_path) or "(root)"
        raise SchemaError(f"{name} schema: at {path}: {err.message}", {"path": path, "schema": name})


def load_json(path: str | Path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}",
                          {"line": exc.lineno, "column": exc.colno}) from None


# groups

def group_from_data(data) -> FiniteGroup:
    validate(data, "group")
    return _group(data)


def _group(data) -> FiniteGroup:
    if "cyclic" in data:
        return cyclic(data["cyclic"])
    if "product" in data:
        a, b = (_group(d) for d in data["product"])
        return direct_product(a, b, data.get("name"))
    if "catalog" in data:
        if data["catalog"] not in CATALOG_NAMES:
            raise InvalidInput(f"unknown catalog group {data['catalog']!r}")
        return catalog_group(data["catalog"])
    return validate_group(data["table"], data["elements"], data.get("name", ""))


def load_group(path) -> FiniteGroup:
    return group_from_data(load_json(path))


# families

def family_from_data(data, universe: Universe | None = None) -> tuple[Universe, list[int]]:
    validate(data, "family")
    labels = [str(x) for x in data["universe"]]
    if len(set(labels)) != len(labels):
        raise InvalidInput("duplicate labels in universe")
    if universe is None:
        universe = Universe(tuple(labels))
    elif set(labels) != set(universe.labels):
        raise InvalidInput("family universe does not match the group's elements")
    masks = []
    for i, s in enumerate(data["sets"]):
        try:
            masks.append(universe.mask(str(x) for x in s))
        except InvalidInput as exc:
            raise InvalidInput(f"sets/{i}: {exc}") from None
    return universe, masks


def load_family(path, universe: Universe | None = None):
    return family_from_data(load_json(path), universe)


def family_json(fam: SetFamily) -> dict:
    return {"universe": list(fam.universe.labels), "sets": fam.labelled()}


# rendering

def render(value, universe: Universe, key: str | None = None):
    """Replace subset masks and point indices by labels, recursively."""
    if isinstance(value, dict):
        return {str(k): render(v, universe, str(k)) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [render(v, universe, key) for v in value]
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        if key in SET_KEYS:
            return universe.labels_of(value)
        if key in POINT_KEYS:
            return universe.labels[value]
        return value
    return value if isinstance(value, (str, float)) else str(value)


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
