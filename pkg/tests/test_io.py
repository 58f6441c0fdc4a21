import json

import pytest

from pretopgroups.errors import InvalidInput, NotAssociative, SchemaError
from pretopgroups.io import family_from_data, family_json, group_from_data, load_family, load_group, validate


def test_group_shorthands():
    assert group_from_data({"cyclic": 5}).order == 5
    g = group_from_data({"product": [{"cyclic": 2}, {"cyclic": 3}]})
    assert g.order == 6 and g.is_abelian
    assert group_from_data({"catalog": "Q8"}).order == 8
    t = group_from_data({"name": "z2", "elements": ["e", "a"], "table": [["e", "a"], ["a", "e"]]})
    assert t.labels == ("e", "a")


def test_group_schema_errors():
    with pytest.raises(SchemaError) as exc:
        group_from_data({"elements": ["e"], "table": "x"})
    assert "table" in str(exc.value)
    with pytest.raises(SchemaError):
        group_from_data({"cyclic": 0})
    with pytest.raises(NotAssociative):
        group_from_data({"elements": ["e", "a", "b"], "table": [["e", "a", "b"], ["a", "e", "a"], ["b", "b", "e"]]})


def test_json_syntax_error_has_position(tmp_path):
    p = tmp_path / "g.json"
    p.write_text('{"cyclic":\n  }')
    with pytest.raises(SchemaError) as exc:
        load_group(p)
    assert exc.value.detail == {"line": 2, "column": 3}


def test_family_round_trip(tmp_path, P6):
    data = family_json(P6.topology)
    p = tmp_path / "f.json"
    p.write_text(json.dumps(data))
    uni, masks = load_family(p, P6.group.universe)
    assert tuple(sorted(masks)) == tuple(sorted(P6.topology.members))


def test_family_errors():
    with pytest.raises(InvalidInput):
        family_from_data({"universe": ["a", "a"], "sets": []})
    with pytest.raises(InvalidInput):
        family_from_data({"universe": ["a"], "sets": [["b"]]})
    with pytest.raises(SchemaError):
        family_from_data({"universe": ["a"]})
    g = group_from_data({"cyclic": 2})
    with pytest.raises(InvalidInput):
        family_from_data({"universe": ["0", "1", "2"], "sets": []}, g.universe)


def test_schema_rejects_unknown_keys():
    with pytest.raises(SchemaError):
        validate({"universe": ["a"], "sets": [], "extra": 1}, "family")
