import copy
import json
from fractions import Fraction

import pytest

from astk.errors import GroupLoadError, UnsupportedGroup, UsageError
from astk.groups.finite import (BUNDLED, IrrationalCharacter, bundled_group, load_group_file,
                                product_group)
from astk.groups.spec import GL, SL2, Mu, Product, SplitTorus, parse_group_spec


@pytest.fixture
def s3_data():
    return bundled_group("s3").to_json()


def write(tmp_path, data, name="g.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return path


def test_bundled_groups_load():
    for name in BUNDLED:
        g = bundled_group(name)
        if g.split:
            assert sum(ch.dim ** 2 for ch in g.characters) == g.order
    s3 = bundled_group("s3")
    assert s3.order == 6 and s3.nclasses == 3 and s3.split
    assert bundled_group("c2").order == 2
    c3 = bundled_group("c3")
    assert c3.nclasses == 3 and len(c3.characters) == 2 and not c3.split


def test_roundtrip_through_file(tmp_path, s3_data):
    g = load_group_file(write(tmp_path, s3_data))
    assert g.order == 6 and [c.name for c in g.characters] == ["triv", "sgn", "std"]


def test_broken_associativity_names_triple(tmp_path, s3_data):
    data = copy.deepcopy(s3_data)
    # swap two products in one row: still a Latin square row, no longer associative
    row = data["multiplication"][1]
    row[2], row[3] = row[3], row[2]
    with pytest.raises(GroupLoadError) as exc:
        load_group_file(write(tmp_path, data))
    assert exc.value.invariant in ("associativity", "identity", "inverses")
    if exc.value.invariant == "associativity":
        assert "(" in str(exc.value)


def test_associativity_failure_message_has_elements(tmp_path):
    # a commutative quasigroup with identity that is not associative (order 5)
    table = [[0, 1, 2, 3, 4],
             [1, 0, 3, 4, 2],
             [2, 4, 0, 1, 3],
             [3, 2, 4, 0, 1],
             [4, 3, 1, 2, 0]]
    data = {"name": "loop5", "elements": list("abcde"), "multiplication": table,
            "classes": [[i] for i in range(5)],
            "characters": [{"name": "triv", "dim": 1, "values": ["1"] * 5}]}
    with pytest.raises(GroupLoadError) as exc:
        load_group_file(write(tmp_path, data))
    assert exc.value.invariant == "associativity"
    assert "associativ" in str(exc.value)


def test_non_orthogonal_table(tmp_path, s3_data):
    data = copy.deepcopy(s3_data)
    data["characters"][1]["values"] = ["1/1", "1/1", "-1/1"]
    with pytest.raises(GroupLoadError) as exc:
        load_group_file(write(tmp_path, data))
    assert exc.value.invariant == "orthogonality"


def test_irrational_value(tmp_path, s3_data):
    data = copy.deepcopy(s3_data)
    data["characters"][2]["values"][2] = "sqrt(2)"
    with pytest.raises(IrrationalCharacter) as exc:
        load_group_file(write(tmp_path, data))
    assert exc.value.invariant == "character-rational"
    assert isinstance(exc.value, UnsupportedGroup)


def test_schema_and_json_errors(tmp_path, s3_data):
    data = copy.deepcopy(s3_data)
    del data["classes"]
    with pytest.raises(GroupLoadError) as exc:
        load_group_file(write(tmp_path, data))
    assert exc.value.invariant == "schema"
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(GroupLoadError) as exc:
        load_group_file(bad)
    assert exc.value.invariant == "json"


def test_wrong_classes(tmp_path, s3_data):
    data = copy.deepcopy(s3_data)
    data["classes"] = [[0], [1, 2], [3, 4, 5]]
    with pytest.raises(GroupLoadError) as exc:
        load_group_file(write(tmp_path, data))
    assert exc.value.invariant == "classes-conjugacy"


def test_bad_power_map(tmp_path, s3_data):
    data = copy.deepcopy(s3_data)
    data["power_maps"]["2"] = [0, 1, 2]
    with pytest.raises(GroupLoadError) as exc:
        load_group_file(write(tmp_path, data))
    assert exc.value.invariant == "power-maps"


def test_power_maps_and_decompose():
    s3 = bundled_group("s3")
    assert s3.power_map(2) == (0, 0, 2)
    assert s3.power_map(3) == (0, 1, 0)
    assert s3.power_map(7) == s3.power_map(1)
    reg = [6, 0, 0]
    assert s3.decompose(reg) == (1, 1, 2)
    assert s3.exponent() == 6


def test_product_group():
    g = product_group(bundled_group("c2"), bundled_group("s3"))
    assert g.order == 12 and g.nclasses == 6 and len(g.characters) == 6


def test_parse_group_spec():
    assert parse_group_spec("gm") == SplitTorus(1)
    assert parse_group_spec("t2") == SplitTorus(2)
    assert parse_group_spec("GL3") == GL(3)
    assert parse_group_spec("sl2") == SL2()
    assert parse_group_spec("mu5") == Mu(5)
    assert parse_group_spec("gm*mu2") == Product((SplitTorus(1), Mu(2)))
    assert parse_group_spec("s3").order == 6
    with pytest.raises(UsageError):
        parse_group_spec("sp4")
    with pytest.raises(UnsupportedGroup):
        Mu(0)
