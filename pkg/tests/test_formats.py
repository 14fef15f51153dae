import json

import pytest
import yaml

from catauto.formats import dump_json, load_signature, load_system, parse_signature, parse_system
from catauto.terms import Signature, TermError


def test_signature_forms():
    want = Signature.of(mul=2, f=1)
    assert parse_signature({"operations": ["mul/2", "f/1"]}) == want
    assert parse_signature({"operations": [["mul", 2], ["f", 1]]}) == want
    assert parse_signature({"operations": {"mul": 2, "f": 1}}) == want
    assert load_signature("signatures/magma_unary.yaml") == want
    with pytest.raises(ValueError):
        parse_signature({"operations": ["mul"]})


def test_system_file_fields():
    sys_ = load_system("systems/semigroup_binary.eqs")
    assert sys_.name == "semigroup_binary"
    assert sys_.unknowns == (("w", 2),)
    assert sys_.expressible == (("mul", 4),)
    assert len(sys_.equations) == 1


def test_system_errors():
    base = {"variety": "semigroup", "unknowns": ["w/2"]}
    with pytest.raises(TermError):
        parse_system({**base, "equations": [["(w x1)", "x1"]]})
    with pytest.raises(ValueError):
        parse_system({**base, "equations": [["x1"]]})
    with pytest.raises(ValueError):
        parse_system({**base, "variety": "ring", "equations": []})


def test_every_shipped_system_loads():
    import glob
    paths = glob.glob("systems/*.eqs")
    assert len(paths) >= 8
    for p in paths:
        with open(p) as fh:
            assert "variety" in yaml.safe_load(fh)
        load_system(p)


def test_dump_json_is_sorted():
    assert dump_json({"b": 1, "a": [1, 2]}) == json.dumps({"a": [1, 2], "b": 1}, indent=2)
