from __future__ import annotations

import json

import pytest

from nlie import GF, QQ
from nlie import io as nio
from nlie.catalog import Label, build, heisenberg
from nlie.io import ParseError


def doc(brackets, field="Q", n=3, d=5):
    return json.dumps({"arity": n, "dim": d, "field": field, "brackets": brackets}, indent=1)


@pytest.mark.parametrize("lab", [heisenberg(3, 1, 1), Label("A", (3, 8, 6)), Label("A387")])
def test_roundtrip_is_byte_identical(lab):
    for F in (QQ, GF(3)):
        text = nio.dumps(build(lab, F))
        again = nio.dumps(nio.loads(text))
        assert again == text
        assert nio.loads(text) == build(lab, F)


def test_rational_scalars_survive():
    a = nio.loads(doc([{"args": [1, 2, 3], "value": {"4": "-3/4", "5": 2}}]))
    assert a.table() == {(1, 2, 3): {4: QQ.parse_scalar("-3/4"), 5: 2}}
    assert '"-3/4"' in nio.dumps(a)


def test_non_increasing_args_diagnostic():
    text = doc([{"args": [1, 2, 3], "value": {"4": 1}}, {"args": [3, 2, 1], "value": {"5": 1}}])
    with pytest.raises(ParseError) as info:
        nio.loads(text)
    assert info.value.path == "brackets[1].args"
    assert "strictly increasing" in str(info.value)
    assert info.value.line is not None


def test_duplicate_args_and_keys():
    with pytest.raises(ParseError, match="duplicate args"):
        nio.loads(doc([{"args": [1, 2, 3], "value": {"4": 1}}, {"args": [1, 2, 3], "value": {"5": 1}}]))
    with pytest.raises(ParseError, match="duplicate key"):
        nio.loads('{"arity": 3, "arity": 3, "dim": 4, "field": "Q", "brackets": []}')


@pytest.mark.parametrize(
    "entry, fragment",
    [
        ({"args": [1, 2], "value": {"4": 1}}, "expected 3 indices"),
        ({"args": [1, 2, 9], "value": {"4": 1}}, "indices must lie"),
        ({"args": [1, 2, 3], "value": {"0": 1}}, "coordinate must be"),
        ({"args": [1, 2, 3], "value": {"4": "x"}}, "bad scalar"),
        ({"args": [1, 2, 3]}, "exactly 'args' and 'value'"),
    ],
)
def test_malformed_entries(entry, fragment):
    with pytest.raises(ParseError, match=fragment):
        nio.loads(doc([entry]))


def test_field_override_only_for_integral_tables():
    text = doc([{"args": [1, 2, 3], "value": {"4": 3, "5": 1}}])
    a = nio.loads(text, "GF(3)")
    assert a.field == GF(3)
    assert a.table() == {(1, 2, 3): {5: 1}}
    with pytest.raises(ParseError, match="non-integral"):
        nio.loads(doc([{"args": [1, 2, 3], "value": {"4": "1/2"}}]), "GF(5)")


def test_field_from_environment(monkeypatch):
    text = json.dumps({"arity": 3, "dim": 4, "brackets": [{"args": [1, 2, 3], "value": {"4": 1}}]})
    monkeypatch.delenv(nio.ENV_FIELD, raising=False)
    with pytest.raises(ParseError, match=nio.ENV_FIELD):
        nio.loads(text)
    monkeypatch.setenv(nio.ENV_FIELD, "GF(7)")
    assert nio.loads(text).field == GF(7)


def test_invalid_json_has_line():
    with pytest.raises(ParseError) as info:
        nio.loads('{\n "arity": 3,\n "dim": }')
    assert info.value.line == 3
