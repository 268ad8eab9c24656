"""Deterministic JSON writer: stable key order, full-precision floats."""

import json
import math

import pytest

from qdtree import jsonio


def test_format_float_roundtrips_exactly():
    for x in (0.1, 1 / 3, 2.5, 1e-12, 6.02e23, -0.0, math.pi):
        assert float(jsonio.format_float(x)) == x


def test_format_float_marks_integral_values():
    assert jsonio.format_float(2.0) == "2.0"
    assert jsonio.format_float(-3.0) == "-3.0"
    assert jsonio.format_float(1e22) == "1e+22.0" or "e" in jsonio.format_float(1e22)


def test_format_float_rejects_non_finite():
    with pytest.raises(ValueError):
        jsonio.format_float(float("nan"))
    with pytest.raises(ValueError):
        jsonio.format_float(float("inf"))


def test_dumps_scalar_types():
    assert jsonio.dumps(None) == "null"
    assert jsonio.dumps(True) == "true"
    assert jsonio.dumps(False) == "false"
    assert jsonio.dumps(7) == "7"
    assert jsonio.dumps("a\"b\n") == '"a\\"b\\n"'


def test_dumps_matches_stdlib_parse():
    doc = {"b": [1, 2.5, None], "a": {"nested": [True, "x"]}, "c": 0.1}
    text = jsonio.dumps(doc)
    assert json.loads(text) == doc
    assert jsonio.loads(text) == doc


def test_dumps_preserves_insertion_order():
    text = jsonio.dumps({"z": 1, "a": 2})
    assert text.index('"z"') < text.index('"a"')


def test_dumps_is_byte_stable():
    doc = {"root": {"theta": 1 / 3, "children": [{"class": 1}, {"class": 2}]}}
    assert jsonio.dumps(doc) == jsonio.dumps(doc)


def test_dumps_rejects_unknown_types():
    with pytest.raises(TypeError):
        jsonio.dumps({"x": {1, 2}})
