"""Instance document parsing, validation errors, canonical round trips."""

from fractions import Fraction

import pytest

from selectra import bodies as bd
from selectra.errors import ParseError, ValidationError
from selectra.instances import (
    body_from_json,
    body_to_json,
    parse_document,
    serialize_document,
)
from selectra.rational import NEG_INF, POS_INF

F = Fraction

SEGMENT = """
{
  "complex": {"dim": 1, "vertices": [[0], [1]], "simplices": [[0, 1]]},
  "fields": {
    "phi": {"kind": "interval", "values": {
      "0": {"form": "open_interval", "lo": 0, "hi": 1},
      "1": {"form": "open_interval", "lo": 0, "hi": 1},
      "0-1": {"form": "open_interval", "lo": -1, "hi": 2}}},
    "xi": {"kind": "scalar", "values": {"0": 1, "1": 0, "0-1": 0}},
    "cov": {"kind": "cover", "size": 2, "values": {
      "0": [0, 1], "0-1": [0, 1], "1": [1]}}
  },
  "subcomplexes": {"A": ["0"], "B": ["1"]},
  "selection": {"target_dim": 1, "values": {"0": ["3/4"], "1": ["1/2"]}}
}
"""


def test_parse_segment_instance():
    doc = parse_document(SEGMENT)
    assert len(doc.complex.cells) == 3
    assert doc.field_kinds == {"phi": "interval", "xi": "scalar", "cov": "cover"}
    assert doc.fields["xi"][(0,)] == 1
    assert doc.fields["cov"].size == 2
    assert doc.subcomplexes["A"] == frozenset({(0,)})
    assert doc.selection.values[0] == (F(3, 4),)


def test_round_trip_is_byte_stable():
    doc = parse_document(SEGMENT)
    once = serialize_document(doc)
    again = serialize_document(parse_document(once))
    assert once == again


def test_missing_cell_value_rejected():
    import json

    obj = json.loads(SEGMENT)
    del obj["fields"]["phi"]["values"]["0-1"]
    with pytest.raises(ValidationError):
        parse_document(json.dumps(obj))


def test_bad_json_is_parse_error():
    with pytest.raises(ParseError) as info:
        parse_document("{not json")
    assert info.value.line == 1


def test_floats_rejected():
    bad = SEGMENT.replace('"lo": 0, "hi": 1}', '"lo": 0.5, "hi": 1}', 1)
    with pytest.raises(ValidationError):
        parse_document(bad)


def test_unknown_cell_id_rejected():
    bad = SEGMENT.replace('"subcomplexes": {"A": ["0"], "B": ["1"]}',
                          '"subcomplexes": {"A": ["7"]}')
    with pytest.raises(ValidationError):
        parse_document(bad)


@pytest.mark.parametrize("body", [
    bd.open_interval(0, 1),
    bd.closed_interval(F(-1, 3), POS_INF),
    bd.interval(0, 5, True, False),
    bd.open_box([(0, 1), (NEG_INF, 2)]),
    bd.v_polytope([(0, 0), (1, 0), (0, 1)]),
    bd.h_polytope([((F(1),), F(1)), ((F(-1),), F(0))]),
    bd.Fattened(bd.v_polytope([(0, 0)]), F(1, 2), True),
    bd.whole_line(),
])
def test_body_json_round_trip(body):
    assert body_from_json(body_to_json(body)) == body
