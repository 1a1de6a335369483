import json

import pytest

from modal_duality.core import BoxAlgebra, KripkeFrame, NFrame
from modal_duality.documents import (
    DocumentError,
    MapDocument,
    element_map_document,
    parse_document,
    serialize_document,
    world_map_document,
)
from modal_duality.functors import G_obj
from modal_duality.generators import (
    GenParams,
    enumerate_kripke_frames,
    enumerate_mrframes,
    enumerate_nframes,
    fixture,
    normal_algebras,
)
from modal_duality.morphisms import preimage_map

FX3_M1 = '{"kind":"mkf","worlds":["0","1","2"],"relations":[[["0","1"]],[["0","0"],["0","1"],["0","2"]]]}'


def test_parse_fx3_m1():
    M1, _, _ = fixture("FX3_triple")
    assert parse_document(FX3_M1) == M1


def test_parse_identity_box():
    A = parse_document('{"kind":"cama","atoms":["a"],"box":[[[],[]],[["a"],["a"]]]}')
    assert A == BoxAlgebra.identity("a")


def test_unknown_world_names_the_pair():
    text = '{"kind":"mkf","worlds":["0","1"],"relations":[[["0","9"]]]}'
    with pytest.raises(DocumentError, match=r"\['0', '9'\].*'9'"):
        parse_document(text)


def test_positioned_syntax_error():
    with pytest.raises(DocumentError) as info:
        parse_document('{"kind":"mkf",\n  "worlds": [}')
    assert info.value.line == 2 and info.value.column is not None


@pytest.mark.parametrize(
    "text,fragment",
    [
        ('{"kind":"mkf","worlds":["0"],"relations":[[]],"extra":1}', "unknown fields"),
        ('{"kind":"mkf","worlds":["0"]}', "missing fields"),
        ('{"kind":"mkf","kind":"mkf","worlds":["0"],"relations":[[]]}', "duplicate field"),
        ('{"kind":"tree"}', "unknown or missing kind"),
        ('[1,2]', "JSON object"),
        ('{"kind":"mkf","worlds":["0"],"relations":[]}', "nonempty"),
        ('{"kind":"cama","atoms":["a"],"box":[[[],[]]]}', "not total"),
        ('{"kind":"cama","atoms":["a"],"box":[[[],[]],[["a"],["b"]]]}', "unknown label"),
        ('{"kind":"nfr","worlds":["0"],"neighborhoods":{}}', "no neighborhoods"),
        ('{"kind":"nfr","worlds":["0"],"neighborhoods":{"0":[],"1":[]}}', "unknown worlds"),
        ('{"kind":"map","pairs":[["0","1"],["0","0"]]}', "twice"),
        ('{"kind":"map","pairs":[["0",["1"]]]}', "mixes"),
        ('{"kind":"kripke","worlds":["0","0"],"relation":[]}', "duplicate world"),
    ],
)
def test_schema_violations_are_named(text, fragment):
    with pytest.raises(DocumentError, match=fragment):
        parse_document(text)


def _objects():
    yield from enumerate_mrframes(GenParams(max_worlds=2, max_relations=2))
    yield from enumerate_kripke_frames(2)
    yield from list(enumerate_nframes(2))[:80]
    yield from normal_algebras(2)
    yield G_obj(fixture("FX4_fork"))


def test_round_trip_bit_exact():
    for obj in _objects():
        text = serialize_document(obj)
        assert parse_document(text) == obj
        assert serialize_document(parse_document(text)) == text


def test_canonical_form_ignores_input_order():
    shuffled = '{"relations":[[["0","2"],["0","0"],["0","1"]],[["0","1"]]],"worlds":["0","1","2"],"kind":"mkf"}'
    canonical = '{"kind":"mkf","worlds":["0","1","2"],"relations":[[["0","0"],["0","1"],["0","2"]],[["0","1"]]]}\n'
    assert serialize_document(parse_document(shuffled)) == canonical
    assert serialize_document(parse_document(FX3_M1)) == canonical


def test_non_normal_box_is_expressible():
    A = G_obj(fixture("FX4_fork"))
    doc = json.loads(serialize_document(A))
    assert len(doc["box"]) == 8
    assert parse_document(serialize_document(A)) == A


def test_nframe_document():
    Z = NFrame.from_sets(2, [[{0}, {0, 1}], [{0, 1}]])
    doc = json.loads(serialize_document(Z))
    assert doc["neighborhoods"] == {"0": [["0"], ["0", "1"]], "1": [["0", "1"]]}


def test_world_map_documents():
    M1, M2, f = fixture("FX3_triple")
    doc = world_map_document(f, M1.worlds, M2.worlds)
    assert parse_document(serialize_document(doc)) == doc
    assert doc.world_map(M1.worlds, M2.worlds) == f
    with pytest.raises(DocumentError, match="not total"):
        MapDocument((("0", "0"),)).world_map(M1.worlds, M2.worlds)
    with pytest.raises(DocumentError, match="unknown target"):
        MapDocument((("0", "7"), ("1", "0"), ("2", "0"))).world_map(M1.worlds, M2.worlds)


def test_element_map_documents():
    AB, C = BoxAlgebra.identity("ab"), BoxAlgebra.identity("c")
    h = preimage_map((0,), AB, C)
    doc = element_map_document(h)
    back = parse_document(serialize_document(doc))
    assert back.element_map(AB, C) == h
    with pytest.raises(DocumentError, match="world map"):
        back.world_map(AB.atoms, C.atoms)


def test_kripke_document():
    K = KripkeFrame.from_pairs(2, [(1, 0), (0, 1)])
    assert serialize_document(K) == '{"kind":"kripke","worlds":["0","1"],"relation":[["0","1"],["1","0"]]}\n'
