import json

import pytest
from hypothesis import given, settings, strategies as st

from etale.actions import induced_module, swap_action
from etale.errors import AxiomError, ParseError, SchemaError
from etale.families import pair_groupoid
from etale.order import chain, powerset_frame
from etale.quantales import lvee, opens_quantale
from etale.semigroups import symmetric_inverse_monoid
from etale.serialize import KINDS, dumps, from_document, loads, read, same_structure, to_document, write
from etale.topology import FinTopSpace, homeomorphism, sierpinski

from conftest import FRAMES, GROUPOIDS, SEMIGROUPS, SPACES
from oracles import all_topologies


def corpus():
    out = [SPACES[k]() for k in sorted(SPACES)]
    out += [FRAMES[k]() for k in sorted(FRAMES)]
    out += [SEMIGROUPS[k]() for k in sorted(SEMIGROUPS)]
    out += [GROUPOIDS[k]() for k in sorted(GROUPOIDS) if k not in ("pair(3)", "action(4,2)")]
    out += [opens_quantale(pair_groupoid(2)), lvee(symmetric_inverse_monoid(2)), swap_action(),
            induced_module(swap_action())]
    return out


@pytest.mark.parametrize("obj", corpus(), ids=repr)
def test_round_trip_is_structurally_identical(obj):
    back = loads(dumps(obj))
    assert same_structure(back, obj)
    assert dumps(back) == dumps(obj)


def test_every_kind_is_covered():
    assert {to_document(x)["kind"] for x in corpus()} == set(KINDS)


def test_minimal_topspace_is_sierpinski():
    X = loads('{"kind":"topspace","points":["a","b"],"opens":[[],["a"],["a","b"]]}')
    assert homeomorphism(X, sierpinski()) is not None


def test_missing_product_names_the_pair():
    doc = to_document(pair_groupoid(2))
    doc["m"] = [t for t in doc["m"] if t[:2] != ["(1,2)", "(2,1)"]]
    with pytest.raises(AxiomError) as err:
        from_document(doc)
    assert err.value.report.first("m defined on composable pair").witness == ("(1,2)", "(2,1)")


def test_duplicate_ids_are_schema_errors():
    with pytest.raises(SchemaError, match="duplicate"):
        loads('{"kind":"topspace","points":["a","a"],"opens":[[],["a"]]}')
    doc = to_document(symmetric_inverse_monoid(1))
    doc["elements"] = doc["elements"] + doc["elements"][:1]
    with pytest.raises(SchemaError):
        from_document(doc)


def test_bad_json_and_bad_shapes():
    with pytest.raises(ParseError):
        loads("{not json")
    with pytest.raises(ParseError):
        loads("[1, 2]")
    with pytest.raises(SchemaError, match="unknown kind"):
        loads('{"kind":"sheaf"}')
    with pytest.raises(SchemaError, match="missing field"):
        loads('{"kind":"topspace","points":[]}')
    with pytest.raises(SchemaError, match="unknown id"):
        doc = to_document(pair_groupoid(1))
        doc["d"] = ["9"]
        from_document(doc)


def test_invalid_structures_are_axiom_errors():
    with pytest.raises(AxiomError):
        loads('{"kind":"topspace","points":["a","b"],"opens":[[],["a"]]}')
    doc = to_document(symmetric_inverse_monoid(2))
    doc["inv"] = list(doc["elements"])
    with pytest.raises(AxiomError):
        from_document(doc)
    m3 = {"kind": "frame", "elements": ["0", "a", "b", "c", "1"],
          "leq": [[x, x] for x in "0abc1"] + [["0", x] for x in "abc1"] + [[x, "1"] for x in "abc"]}
    with pytest.raises(AxiomError, match="distributivity"):
        from_document(m3)


def test_documents_are_canonical():
    text = dumps(powerset_frame(["2", "1"]))
    assert text == dumps(powerset_frame(["1", "2"]))
    doc = json.loads(text)
    assert doc["elements"] == sorted(doc["elements"])
    assert list(doc) == sorted(doc)


def test_files(tmp_path):
    path = tmp_path / "c.json"
    write(chain(3), path)
    assert same_structure(read(path), chain(3))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(all_topologies(["1", "2", "3"])))
def test_random_spaces_round_trip(opens):
    X = FinTopSpace(["1", "2", "3"], opens)
    Y = loads(dumps(X))
    assert Y.opens == X.opens and Y.points == X.points
