import json
from dataclasses import replace
from fractions import Fraction

import pytest

from splicesig import (
    SpliceDiagram,
    make_diagram,
    parse_diagram,
    serialize,
    torus,
    validate,
)
from splicesig.errors import DiagramParseError, DomainError
from splicesig.graph import (
    is_exceptional_shape,
    linking_number,
    load_diagram,
    nearest,
    node_weight,
    vertex_multiplicity,
    vertex_weight,
)
from splicesig.ops import elementary

from conftest import random_diagrams


def test_two_node_shape(two_node):
    d = two_node
    assert len(d.vertices) == 7 and len(d.edges) == 6
    assert (len(d.nodes), len(d.leaves), len(d.arrowheads)) == (2, 3, 2)


def test_two_node_invariants(two_node):
    d = two_node
    assert linking_number(d, "a1", "a2") == 12
    assert vertex_multiplicity(d, "v") == 38
    assert vertex_multiplicity(d, "w") == 18
    assert vertex_weight(d, "v") == 26
    assert vertex_weight(d, "l1") == Fraction(13, 2)
    assert vertex_weight(d, "l2") == Fraction(2, 3)
    assert nearest(d, "a1") == ("v", 1)


def test_torus_invariants():
    d = torus(2, 3)
    assert linking_number(d, "a", "n") == 6
    assert vertex_multiplicity(d, "n") == 6


@pytest.mark.parametrize("a, b", [(2, 3), (5, 1), (1, 4), (3, 0)])
def test_elementary_invariants(a, b):
    d = elementary(a, b)
    assert linking_number(d, "b", "n") == a
    assert vertex_multiplicity(d, "n") == a * (b + 1)
    assert nearest(d, "leaf") == ("n", a)
    assert validate(d).ok


def test_linking_number_same_vertex(two_node):
    with pytest.raises(DomainError):
        linking_number(two_node, "v", "v")


def test_nearest_rejects_node(two_node):
    with pytest.raises(DomainError):
        nearest(two_node, "v")


def test_leaf_weight_with_unit_nearest_weight():
    d = load_diagram_from_text(UNKNOT)
    assert vertex_weight(d, "l1") == node_weight(d, "n") == 6


UNKNOT = {
    "vertices": [
        {"id": "n", "kind": "node"}, {"id": "l1", "kind": "leaf"},
        {"id": "lq", "kind": "leaf"}, {"id": "a", "kind": "arrowhead", "multiplicity": 1},
    ],
    "edges": [
        {"ends": ["n", "l1"]},
        {"ends": ["n", "a"], "weights": [2, 1]},
        {"ends": ["n", "lq"], "weights": [3, 1]},
    ],
}


def load_diagram_from_text(obj):
    return parse_diagram(json.dumps(obj))


def test_omitted_weights_default_to_one():
    d = load_diagram_from_text(UNKNOT)
    assert d.find_edge("n", "l1").weights == (1, 1)


# -- parsing ---------------------------------------------------------------------

def test_round_trip_fixtures(data_dir):
    for name in ("two_node", "trefoil", "unknot_figure", "multilink"):
        text = (data_dir / f"{name}.json").read_text()
        d = parse_diagram(text)
        assert serialize(d) == text
        assert parse_diagram(serialize(d)) == d


def test_round_trip_random():
    for d in random_diagrams(100, seed=3):
        assert parse_diagram(serialize(d).encode()) == d


def test_canonical_order_independent_of_input_order(two_node):
    obj = json.loads(serialize(two_node))
    obj["vertices"].reverse()
    obj["edges"].reverse()
    for e in obj["edges"]:
        e["ends"].reverse()
        e["weights"].reverse()
    assert serialize(parse_diagram(json.dumps(obj))) == serialize(two_node)


@pytest.mark.parametrize("text, location", [
    ('{"vertices": [', "line 1 column 15"),
    ("[]", "$"),
    ('{"vertices": []}', "$"),
    ('{"vertices": [{"id": 3, "kind": "node"}], "edges": []}', "vertices[0].id"),
    ('{"vertices": [{"id": "x", "kind": "blob"}], "edges": []}', "vertices[0].kind"),
    ('{"vertices": [{"id": "x", "kind": "node"}, {"id": "x", "kind": "leaf"}], "edges": []}', "vertices[1].id"),
    ('{"vertices": [{"id": "x", "kind": "leaf", "multiplicity": 1}], "edges": []}', "vertices[0].multiplicity"),
    ('{"vertices": [{"id": "x", "kind": "arrowhead"}], "edges": []}', "vertices[0]"),
    ('{"vertices": [{"id": "x", "kind": "node"}], "edges": [{"ends": ["x", "y"]}]}', "edges[0].ends[1]"),
    ('{"vertices": [{"id": "x", "kind": "node"}], "edges": [{"ends": ["x", "x"], "weights": [1.5, 1]}]}',
     "edges[0].weights[0]"),
])
def test_parse_errors_carry_location(text, location):
    with pytest.raises(DiagramParseError) as info:
        parse_diagram(text)
    assert info.value.location == location
    assert location in str(info.value)


def test_parse_invalid_utf8():
    with pytest.raises(DiagramParseError):
        parse_diagram(b'{"vertices": ["\xff"]}')


def test_badref_fixture(data_dir):
    with pytest.raises(DiagramParseError, match=r"edges\[0\]\.ends\[1\]"):
        load_diagram(data_dir / "badref.json")


# -- validation ------------------------------------------------------------------

def test_two_node_valid(two_node):
    r = validate(two_node)
    assert r.ok and r.is_almost_minimal and r.is_link
    assert r.bad_leaves == () and r.arrowhead_count_nonzero == 2


def test_unknot_figure_has_bad_leaf(data_dir):
    r = validate(load_diagram(data_dir / "unknot_figure.json"))
    assert r.ok
    assert r.bad_leaves == ("l1",)
    assert not r.is_almost_minimal


def test_weight_zero_invalid(data_dir):
    r = validate(load_diagram(data_dir / "weight0.json"))
    assert not r.ok and not r.is_almost_minimal
    assert any("not positive" in msg for msg in r.structural_errors)


def test_multilink_fixture(data_dir):
    r = validate(load_diagram(data_dir / "multilink.json"))
    assert r.ok and r.is_almost_minimal and not r.is_link


def _node(weights, arrows=1):
    verts = [("n", "node")] + [(f"l{i}", "leaf") for i in range(len(weights))]
    verts += [(f"a{i}", "arrowhead", 1) for i in range(arrows)]
    edges = [("n", f"l{i}", w, 1) for i, w in enumerate(weights)] + [("n", f"a{i}") for i in range(arrows)]
    return make_diagram(verts, edges)


@pytest.mark.parametrize("d, needle", [
    (_node([2, 4]), "not coprime"),
    (_node([2, 3, 5]), "weights > 1"),
    (make_diagram([("n", "node"), ("a", "arrowhead", 1), ("b", "arrowhead", 1)], [("n", "a"), ("n", "b")]),
     "valency 2"),
    (make_diagram([("n", "node"), ("a", "arrowhead", 1)], []), "not a tree"),
    (make_diagram([("l", "leaf"), ("a", "arrowhead", 1)], [("l", "a")]), "no node"),
    (make_diagram([("n", "node"), ("l", "leaf"), ("m", "leaf"), ("a", "arrowhead", 1)],
                  [("n", "l", 2, 2), ("n", "m", 3, 1), ("n", "a")]), "must be 1"),
    (make_diagram([("n", "node"), ("l", "leaf"), ("m", "leaf"), ("a", "arrowhead", -1)],
                  [("n", "l", 2, 1), ("n", "m", 3, 1), ("n", "a")]), "negative multiplicity"),
    (make_diagram([("n", "node"), ("a", "arrowhead", 1), ("b", "arrowhead", 1), ("c", "arrowhead", 1)],
                  [("n", "a"), ("n", "b"), ("n", "c"), ("a", "b")]), "valency"),
])
def test_structural_errors(d, needle):
    r = validate(d)
    assert not r.ok
    assert any(needle in msg for msg in r.structural_errors), r.structural_errors


def test_zero_arrowhead_diagram_is_valid():
    d = make_diagram([("n", "node"), ("l", "leaf"), ("m", "leaf"), ("k", "leaf")],
                     [("n", "l", 2, 1), ("n", "m", 3, 1), ("n", "k")])
    r = validate(d)
    assert r.ok and not r.is_link and r.arrowhead_count_nonzero == 0


def test_gamma_1b_leaf_is_not_bad():
    assert validate(elementary(1, 3)).bad_leaves == ()
    assert validate(elementary(1, 0)).bad_leaves == ()
    assert validate(_node([1, 2], arrows=2)).bad_leaves == ("l0",)


def test_validate_is_pure(two_node):
    assert validate(two_node) == validate(two_node)


# -- properties on generated diagrams ---------------------------------------------

def test_generated_properties():
    for d in random_diagrams(200, seed=5):
        r = validate(d)
        assert r.ok and r.is_almost_minimal and r.is_link
        assert not is_exceptional_shape(d)
        arrows = d.arrowheads
        for i, a in enumerate(arrows):
            for b in arrows[i + 1:]:
                assert linking_number(d, a, b) == linking_number(d, b, a)
        for x in d.leaves + arrows:
            assert nearest(d, x)[0] in d.nodes
        doubled = SpliceDiagram(
            tuple(replace(v, multiplicity=2 * v.multiplicity) if v.multiplicity else v for v in d.vertices),
            d.edges,
        )
        for n in d.nodes:
            assert vertex_multiplicity(doubled, n) == 2 * vertex_multiplicity(d, n)
        assert validate(parse_diagram(serialize(d))) == r


def test_exceptional_shapes():
    assert is_exceptional_shape(_node([1, 1], arrows=1))
    assert is_exceptional_shape(_node([2, 1], arrows=2))
    assert not is_exceptional_shape(_node([2, 3]))
    assert not is_exceptional_shape(_node([2, 1], arrows=3))
