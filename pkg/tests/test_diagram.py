import json
import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from splicetype import corpus
from splicetype.diagram import (DiagramError, SpliceDiagram, check_determinant_condition,
                                edge_determinant, linking_matrix, linking_number, node_degree,
                                parse_diagram, reduced_linking_number, relabel, seifert_data,
                                splice, split_edge, star)

seeds = st.integers(min_value=0, max_value=2**32)


def test_two_node_7_11_invariants(pair711):
    assert node_degree(pair711, "a") == 42
    assert node_degree(pair711, "b") == 110
    assert linking_number(pair711, "a", "b") == 2 * 3 * 5 * 2
    assert edge_determinant(pair711, ("a", "b")) == 7 * 11 - 2 * 3 * 5 * 2


def test_two_node_49_11_invariants(pair4911):
    assert linking_number(pair4911, "a", "b") == 420
    assert edge_determinant(pair4911, ("a", "b")) == 49 * 11 - 6 * 70
    assert reduced_linking_number(pair4911, "a", "l3") == 10
    assert reduced_linking_number(pair4911, "b", "l1") == 3


def test_e8_basics(e8):
    assert node_degree(e8, "v") == 30
    assert seifert_data(e8, "v") == [2, 3, 5]
    assert linking_number(e8, "x", "y") == 5
    assert e8.internal_edges() == ()


def test_seifert_drops_ones():
    d = star([1, 2, 3, 7])
    assert seifert_data(d, "v") == [2, 3, 7]


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_linking_numbers_match_path_walk(seed):
    d = corpus.random_diagram(random.Random(seed))
    doc = d.to_dict()
    for u in d.vertices:
        for v in d.vertices:
            assert linking_number(d, u, v) == oracles.linking(doc, u, v)
            if u != v:
                assert reduced_linking_number(d, u, v) == oracles.linking(doc, u, v, reduced=True)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_linking_matrix_symmetric(seed):
    d = corpus.random_diagram(random.Random(seed))
    m = linking_matrix(d)
    assert all(m[u][v] == m[v][u] for u in m for v in m)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_relabel_preserves_canonical_form(seed):
    d = corpus.random_diagram(random.Random(seed))
    e = relabel(d, "x_")
    assert e.is_isomorphic(d)
    assert e != d
    assert hash(e) == hash(d)


def test_canonical_form_sees_decorations(pair711, pair4911):
    assert not pair711.is_isomorphic(pair4911)
    assert star([2, 3, 5]).is_isomorphic(star([5, 2, 3], node="w"))
    assert not star([2, 3, 5]).is_isomorphic(star([2, 3, 7]))


@pytest.mark.parametrize("make", [corpus.e8, corpus.two_node_7_11, corpus.two_node_49_11])
def test_json_round_trip(make):
    d = make()
    assert parse_diagram(d.to_json()) == d
    assert parse_diagram(d.to_json()).to_json() == d.to_json()


def test_dot_export_has_decoration_labels(pair4911):
    dot = pair4911.to_dot()
    assert dot.startswith("graph")
    assert 'taillabel="49"' in dot or 'headlabel="49"' in dot
    assert '"a" -- "b"' in dot


def test_leaf_end_decorations_optional():
    doc = {"vertices": [{"id": "v", "kind": "node"}] + [{"id": f"l{i}", "kind": "leaf"}
                                                         for i in range(3)],
           "edges": [{"u": "v", "v": f"l{i}", "dec_u": x} for i, x in enumerate([2, 3, 5])]}
    d = parse_diagram(json.dumps(doc))
    assert node_degree(d, "v") == 30


def test_missing_node_decoration_is_an_error():
    doc = {"vertices": [{"id": "v", "kind": "node"}, {"id": "l", "kind": "leaf"}],
           "edges": [{"u": "v", "v": "l"}]}
    with pytest.raises(DiagramError, match="dec_u"):
        parse_diagram(json.dumps(doc))


def test_syntax_error_has_location():
    with pytest.raises(DiagramError) as info:
        parse_diagram('{"vertices": [\n  {"id": }')
    assert "line 2" in info.value.location


@pytest.mark.parametrize("decs, check", [
    ([2, 4, 5], "coprimality"),
    ([2, 0, 5], "positivity"),
    ([2, 3], "valency"),
])
def test_structural_failures(decs, check):
    with pytest.raises(DiagramError, match=check):
        star(decs)


def test_structural_reports_without_raising():
    names = ["l1", "l2", "l3"]
    bad = SpliceDiagram({"v": "node", **{n: "leaf" for n in names}},
                        [("v", n) for n in names], {("v", "l1"): 2, ("v", "l2"): 4, ("v", "l3"): 5},
                        check=False)
    report = bad.structural_report()
    assert not report.checks["coprimality"]
    assert report.checks["tree"]


def test_cycle_detected():
    v = {"a": "node", "b": "node", "c": "node"}
    edges = [("a", "b"), ("b", "c"), ("c", "a")]
    decs = {(x, y): 1 for x, y in edges} | {(y, x): 1 for x, y in edges}
    report = SpliceDiagram(v, edges, decs, check=False).structural_report()
    assert "cycle" in report.problems["tree"]


def test_disconnected_detected():
    v = {"l1": "leaf", "l2": "leaf"}
    report = SpliceDiagram(v, [], {}, check=False).structural_report()
    assert not report.checks["tree"]


def test_negative_determinant_named():
    # 2, 2 on an edge between heavy stars
    vertices = {"a": "node", "b": "node", "l1": "leaf", "l2": "leaf", "l3": "leaf", "l4": "leaf"}
    edges = [("a", "l1"), ("a", "l2"), ("a", "b"), ("b", "l3"), ("b", "l4")]
    decs = {("a", "l1"): 3, ("a", "l2"): 5, ("a", "b"): 2, ("b", "a"): 3,
            ("b", "l3"): 7, ("b", "l4"): 11}
    d = SpliceDiagram(vertices, edges, decs)
    report = check_determinant_condition(d)
    assert not report.ok
    assert any("a-b" in p for p in report.problems["determinant"])


def test_singleton_leaf_diagram():
    d = SpliceDiagram({"x": "leaf"}, [], {})
    assert d.nodes == () or list(d.nodes) == []
    assert d.n == 1


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_split_then_splice_is_identity(seed):
    rng = random.Random(seed)
    d = corpus.random_multinode_diagram(rng)
    edge = rng.choice(d.internal_edges())
    left, right = split_edge(d, edge)
    assert left.n + right.n == d.n + 2
    back = splice(left, f"r_{edge[0]}", right, f"r_{edge[1]}")
    assert back.is_isomorphic(d)
    assert back.decorations() == d.decorations()


def test_splice_rejects_clashing_ids(e8):
    with pytest.raises(DiagramError, match="relabel"):
        splice(e8, "x", e8, "y")
    joined = splice(e8, "x", relabel(e8, "p"), "px")
    assert len(joined.nodes) == 2
    assert joined.decoration("v", "pv") == 2


def test_split_edge_rejects_leaf_edge(e8):
    with pytest.raises(DiagramError):
        split_edge(e8, ("v", "x"))


def test_node_edge_order_by_first_leaf(pair4911):
    assert pair4911.node_edge_order("a") == ("l1", "l2", "b")
    assert pair4911.node_edge_order("b") == ("a", "l3", "l4", "l5")
