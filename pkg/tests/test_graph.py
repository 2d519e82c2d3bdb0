import pytest
from hypothesis import given, settings

from hgm.errors import GraphValidationError, ParseError
from hgm.graph import (Graph, connected_components, graph_union, parse_edge_list,
                       permute_graph, serialize_edge_list, toggle_edge)

from conftest import graphs


def test_parse_path():
    g = parse_edge_list("0 1\n1 2")
    assert g.n == 3 and g.m == 2
    assert g.edge_set() == {(0, 1), (1, 2)}
    assert g.adjacency == [[1], [0, 2], [1]]


def test_parse_empty_rejected():
    with pytest.raises(ParseError, match="no edges or vertices"):
        parse_edge_list("")
    with pytest.raises(ParseError):
        parse_edge_list("# only a comment\n\n")


def test_parse_self_loop_rejected():
    with pytest.raises(GraphValidationError, match="self-loop"):
        parse_edge_list("1 1")


def test_parse_negative_id_rejected():
    with pytest.raises(GraphValidationError, match="negative"):
        parse_edge_list("0 -1")


@pytest.mark.parametrize("text,line", [("0 1\n1\n", 2), ("0 1\n\n0 a\n", 3), ("0 1 2", 1)])
def test_parse_malformed_reports_line(text, line):
    with pytest.raises(ParseError) as exc:
        parse_edge_list(text)
    assert exc.value.line == line
    assert f"line {line}" in str(exc.value)


def test_parse_collapses_duplicates_and_comments():
    g = parse_edge_list("# header\n0 1\n1 0\n0 1\n\n2 1\n")
    assert g.m == 2
    assert g.degree().sum() == 2 * g.m


def test_parse_header_and_base():
    g = parse_edge_list("n 5\n1 2\n", index_base=1)
    assert g.n == 5 and g.edge_set() == {(0, 1)}
    with pytest.raises(GraphValidationError):
        parse_edge_list("n 2\n0 3\n")
    with pytest.raises(GraphValidationError):
        parse_edge_list("0 1", index_base=1)  # 0 - 1 = -1


def test_from_edges_validation():
    with pytest.raises(GraphValidationError):
        Graph.from_edges(3, [(0, 3)])
    with pytest.raises(GraphValidationError):
        Graph.from_edges(3, [(2, 2)])


def test_components():
    assert connected_components(parse_edge_list("0 1\n1 2")) == [[0, 1, 2]]
    assert connected_components(parse_edge_list("0 1\n2 3")) == [[0, 1], [2, 3]]
    k4 = parse_edge_list("0 1\n0 2\n0 3\n1 2\n1 3\n2 3")
    assert connected_components(k4) == [[0, 1, 2, 3]]
    assert connected_components(parse_edge_list("n 4\n3 1")) == [[0], [1, 3], [2]]


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=1, max_n=20))
def test_roundtrip(g):
    assert parse_edge_list(serialize_edge_list(g)) == g
    assert parse_edge_list(serialize_edge_list(g, index_base=1), index_base=1) == g


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=20))
def test_structure_invariants(g):
    adj = g.adjacency
    assert sum(len(a) for a in adj) == 2 * g.m
    for v, nbrs in enumerate(adj):
        assert v not in nbrs
        assert nbrs == sorted(set(nbrs))
        for u in nbrs:
            assert v in adj[u]


def test_toggle_and_union():
    g = parse_edge_list("0 1\n1 2")
    h = toggle_edge(g, 0, 2)
    assert h.has_edge(2, 0)
    assert toggle_edge(h, 2, 0) == g
    assert graph_union(g, h) == h
    with pytest.raises(GraphValidationError):
        toggle_edge(g, 1, 1)


def test_permute():
    g = parse_edge_list("0 1\n1 2")
    h = permute_graph(g, [2, 0, 1])
    assert h.edge_set() == {(0, 2), (0, 1)}
    with pytest.raises(ValueError):
        permute_graph(g, [0, 0, 1])
