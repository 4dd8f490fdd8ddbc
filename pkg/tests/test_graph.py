import pytest
from hypothesis import given, strategies as st

from pdqaoa import (
    Graph,
    GraphFormatError,
    closed_neighborhood,
    parse_edge_list,
    serialize_edge_list,
)


class TestParse:
    def test_fig2_example(self, fig2_graph):
        assert fig2_graph.vertex_count == 6
        assert fig2_graph.edge_count == 6
        assert fig2_graph.edges == ((0, 1), (1, 2), (1, 3), (2, 4), (3, 4), (4, 5))

    def test_single_isolated_vertex(self):
        g = parse_edge_list("vertices 1")
        assert g.vertex_count == 1
        assert g.edges == ()

    def test_self_loop_rejected(self):
        with pytest.raises(GraphFormatError, match="self-loop"):
            parse_edge_list("0 0")

    def test_duplicate_edge_rejected(self):
        with pytest.raises(GraphFormatError, match="duplicate"):
            parse_edge_list("0 1\n1 0")

    def test_malformed_line_rejected(self):
        with pytest.raises(GraphFormatError, match="line 2"):
            parse_edge_list("0 1\n2 3 4")

    def test_non_integer_rejected(self):
        with pytest.raises(GraphFormatError, match="non-integer"):
            parse_edge_list("0 x")

    def test_index_beyond_declared_count_rejected(self):
        with pytest.raises(GraphFormatError, match="declared vertex count"):
            parse_edge_list("vertices 2\n0 2")

    def test_header_absent_infers_count(self):
        g = parse_edge_list("0 3")
        assert g.vertex_count == 4

    def test_header_supports_trailing_isolated_vertices(self):
        g = parse_edge_list("vertices 5\n0 1")
        assert g.vertex_count == 5
        assert g.adjacency[4] == ()

    def test_comments_and_blank_lines_ignored(self):
        g = parse_edge_list("# a comment\n\nvertices 3\n# another\n0 1\n")
        assert g.vertex_count == 3
        assert g.edges == ((0, 1),)

    def test_endpoint_order_irrelevant(self):
        assert parse_edge_list("1 0") == parse_edge_list("0 1")


class TestGraphInvariants:
    def test_constructor_rejects_self_loop(self):
        with pytest.raises(ValueError, match="self-loop"):
            Graph(vertex_count=2, edges=((1, 1),))

    def test_constructor_rejects_out_of_range(self):
        with pytest.raises(ValueError, match="endpoint"):
            Graph(vertex_count=2, edges=((0, 2),))

    def test_adjacency_symmetric(self, fig2_graph):
        g = fig2_graph
        for u in range(g.vertex_count):
            for v in g.adjacency[u]:
                assert u in g.adjacency[v]

    def test_graph_is_immutable(self, fig2_graph):
        with pytest.raises(AttributeError):
            fig2_graph.vertex_count = 3


class TestClosedNeighborhood:
    def test_fig2_vertex1(self, fig2_graph):
        assert closed_neighborhood(fig2_graph, 1) == (0, 1, 2, 3)

    def test_fig2_vertex0(self, fig2_graph):
        assert closed_neighborhood(fig2_graph, 0) == (0, 1)

    def test_isolated_vertex(self, singleton_graph):
        assert closed_neighborhood(singleton_graph, 0) == (0,)

    def test_out_of_range(self, fig2_graph):
        with pytest.raises(ValueError, match="out of range"):
            closed_neighborhood(fig2_graph, 6)

    def test_contains_self_and_size(self, small_graph_corpus):
        for g in small_graph_corpus:
            for v in range(g.vertex_count):
                nbhd = closed_neighborhood(g, v)
                assert v in nbhd
                assert len(nbhd) == g.degree(v) + 1
                assert list(nbhd) == sorted(nbhd)


@st.composite
def random_graphs(draw):
    n = draw(st.integers(min_value=1, max_value=8))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return Graph(vertex_count=n, edges=tuple(chosen))


@given(random_graphs())
def test_serialize_round_trip(g):
    assert parse_edge_list(serialize_edge_list(g)) == g
