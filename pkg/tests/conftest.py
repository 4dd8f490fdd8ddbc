import pytest

from pdqaoa import Graph, parse_edge_list

from reference_model import FIG2_TEXT


@pytest.fixture(scope="session")
def fig2_graph() -> Graph:
    return parse_edge_list(FIG2_TEXT)


@pytest.fixture(scope="session")
def k2_graph() -> Graph:
    return parse_edge_list("0 1")


@pytest.fixture(scope="session")
def singleton_graph() -> Graph:
    return parse_edge_list("vertices 1")


@pytest.fixture(scope="session")
def small_graph_corpus() -> list[Graph]:
    """Assorted graphs with <= 6 vertices for cross-oracle checks."""
    texts = [
        FIG2_TEXT,
        "0 1",
        "vertices 1",
        "vertices 3\n0 1\n1 2",          # path
        "vertices 4\n0 1\n1 2\n2 3\n0 3",  # 4-cycle
        "vertices 5\n0 1\n0 2\n0 3\n0 4",  # star
        "vertices 4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3",  # K4
        "vertices 5\n0 1\n1 2\n2 3\n3 4",  # path 5
        "vertices 6\n0 1\n2 3\n4 5",       # perfect matching
        "vertices 4\n0 1\n2 3",            # two edges + nothing
        "vertices 5\n0 1\n1 2\n2 0\n3 4",  # triangle + edge
    ]
    return [parse_edge_list(t) for t in texts]
