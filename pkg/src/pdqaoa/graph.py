"""Undirected simple graphs with closed-neighborhood queries.

Vertices are dense integers 0..vertex_count-1.  The edge-list text format is:
an optional first line ``vertices N``, then one ``u v`` pair per line;
blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class GraphFormatError(ValueError):
    """Edge-list text that violates the expected format."""


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph: no self-loops, no duplicate edges.

    Edges are canonicalized to sorted (u, v) pairs in ascending order, so two
    graphs with the same edge set compare equal regardless of input order.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        canonical = []
        seen: set[tuple[int, int]] = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) has an endpoint >= vertex_count={self.vertex_count}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge ({key[0]}, {key[1]})")
            seen.add(key)
            canonical.append(key)
        object.__setattr__(self, "edges", tuple(sorted(canonical)))
        neighbors: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            neighbors[u].append(v)
            neighbors[v].append(u)
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(ns)) for ns in neighbors))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self.adjacency[v])

    def closed_neighborhood(self, v: int) -> tuple[int, ...]:
        """The vertex together with its neighbors, sorted ascending."""
        self._check_vertex(v)
        return tuple(sorted((v, *self.adjacency[v])))

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.vertex_count):
            raise ValueError(f"vertex {v} out of range for {self.vertex_count} vertices")


def closed_neighborhood(g: Graph, v: int) -> tuple[int, ...]:
    return g.closed_neighborhood(v)


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list text format into a validated Graph.

    The declared vertex count (when a header is present) is a hard bound:
    any edge endpoint >= N is an error.  Without a header the vertex count
    is 1 + the largest index seen.
    """
    declared: int | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    max_index = -1
    header_allowed = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header_allowed and parts[0] == "vertices":
            header_allowed = False
            if len(parts) != 2:
                raise GraphFormatError(f"line {lineno}: expected 'vertices N'")
            try:
                declared = int(parts[1])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: vertex count {parts[1]!r} is not an integer") from None
            if declared < 0:
                raise GraphFormatError(f"line {lineno}: negative vertex count")
            continue
        header_allowed = False
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer vertex in {line!r}") from None
        if u < 0 or v < 0:
            raise GraphFormatError(f"line {lineno}: negative vertex index")
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop at vertex {u}")
        if declared is not None and (u >= declared or v >= declared):
            raise GraphFormatError(
                f"line {lineno}: vertex index {max(u, v)} >= declared vertex count {declared}"
            )
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphFormatError(f"line {lineno}: duplicate edge ({key[0]}, {key[1]})")
        seen.add(key)
        edges.append(key)
        max_index = max(max_index, u, v)
    vertex_count = max(declared if declared is not None else 0, max_index + 1)
    return Graph(vertex_count=vertex_count, edges=tuple(edges))


def serialize_edge_list(g: Graph) -> str:
    """Canonical edge-list text; parse(serialize(g)) == g."""
    lines = [f"vertices {g.vertex_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def load_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())
