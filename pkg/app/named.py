"""Landmark graphs used by the recognisers, the corpus and the tests."""
import networkx as nx

from app.graph import Multigraph, build_graph


def k4() -> Multigraph:
    return build_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def c6_complement() -> Multigraph:
    """Triangles {0,2,4} and {1,3,5} joined by the matching 03, 14, 25."""
    return build_graph(6, [(0, 2), (0, 4), (2, 4), (1, 3), (1, 5), (3, 5), (0, 3), (1, 4), (2, 5)])


def prism() -> Multigraph:
    return c6_complement()


def k33() -> Multigraph:
    return build_graph(6, [(u, w) for u in range(3) for w in range(3, 6)])


def petersen() -> Multigraph:
    g = nx.petersen_graph()
    return build_graph(10, sorted(tuple(sorted(p)) for p in g.edges()))


def cycle(n: int) -> Multigraph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Multigraph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Multigraph:
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def triangle() -> Multigraph:
    return cycle(3)


def digon() -> Multigraph:
    return build_graph(2, [(0, 1), (0, 1)])
