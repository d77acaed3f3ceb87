"""
Loop-free multigraphs with identity-carrying edges.

Every structural routine in the package works on `Multigraph`: vertices are
the dense labels 0..n-1, edges are (edge_id, u, v) triples with u < v and ids
that survive deletion and contraction. Parallel edges are first class because
contracting a shore of a cut routinely creates them.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np

from app.errors import GraphError, GraphFormatError

logger = logging.getLogger(__name__)


class Edge(NamedTuple):
    id: int
    u: int
    v: int

    @property
    def ends(self) -> FrozenSet[int]:
        return frozenset((self.u, self.v))

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u


@dataclass(frozen=True)
class Multigraph:
    n: int
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"negative vertex count {self.n}")
        seen: Set[int] = set()
        for e in self.edges:
            if e.u == e.v:
                raise GraphError(f"edge {e.id} is a loop at vertex {e.u}")
            if not (0 <= e.u < self.n and 0 <= e.v < self.n):
                raise GraphError(f"edge {e.id} = ({e.u}, {e.v}) has an endpoint outside 0..{self.n - 1}")
            if e.u > e.v:
                raise GraphError(f"edge {e.id} is not normalised (u < v)")
            if e.id in seen:
                raise GraphError(f"duplicate edge id {e.id}")
            seen.add(e.id)

    # --- basic accessors ---

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @cached_property
    def _by_id(self) -> Dict[int, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def edge_ids(self) -> Tuple[int, ...]:
        return tuple(e.id for e in self.edges)

    def edge(self, edge_id: int) -> Edge:
        try:
            return self._by_id[edge_id]
        except KeyError:
            raise GraphError(f"no edge with id {edge_id}") from None

    def has_edge_id(self, edge_id: int) -> bool:
        return edge_id in self._by_id

    @cached_property
    def _incidence(self) -> Tuple[Tuple[int, ...], ...]:
        inc: List[List[int]] = [[] for _ in range(self.n)]
        for e in self.edges:
            inc[e.u].append(e.id)
            inc[e.v].append(e.id)
        return tuple(tuple(sorted(x)) for x in inc)

    def incident(self, v: int) -> Tuple[int, ...]:
        """Edge ids at v, ascending."""
        return self._incidence[v]

    def degree(self, v: int) -> int:
        return len(self._incidence[v])

    @cached_property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(len(x) for x in self._incidence)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @property
    def is_cubic(self) -> bool:
        return self.n > 0 and all(d == 3 for d in self.degrees)

    @cached_property
    def _neighbors(self) -> Tuple[FrozenSet[int], ...]:
        nbrs: List[Set[int]] = [set() for _ in range(self.n)]
        for e in self.edges:
            nbrs[e.u].add(e.v)
            nbrs[e.v].add(e.u)
        return tuple(frozenset(x) for x in nbrs)

    def neighbors(self, v: int) -> FrozenSet[int]:
        return self._neighbors[v]

    def neighborhood(self, S: Iterable[int]) -> FrozenSet[int]:
        """N(S): vertices outside S with a neighbour in S."""
        S = frozenset(S)
        out: Set[int] = set()
        for v in S:
            out |= self._neighbors[v]
        return frozenset(out - S)

    @cached_property
    def _parallel_classes(self) -> Dict[Tuple[int, int], Tuple[int, ...]]:
        classes: Dict[Tuple[int, int], List[int]] = {}
        for e in self.edges:
            classes.setdefault((e.u, e.v), []).append(e.id)
        return {k: tuple(sorted(v)) for k, v in classes.items()}

    def parallel_class(self, edge_id: int) -> Tuple[int, ...]:
        e = self.edge(edge_id)
        return self._parallel_classes[(e.u, e.v)]

    def multiplicity(self, u: int, v: int) -> int:
        a, b = min(u, v), max(u, v)
        return len(self._parallel_classes.get((a, b), ()))

    def lowest_edge_id(self, u: int, v: int) -> Optional[int]:
        a, b = min(u, v), max(u, v)
        ids = self._parallel_classes.get((a, b))
        return ids[0] if ids else None

    @property
    def is_simple(self) -> bool:
        return all(len(ids) == 1 for ids in self._parallel_classes.values())

    @cached_property
    def nbr_masks(self) -> Tuple[int, ...]:
        """Adjacency of the underlying simple graph as vertex bitmasks."""
        return tuple(sum(1 << u for u in nb) for nb in self._neighbors)

    @cached_property
    def pm_memo(self) -> Dict[int, bool]:
        """Scratch memo of the perfect-matching oracle, keyed by vertex bitmask."""
        return {0: True}

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def simple(self) -> nx.Graph:
        """Underlying simple graph (parallel classes collapsed) as networkx."""
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from((u, v) for (u, v) in self._parallel_classes)
        return g

    def multiplicity_matrix(self) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=np.uint8)
        for (u, v), ids in self._parallel_classes.items():
            A[u, v] = A[v, u] = len(ids)
        return A

    @property
    def is_connected(self) -> bool:
        return self.n > 0 and nx.is_connected(self.simple)

    # --- derived graphs ---

    def delete_edges(self, edge_ids: Iterable[int]) -> "Multigraph":
        drop = set(edge_ids)
        missing = drop - set(self._by_id)
        if missing:
            raise GraphError(f"cannot delete unknown edge ids {sorted(missing)}")
        return Multigraph(self.n, tuple(e for e in self.edges if e.id not in drop))

    def delete_vertices(self, S: Iterable[int]) -> Tuple["Multigraph", Dict[int, int]]:
        """G - S with the surviving vertices relabelled densely in their old order."""
        S = set(S)
        vmap = {}
        for v in range(self.n):
            if v not in S:
                vmap[v] = len(vmap)
        edges = tuple(
            _normalised(e.id, vmap[e.u], vmap[e.v])
            for e in self.edges
            if e.u not in S and e.v not in S
        )
        return Multigraph(len(vmap), edges), vmap

    def relabel(self, perm: Sequence[int]) -> "Multigraph":
        """Copy with vertex v renamed perm[v]; edge ids and their order are kept."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabelling must be a permutation of the vertices")
        return Multigraph(self.n, tuple(_normalised(e.id, perm[e.u], perm[e.v]) for e in self.edges))

    def renumbered(self) -> "Multigraph":
        """Copy with edge ids reassigned 0..m-1 in current order."""
        return Multigraph(self.n, tuple(Edge(i, e.u, e.v) for i, e in enumerate(self.edges)))

    def edge_pairs(self) -> List[Tuple[int, int]]:
        return [(e.u, e.v) for e in self.edges]

    def __repr__(self) -> str:
        return f"Multigraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Cut:
    inside: FrozenSet[int]
    boundary: FrozenSet[int]
    n: int

    @property
    def outside(self) -> FrozenSet[int]:
        return frozenset(range(self.n)) - self.inside

    @property
    def is_trivial(self) -> bool:
        return len(self.inside) <= 1 or self.n - len(self.inside) <= 1

    @property
    def is_nontrivial(self) -> bool:
        return not self.is_trivial

    def complement(self) -> "Cut":
        return Cut(self.outside, self.boundary, self.n)


@dataclass(frozen=True)
class Bipartition:
    side_U: FrozenSet[int]
    side_W: FrozenSet[int]

    def side_of(self, v: int) -> str:
        return "U" if v in self.side_U else "W"

    def swapped(self) -> "Bipartition":
        return Bipartition(self.side_W, self.side_U)


def _normalised(edge_id: int, a: int, b: int) -> Edge:
    return Edge(edge_id, a, b) if a < b else Edge(edge_id, b, a)


# ---------------------------------------------------------
# CONSTRUCTION
# ---------------------------------------------------------
def build_graph(n: int, endpoint_pairs: Iterable[Sequence[int]]) -> Multigraph:
    """Edge ids are assigned 0..m-1 in input order."""
    edges = []
    for i, pair in enumerate(endpoint_pairs):
        a, b = int(pair[0]), int(pair[1])
        if a == b:
            raise GraphError(f"pair {i} = ({a}, {b}) is a loop")
        if not (0 <= a < n and 0 <= b < n):
            raise GraphError(f"pair {i} = ({a}, {b}) has an endpoint outside 0..{n - 1}")
        edges.append(_normalised(i, a, b))
    return Multigraph(n, tuple(edges))


def cut(G: Multigraph, X: Iterable[int]) -> Cut:
    X = frozenset(X)
    boundary = frozenset(e.id for e in G.edges if (e.u in X) != (e.v in X))
    return Cut(X, boundary, G.n)


def edges_between(G: Multigraph, X: Iterable[int], Y: Iterable[int]) -> List[int]:
    """E[X, Y] for disjoint X, Y (E(X) when X == Y)."""
    X, Y = frozenset(X), frozenset(Y)
    if X == Y:
        return [e.id for e in G.edges if e.u in X and e.v in X]
    return [e.id for e in G.edges if (e.u in X and e.v in Y) or (e.u in Y and e.v in X)]


def contract(G: Multigraph, X: Iterable[int]) -> Tuple[Multigraph, Dict[int, int]]:
    """
    G/X: X shrinks to one new vertex (the last label). Edges inside X vanish,
    boundary edges keep their ids and are re-ended at the new vertex.
    """
    X = frozenset(X)
    if not X or not X < frozenset(range(G.n)):
        raise GraphError("contraction needs a nonempty proper subset of the vertices")
    vmap: Dict[int, int] = {}
    for v in range(G.n):
        if v not in X:
            vmap[v] = len(vmap)
    shrunk = len(vmap)
    for v in X:
        vmap[v] = shrunk
    edges = []
    for e in G.edges:
        if e.u in X and e.v in X:
            continue
        edges.append(_normalised(e.id, vmap[e.u], vmap[e.v]))
    return Multigraph(shrunk + 1, tuple(edges)), vmap


def simplify(G: Multigraph) -> Multigraph:
    """Collapse every parallel class to its lowest edge id."""
    keep = {ids[0] for ids in G._parallel_classes.values()}
    return Multigraph(G.n, tuple(e for e in G.edges if e.id in keep))


def components(G: Multigraph, removed: Iterable[int] = ()) -> List[FrozenSet[int]]:
    """Connected components of G - removed, sorted by lowest vertex."""
    removed = set(removed)
    sub = G.simple.subgraph(v for v in range(G.n) if v not in removed)
    comps = [frozenset(c) for c in nx.connected_components(sub)]
    return sorted(comps, key=min)


def bipartition(G: Multigraph) -> Optional[Bipartition]:
    """
    2-colouring or None. In each component the lowest vertex goes to side U,
    so the answer is a function of the labelled graph only.
    """
    try:
        colour = nx.bipartite.color(G.simple)
    except nx.NetworkXError:
        return None
    side_U: Set[int] = set()
    for comp in components(G):
        root = min(comp)
        side_U.update(v for v in comp if colour[v] == colour[root])
    U = frozenset(side_U)
    return Bipartition(U, frozenset(range(G.n)) - U)


def is_bipartite(G: Multigraph) -> bool:
    return bipartition(G) is not None


def is_k_connected(G: Multigraph, k: int) -> bool:
    """Vertex connectivity of the underlying simple graph is at least k (needs n >= k + 1)."""
    if k < 1 or k > 3:
        raise GraphError(f"connectivity order {k} outside 1..3")
    if G.n < k + 1:
        return False
    return nx.node_connectivity(G.simple) >= k


def triangles(G: Multigraph) -> List[Tuple[int, int, int]]:
    """Vertex triples of triangles of the underlying simple graph, sorted."""
    found = []
    for u in range(G.n):
        for v in G.neighbors(u):
            if v <= u:
                continue
            for w in G.neighbors(u) & G.neighbors(v):
                if w > v:
                    found.append((u, v, w))
    return sorted(found)


# ---------------------------------------------------------
# TEXT FORMATS
# ---------------------------------------------------------
GRAPH6_HEADER = b">>graph6<<"


def parse_graph6(text) -> Multigraph:
    try:
        data = text.encode("ascii") if isinstance(text, str) else bytes(text)
    except UnicodeEncodeError:
        raise GraphFormatError("non-ascii byte in graph6 line") from None
    data = data.strip()
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER):]
    if not data:
        raise GraphFormatError("empty graph6 string")
    try:
        g = nx.from_graph6_bytes(data)
    except (nx.NetworkXError, ValueError, IndexError) as e:
        raise GraphFormatError(f"malformed graph6 {data[:20]!r}: {e}") from None
    return build_graph(g.number_of_nodes(), sorted(tuple(sorted(p)) for p in g.edges()))


def emit_graph6(G: Multigraph) -> str:
    if not G.is_simple:
        raise GraphFormatError("graph6 cannot carry parallel edges; use the edge-list format")
    return nx.to_graph6_bytes(G.simple, header=False).decode("ascii").strip()


def emit_edge_list(G: Multigraph) -> str:
    lines = [f"{G.n} {G.m}"]
    lines.extend(f"{e.u} {e.v}" for e in G.edges)
    return "\n".join(lines) + "\n"


def parse_edge_list_stream(text: str, first_line: int = 1) -> Iterator[Tuple[int, Multigraph]]:
    """
    Yields (line_number, graph) for a stream of "n m" headers each followed by
    m "u v" lines; blank lines separate graphs.
    """
    lines = text.splitlines()
    i = 0
    while i < len(lines):
        if not lines[i].strip():
            i += 1
            continue
        header_line = first_line + i
        head = lines[i].split()
        if len(head) != 2:
            raise GraphFormatError(f"expected 'n m' header, got {lines[i]!r}", header_line)
        try:
            n, m = int(head[0]), int(head[1])
        except ValueError:
            raise GraphFormatError(f"non-integer header {lines[i]!r}", header_line) from None
        pairs = []
        for j in range(m):
            k = i + 1 + j
            if k >= len(lines) or not lines[k].strip():
                raise GraphFormatError(f"expected {m} edge lines, found {j}", first_line + k)
            parts = lines[k].split()
            try:
                a, b = int(parts[0]), int(parts[1])
            except (ValueError, IndexError):
                raise GraphFormatError(f"bad edge line {lines[k]!r}", first_line + k) from None
            if len(parts) != 2:
                raise GraphFormatError(f"bad edge line {lines[k]!r}", first_line + k)
            pairs.append((a, b))
        try:
            graph = build_graph(n, pairs)
        except GraphFormatError:
            raise
        except GraphError as e:
            raise GraphFormatError(str(e), header_line) from None
        yield header_line, graph
        i += 1 + m


def parse_edge_list(text: str) -> Multigraph:
    graphs = list(parse_edge_list_stream(text))
    if len(graphs) != 1:
        raise GraphFormatError(f"expected exactly one graph, found {len(graphs)}")
    return graphs[0][1]
