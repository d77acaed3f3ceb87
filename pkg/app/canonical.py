"""
Canonical forms for small multigraphs.

Equitable-partition refinement followed by individualisation of the first
non-singleton cell; the canonical form is the least adjacency code over all
leaves of the search tree. Automorphisms discovered at equal leaves prune
siblings that lie in one orbit of the pointwise stabiliser of the current
path.
"""
import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.errors import SizeLimitError
from app.graph import Multigraph

logger = logging.getLogger(__name__)

# --- CONFIGURATION ---
CANONICAL_MAX_VERTICES = 20

Partition = Tuple[Tuple[int, ...], ...]


class _Search:
    def __init__(self, G: Multigraph, colors: Optional[Sequence[int]]):
        self.n = G.n
        self.A = G.multiplicity_matrix()
        self.nbrs: List[List[Tuple[int, int]]] = [
            [(int(u), int(self.A[v, u])) for u in np.flatnonzero(self.A[v])] for v in range(G.n)
        ]
        self.colors = tuple(colors) if colors is not None else (0,) * G.n
        self.best_code: Optional[bytes] = None
        self.best_order: Optional[Tuple[int, ...]] = None
        self.automorphisms: List[Tuple[int, ...]] = []

    def initial_partition(self) -> Partition:
        keyed: Dict[Tuple[int, int], List[int]] = {}
        for v in range(self.n):
            keyed.setdefault((self.colors[v], sum(m for _, m in self.nbrs[v])), []).append(v)
        return tuple(tuple(keyed[k]) for k in sorted(keyed))

    def refine(self, partition: Partition) -> Partition:
        while True:
            cell_of = {}
            for i, cell in enumerate(partition):
                for v in cell:
                    cell_of[v] = i
            refined: List[Tuple[int, ...]] = []
            for cell in partition:
                if len(cell) == 1:
                    refined.append(cell)
                    continue
                groups: Dict[Tuple[Tuple[int, int], ...], List[int]] = {}
                for v in cell:
                    counts: Dict[int, int] = {}
                    for u, mult in self.nbrs[v]:
                        counts[cell_of[u]] = counts.get(cell_of[u], 0) + mult
                    groups.setdefault(tuple(sorted(counts.items())), []).append(v)
                for sig in sorted(groups):
                    refined.append(tuple(groups[sig]))
            if len(refined) == len(partition):
                return tuple(refined)
            partition = tuple(refined)

    def leaf_code(self, order: Tuple[int, ...]) -> bytes:
        idx = np.array(order, dtype=np.intp)
        permuted = self.A[np.ix_(idx, idx)]
        header = np.array([self.n], dtype=np.uint16).tobytes()
        colours = np.array([self.colors[v] for v in order], dtype=np.uint16).tobytes()
        return header + colours + permuted.tobytes()

    def stabiliser_orbits(self, fixed: Sequence[int]) -> List[int]:
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gamma in self.automorphisms:
            if any(gamma[v] != v for v in fixed):
                continue
            for v in range(self.n):
                a, b = find(v), find(gamma[v])
                if a != b:
                    parent[max(a, b)] = min(a, b)
        return [find(v) for v in range(self.n)]

    def search(self, partition: Partition, path: Tuple[int, ...]):
        partition = self.refine(partition)
        target = next((i for i, cell in enumerate(partition) if len(cell) > 1), None)
        if target is None:
            self.visit_leaf(tuple(cell[0] for cell in partition))
            return
        cell = partition[target]
        explored: List[int] = []
        for v in sorted(cell):
            if explored:
                orbit = self.stabiliser_orbits(path)
                if any(orbit[v] == orbit[u] for u in explored):
                    continue
            rest = tuple(x for x in cell if x != v)
            child = partition[:target] + ((v,), rest) + partition[target + 1:]
            self.search(child, path + (v,))
            explored.append(v)

    def visit_leaf(self, order: Tuple[int, ...]):
        code = self.leaf_code(order)
        if self.best_code is None or code < self.best_code:
            self.best_code, self.best_order = code, order
        elif code == self.best_code:
            # order[i] and best_order[i] play the same role, so best -> order is an automorphism
            gamma = [0] * self.n
            for a, b in zip(self.best_order, order):
                gamma[a] = b
            gamma_t = tuple(gamma)
            if any(gamma_t[v] != v for v in range(self.n)):
                self.automorphisms.append(gamma_t)


def canonical_labelling(G: Multigraph, colors: Optional[Sequence[int]] = None) -> Tuple[bytes, Tuple[int, ...]]:
    """(canonical form, order) where order[i] is the vertex placed at position i."""
    if G.n > CANONICAL_MAX_VERTICES:
        raise SizeLimitError(f"canonical form is capped at n <= {CANONICAL_MAX_VERTICES} (got {G.n})")
    if colors is not None and len(colors) != G.n:
        raise ValueError("one colour per vertex expected")
    if G.n == 0:
        return np.array([0], dtype=np.uint16).tobytes(), ()
    s = _Search(G, colors)
    s.search(s.initial_partition(), ())
    return s.best_code, s.best_order


def canonical_form(G: Multigraph, colors: Optional[Sequence[int]] = None) -> bytes:
    """Equal byte strings exactly for isomorphic (colour-preserving) multigraphs."""
    return canonical_labelling(G, colors)[0]


def canonical_graph(G: Multigraph) -> Multigraph:
    """The representative of G's isomorphism class: vertices renamed by canonical position."""
    _, order = canonical_labelling(G)
    perm = [0] * G.n
    for pos, v in enumerate(order):
        perm[v] = pos
    relabelled = G.relabel(perm)
    edges = sorted(relabelled.edges, key=lambda e: (e.u, e.v, e.id))
    return Multigraph(G.n, tuple(edges)).renumbered()


def is_isomorphic(G1: Multigraph, G2: Multigraph) -> bool:
    if G1.n != G2.n or G1.m != G2.m or sorted(G1.degrees) != sorted(G2.degrees):
        return False
    return canonical_form(G1) == canonical_form(G2)
