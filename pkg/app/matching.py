"""
Matching engine: maximum matchings, the perfect-matching oracle used by every
structural decision, Tutte-condition helpers and barrier extraction.

Parallel edges collapse for matching purposes; answers that must name an
edge id use the lowest id of the parallel class.
"""
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx

from app.errors import PreconditionError, SizeLimitError
from app.graph import Multigraph, components

logger = logging.getLogger(__name__)

# --- CONFIGURATION ---
ENUMERATION_MAX_VERTICES = 16


@dataclass(frozen=True)
class Matching:
    edge_ids: FrozenSet[int]

    @property
    def size(self) -> int:
        return len(self.edge_ids)

    def covered(self, G: Multigraph) -> FrozenSet[int]:
        out = set()
        for i in self.edge_ids:
            e = G.edge(i)
            out.update((e.u, e.v))
        return frozenset(out)

    def is_perfect(self, G: Multigraph) -> bool:
        return 2 * self.size == G.n and len(self.covered(G)) == G.n

    def key(self) -> Tuple[int, ...]:
        return tuple(sorted(self.edge_ids))


@dataclass(frozen=True)
class Barrier:
    vertices: FrozenSet[int]
    odd_component_count: int

    @property
    def is_trivial(self) -> bool:
        return len(self.vertices) <= 1


def _mask(S: Iterable[int]) -> int:
    out = 0
    for v in S:
        out |= 1 << v
    return out


# ---------------------------------------------------------
# PERFECT-MATCHING ORACLE
# ---------------------------------------------------------
def _has_pm_on(G: Multigraph, mask: int) -> bool:
    """Does the subgraph induced by the vertex bitmask have a perfect matching?"""
    memo = G.pm_memo
    hit = memo.get(mask)
    if hit is not None:
        return hit
    if bin(mask).count("1") % 2:
        memo[mask] = False
        return False
    nbrs = G.nbr_masks
    low = mask & -mask
    v = low.bit_length() - 1
    rest = mask ^ low
    cand = nbrs[v] & rest
    found = False
    while cand:
        bit = cand & -cand
        if _has_pm_on(G, rest ^ bit):
            found = True
            break
        cand ^= bit
    memo[mask] = found
    return found


def has_perfect_matching(G: Multigraph) -> bool:
    return _has_pm_on(G, G.full_mask)


def has_pm_avoiding(G: Multigraph, S: Iterable[int]) -> bool:
    """True iff G - S has a perfect matching."""
    return _has_pm_on(G, G.full_mask & ~_mask(S))


def enumerate_perfect_matchings(G: Multigraph) -> List[Matching]:
    """Every perfect matching (as edge-id sets) once, ordered by sorted edge-id sequence."""
    if G.n > ENUMERATION_MAX_VERTICES:
        raise SizeLimitError(f"perfect matching enumeration is capped at n <= {ENUMERATION_MAX_VERTICES}")
    found: List[Tuple[int, ...]] = []

    def extend(mask: int, chosen: List[int]):
        if mask == 0:
            found.append(tuple(sorted(chosen)))
            return
        low = mask & -mask
        v = low.bit_length() - 1
        for eid in G.incident(v):
            u = G.edge(eid).other(v)
            if mask >> u & 1:
                chosen.append(eid)
                extend(mask ^ low ^ (1 << u), chosen)
                chosen.pop()

    if G.n % 2 == 0:
        extend(G.full_mask, [])
    return [Matching(frozenset(k)) for k in sorted(found)]


def matching_number_bruteforce(G: Multigraph) -> int:
    """Exhaustive maximum matching size (skip-or-match on the lowest vertex); oracle use only."""
    if G.n > ENUMERATION_MAX_VERTICES:
        raise SizeLimitError(f"exhaustive matching search is capped at n <= {ENUMERATION_MAX_VERTICES}")
    nbrs = G.nbr_masks
    memo: Dict[int, int] = {}

    def best(mask: int) -> int:
        if mask == 0:
            return 0
        if mask in memo:
            return memo[mask]
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        value = best(rest)
        cand = nbrs[v] & rest
        while cand:
            bit = cand & -cand
            value = max(value, 1 + best(rest ^ bit))
            cand ^= bit
        memo[mask] = value
        return value

    return best(G.full_mask)


# ---------------------------------------------------------
# MAXIMUM MATCHING (blossom)
# ---------------------------------------------------------
def max_matching(G: Multigraph, removed: Iterable[int] = ()) -> Matching:
    """Maximum-cardinality matching of G - removed via Edmonds' blossom algorithm."""
    removed = set(removed)
    simple = G.simple
    if removed:
        simple = simple.subgraph(v for v in range(G.n) if v not in removed)
    pairs = nx.max_weight_matching(simple, maxcardinality=True)
    return Matching(frozenset(G.lowest_edge_id(u, v) for u, v in pairs))


def matching_number(G: Multigraph, removed: Iterable[int] = ()) -> int:
    return max_matching(G, removed).size


# ---------------------------------------------------------
# TUTTE CONDITION / BARRIERS
# ---------------------------------------------------------
def odd_components(G: Multigraph, S: Iterable[int]) -> int:
    """o(G - S)."""
    return sum(1 for comp in components(G, S) if len(comp) % 2)


def is_factor_critical(G: Multigraph) -> bool:
    if G.n % 2 == 0:
        return False
    full = G.full_mask
    return all(_has_pm_on(G, full ^ (1 << v)) for v in range(G.n))


def gallai_edmonds(G: Multigraph, removed: Iterable[int] = ()) -> Tuple[FrozenSet[int], FrozenSet[int], FrozenSet[int]]:
    """
    (D, A, C) of G - removed: D is missed by some maximum matching, A = N(D) - D,
    C is the rest. Vertices in `removed` belong to none of the three.
    """
    removed = frozenset(removed)
    alive = [v for v in range(G.n) if v not in removed]
    nu = matching_number(G, removed)
    D = frozenset(v for v in alive if matching_number(G, removed | {v}) == nu)
    A = frozenset(G.neighborhood(D) - removed)
    C = frozenset(alive) - D - A
    return D, A, C


def tutte_violator(G: Multigraph) -> Optional[FrozenSet[int]]:
    """A set S with o(G - S) > |S| when G has no perfect matching, else None."""
    if has_perfect_matching(G):
        return None
    _, A, _ = gallai_edmonds(G)
    if odd_components(G, A) <= len(A):
        raise AssertionError("Gallai-Edmonds set failed to violate the Tutte condition")
    return A


def find_barrier_for_inadmissible(G: Multigraph, edge_id: int) -> Barrier:
    """
    A barrier S containing both ends of a non-admissible edge: the
    Gallai-Edmonds set A of G - V(e) violates Tutte's condition there, and
    A + V(e) is tight for G because G has a perfect matching.
    """
    e = G.edge(edge_id)
    if not has_perfect_matching(G):
        raise PreconditionError("barrier extraction needs a graph with a perfect matching")
    ends = frozenset((e.u, e.v))
    if has_pm_avoiding(G, ends):
        raise PreconditionError(f"edge {edge_id} is admissible; it lies in no barrier")
    _, A, _ = gallai_edmonds(G, ends)
    S = A | ends
    odd = odd_components(G, S)
    if odd != len(S):
        raise AssertionError(f"extracted set {sorted(S)} has o(G-S)={odd} != |S|={len(S)}")
    return Barrier(S, odd)


def is_barrier(G: Multigraph, S: Iterable[int]) -> bool:
    S = frozenset(S)
    return bool(S) and odd_components(G, S) == len(S)


def maximal_barrier(G: Multigraph, barrier: Barrier) -> Barrier:
    """
    Extend a barrier of a graph with a perfect matching until every component
    it leaves is odd and factor-critical. An even component gives up one
    vertex; an odd component K with K - x unmatchable gives up x together
    with a Tutte violator of K - x.
    """
    if not has_perfect_matching(G):
        raise PreconditionError("maximal_barrier needs a graph with a perfect matching")
    if not is_barrier(G, barrier.vertices):
        raise PreconditionError(f"{sorted(barrier.vertices)} is not a barrier")
    S = set(barrier.vertices)
    while True:
        extension = None
        for comp in components(G, S):
            if len(comp) % 2 == 0:
                extension = {min(comp)}
                break
            sub, vmap = G.delete_vertices(set(range(G.n)) - comp)
            if is_factor_critical(sub):
                continue
            back = {new: old for old, new in vmap.items()}
            x = next(u for u in range(sub.n) if not has_pm_avoiding(sub, [u]))
            rest, rmap = sub.delete_vertices([x])
            inner = {new: old for old, new in rmap.items()}
            extension = {back[x]} | {back[inner[u]] for u in tutte_violator(rest)}
            break
        if extension is None:
            break
        S |= extension
    S = frozenset(S)
    if not is_barrier(G, S):
        raise AssertionError(f"extended set {sorted(S)} is not a barrier")
    return Barrier(S, odd_components(G, S))
