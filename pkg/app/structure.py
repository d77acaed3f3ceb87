"""
Matching-covered structure: admissibility, bricks and braces, tight and
separating cuts, removable edges and removable doubletons.

Every decision reduces to the perfect-matching oracle in app.matching, so
results are exact; the exhaustive cut scans refuse graphs above
CUT_ENUMERATION_MAX_VERTICES instead of sampling.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

from app.errors import PreconditionError, SizeLimitError
from app.graph import Cut, Multigraph, contract, cut, is_bipartite, is_k_connected
from app.matching import has_perfect_matching, has_pm_avoiding

logger = logging.getLogger(__name__)

# --- CONFIGURATION ---
CUT_ENUMERATION_MAX_VERTICES = 16


@dataclass(frozen=True)
class CutClassification:
    cut: Cut
    is_trivial: bool
    is_tight: bool
    is_separating: bool

    @property
    def is_good(self) -> bool:
        return self.is_separating and not self.is_tight


@dataclass(frozen=True)
class RemovabilityReport:
    removable: FrozenSet[int]
    nonremovable: FrozenSet[int]
    doubletons: Tuple[Tuple[int, int], ...] = field(default=())

    def is_removable(self, edge_id: int) -> bool:
        return edge_id in self.removable


# ---------------------------------------------------------
# ADMISSIBILITY / MATCHING COVERED
# ---------------------------------------------------------
def is_admissible(G: Multigraph, edge_id: int) -> bool:
    e = G.edge(edge_id)
    return has_perfect_matching(G) and has_pm_avoiding(G, (e.u, e.v))


def is_matching_covered(G: Multigraph) -> bool:
    if G.n < 2 or not G.is_connected or not has_perfect_matching(G):
        return False
    # admissibility only depends on the end pair
    for u, v in {(e.u, e.v) for e in G.edges}:
        if not has_pm_avoiding(G, (u, v)):
            return False
    return True


def _require_matching_covered(G: Multigraph, what: str):
    if not is_matching_covered(G):
        raise PreconditionError(f"{what} needs a matching covered graph")


# ---------------------------------------------------------
# BRICKS / BRACES / TIGHT CUTS
# ---------------------------------------------------------
def is_brick(G: Multigraph) -> bool:
    """3-connected and G - x - y has a perfect matching for every pair x, y."""
    if not is_k_connected(G, 3):
        return False
    return all(has_pm_avoiding(G, (x, y)) for x, y in combinations(range(G.n), 2))


def is_tight_cut(G: Multigraph, X: Iterable[int]) -> bool:
    """
    No perfect matching uses two boundary edges. Two disjoint boundary edges
    e, f lie in a common perfect matching exactly when G - V(e) - V(f) has one.
    """
    C = cut(G, X)
    if len(C.inside) % 2 == 0:
        return False
    boundary = sorted(C.boundary)
    for i, a in enumerate(boundary):
        ea = G.edge(a)
        for b in boundary[i + 1:]:
            eb = G.edge(b)
            if ea.ends & eb.ends:
                continue
            if has_pm_avoiding(G, (ea.u, ea.v, eb.u, eb.v)):
                return False
    return True


def odd_shores(n: int) -> Iterator[FrozenSet[int]]:
    """Odd nontrivial shores X (3 <= |X| <= n - 3), one per complementary pair: X holds vertex 0."""
    if n > CUT_ENUMERATION_MAX_VERTICES:
        raise SizeLimitError(f"exhaustive cut enumeration is capped at n <= {CUT_ENUMERATION_MAX_VERTICES}")
    for size in range(3, n - 2, 2):
        for rest in combinations(range(1, n), size - 1):
            yield frozenset((0,) + rest)


def nontrivial_tight_cuts(G: Multigraph, first_only: bool = False) -> List[Cut]:
    found = []
    for X in odd_shores(G.n):
        if is_tight_cut(G, X):
            found.append(cut(G, X))
            if first_only:
                break
    return found


def is_brick_by_tight_cuts(G: Multigraph) -> bool:
    """Nonbipartite, matching covered and free of nontrivial tight cuts."""
    if is_bipartite(G) or not is_matching_covered(G):
        return False
    return not nontrivial_tight_cuts(G, first_only=True)


def is_brace(G: Multigraph) -> bool:
    if not is_bipartite(G) or not is_matching_covered(G):
        return False
    return not nontrivial_tight_cuts(G, first_only=True)


# ---------------------------------------------------------
# SEPARATING CUTS
# ---------------------------------------------------------
def cut_contractions(G: Multigraph, X: Iterable[int]) -> Tuple[Multigraph, Multigraph]:
    """(G/X, G/X-bar); each keeps the boundary edge ids."""
    X = frozenset(X)
    outside = frozenset(range(G.n)) - X
    return contract(G, X)[0], contract(G, outside)[0]


def is_separating_cut(G: Multigraph, X: Iterable[int]) -> bool:
    shrink_inside, shrink_outside = cut_contractions(G, X)
    return is_matching_covered(shrink_inside) and is_matching_covered(shrink_outside)


def classify_cut(G: Multigraph, X: Iterable[int]) -> CutClassification:
    C = cut(G, X)
    tight = is_tight_cut(G, C.inside)
    separating = is_separating_cut(G, C.inside)
    if tight and not separating:
        logger.warning(f"tight cut {sorted(C.inside)} is not separating; graph is probably not matching covered")
    return CutClassification(C, C.is_trivial, tight, separating)


# ---------------------------------------------------------
# REMOVABLE EDGES / DOUBLETONS
# ---------------------------------------------------------
def removable_edges(G: Multigraph) -> RemovabilityReport:
    """Edge-level partition into removable / nonremovable, tested once per parallel class."""
    _require_matching_covered(G, "removable_edges")
    verdict: Dict[Tuple[int, ...], bool] = {}
    removable = set()
    for e in G.edges:
        cls = G.parallel_class(e.id)
        if cls not in verdict:
            verdict[cls] = is_matching_covered(G.delete_edges([cls[0]]))
        if verdict[cls]:
            removable.add(e.id)
    return RemovabilityReport(frozenset(removable), frozenset(G.edge_ids) - frozenset(removable))


def removable_doubletons(G: Multigraph, report: Optional[RemovabilityReport] = None) -> List[Tuple[int, int]]:
    """Pairs of nonremovable edges whose joint deletion stays matching covered, sorted."""
    if report is None:
        report = removable_edges(G)
    found = []
    for a, b in combinations(sorted(report.nonremovable), 2):
        if is_matching_covered(G.delete_edges((a, b))):
            found.append((a, b))
    return found


def removability(G: Multigraph) -> RemovabilityReport:
    """removable_edges plus the doubleton list."""
    report = removable_edges(G)
    return RemovabilityReport(report.removable, report.nonremovable, tuple(removable_doubletons(G, report)))
