"""
Near-bipartite analysis: doubleton witnesses, type I / type II labelling of
nonremovable edges, and the executable checks of the two main bounds for
near-bipartite bricks.
"""
import enum
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from app.canonical import canonical_form
from app.errors import PreconditionError
from app.graph import Bipartition, Multigraph, bipartition, is_bipartite, triangles
from app.named import k4
from app.schemas import TheoremReport
from app.structure import RemovabilityReport, is_brick, is_matching_covered, removable_edges

logger = logging.getLogger(__name__)

_K4_FORM = canonical_form(k4())


@dataclass(frozen=True)
class DoubletonWitness:
    e1: int
    e2: int
    bipartition: Bipartition

    @property
    def pair(self) -> Tuple[int, int]:
        return self.e1, self.e2


class EdgeType(str, enum.Enum):
    TYPE_I = "I"
    TYPE_II = "II"


@dataclass(frozen=True)
class EdgeTypeMap:
    witness: DoubletonWitness
    labels: Dict[int, EdgeType]

    def of_type(self, kind: EdgeType) -> List[int]:
        return sorted(i for i, t in self.labels.items() if t is kind)


@dataclass(frozen=True)
class VertexTypeCounts:
    vertex: int
    type_one: int
    type_two: int

    @property
    def within_bounds(self) -> bool:
        return self.type_one <= 1 and self.type_two <= 2


def is_k4(G: Multigraph) -> bool:
    return G.n == 4 and G.m == 6 and canonical_form(G) == _K4_FORM


# ---------------------------------------------------------
# WITNESSES
# ---------------------------------------------------------
def near_bipartite_witnesses(G: Multigraph) -> List[DoubletonWitness]:
    """
    Every pair {e1, e2} (e1 the lower id) with G - {e1, e2} bipartite and
    matching covered; U is the side holding both ends of e1.
    """
    if is_bipartite(G):
        raise PreconditionError("near-bipartiteness is defined for nonbipartite graphs")
    if not is_matching_covered(G):
        raise PreconditionError("near_bipartite_witnesses needs a matching covered graph")
    found = []
    for a, b in combinations(sorted(G.edge_ids), 2):
        H = G.delete_edges((a, b))
        sides = bipartition(H)
        if sides is None or not is_matching_covered(H):
            continue
        ea, eb = G.edge(a), G.edge(b)
        if ea.u not in sides.side_U:
            sides = sides.swapped()
        if ea.v not in sides.side_U or not eb.ends <= sides.side_W:
            continue
        found.append(DoubletonWitness(a, b, sides))
    return found


def validate_witness(G: Multigraph, witness: DoubletonWitness):
    """Raise PreconditionError unless the witness is a near-bipartite certificate for G."""
    H = G.delete_edges(witness.pair)
    U, W = witness.bipartition.side_U, witness.bipartition.side_W
    if U | W != frozenset(range(G.n)) or U & W:
        raise PreconditionError("witness sides do not partition the vertices")
    for e in H.edges:
        if (e.u in U) == (e.v in U):
            raise PreconditionError(f"edge {e.id} of H does not cross the bipartition")
    if not G.edge(witness.e1).ends <= U or not G.edge(witness.e2).ends <= W:
        raise PreconditionError("e1 must lie inside U and e2 inside W")
    if not is_matching_covered(H):
        raise PreconditionError("G - {e1, e2} is not matching covered")


def classify_nonremovable(G: Multigraph, witness: DoubletonWitness,
                          report: Optional[RemovabilityReport] = None) -> EdgeTypeMap:
    validate_witness(G, witness)
    if report is None:
        report = removable_edges(G)
    H = G.delete_edges(witness.pair)
    in_H = removable_edges(H)
    labels = {}
    for i in sorted(report.nonremovable - set(witness.pair)):
        labels[i] = EdgeType.TYPE_I if in_H.is_removable(i) else EdgeType.TYPE_II
    return EdgeTypeMap(witness, labels)


def type_count_bounds(G: Multigraph, witness: DoubletonWitness,
                      report: Optional[RemovabilityReport] = None) -> Tuple[List[VertexTypeCounts], List[VertexTypeCounts]]:
    """(per-vertex counts, the vertices breaking the at-most-one type I / at-most-two type II bound)."""
    types = classify_nonremovable(G, witness, report)
    counts = []
    for v in range(G.n):
        one = two = 0
        for i in G.incident(v):
            kind = types.labels.get(i)
            if kind is EdgeType.TYPE_I:
                one += 1
            elif kind is EdgeType.TYPE_II:
                two += 1
        counts.append(VertexTypeCounts(v, one, two))
    return counts, [c for c in counts if not c.within_bounds]


# ---------------------------------------------------------
# MAIN BOUNDS
# ---------------------------------------------------------
def _require_near_bipartite_brick(G: Multigraph) -> List[DoubletonWitness]:
    if is_k4(G):
        raise PreconditionError("K4 is excluded from the near-bipartite brick bounds")
    if not is_brick(G):
        raise PreconditionError("graph is not a brick")
    witnesses = near_bipartite_witnesses(G)
    if not witnesses:
        raise PreconditionError("brick is not near-bipartite")
    return witnesses


def bad_vertices(G: Multigraph, report: RemovabilityReport) -> List[int]:
    """Vertices incident with three or more nonremovable edges."""
    return [v for v in range(G.n) if sum(1 for i in G.incident(v) if i in report.nonremovable) >= 3]


def triangle_cover(G: Multigraph, targets: List[int]) -> Optional[List[Tuple[int, int, int]]]:
    """At most two vertex-disjoint triangles whose union contains targets, or None."""
    need = set(targets)
    if not need:
        return []
    tris = triangles(G)
    for t in tris:
        if need <= set(t):
            return [t]
    for s, t in combinations(tris, 2):
        if set(s) & set(t):
            continue
        if need <= set(s) | set(t):
            return [s, t]
    return None


def _stronger_form(G: Multigraph, bad: List[int], witnesses: List[DoubletonWitness]) -> bool:
    """Some witness puts every bad vertex in a triangle through e1 or e2."""
    tris = triangles(G)
    for w in witnesses:
        ends = [G.edge(w.e1).ends, G.edge(w.e2).ends]
        through = [set(t) for t in tris if any(e <= set(t) for e in ends)]
        if all(any(v in t for t in through) for v in bad):
            return True
    return False


def check_theorem1(G: Multigraph, report: Optional[RemovabilityReport] = None) -> TheoremReport:
    """
    Every vertex except at most six degree-3 vertices covered by two disjoint
    triangles is incident with at most two nonremovable edges.
    """
    witnesses = _require_near_bipartite_brick(G)
    if report is None:
        report = removable_edges(G)
    bad = bad_vertices(G, report)
    cover = triangle_cover(G, bad)
    failures = []
    if len(bad) > 6:
        failures.append(f"{len(bad)} exceptional vertices")
    high = [v for v in bad if G.degree(v) != 3]
    if high:
        failures.append(f"exceptional vertices of degree != 3: {high}")
    if cover is None:
        failures.append("exceptional vertices not covered by two disjoint triangles")
    stronger = _stronger_form(G, bad, witnesses)
    if not stronger:
        logger.info(f"exceptional vertices {bad} are not all in triangles through a doubleton edge")
    return TheoremReport(
        theorem_id="theorem1",
        holds=not failures,
        n=G.n,
        removable_count=len(report.removable),
        exceptional_vertices=bad,
        covering_triangles=[list(t) for t in cover or []],
        stronger_form=stronger,
        detail="; ".join(failures),
    )


def check_theorem2(G: Multigraph, report: Optional[RemovabilityReport] = None) -> TheoremReport:
    """At least (n - 6) / 2 removable edges, with equality only for tri-ladders."""
    from app.triladder import is_triladder

    _require_near_bipartite_brick(G)
    if report is None:
        report = removable_edges(G)
    count = len(report.removable)
    equality = 2 * count == G.n - 6
    verdict = is_triladder(G) if equality else None
    failures = []
    if 2 * count < G.n - 6:
        failures.append(f"{count} removable edges < (n-6)/2 = {(G.n - 6) / 2}")
    if equality and not verdict:
        failures.append("bound attained by a graph that is not a tri-ladder")
    return TheoremReport(
        theorem_id="theorem2",
        holds=not failures,
        n=G.n,
        removable_count=count,
        lower_bound=(G.n - 6) / 2,
        equality=equality,
        triladder=verdict,
        detail="; ".join(failures),
    )
