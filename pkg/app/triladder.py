"""
Splicing, tri-ladders and 3-cut decompositions of cubic graphs.

A tri-ladder starts from the complement of the 6-cycle with a fixed triangle
T and a moving triangle; every step splices K4 at a vertex of the moving
triangle, turning the opposite triangle edge into a rung and leaving the new
K4 triangle as the moving one. Edge ids survive splicing and contraction, so
rungs are tracked by id through every later step.
"""
import enum
import logging
from collections import Counter
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from app.canonical import canonical_form
from app.errors import GraphError, PreconditionError, SizeLimitError
from app.graph import Cut, Edge, Multigraph, contract, cut, edges_between, is_bipartite, is_k_connected, triangles
from app.named import c6_complement, k4
from app.near_bipartite import DoubletonWitness, is_k4, near_bipartite_witnesses, validate_witness
from app.schemas import DecompositionNodeModel
from app.structure import RemovabilityReport, removability, removable_edges

logger = logging.getLogger(__name__)

# --- CONFIGURATION ---
TRILADDER_MAX_VERTICES = 16
RIDGE_LABELS = ("U", "V", "W")

_C6_COMPLEMENT_FORM = canonical_form(c6_complement())


# ---------------------------------------------------------
# SPLICING
# ---------------------------------------------------------
@dataclass(frozen=True)
class SpliceResult:
    graph: Multigraph
    vmap1: Dict[int, int]
    vmap2: Dict[int, int]
    emap2: Dict[int, int]
    joined: Tuple[int, ...]


def _slots(G: Multigraph, u: int) -> Counter:
    return Counter(G.edge(i).other(u) for i in G.incident(u))


def splice_with_maps(G1: Multigraph, u1: int, G2: Multigraph, u2: int,
                     bijection: Sequence[Tuple[int, int]]) -> SpliceResult:
    """
    Splice G1 at u1 with G2 at u2. `bijection` lists (x1, x2) neighbour pairs,
    one per edge slot at u1 and u2 (a neighbour joined by k parallel edges
    appears k times). G1 vertices come first in their old order; G1 edge ids
    are kept, G2 edges and the joining edges get fresh ids above them.
    """
    if G1.degree(u1) != G2.degree(u2):
        raise GraphError(f"cannot splice: deg({u1}) = {G1.degree(u1)} but deg({u2}) = {G2.degree(u2)}")
    pairs = [(int(a), int(b)) for a, b in bijection]
    if Counter(a for a, _ in pairs) != _slots(G1, u1) or Counter(b for _, b in pairs) != _slots(G2, u2):
        raise GraphError("splice bijection must use every neighbour slot of both vertices exactly once")
    H1, vmap1 = G1.delete_vertices([u1])
    H2, inner = G2.delete_vertices([u2])
    shift = H1.n
    vmap2 = {v: shift + i for v, i in inner.items()}
    next_id = max(G1.edge_ids, default=-1) + 1
    edges = list(H1.edges)
    emap2 = {}
    for e in H2.edges:
        emap2[e.id] = next_id
        edges.append(Edge(next_id, e.u + shift, e.v + shift))
        next_id += 1
    joined = []
    for a, b in pairs:
        edges.append(Edge(next_id, vmap1[a], vmap2[b]))
        joined.append(next_id)
        next_id += 1
    return SpliceResult(Multigraph(shift + H2.n, tuple(edges)), vmap1, vmap2, emap2, tuple(joined))


def splice(G1: Multigraph, u1: int, G2: Multigraph, u2: int, bijection: Sequence[Tuple[int, int]]) -> Multigraph:
    return splice_with_maps(G1, u1, G2, u2, bijection).graph


# ---------------------------------------------------------
# BLUEPRINTS
# ---------------------------------------------------------
@dataclass(frozen=True)
class SpliceRecord:
    rank: int
    triangle_vertex: int  # label in the graph before this splice
    rung: int             # edge id, stable in every later graph


@dataclass(frozen=True)
class TriLadderBlueprint:
    fixed_triangle: Tuple[int, int, int]
    moving_triangle: Tuple[int, int, int]
    splices: Tuple[SpliceRecord, ...] = ()
    ridges: Tuple[Tuple[str, Tuple[int, ...]], ...] = ()

    @property
    def r(self) -> int:
        return len(self.splices)

    @property
    def rungs(self) -> Tuple[int, ...]:
        return tuple(s.rung for s in self.splices)

    def rank_of(self, edge_id: int) -> Optional[int]:
        return next((s.rank for s in self.splices if s.rung == edge_id), None)

    def ridge(self, label: str) -> Tuple[int, ...]:
        return dict(self.ridges)[label]

    def to_text(self, G: Multigraph) -> str:
        lines = [
            f"tri-ladder n={G.n} r={self.r}",
            "fixed_triangle=" + " ".join(map(str, self.fixed_triangle)),
            "moving_triangle=" + " ".join(map(str, self.moving_triangle)),
        ]
        for s in self.splices:
            e = G.edge(s.rung)
            lines.append(f"splice {s.rank}: triangle_vertex={s.triangle_vertex}, rung=({e.u},{e.v}), rank={s.rank}")
        for label, path in self.ridges:
            lines.append(f"ridge {label}: " + " ".join(map(str, path)))
        return "\n".join(lines) + "\n"


def _base() -> Tuple[Multigraph, TriLadderBlueprint]:
    ridges = (("U", (0, 3)), ("V", (2, 5)), ("W", (4, 1)))
    return c6_complement(), TriLadderBlueprint((0, 2, 4), (1, 3, 5), (), ridges)


def _extend(G: Multigraph, bp: TriLadderBlueprint, w: int, order: Sequence[int]) -> Tuple[Multigraph, TriLadderBlueprint]:
    """Splice K4 (at its vertex 0) onto moving-triangle vertex w."""
    u, v = (x for x in bp.moving_triangle if x != w)
    p = next(x for x in G.neighbors(w) if x not in bp.moving_triangle)
    pairs = [(p, order[0]), (u, order[1]), (v, order[2])]
    res = splice_with_maps(G, w, k4(), 0, pairs)
    new = {x: res.vmap2[k] for x, k in pairs}
    ridges = []
    for label, ridge in bp.ridges:
        body = tuple(res.vmap1[x] for x in ridge if x != w)
        end = ridge[-1]
        ridges.append((label, body + (new[p] if end == w else new[end],)))
    record = SpliceRecord(bp.r + 1, w, G.lowest_edge_id(u, v))
    extended = TriLadderBlueprint(
        tuple(res.vmap1[x] for x in bp.fixed_triangle),
        tuple(sorted(new.values())),
        bp.splices + (record,),
        tuple(ridges),
    )
    return res.graph, extended


def _state_colours(G: Multigraph, bp: TriLadderBlueprint) -> List[int]:
    colours = [0] * G.n
    for v in bp.fixed_triangle:
        colours[v] = 1
    for v in bp.moving_triangle:
        colours[v] = 2
    return colours


def generate_triladders(max_n: int) -> List[Tuple[Multigraph, TriLadderBlueprint]]:
    """All tri-ladders on at most max_n vertices up to isomorphism, smallest first."""
    if max_n < 6 or max_n % 2:
        raise GraphError(f"max_n must be an even number >= 6 (got {max_n})")
    if max_n > TRILADDER_MAX_VERTICES:
        raise SizeLimitError(f"tri-ladder generation is capped at n <= {TRILADDER_MAX_VERTICES}")
    layer = [_base()]
    out: List[Tuple[Multigraph, TriLadderBlueprint]] = []
    seen = set()
    while layer:
        for G, bp in layer:
            key = canonical_form(G)
            if key not in seen:
                seen.add(key)
                out.append((G, bp))
        if layer[0][0].n + 2 > max_n:
            break
        states = set()
        children = []
        for G, bp in layer:
            for w in bp.moving_triangle:
                for order in permutations((1, 2, 3)):
                    H, hb = _extend(G, bp, w, order)
                    key = canonical_form(H, _state_colours(H, hb))
                    if key not in states:
                        states.add(key)
                        children.append((H, hb))
        logger.debug(f"tri-ladder layer n={children[0][0].n if children else '-'}: {len(children)} states")
        layer = children
    logger.info(f"Generated {len(out)} tri-ladders up to n={max_n}")
    return out


def trace_ridges(G: Multigraph, fixed: Sequence[int], moving: Sequence[int],
                 rungs: Iterable[int]) -> Optional[List[Tuple[int, ...]]]:
    """
    The three paths left after deleting the rungs and both triangles' edges,
    each walked from its fixed-triangle end; None unless they are three
    vertex-disjoint T-to-moving paths covering every vertex.
    """
    fixed, moving = set(fixed), set(moving)
    drop = set(rungs)
    for tri in (fixed, moving):
        for a, b in combinations(sorted(tri), 2):
            if G.multiplicity(a, b):
                drop.update(G.parallel_class(G.lowest_edge_id(a, b)))
    adj: Dict[int, List[int]] = {v: [] for v in range(G.n)}
    for e in G.edges:
        if e.id not in drop:
            adj[e.u].append(e.v)
            adj[e.v].append(e.u)
    paths = []
    for start in sorted(fixed):
        path, prev, cur = [start], None, start
        while cur not in moving:
            step = [x for x in adj[cur] if x != prev]
            if len(step) != 1 or len(path) > G.n:
                return None
            prev, cur = cur, step[0]
            path.append(cur)
        paths.append(tuple(path))
    covered = [v for p in paths for v in p]
    if len(covered) != G.n or len(set(covered)) != G.n:
        return None
    return paths


def structural_check(G: Multigraph, bp: TriLadderBlueprint) -> List[str]:
    """Problems with a blueprint against its graph; empty when the tri-ladder shape holds."""
    problems = []
    if G.n != 6 + 2 * bp.r:
        problems.append(f"n = {G.n} but 6 + 2r = {6 + 2 * bp.r}")
    if not G.is_cubic:
        problems.append("graph is not cubic")
    tris = {tuple(sorted(t)) for t in triangles(G)}
    for name, t in (("fixed", bp.fixed_triangle), ("moving", bp.moving_triangle)):
        if tuple(sorted(t)) not in tris:
            problems.append(f"{name} triangle {t} is not a triangle")
    if set(bp.fixed_triangle) & set(bp.moving_triangle):
        problems.append("fixed and moving triangles meet")
    ends = [v for i in bp.rungs for v in G.edge(i).ends]
    if len(set(ends)) != len(ends):
        problems.append("rungs do not form a matching")
    paths = trace_ridges(G, bp.fixed_triangle, bp.moving_triangle, bp.rungs)
    if paths is None:
        problems.append("deleting the rungs does not leave three ridges")
    else:
        ridge_of = {v: i for i, p in enumerate(paths) for v in p}
        for i in bp.rungs:
            e = G.edge(i)
            if ridge_of[e.u] == ridge_of[e.v]:
                problems.append(f"rung {i} joins a ridge to itself")
    return problems


# ---------------------------------------------------------
# 3-CUTS
# ---------------------------------------------------------
def _shores_without(G: Multigraph, removed: Sequence[int]) -> List[FrozenSet[int]]:
    parent = list(range(G.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    skip = set(removed)
    for e in G.edges:
        if e.id not in skip:
            a, b = find(e.u), find(e.v)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: Dict[int, List[int]] = {}
    for v in range(G.n):
        groups.setdefault(find(v), []).append(v)
    return [frozenset(g) for g in groups.values()]


def nontrivial_3cuts(G: Multigraph) -> List[Cut]:
    """
    Every edge cut of size 3 whose shores both induce connected subgraphs and
    have at least two vertices. Each cut is reported once by its smaller shore
    (the shore holding vertex 0 on a tie), sorted by (|X|, X).
    """
    shores = set()
    for triple in combinations(sorted(G.edge_ids), 3):
        parts = _shores_without(G, triple)
        if len(parts) != 2:
            continue
        A, B = parts
        if min(len(A), len(B)) < 2:
            continue
        if not all((G.edge(i).u in A) != (G.edge(i).v in A) for i in triple):
            continue
        if len(A) > len(B) or (len(A) == len(B) and 0 not in A):
            A = B
        shores.add(A)
    return [cut(G, X) for X in sorted(shores, key=lambda X: (len(X), sorted(X)))]


def is_essentially_4_edge_connected(G: Multigraph) -> bool:
    if not G.is_cubic or not G.is_connected:
        return False
    for e in G.edges:
        if len(_shores_without(G, [e.id])) > 1:
            return False
    return not nontrivial_3cuts(G)


class CutVerdict(str, enum.Enum):
    TIGHT = "tight"
    GOOD = "good"
    UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class ThreeCutVerdict:
    inside: FrozenSet[int]
    verdict: CutVerdict
    odd: bool
    balanced: bool
    forward_edges: Tuple[int, ...]
    reverse_edges: Tuple[int, ...]
    e1_inside: bool
    zw: Optional[int] = None
    zw_nonremovable: Optional[bool] = None

    @property
    def cut_inside(self) -> List[int]:
        return sorted(self.inside)


def classify_3cut(G: Multigraph, X: Iterable[int], witness: DoubletonWitness,
                  report: Optional[RemovabilityReport] = None) -> ThreeCutVerdict:
    """
    Tight / good verdict of a nontrivial 3-cut from the witness bipartition
    alone. The shore is oriented so that it holds at least as many U- as
    W-vertices; `forward_edges` is E[X&U, X-bar&W] and `reverse_edges` is
    E[X&W, X-bar&U].
    """
    if not G.is_cubic:
        raise PreconditionError("classify_3cut needs a cubic graph")
    C = cut(G, X)
    if len(C.boundary) != 3 or C.is_trivial:
        raise PreconditionError(f"{sorted(C.inside)} does not define a nontrivial 3-cut")
    validate_witness(G, witness)
    U, W = witness.bipartition.side_U, witness.bipartition.side_W
    inside = C.inside
    if len(inside & U) < len(inside & W):
        inside = C.outside
    outside = frozenset(range(G.n)) - inside
    XU, XW, OU, OW = inside & U, inside & W, outside & U, outside & W
    e1, e2 = G.edge(witness.e1).ends, G.edge(witness.e2).ends
    forward = tuple(edges_between(G, XU, OW)) if XU and OW else ()
    reverse = tuple(edges_between(G, XW, OU)) if XW and OU else ()

    e1_inside = e1 <= XU and bool(e2 & XW)
    e2_outside = e2 <= OW and bool(e1 & OU)
    tight = not reverse and (e1_inside or e2_outside)
    good = e1 <= XU and e2 <= OW and len(forward) == 2 and len(reverse) == 1
    if tight:
        verdict = CutVerdict.TIGHT
    elif good:
        verdict = CutVerdict.GOOD
    else:
        verdict = CutVerdict.UNCLASSIFIED
    zw = zw_nonremovable = None
    if good:
        if report is None:
            report = removable_edges(G)
        zw = reverse[0]
        zw_nonremovable = zw in report.nonremovable
    return ThreeCutVerdict(
        inside=inside,
        verdict=verdict,
        odd=len(inside) % 2 == 1,
        balanced=len(XU) == len(XW) + 1,
        forward_edges=forward,
        reverse_edges=reverse,
        e1_inside=e1_inside,
        zw=zw,
        zw_nonremovable=zw_nonremovable,
    )


def _has_witness_pair(G: Multigraph, a: int, b: int) -> bool:
    pair = (min(a, b), max(a, b))
    try:
        return any(w.pair == pair for w in near_bipartite_witnesses(G))
    except PreconditionError:
        return False


def contractions_match_verdict(G: Multigraph, verdict: ThreeCutVerdict, witness: DoubletonWitness) -> bool:
    """
    Tight: the contraction of the side holding the inner doubleton edge's
    shore is bipartite, the other keeps {e1, e2}. Good: G/X-bar keeps
    {e1, zw} and G/X keeps {e2, zw}.
    """
    X = verdict.inside
    outside = frozenset(range(G.n)) - X
    shrink_inside, _ = contract(G, X)
    shrink_outside, _ = contract(G, outside)
    if verdict.verdict is CutVerdict.GOOD:
        return (_has_witness_pair(shrink_outside, witness.e1, verdict.zw)
                and _has_witness_pair(shrink_inside, witness.e2, verdict.zw))
    if verdict.verdict is CutVerdict.TIGHT:
        bipartite_side, nb_side = (shrink_inside, shrink_outside) if verdict.e1_inside else (shrink_outside, shrink_inside)
        return is_bipartite(bipartite_side) and _has_witness_pair(nb_side, witness.e1, witness.e2)
    return False


# ---------------------------------------------------------
# DECOMPOSITIONS
# ---------------------------------------------------------
@dataclass(frozen=True)
class DecompositionNode:
    graph: Multigraph
    cut: Optional[Cut] = None
    children: Tuple["DecompositionNode", ...] = ()

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def leaves(self) -> List[Multigraph]:
        if self.is_leaf:
            return [self.graph]
        return [g for child in self.children for g in child.leaves()]

    def to_text(self, depth: int = 0) -> str:
        pad = "  " * depth
        G = self.graph
        if self.is_leaf:
            tag = " K4" if is_k4(G) else ""
            return f"{pad}leaf n={G.n} m={G.m}{tag}\n"
        head = f"{pad}node n={G.n} m={G.m} cut={sorted(self.cut.inside)} boundary={sorted(self.cut.boundary)}\n"
        return head + "".join(child.to_text(depth + 1) for child in self.children)

    def to_model(self) -> DecompositionNodeModel:
        G = self.graph
        return DecompositionNodeModel(
            n=G.n,
            m=G.m,
            edges=[[e.u, e.v] for e in G.edges],
            cut_inside=sorted(self.cut.inside) if self.cut else None,
            cut_boundary=sorted(self.cut.boundary) if self.cut else None,
            is_k4=self.is_leaf and is_k4(G),
            children=[c.to_model() for c in self.children],
        )


def _require_cubic_3_connected(G: Multigraph):
    if not G.is_cubic or not is_k_connected(G, 3):
        raise PreconditionError("decomposition needs a 3-connected cubic graph")


def _split(G: Multigraph, C: Cut) -> Tuple[Multigraph, Multigraph]:
    """(G/X-bar, G/X): the first child keeps the shore X."""
    return contract(G, C.outside)[0], contract(G, C.inside)[0]


def three_cut_decomposition(G: Multigraph) -> DecompositionNode:
    """Split along the least nontrivial 3-cut until no child has one."""
    _require_cubic_3_connected(G)

    def build(H: Multigraph) -> DecompositionNode:
        cuts = nontrivial_3cuts(H)
        if not cuts:
            return DecompositionNode(H)
        C = cuts[0]
        return DecompositionNode(H, C, tuple(build(child) for child in _split(H, C)))

    return build(G)


def k4_decomposition(G: Multigraph) -> Optional[DecompositionNode]:
    """A 3-cut-decomposition whose leaves are all K4, found by backtracking over cut choices."""
    _require_cubic_3_connected(G)
    memo: Dict[bytes, bool] = {}

    def decomposable(H: Multigraph) -> bool:
        if is_k4(H):
            return True
        key = canonical_form(H)
        if key not in memo:
            memo[key] = any(all(decomposable(c) for c in _split(H, C)) for C in nontrivial_3cuts(H))
        return memo[key]

    def build(H: Multigraph) -> DecompositionNode:
        if is_k4(H):
            return DecompositionNode(H)
        for C in nontrivial_3cuts(H):
            kids = _split(H, C)
            if all(decomposable(c) for c in kids):
                return DecompositionNode(H, C, tuple(build(c) for c in kids))
        raise AssertionError("decomposable graph without a decomposing cut")

    return build(G) if decomposable(G) else None


# ---------------------------------------------------------
# RECOGNITION
# ---------------------------------------------------------
class _Recognizer:
    """
    A graph has a blueprint ending with moving triangle M exactly when it is
    the complement of the 6-cycle, or contracting M gives a simple cubic
    graph with such a blueprint whose moving triangle holds the new vertex.
    """

    def __init__(self):
        self.memo: Dict[bytes, bool] = {}

    def ends_with(self, G: Multigraph, M: Tuple[int, int, int]) -> bool:
        colours = [1 if v in M else 0 for v in range(G.n)]
        key = canonical_form(G, colours)
        if key in self.memo:
            return self.memo[key]
        if G.n < 6:
            result = False
        elif G.n == 6:
            result = canonical_form(G) == _C6_COMPLEMENT_FORM
        else:
            H, _ = contract(G, M)
            x = H.n - 1
            result = H.is_simple and H.is_cubic and any(self.ends_with(H, t) for t in triangles(H) if x in t)
        self.memo[key] = result
        return result

    def blueprint(self, G: Multigraph, M: Tuple[int, int, int]) -> TriLadderBlueprint:
        if G.n == 6:
            fixed = tuple(v for v in range(6) if v not in M)
            paths = trace_ridges(G, fixed, M, ())
            return TriLadderBlueprint(fixed, tuple(M), (), tuple(zip(RIDGE_LABELS, paths)))
        H, vmap = contract(G, M)
        x = H.n - 1
        t = next(t for t in triangles(H) if x in t and self.ends_with(H, t))
        inner = self.blueprint(H, t)
        back = {h: g for g, h in vmap.items() if g not in M}
        a, b = (y for y in t if y != x)
        record = SpliceRecord(inner.r + 1, x, H.lowest_edge_id(a, b))
        fixed = tuple(sorted(back[v] for v in inner.fixed_triangle))
        rungs = inner.rungs + (record.rung,)
        paths = trace_ridges(G, fixed, M, rungs)
        return TriLadderBlueprint(fixed, tuple(sorted(M)), inner.splices + (record,), tuple(zip(RIDGE_LABELS, paths)))


def _triladder_shape(G: Multigraph) -> bool:
    return G.n >= 6 and G.n % 2 == 0 and G.is_cubic and G.is_simple


def recognize_triladder(G: Multigraph) -> Optional[TriLadderBlueprint]:
    """A recovered blueprint when G is a tri-ladder, else None."""
    if not _triladder_shape(G):
        return None
    rec = _Recognizer()
    for t in triangles(G):
        if rec.ends_with(G, t):
            return rec.blueprint(G, t)
    return None


def is_triladder(G: Multigraph) -> bool:
    if not _triladder_shape(G):
        return False
    rec = _Recognizer()
    return any(rec.ends_with(G, t) for t in triangles(G))


# ---------------------------------------------------------
# TABLE
# ---------------------------------------------------------
def triladder_rows(max_n: int) -> List[dict]:
    """Per generated tri-ladder: size, near-bipartite verdict and removable-edge data."""
    rows = []
    for index, (G, bp) in enumerate(generate_triladders(max_n)):
        report = removability(G)
        witnesses = near_bipartite_witnesses(G)
        rows.append({
            "index": index,
            "n": G.n,
            "r": bp.r,
            "near_bipartite": bool(witnesses),
            "removable": len(report.removable),
            "doubletons": len(report.doubletons),
            "removable_are_rungs": sorted(report.removable) == sorted(bp.rungs),
            "rungs": " ".join(f"{G.edge(i).u}-{G.edge(i).v}" for i in bp.rungs),
        })
    return rows
