"""
Verification campaigns: every registered check runs on every graph it
applies to, failures become replayable counterexamples, and crashes on a
single graph become infrastructure failures instead of stopping the run.
"""
import logging
import os
import time
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from joblib import Parallel, delayed

from app.canonical import canonical_form
from app.corpus import Corpus
from app.errors import GraphError
from app.graph import Multigraph, bipartition, components, contract, emit_edge_list, emit_graph6, is_k_connected
from app.matching import (
    Barrier,
    enumerate_perfect_matchings,
    find_barrier_for_inadmissible,
    has_perfect_matching,
    has_pm_avoiding,
    is_factor_critical,
    matching_number,
    matching_number_bruteforce,
    maximal_barrier,
    odd_components,
    tutte_violator,
)
from app.named import c6_complement
from app.near_bipartite import (
    DoubletonWitness,
    EdgeType,
    check_theorem1,
    classify_nonremovable,
    check_theorem2,
    is_k4,
    near_bipartite_witnesses,
    type_count_bounds,
)
from app.schemas import AnalysisReport, CampaignReport, CheckCounts, Counterexample, InfrastructureFailure, WitnessReport
from app.structure import (
    RemovabilityReport,
    is_admissible,
    is_brace,
    is_brick,
    is_brick_by_tight_cuts,
    is_matching_covered,
    is_separating_cut,
    is_tight_cut,
    odd_shores,
    removability,
    removable_edges,
)
from app.triladder import (
    CutVerdict,
    classify_3cut,
    contractions_match_verdict,
    is_triladder,
    is_essentially_4_edge_connected,
    k4_decomposition,
    nontrivial_3cuts,
    recognize_triladder,
    structural_check,
    three_cut_decomposition,
)
logger = logging.getLogger(__name__)

# --- CONFIGURATION ---
DEFAULT_WORKERS = int(os.getenv("NB_WORKERS") or 1)
ORACLE_MAX_VERTICES = 8
BRICK_CROSSCHECK_MAX_VERTICES = 12
DECOMPOSITION_MAX_VERTICES = 14
EXPANSION_MAX_SUBSET = 6

_C6_COMPLEMENT_FORM = canonical_form(c6_complement())

CheckFn = Callable[["GraphProfile"], Optional[List[str]]]
CHECKS: Dict[str, CheckFn] = {}


def check(name: str):
    def register(fn: CheckFn) -> CheckFn:
        CHECKS[name] = fn
        return fn
    return register


class GraphProfile:
    """Per-graph facts shared by the applicability gates, computed on first use."""

    def __init__(self, G: Multigraph):
        self.G = G

    @cached_property
    def matching_covered(self) -> bool:
        return is_matching_covered(self.G)

    @cached_property
    def bipartite(self) -> bool:
        return bipartition(self.G) is not None

    @cached_property
    def brick(self) -> bool:
        return self.matching_covered and not self.bipartite and is_brick(self.G)

    @cached_property
    def brace(self) -> bool:
        return self.bipartite and self.matching_covered and is_brace(self.G)

    @cached_property
    def three_connected_cubic(self) -> bool:
        return self.G.is_cubic and is_k_connected(self.G, 3)

    @cached_property
    def essentially_4_edge_connected(self) -> bool:
        return is_essentially_4_edge_connected(self.G)

    @cached_property
    def k4(self) -> bool:
        return is_k4(self.G)

    @cached_property
    def c6_complement(self) -> bool:
        return self.G.n == 6 and canonical_form(self.G) == _C6_COMPLEMENT_FORM

    @cached_property
    def removability(self) -> RemovabilityReport:
        return removability(self.G)

    @cached_property
    def witnesses(self) -> List[DoubletonWitness]:
        if not self.matching_covered or self.bipartite:
            return []
        return near_bipartite_witnesses(self.G)

    @property
    def near_bipartite(self) -> bool:
        return bool(self.witnesses)

    @property
    def near_bipartite_brick(self) -> bool:
        return self.brick and self.near_bipartite

    @cached_property
    def edge_deletion_barriers(self) -> Dict[int, List[Barrier]]:
        """For each edge f, one barrier of G - f per inadmissible edge of G - f."""
        found = {}
        for f in self.G.edge_ids:
            H = self.G.delete_edges([f])
            found[f] = [
                find_barrier_for_inadmissible(H, e.id)
                for e in H.edges
                if not has_pm_avoiding(H, e.ends)
            ]
        return found


# ---------------------------------------------------------
# MATCHING ORACLE
# ---------------------------------------------------------
def _covered_without(G: Multigraph, pms, drop: Sequence[int]) -> bool:
    """Is G - drop matching covered, judged from G's perfect matchings alone?"""
    H = G.delete_edges(drop)
    if H.n < 2 or not H.is_connected:
        return False
    rest = [m for m in pms if not m.edge_ids & set(drop)]
    used = set().union(*(m.edge_ids for m in rest)) if rest else set()
    return bool(rest) and set(H.edge_ids) <= used


@check("oracle")
def check_oracle(p: GraphProfile) -> Optional[List[str]]:
    G = p.G
    if G.n > ORACLE_MAX_VERTICES:
        return None
    out = []
    if matching_number(G) != matching_number_bruteforce(G):
        out.append("blossom matching size differs from exhaustive search")
    pms = enumerate_perfect_matchings(G)
    if bool(pms) != has_perfect_matching(G):
        out.append("perfect matching decision differs from enumeration")
    violator = tutte_violator(G)
    if pms and violator is not None:
        out.append("Tutte violator reported for a graph with a perfect matching")
    if not pms and (violator is None or odd_components(G, violator) <= len(violator)):
        out.append("no valid Tutte violator for a graph without a perfect matching")
    used = set().union(*(m.edge_ids for m in pms)) if pms else set()
    for e in G.edges:
        if is_admissible(G, e.id) != (e.id in used):
            out.append(f"admissibility of edge {e.id} differs from enumeration")
    if not p.matching_covered:
        return out
    for X in odd_shores(G.n):
        boundary = {e.id for e in G.edges if (e.u in X) != (e.v in X)}
        expected = all(len(m.edge_ids & boundary) == 1 for m in pms)
        if is_tight_cut(G, X) != expected:
            out.append(f"tightness of cut {sorted(X)} differs from enumeration")
    report = p.removability
    removable = {i for i in G.edge_ids if _covered_without(G, pms, [i])}
    if removable != set(report.removable):
        out.append(f"removable edges {sorted(report.removable)} but enumeration gives {sorted(removable)}")
    nonremovable = sorted(set(G.edge_ids) - removable)
    doubletons = [(a, b) for a, b in combinations(nonremovable, 2) if _covered_without(G, pms, [a, b])]
    if doubletons != list(report.doubletons):
        out.append(f"doubletons {list(report.doubletons)} but enumeration gives {doubletons}")
    return out


@check("brick_definitions")
def check_brick_definitions(p: GraphProfile) -> Optional[List[str]]:
    if p.G.n > BRICK_CROSSCHECK_MAX_VERTICES:
        return None
    by_pairs = is_brick(p.G)
    by_cuts = is_brick_by_tight_cuts(p.G)
    if by_pairs != by_cuts:
        return [f"pair-deletion brick test says {by_pairs}, tight-cut test says {by_cuts}"]
    return []


# ---------------------------------------------------------
# BARRIERS / BIPARTITE LEMMAS
# ---------------------------------------------------------
@check("barrier_components")
def check_barrier_components(p: GraphProfile) -> Optional[List[str]]:
    if not p.brick:
        return None
    G = p.G
    out = []
    for f, barriers in p.edge_deletion_barriers.items():
        H = G.delete_edges([f])
        for B in barriers:
            S = B.vertices
            if len(S) < 2:
                out.append(f"trivial barrier {sorted(S)} returned in G - {f}")
            if odd_components(G, S) == len(S):
                out.append(f"{sorted(S)} is a nontrivial barrier of the brick")
            top = maximal_barrier(H, B)
            for comp in components(H, top.vertices):
                sub, _ = H.delete_vertices(set(range(H.n)) - comp)
                if not is_factor_critical(sub):
                    out.append(f"component {sorted(comp)} of G - {f} - {sorted(top.vertices)} is not factor-critical")
    return out


@check("barrier_intersection")
def check_barrier_intersection(p: GraphProfile) -> Optional[List[str]]:
    if not p.brick:
        return None
    G = p.G
    found = p.edge_deletion_barriers
    out = []
    for v in range(G.n):
        for f1, f2 in combinations(G.incident(v), 2):
            for B1 in found[f1]:
                for B2 in found[f2]:
                    common = B1.vertices & B2.vertices
                    if len(common) > 1:
                        out.append(f"barriers of G - {f1} and G - {f2} share {sorted(common)}")
    return out


@check("bipartite_expansion")
def check_bipartite_expansion(p: GraphProfile) -> Optional[List[str]]:
    if not (p.bipartite and p.matching_covered and p.G.n >= 4):
        return None
    sides = bipartition(p.G)
    U = sorted(sides.side_U)
    if len(U) != len(sides.side_W):
        return [f"unbalanced bipartition {len(U)} / {len(sides.side_W)}"]
    out = []
    for size in range(1, min(len(U) - 1, EXPANSION_MAX_SUBSET) + 1):
        for S in combinations(U, size):
            if len(p.G.neighborhood(S)) < size + 1:
                out.append(f"|N({list(S)})| < {size + 1}")
    return out


@check("four_cycle")
def check_four_cycle(p: GraphProfile) -> Optional[List[str]]:
    if not (p.bipartite and p.matching_covered):
        return None
    G = p.G
    removable = p.removability.removable
    out = []
    for u in range(G.n):
        if G.degree(u) < 3:
            continue
        for a, b in combinations(sorted(G.neighbors(u)), 2):
            if not (G.neighbors(a) & G.neighbors(b)) - {u}:
                continue
            f1, f2 = G.lowest_edge_id(u, a), G.lowest_edge_id(u, b)
            if f1 not in removable and f2 not in removable:
                out.append(f"4-cycle edges {f1}, {f2} at vertex {u} both nonremovable")
    return out


# ---------------------------------------------------------
# NEAR-BIPARTITE LEMMAS / THEOREMS
# ---------------------------------------------------------
@check("near_bipartite_doubletons")
def check_near_bipartite_doubletons(p: GraphProfile) -> Optional[List[str]]:
    if not p.matching_covered or p.bipartite:
        return None
    G = p.G
    pairs = {w.pair for w in p.witnesses}
    expected = {d for d in p.removability.doubletons if bipartition(G.delete_edges(d)) is not None}
    out = []
    if pairs != expected:
        out.append(f"witness pairs {sorted(pairs)} but bipartite-leaving doubletons {sorted(expected)}")
    return out


@check("cubic_near_bipartite")
def check_cubic_near_bipartite(p: GraphProfile) -> Optional[List[str]]:
    if not p.three_connected_cubic or p.bipartite:
        return None
    G = p.G
    doubletons = set(p.removability.doubletons) if p.matching_covered else set()
    out = []
    for a, b in combinations(sorted(G.edge_ids), 2):
        if bipartition(G.delete_edges((a, b))) is not None and (a, b) not in doubletons:
            out.append(f"{{{a}, {b}}} leaves a bipartite graph but is not a removable doubleton")
    return out


@check("expansion")
def check_expansion(p: GraphProfile) -> Optional[List[str]]:
    if not p.near_bipartite_brick:
        return None
    G = p.G
    out = []
    for w in p.witnesses:
        for side, special in ((w.bipartition.side_U, w.e1), (w.bipartition.side_W, w.e2)):
            ends = G.edge(special).ends
            members = sorted(side)
            for size in range(1, min(len(members), EXPANSION_MAX_SUBSET) + 1):
                for S in combinations(members, size):
                    if len(ends & set(S)) > 1:
                        continue
                    N = G.neighborhood(S)
                    if len(N) >= 2 and len(N) < size + 2:
                        out.append(f"witness {w.pair}: |N({list(S)})| = {len(N)} < {size + 2}")
    return out


@check("theorem1")
def check_theorem1_holds(p: GraphProfile) -> Optional[List[str]]:
    if not p.near_bipartite_brick or p.k4:
        return None
    report = check_theorem1(p.G)
    return [] if report.holds else [report.detail]


@check("theorem2")
def check_theorem2_holds(p: GraphProfile) -> Optional[List[str]]:
    if not p.near_bipartite_brick or p.k4:
        return None
    report = check_theorem2(p.G)
    return [] if report.holds else [report.detail]


@check("delta_bound")
def check_delta_bound(p: GraphProfile) -> Optional[List[str]]:
    if not p.brick or p.k4 or p.c6_complement:
        return None
    count = len(p.removability.removable)
    bound = p.G.max_degree - 2
    return [] if count >= bound else [f"{count} removable edges < max degree - 2 = {bound}"]


@check("type_bounds")
def check_type_bounds(p: GraphProfile) -> Optional[List[str]]:
    if not p.near_bipartite_brick:
        return None
    out = []
    for w in p.witnesses:
        _, bad = type_count_bounds(p.G, w, p.removability)
        for c in bad:
            out.append(f"witness {w.pair}: vertex {c.vertex} has {c.type_one} type I and {c.type_two} type II edges")
    return out


# ---------------------------------------------------------
# 3-CUTS / DECOMPOSITIONS / TRI-LADDERS
# ---------------------------------------------------------
@check("lemma4_3")
def check_three_cut_classifier(p: GraphProfile) -> Optional[List[str]]:
    if not (p.three_connected_cubic and p.near_bipartite):
        return None
    G = p.G
    out = []
    for C in nontrivial_3cuts(G):
        for w in p.witnesses:
            v = classify_3cut(G, C.inside, w, p.removability)
            tag = f"cut {v.cut_inside} / witness {w.pair}"
            if not v.odd:
                out.append(f"{tag}: even shore")
            if not v.balanced:
                out.append(f"{tag}: |X&U| != |X&W| + 1")
            tight = is_tight_cut(G, v.inside)
            separating = is_separating_cut(G, v.inside)
            if v.verdict is CutVerdict.UNCLASSIFIED:
                out.append(f"{tag}: neither tight nor good conditions hold")
            elif (v.verdict is CutVerdict.TIGHT) != tight:
                out.append(f"{tag}: verdict {v.verdict.value} but direct tightness is {tight}")
            elif v.verdict is CutVerdict.GOOD and not separating:
                out.append(f"{tag}: good verdict on a non-separating cut")
            if v.verdict is CutVerdict.GOOD and not v.zw_nonremovable:
                out.append(f"{tag}: certificate edge {v.zw} is removable")
            if v.verdict is not CutVerdict.UNCLASSIFIED and not contractions_match_verdict(G, v, w):
                out.append(f"{tag}: contractions lack the expected doubletons")
    return out


@check("cut_separating")
def check_cut_separating(p: GraphProfile) -> Optional[List[str]]:
    if not (p.G.is_cubic and p.matching_covered):
        return None
    G = p.G
    out = [f"3-cut {sorted(C.inside)} is not separating" for C in nontrivial_3cuts(G) if not is_separating_cut(G, C.inside)]
    if p.three_connected_cubic:
        for leaf in three_cut_decomposition(G).leaves():
            if not is_essentially_4_edge_connected(leaf):
                out.append(f"leaf on {leaf.n} vertices is not essentially 4-edge-connected")
            elif not (is_brick(leaf) or is_brace(leaf)):
                out.append(f"leaf on {leaf.n} vertices is neither brick nor brace")
    return out


@check("lemma4_8")
def check_k4_decomposition(p: GraphProfile) -> Optional[List[str]]:
    G = p.G
    if not (G.is_cubic and 6 <= G.n <= DECOMPOSITION_MAX_VERTICES and p.near_bipartite_brick):
        return None
    tree = k4_decomposition(G)
    blueprint = recognize_triladder(G)
    out = []
    if (tree is not None) != (blueprint is not None):
        out.append(f"K4-decomposition {'present' if tree else 'absent'} but tri-ladder recognizer says {blueprint is not None}")
    if blueprint is not None:
        out.extend(structural_check(G, blueprint))
    greedy = all(is_k4(leaf) for leaf in three_cut_decomposition(G).leaves())
    if greedy != (tree is not None):
        logger.warning(f"Greedy 3-cut-decomposition and K4 backtracking disagree on {emit_graph6(G)}")
    return out


@check("lemma4_11")
def check_triladder_removable(p: GraphProfile) -> Optional[List[str]]:
    if not (p.G.is_cubic and p.near_bipartite_brick):
        return None
    blueprint = recognize_triladder(p.G)
    if blueprint is None:
        return None
    removable = set(p.removability.removable)
    out = []
    if 2 * len(removable) != p.G.n - 6:
        out.append(f"{len(removable)} removable edges, expected {(p.G.n - 6) // 2}")
    if removable != set(blueprint.rungs):
        out.append(f"removable edges {sorted(removable)} differ from rungs {sorted(blueprint.rungs)}")
    return out


@check("brace_removable")
def check_brace_removable(p: GraphProfile) -> Optional[List[str]]:
    if not p.brace or p.G.n < 6:
        return None
    nonremovable = sorted(p.removability.nonremovable)
    return [f"brace edges {nonremovable} are nonremovable"] if nonremovable else []


@check("e4c_cover")
def check_e4c_cover(p: GraphProfile) -> Optional[List[str]]:
    if not (p.G.is_cubic and p.brick and p.essentially_4_edge_connected):
        return None
    report = p.removability
    in_doubleton = {i for d in report.doubletons for i in d}
    missing = sorted(set(report.nonremovable) - in_doubleton)
    return [f"edges {missing} are neither removable nor in a removable doubleton"] if missing else []


@check("adjacent_doubletons")
def check_adjacent_doubletons(p: GraphProfile) -> Optional[List[str]]:
    # the triangle cut of the 6-vertex prism already breaks the conclusion
    if not (p.G.is_cubic and p.brick and p.essentially_4_edge_connected):
        return None
    G = p.G
    out = []
    for D1, D2 in combinations(p.removability.doubletons, 2):
        if set(D1) & set(D2):
            continue
        for a, a2 in (D1, D1[::-1]):
            for b, b2 in (D2, D2[::-1]):
                shared = G.edge(a).ends & G.edge(b).ends
                if not shared:
                    continue
                v0 = next(iter(shared))
                partner = G.edge(a2).ends & G.edge(b2).ends
                if not partner:
                    out.append(f"doubletons {D1}, {D2}: {a2} and {b2} are not adjacent")
                elif not any(G.multiplicity(v0, u0) for u0 in partner):
                    out.append(f"doubletons {D1}, {D2}: no edge from {v0} to the common end of {a2}, {b2}")
    return out


@check("splice_lifting")
def check_splice_lifting(p: GraphProfile) -> Optional[List[str]]:
    if not (p.G.is_cubic and p.matching_covered):
        return None
    G = p.G
    out = []
    for C in nontrivial_3cuts(G):
        factors = [contract(G, C.outside)[0], contract(G, C.inside)[0]]
        if not all(is_matching_covered(F) for F in factors):
            continue
        for F in factors:
            hub = F.n - 1
            for i in removable_edges(F).removable:
                e = F.edge(i)
                if hub not in (e.u, e.v) and i not in p.removability.removable:
                    out.append(f"edge {i} removable in a contraction of cut {sorted(C.inside)} but not in G")
        if all(F.is_cubic and is_brick(F) for F in factors) and not p.brick:
            out.append(f"splicing of cubic bricks along {sorted(C.inside)} is not a brick")
    return out


# ---------------------------------------------------------
# SINGLE-GRAPH ANALYSIS
# ---------------------------------------------------------
def analyze_graph(G: Multigraph, index: int = 0) -> AnalysisReport:
    """Everything the library can say about one graph, as a report document."""
    p = GraphProfile(G)
    mc = p.matching_covered
    report = AnalysisReport(
        index=index,
        n=G.n,
        m=G.m,
        connected=G.is_connected,
        bipartite=p.bipartite,
        matching_covered=mc,
        brick=p.brick,
        brace=p.brace if p.bipartite else None,
        near_bipartite=p.near_bipartite,
    )
    if p.k4:
        report.notes.append("K4")
    if p.c6_complement:
        report.notes.append("complement of the 6-cycle")
    if not mc:
        report.notes.append("not matching covered: removability is undefined")
        return report
    rem = p.removability
    report.removable = sorted(rem.removable)
    report.nonremovable = sorted(rem.nonremovable)
    report.doubletons = [list(d) for d in rem.doubletons]
    for w in p.witnesses:
        types = classify_nonremovable(G, w, rem)
        report.witnesses.append(WitnessReport(
            e1=w.e1,
            e2=w.e2,
            side_U=sorted(w.bipartition.side_U),
            side_W=sorted(w.bipartition.side_W),
            type_I=types.of_type(EdgeType.TYPE_I),
            type_II=types.of_type(EdgeType.TYPE_II),
        ))
    if p.near_bipartite_brick and not p.k4:
        report.theorem1 = check_theorem1(G, rem)
        report.theorem2 = check_theorem2(G, rem)
    if G.is_cubic and is_triladder(G):
        report.notes.append("tri-ladder")
    return report


# ---------------------------------------------------------
# CAMPAIGN
# ---------------------------------------------------------
def resolve_checks(selector: str) -> List[str]:
    """'all' or a comma-separated list; '-' and '.' are accepted in place of '_'."""
    if selector.strip() == "all":
        return list(CHECKS)
    names = []
    for raw in selector.split(","):
        name = raw.strip().replace("-", "_").replace(".", "_")
        if not name:
            continue
        if name not in CHECKS:
            raise GraphError(f"unknown check {raw.strip()!r} (known: {', '.join(CHECKS)})")
        names.append(name)
    return names


def _payload(G: Multigraph) -> Tuple[str, Optional[str]]:
    return emit_edge_list(G), emit_graph6(G) if G.is_simple else None


def run_graph(index: int, G: Multigraph, names: Sequence[str]) -> dict:
    """Outcome of every named check on one graph: status per check plus failure records."""
    profile = GraphProfile(G)
    outcome = {"status": {}, "counterexamples": [], "infrastructure": []}
    for name in names:
        try:
            failures = CHECKS[name](profile)
        except Exception as e:
            logger.error(f"Check {name} crashed on graph {index}: {type(e).__name__}: {e}")
            outcome["status"][name] = "error"
            outcome["infrastructure"].append(
                InfrastructureFailure(graph_index=index, check=name, error_type=type(e).__name__, message=str(e))
            )
            continue
        if failures is None:
            outcome["status"][name] = "skipped"
        elif failures:
            outcome["status"][name] = "failed"
            edges, g6 = _payload(G)
            outcome["counterexamples"].append(
                Counterexample(check=name, graph_index=index, predicate="; ".join(failures), edge_list=edges, graph6=g6)
            )
        else:
            outcome["status"][name] = "passed"
    return outcome


def run_campaign(corpus: Corpus, checks: Sequence[str], workers: int = DEFAULT_WORKERS) -> CampaignReport:
    names = list(checks)
    logger.info(f"Running {len(names)} checks over {len(corpus)} graphs from {corpus.source} (workers={workers})")
    start = time.perf_counter()
    outcomes = Parallel(n_jobs=workers)(
        delayed(run_graph)(i, G, names) for i, G in enumerate(corpus.graphs)
    )
    per_check = {name: CheckCounts() for name in names}
    counterexamples: List[Counterexample] = []
    infrastructure: List[InfrastructureFailure] = []
    for outcome in outcomes:
        for name, status in outcome["status"].items():
            counts = per_check[name]
            if status == "skipped":
                counts.skipped += 1
                continue
            counts.applicable += 1
            if status == "passed":
                counts.passed += 1
            elif status == "failed":
                counts.failed += 1
        counterexamples.extend(outcome["counterexamples"])
        infrastructure.extend(outcome["infrastructure"])
    report = CampaignReport(
        corpus=corpus.source,
        checks=names,
        graph_count=len(corpus),
        per_check=per_check,
        counterexamples=counterexamples,
        infrastructure_failures=infrastructure,
        wall_time=round(time.perf_counter() - start, 3),
    )
    failed = sum(c.failed for c in per_check.values())
    logger.info(f"Campaign finished: {failed} failures, {len(infrastructure)} infrastructure errors")
    return report


def write_report(report: CampaignReport, out: Path) -> CampaignReport:
    """Write the JSON report and one edge-list sidecar per counterexample next to it."""
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    for k, cex in enumerate(report.counterexamples):
        sidecar = out.with_name(f"{out.stem}.cex{k}.{cex.check}.edges")
        sidecar.write_text(cex.edge_list, encoding="utf-8")
        cex.sidecar = sidecar.name
    out.write_text(report.model_dump_json(indent=2), encoding="utf-8")
    logger.info(f"Report written to {out}")
    return report


def exit_code(report: CampaignReport) -> int:
    if report.infrastructure_failures:
        return 2
    if any(c.failed for c in report.per_check.values()):
        return 1
    return 0
