"""
Graph corpora: the built-in cubic enumerator (cached on disk with joblib),
small general graphs from the networkx atlas, generated tri-ladders and
graph6 / edge-list files.
"""
import logging
import os
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import joblib
import networkx as nx

from app.canonical import canonical_form
from app.errors import GraphError, GraphFormatError, SizeLimitError
from app.graph import GRAPH6_HEADER, Multigraph, build_graph, parse_edge_list_stream, parse_graph6

logger = logging.getLogger(__name__)

# --- CONFIGURATION ---
CACHE_DIR = Path(os.getenv("NB_CACHE_DIR") or "cache")
CUBIC_MAX_VERTICES = 14
ATLAS_MAX_VERTICES = 7

# connected cubic graphs on n vertices, up to isomorphism
KNOWN_CUBIC_COUNTS = {4: 1, 6: 2, 8: 5, 10: 19, 12: 85, 14: 509}

# --- GLOBAL SINGLETON CACHE ---
_CUBIC_CACHE: Dict[int, List[Multigraph]] = {}


@dataclass
class Corpus:
    source: str
    graphs: List[Multigraph] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.graphs)

    def __iter__(self):
        return iter(self.graphs)


# ---------------------------------------------------------
# CUBIC ENUMERATION
# ---------------------------------------------------------
def _enumerate_cubic(n: int) -> List[List[Tuple[int, int]]]:
    """
    Grow connected partial graphs one closed (degree-3) vertex at a time.
    Every edge is added at the vertex being closed, so open vertices stay
    pairwise non-adjacent; each layer is deduplicated by canonical form.
    """
    layer: List[Tuple[int, Tuple[Tuple[int, int], ...]]] = [(1, ())]
    finished: Dict[bytes, Tuple[Tuple[int, int], ...]] = {}
    while layer:
        children: Dict[bytes, Tuple[int, Tuple[Tuple[int, int], ...]]] = {}
        for k, edges in layer:
            degree = [0] * k
            adjacent = [set() for _ in range(k)]
            for a, b in edges:
                degree[a] += 1
                degree[b] += 1
                adjacent[a].add(b)
                adjacent[b].add(a)
            open_ = [v for v in range(k) if degree[v] < 3]
            if not open_:
                if k == n:
                    G = build_graph(n, edges)
                    finished.setdefault(canonical_form(G), edges)
                continue
            v = min(open_, key=lambda x: (-degree[x], x))
            need = 3 - degree[v]
            candidates = [x for x in open_ if x != v and x not in adjacent[v]]
            for j in range(need + 1):
                fresh = need - j
                if k + fresh > n:
                    continue
                for chosen in combinations(candidates, j):
                    targets = list(chosen) + list(range(k, k + fresh))
                    grown = edges + tuple((min(v, t), max(v, t)) for t in targets)
                    size = k + fresh
                    key = canonical_form(build_graph(size, grown))
                    children.setdefault(key, (size, grown))
        layer = list(children.values())
    graphs = sorted(finished.items())
    return [list(edges) for _, edges in graphs]


def _cache_path(n: int) -> Path:
    return CACHE_DIR / f"cubic_{n}.joblib"


def _load_cached(n: int) -> Optional[List[Multigraph]]:
    path = _cache_path(n)
    if not path.exists():
        return None
    try:
        payload = joblib.load(path)
        graphs = [build_graph(n, edges) for edges in payload]
    except Exception as e:
        logger.warning(f"Ignoring unreadable corpus cache {path}: {e}")
        return None
    forms = {canonical_form(G) for G in graphs}
    if len(graphs) != KNOWN_CUBIC_COUNTS.get(n) or len(forms) != len(graphs):
        logger.warning(f"Corpus cache {path} failed validation ({len(graphs)} graphs); rebuilding")
        return None
    return graphs


def builtin_cubic_enumerator(n: int, use_cache: bool = True) -> "Corpus":
    """All connected simple cubic graphs on n vertices up to isomorphism."""
    if n % 2 or n < 4:
        raise GraphError(f"cubic graphs need an even n >= 4 (got {n})")
    if n > CUBIC_MAX_VERTICES:
        raise SizeLimitError(f"built-in cubic enumeration is capped at n <= {CUBIC_MAX_VERTICES}")
    if n in _CUBIC_CACHE:
        return Corpus(f"builtin:cubic:{n}", list(_CUBIC_CACHE[n]))
    graphs = _load_cached(n) if use_cache else None
    if graphs is not None:
        logger.info(f"Loaded {len(graphs)} cubic graphs on {n} vertices from {_cache_path(n)}")
    else:
        logger.info(f"Enumerating connected cubic graphs on {n} vertices...")
        edge_lists = _enumerate_cubic(n)
        graphs = [build_graph(n, edges) for edges in edge_lists]
        logger.info(f"Enumerated {len(graphs)} cubic graphs on {n} vertices")
        if use_cache:
            try:
                CACHE_DIR.mkdir(parents=True, exist_ok=True)
                joblib.dump(edge_lists, _cache_path(n))
            except OSError as e:
                logger.warning(f"Could not write corpus cache: {e}")
    _CUBIC_CACHE[n] = graphs
    return Corpus(f"builtin:cubic:{n}", list(graphs))


# ---------------------------------------------------------
# OTHER BUILT-INS
# ---------------------------------------------------------
def builtin_atlas(n: int) -> Corpus:
    """Connected graphs on exactly n vertices from the networkx graph atlas."""
    if n < 1 or n > ATLAS_MAX_VERTICES:
        raise SizeLimitError(f"built-in general graphs are capped at 1 <= n <= {ATLAS_MAX_VERTICES}")
    graphs = []
    for g in nx.graph_atlas_g():
        if g.number_of_nodes() != n or not nx.is_connected(g):
            continue
        graphs.append(build_graph(n, sorted(tuple(sorted(p)) for p in g.edges())))
    return Corpus(f"builtin:atlas:{n}", graphs)


def builtin_triladders(max_n: int) -> Corpus:
    from app.triladder import generate_triladders

    return Corpus(f"builtin:triladders:{max_n}", [G for G, _ in generate_triladders(max_n)])


# ---------------------------------------------------------
# FILES
# ---------------------------------------------------------
def detect_format(text: str) -> str:
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith(GRAPH6_HEADER.decode("ascii")):
            return "g6"
        parts = stripped.split()
        if len(parts) == 2 and all(p.lstrip("-").isdigit() for p in parts):
            return "edges"
        return "g6"
    return "g6"


def _blocks(text: str) -> List[Tuple[int, str]]:
    """Blank-line separated chunks with their 1-based first line number."""
    out, current, start = [], [], None
    for i, line in enumerate(text.splitlines(), start=1):
        if line.strip():
            if start is None:
                start = i
            current.append(line)
        elif current:
            out.append((start, "\n".join(current)))
            current, start = [], None
    if current:
        out.append((start, "\n".join(current)))
    return out


def parse_graphs(text: str, fmt: str = "auto", lenient: bool = False) -> List[Tuple[int, Multigraph]]:
    """(line number, graph) for every graph in a graph6 or edge-list stream."""
    if fmt == "auto":
        fmt = detect_format(text)
    found: List[Tuple[int, Multigraph]] = []
    if fmt == "g6":
        for i, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                found.append((i, parse_graph6(line)))
            except GraphFormatError as e:
                if not lenient:
                    raise GraphFormatError(str(e), i) from None
                logger.warning(f"Skipping line {i}: {e}")
        return found
    if fmt != "edges":
        raise GraphFormatError(f"unknown format {fmt!r}")
    for start, chunk in _blocks(text):
        try:
            found.extend(parse_edge_list_stream(chunk, first_line=start))
        except GraphFormatError as e:
            if not lenient:
                raise
            logger.warning(f"Skipping graph block at line {start}: {e}")
    return found


def dedupe_connected(graphs: List[Multigraph]) -> List[Multigraph]:
    """Drop disconnected graphs and isomorphic repeats, keeping first occurrences."""
    seen = set()
    kept = []
    dropped = 0
    for G in graphs:
        if not G.is_connected:
            dropped += 1
            continue
        key = canonical_form(G)
        if key in seen:
            continue
        seen.add(key)
        kept.append(G)
    if dropped:
        logger.info(f"Dropped {dropped} disconnected graphs")
    return kept


def decode_graph_text(raw: bytes, source: str = "input") -> str:
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise GraphFormatError(f"{source} is not UTF-8 text (byte {e.start}: {raw[e.start:e.start + 1]!r})") from None


def read_graph_file(path) -> str:
    return decode_graph_text(Path(path).read_bytes(), str(path))


def load_corpus(path, fmt: str = "auto", lenient: bool = False) -> Corpus:
    text = read_graph_file(path)
    parsed = parse_graphs(text, fmt, lenient)
    return Corpus(str(path), dedupe_connected([G for _, G in parsed]))


def resolve_corpus(selector: str, lenient: bool = False) -> Corpus:
    """builtin:cubic:N, builtin:atlas:N, builtin:triladders:N or a file path."""
    if selector.startswith("builtin:"):
        parts = selector.split(":")
        if len(parts) != 3 or not parts[2].isdigit():
            raise GraphError(f"bad corpus selector {selector!r}")
        kind, n = parts[1], int(parts[2])
        if kind == "cubic":
            return builtin_cubic_enumerator(n)
        if kind == "atlas":
            return builtin_atlas(n)
        if kind == "triladders":
            return builtin_triladders(n)
        raise GraphError(f"unknown built-in corpus {kind!r}")
    if not Path(selector).exists():
        raise GraphError(f"corpus file {selector} not found")
    return load_corpus(selector, lenient=lenient)
