import unittest
import sys
import os

from hypothesis import given, settings, strategies as st

# Allow importing from the parent directory
sys.path.append(os.getcwd())

from app.canonical import is_isomorphic
from app.errors import GraphError, GraphFormatError
from app.graph import (
    bipartition,
    build_graph,
    contract,
    cut,
    edges_between,
    emit_edge_list,
    emit_graph6,
    is_k_connected,
    parse_edge_list,
    parse_edge_list_stream,
    parse_graph6,
    simplify,
    triangles,
)
from app.named import c6_complement, cycle, digon, k4, petersen


@st.composite
def simple_graphs(draw, max_n=9):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return build_graph(n, sorted(chosen))


class TestConstruction(unittest.TestCase):

    def test_k4(self):
        G = k4()
        self.assertEqual((G.n, G.m), (4, 6))
        self.assertTrue(G.is_cubic)
        self.assertTrue(G.is_simple)

    def test_c6_complement_labelling(self):
        G = build_graph(6, [(0, 2), (0, 4), (2, 4), (1, 3), (1, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
        complement = build_graph(6, [(a, b) for a in range(6) for b in range(a + 1, 6) if (b - a) % 6 not in (1, 5)])
        self.assertTrue(is_isomorphic(G, complement))

    def test_digon_has_distinct_ids(self):
        G = digon()
        self.assertEqual(G.m, 2)
        self.assertEqual(G.edge_ids, (0, 1))
        self.assertEqual(G.multiplicity(0, 1), 2)
        self.assertFalse(G.is_simple)

    def test_rejects_loops_and_bad_endpoints(self):
        with self.assertRaises(GraphError):
            build_graph(3, [(1, 1)])
        with self.assertRaises(GraphError):
            build_graph(3, [(0, 3)])

    def test_delete_edges_keeps_ids(self):
        G = k4().delete_edges([0, 5])
        self.assertEqual(G.edge_ids, (1, 2, 3, 4))
        with self.assertRaises(GraphError):
            G.delete_edges([0])

    def test_simplify_keeps_lowest_id(self):
        G = build_graph(3, [(0, 1), (1, 2), (0, 1)])
        self.assertEqual(simplify(G).edge_ids, (0, 1))

    def test_neighborhood_excludes_the_set(self):
        G = cycle(6)
        self.assertEqual(G.neighborhood([0, 1]), frozenset({2, 5}))


class TestCutsAndContraction(unittest.TestCase):

    def test_contract_triangle_of_c6_complement_gives_k4(self):
        H, vmap = contract(c6_complement(), {0, 2, 4})
        self.assertEqual((H.n, H.m), (4, 6))
        self.assertTrue(is_isomorphic(H, k4()))
        # boundary edges keep their ids
        self.assertEqual(sorted(e.id for e in H.edges if vmap[0] in e.ends), [6, 7, 8])

    def test_contract_single_vertex_is_a_copy(self):
        G = petersen()
        H, _ = contract(G, {3})
        self.assertTrue(is_isomorphic(G, H))

    def test_contract_three_consecutive_cycle_vertices(self):
        H, vmap = contract(cycle(6), {0, 1, 2})
        self.assertEqual((H.n, H.m), (4, 4))
        self.assertEqual(H.degree(vmap[0]), 2)

    def test_contract_rejects_empty_and_full(self):
        with self.assertRaises(GraphError):
            contract(k4(), set())
        with self.assertRaises(GraphError):
            contract(k4(), {0, 1, 2, 3})

    def test_cut_and_edges_between(self):
        G = c6_complement()
        C = cut(G, {0, 2, 4})
        self.assertEqual(C.boundary, frozenset({6, 7, 8}))
        self.assertTrue(C.is_nontrivial)
        self.assertEqual(C.complement().inside, frozenset({1, 3, 5}))
        self.assertEqual(edges_between(G, {0, 2, 4}, {0, 2, 4}), [0, 1, 2])
        self.assertEqual(edges_between(G, {0}, {3}), [6])


class TestProperties(unittest.TestCase):

    def test_bipartition(self):
        sides = bipartition(cycle(6))
        self.assertEqual(sides.side_U, frozenset({0, 2, 4}))
        self.assertIsNone(bipartition(k4()))

    def test_bipartition_after_doubleton_removal(self):
        sides = bipartition(c6_complement().delete_edges([0, 5]))
        self.assertEqual(sides.side_U, frozenset({0, 1, 2}))
        self.assertEqual(sides.side_W, frozenset({3, 4, 5}))

    def test_connectivity(self):
        self.assertTrue(is_k_connected(k4(), 3))
        self.assertFalse(is_k_connected(cycle(6), 3))
        self.assertTrue(is_k_connected(c6_complement(), 3))
        with self.assertRaises(GraphError):
            is_k_connected(k4(), 4)

    def test_triangles(self):
        self.assertEqual(triangles(c6_complement()), [(0, 2, 4), (1, 3, 5)])
        self.assertEqual(triangles(petersen()), [])


class TestFormats(unittest.TestCase):

    def test_graph6_refuses_parallel_edges(self):
        with self.assertRaises(GraphFormatError):
            emit_graph6(digon())

    def test_malformed_graph6(self):
        with self.assertRaises(GraphFormatError):
            parse_graph6("")

    def test_non_ascii_graph6(self):
        with self.assertRaises(GraphFormatError) as ctx:
            parse_graph6("C\u00e9")
        self.assertIn("non-ascii", str(ctx.exception))

    def test_edge_list_keeps_parallel_edges(self):
        G = parse_edge_list(emit_edge_list(digon()))
        self.assertEqual(G.m, 2)

    def test_edge_list_stream_reports_line_numbers(self):
        text = "2 1\n0 1\n\n3 2\n0 1\n"
        with self.assertRaises(GraphFormatError) as ctx:
            list(parse_edge_list_stream(text))
        self.assertEqual(ctx.exception.line, 6)

    def test_edge_list_stream_headers(self):
        text = "2 1\n0 1\n\n3 2\n0 1\n1 2\n"
        found = list(parse_edge_list_stream(text))
        self.assertEqual([line for line, _ in found], [1, 4])

    @settings(max_examples=40, deadline=None)
    @given(simple_graphs())
    def test_graph6_round_trip(self, G):
        back = parse_graph6(emit_graph6(G))
        self.assertEqual(back.n, G.n)
        self.assertEqual(sorted(back.edge_pairs()), sorted(G.edge_pairs()))


if __name__ == "__main__":
    unittest.main()
