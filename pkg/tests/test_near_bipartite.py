import unittest
import sys
import os

# Allow importing from the parent directory
sys.path.append(os.getcwd())

from app.errors import PreconditionError
from app.graph import Bipartition, build_graph, triangles
from app.named import c6_complement, cycle, k33, k4, petersen
from app.near_bipartite import (
    DoubletonWitness,
    EdgeType,
    bad_vertices,
    check_theorem1,
    check_theorem2,
    classify_nonremovable,
    is_k4,
    near_bipartite_witnesses,
    triangle_cover,
    type_count_bounds,
    validate_witness,
)
from app.structure import removable_edges
from app.triladder import splice

# cubic brick on 10 vertices whose two removable-edge-free vertices are not both on a triangle
TEN_VERTEX_EXCEPTION = [
    (0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 6), (2, 7), (3, 8),
    (3, 9), (4, 5), (4, 6), (5, 8), (6, 9), (7, 8), (7, 9),
]


class TestWitnesses(unittest.TestCase):

    def test_k4(self):
        self.assertEqual([w.pair for w in near_bipartite_witnesses(k4())], [(0, 5), (1, 4), (2, 3)])

    def test_c6_complement(self):
        witnesses = near_bipartite_witnesses(c6_complement())
        self.assertEqual(len(witnesses), 3)
        first = witnesses[0]
        self.assertEqual(first.pair, (0, 5))
        self.assertEqual(first.bipartition.side_U, frozenset({0, 1, 2}))
        self.assertEqual(first.bipartition.side_W, frozenset({3, 4, 5}))

    def test_petersen_is_not_near_bipartite(self):
        self.assertEqual(near_bipartite_witnesses(petersen()), [])

    def test_bipartite_input_is_rejected(self):
        with self.assertRaises(PreconditionError):
            near_bipartite_witnesses(k33())

    def test_validate_rejects_wrong_orientation(self):
        G = c6_complement()
        flipped = DoubletonWitness(0, 5, Bipartition(frozenset({3, 4, 5}), frozenset({0, 1, 2})))
        with self.assertRaises(PreconditionError):
            validate_witness(G, flipped)

    def test_is_k4(self):
        self.assertTrue(is_k4(k4().relabel([2, 0, 3, 1])))
        self.assertFalse(is_k4(cycle(4)))


class TestEdgeTypes(unittest.TestCase):

    def test_c6_complement_types_respect_bounds(self):
        G = c6_complement()
        for w in near_bipartite_witnesses(G):
            types = classify_nonremovable(G, w)
            self.assertEqual(sorted(types.labels), sorted(set(G.edge_ids) - set(w.pair)))
            _, bad = type_count_bounds(G, w)
            self.assertEqual(bad, [])

    def test_k4_types_are_vacuous(self):
        G = k4()
        w = near_bipartite_witnesses(G)[0]
        types = classify_nonremovable(G, w)
        self.assertEqual(len(types.of_type(EdgeType.TYPE_I)) + len(types.of_type(EdgeType.TYPE_II)), 4)
        self.assertEqual(type_count_bounds(G, w)[1], [])


class TestTheorems(unittest.TestCase):

    def test_theorem1_on_c6_complement(self):
        G = c6_complement()
        report = check_theorem1(G)
        self.assertTrue(report.holds)
        self.assertEqual(report.exceptional_vertices, [0, 1, 2, 3, 4, 5])
        self.assertEqual(report.covering_triangles, [[0, 2, 4], [1, 3, 5]])

    def test_theorem1_rejects_k4(self):
        with self.assertRaises(PreconditionError):
            check_theorem1(k4())

    def test_theorem1_rejects_non_near_bipartite_bricks(self):
        with self.assertRaises(PreconditionError):
            check_theorem1(petersen())

    def test_theorem2_on_c6_complement(self):
        report = check_theorem2(c6_complement())
        self.assertTrue(report.holds)
        self.assertTrue(report.equality)
        self.assertTrue(report.triladder)
        self.assertEqual(report.removable_count, 0)

    def test_theorem2_on_eight_vertex_triladder(self):
        G = splice(c6_complement(), 1, k4(), 0, [(4, 1), (3, 2), (5, 3)])
        report = check_theorem2(G)
        self.assertTrue(report.holds)
        self.assertEqual(report.removable_count, 1)
        self.assertEqual(report.lower_bound, 1.0)
        self.assertTrue(report.triladder)

    def test_theorem1_fails_on_ten_vertex_brick(self):
        G = build_graph(10, TEN_VERTEX_EXCEPTION)
        pairs = {w.pair for w in near_bipartite_witnesses(G)}
        self.assertIn((1, 4), pairs)  # {0-2, 1-5}
        self.assertIn((2, 3), pairs)  # {0-3, 1-4}
        report = removable_edges(G)
        self.assertTrue(set(G.incident(0)) <= set(report.nonremovable))
        bad = bad_vertices(G, report)
        self.assertIn(0, bad)
        self.assertIn(1, bad)
        self.assertEqual(triangles(G), [(1, 4, 5)])
        self.assertIsNone(triangle_cover(G, bad))
        result = check_theorem1(G, report)
        self.assertIs(result.holds, False)
        self.assertIn("not covered", result.detail)

    def test_bad_vertices_and_cover(self):
        G = c6_complement()
        bad = bad_vertices(G, removable_edges(G))
        self.assertEqual(bad, [0, 1, 2, 3, 4, 5])
        self.assertEqual(triangle_cover(G, bad), [(0, 2, 4), (1, 3, 5)])
        self.assertEqual(triangle_cover(G, []), [])
        self.assertIsNone(triangle_cover(petersen(), [0]))


if __name__ == "__main__":
    unittest.main()
