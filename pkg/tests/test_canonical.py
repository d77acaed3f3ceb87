import unittest
import sys
import os

from hypothesis import given, settings, strategies as st

# Allow importing from the parent directory
sys.path.append(os.getcwd())

from app.canonical import canonical_form, canonical_graph, canonical_labelling, is_isomorphic
from app.errors import SizeLimitError
from app.graph import build_graph
from app.named import c6_complement, cycle, digon, k33, k4, petersen


class TestCanonicalForm(unittest.TestCase):

    def test_two_labellings_of_c6_complement(self):
        G = c6_complement()
        H = G.relabel([5, 3, 1, 0, 2, 4])
        self.assertEqual(canonical_form(G), canonical_form(H))

    def test_k4_vs_c4_plus_chord(self):
        chorded = build_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])
        self.assertNotEqual(canonical_form(k4()), canonical_form(chorded))

    def test_prism_vs_k33(self):
        self.assertNotEqual(canonical_form(c6_complement()), canonical_form(k33()))
        self.assertFalse(is_isomorphic(c6_complement(), k33()))

    def test_multiplicities_matter(self):
        single = build_graph(2, [(0, 1)])
        self.assertNotEqual(canonical_form(single), canonical_form(digon()))

    def test_colours_matter(self):
        G = cycle(4)
        self.assertNotEqual(canonical_form(G, [1, 0, 0, 0]), canonical_form(G, [1, 1, 0, 0]))
        self.assertEqual(canonical_form(G, [1, 0, 0, 0]), canonical_form(G, [0, 0, 1, 0]))

    def test_canonical_graph_is_a_fixed_point(self):
        G = canonical_graph(petersen())
        self.assertEqual(canonical_graph(G).edge_pairs(), G.edge_pairs())
        self.assertTrue(is_isomorphic(G, petersen()))

    def test_size_cap(self):
        with self.assertRaises(SizeLimitError):
            canonical_labelling(cycle(21))

    @settings(max_examples=30, deadline=None)
    @given(st.permutations(list(range(10))))
    def test_invariant_under_relabelling(self, perm):
        G = petersen()
        self.assertEqual(canonical_form(G.relabel(perm)), canonical_form(G))

    @settings(max_examples=30, deadline=None)
    @given(st.permutations(list(range(6))))
    def test_colour_aware_relabelling(self, perm):
        G = c6_complement()
        colours = [1, 0, 1, 0, 1, 0]
        moved = [0] * 6
        for v in range(6):
            moved[perm[v]] = colours[v]
        self.assertEqual(canonical_form(G.relabel(perm), moved), canonical_form(G, colours))


if __name__ == "__main__":
    unittest.main()
