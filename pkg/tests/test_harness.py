import unittest
from unittest.mock import patch, MagicMock
import sys
import os
import tempfile
from pathlib import Path

# Allow importing from the parent directory
sys.path.append(os.getcwd())

from app import corpus, harness
from app.canonical import is_isomorphic
from app.corpus import Corpus
from app.errors import GraphError
from app.graph import build_graph, parse_edge_list
from app.named import c6_complement, cycle, k33, k4, petersen
from app.triladder import generate_triladders

# the 10-vertex near-bipartite brick whose exceptional vertices miss every triangle pair
TEN_VERTEX_EXCEPTION = [
    (0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 6), (2, 7), (3, 8),
    (3, 9), (4, 5), (4, 6), (5, 8), (6, 9), (7, 8), (7, 9),
]


def small_corpus():
    return Corpus("test:small", [k4(), c6_complement(), k33()])


class TestCheckSelection(unittest.TestCase):

    def test_all(self):
        self.assertEqual(harness.resolve_checks("all"), list(harness.CHECKS))

    def test_aliases(self):
        self.assertEqual(harness.resolve_checks("delta-bound, lemma4.11"), ["delta_bound", "lemma4_11"])

    def test_unknown(self):
        with self.assertRaises(GraphError):
            harness.resolve_checks("theorem3")


class TestCampaign(unittest.TestCase):

    def test_theorem2_gate_on_cubic_six(self):
        report = harness.run_campaign(Corpus("builtin:cubic:6", [k33(), c6_complement()]), ["theorem2"], workers=1)
        counts = report.per_check["theorem2"]
        self.assertEqual((counts.applicable, counts.passed, counts.failed, counts.skipped), (1, 1, 0, 1))
        self.assertEqual(harness.exit_code(report), 0)

    def test_k4_alone_is_gated_out(self):
        report = harness.run_campaign(Corpus("builtin:cubic:4", [k4()]), ["theorem1", "theorem2"], workers=1)
        self.assertEqual(report.per_check["theorem1"].applicable, 0)
        self.assertEqual(report.per_check["theorem2"].applicable, 0)
        self.assertEqual(harness.exit_code(report), 0)

    def test_all_checks_pass_on_landmarks(self):
        graphs = [k4(), c6_complement(), k33(), petersen()] + [G for G, _ in generate_triladders(10)[1:]]
        report = harness.run_campaign(Corpus("test:landmarks", graphs), list(harness.CHECKS), workers=1)
        self.assertEqual(report.counterexamples, [])
        self.assertEqual(report.infrastructure_failures, [])
        self.assertEqual(harness.exit_code(report), 0)

    def test_triladders_attain_the_bound(self):
        family = Corpus("builtin:triladders:12", [G for G, _ in generate_triladders(12)])
        report = harness.run_campaign(family, ["lemma4_11", "theorem2", "lemma4_8"], workers=1)
        for name in ("lemma4_11", "theorem2", "lemma4_8"):
            self.assertEqual(report.per_check[name].failed, 0)
        self.assertGreater(report.per_check["lemma4_11"].applicable, 0)

    def test_reports_are_deterministic(self):
        first = harness.run_campaign(small_corpus(), ["oracle", "delta_bound", "type_bounds"], workers=1)
        second = harness.run_campaign(small_corpus(), ["oracle", "delta_bound", "type_bounds"], workers=1)
        self.assertEqual(first.model_dump(exclude={"wall_time"}), second.model_dump(exclude={"wall_time"}))

    def test_worker_fan_out_keeps_corpus_order(self):
        serial = harness.run_campaign(small_corpus(), ["delta_bound", "brace_removable"], workers=1)
        parallel = harness.run_campaign(small_corpus(), ["delta_bound", "brace_removable"], workers=2)
        self.assertEqual(serial.model_dump(exclude={"wall_time"}), parallel.model_dump(exclude={"wall_time"}))


class TestCubicCampaigns(unittest.TestCase):
    """Campaigns over the built-in cubic corpora, enumerated into a scratch cache."""

    @classmethod
    def setUpClass(cls):
        cls.tmp = tempfile.TemporaryDirectory()
        cls.cache = patch.object(corpus, "CACHE_DIR", Path(cls.tmp.name))
        cls.cache.start()
        corpus._CUBIC_CACHE.clear()

    @classmethod
    def tearDownClass(cls):
        cls.cache.stop()
        cls.tmp.cleanup()
        corpus._CUBIC_CACHE.clear()

    def assertClean(self, report, allowed=()):
        self.assertEqual(report.infrastructure_failures, [])
        for name, counts in report.per_check.items():
            if name not in allowed:
                self.assertEqual(counts.failed, 0, f"{name} failed on {report.corpus}")

    def test_oracle_up_to_eight(self):
        for n in (4, 6, 8):
            report = harness.run_campaign(corpus.builtin_cubic_enumerator(n), ["oracle"], workers=1)
            self.assertClean(report)
            self.assertEqual(report.per_check["oracle"].applicable, corpus.KNOWN_CUBIC_COUNTS[n])

    def test_bound_checks_on_eight_and_ten(self):
        names = ["theorem2", "delta_bound", "lemma4_3", "type_bounds", "expansion"]
        for n in (8, 10):
            report = harness.run_campaign(corpus.builtin_cubic_enumerator(n), names, workers=1)
            self.assertClean(report)
            self.assertGreater(report.per_check["theorem2"].applicable, 0)

    def test_theorem1_exception_on_ten(self):
        cubic = corpus.builtin_cubic_enumerator(10)
        report = harness.run_campaign(cubic, ["theorem1"], workers=1)
        self.assertEqual(report.per_check["theorem1"].failed, 1)
        (cex,) = report.counterexamples
        exception = build_graph(10, TEN_VERTEX_EXCEPTION)
        self.assertTrue(is_isomorphic(cubic.graphs[cex.graph_index], exception))
        self.assertIn("not covered", cex.predicate)

    def test_ten_is_deterministic_across_workers(self):
        cubic = corpus.builtin_cubic_enumerator(10)
        names = ["theorem1", "delta_bound", "type_bounds", "cut_separating"]
        serial = harness.run_campaign(cubic, names, workers=1)
        parallel = harness.run_campaign(cubic, names, workers=2)
        self.assertEqual(serial.model_dump(exclude={"wall_time"}), parallel.model_dump(exclude={"wall_time"}))
        self.assertClean(serial, allowed=("theorem1",))


class TestFailureInjection(unittest.TestCase):

    def test_property_failure_becomes_counterexample(self):
        fake = MagicMock(return_value=["made-up failure"])
        with patch.dict(harness.CHECKS, {"theorem1": fake}):
            report = harness.run_campaign(small_corpus(), ["theorem1"], workers=1)
        self.assertEqual(fake.call_count, 3)
        self.assertEqual(report.per_check["theorem1"].failed, 3)
        self.assertEqual(len(report.counterexamples), 3)
        self.assertEqual(report.counterexamples[0].predicate, "made-up failure")
        self.assertEqual(harness.exit_code(report), 1)

    def test_crash_becomes_infrastructure_failure(self):
        def boom(profile):
            if profile.G.n == 6 and profile.brick:
                raise RuntimeError("kaboom")
            return []

        with patch.dict(harness.CHECKS, {"delta_bound": boom}):
            with self.assertLogs("app.harness", level="ERROR"):
                report = harness.run_campaign(small_corpus(), ["delta_bound"], workers=1)
        self.assertEqual(len(report.infrastructure_failures), 1)
        failure = report.infrastructure_failures[0]
        self.assertEqual((failure.graph_index, failure.error_type), (1, "RuntimeError"))
        self.assertEqual(report.per_check["delta_bound"].passed, 2)
        self.assertEqual(harness.exit_code(report), 2)

    def test_infrastructure_outranks_property_failures(self):
        def mixed(profile):
            if profile.G.n == 4:
                raise ValueError("bad")
            return ["wrong"]

        with patch.dict(harness.CHECKS, {"oracle": mixed}):
            with self.assertLogs("app.harness", level="ERROR"):
                report = harness.run_campaign(small_corpus(), ["oracle"], workers=1)
        self.assertEqual(harness.exit_code(report), 2)

    def test_sidecars_replay(self):
        with patch.dict(harness.CHECKS, {"theorem2": lambda p: ["forced"] if p.G.n == 6 else []}):
            report = harness.run_campaign(small_corpus(), ["theorem2"], workers=1)
        with tempfile.TemporaryDirectory() as tmp:
            out = Path(tmp) / "report.json"
            harness.write_report(report, out)
            self.assertTrue(out.exists())
            for cex in report.counterexamples:
                replayed = parse_edge_list((Path(tmp) / cex.sidecar).read_text(encoding="utf-8"))
                self.assertEqual(replayed.edge_pairs(), small_corpus().graphs[cex.graph_index].edge_pairs())
        self.assertEqual(len(report.counterexamples), 2)


class TestAnalyzeGraph(unittest.TestCase):

    def test_k4(self):
        r = harness.analyze_graph(k4())
        self.assertTrue(r.brick and r.near_bipartite and r.matching_covered)
        self.assertEqual(r.removable, [])
        self.assertEqual(len(r.doubletons), 3)
        self.assertIsNone(r.theorem1)
        self.assertIn("K4", r.notes)

    def test_c6_complement(self):
        r = harness.analyze_graph(c6_complement(), index=3)
        self.assertEqual((r.index, r.n, r.m), (3, 6, 9))
        self.assertEqual(r.removable, [])
        self.assertEqual(r.doubletons, [[0, 5], [1, 4], [2, 3]])
        self.assertTrue(r.theorem1.holds)
        self.assertTrue(r.theorem2.equality)
        self.assertIn("tri-ladder", r.notes)

    def test_petersen(self):
        r = harness.analyze_graph(petersen())
        self.assertTrue(r.brick)
        self.assertFalse(r.near_bipartite)
        self.assertEqual(r.witnesses, [])

    def test_non_matching_covered(self):
        r = harness.analyze_graph(cycle(5))
        self.assertFalse(r.matching_covered)
        self.assertIsNone(r.brace)
        self.assertEqual(r.removable, [])

    def test_consistency(self):
        for G in (k4(), c6_complement(), k33(), petersen(), cycle(6)):
            r = harness.analyze_graph(G)
            if r.brick:
                self.assertTrue(r.matching_covered and not r.bipartite)
            if r.brace:
                self.assertTrue(r.matching_covered and r.bipartite)


if __name__ == "__main__":
    unittest.main()
