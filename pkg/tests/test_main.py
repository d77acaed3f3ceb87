import unittest
from unittest.mock import patch
import sys
import os
import io
import json
import tempfile
from pathlib import Path

# Allow importing from the parent directory
sys.path.append(os.getcwd())

from app import corpus
from app.graph import emit_edge_list, emit_graph6
from app.main import EXIT_INFRASTRUCTURE, EXIT_OK, main
from app.named import c6_complement, cycle, k4


class TestCommandLine(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.folder = Path(self.tmp.name)

    def write(self, name, text):
        path = self.folder / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    def run_cli(self, argv):
        with patch("sys.stdout", new_callable=io.StringIO) as out, patch("sys.stderr", new_callable=io.StringIO) as err:
            code = main(["--log-level", "ERROR"] + argv)
        return code, out.getvalue(), err.getvalue()

    def test_analyze_json(self):
        path = self.write("two.g6", emit_graph6(k4()) + "\n" + emit_graph6(c6_complement()) + "\n")
        code, out, _ = self.run_cli(["analyze", path, "--json"])
        self.assertEqual(code, EXIT_OK)
        doc = json.loads(out)
        self.assertEqual([g["n"] for g in doc["graphs"]], [4, 6])
        self.assertTrue(doc["graphs"][1]["theorem2"]["equality"])

    def test_analyze_text(self):
        path = self.write("k4.txt", emit_edge_list(k4()))
        code, out, _ = self.run_cli(["analyze", path])
        self.assertEqual(code, EXIT_OK)
        self.assertIn("graph 0: n=4 m=6", out)
        self.assertIn("K4", out)

    def test_corrupt_edge_list(self):
        path = self.write("bad.txt", "3 2\n0 1\n")
        code, _, err = self.run_cli(["analyze", path, "--format", "edges"])
        self.assertEqual(code, EXIT_INFRASTRUCTURE)
        self.assertIn("error:", err)

    def test_missing_file(self):
        code, _, err = self.run_cli(["analyze", str(self.folder / "nope.g6")])
        self.assertEqual(code, EXIT_INFRASTRUCTURE)
        self.assertIn("error:", err)

    def test_undecodable_corpus_file(self):
        path = self.folder / "binary.g6"
        path.write_bytes(b"\xff\xfe")
        code, _, err = self.run_cli(["verify", "--corpus", str(path)])
        self.assertEqual(code, EXIT_INFRASTRUCTURE)
        self.assertIn("UTF-8", err)

    def test_non_ascii_graph6_line(self):
        path = self.write("accent.g6", "Cé\n")
        code, _, err = self.run_cli(["analyze", "--format", "g6", path])
        self.assertEqual(code, EXIT_INFRASTRUCTURE)
        self.assertIn("non-ascii", err)

    def test_lenient_verify_skips_non_ascii_line(self):
        path = self.write("mixed.g6", "Cé\nC~\n")
        out_path = self.folder / "report.json"
        code, _, _ = self.run_cli(["verify", "--corpus", path, "--lenient", "--checks", "delta_bound", "--out", str(out_path)])
        self.assertEqual(code, EXIT_OK)
        report = json.loads(out_path.read_text(encoding="utf-8"))
        self.assertEqual(report["graph_count"], 1)

    def test_verify_writes_report(self):
        out_path = self.folder / "report.json"
        with patch.object(corpus, "CACHE_DIR", self.folder):
            corpus._CUBIC_CACHE.clear()
            code, out, _ = self.run_cli(["verify", "--corpus", "builtin:cubic:4", "--checks", "theorem2", "--out", str(out_path)])
        self.assertEqual(code, EXIT_OK)
        self.assertIn("theorem2", out)
        report = json.loads(out_path.read_text(encoding="utf-8"))
        self.assertEqual(report["graph_count"], 1)
        self.assertEqual(report["per_check"]["theorem2"]["applicable"], 0)

    def test_verify_unknown_check(self):
        code, _, err = self.run_cli(["verify", "--corpus", "builtin:triladders:8", "--checks", "nonsense"])
        self.assertEqual(code, EXIT_INFRASTRUCTURE)
        self.assertIn("nonsense", err)

    def test_generate(self):
        code, out, _ = self.run_cli(["generate", "--triladders", "--max-n", "8"])
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(len(out.strip().splitlines()), 2)

    def test_generate_blueprints(self):
        folder = self.folder / "bp"
        code, _, _ = self.run_cli(["generate", "--triladders", "--max-n", "8", "--blueprints", str(folder)])
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(sorted(p.name for p in folder.iterdir()), ["triladder_0.txt", "triladder_1.txt"])

    def test_generate_needs_a_family(self):
        code, _, _ = self.run_cli(["generate"])
        self.assertEqual(code, EXIT_INFRASTRUCTURE)

    def test_decompose_rejects_non_cubic(self):
        path = self.write("c6.txt", emit_edge_list(cycle(6)))
        code, _, err = self.run_cli(["decompose", path])
        self.assertEqual(code, EXIT_INFRASTRUCTURE)
        self.assertIn("3-connected cubic", err)

    def test_decompose_keeps_going_after_a_rejected_graph(self):
        text = emit_edge_list(cycle(6)) + "\n" + emit_edge_list(c6_complement())
        path = self.write("mixed.txt", text)
        code, out, err = self.run_cli(["decompose", path, "--k4", "--json"])
        self.assertEqual(code, EXIT_INFRASTRUCTURE)
        self.assertIn("graph 0", err)
        rejected, prism = json.loads(out)
        self.assertEqual((rejected["index"], prism["index"]), (0, 1))
        self.assertIn("3-connected cubic", rejected["error"])
        self.assertIsNone(prism["error"])
        self.assertTrue(prism["k4_present"])

    def test_decompose_k4_json(self):
        path = self.write("prism.g6", emit_graph6(c6_complement()) + "\n")
        code, out, _ = self.run_cli(["decompose", path, "--k4", "--json"])
        self.assertEqual(code, EXIT_OK)
        (doc,) = json.loads(out)
        self.assertTrue(doc["k4_present"])
        self.assertEqual(doc["leaf_sizes"], [4, 4])

    def test_schema(self):
        code, out, _ = self.run_cli(["schema", "campaign"])
        self.assertEqual(code, EXIT_OK)
        self.assertIn("campaign", json.loads(out))


if __name__ == "__main__":
    unittest.main()
