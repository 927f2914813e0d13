"""Tests for weylcheck.cli -- argument handling, exit codes and golden reports."""

import io
import json
import os
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path
from unittest.mock import patch

from weylcheck.cli import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, build_parser, config_from_args, main

GOLDEN = Path(__file__).parent / "golden"


class CliTestCase(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        env = {k: v for k, v in os.environ.items() if not k.startswith("WEYLCHECK_")}
        env.update({"HOME": self._tmp.name, "XDG_CONFIG_HOME": os.path.join(self._tmp.name, "xdg")})
        self._env = patch.dict("os.environ", env, clear=True)
        self._env.start()

    def tearDown(self):
        self._env.stop()
        self._tmp.cleanup()

    def invoke(self, *argv):
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = main(list(argv))
        return code, out.getvalue(), err.getvalue()


class TestParser(CliTestCase):
    def test_type_is_uppercased(self):
        args = build_parser().parse_args(["verify", "series", "b", "2", "--max-bidegree", "3", "4"])
        run = config_from_args(args, {})
        self.assertEqual(run.type_label, "B")
        self.assertEqual(run.bidegree_bound, (3, 4))
        self.assertEqual(run.what, "series")

    def test_version(self):
        code, _, _ = self.invoke("--version")
        self.assertEqual(code, EXIT_OK)

    def test_unknown_suite(self):
        code, _, _ = self.invoke("verify", "everything", "A", "2")
        self.assertEqual(code, EXIT_USAGE)


class TestGolden(CliTestCase):
    def test_hilbert_series_of_L(self):
        for label, rank in [("A", 1), ("A", 2), ("B", 2), ("G", 2)]:
            with self.subTest(type=f"{label}{rank}"):
                code, out, _ = self.invoke("series", "hilbL", label, str(rank))
                self.assertEqual(code, EXIT_OK)
                payload = json.loads(out)
                payload.pop("timings")
                expected = json.loads((GOLDEN / f"series_hilbL_{label}{rank}.json").read_text())
                self.assertEqual(payload, expected)


class TestCommands(CliTestCase):
    def test_info(self):
        code, out, _ = self.invoke("info", "G", "2")
        self.assertEqual(code, EXIT_OK)
        payload = json.loads(out)
        self.assertEqual(payload["objects"]["h"], 6)
        self.assertEqual(payload["objects"]["L_dimension"], 49)
        self.assertTrue(all(r["pass"] for r in payload["results"]))

    def test_verify_series(self):
        code, out, _ = self.invoke("verify", "series", "A", "2")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("group", json.loads(out)["timings"])

    def test_text_format(self):
        code, out, _ = self.invoke("info", "A", "3", "--format", "text")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.rstrip().endswith("6/6 checks passed"))

    def test_out_file(self):
        path = Path(self._tmp.name) / "reports" / "b2.json"
        code, _, _ = self.invoke("info", "B", "2", "--out", str(path))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(path.read_text())["config"]["type"], "B")

    def test_config_file_sets_format(self):
        Path(self._tmp.name, ".weylcheckrc").write_text("format=text\n")
        code, out, _ = self.invoke("info", "A", "1")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("checks passed", out)


class TestExitCodes(CliTestCase):
    def test_invalid_root_system(self):
        code, _, err = self.invoke("info", "D", "3")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("weylcheck:", err)

    def test_typeb_suite_needs_type_b_or_d(self):
        code, _, _ = self.invoke("verify", "typeB", "A", "2")
        self.assertEqual(code, EXIT_USAGE)

    def test_bad_parameter(self):
        code, _, _ = self.invoke("verify", "cherednik", "A", "1", "--c", "one half")
        self.assertEqual(code, EXIT_USAGE)

    def test_budget(self):
        code, _, err = self.invoke("verify", "series", "B", "3", "--budget", "10")
        self.assertEqual(code, EXIT_BUDGET)
        self.assertIn("group_order", err)


if __name__ == "__main__":
    unittest.main()
