"""Tests for weylcheck.config."""

import os
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

from weylcheck.config import (
    DEFAULT_CONFIG,
    RunConfig,
    get_bool,
    get_int,
    get_optional_int,
    load_config,
)


class TestLoadConfig(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.home = Path(self._tmp.name)
        env = {k: v for k, v in os.environ.items() if not k.startswith("WEYLCHECK_")}
        env.update({"HOME": str(self.home), "XDG_CONFIG_HOME": str(self.home / "xdg")})
        self._env = patch.dict("os.environ", env, clear=True)
        self._env.start()

    def tearDown(self):
        self._env.stop()
        self._tmp.cleanup()

    def test_defaults(self):
        self.assertEqual(load_config(), DEFAULT_CONFIG)

    def test_config_file(self):
        path = self.home / "xdg" / "weylcheck" / "config"
        path.parent.mkdir(parents=True)
        path.write_text("# budgets\ngroup_budget = 5000\nformat='TEXT'\nnot a setting\n")
        cfg = load_config()
        self.assertEqual(cfg["group_budget"], "5000")
        self.assertEqual(cfg["format"], "text")

    def test_rc_file_overrides_xdg(self):
        xdg = self.home / "xdg" / "weylcheck" / "config"
        xdg.parent.mkdir(parents=True)
        xdg.write_text("seed=1\n")
        (self.home / ".weylcheckrc").write_text("seed=2\n")
        self.assertEqual(load_config()["seed"], "2")

    def test_environment_wins(self):
        (self.home / ".weylcheckrc").write_text("cell_budget=10\n")
        cfg = load_config({"WEYLCHECK_CELL_BUDGET": " 99 "})
        self.assertEqual(cfg["cell_budget"], "99")

    def test_unknown_format_falls_back(self):
        self.assertEqual(load_config({"WEYLCHECK_FORMAT": "yaml"})["format"], "json")


class TestGetters(unittest.TestCase):
    def test_get_int(self):
        self.assertEqual(get_int({"a": "12"}, "a"), 12)
        self.assertEqual(get_int({"a": "x"}, "a", 3), 3)
        self.assertEqual(get_int({}, "a", 7), 7)

    def test_get_bool(self):
        self.assertTrue(get_bool({"v": "Yes"}, "v"))
        self.assertFalse(get_bool({"v": "0"}, "v"))
        self.assertTrue(get_bool({}, "v", True))

    def test_get_optional_int(self):
        self.assertIsNone(get_optional_int({"d": ""}, "d"))
        self.assertIsNone(get_optional_int({"d": "many"}, "d"))
        self.assertEqual(get_optional_int({"d": "6"}, "d"), 6)


class TestRunConfig(unittest.TestCase):
    def test_from_config(self):
        cfg = dict(DEFAULT_CONFIG, bidegree_bound="5", degree_cap="8")
        run = RunConfig.from_config(cfg, command="verify", type_label="B", rank=2, m=None)
        self.assertEqual(run.bidegree_bound, (5, 5))
        self.assertEqual(run.degree_cap, 8)
        self.assertEqual(run.m, 1)
        self.assertEqual((run.pbw_samples, run.poisson_samples, run.dunkl_samples), (100, 100, 100))

    def test_overrides_win(self):
        run = RunConfig.from_config(dict(DEFAULT_CONFIG), command="info", type_label="A", rank=3, group_budget=50)
        self.assertEqual(run.group_budget, 50)

    def test_validation(self):
        with self.assertRaises(ValueError):
            RunConfig(command="verify", type_label="A", rank=2, group_budget=0)
        with self.assertRaises(ValueError):
            RunConfig(command="verify", type_label="A", rank=2, format="xml")
        for key in ("pbw_samples", "poisson_samples"):
            with self.assertRaises(ValueError):
                RunConfig(command="verify", type_label="A", rank=2, **{key: 0})

    def test_to_dict_keys(self):
        run = RunConfig(command="series", type_label="G", rank=2, what="hilbL")
        payload = run.to_dict()
        self.assertEqual(
            set(payload),
            {"command", "what", "type", "rank", "budget", "max_bidegree", "degree_cap", "m", "c", "trunc", "format"},
        )
        self.assertEqual(payload["type"], "G")
        self.assertIsNone(payload["max_bidegree"])


if __name__ == "__main__":
    unittest.main()
