"""
Unit tests for table emission, run manifests and the quadrature helpers.
"""

import unittest
import os
import json
import hashlib
import tempfile
import shutil
import sys

import numpy as np
import pandas as pd

# Add the project root to the path so we can import our modules
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from physics.utils.tables import RunRecorder, load_manifest, dumps
from physics.utils.quadrature import integrate, interval_grids, is_point_support, refined_points, richardson_error


class TestRunRecorder(unittest.TestCase):
    """Test cases for deterministic file output."""

    def setUp(self):
        self.test_dir = tempfile.mkdtemp()
        self.table = pd.DataFrame({"x": [0.1, 1 / 3, 2.0e-300], "y": [1.0, np.pi, -0.0]})

    def tearDown(self):
        shutil.rmtree(self.test_dir)

    def _recorder(self, out=None):
        return RunRecorder(out or self.test_dir, "fields", {"u": 0.5}, config_source=None, version="1.0.0")

    def test_csv_has_header_and_round_trip_floats(self):
        path = self._recorder().write_table("fields", self.table)
        with open(path, 'r') as f:
            lines = f.read().splitlines()
        self.assertEqual(lines[0], "x,y")
        reread = pd.read_csv(path, float_precision="round_trip")
        np.testing.assert_array_equal(reread["x"].to_numpy(), self.table["x"].to_numpy())
        np.testing.assert_array_equal(reread["y"].to_numpy(), self.table["y"].to_numpy())

    def test_manifest_written_beside_each_file(self):
        recorder = self._recorder()
        path = recorder.write_table("fields", self.table)
        manifest = load_manifest(path)
        self.assertEqual(manifest["subcommand"], "fields")
        self.assertEqual(manifest["parameters"], {"u": 0.5})
        self.assertEqual(manifest["rows"], 3)
        self.assertEqual(manifest["tool_version"], "1.0.0")
        with open(path, 'rb') as f:
            self.assertEqual(manifest["sha256"], hashlib.sha256(f.read()).hexdigest())
        self.assertEqual(recorder.written, [path])

    def test_repeated_runs_are_byte_identical(self):
        first = os.path.join(self.test_dir, "a")
        second = os.path.join(self.test_dir, "b")
        path_a = self._recorder(first).write_table("fields", self.table)
        path_b = self._recorder(second).write_table("fields", self.table)
        with open(path_a, 'rb') as a, open(path_b, 'rb') as b:
            self.assertEqual(a.read(), b.read())
        self.assertEqual(load_manifest(path_a)["sha256"], load_manifest(path_b)["sha256"])

    def test_json_table(self):
        path = self._recorder().write_table("fields", self.table, fmt="json")
        self.assertTrue(str(path).endswith(".json"))
        with open(path, 'r') as f:
            records = json.load(f)
        self.assertEqual(len(records), 3)
        self.assertEqual(records[1]["x"], 1 / 3)

    def test_report_with_numpy_values(self):
        report = {"balanced": np.bool_(True), "values": np.array([1.5, 2.5]), "total": np.float64(0.1)}
        path = self._recorder().write_report("report", report)
        with open(path, 'r') as f:
            data = json.load(f)
        self.assertEqual(data, {"balanced": True, "values": [1.5, 2.5], "total": 0.1})
        self.assertNotIn("rows", load_manifest(path))

    def test_json_table_writes_null_for_nan(self):
        table = pd.DataFrame({"n": [0, 1], "alpha_n": [np.nan, 1.5]})
        path = self._recorder().write_table("absorb", table, fmt="json")
        with open(path, 'r') as f:
            text = f.read()
        self.assertNotIn("NaN", text)
        records = json.loads(text, parse_constant=self.fail)
        self.assertIsNone(records[0]["alpha_n"])
        self.assertEqual(records[1]["alpha_n"], 1.5)

    def test_report_non_finite_values_become_null(self):
        report = {"limit": float("inf"), "values": np.array([np.nan, 2.0]), "nested": {"x": np.float64("nan")}}
        self.assertEqual(json.loads(dumps(report)), {"limit": None, "values": [None, 2.0], "nested": {"x": None}})

    def test_unknown_format(self):
        with self.assertRaises(ValueError):
            self._recorder().write_table("fields", self.table, fmt="xlsx")

    def test_dumps_rejects_unknown_objects(self):
        with self.assertRaises(TypeError):
            dumps({"value": object()})


class TestQuadrature(unittest.TestCase):
    """Test cases for composite trapezoid integration over intervals."""

    def test_grids(self):
        grids = interval_grids([(0.0, 1.0), (2.0, 2.0)], 5)
        np.testing.assert_array_equal(grids[0], [0.0, 0.25, 0.5, 0.75, 1.0])
        np.testing.assert_array_equal(grids[1], [2.0])

    def test_point_support(self):
        self.assertTrue(is_point_support([(0.5, 0.5)]))
        self.assertFalse(is_point_support([(0.5, 0.5), (0.6, 0.9)]))
        self.assertFalse(is_point_support([]))

    def test_disjoint_intervals_add(self):
        total = integrate([(0.0, 1.0), (2.0, 3.0)], 1025, lambda k: k)
        self.assertAlmostEqual(total, 0.5 + 2.5, places=12)

    def test_point_intervals_ignored_beside_proper_ones(self):
        total = integrate([(0.0, 1.0), (2.0, 2.0)], 65, lambda k: np.ones_like(k))
        self.assertAlmostEqual(total, 1.0, places=12)

    def test_vector_valued_integrand(self):
        r = np.array([0.0, 1.0])
        total = integrate([(0.0, 1.0)], 2049, lambda k: np.outer(r, k) + 1.0)
        np.testing.assert_allclose(total, [1.0, 1.5], rtol=1e-12)

    def test_richardson(self):
        self.assertEqual(refined_points(257), 513)
        np.testing.assert_allclose(richardson_error(1.0, 0.25), 0.25)


if __name__ == '__main__':
    unittest.main()
