"""
Unit tests for the experiment layer.
"""

import unittest
import os
import json
import tempfile
import shutil
import sys

import numpy as np

# Add the project root to the path so we can import our modules
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import experiments
from physics.constants import natural_units
from physics.errors import DomainError, TotalReflectionError


class TestWaveExperiments(unittest.TestCase):
    """Test cases for the intrinsic field and spin builders."""

    def setUp(self):
        self.config = natural_units()

    def test_fields_table_columns(self):
        table, report = experiments.intrinsic_fields("electron", 0.5, self.config, points=33)
        self.assertEqual(list(table.columns), ["x", "rho", "E", "B", "phi"])
        self.assertEqual(len(table), 33)
        self.assertEqual(report["W_kin"], report["W_pot"])
        self.assertAlmostEqual(report["convergence_order"], 2.0, delta=0.1)

    def test_spin_table(self):
        table, report = experiments.spin_profile("photon", None, self.config, points=17, window=0.5)
        self.assertEqual(list(table.columns), ["x", "spin"])
        self.assertAlmostEqual(report["g"], 1.0, places=12)
        self.assertAlmostEqual(report["s"], 1.0, places=12)
        self.assertIn("epr", report)


class TestHistory(unittest.TestCase):
    """Test cases for acceleration history files."""

    def setUp(self):
        self.test_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.test_dir)

    def _write(self, content):
        path = os.path.join(self.test_dir, "history.json")
        with open(path, 'w') as f:
            f.write(content)
        return path

    def test_load_history(self):
        path = self._write(json.dumps([{"phi_step": -0.1, "delta_kinetic": 0.1}, {"phi_step": -0.2, "delta_kinetic": 0.2}]))
        history = experiments.load_history(path)
        self.assertEqual(history, [(-0.1, 0.1), (-0.2, 0.2)])
        report = experiments.electrostatic_balance(history)
        self.assertTrue(report["balanced"])
        self.assertAlmostEqual(report["self_energy"], 0.3)

    def test_malformed_history(self):
        with self.assertRaises(DomainError):
            experiments.load_history(self._write('[{"phi_step": 1.0}]'))
        with self.assertRaises(DomainError):
            experiments.load_history(self._write('{"phi_step": 1.0}'))
        with self.assertRaises(DomainError):
            experiments.load_history(self._write('not json'))


class TestPhaseExperiment(unittest.TestCase):
    """Test cases for the phase table builder."""

    def setUp(self):
        self.config = natural_units()

    def test_single_field_value(self):
        table, fit = experiments.phase_table(self.config, [0.0], path_length=5.0)
        self.assertEqual(len(table), 1)
        self.assertEqual(table["alpha"].iloc[0], 0.0)
        self.assertEqual(fit, {})

    def test_sweep_with_explicit_wavelength(self):
        table, fit = experiments.phase_table(self.config, experiments.field_grid(0.0, 2.0, 50), wavelength=1.0)
        self.assertEqual(len(table), 50)
        self.assertLess(fit["max_residual"], 1e-9)

    def test_field_grid_needs_two_steps(self):
        with self.assertRaises(DomainError):
            experiments.field_grid(0.0, 1.0, 1)


class TestEnsembleExperiment(unittest.TestCase):
    """Test cases for the ensemble pipeline."""

    def setUp(self):
        self.config = natural_units()

    def test_pipeline(self):
        tables, report = experiments.ensemble_experiment(
            self.config, 1.0, grid=257, potentials=[-3.0], V_rfa=1.0, domain=(-10.0, 10.0), r_points=51,
        )
        self.assertEqual(set(tables), {"kspace_before", "kspace_after", "position"})
        self.assertEqual(list(tables["kspace_before"].columns), ["k", "psi0_abs2"])
        self.assertEqual(list(tables["position"].columns), ["r", "re_psi", "im_psi", "abs2_psi"])
        self.assertAlmostEqual(report["after"]["k0"], 2.0)
        self.assertEqual(report["after"]["support"], [[1.0, 2.0]])
        self.assertAlmostEqual(report["after"]["transmission"], 0.5)
        self.assertGreater(report["after"]["energy_expectation"], report["before"]["energy_expectation"])

    def test_blocked_ensemble(self):
        tables, report = experiments.ensemble_experiment(self.config, 1.0, grid=129, V_rfa=1.0, r_points=11)
        self.assertEqual(report["after"]["transmission"], 0.0)
        self.assertTrue(np.all(tables["position"]["abs2_psi"] == 0.0))
        self.assertEqual(len(tables["kspace_after"]), 0)

    def test_conditioning_report(self):
        _, report = experiments.ensemble_experiment(self.config, 1.0, grid=257, excluded=(0.0, 20.0), r_points=11)
        self.assertIn("interaction_free", report)
        self.assertNotEqual(report["interaction_free"]["delta_E"], 0.0)

    def test_total_reflection(self):
        with self.assertRaises(TotalReflectionError):
            experiments.ensemble_experiment(self.config, 1.0, grid=129, potentials=[2.0])


class TestAbsorptionExperiments(unittest.TestCase):
    """Test cases for the absorption builders."""

    def setUp(self):
        self.config = natural_units()

    def test_absorption_columns(self):
        table, report = experiments.absorption_trace(self.config, 0.01, tol=1e-10)
        self.assertEqual(list(table.columns), ["n", "E_n", "u_n", "alpha_n"])
        self.assertTrue(report["converged"])
        self.assertAlmostEqual(report["cutoff_K"], 1.0, places=8)

    def test_alpha_gamma_tables(self):
        tables = experiments.alpha_gamma(self.config, 1e-3)
        self.assertEqual(len(tables["alpha_gamma"]), 20)
        self.assertEqual(len(tables["energy_curves"]), 20)

    def test_self_energy_table(self):
        table = experiments.self_energy(self.config, 0.1, 1.0, 5)
        self.assertEqual(list(table.columns), ["a", "W_st", "W_fluct"])
        self.assertAlmostEqual(table["W_st"].iloc[0], 10.0)
        with self.assertRaises(DomainError):
            experiments.self_energy(self.config, 1.0, 0.1, 5)

    def test_lamb_shift_echoes_inputs(self):
        report = experiments.lamb_shift(self.config, 2.0, 0.5)
        self.assertEqual(report["K"], 1.0)
        self.assertAlmostEqual(report["W_ns"], 2.0 * np.log(2.0))


if __name__ == '__main__':
    unittest.main()
