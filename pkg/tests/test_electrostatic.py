"""
Unit tests for the electrostatic interaction module.
"""

import unittest
import os
import sys

import numpy as np

# Add the project root to the path so we can import our modules
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from physics.constants import natural_units, loads
from physics.errors import DomainError
from physics.electrostatic import (
    InteractionSystem,
    lagrange_density,
    hamiltonian_first_order,
    interaction_hamiltonian,
    energy_balance_audit,
    constant_motion_self_energy,
)


class TestHamiltonian(unittest.TestCase):
    """Test cases for the Lagrange density and first-order Hamiltonian."""

    def setUp(self):
        self.config = natural_units()

    def test_lagrange_density(self):
        system = InteractionSystem(rho0=2.0, sigma0=1.5, x_dot=(0.3, 0.4, 0.0), rho_ph=0.1, phi_ext=2.0)
        self.assertAlmostEqual(lagrange_density(system), 2.0 * 0.25 + 0.1 - 3.0)

    def test_hamiltonian_independent_of_velocity(self):
        values = set()
        for x_dot in [(0.0,), (0.1, 0.2), (0.5, 0.5, 0.5), (0.9,)]:
            system = InteractionSystem(rho0=1.3, sigma0=0.7, x_dot=x_dot, phi_ext=2.5)
            values.add(hamiltonian_first_order(system).H)
        self.assertEqual(values, {0.7 * 2.5})

    def test_hamiltonian_certificate(self):
        system = InteractionSystem(rho0=2.0, sigma0=1.0, x_dot=(0.5,), rho_ph=0.5, phi_ext=1.0)
        result = hamiltonian_first_order(system)
        self.assertEqual(result.cancellation_residual, 0.0)
        self.assertTrue(result.photon_density_consistent)
        self.assertTrue(result.first_order)
        self.assertIn("first order", result.note)

    def test_inconsistent_photon_density_reported(self):
        system = InteractionSystem(rho0=2.0, sigma0=1.0, x_dot=(0.5,), rho_ph=0.2, phi_ext=1.0)
        result = hamiltonian_first_order(system)
        self.assertFalse(result.photon_density_consistent)
        self.assertAlmostEqual(result.cancellation_residual, 0.5 - 0.2)
        self.assertEqual(result.photon_term, 0.2)

    def test_missing_photon_field_leaves_kinetic_residual(self):
        system = InteractionSystem(rho0=2.0, sigma0=1.0, x_dot=(0.5,), rho_ph=0.0, phi_ext=1.0)
        result = hamiltonian_first_order(system)
        self.assertEqual(result.cancellation_residual, 0.5)
        self.assertFalse(result.photon_density_consistent)

    def test_residual_scales_with_light_speed(self):
        config = loads("c = 2.0\n")
        system = InteractionSystem(rho0=1.0, sigma0=1.0, x_dot=(1.0,), rho_ph=0.25, phi_ext=0.0, config=config)
        result = hamiltonian_first_order(system)
        self.assertEqual(result.cancellation_residual, 0.0)
        self.assertTrue(result.photon_density_consistent)

    def test_negative_density_rejected(self):
        with self.assertRaises(DomainError):
            InteractionSystem(rho0=-1.0, sigma0=1.0, x_dot=(0.1,))
        with self.assertRaises(DomainError):
            interaction_hamiltonian(-1.0, (0.1,), self.config)


class TestInteractionHamiltonian(unittest.TestCase):
    """Test cases for H_w = -rho0*x_dot^2 = -rho_ph*c^2."""

    def test_identity_for_random_inputs(self):
        rng = np.random.default_rng(20240501)
        config = loads("c = 3.0\n")
        for _ in range(1000):
            rho0 = rng.uniform(0.0, 10.0)
            x_dot = rng.uniform(-1.0, 1.0, size=3)
            h_w, rho_ph = interaction_hamiltonian(rho0, x_dot, config)
            self.assertTrue(np.isclose(-h_w, rho_ph * config.c ** 2, rtol=1e-14, atol=0.0))
            self.assertLessEqual(h_w, 0.0)

    def test_at_rest(self):
        h_w, rho_ph = interaction_hamiltonian(3.0, (0.0, 0.0), natural_units())
        self.assertEqual(h_w, 0.0)
        self.assertEqual(rho_ph, 0.0)


class TestEnergyBalanceAudit(unittest.TestCase):
    """Test cases for the radiation energy audit."""

    def setUp(self):
        self.history = [(-0.1, 0.1), (-0.25, 0.25), (-0.05, 0.05)]

    def test_balanced_history(self):
        report = energy_balance_audit(self.history)
        self.assertTrue(report["balanced"])
        self.assertEqual(report["violations"], [])
        self.assertAlmostEqual(report["total_kinetic"], 0.4)
        self.assertAlmostEqual(report["total_emitted"], report["total_work"])

    def test_detects_small_perturbation(self):
        perturbed = list(self.history)
        dphi, dkin = perturbed[1]
        perturbed[1] = (dphi, dkin * (1 + 1e-6))
        report = energy_balance_audit(perturbed)
        self.assertFalse(report["balanced"])
        self.assertEqual(report["violations"], [1])

    def test_charge_scales_work(self):
        history = [(-0.1, 0.2), (-0.3, 0.6)]
        self.assertTrue(energy_balance_audit(history, charge=2.0)["balanced"])
        self.assertFalse(energy_balance_audit(history, charge=1.0)["balanced"])

    def test_empty_history_rejected(self):
        with self.assertRaises(DomainError):
            energy_balance_audit([])

    def test_idle_steps_are_ignored(self):
        report = energy_balance_audit([(0.0, 0.0), (-0.1, 0.1)])
        self.assertTrue(report["balanced"])
        self.assertEqual(len(report["steps"]), 1)

    def test_constant_motion_has_no_self_energy(self):
        self.assertEqual(constant_motion_self_energy([(0.0, 0.0), (0.0, 0.0)]), 0.0)
        self.assertAlmostEqual(constant_motion_self_energy(self.history), 0.4)


if __name__ == '__main__':
    unittest.main()
