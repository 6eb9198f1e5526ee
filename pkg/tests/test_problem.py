#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
    test_problem.py
    ~~~~~~~~~~~~~~~

    forcing functions, vector field, Hamiltonian and regions test suite

    :copyright: (c) 2026 by the globsol authors
    :license: GPL-2, see LICENSE for more details.
"""

import math
import os
import unittest

import numpy as np

from globsol.exceptions import (NegativePhi, NonPositiveP, PhasePointError,
                                PhiModelError)
from globsol.fileutils import FileJSON
from globsol.integrate import IntegratorOptions, integrate_to
from globsol.problem import (BACKWARD, COMPLEMENT, FUNNEL_M, OUTSIDE_M, R1, R2,
                             PhasePoint, PhiModel, classify_region, funnel_bounds,
                             funnel_tag, hamiltonian, max_speeds, vector_field)

from tests.base import BaseTest


def hermite_table(c, lo=-8.0, hi=8.0, n=801):
    xs = np.linspace(lo, hi, n)
    phi = PhiModel.hermite_gaussian(c)
    return np.column_stack((xs, phi.value(xs), phi.derivative(xs)))


class TestPhiModel(BaseTest):

    def test_values(self):
        self.assertEqual(PhiModel.constant(9).value(3.0), 9.0)
        self.assertEqual(PhiModel.constant(9).derivative(-2.0), 0.0)
        self.assertAlmostEqual(PhiModel.gaussian(2.0).value(1.0), 2.0 * math.exp(-0.5), places=15)
        self.assertAlmostEqual(PhiModel.hermite_gaussian(0.5).value(0.0), -0.5, places=15)
        xs = np.linspace(-3, 3, 7)
        phi = PhiModel.hermite_gaussian(0.3)
        self.assertTrue(np.array_equal(phi.value(xs), phi(xs)))

    def test_deterministic(self):
        a = PhiModel.hermite_gaussian(0.12)
        b = PhiModel.hermite_gaussian(0.12)
        xs = np.linspace(-5, 5, 101)
        self.assertTrue(np.array_equal(a.value(xs), b.value(xs)))

    def test_derivative(self):
        h = 1e-6
        for phi in [PhiModel.gaussian(0.7), PhiModel.hermite_gaussian(-0.4)]:
            for x in [-2.0, -0.3, 0.0, 1.1, 3.5]:
                numeric = (phi.value(x + h) - phi.value(x - h)) / (2 * h)
                self.assertAlmostEqual(phi.derivative(x), numeric, places=8)

    def test_gaussian_monotone(self):
        phi = PhiModel.gaussian(0.05)
        xs = np.linspace(1e-3, 30, 1000)
        self.assertTrue(np.all(phi.value(xs) > 0))
        self.assertTrue(np.all(phi.derivative(xs) < 0))
        self.assertEqual(phi.monotone_tail_x0, 0.0)

    def test_sup_norm(self):
        self.assertAlmostEqual(PhiModel.gaussian(0.05).sup_norm, 0.05, places=14)
        self.assertEqual(PhiModel.constant(-4).sup_norm, 4.0)
        # max |phi| of (x^2 - c) exp(-x^2/2) at x^2 = 2 + c for c = 0.5
        phi = PhiModel.hermite_gaussian(0.5)
        self.assertAlmostEqual(phi.sup_norm, 2.0 * math.exp(-1.25), places=10)
        xs = np.linspace(-10, 10, 1001)
        self.assertTrue(np.all(np.abs(phi.value(xs)) <= phi.sup_norm))

    def test_monotone_tail(self):
        phi = PhiModel.hermite_gaussian(0.5)
        self.assertAlmostEqual(phi.monotone_tail_x0, math.sqrt(2.5), places=6)

    def test_log_space(self):
        phi = PhiModel.gaussian(0.05)
        self.assertAlmostEqual(phi.log_value(50.0), math.log(0.05) - 1250.0, places=10)
        self.assertEqual(phi.log_derivative(50.0), -50.0)
        self.assertEqual(PhiModel.hermite_gaussian(1.0).log_value(0.5), -np.inf)

    def test_integral(self):
        s = math.sqrt(2.0 * math.pi)
        self.assertAlmostEqual(PhiModel.gaussian(2.0).integral(), 2.0 * s, places=13)
        for c in [-1.0, 0.12, 1.0, 2.0]:
            self.assertAlmostEqual(PhiModel.hermite_gaussian(c).integral(), s * (1.0 - c),
                                   places=13)
        table = PhiModel.tabulated(hermite_table(0.5))
        self.assertAlmostEqual(table.integral(), 0.5 * s, places=6)
        self.assertEqual(PhiModel.constant(0.0).integral(), 0.0)

    def test_tabulated(self):
        phi = PhiModel.tabulated(hermite_table(0.5))
        exact = PhiModel.hermite_gaussian(0.5)
        xs = np.linspace(-7.9, 7.9, 97)
        self.assertTrue(np.allclose(phi.value(xs), exact.value(xs), atol=1e-8))
        self.assertEqual(phi.value(9.0), 0.0)
        self.assertEqual(phi.support(), (-8.0, 8.0))
        self.assertTrue(phi.is_even())
        self.assertIs(phi.mirrored(), phi)

    def test_mirrored(self):
        table = np.array([[0.0, 0.0, 1.0], [1.0, 1.0, 0.0], [3.0, 0.0, 0.0]])
        phi = PhiModel.tabulated(table, 2.0)
        self.assertFalse(phi.is_even())
        mirror = phi.mirrored()
        for x in [0.3, 1.0, 2.2]:
            self.assertAlmostEqual(mirror.value(-x), phi.value(x), places=12)
            self.assertAlmostEqual(mirror.derivative(-x), -phi.derivative(x), places=12)

    def test_with_param(self):
        phi = PhiModel.hermite_gaussian(0.1).with_param(0.7)
        self.assertEqual(phi, PhiModel.hermite_gaussian(0.7))

    def test_errors(self):
        self.assertRaises(PhiModelError, PhiModel, 'cubic', 1.0)
        self.assertRaises(PhiModelError, PhiModel, 'gaussian', float('nan'))
        self.assertRaises(PhiModelError, PhiModel.tabulated, [[0, 0, 0], [0, 1, 0]])
        self.assertRaises(PhiModelError, PhiModel, 'gaussian', 1.0, [[0, 0, 0], [1, 0, 0]])

    def test_serialization(self):
        fj = FileJSON(self.tempdir.name, 'phi.json')
        table = PhiModel.tabulated(hermite_table(0.2, n=51), 3.0)
        content = {"a": PhiModel.gaussian(0.05), "b": table}
        fj.write(content)
        self.assertEqual(fj.read(), content)
        raw = PhiModel.deserialize({"kind": "hermite_gaussian", "param": 0.12})
        self.assertEqual(raw, PhiModel.hermite_gaussian(0.12))


class TestPhasePoint(unittest.TestCase):

    def test_finite(self):
        self.assertRaises(PhasePointError, PhasePoint, float('inf'), 0, 0)
        self.assertRaises(PhasePointError, PhasePoint, 0, float('nan'), 0)

    def test_reflected(self):
        self.assertEqual(PhasePoint(1, 2, 3).reflected(), PhasePoint(1, -2, -3))
        self.assertEqual(tuple(PhasePoint(1, 2, 3)), (1.0, 2.0, 3.0))


class TestVectorField(unittest.TestCase):

    def test_examples(self):
        self.assertEqual(vector_field(PhasePoint(0, 0, 0), PhiModel.constant(0)), (0, 0, 1))
        self.assertEqual(vector_field(PhasePoint(3, 0, 0), PhiModel.constant(9)), (0, 0, 1))
        self.assertEqual(vector_field(PhasePoint(2, 1, 0), PhiModel.constant(9)), (1, -5, 1))


class TestHamiltonian(unittest.TestCase):

    def test_examples(self):
        self.assertAlmostEqual(hamiltonian(PhasePoint(3, 0, 0), PhiModel.constant(9)), 0.0,
                               places=13)
        self.assertEqual(hamiltonian(PhasePoint(0, 0, 0), PhiModel.constant(0)), 0.0)
        self.assertAlmostEqual(hamiltonian(PhasePoint(0, 0, 0), PhiModel.constant(9)), 18.0,
                               places=13)

    def test_negative_phi(self):
        self.assertRaises(NegativePhi, hamiltonian, PhasePoint(0, 0, 0),
                          PhiModel.hermite_gaussian(0.5))

    def test_conservation(self):
        phi = PhiModel.constant(9)
        start = PhasePoint(0, 0, 0)
        traj = integrate_to(start, 50.0, phi, IntegratorOptions(rtol=1e-11, atol=1e-13))
        self.assertTrue(traj.reached())
        H0 = hamiltonian(start, phi)
        H = [hamiltonian(PhasePoint(f, fp, x), phi) for x, f, fp in traj.rows()]
        self.assertLess(np.max(np.abs(np.array(H) - H0)), 1e-7 * max(1.0, abs(H0)))


class TestFunnel(unittest.TestCase):

    def test_bounds(self):
        lo, hi, fp_max = funnel_bounds(9)
        self.assertAlmostEqual(lo, -math.sqrt(27), places=14)
        self.assertEqual(hi, 3.0)
        self.assertAlmostEqual(fp_max, 8.48528137423857, places=12)
        lo, hi, fp_max = funnel_bounds(1)
        self.assertAlmostEqual(lo, -math.sqrt(3), places=14)
        self.assertEqual(hi, 1.0)
        self.assertAlmostEqual(fp_max, math.sqrt(8.0 / 3.0), places=14)
        self.assertLess(max(abs(b) for b in funnel_bounds(1e-12)), 1e-5)
        self.assertRaises(NonPositiveP, funnel_bounds, 0.0)

    def test_tag(self):
        self.assertEqual(funnel_tag(PhasePoint(0, 0, 0), 9), FUNNEL_M)
        self.assertEqual(funnel_tag(PhasePoint(4, 0, 0), 9), OUTSIDE_M)
        self.assertEqual(funnel_tag(PhasePoint(0, 10, 0), 9), OUTSIDE_M)

    def test_invariance(self):
        opts = IntegratorOptions(rtol=1e-10, atol=1e-12)
        for P in [1.0, 9.0]:
            phi = PhiModel.constant(P)
            lo, hi, fp_max = funnel_bounds(P)
            rng = np.random.RandomState(7)
            for _ in range(10):
                f = rng.uniform(lo, hi)
                fp = rng.uniform(-fp_max, fp_max)
                p = PhasePoint(f, fp, 0.0)
                if funnel_tag(p, P) != FUNNEL_M:
                    continue
                traj = integrate_to(p, 20.0, phi, opts)
                self.assertTrue(traj.reached())
                # orbits with small H reach f = -2*sqrt(P)
                self.assertTrue(np.all(traj.fs >= -2.0 * math.sqrt(P) - 1e-8))
                self.assertTrue(np.all(traj.fs <= hi + 1e-8))
                self.assertTrue(np.all(np.abs(traj.fps) <= fp_max + 1e-8))

    def test_escape(self):
        phi = PhiModel.constant(9)
        for f, fp in [(3.5, 0.1), (5.0, 2.0), (-7.0, 0.0), (0.0, 9.0)]:
            traj = integrate_to(PhasePoint(f, fp, 0.0), 50.0, phi)
            self.assertTrue(traj.blew_up())


class TestRegions(unittest.TestCase):

    def test_examples(self):
        self.assertEqual(classify_region(PhasePoint(0, 0, 0), PhiModel.constant(1)), R1)
        small = PhiModel.constant(0.01)
        self.assertEqual(classify_region(PhasePoint(1, -0.81, 0), small), R2)
        self.assertEqual(classify_region(PhasePoint(1, -0.5, 0), small), COMPLEMENT)
        self.assertEqual(classify_region(PhasePoint(1, 1, 0), small), COMPLEMENT)

    def test_partition(self):
        phi = PhiModel.gaussian(0.5)
        tags = set()
        for f in np.linspace(-3, 3, 100):
            for fp in np.linspace(-3, 3, 100):
                tag = classify_region(PhasePoint(f, fp, 0.5), phi)
                self.assertIn(tag, (R1, R2, COMPLEMENT))
                tags.add(tag)
        self.assertEqual(tags, set([R1, R2, COMPLEMENT]))

    def test_backward(self):
        phi = PhiModel.gaussian(1.0)
        p = PhasePoint(1.0, 0.9, -1.0)
        self.assertEqual(classify_region(p, phi, BACKWARD),
                         classify_region(p.reflected(), phi))
        self.assertRaises(PhasePointError, classify_region, p, phi)

    def test_negative_phi(self):
        self.assertRaises(NegativePhi, classify_region, PhasePoint(0, 0, 0),
                          PhiModel.hermite_gaussian(0.5))


class TestMaxSpeeds(unittest.TestCase):

    def test_examples(self):
        fs, fps = max_speeds(1.0)
        self.assertAlmostEqual(fs, 1.6329931618554521, places=14)
        self.assertEqual(fps, 3.0)
        self.assertEqual(max_speeds(0.0), (0.0, 0.0))
        fs, fps = max_speeds(16.0)
        self.assertAlmostEqual(fs, 8.0 * math.sqrt(8.0 / 3.0), places=12)
        self.assertEqual(fps, 48.0)
        self.assertRaises(NegativePhi, max_speeds, -1.0)


def suite():
    suite = unittest.TestSuite()
    loader = unittest.TestLoader()
    for case in [TestPhiModel, TestPhasePoint, TestVectorField, TestHamiltonian,
                 TestFunnel, TestRegions, TestMaxSpeeds]:
        suite.addTests(loader.loadTestsFromTestCase(case))
    return suite
