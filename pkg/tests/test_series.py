#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
    test_series.py
    ~~~~~~~~~~~~~~

    series expansion and convergence certificate test suite

    :copyright: (c) 2026 by the globsol authors
    :license: GPL-2, see LICENSE for more details.
"""

import math
import os
import unittest

import numpy as np
from scipy.integrate import quad

from globsol.exceptions import (DivergentCoefficient, NoFiniteEnvelope, OutsideValidity,
                                SeriesParamsError, UncertifiedSeries)
from globsol.fileutils import FileJSON
from globsol.problem import PhiModel
from globsol.series import (SIDE_RIGHT, SeriesBuilder, SeriesParams, asymptotic_bc,
                            bound_sequence, build_expansion, certify_convergence,
                            convergence_region, envelope_curve, envelope_M,
                            eval_series, other_family_point, series_residual)

from tests.base import BaseTest


class TestSeriesParams(unittest.TestCase):

    def test_validation(self):
        self.assertRaises(SeriesParamsError, SeriesParams, 0.0, alpha=5.0)
        self.assertRaises(SeriesParamsError, SeriesParams, 0.0, R=0.0)
        self.assertRaises(SeriesParamsError, SeriesParams, 0.0, M=-1.0)
        self.assertRaises(SeriesParamsError, SeriesParams, 0.0, order=-1)
        self.assertRaises(SeriesParamsError, SeriesParams, 0.0, order=2.5)
        self.assertRaises(SeriesParamsError, SeriesParams, math.nan)

    def test_serialize(self):
        params = SeriesParams(1.5, K=-0.25, R=2.0, M=3.0, order=6)
        self.assertEqual(SeriesParams.deserialize(params.serialize()), params)
        self.assertNotEqual(SeriesParams(1.5), params)

    def test_threshold(self):
        params = SeriesParams(0.0, alpha=6.0, R=2.0)
        self.assertAlmostEqual(params.threshold(), 8.0 * 8.0 * 1.0 * 4.0, places=12)


class TestCertificate(unittest.TestCase):

    def test_bound_ratio(self):
        rng = np.random.RandomState(17)
        for _ in range(200):
            R = rng.uniform(0.1, 10.0)
            A1 = rng.uniform(0.0, 8.0 * R)
            A = bound_sequence(A1, 51)
            for k in range(1, 51):
                self.assertLessEqual(A[k], R * A[k - 1] * (1.0 + 1e-12))

    def test_bound_sequence(self):
        A = bound_sequence(2.0, 3)
        self.assertEqual(len(A), 3)
        self.assertEqual(A[0], 2.0)
        self.assertAlmostEqual(A[1], 4.0 / 8.0, places=15)
        self.assertAlmostEqual(A[2], 2.0 * 2.0 * 0.5 / 18.0, places=15)

    def test_threshold_edge(self):
        R = 1.5
        threshold = SeriesParams(0.0, R=R).threshold()
        below = SeriesParams(0.0, R=R, M=threshold * (1.0 - 1e-9))
        above = SeriesParams(0.0, R=R, M=threshold * (1.0 + 1e-9))
        self.assertTrue(certify_convergence(below))
        self.assertFalse(certify_convergence(above))
        self.assertFalse(certify_convergence(SeriesParams(0.0, R=R, M=threshold)))

    def test_K_limit(self):
        self.assertTrue(certify_convergence(SeriesParams(0.0, K=8.0, R=1.0)))
        self.assertFalse(certify_convergence(SeriesParams(0.0, K=8.0 + 1e-9, R=1.0)))


class TestEnvelope(unittest.TestCase):

    def test_constant(self):
        self.assertEqual(envelope_M(PhiModel.constant(0.0), 0.0, 6.0, 1.0), 0.0)
        self.assertRaises(NoFiniteEnvelope, envelope_M, PhiModel.constant(1.0),
                          0.0, 6.0, 1.0)

    def test_bounds_samples(self):
        phi = PhiModel.gaussian(0.05)
        d, R = -1.0, 1.0
        M = envelope_M(phi, d, 6.0, R)
        xs = np.concatenate((np.linspace(d - 30.0, d - R, 3000),
                             np.linspace(d + R, d + 30.0, 3000)))
        self.assertTrue(np.all(np.abs(phi.value(xs)) * np.abs(xs - d)**6 < M))

    def test_right_side(self):
        phi = PhiModel.gaussian(0.05)
        self.assertLessEqual(envelope_M(phi, 5.0, 6.0, 1.0, SIDE_RIGHT),
                             envelope_M(phi, 5.0, 6.0, 1.0))

    def test_gaussian_peak(self):
        # x^6 e^(-x^2/2) peaks at x = sqrt(6)
        peak = 216.0 * math.exp(-3.0)
        M = envelope_M(PhiModel.gaussian(1.0), 0.0, 6.0, 1.0)
        self.assertGreaterEqual(M, peak)
        self.assertLess(M / peak - 1.0, 1e-2)

    def test_monotone_radius(self):
        phi = PhiModel.gaussian(1.0)
        M = [envelope_M(phi, 0.0, 6.0, R) for R in [0.5, 1.0, 2.0, 3.0, 4.0, 5.0]]
        for wide, narrow in zip(M[:-1], M[1:]):
            self.assertLessEqual(narrow, wide * (1.0 + 1e-9))
        self.assertLess(M[4], M[3])
        self.assertLess(M[5], M[4])

    def test_region(self):
        region = convergence_region(PhiModel.constant(0.0), [-1.0, 0.0, 2.0],
                                    [0.5, 1.0], 6.0)
        self.assertEqual(region.shape, (3, 2))
        self.assertTrue(np.all(region))
        region = convergence_region(PhiModel.constant(1.0), [0.0], [1.0], 6.0)
        self.assertFalse(region[0, 0])

    def test_curve(self):
        phi = PhiModel.gaussian(0.05)
        ds = [-2.0, 0.0, 3.0]
        M = envelope_curve(phi, ds, 6.0, 1.0)
        self.assertEqual(M.shape, (3,))
        for d, value in zip(ds, M):
            self.assertEqual(value, envelope_M(phi, d, 6.0, 1.0))
        # the gaussian is even
        self.assertAlmostEqual(envelope_curve(phi, [2.0], 6.0, 1.0)[0],
                               envelope_curve(phi, [-2.0], 6.0, 1.0)[0], delta=1e-6 * M[0])


class TestExpansion(BaseTest):

    def test_zero_phi(self):
        exp = build_expansion(PhiModel.constant(0.0), SeriesParams(0.0, R=1.0))
        self.assertTrue(exp.certified)
        for x in [1.5, 3.0, 40.0]:
            f, fp, err = eval_series(exp, x)
            self.assertAlmostEqual(f, 6.0 / x**2, places=14)
            self.assertAlmostEqual(fp, -12.0 / x**3, places=14)
            self.assertEqual(err, 0.0)
            self.assertEqual(series_residual(exp, x), 0.0)

    def test_free_constant(self):
        K = 0.5
        exp = build_expansion(PhiModel.constant(0.0), SeriesParams(0.0, K=K, R=1.0))
        for u in [2.0, 3.0, 10.0]:
            f, fp = exp.coefficients(u)
            self.assertAlmostEqual(f[1], K / u**3, places=12)
            self.assertAlmostEqual(fp[1], -3.0 * K / u**4, places=12)
            self.assertAlmostEqual(f[2] / (K * K / (8.0 * u**4)), 1.0, places=6)
            self.assertAlmostEqual(fp[2] / (-K * K / (2.0 * u**5)), 1.0, places=6)

    def test_contraction(self):
        exp = build_expansion(PhiModel.gaussian(0.05), SeriesParams(0.0, order=3))
        f, _ = exp.coefficients(8.0)
        self.assertEqual(f[0], 6.0 / 64.0)
        magnitudes = np.abs(f)
        self.assertGreater(magnitudes[3], 0.0)
        self.assertTrue(np.all(np.diff(magnitudes) < 0))

    def test_asymptotic_relation(self):
        phi = PhiModel.gaussian(0.05)
        exp = build_expansion(phi, SeriesParams(0.0, R=1.0))
        self.assertTrue(exp.certified)
        x0 = 3.0
        f, fp, err = eval_series(exp, x0)
        tail, _ = quad(lambda s: phi.value(s) / s**3, x0, np.inf)
        relation = -math.sqrt(2.0 / 3.0) * f**1.5 + x0**3 * tail
        self.assertLess(abs(fp - relation), 1e-7 + err)

    def test_free_constant_drops_out(self):
        phi = PhiModel.gaussian(0.05)
        x0, K = 8.0, 0.1
        values = []
        for k in (0.0, K):
            exp = build_expansion(phi, SeriesParams(0.0, K=k, R=1.0))
            f, fp, _ = eval_series(exp, x0)
            values.append(fp + math.sqrt(2.0 / 3.0) * f**1.5)
        # f' alone moves by about 3K/x0^4
        self.assertLess(abs(values[1] - values[0]), 1e-2 * 3.0 * K / x0**4)

    def test_order_in_d(self):
        builder = SeriesBuilder(PhiModel.gaussian(0.05))
        fs = [asymptotic_bc(builder.build(d, 1.0), 8.0).f for d in (-2.0, 0.0, 2.0)]
        self.assertTrue(np.all(np.diff(fs) > 0))
        self.assertAlmostEqual(fs[1], 6.0 / 64.0, places=8)

    def test_outside_validity(self):
        exp = build_expansion(PhiModel.constant(0.0), SeriesParams(2.0, R=1.0))
        self.assertRaises(OutsideValidity, eval_series, exp, 3.0)
        self.assertRaises(OutsideValidity, eval_series, exp, 0.0)

    def test_uncertified(self):
        exp = build_expansion(PhiModel.constant(0.0), SeriesParams(0.0, K=100.0, R=1.0))
        self.assertFalse(exp.certified)
        self.assertEqual(exp.trunc_err(5.0), math.inf)
        self.assertRaises(UncertifiedSeries, asymptotic_bc, exp, 5.0)

    def test_divergent(self):
        self.assertRaises(DivergentCoefficient, build_expansion,
                          PhiModel.constant(2.0), SeriesParams(0.0))

    def test_residual_order(self):
        phi = PhiModel.gaussian(0.05)
        exp = build_expansion(phi, SeriesParams(0.0, K=4.0, R=2.0, order=4))
        r8 = abs(series_residual(exp, 8.0))
        r16 = abs(series_residual(exp, 16.0))
        self.assertGreater(r8, 0.0)
        self.assertLessEqual(r16 * 2.0**7.5, r8)

    def test_residual_truncation(self):
        phi = PhiModel.gaussian(0.05)
        K, x = 4.0, 8.0
        residuals = []
        for order in range(1, 5):
            exp = build_expansion(phi, SeriesParams(0.0, K=K, R=2.0, order=order))
            residuals.append(abs(series_residual(exp, x)))
        # only f_1^2 is left at first order
        self.assertAlmostEqual(residuals[0] / (K / x**3)**2, 1.0, places=6)
        for low, high in zip(residuals[:-1], residuals[1:]):
            self.assertLess(4.0 * high, low)

    def test_residual_order_zero(self):
        phi = PhiModel.gaussian(0.05)
        exp = build_expansion(phi, SeriesParams(0.0, R=1.0, order=0))
        self.assertEqual(series_residual(exp, 2.0), phi.value(2.0))

    def test_builder(self):
        phi = PhiModel.gaussian(0.05)
        builder = SeriesBuilder(phi)
        params = builder.certified_params(-2.0, 0.5)
        self.assertIsNotNone(params)
        self.assertTrue(certify_convergence(params))
        exp = builder.build(-2.0, 0.5)
        start = asymptotic_bc(exp, 10.0)
        self.assertEqual(start.x, 10.0)
        self.assertAlmostEqual(start.f, 6.0 / 144.0, places=8)

    def test_write(self):
        exp = build_expansion(PhiModel.constant(0.0), SeriesParams(0.0, order=2))
        f = FileJSON(self.tempdir.name, 'series_coeffs.json', [])
        f.write(exp)
        content = f.read()
        self.assertEqual(content['params'], exp.params)
        self.assertEqual(len(content['table']), len(exp.nodes))
        self.assertTrue(os.path.isfile(os.path.join(self.tempdir.name, 'series_coeffs.json')))


class TestOtherFamily(unittest.TestCase):

    def test_gaussian(self):
        c = 0.3
        f, fp = other_family_point(PhiModel.gaussian(c), 0.0)
        self.assertAlmostEqual(f, -c, places=8)
        self.assertAlmostEqual(fp, c * math.sqrt(math.pi / 2.0), places=8)

    def test_beyond_support(self):
        self.assertEqual(other_family_point(PhiModel.gaussian(1.0), 100.0), (0.0, 0.0))
        self.assertRaises(NoFiniteEnvelope, other_family_point,
                          PhiModel.constant(1.0), 0.0)


def suite():
    suite = unittest.TestSuite()
    loader = unittest.TestLoader()
    for case in [TestSeriesParams, TestCertificate, TestEnvelope, TestExpansion,
                 TestOtherFamily]:
        suite.addTests(loader.loadTestsFromTestCase(case))
    return suite
