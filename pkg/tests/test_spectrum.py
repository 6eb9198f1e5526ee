#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
    test_spectrum.py
    ~~~~~~~~~~~~~~~~

    linearized spectrum test suite

    :copyright: (c) 2026 by the globsol authors
    :license: GPL-2, see LICENSE for more details.
"""

import math
import unittest

import numpy as np

from globsol.exceptions import GridTooCoarse, SpectrumError
from globsol.fileutils import FileJSON
from globsol.problem import PhiModel
from globsol.spectrum import (MIN_N, SpectralSummary, grid, linearized_spectrum,
                              solution_profile_spectrum)
from globsol.zset import GlobalSolution

from tests.base import BaseTest


def constant_profile(value):
    return lambda xs: np.full_like(xs, value)


class TestGrid(unittest.TestCase):

    def test_nodes(self):
        xs, h = grid(1.0, 3)
        self.assertAlmostEqual(h, 0.5, places=15)
        self.assertTrue(np.allclose(xs, [-0.5, 0.0, 0.5], atol=1e-15))


class TestSpectrum(BaseTest):

    def test_dirichlet_oracle(self):
        summary = linearized_spectrum(constant_profile(0.0), math.pi / 2.0, 2000)
        for computed, exact in zip(summary.eigenvalues_head[:3], [-1.0, -4.0, -9.0]):
            self.assertLess(abs(computed - exact), 0.01 * abs(exact))
        self.assertEqual(summary.n_positive, 0)
        self.assertAlmostEqual(summary.smallest_abs, 1.0, places=2)

    def test_shift(self):
        L_half = math.pi / 2.0
        base = linearized_spectrum(constant_profile(0.0), L_half, MIN_N, check=False)
        shifted = linearized_spectrum(constant_profile(0.75), L_half, MIN_N, check=False)
        scale = np.max(np.abs(base.eigenvalues))
        self.assertTrue(np.allclose(shifted.eigenvalues, base.eigenvalues - 1.5,
                                    rtol=0.0, atol=1e-12 * scale))

    def test_positive_count(self):
        summary = linearized_spectrum(constant_profile(-1.0), math.pi / 2.0, 1000)
        self.assertEqual(summary.n_positive, 1)
        self.assertAlmostEqual(summary.eigenvalues_head[0], 1.0, places=2)

    def test_too_coarse(self):
        well = lambda xs: -200.0 * np.exp(-xs * xs / 0.02)
        self.assertRaises(GridTooCoarse, linearized_spectrum, well, 20.0, MIN_N)

    def test_errors(self):
        self.assertRaises(SpectrumError, linearized_spectrum, constant_profile(0.0),
                          1.0, MIN_N - 1)
        self.assertRaises(SpectrumError, linearized_spectrum, constant_profile(0.0),
                          0.0, MIN_N)
        self.assertRaises(SpectrumError, linearized_spectrum,
                          constant_profile(math.nan), 1.0, MIN_N)
        self.assertRaises(SpectrumError, linearized_spectrum,
                          lambda xs: 1.0, 1.0, MIN_N)

    def test_solution_profile(self):
        sol = GlobalSolution.from_seeds(PhiModel.constant(0.0), -1.0, -1.0)
        summary = solution_profile_spectrum(sol, 10.0, 400, check=False)
        self.assertEqual(summary.n_positive, 0)
        self.assertEqual(summary.N, 400)

    def test_write(self):
        summary = linearized_spectrum(constant_profile(0.0), math.pi / 2.0, MIN_N,
                                      check=False)
        f = FileJSON(self.tempdir.name, 'spectrum.json', [])
        f.write(summary)
        loaded = f.read()
        self.assertTrue(isinstance(loaded, SpectralSummary))
        self.assertEqual(loaded.n_positive, summary.n_positive)
        self.assertEqual(loaded.N, MIN_N)
        self.assertTrue(np.array_equal(loaded.eigenvalues_head, summary.eigenvalues_head))


def suite():
    suite = unittest.TestSuite()
    loader = unittest.TestLoader()
    for case in [TestGrid, TestSpectrum]:
        suite.addTests(loader.loadTestsFromTestCase(case))
    return suite
