#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
    spectrum.py
    ~~~~~~~~~~~

    spectrum of the linearization d^2/dx^2 - 2f about a solution

    :copyright: (c) 2026 by the globsol authors
    :license: GPL-2, see LICENSE for more details.
"""

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .exceptions import GridTooCoarse, SpectrumError

DEFAULT_L_HALF = 20.0
DEFAULT_N = 2000
MIN_N = 200
HEAD_SIZE = 10

#relative change allowed on grid doubling, with an absolute floor
GRID_RTOL = 1e-2
GRID_FLOOR = 1e-2


class SpectralSummary(object):
    """
    Counts and extremes of the computed spectrum.
    """

    __slots__ = ('n_positive', 'smallest_abs', 'eigenvalues_head', 'L_half', 'N',
                 'eigenvalues')

    def __init__(self, n_positive, smallest_abs, eigenvalues_head, L_half, N,
                 eigenvalues=None):
        self.n_positive = int(n_positive)
        self.smallest_abs = float(smallest_abs)
        self.eigenvalues_head = np.asarray(eigenvalues_head, dtype=float)
        self.L_half = float(L_half)
        self.N = int(N)
        self.eigenvalues = eigenvalues

    def __repr__(self):
        return 'SpectralSummary(n_positive=%d, smallest_abs=%.6g)' % \
          (self.n_positive, self.smallest_abs)

    def serialize(self):
        return {"n_positive": self.n_positive, "smallest_abs": self.smallest_abs,
                "eigenvalues_head": self.eigenvalues_head,
                "grid": [self.L_half, self.N]}

    @classmethod
    def deserialize(cls, value):
        L_half, N = value["grid"]
        return cls(value["n_positive"], value["smallest_abs"],
                   value["eigenvalues_head"], L_half, N)


def grid(L_half, N):
    """
    Interior nodes and spacing of the Dirichlet grid on [-L_half, L_half].
    """
    h = 2.0 * L_half / (N + 1)
    return (-L_half + h * np.arange(1, N + 1), h)


def _eigenvalues(profile, L_half, N):
    xs, h = grid(L_half, N)
    f = np.asarray(profile(xs), dtype=float)
    if f.shape != xs.shape or not np.all(np.isfinite(f)):
        raise SpectrumError('solution profile is not finite on the grid')
    diag = -2.0 / h**2 - 2.0 * f
    off = np.full(N - 1, 1.0 / h**2)
    return eigh_tridiagonal(diag, off, eigvals_only=True)


def linearized_spectrum(profile, L_half=DEFAULT_L_HALF, N=DEFAULT_N, check=True):
    """
    Spectrum of d^2/dx^2 - 2f by central differences with Dirichlet ends.

    Args:
        profile: Callable giving f on an array of x.
        L_half: Half length of the truncated domain.
        N: Number of interior grid points.
        check: Compare the head of the spectrum with a grid of 2N points.

    Returns:
        SpectralSummary.

    Raises:
        GridTooCoarse if grid doubling moves a head eigenvalue by more than 1%.
    """
    if N < MIN_N:
        raise SpectrumError('need at least %d grid points, got %d' % (MIN_N, N))
    if not L_half > 0:
        raise SpectrumError('L_half must be positive')
    ev = _eigenvalues(profile, L_half, N)
    head = ev[::-1][:HEAD_SIZE]
    if check:
        fine = _eigenvalues(profile, L_half, 2 * N)[::-1][:len(head)]
        scale = np.maximum(np.abs(fine), GRID_FLOOR)
        change = np.abs(fine - head) / scale
        if np.any(change > GRID_RTOL):
            raise GridTooCoarse('grid doubling moves eigenvalues by up to %.3g%%'
                                % (100.0 * np.max(change)))
    return SpectralSummary(np.count_nonzero(ev > 0), np.min(np.abs(ev)), head,
                           L_half, N, ev)


def solution_profile_spectrum(solution, L_half=DEFAULT_L_HALF, N=DEFAULT_N, check=True):
    """
    Spectrum of the linearization about a GlobalSolution.
    """
    return linearized_spectrum(solution, L_half, N, check)
