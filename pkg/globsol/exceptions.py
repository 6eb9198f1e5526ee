#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
    exceptions.py
    ~~~~~~~~~~~~~

    Exceptions hierarchy

    :copyright: (c) 2026 by the globsol authors
    :license: GPL-2, see LICENSE for more details.
"""

class GlobSolError(Exception):
    pass

class ConfigError(GlobSolError):
    pass

class FileJSONError(GlobSolError):
    pass

class OutputLayoutError(GlobSolError):
    pass

class IntegrityError(OutputLayoutError):
    pass

class ProblemError(GlobSolError):
    pass

class PhiModelError(ProblemError):
    pass

class PhasePointError(ProblemError):
    pass

class NegativePhi(ProblemError):
    pass

class NonPositiveP(ProblemError):
    pass

class SeriesError(GlobSolError):
    pass

class SeriesParamsError(SeriesError):
    pass

class NoFiniteEnvelope(SeriesError):
    pass

class DivergentCoefficient(SeriesError):
    pass

class OutsideValidity(SeriesError):
    pass

class UncertifiedSeries(SeriesError):
    pass

class IntegratorError(GlobSolError):
    pass

class ZSetError(GlobSolError):
    pass

class EmptyCurve(ZSetError):
    pass

class NoStraddle(ZSetError):
    pass

class SpectrumError(GlobSolError):
    pass

class GridTooCoarse(SpectrumError):
    pass

class BifurcationError(GlobSolError):
    pass

class SymmetryUnavailable(BifurcationError):
    pass

class ChecksError(GlobSolError):
    pass

class NotIntegrable(ChecksError):
    pass

class DecayParamsError(ChecksError):
    pass
