#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
    problem.py
    ~~~~~~~~~~

    the equation 0 = f'' - f^2 + phi(x) as an autonomous vector
    field on (f, f', x), forcing function models, the Hamiltonian
    and phase space regions

    :copyright: (c) 2026 by the globsol authors
    :license: GPL-2, see LICENSE for more details.
"""

import math

import numpy as np
from scipy.interpolate import CubicHermiteSpline
from scipy.optimize import brentq, minimize_scalar

from .exceptions import NegativePhi, NonPositiveP, PhasePointError, PhiModelError

CONSTANT = 'constant'
GAUSSIAN = 'gaussian'
HERMITE_GAUSSIAN = 'hermite_gaussian'
TABULATED = 'tabulated'

PHI_KINDS = [CONSTANT, GAUSSIAN, HERMITE_GAUSSIAN, TABULATED]

R1 = 'R1'
R2 = 'R2'
COMPLEMENT = 'Complement'
FUNNEL_M = 'FunnelM'
OUTSIDE_M = 'OutsideM'

FORWARD = 'forward'
BACKWARD = 'backward'

SQRT_8_3 = math.sqrt(8.0 / 3.0)

#sampling used for the sup norm of analytic families
SUP_SAMPLES = 2**14
SUP_HALF_WIDTH = 20.0

#both analytic bumps are below the smallest double beyond this radius
ANALYTIC_SUPPORT = 40.0

TAIL_GRID = np.concatenate(([0.0], np.geomspace(1e-4, 60.0, 4096)))


def _erf(x):
    # erf(x/sqrt(2)) with the limits at +-inf
    return math.erf(x / math.sqrt(2.0))


def _xexp(x):
    if math.isinf(x):
        return 0.0
    return x * math.exp(-0.5 * x * x)


class PhiModel(object):
    """
    Forcing function phi.

    Kinds:
        constant: phi = P.
        gaussian: phi = c*exp(-x^2/2).
        hermite_gaussian: phi = (x^2 - c)*exp(-x^2/2).
        tabulated: cubic Hermite interpolation of a table of
            (x, phi, phi') rows, zero outside of the table, scaled
            by the parameter.
    """

    __slots__ = ('kind', 'param', 'table', 'sup_norm', 'monotone_tail_x0',
                 '_spline', '_dspline')

    def __init__(self, kind, param=0.0, table=None):
        """
        Args:
            kind: One of PHI_KINDS.
            param: Family parameter (c or P, scale factor for tables).
            table: Rows (x, phi, phi') for the tabulated kind.
        """
        if not kind in PHI_KINDS:
            raise PhiModelError('unknown phi kind: ' + str(kind))
        param = float(param)
        if not math.isfinite(param):
            raise PhiModelError('phi parameter must be finite')
        self.kind = kind
        self.param = param
        self.table = None
        self._spline = None
        self._dspline = None
        if kind == TABULATED:
            if table is None:
                raise PhiModelError('tabulated phi needs a table')
            table = np.array(table, dtype=float)
            if table.ndim != 2 or table.shape[1] != 3 or table.shape[0] < 2:
                raise PhiModelError('phi table must have rows (x, phi, dphi)')
            if not np.all(np.isfinite(table)):
                raise PhiModelError('phi table has non-finite entries')
            if np.any(np.diff(table[:, 0]) <= 0):
                raise PhiModelError('phi table abscissae must increase strictly')
            self.table = table
            self._spline = CubicHermiteSpline(table[:, 0], table[:, 1],
                                              table[:, 2], extrapolate=False)
            self._dspline = self._spline.derivative()
        elif table is not None:
            raise PhiModelError('only tabulated phi takes a table')
        self.sup_norm = self._find_sup_norm()
        self.monotone_tail_x0 = self._find_monotone_tail_x0()

    @classmethod
    def constant(cls, P):
        return cls(CONSTANT, P)

    @classmethod
    def gaussian(cls, c):
        return cls(GAUSSIAN, c)

    @classmethod
    def hermite_gaussian(cls, c):
        return cls(HERMITE_GAUSSIAN, c)

    @classmethod
    def tabulated(cls, table, scale=1.0):
        return cls(TABULATED, scale, table)

    def __repr__(self):
        return '%s(%r)' % (self.kind, self.param)

    def __eq__(self, other):
        if not isinstance(other, PhiModel):
            return False
        if self.kind != other.kind or self.param != other.param:
            return False
        if self.table is None or other.table is None:
            return self.table is other.table
        return np.array_equal(self.table, other.table)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __call__(self, x):
        return self.value(x)

    def value(self, x):
        """
        Evaluate phi at a scalar or an array.
        """
        if np.ndim(x) == 0:
            x = float(x)
            if self.kind == GAUSSIAN:
                return self.param * math.exp(-0.5 * x * x)
            elif self.kind == HERMITE_GAUSSIAN:
                return (x * x - self.param) * math.exp(-0.5 * x * x)
            elif self.kind == CONSTANT:
                return self.param
            return float(self._tabulated(self._spline, x))
        x = np.asarray(x, dtype=float)
        if self.kind == GAUSSIAN:
            return self.param * np.exp(-0.5 * x * x)
        elif self.kind == HERMITE_GAUSSIAN:
            return (x * x - self.param) * np.exp(-0.5 * x * x)
        elif self.kind == CONSTANT:
            return np.full_like(x, self.param)
        return self._tabulated(self._spline, x)

    def derivative(self, x):
        """
        Evaluate phi' at a scalar or an array.
        """
        scalar = np.ndim(x) == 0
        if scalar and self.kind in [GAUSSIAN, HERMITE_GAUSSIAN]:
            x = float(x)
            e = math.exp(-0.5 * x * x)
            if self.kind == GAUSSIAN:
                return -self.param * x * e
            return x * (2.0 - x * x + self.param) * e
        x = np.asarray(x, dtype=float)
        if self.kind == GAUSSIAN:
            res = -self.param * x * np.exp(-0.5 * x * x)
        elif self.kind == HERMITE_GAUSSIAN:
            res = x * (2.0 - x * x + self.param) * np.exp(-0.5 * x * x)
        elif self.kind == CONSTANT:
            res = np.zeros_like(x)
        else:
            res = self._tabulated(self._dspline, x)
        if scalar:
            return float(res)
        return res

    def _tabulated(self, spline, x):
        res = self.param * spline(x)
        return np.where(np.isnan(res), 0.0, res)

    def log_value(self, x):
        """
        log(phi) without underflow in the tails, -inf where phi <= 0.
        """
        x = np.asarray(x, dtype=float)
        with np.errstate(divide='ignore', invalid='ignore'):
            if self.kind == GAUSSIAN:
                res = np.log(self.param) - 0.5 * x * x if self.param > 0 \
                      else np.full_like(x, -np.inf)
            elif self.kind == HERMITE_GAUSSIAN:
                q = x * x - self.param
                res = np.where(q > 0, np.log(np.abs(q)) - 0.5 * x * x, -np.inf)
            else:
                v = self.value(x)
                res = np.where(v > 0, np.log(np.where(v > 0, v, 1.0)), -np.inf)
        if res.ndim == 0:
            return float(res)
        return res

    def log_derivative(self, x):
        """
        phi'/phi, defined where phi > 0 (nan elsewhere).
        """
        x = np.asarray(x, dtype=float)
        with np.errstate(divide='ignore', invalid='ignore'):
            if self.kind == GAUSSIAN:
                res = -x if self.param > 0 else np.full_like(x, np.nan)
            elif self.kind == HERMITE_GAUSSIAN:
                q = x * x - self.param
                res = np.where(q > 0, 2.0 * x / q - x, np.nan)
            else:
                v = self.value(x)
                res = np.where(v > 0, self.derivative(x) / np.where(v > 0, v, 1.0),
                               np.nan)
        if np.ndim(res) == 0:
            return float(res)
        return res

    def integral(self, a=-np.inf, b=np.inf):
        """
        Integral of phi over [a, b], closed form for the analytic
        kinds and exact for the tabulated one.

        Returns:
            Float, +-inf for a nonzero constant over an infinite interval.
        """
        a, b = float(a), float(b)
        if self.kind == CONSTANT:
            if self.param == 0.0:
                return 0.0
            return self.param * (b - a)
        if self.kind == TABULATED:
            lo, hi = self.support()
            a, b = max(a, lo), min(b, hi)
            if b <= a:
                return 0.0
            return self.param * float(self._spline.integrate(a, b))
        gauss = math.sqrt(0.5 * math.pi) * (_erf(b) - _erf(a))
        if self.kind == GAUSSIAN:
            return self.param * gauss
        return _xexp(a) - _xexp(b) + (1.0 - self.param) * gauss

    def decays(self):
        """
        Whether phi vanishes at infinity.
        """
        return self.kind != CONSTANT or self.param == 0.0

    def support(self):
        """
        Interval outside of which phi is zero in double precision.
        """
        if self.kind == CONSTANT:
            if self.param == 0.0:
                return (0.0, 0.0)
            return (-np.inf, np.inf)
        if self.kind == TABULATED:
            return (float(self.table[0, 0]), float(self.table[-1, 0]))
        return (-ANALYTIC_SUPPORT, ANALYTIC_SUPPORT)

    def is_even(self):
        if self.kind != TABULATED:
            return True
        lo, hi = self.support()
        r = max(abs(lo), abs(hi))
        xs = np.linspace(0.0, r, 2001)
        scale = max(self.sup_norm, 1e-300)
        return bool(np.allclose(self.value(xs), self.value(-xs),
                                rtol=1e-10, atol=1e-12 * scale))

    def mirrored(self):
        """
        Model of x -> phi(-x).
        """
        if self.is_even():
            return self
        table = self.table[::-1].copy()
        table[:, 0] = -table[:, 0]
        table[:, 2] = -table[:, 2]
        return PhiModel(TABULATED, self.param, table)

    def with_param(self, param):
        """
        Family member with another parameter.
        """
        return PhiModel(self.kind, param, self.table)

    def _find_sup_norm(self):
        if self.kind == CONSTANT:
            return abs(self.param)
        if self.kind == TABULATED:
            lo, hi = self.support()
        else:
            lo, hi = -SUP_HALF_WIDTH, SUP_HALF_WIDTH
        xs = np.linspace(lo, hi, SUP_SAMPLES)
        vals = np.abs(self.value(xs))
        i = int(np.argmax(vals))
        best = float(vals[i])
        a = xs[max(i - 1, 0)]
        b = xs[min(i + 1, len(xs) - 1)]
        if b > a:
            res = minimize_scalar(lambda x: -abs(self.value(x)), bounds=(a, b),
                                  method='bounded', options={'xatol': 1e-12})
            best = max(best, -float(res.fun))
        return best

    def _find_monotone_tail_x0(self):
        right = self._tail_x0(self.derivative, self.value)
        left = self._tail_x0(lambda x: -self.derivative(-x),
                             lambda x: self.value(-x))
        if right is None or left is None:
            return None
        return max(right, left)

    @staticmethod
    def _tail_x0(dfun, fun):
        """
        Smallest x0 >= 0 with dfun <= 0 on [x0, inf), or None when the
        increase persists until phi is negligible.
        """
        dv = dfun(TAIL_GRID)
        tol = 1e-14 * max(float(np.max(np.abs(dv))), 1e-300)
        bad = np.nonzero(dv > tol)[0]
        if bad.size == 0:
            return 0.0
        i = int(bad[-1])
        if i == len(TAIL_GRID) - 1:
            return None
        vals = np.abs(fun(TAIL_GRID))
        alive = np.nonzero(vals > 1e-14 * max(float(np.max(vals)), 1e-300))[0]
        if alive.size == 0 or i >= alive[-1]:
            return None
        a, b = TAIL_GRID[i], TAIL_GRID[i + 1]
        try:
            return float(brentq(lambda x: float(dfun(x)) - tol, a, b, xtol=1e-14))
        except ValueError:
            return float(b)

    def serialize(self):
        table = None
        if self.table is not None:
            table = self.table.tolist()
        return {"kind": self.kind, "param": self.param, "table": table}

    @classmethod
    def deserialize(cls, value):
        if not isinstance(value, dict) or not "kind" in value:
            raise PhiModelError('phi description needs a kind')
        return cls(value["kind"], value.get("param", 0.0), value.get("table"))


class PhasePoint(object):
    """
    A state (f, f', x) of the autonomous system.
    """

    __slots__ = ('f', 'fp', 'x')

    def __init__(self, f, fp, x):
        f, fp, x = float(f), float(fp), float(x)
        if not (math.isfinite(f) and math.isfinite(fp) and math.isfinite(x)):
            raise PhasePointError('non-finite phase point: (%r, %r, %r)' % (f, fp, x))
        self.f = f
        self.fp = fp
        self.x = x

    def __repr__(self):
        return 'PhasePoint(%r, %r, %r)' % (self.f, self.fp, self.x)

    def __eq__(self, other):
        return isinstance(other, PhasePoint) and self.f == other.f \
          and self.fp == other.fp and self.x == other.x

    def __ne__(self, other):
        return not self.__eq__(other)

    def __iter__(self):
        return iter((self.f, self.fp, self.x))

    def reflected(self):
        """
        The point seen by the equation with x -> -x.
        """
        return PhasePoint(self.f, -self.fp, -self.x)

    def serialize(self):
        return {"f": self.f, "fp": self.fp, "x": self.x}

    @classmethod
    def deserialize(cls, value):
        return cls(value["f"], value["fp"], value["x"])


def vector_field(p, phi):
    """
    The field (f', f^2 - phi(x), 1).
    """
    return (p.fp, p.f * p.f - phi.value(p.x), 1.0)


def hamiltonian_value(f, fp, phi_x):
    """
    H for given values, phi_x must be nonnegative.
    """
    return f**3 / 3.0 - 0.5 * fp * fp - f * phi_x + 2.0 / 3.0 * phi_x**1.5


def hamiltonian(p, phi):
    """
    H(f, f', x) = f^3/3 - f'^2/2 - f*phi(x) + 2/3*phi(x)^(3/2).

    Raises:
        NegativePhi if phi(x) < 0.
    """
    phi_x = phi.value(p.x)
    if phi_x < 0:
        raise NegativePhi('phi(%r) = %r < 0' % (p.x, phi_x))
    return hamiltonian_value(p.f, p.fp, phi_x)


def funnel_bounds(P):
    """
    Bounds (f_lo, f_hi, |f'|_max) of bounded solutions for phi = P.
    """
    if not P > 0:
        raise NonPositiveP('P must be positive, got %r' % P)
    return (-math.sqrt(3.0 * P), math.sqrt(P), SQRT_8_3 * P**0.75)


def funnel_tag(p, P):
    """
    Membership in the funnel M = {H > 0, f < sqrt(P)} for phi = P.
    """
    if P < 0:
        raise NegativePhi('P = %r < 0' % P)
    if hamiltonian_value(p.f, p.fp, P) > 0 and p.f < math.sqrt(P):
        return FUNNEL_M
    return OUTSIDE_M


def classify_region(p, phi, side=FORWARD, slack=0.0):
    """
    Classify a phase point as R1, R2 or Complement.

    Args:
        p: PhasePoint with x >= 0 (x <= 0 on the backward side).
        phi: PhiModel.
        side: forward or backward, the backward side is mapped
            to the forward one by x -> -x.
        slack: Relative tolerance on the inequalities.

    Returns:
        Region tag, R1 wins on common boundaries.
    """
    if side == BACKWARD:
        p = p.reflected()
        phi = phi.mirrored()
    if p.x < 0:
        raise PhasePointError('regions are defined for x >= 0, got %r' % p.x)
    phi_x = phi.value(p.x)
    if phi_x < 0:
        raise NegativePhi('phi(%r) = %r < 0' % (p.x, phi_x))
    f, fp = p.f, p.fp
    cubic = f**3 / 3.0
    kinetic = 0.5 * fp * fp
    H = cubic - kinetic - f * phi_x + 2.0 / 3.0 * phi_x**1.5
    tol_H = slack * (1.0 + abs(cubic) + kinetic + abs(f * phi_x) + phi_x**1.5)
    if H >= -tol_H and f <= math.sqrt(phi_x) + slack * (1.0 + abs(f)):
        return R1
    if H <= tol_H and cubic - kinetic >= -slack * (1.0 + abs(cubic) + kinetic) \
       and fp <= slack * (1.0 + abs(fp)):
        return R2
    return COMPLEMENT


def max_speeds(phi_x):
    """
    Largest |f'| and |f''| inside R1 at a point with the given phi value.
    """
    if phi_x < 0:
        raise NegativePhi('phi = %r < 0' % phi_x)
    return (SQRT_8_3 * phi_x**0.75, 3.0 * phi_x)
