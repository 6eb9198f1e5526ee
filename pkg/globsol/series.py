#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
    series.py
    ~~~~~~~~~

    convergent series solution f = sum f_k about the leading
    term 6/(x - d)^2, its convergence certificate and asymptotic
    boundary data

    Every correction solves f_k'' - 12/u^2 f_k = g_k with u = x - d,
    g_1 = -phi and g_k = sum_{m=1}^{k-1} f_m f_{k-m}. With h = -g/u^3 the
    decaying solution is

        u^3 f_k = K [k = 1] - (J(u) - u^7 I(u)) / 7,
        I(u) = int_u^inf h,  J(u) = int_u^inf h s^7.

    :copyright: (c) 2026 by the globsol authors
    :license: GPL-2, see LICENSE for more details.
"""

import math

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import CubicSpline
from scipy.optimize import minimize_scalar

from .exceptions import (DivergentCoefficient, NoFiniteEnvelope, OutsideValidity,
                         SeriesParamsError, UncertifiedSeries)
from .logger import Logger
from .problem import CONSTANT, PhasePoint

DEFAULT_ORDER = 4
DEFAULT_ALPHA = 6.0

GRID_NODES = 256
GRID_START = 1.05
GRID_END = 1e4

ENVELOPE_SAMPLES = 4096
ENVELOPE_MARGIN = 1e-3

GL_NODES, GL_WEIGHTS = np.polynomial.legendre.leggauss(16)
GL8_NODES, GL8_WEIGHTS = np.polynomial.legendre.leggauss(8)

QUADRATURE_ATOL = 1e-12
QUADRATURE_RTOL = 1e-10

RESIDUAL_STEP = 1e-3

SIDE_BOTH = 'both'
SIDE_RIGHT = 'right'


class SeriesParams(object):
    """
    Parameters of a series expansion.
    """

    __slots__ = ('d', 'K', 'alpha', 'R', 'M', 'order')

    def __init__(self, d, K=0.0, alpha=DEFAULT_ALPHA, R=1.0, M=0.0, order=DEFAULT_ORDER):
        """
        Args:
            d: Translation of the leading term 6/(x - d)^2.
            K: Free constant of f_1.
            alpha: Decay exponent of the envelope of phi, > 5.
            R: Validity radius, the series is used for x - d > R.
            M: Envelope constant, |phi(x)| < M/|x - d|^alpha.
            order: Truncation order.
        """
        values = [d, K, alpha, R, M]
        if not all(math.isfinite(float(v)) for v in values):
            raise SeriesParamsError('series parameters must be finite')
        if not alpha > 5:
            raise SeriesParamsError('alpha must be > 5, got %r' % alpha)
        if not R > 0:
            raise SeriesParamsError('R must be positive, got %r' % R)
        if M < 0:
            raise SeriesParamsError('M must be nonnegative, got %r' % M)
        if int(order) != order or order < 0:
            raise SeriesParamsError('order must be a nonnegative integer')
        self.d = float(d)
        self.K = float(K)
        self.alpha = float(alpha)
        self.R = float(R)
        self.M = float(M)
        self.order = int(order)

    def __repr__(self):
        return 'SeriesParams(d=%r, K=%r, alpha=%r, R=%r, M=%r, order=%r)' % \
          (self.d, self.K, self.alpha, self.R, self.M, self.order)

    def __eq__(self, other):
        return isinstance(other, SeriesParams) \
          and self.serialize() == other.serialize()

    def __ne__(self, other):
        return not self.__eq__(other)

    def A1(self):
        return abs(self.K) + self.M / ((2.0 + self.alpha) * (self.alpha - 5.0)
                                       * self.R**(self.alpha - 5.0))

    def threshold(self):
        """
        Largest envelope constant allowed by the certificate (exclusive).
        """
        return 8.0 * (self.alpha + 2.0) * (self.alpha - 5.0) * self.R**(self.alpha - 4.0)

    def serialize(self):
        return {"d": self.d, "K": self.K, "alpha": self.alpha, "R": self.R,
                "M": self.M, "order": self.order}

    @classmethod
    def deserialize(cls, value):
        return cls(value["d"], value["K"], value["alpha"], value["R"],
                   value["M"], value["order"])


def _adaptive(func, a, b, k):
    """
    Adaptive quadrature of one coefficient integral.

    Raises:
        DivergentCoefficient if the tolerances are not met.
    """
    res = quad(func, a, b, epsabs=QUADRATURE_ATOL, epsrel=QUADRATURE_RTOL,
               limit=200, full_output=1)
    value, abserr = res[0], res[1]
    if not math.isfinite(value) or \
       abserr > QUADRATURE_ATOL + QUADRATURE_RTOL * abs(value):
        raise DivergentCoefficient('quadrature of f_%d on [%g, %g] did not converge '
                                   '(error %.3g)' % (k, a, b, abserr))
    return value


def bound_sequence(A1, n):
    """
    Bound constants A_1..A_n with
    A_k = sum_{m=1}^{k-1} A_m A_{k-m} / (k^2 + 5k - 6).
    """
    A = [float(A1)]
    for k in range(2, n + 1):
        s = 0.0
        for m in range(1, k):
            s += A[m - 1] * A[k - m - 1]
        A.append(s / (k * k + 5 * k - 6))
    return A[:n]


def certify_convergence(params):
    """
    True iff M < 8(alpha + 2)(alpha - 5)R^(alpha - 4) and A_1 <= 8R.
    """
    return params.M < params.threshold() and params.A1() <= 8.0 * params.R


def _envelope_side(phi, d, alpha, R, sign):
    lo, hi = phi.support()
    if sign > 0:
        u_max = hi - d
    else:
        u_max = d - lo
    if not u_max > R:
        return 0.0
    us = np.geomspace(R, u_max, ENVELOPE_SAMPLES)
    g = np.abs(phi.value(d + sign * us)) * us**alpha
    i = int(np.argmax(g))
    best = float(g[i])
    if best == 0.0:
        return 0.0
    a = us[max(i - 1, 0)]
    b = us[min(i + 1, len(us) - 1)]
    res = minimize_scalar(lambda u: -abs(phi.value(d + sign * u)) * u**alpha,
                          bounds=(a, b), method='bounded', options={'xatol': 1e-10 * b})
    return max(best, -float(res.fun))


def envelope_M(phi, d, alpha, R, side=SIDE_BOTH):
    """
    Smallest envelope constant M with |phi(x)| |x - d|^alpha < M
    for |x - d| > R (x - d > R for the right side).

    Raises:
        NoFiniteEnvelope for a nonzero constant phi.
    """
    if not alpha > 5 or not R > 0:
        raise SeriesParamsError('need alpha > 5 and R > 0')
    if phi.kind == CONSTANT:
        if phi.param != 0.0:
            raise NoFiniteEnvelope('constant phi = %r does not decay' % phi.param)
        return 0.0
    sup = _envelope_side(phi, d, alpha, R, 1)
    if side == SIDE_BOTH:
        sup = max(sup, _envelope_side(phi, d, alpha, R, -1))
    elif side != SIDE_RIGHT:
        raise SeriesParamsError('unknown envelope side: ' + str(side))
    if not math.isfinite(sup):
        raise NoFiniteEnvelope('envelope diverges at d = %r' % d)
    return sup * (1.0 + ENVELOPE_MARGIN)


def envelope_curve(phi, d_values, alpha, R, side=SIDE_BOTH):
    """
    M(d) sampled at the given d values.
    """
    return np.array([envelope_M(phi, d, alpha, R, side) for d in d_values])


def convergence_region(phi, d_values, R_values, alpha, K=0.0, side=SIDE_BOTH):
    """
    Certificate on a (d, R) grid.

    Returns:
        Boolean array, rows follow d_values and columns R_values.
    """
    region = np.zeros((len(d_values), len(R_values)), dtype=bool)
    for i, d in enumerate(d_values):
        for j, R in enumerate(R_values):
            try:
                M = envelope_M(phi, d, alpha, R, side)
            except NoFiniteEnvelope:
                continue
            region[i, j] = certify_convergence(SeriesParams(d, K, alpha, R, M))
    return region


class SeriesExpansion(object):
    """
    Numerically realized series expansion.

    The coefficients are stored as the integrals I_k, J_k at log-spaced
    nodes in u = x - d and as splines of u^(k+2) f_k against log u,
    evaluation at a point integrates the partial panel exactly.
    """

    __slots__ = ('phi', 'params', 'A', 'certified', 'nodes', 'log_nodes',
                 'I', 'J', 'q_splines', 'q_end', 'phi_hi')

    def __init__(self, phi, params, nodes=GRID_NODES):
        self.phi = phi
        self.params = params
        self.certified = certify_convergence(params)
        self.A = bound_sequence(params.A1(), params.order + 1)
        u_end = max(GRID_END, 100.0 * params.R)
        self.nodes = np.geomspace(GRID_START * params.R, u_end, nodes)
        self.log_nodes = np.log(self.nodes)
        self.phi_hi = phi.support()[1]
        self.I = []
        self.J = []
        self.q_splines = []
        self.q_end = []
        if phi.kind == CONSTANT and phi.param != 0.0:
            raise DivergentCoefficient('constant phi = %r gives divergent integrals'
                                       % phi.param)
        for k in range(1, params.order + 1):
            self._build(k)

    def _q(self, m, u):
        """
        u^(m+2) f_m(u) for m >= 1, constant beyond the last node.
        """
        u = np.asarray(u, dtype=float)
        res = self.q_splines[m - 1](np.log(np.minimum(u, self.nodes[-1])))
        return np.where(u > self.nodes[-1], self.q_end[m - 1], res)

    def _h(self, k, s):
        s = np.asarray(s, dtype=float)
        if k == 1:
            return self.phi.value(self.params.d + s) / s**3
        S = np.zeros_like(s)
        for m in range(1, k):
            S = S + self._q(m, s) * self._q(k - m, s)
        # f_m f_{k-m} = q_m q_{k-m} / s^(k+4)
        return -S / s**(k + 7)

    def _panels(self, k, a, b, nodes, weights):
        half = 0.5 * (b - a)
        s = 0.5 * (a + b)[:, None] + half[:, None] * nodes[None, :]
        h = self._h(k, s.ravel()).reshape(s.shape)
        I = half * np.dot(h, weights)
        J = half * np.dot(h * s**7, weights)
        return I, J

    def _tail(self, k, u):
        """
        (I, J) over [u, inf) beyond the last node.
        """
        if k == 1:
            return self._phi_tail(u)
        Q = 0.0
        for m in range(1, k):
            Q += self.q_end[m - 1] * self.q_end[k - m - 1]
        return (-Q * u**(-(k + 6)) / (k + 6), -Q * u**(1 - k) / (k - 1))

    def _phi_tail(self, u):
        upper = self.phi_hi - self.params.d
        if not upper > u:
            return (0.0, 0.0)
        d = self.params.d
        I = _adaptive(lambda s: self.phi.value(d + s) / s**3, u, upper, 1)
        J = _adaptive(lambda s: self.phi.value(d + s) * s**4, u, upper, 1)
        return (I, J)

    def _build(self, k):
        a, b = self.nodes[:-1], self.nodes[1:]
        I16, J16 = self._panels(k, a, b, GL_NODES, GL_WEIGHTS)
        I8, J8 = self._panels(k, a, b, GL8_NODES, GL8_WEIGHTS)
        if not (np.all(np.isfinite(I16)) and np.all(np.isfinite(J16))):
            raise DivergentCoefficient('non-finite quadrature for f_%d' % k)
        # panels where the two rules disagree are redone adaptively
        loose = (np.abs(I16 - I8) > QUADRATURE_ATOL + QUADRATURE_RTOL * np.abs(I16)) \
          | (np.abs(J16 - J8) > QUADRATURE_ATOL + QUADRATURE_RTOL * np.abs(J16))
        for i in np.nonzero(loose)[0]:
            h = lambda s: float(self._h(k, s))
            I16[i] = _adaptive(h, a[i], b[i], k)
            J16[i] = _adaptive(lambda s: h(s) * s**7, a[i], b[i], k)
        if np.any(loose):
            Logger('series').debug('f_%d: %d adaptive panels' % (k, np.count_nonzero(loose)))
        I_tail, J_tail = self._tail(k, self.nodes[-1])
        I = np.append(np.cumsum(I16[::-1])[::-1], 0.0) + I_tail
        J = np.append(np.cumsum(J16[::-1])[::-1], 0.0) + J_tail
        u = self.nodes
        v = -(J - u**7 * I) / 7.0
        if k == 1:
            v = v + self.params.K
        # q_k = u^(k+2) f_k = u^(k-1) v_k
        q = u**(k - 1) * v
        if not np.all(np.isfinite(q)):
            raise DivergentCoefficient('non-finite values of f_%d' % k)
        self.I.append(I)
        self.J.append(J)
        self.q_splines.append(CubicSpline(self.log_nodes, q))
        self.q_end.append(float(q[-1]))

    def _integrals(self, k, u):
        """
        (I_k(u), J_k(u)) at a single point u > R.
        """
        nodes = self.nodes
        if u >= nodes[-1]:
            return self._tail(k, u)
        j = int(np.searchsorted(nodes, u, side='right'))
        b = nodes[j]
        I, J = self._panels(k, np.array([u]), np.array([b]), GL_NODES, GL_WEIGHTS)
        return (self.I[k - 1][j] + float(I[0]), self.J[k - 1][j] + float(J[0]))

    def coefficients(self, x):
        """
        Values and derivatives of f_0..f_order at x.

        Returns:
            Tuple of arrays (f_k(x), f_k'(x)).
        """
        u = self._check(x)
        order = self.params.order
        f = np.zeros(order + 1)
        fp = np.zeros(order + 1)
        f[0] = 6.0 / u**2
        fp[0] = -12.0 / u**3
        for k in range(1, order + 1):
            I, J = self._integrals(k, u)
            v = -(J - u**7 * I) / 7.0
            if k == 1:
                v += self.params.K
            f[k] = v / u**3
            fp[k] = -3.0 * v / u**4 + u**3 * I
        return f, fp

    def _check(self, x):
        u = float(x) - self.params.d
        if not u > self.params.R:
            raise OutsideValidity('x - d = %r is not beyond R = %r'
                                  % (u, self.params.R))
        return u

    def trunc_err(self, x):
        """
        Bound on the neglected terms k > order at x.
        """
        u = self._check(x)
        if not self.certified:
            return math.inf
        n = self.params.order
        ratio = self.params.R / u
        return self.A[n] / u**(n + 3) / (1.0 - ratio)

    def sample_table(self):
        """
        Rows (x, f_0, ..., f_order) at the grid nodes.
        """
        u = self.nodes
        rows = [self.params.d + u, 6.0 / u**2]
        for k in range(1, self.params.order + 1):
            rows.append(self._q(k, u) / u**(k + 2))
        return np.column_stack(rows)

    def serialize(self):
        return {"params": self.params, "phi": self.phi, "A": self.A[:self.params.order],
                "certified": self.certified, "table": self.sample_table()}


def build_expansion(phi, params, nodes=GRID_NODES):
    """
    Build the series expansion of the given parameters.

    Raises:
        DivergentCoefficient if a quadrature fails.
    """
    return SeriesExpansion(phi, params, nodes)


def eval_series(exp, x):
    """
    Partial sums of f and f' through the truncation order and the
    truncation error bound.

    Raises:
        OutsideValidity if x - d <= R.
    """
    f, fp = exp.coefficients(x)
    return (float(np.sum(f)), float(np.sum(fp)), exp.trunc_err(x))


def asymptotic_bc(exp, x0):
    """
    Boundary data (f, f', x0) from a certified expansion.
    """
    if not exp.certified:
        raise UncertifiedSeries('series with %r is not certified' % exp.params)
    f, fp, _ = eval_series(exp, x0)
    return PhasePoint(f, fp, x0)


def series_residual(exp, x):
    """
    f'' - f^2 + phi for the truncated series at x.

    The corrections F = f_1 + ... + f_n are differentiated numerically:
    F'' is the central difference of the realized F', extrapolated
    over two steps. With f_0'' = f_0^2 the residual is
    F'' - 12 F/u^2 - F^2 + phi.
    """
    u = exp._check(x)
    phi_x = float(exp.phi.value(float(x)))
    if exp.params.order == 0:
        return phi_x
    step = min(RESIDUAL_STEP * u, 0.25 * (u - exp.params.R))

    def corrections(at):
        f, fp = exp.coefficients(at)
        return (float(np.sum(f[1:])), float(np.sum(fp[1:])))

    def second(h):
        return (corrections(x + h)[1] - corrections(x - h)[1]) / (2.0 * h)

    F = corrections(x)[0]
    Fpp = (4.0 * second(0.5 * step) - second(step)) / 3.0
    return Fpp - 12.0 * F / u**2 - F * F + phi_x


def other_family_point(phi, x0):
    """
    (f, f') at x0 of the decaying family f ~ -int_x^inf int_t^inf phi.
    """
    hi = phi.support()[1]
    if phi.kind == CONSTANT and phi.param != 0.0:
        raise NoFiniteEnvelope('constant phi has no decaying family')
    if not hi > x0:
        return (0.0, 0.0)
    f, _ = quad(lambda s: (s - x0) * phi.value(s), x0, hi, epsabs=QUADRATURE_ATOL,
               epsrel=QUADRATURE_RTOL, limit=200)
    fp, _ = quad(lambda s: phi.value(s), x0, hi, epsabs=QUADRATURE_ATOL,
                 epsrel=QUADRATURE_RTOL, limit=200)
    return (-f, fp)


class SeriesBuilder(object):
    """
    Builds certified expansions for a forcing function, choosing R
    by growing it until the certificate holds.
    """

    __slots__ = ('phi', 'alpha', 'order', 'growth', 'max_steps', 'logger')

    def __init__(self, phi, alpha=DEFAULT_ALPHA, order=DEFAULT_ORDER,
                 growth=1.3, max_steps=60):
        self.phi = phi
        self.alpha = alpha
        self.order = order
        self.growth = growth
        self.max_steps = max_steps
        self.logger = Logger('series')

    def certified_params(self, d, R_start, K=0.0):
        """
        Smallest R of the ladder R_start*growth^n giving a certificate.

        Returns:
            SeriesParams, or None if no step certifies.
        """
        R = R_start
        for _ in range(self.max_steps):
            M = envelope_M(self.phi, d, self.alpha, R, SIDE_RIGHT)
            params = SeriesParams(d, K, self.alpha, R, M, self.order)
            if certify_convergence(params):
                return params
            R *= self.growth
        self.logger.debug('no certified series for d = %r' % d)
        return None

    def build(self, d, R_start, K=0.0):
        params = self.certified_params(d, R_start, K)
        if params is None:
            raise UncertifiedSeries('no certified series for d = %r' % d)
        return build_expansion(self.phi, params)
