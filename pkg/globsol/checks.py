#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
    checks.py
    ~~~~~~~~~

    closed form criteria on the forcing function: M-shape, necessary
    conditions for existence, decay conditions for uniqueness and
    the composite verdict

    :copyright: (c) 2026 by the globsol authors
    :license: GPL-2, see LICENSE for more details.
"""

import math

import numpy as np
from scipy.integrate import cumulative_trapezoid
from scipy.optimize import brentq, minimize_scalar

from .exceptions import ChecksError, DecayParamsError, GlobSolError, NotIntegrable
from .logger import Logger
from .problem import BACKWARD, CONSTANT, FORWARD, GAUSSIAN, SQRT_8_3, TAIL_GRID
from .zset import GlobalSolution, ZSetOptions, build_zcurve, intersect

NO_SOLUTIONS = 'NoSolutions'
EXISTS_AT_LEAST_ONE = 'ExistsAtLeastOne'
UNIQUE_POSITIVE = 'UniquePositive'
INCONCLUSIVE = 'Inconclusive'

VERDICT_KINDS = [NO_SOLUTIONS, EXISTS_AT_LEAST_ONE, UNIQUE_POSITIVE, INCONCLUSIVE]

INTEGRAL_TOL = 1e-10

WINDOW_LIMIT = 10.0
WINDOW_GRID = 50
WINDOW_SAMPLES = 4001
TAIL_SUP_SAMPLES = 4097
TAIL_REACH = 60.0

DECAY_SPAN = 50.0
DECAY_SAMPLES = 10000
CONSTRAINT_SAMPLES = 2001
DEFAULT_D = 1.01
DEFAULT_K = 0.5
K_GRID = np.linspace(0.05, 0.95, 19)

PROFILE_SAMPLES = 801

# 4*sqrt(2)/sqrt(3)
DECAY_CONSTANT = 4.0 * math.sqrt(2.0) / math.sqrt(3.0)


class Verdict(object):
    """
    Outcome of the criteria.

    witnesses are (criterion id, margin) pairs; a margin is positive
    when the criterion holds.
    """

    __slots__ = ('kind', 'witnesses', 'notes')

    def __init__(self, kind, witnesses=None, notes=None):
        if not kind in VERDICT_KINDS:
            raise ChecksError('unknown verdict: ' + str(kind))
        witnesses = [(str(w), float(m)) for w, m in (witnesses or [])]
        if kind != INCONCLUSIVE and not any(m > 0 for _, m in witnesses):
            raise ChecksError(kind + ' needs a witness with positive margin')
        self.kind = kind
        self.witnesses = witnesses
        self.notes = list(notes or [])

    def __repr__(self):
        return 'Verdict(%s, %r)' % (self.kind, self.witnesses)

    def witness(self, name):
        for w, m in self.witnesses:
            if w == name:
                return m
        return None

    def serialize(self):
        return {"kind": self.kind,
                "witnesses": [[w, m] for w, m in self.witnesses],
                "notes": self.notes}

    @classmethod
    def deserialize(cls, value):
        return cls(value["kind"], value["witnesses"], value.get("notes"))


class DecayCheckParams(object):
    """
    Constants D > 1, 0 < k < 1 and x0 >= 0 of the decay condition.
    """

    __slots__ = ('D', 'k', 'x0')

    def __init__(self, D, k, x0):
        D, k, x0 = float(D), float(k), float(x0)
        if not D > 1:
            raise DecayParamsError('D must exceed 1, got %r' % D)
        if not 0 < k < 1:
            raise DecayParamsError('k must lie in (0, 1), got %r' % k)
        if not x0 >= 0:
            raise DecayParamsError('x0 must be non-negative, got %r' % x0)
        self.D = D
        self.k = k
        self.x0 = x0

    def __repr__(self):
        return 'DecayCheckParams(D=%r, k=%r, x0=%r)' % (self.D, self.k, self.x0)

    def serialize(self):
        return {"D": self.D, "k": self.k, "x0": self.x0}

    @classmethod
    def deserialize(cls, value):
        return cls(value["D"], value["k"], value["x0"])


def _tail_positivity(phi, sign):
    """
    Smallest x0 >= 0 with phi(sign*x) > 0 for x > x0, None if phi is
    not positive on the far tail.
    """
    logs = phi.log_value(sign * TAIL_GRID)
    bad = np.nonzero(~np.isfinite(logs))[0]
    if bad.size == 0:
        return 0.0
    i = int(bad[-1])
    if i == len(TAIL_GRID) - 1:
        return None
    a, b = TAIL_GRID[i], TAIL_GRID[i + 1]
    try:
        return float(brentq(lambda x: phi.value(sign * x), a, b, xtol=1e-14))
    except ValueError:
        return float(b)


def is_m_shaped(phi):
    """
    Whether phi is positive and monotone on both tails beyond some x0.

    Returns:
        (bool, x0), x0 is None when phi is not M-shaped.
    """
    x0 = phi.monotone_tail_x0
    if x0 is None:
        return (False, None)
    for sign in (1.0, -1.0):
        pos = _tail_positivity(phi, sign)
        if pos is None:
            return (False, None)
        x0 = max(x0, pos)
    return (True, float(x0))


def m_shape_degenerate(phi):
    """
    Whether the tails are only non-strictly monotone.
    """
    return phi.kind == CONSTANT


def _min_on(phi, a, b):
    xs = np.linspace(a, b, CONSTRAINT_SAMPLES)
    vals = phi.value(xs)
    i = int(np.argmin(vals))
    best = float(vals[i])
    lo, hi = xs[max(i - 1, 0)], xs[min(i + 1, len(xs) - 1)]
    if hi > lo:
        res = minimize_scalar(phi.value, bounds=(lo, hi), method='bounded',
                              options={'xatol': 1e-12})
        best = min(best, float(res.fun))
    return best


def positivity_margin(phi):
    """
    min phi on the core [-x0, x0] of an M-shaped phi, positive when
    phi > 0 everywhere; None for phi which is not M-shaped.
    """
    shaped, x0 = is_m_shaped(phi)
    if not shaped:
        return None
    if x0 == 0.0:
        return float(phi.value(0.0))
    return _min_on(phi, -x0, x0)


def has_negative_part(phi):
    lo, hi = phi.support()
    lo, hi = max(lo, -TAIL_REACH), min(hi, TAIL_REACH)
    if hi <= lo:
        return False
    return _min_on(phi, lo, hi) < 0


def integral_necessary(phi):
    """
    Necessary condition: integral of phi over the real line is positive.

    Returns:
        (bool, value)

    Raises:
        NotIntegrable for a constant phi.
    """
    if phi.kind == CONSTANT:
        raise NotIntegrable('a constant phi is not integrable')
    value = phi.integral()
    return (value > INTEGRAL_TOL, value)


def _tail_sup(phi, a, b):
    """
    sup of |phi|^(3/4) on [a, b].
    """
    if phi.kind == CONSTANT:
        return abs(phi.param)**0.75
    s_lo, s_hi = phi.support()
    a, b = max(a, s_lo), min(b, s_hi)
    if b <= a:
        return 0.0
    xs = np.linspace(a, b, TAIL_SUP_SAMPLES)
    vals = np.abs(phi.value(xs))
    i = int(np.argmax(vals))
    best = float(vals[i])
    lo, hi = xs[max(i - 1, 0)], xs[min(i + 1, len(xs) - 1)]
    if hi > lo:
        res = minimize_scalar(lambda x: -abs(phi.value(x)), bounds=(lo, hi),
                              method='bounded', options={'xatol': 1e-12})
        best = max(best, -float(res.fun))
    return best**0.75


def window_necessary(phi, A, B):
    """
    No bounded solutions exist when -int_A^B phi exceeds
    sqrt(8/3)*(sup_(-inf,A] |phi|^(3/4) + sup_[B,inf) |phi|^(3/4)).

    Returns:
        (bool, lhs, rhs), bool means "no bounded solutions".
    """
    A, B = float(A), float(B)
    if not A < B:
        raise ChecksError('window needs A < B, got [%r, %r]' % (A, B))
    lhs = -phi.integral(A, B)
    rhs = SQRT_8_3 * (_tail_sup(phi, A - TAIL_REACH, A) + _tail_sup(phi, B, B + TAIL_REACH))
    return (lhs > rhs, lhs, rhs)


def scan_windows(phi, limit=WINDOW_LIMIT, n=WINDOW_GRID):
    """
    Strongest window on an n x n grid of [A, B] in [-limit, limit].

    Returns:
        (A, B, lhs - rhs) of the best window, re-evaluated exactly.
    """
    xs = np.linspace(-limit, limit, WINDOW_SAMPLES)
    vals = phi.value(xs)
    cum = cumulative_trapezoid(vals, xs, initial=0.0)
    sup34 = np.abs(vals)**0.75
    left = np.maximum.accumulate(sup34)
    left = np.maximum(left, _tail_sup(phi, -limit - TAIL_REACH, -limit))
    right = np.maximum.accumulate(sup34[::-1])[::-1]
    right = np.maximum(right, _tail_sup(phi, limit, limit + TAIL_REACH))
    grid = np.linspace(-limit, limit, n)
    idx = np.searchsorted(xs, grid).clip(0, len(xs) - 1)
    I = cum[idx]
    lhs = -(I[None, :] - I[:, None])
    rhs = SQRT_8_3 * (left[idx][:, None] + right[idx][None, :])
    margin = lhs - rhs
    margin[np.tril_indices(n)] = -np.inf
    i, j = np.unravel_index(int(np.argmax(margin)), margin.shape)
    A, B = float(grid[i]), float(grid[j])
    _, lhs_ab, rhs_ab = window_necessary(phi, A, B)
    return (A, B, lhs_ab - rhs_ab)


def _decay_rhs_coef(params):
    return params.D * DECAY_CONSTANT / params.k


def decay_margins(phi, params):
    """
    Margins of the tail inequality phi' < -D*4*sqrt(2)/(k*sqrt(3))*phi^(5/4)
    on (x0, x0 + 50] and of the constraint on [0, x0].

    The tail inequality is tested as phi'/phi < -coef*phi^(1/4), which
    stays finite where phi underflows.

    Returns:
        (tail margin, constraint margin), -inf when phi is not positive.
    """
    x0 = params.x0
    xs = np.linspace(x0, x0 + DECAY_SPAN, DECAY_SAMPLES + 1)[1:]
    logs = phi.log_value(xs)
    if not np.all(np.isfinite(logs)):
        return (-np.inf, -np.inf)
    bound = -_decay_rhs_coef(params) * np.exp(0.25 * logs)
    tail = float(np.min(bound - phi.log_derivative(xs)))
    core = np.linspace(0.0, x0, CONSTRAINT_SAMPLES)
    vals = phi.value(core)
    if not np.all(vals > 0):
        return (tail, -np.inf)
    if x0 == 0.0:
        return (tail, float(vals[0]))
    P = _max_on(phi, vals, core)
    rhs = (np.sqrt(vals) - params.k * math.sqrt(vals[-1])) / (SQRT_8_3 * P**0.75)
    lhs = x0 - core
    # the end point x = x0 holds with equality of the lhs to zero
    constraint = float(np.min((rhs - lhs)[:-1])) if len(core) > 1 else float(rhs[0])
    return (tail, constraint)


def _max_on(phi, vals, xs):
    i = int(np.argmax(vals))
    best = float(vals[i])
    lo, hi = xs[max(i - 1, 0)], xs[min(i + 1, len(xs) - 1)]
    if hi > lo:
        res = minimize_scalar(lambda x: -phi.value(x), bounds=(lo, hi),
                              method='bounded', options={'xatol': 1e-12})
        best = max(best, -float(res.fun))
    return best


def decay_sufficient(phi, params):
    """
    Decay condition of the uniqueness criterion on x >= 0; apply it to
    phi.mirrored() for x <= 0.
    """
    tail, constraint = decay_margins(phi, params)
    return tail > 0 and constraint > 0


def tail_x0(phi, D, k):
    """
    Smallest x0 beyond which the tail inequality holds on the sampled
    tail, None if it fails on the far tail.
    """
    params = DecayCheckParams(D, k, 0.0)
    coef = _decay_rhs_coef(params)
    xs = TAIL_GRID
    logs = phi.log_value(xs)
    with np.errstate(invalid='ignore'):
        ok = np.isfinite(logs) & (phi.log_derivative(xs) < -coef * np.exp(0.25 * logs))
    bad = np.nonzero(~ok)[0]
    if bad.size == 0:
        return 0.0
    i = int(bad[-1])
    if i == len(xs) - 1:
        return None
    return float(xs[i + 1])


def default_decay_params(phi):
    """
    D = 1.01; k = sqrt(6)*c^(1/4) for a Gaussian when below 1, else 0.5;
    x0 from the tail inequality.
    """
    k = DEFAULT_K
    if phi.kind == GAUSSIAN and phi.param > 0:
        k_gauss = math.sqrt(6.0) * phi.param**0.25
        if k_gauss < 1:
            k = k_gauss
    x0 = tail_x0(phi, DEFAULT_D, k)
    if x0 is None:
        return None
    return DecayCheckParams(DEFAULT_D, k, x0)


def search_decay_params(phi):
    """
    Decay parameters with the largest margin over a grid of k.

    Returns:
        (DecayCheckParams, margin) or (None, -inf).
    """
    candidates = []
    default = default_decay_params(phi)
    if default is not None:
        candidates.append(default)
    for k in K_GRID:
        x0 = tail_x0(phi, DEFAULT_D, k)
        if x0 is not None:
            candidates.append(DecayCheckParams(DEFAULT_D, k, x0))
    best, best_margin = None, -np.inf
    for params in candidates:
        margin = min(decay_margins(phi, params))
        if margin > best_margin:
            best, best_margin = params, margin
    return (best, best_margin)


def largest_passing_D(phi, params, D_max=1e6, iterations=60):
    """
    Largest D for which decay_sufficient holds with k and x0 of params.

    Returns:
        Float, D_max when it still passes, None if params fail.
    """
    if not decay_sufficient(phi, params):
        return None

    def passes(D):
        return decay_sufficient(phi, DecayCheckParams(D, params.k, params.x0))

    lo = params.D
    hi = 2.0 * lo
    while passes(hi):
        lo = hi
        if hi >= D_max:
            return float(D_max)
        hi = min(2.0 * hi, D_max)
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if passes(mid):
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-12 * hi:
            break
    return float(lo)


def fp0_bound(phi):
    """
    Bound sqrt(8/3)*|phi|_inf^(3/4) on f'(0) of global solutions.
    """
    return SQRT_8_3 * phi.sup_norm**0.75


def verdict(phi):
    """
    Analytic verdict on the global solutions of 0 = f'' - f^2 + phi.

    Returns:
        Verdict.
    """
    logger = Logger('checks')
    if phi.kind == CONSTANT:
        return Verdict(INCONCLUSIVE, notes=['constant phi: integral test inapplicable'])

    if has_negative_part(phi):
        ok, value = integral_necessary(phi)
        if not ok:
            return Verdict(NO_SOLUTIONS, [('integral_necessary', INTEGRAL_TOL - value)],
                           ['integral of phi is %.17g' % value])
        A, B, margin = scan_windows(phi)
        if margin > 0:
            return Verdict(NO_SOLUTIONS, [('window_necessary', margin)],
                           ['window [%.17g, %.17g]' % (A, B)])

    positive = positivity_margin(phi)
    if positive is None or not positive > 0:
        return Verdict(INCONCLUSIVE,
                       notes=['phi is not M-shaped with phi > 0 everywhere'])

    witnesses = [('m_shaped_positive', positive)]
    notes = []
    right, right_margin = search_decay_params(phi)
    if phi.is_even():
        left, left_margin = right, right_margin
    else:
        left, left_margin = search_decay_params(phi.mirrored())
        notes.append('x < 0 decay condition checked on the mirrored phi')
    logger.debug('decay margins %r %r' % (right_margin, left_margin))
    if right_margin > 0 and left_margin > 0:
        witnesses += [('decay_right', right_margin), ('decay_left', left_margin)]
        notes += ['right %r' % (right,), 'left %r' % (left,)]
        return Verdict(UNIQUE_POSITIVE, witnesses, notes)
    notes.append('decay condition fails, best margin %.6g'
                 % min(right_margin, left_margin))
    return Verdict(EXISTS_AT_LEAST_ONE, witnesses, notes)


def _global_solutions(phi, opts):
    zf = build_zcurve(phi, 0.0, side=FORWARD, opts=opts)
    if phi.is_even():
        zb = zf.reflected()
    else:
        zb = build_zcurve(phi, 0.0, side=BACKWARD, opts=opts)
    return [i for i in intersect(zf, zb, opts) if i.refined]


def confirmed_verdict(phi, opts=None):
    """
    verdict(phi), upgraded from ExistsAtLeastOne to UniquePositive when
    the intersection of the curves of admissible initial conditions
    holds exactly one point and its solution is positive.
    """
    result = verdict(phi)
    if result.kind != EXISTS_AT_LEAST_ONE:
        return result
    if opts is None:
        opts = ZSetOptions()
    logger = Logger('checks')
    try:
        found = _global_solutions(phi, opts)
    except GlobSolError as e:
        logger.warn('no numerical confirmation: %s' % e)
        return Verdict(result.kind, result.witnesses,
                       result.notes + ['numerical confirmation failed: %s' % e])
    if len(found) != 1:
        return Verdict(result.kind, result.witnesses,
                       result.notes + ['%d global solutions found' % len(found)])
    try:
        solution = GlobalSolution.from_intersection(phi, found[0], 0.0, opts)
        xs = np.linspace(-opts.x_verify, opts.x_verify, PROFILE_SAMPLES)
        low = float(np.min(solution(xs)))
    except GlobSolError as e:
        return Verdict(result.kind, result.witnesses,
                       result.notes + ['no profile of the solution: %s' % e])
    if not low > 0:
        return Verdict(result.kind, result.witnesses,
                       result.notes + ['the solution found is not positive'])
    return Verdict(UNIQUE_POSITIVE,
                   result.witnesses + [('zset_unique_positive', low)],
                   result.notes + ['f(0) = %.17g, f\'(0) = %.17g'
                                   % (found[0].f, found[0].fp)])
