#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
    integrate.py
    ~~~~~~~~~~~~

    adaptive Dormand-Prince integration of f'' = f^2 - phi(x) in
    both directions with blow-up detection and dense output

    :copyright: (c) 2026 by the globsol authors
    :license: GPL-2, see LICENSE for more details.
"""

import math

import numpy as np
from scipy.integrate import OdeSolution, RK45
from scipy.optimize import brentq

from .exceptions import IntegratorError
from .problem import PhasePoint

REACHED_TARGET = 'ReachedTarget'
BLOW_UP = 'BlowUp'
TOLERANCE_FAILURE = 'ToleranceFailure'

OUTCOMES = [REACHED_TARGET, BLOW_UP, TOLERANCE_FAILURE]

PLANE_F = 'f'
PLANE_FP = 'fp'

#subsamples per step when looking for crossings
CROSSING_SUBSAMPLES = 8


class IntegratorOptions(object):
    """
    Integrator settings.
    """

    __slots__ = ('rtol', 'atol', 'f_blow', 'floor_factor', 'max_step')

    def __init__(self, rtol=1e-9, atol=1e-12, f_blow=1e6, floor_factor=1e-13,
                 max_step=np.inf):
        """
        Args:
            rtol: Relative tolerance.
            atol: Absolute tolerance.
            f_blow: Threshold on |f| and |f'| declaring blow-up.
            floor_factor: Smallest step as a fraction of the span.
            max_step: Largest step.
        """
        for name, value in [('rtol', rtol), ('atol', atol), ('f_blow', f_blow),
                            ('floor_factor', floor_factor), ('max_step', max_step)]:
            if not value > 0:
                raise IntegratorError('%s must be positive, got %r' % (name, value))
        self.rtol = float(rtol)
        self.atol = float(atol)
        self.f_blow = float(f_blow)
        self.floor_factor = float(floor_factor)
        self.max_step = float(max_step)

    def tightened(self, factor):
        """
        Options with both tolerances divided by factor.
        """
        return IntegratorOptions(self.rtol / factor, self.atol / factor, self.f_blow,
                                 self.floor_factor, self.max_step)

    def serialize(self):
        return {"rtol": self.rtol, "atol": self.atol, "f_blow": self.f_blow,
                "floor_factor": self.floor_factor}

    @classmethod
    def deserialize(cls, value):
        return cls(value["rtol"], value["atol"], value["f_blow"], value["floor_factor"])


class Trajectory(object):
    """
    Result of an integration: knots of the adaptive steps, outcome
    and dense output.
    """

    __slots__ = ('xs', 'fs', 'fps', 'outcome', 'x_blow', 'dense')

    def __init__(self, xs, fs, fps, outcome, x_blow=None, dense=None):
        if not outcome in OUTCOMES:
            raise IntegratorError('unknown outcome: ' + str(outcome))
        self.xs = np.asarray(xs, dtype=float)
        self.fs = np.asarray(fs, dtype=float)
        self.fps = np.asarray(fps, dtype=float)
        self.outcome = outcome
        self.x_blow = x_blow
        self.dense = dense

    def __call__(self, x):
        """
        Dense output (f, f') at x within the integrated span.
        """
        if self.dense is None:
            if len(self.xs) == 1 and np.all(np.asarray(x) == self.xs[0]):
                return np.array([self.fs[0], self.fps[0]])
            raise IntegratorError('trajectory has no dense output')
        return self.dense(x)

    def __len__(self):
        return len(self.xs)

    @property
    def start(self):
        return PhasePoint(self.fs[0], self.fps[0], self.xs[0])

    @property
    def end(self):
        return PhasePoint(self.fs[-1], self.fps[-1], self.xs[-1])

    @property
    def samples(self):
        return self.points()

    def points(self):
        return [PhasePoint(f, fp, x) for x, f, fp in zip(self.xs, self.fs, self.fps)]

    def reached(self):
        return self.outcome == REACHED_TARGET

    def blew_up(self):
        return self.outcome == BLOW_UP

    def span(self):
        return (min(self.xs[0], self.xs[-1]), max(self.xs[0], self.xs[-1]))

    def rows(self):
        return np.column_stack((self.xs, self.fs, self.fps))

    def serialize(self):
        return {"outcome": self.outcome, "x_blow": self.x_blow,
                "x": self.xs, "f": self.fs, "fp": self.fps}

    @classmethod
    def deserialize(cls, value):
        return cls(value["x"], value["f"], value["fp"], value["outcome"],
                   value["x_blow"])


def _blow_up_estimate(x, f, fp, direction):
    """
    Position of the asymptote from f ~ 6/(x_blow - x)^2.
    """
    candidates = []
    if f != 0:
        candidates.append(math.sqrt(6.0 / abs(f)))
    if fp != 0:
        candidates.append((12.0 / abs(fp))**(1.0 / 3.0))
    if not candidates:
        return x
    return x + direction * min(candidates)


def integrate_to(start, x_target, phi, opts=None):
    """
    Integrate from start to x_target in either direction.

    Args:
        start: Initial PhasePoint.
        x_target: Final x.
        phi: PhiModel.
        opts: IntegratorOptions.

    Returns:
        Trajectory, the outcome tells whether x_target was reached.
    """
    if opts is None:
        opts = IntegratorOptions()
    if x_target == start.x:
        return Trajectory([start.x], [start.f], [start.fp], REACHED_TARGET)

    value = phi.value

    def rhs(x, y):
        return np.array([y[1], y[0] * y[0] - value(x)])

    solver = RK45(rhs, start.x, np.array([start.f, start.fp]), x_target,
                  rtol=opts.rtol, atol=opts.atol, max_step=opts.max_step)
    direction = 1.0 if x_target > start.x else -1.0
    floor = opts.floor_factor * abs(x_target - start.x)
    xs = [start.x]
    fs = [start.f]
    fps = [start.fp]
    interpolants = []
    outcome = REACHED_TARGET
    x_blow = None
    while solver.status == 'running':
        solver.step()
        if solver.status == 'failed':
            outcome = TOLERANCE_FAILURE
            break
        f, fp = solver.y
        if not (math.isfinite(f) and math.isfinite(fp)):
            outcome = BLOW_UP
            x_blow = xs[-1]
            break
        interpolants.append(solver.dense_output())
        xs.append(solver.t)
        fs.append(f)
        fps.append(fp)
        if abs(f) > opts.f_blow or abs(fp) > opts.f_blow:
            outcome = BLOW_UP
            x_blow = _blow_up_estimate(solver.t, f, fp, direction)
            break
        if solver.status == 'running' and solver.step_size < floor:
            outcome = TOLERANCE_FAILURE
            break
    dense = None
    if interpolants:
        dense = OdeSolution(xs, interpolants)
    return Trajectory(xs, fs, fps, outcome, x_blow, dense)


def integrate_backward(start, x_target, phi, opts=None):
    """
    Integrate towards smaller x.
    """
    if not x_target < start.x:
        raise IntegratorError('backward target %r is not below %r' % (x_target, start.x))
    return integrate_to(start, x_target, phi, opts)


def crossing_events(traj, plane, level=0.0):
    """
    Points where the trajectory crosses f = level or f' = level.

    Args:
        traj: Trajectory with dense output.
        plane: 'f' or 'fp'.
        level: Plane position.

    Returns:
        List of PhasePoint in the direction of integration.
    """
    if plane == PLANE_F:
        index = 0
    elif plane == PLANE_FP:
        index = 1
    else:
        raise IntegratorError('unknown plane: ' + str(plane))
    if traj.dense is None:
        return []

    def g(x):
        return float(traj(x)[index]) - level

    res = []
    for a, b in zip(traj.xs[:-1], traj.xs[1:]):
        sub = np.linspace(a, b, CROSSING_SUBSAMPLES + 1)
        vals = traj(sub)[index] - level
        for i in range(CROSSING_SUBSAMPLES):
            x0, x1 = sub[i], sub[i + 1]
            v0, v1 = vals[i], vals[i + 1]
            if v0 == 0.0:
                root = x0
            elif v0 * v1 < 0:
                lo, hi = min(x0, x1), max(x0, x1)
                root = brentq(g, lo, hi, xtol=1e-14, rtol=1e-15)
            else:
                continue
            if res and abs(res[-1] - root) < 1e-12:
                continue
            res.append(root)
    last = traj.xs[-1]
    if float(traj(last)[index]) - level == 0.0 and (not res or res[-1] != last):
        res.append(last)
    points = []
    for x in res:
        f, fp = traj(x)
        points.append(PhasePoint(f, fp, x))
    return points
