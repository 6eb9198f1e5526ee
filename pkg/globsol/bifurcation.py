#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
    bifurcation.py
    ~~~~~~~~~~~~~~

    continuation of global solutions across a one parameter family
    of forcing functions, fold and pitchfork detection, existence
    interval estimates

    The unknowns are y = (d, d', c): the seeds of the forward and the
    backward side shots and the family parameter. The constraint is
    the shooting mismatch at x = 0.

    :copyright: (c) 2026 by the globsol authors
    :license: GPL-2, see LICENSE for more details.
"""

from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .exceptions import BifurcationError, GlobSolError, SymmetryUnavailable
from .integrate import IntegratorOptions, PLANE_F, crossing_events, integrate_to
from .logger import Logger, ProgressBar
from .problem import BACKWARD, FORWARD, PhasePoint
from .spectrum import DEFAULT_L_HALF, solution_profile_spectrum
from .zset import (BLOW_UP, D_MIN, GLOBAL, STATION_GAP, GlobalSolution, ZSetOptions,
                   build_zcurve, intersect, shoot, verify_global)

FOLD = 'Fold'
PITCHFORK_JUNCTION = 'PitchforkJunction'
END_ZERO_EIG = 'EndZeroEig'
DOMAIN_EDGE = 'DomainEdge'
LOST = 'Lost'
SEED = 'Seed'
VERIFY_FAILED = 'VerifyFailed'

FOLD_POINT = 'fold'
PITCHFORK_POINT = 'pitchfork'

DEFAULT_F_ESC = 1e3


class ContinuationOptions(object):
    """
    Settings of the branch continuation and the sweep.
    """

    __slots__ = ('ds', 'ds_min', 'ds_max', 'newton_tol', 'newton_max', 'fd_eps',
                 'max_steps', 'max_failures', 'zero_eig', 'seeds', 'seed_samples',
                 'sym_tol', 'spectrum_N', 'L_half', 'F_esc', 'zset')

    def __init__(self, ds=0.01, ds_min=1e-5, ds_max=0.05, newton_tol=1e-9,
                 newton_max=8, fd_eps=1e-7, max_steps=400, max_failures=5,
                 zero_eig=1e-2, seeds=60, seed_samples=120, sym_tol=1e-4,
                 spectrum_N=1000, L_half=DEFAULT_L_HALF, F_esc=DEFAULT_F_ESC, zset=None):
        """
        Args:
            ds: Initial pseudo-arclength step.
            ds_min: Smallest step.
            ds_max: Largest step.
            newton_tol: Tolerance on the mismatch of the corrector.
            newton_max: Iterations of the corrector.
            fd_eps: Relative finite difference step of the Jacobian.
            max_steps: Steps per direction.
            max_failures: Successive step reductions before giving up.
            zero_eig: Threshold of smallest |eigenvalue| at branch ends.
            seeds: Number of c values with seed solves.
            seed_samples: Seeds per curve of a seed solve.
            sym_tol: |f'(0)| below which a solution is symmetric.
            spectrum_N: Grid points of the branch point spectra.
            L_half: Half length of the spectral domain.
            F_esc: Escape threshold of the existence interval.
            zset: ZSetOptions of the shots.
        """
        if not (0 < ds_min <= ds <= ds_max):
            raise BifurcationError('need 0 < ds_min <= ds <= ds_max')
        if seeds < 1 or newton_max < 1 or max_steps < 1:
            raise BifurcationError('seeds, newton_max and max_steps must be positive')
        self.ds = float(ds)
        self.ds_min = float(ds_min)
        self.ds_max = float(ds_max)
        self.newton_tol = float(newton_tol)
        self.newton_max = int(newton_max)
        self.fd_eps = float(fd_eps)
        self.max_steps = int(max_steps)
        self.max_failures = int(max_failures)
        self.zero_eig = float(zero_eig)
        self.seeds = int(seeds)
        self.seed_samples = int(seed_samples)
        self.sym_tol = float(sym_tol)
        self.spectrum_N = int(spectrum_N)
        self.L_half = float(L_half)
        self.F_esc = float(F_esc)
        self.zset = zset or ZSetOptions()


class BranchPoint(object):
    """
    One global solution of a branch.
    """

    __slots__ = ('c', 'f0', 'fp0', 'd', 'd_back', 'spectral', 'exist_len',
                 'status', 'flagged')

    def __init__(self, c, f0, fp0, d, d_back, spectral=None, exist_len=None,
                 status=GLOBAL):
        self.c = float(c)
        self.f0 = float(f0)
        self.fp0 = float(fp0)
        self.d = float(d)
        self.d_back = float(d_back)
        self.spectral = spectral
        self.exist_len = exist_len
        self.status = status
        self.flagged = status != GLOBAL

    def __repr__(self):
        return 'BranchPoint(c=%r, f0=%r, fp0=%r)' % (self.c, self.f0, self.fp0)

    def row(self):
        """
        (c, f0, fp0, n_positive, smallest_abs, exist_len)
        """
        n_positive, smallest = np.nan, np.nan
        if self.spectral is not None:
            n_positive = self.spectral.n_positive
            smallest = self.spectral.smallest_abs
        exist_len = np.nan if self.exist_len is None else self.exist_len
        return [self.c, self.f0, self.fp0, n_positive, smallest, exist_len]

    def serialize(self):
        return {"c": self.c, "f0": self.f0, "fp0": self.fp0, "d": self.d,
                "d_back": self.d_back, "spectral": self.spectral,
                "exist_len": self.exist_len, "status": self.status,
                "flagged": self.flagged}

    @classmethod
    def deserialize(cls, value):
        return cls(value["c"], value["f0"], value["fp0"], value["d"],
                   value["d_back"], value["spectral"], value["exist_len"],
                   value["status"])


class Branch(object):
    """
    Chain of branch points with the termination causes at both ends.
    """

    __slots__ = ('points', 'termination', 'termination_c', 'origin_termination',
                 'origin_c')

    def __init__(self, points, termination=LOST, termination_c=None,
                 origin_termination=SEED, origin_c=None):
        self.points = list(points)
        self.termination = termination
        self.termination_c = termination_c
        self.origin_termination = origin_termination
        self.origin_c = origin_c

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return 'Branch(%d points, %s .. %s)' % (len(self.points),
                                                self.origin_termination,
                                                self.termination)

    def cs(self):
        return np.array([p.c for p in self.points])

    def f0s(self):
        return np.array([p.f0 for p in self.points])

    def fp0s(self):
        return np.array([p.fp0 for p in self.points])

    def rows(self):
        return [p.row() for p in self.points]

    def is_symmetric(self, tol):
        return bool(np.all(np.abs(self.fp0s()) < tol))

    def serialize(self):
        return {"points": self.points, "termination": self.termination,
                "termination_c": self.termination_c,
                "origin_termination": self.origin_termination,
                "origin_c": self.origin_c}

    @classmethod
    def deserialize(cls, value):
        return cls(value["points"], value["termination"], value["termination_c"],
                   value["origin_termination"], value["origin_c"])


class CriticalPoint(object):
    """
    Detected fold or pitchfork.
    """

    __slots__ = ('kind', 'c', 'f0', 'fp0', 'tol')

    def __init__(self, kind, c, f0, fp0, tol):
        self.kind = kind
        self.c = float(c)
        self.f0 = float(f0)
        self.fp0 = float(fp0)
        self.tol = float(tol)

    def __repr__(self):
        return '%s(c=%.6g +- %.2g)' % (self.kind, self.c, self.tol)

    def serialize(self):
        return {"kind": self.kind, "c": self.c, "f0": self.f0, "fp0": self.fp0,
                "tol": self.tol}

    @classmethod
    def deserialize(cls, value):
        return cls(value["kind"], value["c"], value["f0"], value["fp0"], value["tol"])


class ShootingSystem(object):
    """
    Mismatch map G(d, d', c) = F_c(d) - B_c(d') with cached shots.

    For an even family the backward side shot is the reflection of
    the forward one and shares its cache entries.
    """

    __slots__ = ('family', 'station', 'opts', 'even', 'phis', 'cache', 'c_bounds',
                 'logger')

    def __init__(self, family, c_bounds, opts, station=0.0):
        self.family = family
        self.station = station
        self.opts = opts
        self.even = family.is_even()
        self.phis = {}
        self.cache = {}
        self.c_bounds = c_bounds
        self.logger = Logger('bifurcation')

    def phi(self, c):
        phi = self.phis.get(c)
        if phi is None:
            if len(self.phis) > 256:
                self.phis.clear()
            phi = self.family.with_param(c)
            self.phis[c] = phi
        return phi

    def endpoint(self, c, d, side):
        if self.even and side == BACKWARD:
            res = self.endpoint(c, d, FORWARD)
            if res is None:
                return None
            return np.array([res[0], -res[1]])
        key = (c, d, side)
        if key not in self.cache:
            if len(self.cache) > 4096:
                self.cache.clear()
            shot = shoot(self.phi(c), d, self.station, side, self.opts.zset)
            self.cache[key] = shot.endpoint() if shot.ok else None
        return self.cache[key]

    def in_domain(self, y):
        d, d_back, c = y
        d_max = -abs(self.station) - STATION_GAP
        c_lo, c_hi = self.c_bounds
        return D_MIN <= d <= d_max and D_MIN <= d_back <= d_max and c_lo <= c <= c_hi

    def G(self, y):
        d, d_back, c = [float(v) for v in y]
        fwd = self.endpoint(c, d, FORWARD)
        bwd = self.endpoint(c, d_back, BACKWARD)
        if fwd is None or bwd is None:
            return None
        return fwd - bwd

    def jacobian(self, y, g0=None):
        """
        Forward difference Jacobian, 2x3.
        """
        if g0 is None:
            g0 = self.G(y)
            if g0 is None:
                return None
        J = np.zeros((2, 3))
        for i in range(3):
            h = self.opts.fd_eps * max(1.0, abs(y[i]))
            yh = np.array(y, dtype=float)
            yh[i] += h
            gh = self.G(yh)
            if gh is None:
                yh[i] -= 2 * h
                gh = self.G(yh)
                if gh is None:
                    return None
                h = -h
            J[:, i] = (gh - g0) / h
        return J

    def tangent(self, J, previous=None):
        t = np.cross(J[0], J[1])
        norm = np.linalg.norm(t)
        if norm == 0 or not np.isfinite(norm):
            return None
        t = t / norm
        if previous is not None and np.dot(t, previous) < 0:
            t = -t
        return t

    def correct(self, y_pred, t, J):
        """
        Chord Newton iteration on G = 0 and t.(y - y_pred) = 0.

        Returns:
            (y, iterations) or (None, iterations).
        """
        A = np.vstack((J, t))
        try:
            lu = np.linalg.inv(A)
        except np.linalg.LinAlgError:
            return (None, 0)
        y = np.array(y_pred, dtype=float)
        for it in range(1, self.opts.newton_max + 1):
            g = self.G(y)
            if g is None:
                return (None, it)
            if np.linalg.norm(g) < self.opts.newton_tol:
                return (y, it)
            rhs = np.append(g, np.dot(t, y - y_pred))
            step = np.dot(lu, rhs)
            y = y - step
            if np.linalg.norm(step) < 1e-13 * max(1.0, np.linalg.norm(y)):
                g = self.G(y)
                if g is not None and np.linalg.norm(g) < 10 * self.opts.newton_tol:
                    return (y, it)
                return (None, it)
        g = self.G(y)
        if g is not None and np.linalg.norm(g) < self.opts.newton_tol:
            return (y, self.opts.newton_max)
        return (None, self.opts.newton_max)

    def point(self, y, spectra=True):
        """
        BranchPoint of a converged y with spectrum, existence interval
        and verification.
        """
        d, d_back, c = [float(v) for v in y]
        phi = self.phi(c)
        fwd = self.endpoint(c, d, FORWARD)
        bwd = self.endpoint(c, d_back, BACKWARD)
        f0, fp0 = 0.5 * (fwd + bwd)
        spectral = None
        if spectra:
            try:
                solution = GlobalSolution.from_seeds(phi, d, d_back, self.station,
                                                     self.opts.zset)
                spectral = solution_profile_spectrum(solution, self.opts.L_half,
                                                     self.opts.spectrum_N, check=False)
            except GlobSolError as e:
                self.logger.warn('no spectrum at c = %r: %s' % (c, e))
        exist = existence_interval((f0, fp0), phi, self.opts.F_esc,
                                   self.opts.zset.x_verify, self.opts.zset.integrator)
        status = verify_global(phi, (f0, fp0), opts=self.opts.zset).status
        return BranchPoint(c, f0, fp0, d, d_back, spectral, exist, status)


def _run_direction(system, y0, J0, direction, spectra):
    """
    Continue from a converged y0 in one direction.

    Returns:
        (list of BranchPoint, termination, termination_c)
    """
    opts = system.opts
    t = system.tangent(J0)
    if t is None:
        return ([], LOST, y0[2])
    if t[2] * direction < 0 or (t[2] == 0 and direction < 0):
        t = -t
    y, J = np.array(y0, dtype=float), J0
    ds = opts.ds
    points = []
    failures = 0
    last_fp0 = None
    asymmetric = False
    for _ in range(opts.max_steps):
        y_pred = y + ds * t
        if not system.in_domain(y_pred):
            return (points, DOMAIN_EDGE, y[2])
        y_new, iterations = system.correct(y_pred, t, J)
        if y_new is None or not system.in_domain(y_new):
            if y_new is not None and not system.in_domain(y_new):
                return (points, DOMAIN_EDGE, y[2])
            failures += 1
            ds *= 0.5
            if failures >= opts.max_failures or ds < opts.ds_min:
                return (points, _failure_cause(system, points, t), y[2])
            continue
        J_new = system.jacobian(y_new)
        t_new = system.tangent(J_new, t) if J_new is not None else None
        if t_new is None:
            failures += 1
            ds *= 0.5
            if failures >= opts.max_failures or ds < opts.ds_min:
                return (points, _failure_cause(system, points, t), y[2])
            continue
        failures = 0
        point = system.point(y_new, spectra)
        if point.status == BLOW_UP:
            system.logger.info('verification fails at c = %r' % point.c)
            return (points, VERIFY_FAILED, y[2])
        if last_fp0 is not None:
            if abs(point.fp0) >= 10 * opts.sym_tol:
                asymmetric = True
            if asymmetric and (abs(point.fp0) < opts.sym_tol
                               or point.fp0 * last_fp0 < 0):
                c_star = _zero_crossing_c(points[-1] if points else None, point)
                return (points, PITCHFORK_JUNCTION, c_star)
        last_fp0 = point.fp0
        points.append(point)
        y, J, t = y_new, J_new, t_new
        if iterations <= 3:
            ds = min(ds * 1.5, opts.ds_max)
        elif iterations > 5:
            ds = max(ds * 0.7, opts.ds_min)
    return (points, LOST, y[2])


def _zero_crossing_c(a, b):
    if a is None or a.fp0 == b.fp0:
        return b.c
    w = a.fp0 / (a.fp0 - b.fp0)
    return a.c + w * (b.c - a.c)


def _failure_cause(system, points, t):
    if points:
        last = points[-1]
        if last.spectral is not None and last.spectral.smallest_abs < system.opts.zero_eig:
            return END_ZERO_EIG
    if abs(t[2]) < 1e-3:
        return FOLD
    return LOST


def _start(system, seed, spectra):
    y0 = np.array(seed, dtype=float)
    g0 = system.G(y0)
    if g0 is None:
        raise BifurcationError('seed %r does not shoot' % (tuple(y0),))
    J0 = system.jacobian(y0, g0)
    if J0 is None:
        raise BifurcationError('no Jacobian at seed %r' % (tuple(y0),))
    first = system.point(y0, spectra)
    if first.status == BLOW_UP:
        raise BifurcationError('seed %r is not a global solution' % (tuple(y0),))
    return (y0, J0, first)


def continue_branch(family, seed, opts=None, direction=1, c_bounds=None,
                    spectra=True, system=None):
    """
    Continue a branch from a seed (d, d', c) in one direction of c.

    Args:
        family: PhiModel, its parameter is replaced by c.
        seed: Converged (d, d', c).
        opts: ContinuationOptions.
        direction: +1 to increase c first, -1 to decrease it.
        c_bounds: Allowed c interval, unbounded by default.
        spectra: Compute spectra of the branch points.
        system: ShootingSystem to reuse with its cache.

    Returns:
        Branch starting at the seed.
    """
    if system is None:
        if opts is None:
            opts = ContinuationOptions()
        if c_bounds is None:
            c_bounds = (-np.inf, np.inf)
        system = ShootingSystem(family, c_bounds, opts)
    y0, J0, first = _start(system, seed, spectra)
    points, cause, c_end = _run_direction(system, y0, J0, direction, spectra)
    return Branch([first] + points, cause, c_end, SEED, y0[2])


def trace_branch(system, seed, spectra=True):
    """
    Continue a seed in both directions and join the halves.
    """
    y0, J0, first = _start(system, seed, spectra)
    back, back_cause, back_c = _run_direction(system, y0, J0, -1, spectra)
    ahead, cause, c_end = _run_direction(system, y0, J0, 1, spectra)
    points = back[::-1] + [first] + ahead
    return Branch(points, cause, c_end, back_cause, back_c)


def _seed_task(args):
    family, c, opts = args
    phi = family.with_param(c)
    zopts = opts.zset
    try:
        zf = build_zcurve(phi, 0.0, n_samples=opts.seed_samples, side=FORWARD, opts=zopts)
        if phi.is_even():
            zb = zf.reflected()
        else:
            zb = build_zcurve(phi, 0.0, n_samples=opts.seed_samples, side=BACKWARD,
                              opts=zopts)
        inters = intersect(zf, zb, zopts)
    except GlobSolError:
        return (c, [])
    return (c, [(i.d_forward, i.d_backward, i.f, i.fp) for i in inters if i.refined])


def find_seeds(family, c_values, opts, progress=False):
    """
    Refined intersections at each c.

    Returns:
        List of (c, [(d, d', f0, fp0), ...]) in the order of c_values.
    """
    seed_opts = ContinuationOptions(opts.ds, opts.ds_min, opts.ds_max, opts.newton_tol,
                                    opts.newton_max, opts.fd_eps, opts.max_steps,
                                    opts.max_failures, opts.zero_eig, opts.seeds,
                                    opts.seed_samples, opts.sym_tol, opts.spectrum_N,
                                    opts.L_half, opts.F_esc, _serial(opts.zset))
    tasks = [(family, float(c), seed_opts) for c in c_values]
    bar = None
    if progress:
        bar = ProgressBar(20, len(tasks), 'seeds')
        bar.begin()
    results = []
    if opts.zset.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=opts.zset.jobs) as executor:
            for res in executor.map(_seed_task, tasks):
                results.append(res)
                if bar:
                    bar.increment()
    else:
        for task in tasks:
            results.append(_seed_task(task))
            if bar:
                bar.increment()
    if bar:
        bar.end()
    return results


def _serial(zopts):
    """
    Copy of shot options for the workers, which must not spawn pools.
    """
    return ZSetOptions(zopts.x_bc, zopts.x_verify, zopts.n_samples, zopts.alpha,
                       zopts.order, zopts.integrator, 1, zopts.max_angle,
                       zopts.refine_passes, zopts.R_growth)


def _on_branch(branch, c, f0, fp0, dc, tol):
    cs = branch.cs()
    near = np.abs(cs - c) <= dc
    if not np.any(near):
        return False
    dist = np.hypot(branch.f0s()[near] - f0, branch.fp0s()[near] - fp0)
    return bool(np.min(dist) < tol * (1.0 + abs(f0)))


def merge_branches(branches, tol=1e-2):
    """
    Drop branches whose points all lie on a longer branch.
    """
    ordered = sorted(branches, key=len, reverse=True)
    kept = []
    for branch in ordered:
        duplicate = False
        for other in kept:
            if all(_on_branch(other, p.c, p.f0, p.fp0, 0.05, tol) for p in branch.points):
                duplicate = True
                break
        if not duplicate:
            kept.append(branch)
    kept.sort(key=lambda b: (b.points[0].c, b.points[0].f0))
    return kept


def sweep(family, c_range, opts=None, progress=False, spectra=True):
    """
    Bifurcation diagram of a family over a range of c.

    Args:
        family: PhiModel, its parameter is replaced by c.
        c_range: (c_min, c_max).
        opts: ContinuationOptions.
        progress: Show progress bars.
        spectra: Compute the spectrum of every branch point.

    Returns:
        List of Branch.
    """
    if opts is None:
        opts = ContinuationOptions()
    c_lo, c_hi = c_range
    if not c_hi > c_lo:
        raise BifurcationError('empty c range (%r, %r)' % (c_lo, c_hi))
    logger = Logger('bifurcation')
    c_values = np.linspace(c_lo, c_hi, opts.seeds)
    seeds = find_seeds(family, c_values, opts, progress)
    system = ShootingSystem(family, (c_lo, c_hi), opts)
    spacing = (c_hi - c_lo) / max(opts.seeds - 1, 1)
    branches = []
    for c, found in seeds:
        for d, d_back, f0, fp0 in found:
            if any(_on_branch(b, c, f0, fp0, max(spacing, opts.ds_max), 1e-2)
                   for b in branches):
                continue
            logger.info('new branch from c = %.6g, f(0) = %.6g, f\'(0) = %.6g'
                        % (c, f0, fp0))
            try:
                branches.append(trace_branch(system, (d, d_back, c), spectra))
            except BifurcationError as e:
                logger.warn(str(e))
    return merge_branches(branches)


def detect_fold(branch):
    """
    Folds where c turns back along the branch, refined by a quadratic
    fit of c against the state coordinate varying most.

    Returns:
        List of CriticalPoint.
    """
    points = branch.points
    if len(points) < 3:
        return []
    cs = branch.cs()
    states = np.column_stack((branch.f0s(), branch.fp0s()))
    dc = np.diff(cs)
    res = []
    for i in range(1, len(dc)):
        if dc[i - 1] * dc[i] >= 0:
            continue
        lo, hi = max(i - 2, 0), min(i + 3, len(points))
        window = states[lo:hi]
        k = int(np.argmax(np.ptp(window, axis=0)))
        s = window[:, k]
        a, b, c0 = np.polyfit(s, cs[lo:hi], 2)
        if a == 0:
            s_star = s[i - lo]
            c_star = cs[i]
        else:
            s_star = -b / (2.0 * a)
            c_star = c0 - b * b / (4.0 * a)
        other = 1 - k
        o_star = np.interp(s_star, *_sorted_pair(s, window[:, other]))
        state = [0.0, 0.0]
        state[k] = s_star
        state[other] = o_star
        tol = max(abs(c_star - cs[i]), np.max(np.abs(dc[max(i - 1, 0):i + 1])))
        res.append(CriticalPoint(FOLD_POINT, c_star, state[0], state[1], tol))
    return res


def _sorted_pair(s, v):
    order = np.argsort(s)
    return (s[order], v[order])


def _split_at_sign_changes(branch, sym_tol):
    """
    Pieces of an asymmetric branch between crossings of f'(0) = 0,
    with the junctions (c*, f0*).
    """
    pieces = []
    junctions = []
    current = []
    for p in branch.points:
        if current and p.fp0 * current[-1].fp0 < 0:
            a = current[-1]
            w = a.fp0 / (a.fp0 - p.fp0)
            junctions.append((a.c + w * (p.c - a.c), a.f0 + w * (p.f0 - a.f0)))
            pieces.append(current)
            current = []
        current.append(p)
    if current:
        pieces.append(current)
    return pieces, junctions


def _mirror_distance(piece_a, piece_b):
    A = np.array([[p.c, p.f0, p.fp0] for p in piece_a])
    B = np.array([[p.c, p.f0, -p.fp0] for p in piece_b])
    dist = np.sqrt(((A[:, None, :] - B[None, :, :])**2).sum(axis=2)).min(axis=1)
    return float(np.median(dist))


def detect_pitchfork(branches, family, sym_tol=1e-4, tol=5e-2):
    """
    Pitchforks where a pair of mirror image asymmetric arms meets a
    symmetric branch.

    Returns:
        List of CriticalPoint.

    Raises:
        SymmetryUnavailable if the family is not even.
    """
    if not family.is_even():
        raise SymmetryUnavailable('pitchforks need an even family')
    symmetric = [b for b in branches if b.is_symmetric(sym_tol)]
    asymmetric = [b for b in branches if not b.is_symmetric(sym_tol)]
    if not symmetric or not asymmetric:
        return []
    candidates = []
    for b in asymmetric:
        pieces, junctions = _split_at_sign_changes(b, sym_tol)
        for i, (c_star, f_star) in enumerate(junctions):
            if _mirror_distance(pieces[i], pieces[i + 1]) < tol:
                candidates.append((c_star, f_star))
    ends = []
    for b in asymmetric:
        if b.termination == PITCHFORK_JUNCTION:
            ends.append((b, b.termination_c, b.points[-1]))
        if b.origin_termination == PITCHFORK_JUNCTION:
            ends.append((b, b.origin_c, b.points[0]))
    for i in range(len(ends)):
        for j in range(i + 1, len(ends)):
            bi, ci, pi = ends[i]
            bj, cj, pj = ends[j]
            if bi is bj or abs(ci - cj) > tol or pi.fp0 * pj.fp0 > 0:
                continue
            if _mirror_distance(bi.points, bj.points) < tol:
                candidates.append((0.5 * (ci + cj), 0.5 * (pi.f0 + pj.f0)))
    res = []
    for c_star, f_star in candidates:
        near = False
        for b in symmetric:
            if np.min(np.hypot(b.cs() - c_star, b.f0s() - f_star)) < tol:
                near = True
                break
        if not near:
            continue
        if any(abs(o.c - c_star) < tol for o in res):
            continue
        res.append(CriticalPoint(PITCHFORK_POINT, c_star, f_star, 0.0, tol))
    return res


def existence_interval(point, phi, F_esc=DEFAULT_F_ESC, X=40.0, integrator=None):
    """
    Distance from 0 at which the solution through (f(0), f'(0)) first
    has |f| > F_esc, X when it stays below in both directions.
    """
    f0, fp0 = point
    if abs(f0) > F_esc:
        return 0.0
    if integrator is None:
        integrator = IntegratorOptions()
    # near an asymptote |f'| ~ sqrt(2/3) |f|^(3/2), so this bound is
    # not reached before |f| passes F_esc
    f_blow = max(integrator.f_blow, 10.0 * (F_esc + F_esc**1.5))
    opts = IntegratorOptions(integrator.rtol, integrator.atol, f_blow,
                             integrator.floor_factor, integrator.max_step)
    start = PhasePoint(f0, fp0, 0.0)
    lengths = [X]
    for target in (X, -X):
        traj = integrate_to(start, target, phi, opts)
        escapes = crossing_events(traj, PLANE_F, F_esc) \
          + crossing_events(traj, PLANE_F, -F_esc)
        if escapes:
            lengths.append(min(abs(p.x) for p in escapes))
        elif not traj.reached():
            lengths.append(abs(traj.xs[-1]))
    return float(min(lengths))


def existence_map(family, c_values, f0_values, F_esc=DEFAULT_F_ESC, X=40.0,
                  integrator=None):
    """
    Existence interval on a (c, f(0)) grid with f'(0) = 0.

    Returns:
        Array, rows follow c_values and columns f0_values.
    """
    res = np.zeros((len(c_values), len(f0_values)))
    for i, c in enumerate(c_values):
        phi = family.with_param(c)
        for j, f0 in enumerate(f0_values):
            res[i, j] = existence_interval((f0, 0.0), phi, F_esc, X, integrator)
    return res


def branch_spectra_rows(branches):
    """
    Rows (branch, c, smallest_abs, n_positive) of all branch points.
    """
    rows = []
    for i, b in enumerate(branches):
        for p in b.points:
            if p.spectral is None:
                continue
            rows.append([i, p.c, p.spectral.smallest_abs, p.spectral.n_positive])
    return rows
