#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
    zset.py
    ~~~~~~~

    sets of initial conditions with global solutions: series seeded
    shooting, Z curves, their intersections and verification

    The backward side is always handled as the forward side of the
    mirrored problem x -> -x, so a backward seed d stands for the
    leading term 6/(-x - d)^2.

    :copyright: (c) 2026 by the globsol authors
    :license: GPL-2, see LICENSE for more details.
"""

import math
from concurrent.futures import ProcessPoolExecutor

import numpy as np
from scipy.optimize import root

from .exceptions import EmptyCurve, NoStraddle, SeriesError, ZSetError
from .integrate import IntegratorOptions, integrate_to
from .logger import Logger, ProgressBar
from .problem import BACKWARD, COMPLEMENT, FORWARD, PhasePoint, classify_region
from .series import (DEFAULT_ALPHA, DEFAULT_ORDER, SeriesBuilder, asymptotic_bc,
                     build_expansion, eval_series, other_family_point)

GLOBAL = 'Global'
BLOW_UP = 'BlowUp'
UNDETERMINED = 'Undetermined'

REFINED = 'refined'
TANGENTIAL = 'tangential'

STEEP = 'steep'
SHALLOW = 'shallow'

REFINE_TOL = 1e-8
TANGENTIAL_TOL = 1e-4
BISECTION_WIDTH = 1e-10
REGION_SLACK = 1e-6
ASYMPTOTIC_MATCH = 0.25
SQRT_2_3 = math.sqrt(2.0 / 3.0)

#closest approach of a seed to the station
STATION_GAP = 0.25
D_MIN = -40.0


class ZSetOptions(object):
    """
    Settings of the shooting constructions.
    """

    __slots__ = ('x_bc', 'x_verify', 'n_samples', 'alpha', 'order', 'integrator',
                 'jobs', 'max_angle', 'refine_passes', 'R_growth')

    def __init__(self, x_bc=8.0, x_verify=40.0, n_samples=400, alpha=DEFAULT_ALPHA,
                 order=DEFAULT_ORDER, integrator=None, jobs=1, max_angle=5.0,
                 refine_passes=3, R_growth=1.3):
        """
        Args:
            x_bc: Smallest distance of the boundary station from d.
            x_verify: Verification span.
            n_samples: Number of seeds of a curve.
            alpha: Envelope exponent of the series.
            order: Series truncation order.
            integrator: IntegratorOptions.
            jobs: Worker processes for the shots.
            max_angle: Turning angle in degrees triggering refinement.
            refine_passes: Number of refinement passes.
            R_growth: Factor of the validity radius ladder.
        """
        if not x_bc > 0 or not x_verify > 0:
            raise ZSetError('x_bc and x_verify must be positive')
        if n_samples < 2:
            raise ZSetError('a curve needs at least two samples')
        if jobs < 1:
            raise ZSetError('jobs must be at least 1')
        self.x_bc = float(x_bc)
        self.x_verify = float(x_verify)
        self.n_samples = int(n_samples)
        self.alpha = float(alpha)
        self.order = int(order)
        self.integrator = integrator or IntegratorOptions()
        self.jobs = int(jobs)
        self.max_angle = float(max_angle)
        self.refine_passes = int(refine_passes)
        self.R_growth = float(R_growth)

    def serialize(self):
        return {"x_bc": self.x_bc, "x_verify": self.x_verify,
                "n_samples": self.n_samples, "alpha": self.alpha,
                "order": self.order, "integrator": self.integrator,
                "jobs": self.jobs, "max_angle": self.max_angle,
                "refine_passes": self.refine_passes, "R_growth": self.R_growth}


def side_problem(phi, station, side):
    """
    Forcing function and station seen from the given side.
    """
    if side == FORWARD:
        return (phi, station)
    elif side == BACKWARD:
        return (phi.mirrored(), -station)
    raise ZSetError('unknown side: ' + str(side))


class ShotResult(object):
    """
    One series seeded shot from the boundary station to the station.

    f and fp are given in the original coordinates, trajectory and
    expansion live in the coordinates of the side.
    """

    __slots__ = ('d', 'side', 'station', 'f', 'fp', 'ok', 'trajectory',
                 'expansion', 'x_bc', 'reason')

    def __init__(self, d, side, station, f=None, fp=None, trajectory=None,
                 expansion=None, x_bc=None, reason=''):
        self.d = d
        self.side = side
        self.station = station
        self.f = f
        self.fp = fp
        self.ok = f is not None
        self.trajectory = trajectory
        self.expansion = expansion
        self.x_bc = x_bc
        self.reason = reason

    def endpoint(self):
        return np.array([self.f, self.fp])


def shoot(phi, d, station, side=FORWARD, opts=None):
    """
    Place the asymptotic boundary data of seed d and integrate
    back to the station.

    Returns:
        ShotResult, not ok when no certified series exists or the
        shot blows up.
    """
    if opts is None:
        opts = ZSetOptions()
    sphi, sstation = side_problem(phi, station, side)
    builder = SeriesBuilder(sphi, opts.alpha, opts.order, opts.R_growth)
    try:
        params = builder.certified_params(d, opts.x_bc / 1.5)
    except SeriesError as e:
        return ShotResult(d, side, station, reason=str(e))
    if params is None:
        return ShotResult(d, side, station, reason='uncertified')
    x_bc = max(d + max(1.5 * params.R, opts.x_bc), sstation)
    try:
        expansion = build_expansion(sphi, params)
        bc = asymptotic_bc(expansion, x_bc)
    except SeriesError as e:
        return ShotResult(d, side, station, reason=str(e))
    trajectory = None
    if x_bc > sstation:
        trajectory = integrate_to(bc, sstation, sphi, opts.integrator)
        if not trajectory.reached():
            return ShotResult(d, side, station, trajectory=trajectory,
                              expansion=expansion, x_bc=x_bc,
                              reason=trajectory.outcome)
        end = trajectory.end
        f, fp = end.f, end.fp
    else:
        f, fp = bc.f, bc.fp
    if side == BACKWARD:
        fp = -fp
    return ShotResult(d, side, station, f, fp, trajectory, expansion, x_bc)


def _shot_task(args):
    phi, d, station, side, opts = args
    shot = shoot(phi, d, station, side, opts)
    return (d, shot.ok, shot.f, shot.fp)


def shoot_many(phi, ds, station, side, opts, progress=None):
    """
    Endpoints for many seeds, in the order of ds.

    Returns:
        List of (d, ok, f, fp).
    """
    tasks = [(phi, float(d), station, side, opts) for d in ds]
    if opts.jobs > 1 and len(tasks) > 1:
        chunksize = max(1, len(tasks) // (4 * opts.jobs))
        with ProcessPoolExecutor(max_workers=opts.jobs) as executor:
            results = []
            for res in executor.map(_shot_task, tasks, chunksize=chunksize):
                results.append(res)
                if progress:
                    progress.increment()
        return results
    results = []
    for task in tasks:
        results.append(_shot_task(task))
        if progress:
            progress.increment()
    return results


class ZCurve(object):
    """
    Sampled curve of admissible initial conditions at a station.

    points holds rows (f, fp, seed_d) ordered by seed_d.
    """

    __slots__ = ('station', 'side', 'points', 'phi', 'opts')

    def __init__(self, station, side, points, phi=None, opts=None):
        points = np.asarray(points, dtype=float).reshape(-1, 3)
        if len(points) > 1 and np.any(np.diff(points[:, 2]) <= 0):
            raise ZSetError('curve points must be ordered by seed')
        self.station = float(station)
        self.side = side
        self.points = points
        self.phi = phi
        self.opts = opts

    def __len__(self):
        return len(self.points)

    @property
    def fs(self):
        return self.points[:, 0]

    @property
    def fps(self):
        return self.points[:, 1]

    @property
    def ds(self):
        return self.points[:, 2]

    def reflected(self):
        """
        The curve of the other side for an even phi, f' -> -f'.
        """
        side = BACKWARD if self.side == FORWARD else FORWARD
        points = self.points.copy()
        points[:, 1] = -points[:, 1]
        return ZCurve(-self.station, side, points, self.phi, self.opts)

    def distance(self, f, fp):
        """
        Distance of a point from the polyline.
        """
        P = self.points[:, :2]
        q = np.array([f, fp])
        if len(P) == 1:
            return float(np.hypot(*(P[0] - q)))
        a, b = P[:-1], P[1:]
        ab = b - a
        denom = np.einsum('ij,ij->i', ab, ab)
        denom = np.where(denom > 0, denom, 1.0)
        t = np.clip(np.einsum('ij,ij->i', q - a, ab) / denom, 0.0, 1.0)
        closest = a + t[:, None] * ab
        return float(np.min(np.hypot(closest[:, 0] - f, closest[:, 1] - fp)))

    def rows(self):
        """
        Rows (d, f, fp) for CSV export.
        """
        return self.points[:, [2, 0, 1]]

    def serialize(self):
        return {"station": self.station, "side": self.side,
                "points": self.points}

    @classmethod
    def deserialize(cls, value):
        return cls(value["station"], value["side"], value["points"])


def _turning_angles(points):
    """
    Turning angle in degrees at each inner vertex.
    """
    v = np.diff(points[:, :2], axis=0)
    a, b = v[:-1], v[1:]
    cross = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
    dot = np.einsum('ij,ij->i', a, b)
    return np.degrees(np.abs(np.arctan2(cross, dot)))


def default_d_range(station, side):
    sstation = station if side == FORWARD else -station
    return (D_MIN, sstation - STATION_GAP)


def build_zcurve(phi, station, d_range=None, n_samples=None, side=FORWARD,
                 opts=None, progress=False):
    """
    Sample the curve of admissible initial conditions at a station.

    Args:
        phi: PhiModel.
        station: x of the curve.
        d_range: (d_min, d_max) of the seeds in the coordinates of the side.
        n_samples: Number of seeds, before refinement.
        side: forward (global for x > station) or backward.
        opts: ZSetOptions.
        progress: Show a progress bar.

    Returns:
        ZCurve.

    Raises:
        EmptyCurve if every shot is discarded.
    """
    if opts is None:
        opts = ZSetOptions()
    logger = Logger('zset')
    if d_range is None:
        d_range = default_d_range(station, side)
    if n_samples is None:
        n_samples = opts.n_samples
    d_min, d_max = d_range
    if not d_max > d_min:
        raise ZSetError('empty seed range (%r, %r)' % (d_min, d_max))
    ds = np.linspace(d_min, d_max, n_samples)
    bar = None
    if progress:
        bar = ProgressBar(20, len(ds), '%s shots at x = %g' % (side, station))
        bar.begin()
    results = shoot_many(phi, ds, station, side, opts, bar)
    if bar:
        bar.end()
    kept = {}
    for d, ok, f, fp in results:
        if ok:
            kept[d] = (f, fp)
    logger.info('%s curve at x = %r: %d of %d seeds kept'
                % (side, station, len(kept), len(ds)))
    for _ in range(opts.refine_passes):
        if len(kept) < 3:
            break
        keys = sorted(kept)
        pts = np.array([[kept[d][0], kept[d][1], d] for d in keys])
        angles = _turning_angles(pts)
        sharp = np.nonzero(angles > opts.max_angle)[0] + 1
        if sharp.size == 0:
            break
        new = set()
        for i in sharp:
            new.add(0.5 * (keys[i - 1] + keys[i]))
            new.add(0.5 * (keys[i] + keys[i + 1]))
        new = sorted(d for d in new if not d in kept)
        logger.debug('refining %d vertices with %d seeds' % (sharp.size, len(new)))
        for d, ok, f, fp in shoot_many(phi, new, station, side, opts):
            if ok:
                kept[d] = (f, fp)
    if not kept:
        raise EmptyCurve('all %d shots at x = %r were discarded' % (len(ds), station))
    keys = sorted(kept)
    points = [[kept[d][0], kept[d][1], d] for d in keys]
    return ZCurve(station, side, points, phi, opts)


def _classify_end(trajectory):
    """
    Steep or shallow side of the boundary for a trajectory run
    over the verification span.
    """
    if trajectory.blew_up():
        fps = trajectory.fps
        turning = np.nonzero((fps[:-1] < 0) & (fps[1:] >= 0))[0]
        if turning.size:
            f_turn = np.min(trajectory.fs[:turning[-1] + 2])
        else:
            f_turn = trajectory.fs[0]
        return STEEP if f_turn < 0 else SHALLOW
    end = trajectory.end
    if end.f > 0 and end.fp > 0:
        return SHALLOW
    tail_energy = end.f**3 / 3.0 - 0.5 * end.fp**2
    if end.f < 0 or tail_energy < 0:
        return STEEP
    return SHALLOW


def classify_side(phi, point, station, side=FORWARD, opts=None):
    """
    Run a point over the verification span of its side.

    Returns:
        'steep' or 'shallow'.
    """
    if opts is None:
        opts = ZSetOptions()
    sphi, sstation = side_problem(phi, station, side)
    f, fp = point
    if side == BACKWARD:
        fp = -fp
    traj = integrate_to(PhasePoint(f, fp, sstation), sstation + opts.x_verify,
                        sphi, opts.integrator)
    return _classify_end(traj)


def refine_z_bisection(phi, station, ray, side=FORWARD, opts=None):
    """
    Bisect a ray for the boundary between steep and shallow starts.

    Args:
        phi: PhiModel.
        station: Station x.
        ray: (anchor, direction), both pairs (f, fp), the searched
            segment is anchor + t*direction, t in [0, 1].
        side: forward or backward.
        opts: ZSetOptions.

    Returns:
        (f, fp) of the boundary point.

    Raises:
        NoStraddle if both ends of the segment behave alike.
    """
    if opts is None:
        opts = ZSetOptions()
    anchor = np.asarray(ray[0], dtype=float)
    direction = np.asarray(ray[1], dtype=float)
    length = float(np.hypot(*direction))
    if length == 0:
        raise NoStraddle('degenerate ray')

    def at(t):
        return anchor + t * direction

    lo, hi = 0.0, 1.0
    c_lo = classify_side(phi, at(lo), station, side, opts)
    c_hi = classify_side(phi, at(hi), station, side, opts)
    if c_lo == c_hi:
        raise NoStraddle('both ends of the ray are %s' % c_lo)
    while (hi - lo) * length > BISECTION_WIDTH:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if classify_side(phi, at(mid), station, side, opts) == c_lo:
            lo = mid
        else:
            hi = mid
    f, fp = at(0.5 * (lo + hi))
    return (float(f), float(fp))


class Intersection(object):
    """
    Point of Z and Z' with the seeds of both shots.
    """

    __slots__ = ('f', 'fp', 'd_forward', 'd_backward', 'refined', 'residual',
                 'certainty')

    def __init__(self, f, fp, d_forward, d_backward, residual):
        self.f = float(f)
        self.fp = float(fp)
        self.d_forward = float(d_forward)
        self.d_backward = float(d_backward)
        self.residual = float(residual)
        self.refined = self.residual < REFINE_TOL
        if self.refined:
            self.certainty = REFINED
        else:
            self.certainty = TANGENTIAL

    def __repr__(self):
        return 'Intersection(f=%r, fp=%r, residual=%r)' % (self.f, self.fp, self.residual)

    @property
    def point(self):
        return (self.f, self.fp)

    def serialize(self):
        return {"f": self.f, "fp": self.fp, "d_forward": self.d_forward,
                "d_backward": self.d_backward, "residual": self.residual,
                "refined": self.refined, "certainty": self.certainty}

    @classmethod
    def deserialize(cls, value):
        return cls(value["f"], value["fp"], value["d_forward"],
                   value["d_backward"], value["residual"])


def polyline_crossings(zf, zb):
    """
    Transversal crossings of two polylines.

    Returns:
        List of (i, t, j, s): segment i of zf at parameter t meets
        segment j of zb at parameter s.
    """
    if len(zf) < 2 or len(zb) < 2:
        return []
    P = zf.points[:, :2]
    Q = zb.points[:, :2]
    p0, r = P[:-1], np.diff(P, axis=0)
    q0, s = Q[:-1], np.diff(Q, axis=0)
    denom = r[:, None, 0] * s[None, :, 1] - r[:, None, 1] * s[None, :, 0]
    qp = q0[None, :, :] - p0[:, None, :]
    with np.errstate(divide='ignore', invalid='ignore'):
        t = (qp[..., 0] * s[None, :, 1] - qp[..., 1] * s[None, :, 0]) / denom
        u = (qp[..., 0] * r[:, None, 1] - qp[..., 1] * r[:, None, 0]) / denom
    last_i = np.arange(len(r))[:, None] == len(r) - 1
    last_j = np.arange(len(s))[None, :] == len(s) - 1
    hit = (denom != 0) & (t >= 0) & ((t < 1) | last_i & (t <= 1)) \
      & (u >= 0) & ((u < 1) | last_j & (u <= 1))
    res = []
    for i, j in zip(*np.nonzero(hit)):
        res.append((int(i), float(t[i, j]), int(j), float(u[i, j])))
    return res


def mismatch(phi, d, d_back, station, opts):
    """
    Forward side endpoint minus backward side endpoint.

    Returns:
        (residual vector, forward shot, backward shot), the vector is
        None if a shot fails.
    """
    fwd = shoot(phi, d, station, FORWARD, opts)
    bwd = shoot(phi, d_back, station, BACKWARD, opts)
    if not (fwd.ok and bwd.ok):
        return (None, fwd, bwd)
    return (fwd.endpoint() - bwd.endpoint(), fwd, bwd)


def refine_intersection(phi, d_guess, d_back_guess, station, opts):
    """
    Solve the mismatch for both seeds with the MINPACK hybrid method.

    Returns:
        Intersection or None when the solve leaves the admissible seeds.
    """
    failed = np.array([1e3, 1e3])

    def G(z):
        vec, _, _ = mismatch(phi, z[0], z[1], station, opts)
        if vec is None:
            return failed
        return vec

    sol = root(G, np.array([d_guess, d_back_guess]), method='hybr',
               options={'xtol': 1e-13, 'eps': 1e-7})
    vec, fwd, bwd = mismatch(phi, sol.x[0], sol.x[1], station, opts)
    if vec is None:
        return None
    residual = float(np.hypot(*vec))
    if residual > TANGENTIAL_TOL:
        return None
    point = 0.5 * (fwd.endpoint() + bwd.endpoint())
    return Intersection(point[0], point[1], sol.x[0], sol.x[1], residual)


def intersect(zf, zb, opts=None):
    """
    All intersections of the forward and backward side curves,
    refined on the shooting mismatch.

    Returns:
        List of Intersection ordered by f'.
    """
    if zf.station != zb.station:
        raise ZSetError('curves live at different stations')
    if zf.side != FORWARD or zb.side != BACKWARD:
        raise ZSetError('need a forward and a backward side curve')
    station = zf.station
    phi = zf.phi
    if opts is None:
        opts = zf.opts or ZSetOptions()
    logger = Logger('zset')
    res = []
    for i, t, j, s in polyline_crossings(zf, zb):
        d = zf.ds[i] + t * (zf.ds[i + 1] - zf.ds[i])
        d_back = zb.ds[j] + s * (zb.ds[j + 1] - zb.ds[j])
        if phi is None:
            f = zf.fs[i] + t * (zf.fs[i + 1] - zf.fs[i])
            fp = zf.fps[i] + t * (zf.fps[i + 1] - zf.fps[i])
            res.append(Intersection(f, fp, d, d_back, np.inf))
            continue
        inter = refine_intersection(phi, d, d_back, station, opts)
        if inter is None:
            logger.debug('dropped crossing near d = %r, d\' = %r' % (d, d_back))
            continue
        if any(abs(inter.f - o.f) < 1e-6 and abs(inter.fp - o.fp) < 1e-6 for o in res):
            continue
        res.append(inter)
    res.sort(key=lambda o: (o.fp, o.f))
    logger.info('%d intersections at x = %r' % (len(res), station))
    return res


class VerifyResult(object):
    """
    Outcome of the global existence check.
    """

    __slots__ = ('status', 'x_blow')

    def __init__(self, status, x_blow=None):
        self.status = status
        self.x_blow = x_blow

    def __repr__(self):
        return 'VerifyResult(%r, %r)' % (self.status, self.x_blow)

    def serialize(self):
        return {"status": self.status, "x_blow": self.x_blow}


def _verify_side(phi, f, fp, X, side, opts):
    sphi = phi if side == FORWARD else phi.mirrored()
    if side == BACKWARD:
        fp = -fp
    traj = integrate_to(PhasePoint(f, fp, 0.0), X, sphi, opts.integrator)
    if traj.blew_up():
        x_blow = traj.x_blow if side == FORWARD else -traj.x_blow
        return VerifyResult(BLOW_UP, x_blow)
    if not traj.reached():
        return VerifyResult(UNDETERMINED)
    x0 = sphi.monotone_tail_x0
    if x0 is not None:
        for p in traj.points():
            if p.x < x0 or sphi.value(p.x) < 0:
                continue
            if classify_region(p, sphi, FORWARD, REGION_SLACK) == COMPLEMENT:
                return VerifyResult(UNDETERMINED)
    end = traj.end
    if abs(end.f) <= 1e-10 and abs(end.fp) <= 1e-10:
        return VerifyResult(GLOBAL)
    if end.f > 0 and end.fp < 0 and \
       abs(end.fp + SQRT_2_3 * end.f**1.5) <= ASYMPTOTIC_MATCH * abs(end.fp):
        return VerifyResult(GLOBAL)
    return VerifyResult(UNDETERMINED)


def verify_global(phi, point, X_verify=None, opts=None):
    """
    Check a point (f(0), f'(0)) for global existence.

    Both directions are integrated to |x| = X_verify; a side is global
    when it stays in R1 u R2 on the monotone tail and ends on the
    decaying asymptote f' = -+sqrt(2/3) f^(3/2).

    Returns:
        VerifyResult with status Global, BlowUp or Undetermined.
    """
    if opts is None:
        opts = ZSetOptions()
    if X_verify is None:
        X_verify = opts.x_verify
    f, fp = point
    results = [_verify_side(phi, f, fp, X_verify, FORWARD, opts),
               _verify_side(phi, f, fp, X_verify, BACKWARD, opts)]
    for res in results:
        if res.status == BLOW_UP:
            return res
    for res in results:
        if res.status == UNDETERMINED:
            return res
    return VerifyResult(GLOBAL)


class ZBoundaryPoint(object):
    """
    Estimate of the end of Z where the series family degenerates.
    """

    __slots__ = ('f', 'fp', 'station', 'refined', 'certainty')

    def __init__(self, f, fp, station, refined):
        self.f = float(f)
        self.fp = float(fp)
        self.station = float(station)
        self.refined = refined
        self.certainty = UNDETERMINED

    def serialize(self):
        return {"f": self.f, "fp": self.fp, "station": self.station,
                "refined": self.refined, "certainty": self.certainty}


def z_boundary_point(phi, station=0.0, opts=None):
    """
    Diagnostic estimate of the end point of Z, seeded by the decaying
    family f ~ -int int phi and refined along f' when the steep and
    shallow sides straddle it.
    """
    f, fp = other_family_point(phi, station)
    delta = max(0.5 * abs(fp), 0.05)
    ray = ((f, fp - delta), (0.0, 2.0 * delta))
    try:
        f, fp = refine_z_bisection(phi, station, ray, FORWARD, opts)
        return ZBoundaryPoint(f, fp, station, True)
    except NoStraddle:
        return ZBoundaryPoint(f, fp, station, False)


class GlobalSolution(object):
    """
    Solution assembled from a forward side shot (x >= station) and a
    backward side shot (x <= station): dense output between the
    boundary stations, series beyond them.
    """

    __slots__ = ('phi', 'forward', 'backward', 'station')

    def __init__(self, phi, forward, backward):
        if not (forward.ok and backward.ok):
            raise ZSetError('global solution needs two successful shots')
        self.phi = phi
        self.forward = forward
        self.backward = backward
        self.station = forward.station

    @classmethod
    def from_seeds(cls, phi, d_forward, d_backward, station=0.0, opts=None):
        return cls(phi, shoot(phi, d_forward, station, FORWARD, opts),
                   shoot(phi, d_backward, station, BACKWARD, opts))

    @classmethod
    def from_intersection(cls, phi, inter, station=0.0, opts=None):
        return cls.from_seeds(phi, inter.d_forward, inter.d_backward, station, opts)

    @staticmethod
    def _side_value(shot, x):
        """
        (f, f') of a shot at x given in the coordinates of its side.
        """
        traj = shot.trajectory
        if traj is not None and x <= shot.x_bc:
            f, fp = traj(x)
            return (float(f), float(fp))
        f, fp, _ = eval_series(shot.expansion, x)
        return (f, fp)

    def state(self, x):
        """
        (f(x), f'(x)).
        """
        x = float(x)
        if x >= self.station:
            return self._side_value(self.forward, x)
        f, fp = self._side_value(self.backward, -x)
        return (f, -fp)

    def __call__(self, x):
        if np.ndim(x) == 0:
            return self.state(x)[0]
        return np.array([self.state(xi)[0] for xi in np.asarray(x, dtype=float)])

    def mismatch(self):
        return float(np.hypot(*(self.forward.endpoint() - self.backward.endpoint())))
