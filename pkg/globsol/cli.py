#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
    cli.py
    ~~~~~~

    command line front end: run configuration and the subcommands
    writing data files of a run

    :copyright: (c) 2026 by the globsol authors
    :license: GPL-2, see LICENSE for more details.
"""

import argparse
import os
import sys

import numpy as np

from . import bifurcation, checks, series, spectrum, zset
from .exceptions import ConfigError, FileJSONError, GlobSolError, SymmetryUnavailable
from .fileutils import FileJSON, read_csv
from .integrate import TOLERANCE_FAILURE, IntegratorOptions, integrate_to
from .logger import Logger, setup_logging
from .output_layout import JSON_FILE_SUFFIX, SUPPORTED_FILE_FORMATS, OutputLayout
from .problem import (BACKWARD, CONSTANT, FORWARD, PHI_KINDS, TABULATED,
                      PhasePoint, PhiModel)
from .serialization import dumps

EXIT_OK = 0
EXIT_NUMERICAL = 1
EXIT_CONFIG = 2

GLOBAL_SECTION = 'main'

# key: (type, default)
DEFAULTS = {
    'tol_rel': (float, 1e-9),
    'tol_abs': (float, 1e-12),
    'x_bc': (float, 8.0),
    'x_verify': (float, 40.0),
    'jobs': (int, 1),
    'order': (int, series.DEFAULT_ORDER),
    'alpha': (float, series.DEFAULT_ALPHA),
    'out': (str, None),
    'format': (str, JSON_FILE_SUFFIX),
    'progress': (bool, False),
    'confirm': (bool, True),
    'station': (float, 0.0),
    'samples': (int, 400),
    'd_min': (float, None),
    'd_max': (float, None),
    'c_min': (float, None),
    'c_max': (float, None),
    'seeds': (int, 60),
    'exist_map': (bool, False),
    'map_c_count': (int, 45),
    'f0_min': (float, 0.0),
    'f0_max': (float, 3.0),
    'f0_count': (int, 61),
    'd': (float, 0.0),
    'R': (float, 1.0),
    'K': (float, 0.0),
    'grid_d_min': (float, -5.0),
    'grid_d_max': (float, 5.0),
    'grid_d_count': (int, 101),
    'grid_R_min': (float, 0.5),
    'grid_R_max': (float, 20.0),
    'grid_R_count': (int, 80),
    'L_half': (float, spectrum.DEFAULT_L_HALF),
    'N': (int, spectrum.DEFAULT_N),
    'f0': (float, 0.0),
    'fp0': (float, 0.0),
    'x0': (float, 0.0),
    'x_end': (float, 10.0),
}

GLOBAL_KEYS = ['tol_rel', 'tol_abs', 'x_bc', 'x_verify', 'jobs', 'order', 'alpha']

POSITIVE_KEYS = ['tol_rel', 'tol_abs', 'x_bc', 'x_verify', 'jobs', 'order',
                 'samples', 'seeds', 'N', 'L_half', 'R']


def _convert(key, value):
    kind = DEFAULTS[key][0]
    if value is None:
        return None
    try:
        if kind is bool:
            if isinstance(value, str):
                return value.lower() in ('1', 'true', 'yes', 'on')
            return bool(value)
        return kind(value)
    except (TypeError, ValueError):
        raise ConfigError('bad value for %s: %r' % (key, value))


class RunConfig(object):
    """
    Settings of one run.

    Command line flags override the run configuration file, which
    overrides the global configuration, which overrides the defaults.
    """

    def __init__(self, phi, values):
        self.phi = phi
        self.values = values

    def __getattr__(self, key):
        values = self.__dict__.get('values')
        if values is None or not key in values:
            raise AttributeError(key)
        return values[key]

    @classmethod
    def load_file(cls, path):
        """
        Read a JSON run configuration, mandatory key phi.
        """
        directory, name = os.path.split(os.path.abspath(path))
        try:
            content = FileJSON(directory, name, ['phi']).load()
        except FileJSONError as e:
            raise ConfigError(str(e))
        unknown = sorted(k for k in content if k != 'phi' and not k in DEFAULTS)
        if unknown:
            raise ConfigError('unknown keys in %s: %s' % (path, ', '.join(unknown)))
        return content

    @classmethod
    def from_sources(cls, args, global_config=None):
        """
        Args:
            args: Parsed command line.
            global_config: configparser.ConfigParser or None.

        Returns:
            RunConfig.
        """
        values = dict((k, v[1]) for k, v in DEFAULTS.items())
        if global_config is not None and global_config.has_section(GLOBAL_SECTION):
            for key in GLOBAL_KEYS:
                if global_config.has_option(GLOBAL_SECTION, key):
                    values[key] = _convert(key, global_config.get(GLOBAL_SECTION, key))
        content = {}
        if getattr(args, 'config', None):
            content = cls.load_file(args.config)
        for key, value in content.items():
            if key != 'phi':
                values[key] = _convert(key, value)
        for key in DEFAULTS:
            value = getattr(args, key, None)
            if value is not None:
                values[key] = _convert(key, value)
        phi = cls._phi(args, content.get('phi'))
        for key in POSITIVE_KEYS:
            if not values[key] > 0:
                raise ConfigError('%s must be positive, got %r' % (key, values[key]))
        if not values['format'] in SUPPORTED_FILE_FORMATS:
            raise ConfigError('unsupported format: ' + values['format'])
        return cls(phi, values)

    @staticmethod
    def _phi(args, from_file):
        kind = getattr(args, 'phi', None)
        if kind is None:
            if from_file is None:
                raise ConfigError('no forcing function given, use --phi or --config')
            try:
                phi = PhiModel.deserialize(from_file)
            except GlobSolError as e:
                raise ConfigError(str(e))
            param = getattr(args, 'c', None)
            if param is None:
                param = getattr(args, 'P', None)
            if param is not None:
                phi = phi.with_param(param)
            return phi
        if not kind in PHI_KINDS:
            raise ConfigError('unknown phi kind: ' + str(kind))
        param = getattr(args, 'P', None) if kind == CONSTANT else getattr(args, 'c', None)
        table = None
        if kind == TABULATED:
            if not getattr(args, 'table', None):
                raise ConfigError('tabulated phi needs --table')
            try:
                _, table = read_csv(args.table)
            except (IOError, OSError, ValueError) as e:
                raise ConfigError('cannot read table %s: %s' % (args.table, e))
            if param is None:
                param = 1.0
        if param is None:
            raise ConfigError('%s phi needs --%s' % (kind, 'P' if kind == CONSTANT else 'c'))
        try:
            return PhiModel(kind, param, table)
        except GlobSolError as e:
            raise ConfigError(str(e))

    def integrator(self):
        return IntegratorOptions(rtol=self.tol_rel, atol=self.tol_abs)

    def zset_options(self):
        try:
            return zset.ZSetOptions(x_bc=self.x_bc, x_verify=self.x_verify,
                                    n_samples=self.samples, alpha=self.alpha,
                                    order=self.order, integrator=self.integrator(),
                                    jobs=self.jobs)
        except GlobSolError as e:
            raise ConfigError(str(e))

    def layout(self):
        return OutputLayout(self.out or '.', self.format)

    def serialize(self):
        values = dict(self.values)
        values['phi'] = self.phi
        return values


def _common_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--phi', choices=PHI_KINDS)
    common.add_argument('--c', type=float, help='family parameter')
    common.add_argument('--P', type=float, help='constant phi value')
    common.add_argument('--table', help='CSV table x,phi,dphi')
    common.add_argument('--tol-rel', dest='tol_rel', type=float)
    common.add_argument('--tol-abs', dest='tol_abs', type=float)
    common.add_argument('--x-bc', dest='x_bc', type=float)
    common.add_argument('--x-verify', dest='x_verify', type=float)
    common.add_argument('--jobs', type=int)
    common.add_argument('--order', type=int)
    common.add_argument('--alpha', type=float)
    common.add_argument('--out')
    common.add_argument('--config')
    common.add_argument('--format', choices=sorted(SUPPORTED_FILE_FORMATS))
    common.add_argument('--progress', action='store_const', const=True)
    common.add_argument('-v', '--verbose', action='count', default=0)
    return common


class Cli(object):
    """
    Command line interface.

    Command format is as follows:
    globsol command [options]

    where command is one of the following:
    verdict
    zset
    sweep
    series
    spectrum
    integrate
    """

    def __init__(self):
        common = _common_parser()
        self.parser = argparse.ArgumentParser(
            description='Global solutions of 0 = f\'\' - f^2 + phi(x).')
        subparsers = self.parser.add_subparsers(dest='command')
        subparsers.required = True

        p_verdict = subparsers.add_parser('verdict', parents=[common])
        p_verdict.add_argument('--no-confirm', dest='confirm',
                               action='store_const', const=False)
        p_verdict.set_defaults(func=self.verdict)

        p_zset = subparsers.add_parser('zset', parents=[common])
        p_zset.add_argument('--station', type=float)
        p_zset.add_argument('--samples', type=int)
        p_zset.add_argument('--d-min', dest='d_min', type=float)
        p_zset.add_argument('--d-max', dest='d_max', type=float)
        p_zset.set_defaults(func=self.zset)

        p_sweep = subparsers.add_parser('sweep', parents=[common])
        p_sweep.add_argument('--c-min', dest='c_min', type=float)
        p_sweep.add_argument('--c-max', dest='c_max', type=float)
        p_sweep.add_argument('--seeds', type=int)
        p_sweep.add_argument('--samples', type=int)
        p_sweep.add_argument('--exist-map', dest='exist_map',
                             action='store_const', const=True)
        p_sweep.add_argument('--map-c-count', dest='map_c_count', type=int)
        p_sweep.add_argument('--f0-min', dest='f0_min', type=float)
        p_sweep.add_argument('--f0-max', dest='f0_max', type=float)
        p_sweep.add_argument('--f0-count', dest='f0_count', type=int)
        p_sweep.set_defaults(func=self.sweep)

        p_series = subparsers.add_parser('series', parents=[common])
        p_series.add_argument('--d', type=float)
        p_series.add_argument('--R', type=float)
        p_series.add_argument('--K', type=float)
        p_series.add_argument('--grid-d', dest='grid_d', type=float, nargs=3,
                              metavar=('MIN', 'MAX', 'COUNT'))
        p_series.add_argument('--grid-R', dest='grid_R', type=float, nargs=3,
                              metavar=('MIN', 'MAX', 'COUNT'))
        p_series.set_defaults(func=self.series)

        p_spectrum = subparsers.add_parser('spectrum', parents=[common])
        p_spectrum.add_argument('--L-half', dest='L_half', type=float)
        p_spectrum.add_argument('--N', type=int)
        p_spectrum.add_argument('--samples', type=int)
        p_spectrum.set_defaults(func=self.spectrum)

        p_integrate = subparsers.add_parser('integrate', parents=[common])
        p_integrate.add_argument('--f0', type=float)
        p_integrate.add_argument('--fp0', type=float)
        p_integrate.add_argument('--x0', type=float)
        p_integrate.add_argument('--x-end', dest='x_end', type=float)
        p_integrate.set_defaults(func=self.integrate)

        self.logger = Logger('cli')

    def instance(self, args, global_config=None):
        """
        Run a command.

        Args:
            args: Command line arguments without the program name.
            global_config: configparser.ConfigParser or None.

        Returns:
            Exit status.
        """
        try:
            parsed = self.parser.parse_args(args)
        except SystemExit as e:
            return EXIT_OK if e.code == 0 else EXIT_CONFIG
        self._grid_flags(parsed)
        setup_logging(parsed.verbose)
        try:
            config = RunConfig.from_sources(parsed, global_config)
        except ConfigError as e:
            self.logger.error(str(e))
            return EXIT_CONFIG
        try:
            return parsed.func(parsed, config)
        except ConfigError as e:
            self.logger.error(str(e))
            return EXIT_CONFIG
        except GlobSolError as e:
            self.logger.error(str(e))
            return EXIT_NUMERICAL

    @staticmethod
    def _grid_flags(parsed):
        for name in ('grid_d', 'grid_R'):
            value = getattr(parsed, name, None)
            if value is not None:
                setattr(parsed, name + '_min', value[0])
                setattr(parsed, name + '_max', value[1])
                setattr(parsed, name + '_count', int(value[2]))

    def verdict(self, args, config):
        """
        Verdict report of the analytic criteria.

        Args:
            args: Command line arguments.
            config: RunConfig.

        Returns:
            Exit status.
        """
        if config.confirm:
            result = checks.confirmed_verdict(config.phi, config.zset_options())
        else:
            result = checks.verdict(config.phi)
        report = {"phi": config.phi, "verdict": result}
        sys.stdout.write(dumps(report) + '\n')
        if config.out is not None:
            layout = config.layout()
            layout.write_structured('verdict', report)
            layout.close()
        return EXIT_OK

    def zset(self, args, config):
        """
        Curves of admissible initial conditions of both sides and their
        intersections.
        """
        phi = config.phi
        opts = config.zset_options()
        station = config.station
        curves = {}
        for side in (FORWARD, BACKWARD):
            d_range = None
            if config.d_min is not None or config.d_max is not None:
                default = zset.default_d_range(station, side)
                d_range = (default[0] if config.d_min is None else config.d_min,
                           default[1] if config.d_max is None else config.d_max)
            if side == BACKWARD and phi.is_even() and station == 0.0:
                curves[side] = curves[FORWARD].reflected()
            else:
                curves[side] = zset.build_zcurve(phi, station, d_range, config.samples,
                                                 side, opts, config.progress)
        inters = zset.intersect(curves[FORWARD], curves[BACKWARD], opts)
        layout = config.layout()
        header = ['d', 'f', 'fp']
        layout.write_csv('zcurve_fwd', header, curves[FORWARD].rows())
        layout.write_csv('zcurve_bwd', header, curves[BACKWARD].rows())
        layout.write_structured('intersections', {"phi": phi, "station": station,
                                                  "intersections": inters})
        layout.close()
        self.logger.info('%d intersections' % len(inters))
        return EXIT_OK

    def _continuation_options(self, config):
        return bifurcation.ContinuationOptions(seeds=config.seeds,
                                               seed_samples=min(config.samples, 120),
                                               zset=config.zset_options())

    def sweep(self, args, config):
        """
        Bifurcation diagram over [c_min, c_max].
        """
        if config.c_min is None or config.c_max is None:
            raise ConfigError('sweep needs --c-min and --c-max')
        if not config.c_max > config.c_min:
            raise ConfigError('empty c range [%r, %r]' % (config.c_min, config.c_max))
        family = config.phi
        opts = self._continuation_options(config)
        branches = bifurcation.sweep(family, (config.c_min, config.c_max), opts,
                                     config.progress)
        folds = []
        for b in branches:
            folds += bifurcation.detect_fold(b)
        try:
            pitchforks = bifurcation.detect_pitchfork(branches, family, opts.sym_tol)
        except SymmetryUnavailable as e:
            self.logger.info(str(e))
            pitchforks = []
        layout = config.layout()
        rows = []
        exist_rows = []
        for i, b in enumerate(branches):
            for p in b.points:
                rows.append([i] + p.row())
                exist_rows.append([i, p.c, p.f0, p.row()[-1]])
        layout.write_csv('diagram', ['branch', 'c', 'f0', 'fp0', 'n_positive',
                                     'smallest_abs', 'exist_len'], rows)
        layout.write_structured('diagram', {"family": family,
                                            "c_range": [config.c_min, config.c_max],
                                            "branches": branches,
                                            "folds": folds,
                                            "pitchforks": pitchforks})
        layout.write_csv('small_eig', ['branch', 'c', 'smallest_abs', 'n_positive'],
                         bifurcation.branch_spectra_rows(branches))
        layout.write_csv('exist_len', ['branch', 'c', 'f0', 'exist_len'], exist_rows)
        if config.exist_map:
            c_values = np.linspace(config.c_min, config.c_max, config.map_c_count)
            f0_values = np.linspace(config.f0_min, config.f0_max, config.f0_count)
            grid = bifurcation.existence_map(family, c_values, f0_values,
                                             opts.F_esc, config.x_verify,
                                             config.integrator())
            cc, ff = np.meshgrid(c_values, f0_values, indexing='ij')
            layout.write_csv('exist_map', ['c', 'f0', 'exist_len'],
                             np.column_stack((cc.ravel(), ff.ravel(), grid.ravel())))
        layout.close()
        self.logger.info('%d branches, %d folds, %d pitchforks'
                         % (len(branches), len(folds), len(pitchforks)))
        return EXIT_OK

    def series(self, args, config):
        """
        Series coefficients at a seed, the certificate region and M(d).
        """
        phi = config.phi
        d_values = np.linspace(config.grid_d_min, config.grid_d_max, config.grid_d_count)
        R_values = np.linspace(config.grid_R_min, config.grid_R_max, config.grid_R_count)
        region = series.convergence_region(phi, d_values, R_values, config.alpha, config.K)
        layout = config.layout()
        builder = series.SeriesBuilder(phi, config.alpha, config.order)
        expansion = builder.build(config.d, config.R, config.K)
        layout.write_structured('series_coeffs', expansion)
        dd, RR = np.meshgrid(d_values, R_values, indexing='ij')
        layout.write_csv('convergence_region', ['d', 'R', 'certified'],
                         np.column_stack((dd.ravel(), RR.ravel(),
                                          region.ravel().astype(float))))
        M = series.envelope_curve(phi, d_values, config.alpha, config.R)
        layout.write_csv('m_of_d', ['d', 'M'], np.column_stack((d_values, M)))
        layout.close()
        return EXIT_OK

    def spectrum(self, args, config):
        """
        Spectral summaries of the global solutions found.
        """
        phi = config.phi
        opts = config.zset_options()
        zf = zset.build_zcurve(phi, 0.0, side=FORWARD, opts=opts, progress=config.progress)
        if phi.is_even():
            zb = zf.reflected()
        else:
            zb = zset.build_zcurve(phi, 0.0, side=BACKWARD, opts=opts,
                                   progress=config.progress)
        summaries = []
        rows = []
        found = [inter for inter in zset.intersect(zf, zb, opts) if inter.refined]
        for i, inter in enumerate(found):
            solution = zset.GlobalSolution.from_intersection(phi, inter, 0.0, opts)
            summary = spectrum.solution_profile_spectrum(solution, config.L_half, config.N)
            summaries.append({"f0": inter.f, "fp0": inter.fp, "spectrum": summary})
            for j, value in enumerate(summary.eigenvalues_head):
                rows.append([i, j, value])
        layout = config.layout()
        layout.write_structured('spectrum', {"phi": phi, "solutions": summaries})
        layout.write_csv('eigenvalues', ['solution', 'index', 'eigenvalue'], rows)
        layout.close()
        return EXIT_OK

    def integrate(self, args, config):
        """
        Trajectory from (f0, fp0) at x0 to x_end.
        """
        start = PhasePoint(config.f0, config.fp0, config.x0)
        traj = integrate_to(start, config.x_end, config.phi, config.integrator())
        layout = config.layout()
        layout.write_csv('trajectory', ['x', 'f', 'fp'], traj.rows())
        layout.write_structured('trajectory', {"phi": config.phi, "trajectory": traj})
        layout.close()
        if traj.outcome == TOLERANCE_FAILURE:
            self.logger.error('integration failed at x = %r' % traj.xs[-1])
            return EXIT_NUMERICAL
        return EXIT_OK
