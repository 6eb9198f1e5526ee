#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
    setup.py
    ~~~~~~~~

    installation script

    :copyright: (c) 2026 by the globsol authors
    :license: GPL-2, see LICENSE for more details.
"""

import os

from setuptools import setup

SELECTABLE = {'bson': 'file_bson'}

use_defaults = ' '.join(list(SELECTABLE))
USE = os.environ.get("USE", use_defaults).split()

optional_modules = []
extras = {}
for mod in SELECTABLE:
    if mod in USE:
        optional_modules.append('globsol.%s' % SELECTABLE[mod])
        extras[mod] = ['pymongo']

setup(name             = 'globsol',
      version          = '0.1.0',
      description      = 'global solutions of forced nonlinear oscillators f\'\' = f^2 - phi(x)',
      author           = 'globsol authors',
      packages         = ['globsol'] + optional_modules,
      scripts          = ['bin/globsol'],
      data_files       = [('/etc/globsol/', ['globsol.cfg'])],
      install_requires = ['numpy', 'scipy'],
      extras_require   = extras,
      license          = 'GPL-2',
      )
