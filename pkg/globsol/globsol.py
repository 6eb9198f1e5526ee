#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
    globsol.py
    ~~~~~~~~~~

    the main module

    :copyright: (c) 2026 by the globsol authors
    :license: GPL-2, see LICENSE for more details.
"""

import configparser
import os
import sys

from .cli import Cli, EXIT_CONFIG
from .logger import Logger

CONFIG_NAME = 'globsol.cfg'
CONFIG_PATHS = ['.', '~', '/etc/globsol']


def find_global_config(paths=None):
    """
    First globsol.cfg found in the search paths, None if there is none.
    """
    for path in paths or CONFIG_PATHS:
        current = os.path.join(os.path.expanduser(path), CONFIG_NAME)
        if os.path.isfile(current):
            return current
    return None


def load_global_config(paths=None):
    logger = Logger()
    global_config = configparser.ConfigParser()
    config_file = find_global_config(paths)
    if not config_file:
        logger.debug('no global config file, using defaults')
        return global_config
    try:
        global_config.read(config_file)
    except configparser.Error as e:
        logger.error('error loading global config file ' + config_file + ': ' + str(e))
        return None
    return global_config


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    global_config = load_global_config()
    if global_config is None:
        return EXIT_CONFIG
    return Cli().instance(argv, global_config)


if __name__ == "__main__":
    sys.exit(main())
