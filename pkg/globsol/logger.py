#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
    logger.py
    ~~~~~~~~~

    logging classes

    :copyright: (c) 2026 by the globsol authors
    :license: GPL-2, see LICENSE for more details.
"""

import logging
import sys

LOGGER_NAME = 'globsol'


def setup_logging(verbosity=0, stream=None):
    """
    Attach a stderr handler to the globsol logger namespace.

    Args:
        verbosity: 0 -- warnings, 1 -- info, 2 and more -- debug.
        stream: Output stream, stderr by default.
    """
    root = logging.getLogger(LOGGER_NAME)
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    root.setLevel(level)
    if not root.handlers:
        handler = logging.StreamHandler(stream or sys.stderr)
        handler.setFormatter(logging.Formatter(' * %(levelname)s: %(message)s'))
        root.addHandler(handler)
    return root


class Logger(object):
    """
    A simple logger object. Uses the globsol logging namespace.
    """
    def __init__(self, name=None):
        if name:
            self.out = logging.getLogger(LOGGER_NAME + '.' + name)
        else:
            self.out = logging.getLogger(LOGGER_NAME)

    def error(self, message):
        self.out.error(message)

    def info(self, message):
        self.out.info(message)

    def warn(self, message):
        self.out.warning(message)

    def debug(self, message):
        self.out.debug(message)


class ProgressBar(object):
    """
    A labelled progress bar on stderr, shown by the --progress flag.
    """

    __slots__ = ('length', 'total', 'processed', 'label', 'stream')

    def __init__(self, length, total, label='', stream=None):
        """
        Args:
            length: Length of the progress bar.
            total: The overall number of items to process.
            label: Text shown before the bar.
            stream: Output stream, stderr by default.
        """
        self.length = length
        self.total = max(total, 1)
        self.processed = 0
        self.label = label
        self.stream = stream or sys.stderr

    def begin(self):
        """
        Start displaying the progress bar with 0% progress.
        """
        self.processed = 0
        self.display()

    def display(self):
        done = min(self.processed, self.total)
        percent = (done * 100) // self.total
        progress = (percent * self.length) // 100
        prefix = self.label + ' ' if self.label else ''
        bar = '#' * progress + ' ' * (self.length - progress)
        self.stream.write('\r %s[%s] %d/%d %d%%' % (prefix, bar, done, self.total, percent))
        self.stream.flush()

    def increment(self, count=1):
        """
        Increment number of processed items.

        Args:
            count: Step of incrementation.
        """
        self.processed += count
        self.display()

    def end(self):
        """
        Show 100%.
        """
        self.processed = self.total
        self.display()
        self.stream.write("\n")
        self.stream.flush()
