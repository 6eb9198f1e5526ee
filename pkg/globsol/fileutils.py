#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
    fileutils.py
    ~~~~~~~~~~~~

    file utilities

    :copyright: (c) 2026 by the globsol authors
    :license: GPL-2, see LICENSE for more details.
"""

import json
import os

import numpy as np

from .exceptions import FileJSONError
from .serialization import JSONSerializer, deserializeHook

CSV_FORMAT = '%.17g'


class FileJSONData(object):
    """
    Class for files with JSON compatible data.
    """
    def __init__(self, directory, name, mandatories=None):
        """
        Args:
            directory: File directory.
            name: File name.
            mandatories: List of requiered keys.
        """
        self.directory = os.path.abspath(directory)
        self.name = name
        self.path = os.path.join(self.directory, name)
        if not mandatories:
            self.mandatories = []
        else:
            self.mandatories = mandatories

    def read(self):
        """
        Read file.

        A missing file is created with empty mandatory keys.
        """
        if not os.path.exists(self.directory):
            os.makedirs(self.directory)
        content = {}
        if not os.path.isfile(self.path):
            for key in self.mandatories:
                content[key] = ""
            self.write_content(content)
        else:
            content = self.read_content()
            self.check_mandatories(content)
        return content

    def load(self):
        """
        Read an existing file, never creating it.
        """
        if not os.path.isfile(self.path):
            raise FileJSONError('no such file: ' + self.path)
        content = self.read_content()
        self.check_mandatories(content)
        return content

    def check_mandatories(self, content):
        for key in self.mandatories:
            if not isinstance(content, dict) or not key in content:
                raise FileJSONError('lack of mandatory key: ' + key)

    def read_content(self):
        """
        Real read operation with deserialization. Should be overridden.
        """
        return []

    def write(self, content):
        """
        Write file.
        """
        self.check_mandatories(content)
        if not os.path.exists(self.directory):
            os.makedirs(self.directory)
        self.write_content(content)

    def write_content(self, content):
        """
        Real write operation with serialization. Should be overridden.
        """
        pass


class FileJSON(FileJSONData):
    """
    Class for JSON files. Supports custom JSON serialization
    provided by globsol.serialization.
    """

    def read_content(self):
        """
        Read JSON file.
        """
        try:
            with open(self.path, 'r') as f:
                return json.load(f, object_hook=deserializeHook)
        except ValueError as e:
            raise FileJSONError('failed to parse ' + self.path + ': ' + str(e))

    def write_content(self, content):
        """
        Write JSON file.
        """
        with open(self.path, 'w') as f:
            json.dump(content, f, indent=2, sort_keys=True, cls=JSONSerializer)
            f.write('\n')


def write_csv(path, header, rows):
    """
    Write a table of numbers in full double precision.

    Args:
        path: File name.
        header: List of column names.
        rows: 2D array-like, one row per record.
    """
    data = np.asarray(rows, dtype=float)
    if data.size == 0:
        data = data.reshape(0, len(header))
    elif data.ndim == 1:
        data = data.reshape(1, -1)
    directory = os.path.dirname(os.path.abspath(path))
    if not os.path.exists(directory):
        os.makedirs(directory)
    np.savetxt(path, data, fmt=CSV_FORMAT, delimiter=',',
               header=','.join(header), comments='')


def read_csv(path):
    """
    Read a table written by write_csv.

    Returns:
        Tuple (header, 2D numpy array).
    """
    with open(path, 'r') as f:
        header = f.readline().strip().split(',')
    data = np.loadtxt(path, delimiter=',', skiprows=1, ndmin=2)
    return (header, data)


def hash_file(name, hasher, blocksize=65536):
    """
    Get a file hash.

    Args:
        name: file name.
        hasher: Hasher.
        blocksize: Blocksize.

    Returns:
        Hash value.
    """
    with open(name, 'rb') as f:
        buf = f.read(blocksize)
        while len(buf) > 0:
            hasher.update(buf)
            buf = f.read(blocksize)
    return hasher.hexdigest()
