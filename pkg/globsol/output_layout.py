#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
    output_layout.py
    ~~~~~~~~~~~~~~~~

    result directory layout: data files plus a manifest
    with their digests

    :copyright: (c) 2026 by the globsol authors
    :license: GPL-2, see LICENSE for more details.
"""

import hashlib
import os

from .exceptions import IntegrityError, OutputLayoutError
from .fileutils import FileJSON, hash_file, write_csv
from .logger import Logger

MANIFEST_FILE_NAME = 'manifest'

JSON_FILE_SUFFIX = 'json'
BSON_FILE_SUFFIX = 'bson'

SUPPORTED_FILE_FORMATS = {JSON_FILE_SUFFIX: FileJSON}

# bson module is optional, we should check if it is installed
try:
    from .file_bson.file_bson import FileBSON
    SUPPORTED_FILE_FORMATS[BSON_FILE_SUFFIX] = FileBSON
except ImportError as e:
    pass


def file_name(name, suffix=JSON_FILE_SUFFIX):
    """
    Return file name based on name and suffix.
    """
    return name + '.' + suffix


class Manifest(FileJSON):
    """
    Manifest file: maps every data file of a result
    directory to its md5 digest.
    """

    def __init__(self, directory):
        super(Manifest, self).__init__(os.path.abspath(directory),
                                       file_name(MANIFEST_FILE_NAME))

    def check(self):
        """
        Check manifest.

        Returns:
            Tuple (result, list of files with wrong or missing digests).
        """
        if not os.path.isfile(self.path):
            raise OutputLayoutError('No manifest in ' + self.directory)
        manifest = self.load()

        errors = []
        for name, value in sorted(manifest.items()):
            path = os.path.join(self.directory, name)
            if not os.path.isfile(path) \
               or hash_file(path, hashlib.md5()) != value:
                errors.append(name)

        return (not errors, errors)

    def digest(self, names):
        """
        Generate manifest.

        Args:
            names: Data files relative to the directory.
        """
        manifest = {}
        for name in names:
            path = os.path.join(self.directory, name)
            if not os.path.isfile(path):
                raise OutputLayoutError('Missing output file: ' + name)
            manifest[name] = hash_file(path, hashlib.md5())
        self.write(manifest)


class OutputLayout(object):
    """
    Output directory of one run.

    Data files are registered as they are written, close()
    writes the manifest.
    """

    def __init__(self, directory, fmt=JSON_FILE_SUFFIX):
        """
        Args:
            directory: Output directory.
            fmt: Format of structured files, json or bson.
        """
        if not fmt in SUPPORTED_FILE_FORMATS:
            raise OutputLayoutError('unsupported file format: ' + fmt)
        self.directory = os.path.abspath(directory)
        self.fmt = fmt
        self.files = []
        self.logger = Logger('output')
        if not os.path.exists(self.directory):
            os.makedirs(self.directory)

    def path(self, name):
        return os.path.join(self.directory, name)

    def _register(self, name):
        if not name in self.files:
            self.files.append(name)
        self.logger.info('wrote ' + self.path(name))

    def write_structured(self, name, content):
        """
        Write a structured file in the configured format.

        Args:
            name: File name without suffix.
            content: Serializable content.

        Returns:
            File name with suffix.
        """
        fname = file_name(name, self.fmt)
        f = SUPPORTED_FILE_FORMATS[self.fmt](self.directory, fname)
        f.write(content)
        self._register(fname)
        return fname

    def write_csv(self, name, header, rows):
        fname = file_name(name, 'csv')
        write_csv(self.path(fname), header, rows)
        self._register(fname)
        return fname

    def close(self):
        """
        Write the manifest of all registered files.
        """
        manifest = Manifest(self.directory)
        manifest.digest(self.files)
        return manifest

    def check(self):
        """
        Verify the directory against its manifest.
        """
        result, errors = Manifest(self.directory).check()
        if not result:
            raise IntegrityError('Manifest check failed: ' + ', '.join(errors))
        return result
