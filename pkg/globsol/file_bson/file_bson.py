#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
    file_bson.py
    ~~~~~~~~~~~~

    bson storage of result files

    :copyright: (c) 2026 by the globsol authors
    :license: GPL-2, see LICENSE for more details.
"""

import bson
from bson.errors import BSONError

from globsol.exceptions import FileJSONError
from globsol.fileutils import FileJSONData
from globsol.serialization import from_raw_serializable, to_raw_serializable

# BSON documents are mappings, other results are stored under this key
WRAPPED_KEY = "__wrapped__"


class FileBSON(FileJSONData):
    """
    BSON result file. Uses the serialization protocol of the JSON
    result files, so any result object can be stored.
    """

    def read_content(self):
        with open(self.path, 'rb') as f:
            data = f.read()
        try:
            raw = bson.BSON(data).decode()
        except (BSONError, ValueError) as e:
            raise FileJSONError('failed to parse ' + self.path + ': ' + str(e))
        if list(raw) == [WRAPPED_KEY]:
            raw = raw[WRAPPED_KEY]
        try:
            return from_raw_serializable(raw)
        except ValueError as e:
            raise FileJSONError('failed to restore ' + self.path + ': ' + str(e))

    def write_content(self, content):
        raw = to_raw_serializable(content)
        if not isinstance(raw, dict):
            raw = {WRAPPED_KEY: raw}
        with open(self.path, 'wb') as f:
            f.write(bson.BSON.encode(raw))
