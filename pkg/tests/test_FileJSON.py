#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
    test_FileJSON.py
    ~~~~~~~~~~~~~~~~

    FileJSON and CSV file test suite

    :copyright: (c) 2026 by the globsol authors
    :license: GPL-2, see LICENSE for more details.
"""

import json
import os
import unittest

import numpy as np

from globsol.fileutils import FileJSON, read_csv, write_csv
from globsol.exceptions import FileJSONError

from tests.base import BaseTest
from tests.serializable import (ArrayHolder, DeserializableClass,
                                NonSerializableClass, SerializableClass)


class TestFileJSON(BaseTest):
    def setUp(self):
        super(TestFileJSON, self).setUp()
        self.directory = os.path.join(self.tempdir.name, 'tst')
        self.name = 'tst.json'
        self.path = os.path.join(self.directory, self.name)

    def test_read_nonexistent(self):
        fj = FileJSON(self.directory, self.name, [])
        content = fj.read()
        self.assertEqual(content, {})
        self.assertTrue(os.path.isfile(self.path))

    def test_read_nonexistent_mandatory_key(self):
        fj = FileJSON(self.directory, self.name, ["mandatory1", "mandatory2"])
        content = fj.read()
        self.assertEqual(content, {"mandatory1":"", "mandatory2":""})
        self.assertTrue(os.path.isfile(self.path))

    def test_load_nonexistent(self):
        fj = FileJSON(self.directory, self.name, [])
        self.assertRaises(FileJSONError, fj.load)
        self.assertFalse(os.path.isfile(self.path))

    def test_read_lack_of_mandatory_key(self):
        fj = FileJSON(self.directory, self.name, ["mandatory"])
        os.makedirs(self.directory)
        with open(self.path, 'w') as f:
            json.dump({"test":"test"}, f)
        self.assertRaises(FileJSONError, fj.read)

    def test_read_malformed(self):
        fj = FileJSON(self.directory, self.name, [])
        os.makedirs(self.directory)
        with open(self.path, 'w') as f:
            f.write('{"test": ')
        self.assertRaises(FileJSONError, fj.load)

    def test_write_lack_of_mandatory_key(self):
        fj = FileJSON(self.directory, self.name, ["mandatory"])
        self.assertRaises(FileJSONError, fj.write, {"test":"test"})

    def test_write_read(self):
        fj = FileJSON(self.directory, self.name, ["mandatory"])
        content = {"mandatory":"1", "test":"2"}
        fj.write(content)
        content_r = fj.read()
        self.assertEqual(content, content_r)

    def test_write_deterministic(self):
        fj = FileJSON(self.directory, self.name, [])
        fj.write({"b": 0.1, "a": [1, 2]})
        with open(self.path) as f:
            first = f.read()
        fj.write({"a": [1, 2], "b": 0.1})
        with open(self.path) as f:
            second = f.read()
        self.assertEqual(first, second)
        self.assertTrue(first.endswith('\n'))

    def test_serializable(self):
        fj = FileJSON(self.directory, self.name, [])
        content = SerializableClass("1", "2")
        fj.write(content)
        content_r = fj.read()
        self.assertEqual(content_r, {"field1":"1", "field2":"2"})
        self.assertRaises(TypeError, fj.write, NonSerializableClass())

    def test_deserializable(self):
        fj = FileJSON(self.directory, self.name, [])
        content = DeserializableClass("1", "2")
        fj.write(content)
        content_r = fj.read()
        self.assertEqual(content, content_r)

    def test_deserializable_collection(self):
        fj = FileJSON(self.directory, self.name, [])
        content = {"items": [DeserializableClass("1", "2"), DeserializableClass("3", "4")]}
        fj.write(content)
        content_r = fj.read()
        self.assertEqual(content, content_r)

    def test_numpy(self):
        fj = FileJSON(self.directory, self.name, [])
        content = ArrayHolder([0.1, 1e-300, 6.0])
        fj.write({"holder": content, "scalar": np.float64(0.5), "count": np.int64(3)})
        content_r = fj.read()
        self.assertEqual(content_r["holder"], content)
        self.assertEqual(content_r["scalar"], 0.5)
        self.assertEqual(content_r["count"], 3)

    def test_untrusted_module(self):
        os.makedirs(self.directory)
        with open(self.path, 'w') as f:
            f.write('{"python_module": "os", "python_class": "Popen", "value": "ls"}')
        self.assertRaises(FileJSONError, FileJSON(self.directory, self.name, []).load)


class TestCSV(BaseTest):

    def test_full_precision(self):
        path = os.path.join(self.tempdir.name, 'sub', 'tst.csv')
        rows = [[0.1, 1.0 / 3.0, -2.0e-17], [np.pi, np.e, 1e300]]
        write_csv(path, ['a', 'b', 'c'], rows)
        header, data = read_csv(path)
        self.assertEqual(header, ['a', 'b', 'c'])
        self.assertTrue(np.array_equal(data, np.array(rows)))

    def test_empty(self):
        path = os.path.join(self.tempdir.name, 'tst.csv')
        write_csv(path, ['x', 'f'], [])
        with open(path) as f:
            self.assertEqual(f.read().strip(), 'x,f')


def suite():
    suite = unittest.TestSuite()
    suite.addTest(TestFileJSON('test_read_nonexistent'))
    suite.addTest(TestFileJSON('test_read_nonexistent_mandatory_key'))
    suite.addTest(TestFileJSON('test_load_nonexistent'))
    suite.addTest(TestFileJSON('test_read_lack_of_mandatory_key'))
    suite.addTest(TestFileJSON('test_read_malformed'))
    suite.addTest(TestFileJSON('test_write_lack_of_mandatory_key'))
    suite.addTest(TestFileJSON('test_write_read'))
    suite.addTest(TestFileJSON('test_write_deterministic'))
    suite.addTest(TestFileJSON('test_serializable'))
    suite.addTest(TestFileJSON('test_deserializable'))
    suite.addTest(TestFileJSON('test_deserializable_collection'))
    suite.addTest(TestFileJSON('test_numpy'))
    suite.addTest(TestFileJSON('test_untrusted_module'))
    suite.addTest(TestCSV('test_full_precision'))
    suite.addTest(TestCSV('test_empty'))
    return suite
