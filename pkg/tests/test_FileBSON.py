#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
    test_FileBSON.py
    ~~~~~~~~~~~~~~~~

    FileBSON test suite

    :copyright: (c) 2026 by the globsol authors
    :license: GPL-2, see LICENSE for more details.
"""

import os
import unittest

import numpy as np

from globsol.checks import NO_SOLUTIONS, Verdict
from globsol.exceptions import FileJSONError
from globsol.integrate import integrate_to
from globsol.problem import PhasePoint, PhiModel

from tests.base import BaseTest
from tests.serializable import NonSerializableClass, SerializableClass, DeserializableClass

BSON_INSTALLED = False

try:
    from globsol.file_bson.file_bson import FileBSON
    BSON_INSTALLED = True
except ImportError as e:
    pass

if BSON_INSTALLED:

    class TestFileBSON(BaseTest):
        def setUp(self):
            super(TestFileBSON, self).setUp()
            self.directory = os.path.join(self.tempdir.name, 'tst')
            self.name = 'tst.bson'
            self.path = os.path.join(self.directory, self.name)

        def test_write_read(self):
            fj = FileBSON(self.directory, self.name, ["mandatory"])
            content = {"mandatory":"1", "test":"2"}
            fj.write(content)
            content_r = fj.read()
            self.assertEqual(content, content_r)

        def test_serializable(self):
            fj = FileBSON(self.directory, self.name, [])
            content = SerializableClass("1", "2")
            fj.write(content)
            content_r = fj.read()
            self.assertEqual(content_r, {"field1":"1", "field2":"2"})
            self.assertRaises(TypeError, fj.write, NonSerializableClass())

        def test_wrapped(self):
            fj = FileBSON(self.directory, self.name, [])
            content = [DeserializableClass("1", "2"), DeserializableClass("3", "4")]
            fj.write(content)
            self.assertEqual(fj.read(), content)
            verdict = Verdict(NO_SOLUTIONS, [('integral_necessary', 2.5)])
            fj.write(verdict)
            self.assertEqual(fj.read().witnesses, [('integral_necessary', 2.5)])

        def test_results(self):
            fj = FileBSON(self.directory, self.name, [])
            phi = PhiModel.hermite_gaussian(0.12)
            traj = integrate_to(PhasePoint(6.0, -12.0, 1.0), 2.0, PhiModel.constant(0.0))
            fj.write({"phi": phi, "trajectory": traj})
            content = fj.read()
            self.assertEqual(content["phi"], phi)
            self.assertTrue(np.array_equal(content["trajectory"].fs, traj.fs))

        def test_malformed(self):
            os.makedirs(self.directory)
            with open(self.path, 'wb') as f:
                f.write(b'\x05\x00')
            self.assertRaises(FileJSONError, FileBSON(self.directory, self.name, []).load)

    def suite():
        suite = unittest.TestSuite()
        suite.addTest(TestFileBSON('test_write_read'))
        suite.addTest(TestFileBSON('test_serializable'))
        suite.addTest(TestFileBSON('test_wrapped'))
        suite.addTest(TestFileBSON('test_results'))
        suite.addTest(TestFileBSON('test_malformed'))
        return suite

else:
    def suite():
        suite = unittest.TestSuite()
        return suite
