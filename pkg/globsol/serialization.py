#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
    serialization.py
    ~~~~~~~~~~~~~~~~

    json serialization of result objects

    Every result class provides a method serialize that returns a
    JSON compatible value. Classes that additionally provide a
    classmethod deserialize are written together with the name of
    their module and class, so they can be restored on reading.
    Only classes from trusted modules are restored: run configurations
    are read with the same hook.

    :copyright: (c) 2026 by the globsol authors
    :license: GPL-2, see LICENSE for more details.
"""

import importlib
import json

import numpy as np

MODULE_KEY = "python_module"
CLASS_KEY = "python_class"
VALUE_KEY = "value"

TRUSTED_MODULES = set(['globsol'])


def trust_module(name):
    """
    Allow classes of a module (and its submodules) to be restored.
    """
    TRUSTED_MODULES.add(name)


def is_trusted(module):
    return any(module == name or module.startswith(name + '.')
               for name in TRUSTED_MODULES)


def step_to_raw_serializable(obj):
    """
    One conversion step of an object the json library
    cannot write itself.

    Returns:
        Converted value, None if obj is not serializable.
    """
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    if not hasattr(obj, "serialize"):
        return None
    value = obj.serialize()
    if not hasattr(obj, "deserialize"):
        return value
    return {MODULE_KEY: obj.__class__.__module__,
            CLASS_KEY: obj.__class__.__name__,
            VALUE_KEY: value}


def to_raw_serializable(obj):
    """
    Convert an object tree to plain dicts, lists and scalars.
    """
    if obj is None or isinstance(obj, (str, bool, int, float)):
        return obj
    if isinstance(obj, dict):
        return {k: to_raw_serializable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_raw_serializable(item) for item in obj]
    sobj = step_to_raw_serializable(obj)
    if sobj is None:
        raise TypeError('Non serializable object: %r' % (obj,))
    return to_raw_serializable(sobj)


def step_from_raw_serializable(sobj):
    """
    Restore a wrapped object, other dicts are returned as they are.

    Raises:
        ValueError for classes outside the trusted modules.
    """
    if not CLASS_KEY in sobj:
        return sobj
    module = sobj.get(MODULE_KEY, '')
    if not is_trusted(module):
        raise ValueError('refusing to restore %s.%s' % (module, sobj[CLASS_KEY]))
    cls = getattr(importlib.import_module(module), sobj[CLASS_KEY], None)
    if cls is None or not hasattr(cls, "deserialize"):
        raise ValueError('no deserializable class %s.%s' % (module, sobj[CLASS_KEY]))
    return cls.deserialize(sobj[VALUE_KEY])


def from_raw_serializable(sobj):
    """
    Build objects from a raw tree, innermost first.
    """
    if isinstance(sobj, dict):
        return step_from_raw_serializable({k: from_raw_serializable(v)
                                           for k, v in sobj.items()})
    if isinstance(sobj, list):
        return [from_raw_serializable(item) for item in sobj]
    return sobj


class JSONSerializer(json.JSONEncoder):
    """
    Custom JSON encoder for result objects and numpy values.
    """
    def default(self, obj):
        res = step_to_raw_serializable(obj)
        if res is None:
            return json.JSONEncoder.default(self, obj)
        return res


def deserializeHook(json_object):
    """
    Custom JSON decoder hook, see step_from_raw_serializable.
    """
    return step_from_raw_serializable(json_object)


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True, cls=JSONSerializer)


def loads(text):
    return json.loads(text, object_hook=deserializeHook)
