"""Rooted unordered trees: minors, common minors and supertrees."""

import json

from . import _core
from ._core import BudgetExceeded, ParseError, canonical, enumerate, isomorphic, normalize, size

__all__ = [
    "BudgetExceeded",
    "ParseError",
    "canonical",
    "enumerate",
    "find_minor",
    "is_minor",
    "isomorphic",
    "lcs",
    "normalize",
    "scan",
    "scs",
    "size",
    "verify",
]


def find_minor(s, t):
    """Node map of s into t as a dict, or None when s is not a minor of t."""
    found = _core.find_minor(s, t)
    return None if found is None else json.loads(found)


def is_minor(s, t):
    return _core.find_minor(s, t) is not None


def lcs(t1, t2, all_witnesses=False, jobs=0):
    return json.loads(_core.lcs(t1, t2, all_witnesses, jobs))


def scs(t1, t2, all_witnesses=False, max_size=None, jobs=0):
    return json.loads(_core.scs(t1, t2, all_witnesses, max_size, jobs))


def verify(p, r, s, jobs=0):
    return json.loads(_core.verify(p, r, s, jobs))


def scan(max_size, eq4=True, prop21=False, jobs=0):
    return json.loads(_core.scan(max_size, eq4, prop21, jobs))
