"""Tier-based complexity analysis for a small object-oriented language."""

import json

from . import _core
from ._core import SCHEMA, AnalysisError, flatten, parse

__all__ = [
    "SCHEMA",
    "AnalysisError",
    "parse",
    "flatten",
    "infer",
    "safety",
    "bound",
    "run",
    "verdicts",
]


def infer(source):
    """Tier inference report as a dict."""
    return json.loads(_core.infer_json(source))


def safety(source):
    """Safety report as a dict."""
    return json.loads(_core.safety_json(source))


def bound(source, validate=(), per_loop=False, budget=10_000_000):
    """Bound report; `validate` lists sizes substituted for `int n` in Init."""
    return json.loads(_core.bound_json(source, list(validate), per_loop, budget))


def run(source, budget=10_000_000):
    """Run Init then Comp and return metrics and final main variables."""
    return json.loads(_core.run_json(source, budget))


def verdicts(source):
    """Catalogue verdicts: typable, safe, n1, nu, lambda."""
    return json.loads(_core.verdicts_json(source))
