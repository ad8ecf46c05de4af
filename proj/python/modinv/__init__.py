"""Invariant rings of modular p-groups generated by transvections."""

import json

from ._core import (
    Error,
    Group,
    InvariantRing,
    NotApplicable,
    ParseError,
    ResourceError,
    UsageError,
    ValidationError,
)
from ._core import analyze as _analyze
from ._core import survey as _survey


def analyze(group):
    """All applicable checks for one group, as a dict."""
    return json.loads(_analyze(group))


def survey(p, n, samples=20, exhaustive=False, seed=1, min_fixed_rank=0):
    """Returns (summary, records) for transvection groups of U_n(F_p)."""
    summary, records = _survey(p, n, samples, exhaustive, seed, min_fixed_rank)
    return json.loads(summary), [json.loads(r) for r in records]


__all__ = [
    "Error",
    "Group",
    "InvariantRing",
    "NotApplicable",
    "ParseError",
    "ResourceError",
    "UsageError",
    "ValidationError",
    "analyze",
    "survey",
]
