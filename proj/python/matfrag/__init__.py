"""Fragile matroid reductions over finite fields."""

import json

from ._core import (
    Error,
    Field,
    Matrix,
    Matroid,
    display_basis,
    fragile_partitions,
    is_minor,
    is_n_fragile,
    is_relaxation,
    relax_entry,
    suite_names,
    zero_out,
)
from . import _core

__all__ = [
    "Error",
    "Field",
    "Matrix",
    "Matroid",
    "display_basis",
    "fragile_partitions",
    "is_minor",
    "is_n_fragile",
    "is_relaxation",
    "load_instance",
    "normalize_instance",
    "pipeline",
    "relax_entry",
    "run_suite",
    "suite_names",
    "zero_out",
]


def _text(instance):
    return instance if isinstance(instance, str) else json.dumps(instance)


def load_instance(instance):
    """Parse an instance (JSON text or dict) into (Matroid, task dict or None)."""
    matroid, task = _core._parse_instance(_text(instance))
    return matroid, json.loads(task)


def normalize_instance(instance):
    """Canonical JSON text of a validated instance."""
    return _core._normalize_instance(_text(instance))


def pipeline(M, N, conformance=False):
    """Run the full reduction and return its trace as a dict."""
    return json.loads(_core._pipeline(M, N, conformance))


def run_suite(name, seed=1, conformance=False):
    """Run a named verification suite and return its report as a dict."""
    return json.loads(_core._run_suite(name, seed, conformance))
