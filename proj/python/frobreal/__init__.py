"""Frobenius structures on cohomology rings, their axioms, and automorphism coset counts."""

import json

from ._core import (
    BudgetExceeded,
    Structure,
    algebra_automorphisms,
    build_structure,
    canonical_spec,
    census,
    graded_linear_order,
    report_table,
    run,
    structure_from_json,
    top_degree,
)
from . import _core

__all__ = [
    "BudgetExceeded",
    "Structure",
    "algebra_automorphisms",
    "build_structure",
    "canonical_spec",
    "census",
    "check_axioms",
    "graded_linear_order",
    "orbit",
    "report",
    "report_table",
    "run",
    "structure_from_json",
    "top_degree",
]


def check_axioms(structure):
    """Axiom report as a dict with one verdict per relation."""
    return json.loads(structure.check_axioms_json())


def orbit(spec, q, target="algebra", budget=None):
    return json.loads(_core.orbit(spec, q, target, budget))


def report(spec, q, budget=None):
    """Full coset-count report as a dict."""
    return json.loads(_core.report_json(spec, q, budget))
