"""Exact laboratory for budget-constrained selling mechanisms.

All numeric values cross the boundary as exact fraction strings ("2", "5/3");
use fractions.Fraction to compute with them. Reports are plain dicts decoded
from the library's canonical JSON.
"""

import json as _json

from ._core import (
    BudgetlabError,
    Joint,
    Marginal,
    brev_budget,
    buyer_knapsack,
    cap_linf,
    check_dominance,
    rev_budget,
    rev_unbudgeted,
    srev_budget_exact,
    srev_budget_grid,
    srev_unbudgeted,
)
from . import _core

__all__ = [
    "BudgetlabError",
    "Joint",
    "Marginal",
    "brev_budget",
    "buyer_knapsack",
    "cap_linf",
    "check_core_tail_lemmas",
    "check_dominance",
    "check_variance_lemma",
    "fuzz",
    "reproduce_appendix_b",
    "rev_budget",
    "rev_unbudgeted",
    "solve",
    "srev_budget_exact",
    "srev_budget_grid",
    "srev_unbudgeted",
    "verify",
]

__version__ = "0.1.0"


def check_core_tail_lemmas(joint):
    """Single/Core/Tail decomposition bounds for a weakly correlated joint."""
    return _json.loads(_core.check_core_tail_lemmas(joint))


def check_variance_lemma(joint):
    """Truncated-sum concentration checks for a weakly correlated joint."""
    return _json.loads(_core.check_variance_lemma(joint))


def solve(instance, grid_only=False):
    """Rev^b, SRev^b (exact and grid) and BRev^b for an instance dict or JSON."""
    if not isinstance(instance, str):
        instance = _json.dumps(instance)
    return _json.loads(_core.solve_instance_json(instance, grid_only))


def verify(suite, instance):
    """Runs a lemma suite on one instance; returns (entries, violations)."""
    if not isinstance(instance, str):
        instance = _json.dumps(instance)
    entries, violations = _core.verify_instance_json(suite, instance)
    return _json.loads(entries), violations


def fuzz(suite, count, seed):
    """Seeded batch of generated instances; returns (entries, violations)."""
    entries, violations = _core.fuzz_suite(suite, count, seed)
    return _json.loads(entries), violations


def reproduce_appendix_b():
    """The revenue non-monotonicity example; returns (entries, violations)."""
    entries, violations = _core.reproduce_appendix_b()
    return _json.loads(entries), violations
