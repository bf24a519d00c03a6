"""Truncated nested-sum evaluation used as a numeric cross-check.

The truncated sum over N > k_1 > ... > k_n > 0 of prod k_j^(-s_j) obeys the
stuffle multiplication rule exactly in real arithmetic, so every identity
that normalizes to zero also evaluates to zero at every truncation level;
observed residuals measure only floating-point rounding.
"""

from __future__ import annotations

import math
import random
from typing import Mapping, Sequence

from .algebra import Expression
from .indexsets import indices_of

DEFAULT_TRUNCATION = 50
ROUNDING_TOL = 1e-10

Assignment = Mapping[int, float]  # variable index -> value > 1


def check_assignment(assign: Assignment, universe: int) -> None:
    for j in indices_of(universe):
        if j not in assign:
            raise ValueError(f"no value assigned to s{j}")
        if assign[j] <= 1:
            raise ValueError(f"s{j} must exceed 1")


def eval_zeta_truncated(exponents: Sequence[float], n_trunc: int) -> float:
    """Sum over N > k_1 > ... > k_d > 0 of prod k_j^(-s_j).

    Dynamic program over suffixes, O(N * depth).  Summation runs
    largest-k-first to limit cancellation growth.
    """
    depth = len(exponents)
    if depth == 0:
        raise ValueError("empty exponent tuple")
    if n_trunc < 2:
        raise ValueError("truncation level must be >= 2")
    if depth >= n_trunc:
        raise ValueError("truncation too small")
    # tail[k] = sum over suffix tuples whose leading index is k.
    tail = [0.0] * n_trunc
    for level in range(depth - 1, -1, -1):
        s = exponents[level]
        is_last = level == depth - 1
        new = [0.0] * n_trunc
        below = 0.0  # sum of tail[1:k], built incrementally
        for k in range(1, n_trunc):
            new[k] = k ** (-s) * (1.0 if is_last else below)
            below += tail[k]
        tail = new
    # Largest k contributes the smallest magnitude; add those first.
    return math.fsum(tail[n_trunc - 1 : 0 : -1])


def eval_term(term, assign: Assignment, n_trunc: int) -> float:
    value = 1.0
    for atom in term:
        exps = [sum(assign[j] for j in indices_of(block)) for block in atom]
        value *= eval_zeta_truncated(exps, n_trunc)
    return value


def eval_expression(expr: Expression, assign: Assignment, n_trunc: int) -> float:
    """Evaluate a legal expression at a truncation level."""
    check_assignment(assign, expr.universe)
    return math.fsum(
        coeff * eval_term(term, assign, n_trunc) for term, coeff in expr.terms.items()
    )


def residual_report(
    expr: Expression, assign: Assignment, n_trunc: int
) -> tuple[float, float]:
    """(absolute residual, residual relative to the sum of term magnitudes)."""
    check_assignment(assign, expr.universe)
    values = [coeff * eval_term(term, assign, n_trunc) for term, coeff in expr.terms.items()]
    magnitude = math.fsum(abs(v) for v in values)
    if magnitude == 0.0:
        return 0.0, 0.0
    total = abs(math.fsum(values))
    return total, total / magnitude


def random_assignment(universe: int, rng: random.Random) -> dict[int, float]:
    """Seeded draw of exponents from (1.1, 3.0] for every universe variable."""
    return {j: 1.1 + 1.9 * rng.random() for j in indices_of(universe)}
