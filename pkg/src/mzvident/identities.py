"""Named identity generators and the multi-method verification driver.

Generators return expressions that vanish identically by construction:
the stuffle expansion of a product of two zeta factors, and Hoffman's
symmetric-sum identity relating all permutations of depth-n arguments
to products of depth-1 factors over unordered partitions.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import factorial
from typing import Optional, Sequence

from .algebra import (
    Block,
    Expression,
    ZetaAtom,
    atom_support,
    is_partition_identity,
    stuffle_product,
)
from .indexsets import full_universe
from .numeric import DEFAULT_TRUNCATION, ROUNDING_TOL, random_assignment, residual_report
from .partitions import unordered_set_partitions
from .ratfun import is_zero_combination, rational_terms_of_expression

HOFFMAN_CAP = 7

METHODS = ("canonical", "rational", "numeric")


@dataclass
class IdentityReport:
    """Outcome of verifying an expression by one or more methods."""

    verdict: str  # "identity" or "not-identity"
    witness: Optional[tuple[tuple[Block, ...], int]]
    methods_run: list[str]
    agreement: bool
    numeric_residual: Optional[float] = None
    per_method: dict[str, bool] = field(default_factory=dict)

    @property
    def is_identity(self) -> bool:
        return self.verdict == "identity"


def stuffle_identity(u: ZetaAtom, v: ZetaAtom) -> Expression:
    """zeta(u)*zeta(v) minus its stuffle expansion (zero by construction)."""
    if not u and not v:
        return Expression(0, {})
    universe = atom_support(u) | atom_support(v)
    product = stuffle_product(u, v)
    entries: list[tuple[int, tuple[ZetaAtom, ...]]] = []
    if u and v:
        entries.append((1, (u, v)))
    elif u or v:
        entries.append((1, (u or v,)))
    for w, mult in product.items():
        entries.append((-mult, (w,)))
    return Expression.build(universe, entries)


def hoffman_identity(n: int, cap: int = HOFFMAN_CAP) -> Expression:
    """Symmetric-sum identity: n! permutation terms minus the
    signed products of depth-1 factors over unordered partitions."""
    if n < 1 or n > cap:
        raise ValueError(f"n must be in 1..{cap}")
    universe = full_universe(n)
    entries: list[tuple[int, tuple[ZetaAtom, ...]]] = []
    for perm in itertools.permutations(range(1, n + 1)):
        atom = tuple(1 << (j - 1) for j in perm)
        entries.append((1, (atom,)))
    for parts in unordered_set_partitions(universe):
        coeff = (-1) ** (n - len(parts))
        for p in parts:
            coeff *= factorial(p.bit_count() - 1)
        atoms = tuple((p,) for p in parts)
        entries.append((-coeff, atoms))
    return Expression.build(universe, entries)


def verify(
    expr: Expression,
    methods: Sequence[str] = METHODS,
    n_trunc: int = DEFAULT_TRUNCATION,
    seed: int = 0,
    numeric_trials: int = 5,
    numeric_tol: float = ROUNDING_TOL,
) -> IdentityReport:
    """Run the requested verification methods and collate a report.

    The canonical method is authoritative for the verdict; if it was not
    requested it is run anyway to decide.  The numeric method compares the
    relative residual of seeded random evaluations against `numeric_tol`
    and never overrides exact verdicts.
    """
    methods = list(methods)
    for m in methods:
        if m not in METHODS:
            raise ValueError(f"unknown method: {m}")

    ok, witness = is_partition_identity(expr)
    per_method: dict[str, bool] = {}
    if "canonical" in methods:
        per_method["canonical"] = ok

    if "rational" in methods:
        rats = rational_terms_of_expression(expr.terms.items())
        per_method["rational"] = is_zero_combination(rats, expr.universe.bit_length())

    residual: Optional[float] = None
    if "numeric" in methods:
        rng = random.Random(seed)
        worst = 0.0
        for _ in range(numeric_trials):
            assign = random_assignment(expr.universe, rng)
            _, rel = residual_report(expr, assign, n_trunc)
            worst = max(worst, rel)
        residual = worst
        per_method["numeric"] = worst <= numeric_tol

    agreement = all(v == ok for v in per_method.values())
    return IdentityReport(
        verdict="identity" if ok else "not-identity",
        witness=None if ok else witness,
        methods_run=methods,
        agreement=agreement,
        numeric_residual=residual,
        per_method=per_method,
    )


def random_legal_term(universe: int, rng: random.Random) -> tuple[ZetaAtom, ...]:
    """Seeded uniform-ish legal term: pick an unordered partition, then an
    ordered subpartition of each part."""
    from .partitions import ordered_set_partitions

    parts = rng.choice(unordered_set_partitions(universe))
    atoms = tuple(rng.choice(ordered_set_partitions(p)) for p in parts)
    return atoms


def random_expression(
    universe: int,
    rng: random.Random,
    max_terms: int = 4,
    coeff_range: tuple[int, int] = (-3, 3),
) -> Expression:
    """Seeded random legal expression used by cross-method agreement tests."""
    entries = []
    for _ in range(rng.randint(1, max_terms)):
        coeff = rng.randint(*coeff_range)
        entries.append((coeff, random_legal_term(universe, rng)))
    return Expression.build(universe, entries)
