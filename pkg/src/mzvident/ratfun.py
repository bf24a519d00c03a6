"""Exact rational-function reduction for legal expressions.

Each legal term maps to a product of reciprocals of factors of the form
(prod_{j in S} x_j - 1), one factor per prefix-union of blocks within each
atom.  A linear combination of such terms vanishes identically iff, after
clearing the least common denominator, the numerator polynomial is zero.
Everything here is exact integer arithmetic; the probabilistic test uses
exact rationals and serves only as a fast pre-filter.
"""

from __future__ import annotations

import random
from collections import Counter
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import LegalTerm
from .indexsets import indices_of

# Sparse polynomial: map from exponent tuple (one slot per variable) to a
# nonzero integer coefficient.  The zero polynomial is the empty dict.
Monomial = tuple[int, ...]
Polynomial = dict[Monomial, int]

# A rational term is a product of denominator factors: support mask -> power.
RationalTermRep = Counter


def poly_zero() -> Polynomial:
    return {}


def poly_const(c: int, nvars: int) -> Polynomial:
    return {(0,) * nvars: c} if c else {}


def _check_same_arity(a: Polynomial, b: Polynomial) -> None:
    if a and b:
        la = len(next(iter(a)))
        lb = len(next(iter(b)))
        if la != lb:
            raise ValueError("polynomial universe mismatch")


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    _check_same_arity(a, b)
    out = dict(a)
    for mono, c in b.items():
        s = out.get(mono, 0) + c
        if s:
            out[mono] = s
        else:
            out.pop(mono, None)
    return out


def poly_scale(a: Polynomial, k: int) -> Polynomial:
    if k == 0:
        return {}
    return {mono: k * c for mono, c in a.items()}


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    _check_same_arity(a, b)
    out: Polynomial = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            mono = tuple(e1 + e2 for e1, e2 in zip(m1, m2))
            s = out.get(mono, 0) + c1 * c2
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
    return out


def factor_poly(support: int, nvars: int) -> Polynomial:
    """The polynomial (prod_{j in support} x_j) - 1."""
    mono = [0] * nvars
    for j in indices_of(support):
        mono[j - 1] = 1
    return poly_add({tuple(mono): 1}, poly_const(-1, nvars))


def rational_term_of(term: LegalTerm) -> RationalTermRep:
    """Denominator factorization of the rational function of a legal term.

    For each atom, the b-th factor's support is the union of the atom's
    first b blocks; multiplicities accumulate across atoms.
    """
    factors: RationalTermRep = Counter()
    for atom in term:
        prefix = 0
        for block in atom:
            prefix |= block
            factors[prefix] += 1
    return factors


def _lcd(terms: Sequence[tuple[int, Mapping[int, int]]]) -> Counter:
    lcd: Counter = Counter()
    for _, factors in terms:
        for support, mult in factors.items():
            if mult > lcd[support]:
                lcd[support] = mult
    return lcd


def is_zero_combination(
    terms: Sequence[tuple[int, Mapping[int, int]]], nvars: int
) -> bool:
    """Exact zero test by clearing denominators and expanding.

    `terms` are (integer coefficient, denominator factorization) pairs over
    the same nvars-variable universe.
    """
    lcd = _lcd(terms)
    total: Polynomial = {}
    for coeff, factors in terms:
        numer = poly_const(coeff, nvars)
        for support, mult in lcd.items():
            deficit = mult - factors.get(support, 0)
            fp = factor_poly(support, nvars)
            for _ in range(deficit):
                numer = poly_mul(numer, fp)
        total = poly_add(total, numer)
    return not total


def _term_value(
    coeff: int, factors: Mapping[int, int], point: Sequence[Fraction]
) -> Fraction:
    val = Fraction(coeff)
    for support, mult in factors.items():
        prod = Fraction(1)
        for j in indices_of(support):
            prod *= point[j - 1]
        val /= (prod - 1) ** mult
    return val


def probabilistic_zero_test(
    terms: Sequence[tuple[int, Mapping[int, int]]],
    nvars: int,
    trials: int = 5,
    seed: int = 0,
) -> bool:
    """Evaluate at seeded rational points with all coordinates > 1.

    Returns False on any nonzero evaluation; True means no refutation was
    found (confirm with is_zero_combination for a proof).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    for _ in range(trials):
        point = [
            1 + Fraction(rng.randint(1, 20), rng.randint(1, 20)) for _ in range(nvars)
        ]
        total = sum((_term_value(c, f, point) for c, f in terms), Fraction(0))
        if total:
            return False
    return True


def evaluate_cleared_numerator(
    terms: Sequence[tuple[int, Mapping[int, int]]],
    nvars: int,
    point: Sequence[Fraction],
) -> tuple[Fraction, Fraction]:
    """(numerator value, LCD value) at an exact rational point.

    Exposed for the exactness property: numerator == LCD * sum of terms.
    """
    lcd = _lcd(terms)
    lcd_val = Fraction(1)
    for support, mult in lcd.items():
        prod = Fraction(1)
        for j in indices_of(support):
            prod *= point[j - 1]
        lcd_val *= (prod - 1) ** mult
    total: Polynomial = {}
    for coeff, factors in terms:
        numer = poly_const(coeff, nvars)
        for support, mult in lcd.items():
            deficit = mult - factors.get(support, 0)
            fp = factor_poly(support, nvars)
            for _ in range(deficit):
                numer = poly_mul(numer, fp)
        total = poly_add(total, numer)
    num_val = Fraction(0)
    for mono, c in total.items():
        v = Fraction(c)
        for e, x in zip(mono, point):
            v *= x**e
        num_val += v
    return num_val, lcd_val


def rational_terms_of_expression(
    terms: Iterable[tuple[LegalTerm, int]]
) -> list[tuple[int, RationalTermRep]]:
    """Convenience: (coeff, denominator factorization) list for an expression."""
    return [(coeff, rational_term_of(term)) for term, coeff in terms]
