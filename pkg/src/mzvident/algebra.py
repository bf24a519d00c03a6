"""The algebra of legal zeta terms and expressions.

A Block is a bitmask of variable indices and stands for the argument
sum of those variables.  A zeta atom is an ordered tuple of disjoint
blocks, i.e. one zeta(...) factor.  A legal term is a collection of
atoms whose blocks jointly partition the universe {1..n}: each
variable is used exactly once.  An expression is an integer-linear
combination of legal terms over a shared universe.

Normalization multiplies out each term's atoms with the stuffle
(quasi-shuffle) product, yielding a linear combination of single zeta
factors indexed by ordered set partitions of the universe.  The
expression vanishes identically iff every canonical coefficient is
zero.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Mapping, Optional

from .indexsets import indices_of, min_index

Block = int  # non-empty bitmask
ZetaAtom = tuple[Block, ...]  # ordered, disjoint, non-empty blocks
LegalTerm = tuple[ZetaAtom, ...]  # atoms sorted by smallest index


class LegalityError(ValueError):
    """An atom collection fails the legal-term rules."""


def atom_support(atom: ZetaAtom) -> int:
    m = 0
    for b in atom:
        m |= b
    return m


def canonical_atoms(atoms: Iterable[ZetaAtom]) -> LegalTerm:
    """Sort atoms by the smallest variable index occurring in them."""
    return tuple(sorted(atoms, key=lambda a: min_index(atom_support(a))))


def validate_legal_term(atoms: Iterable[ZetaAtom], universe: int) -> LegalTerm:
    """Canonicalize `atoms` as a legal term for `universe` or raise."""
    atoms = tuple(atoms)
    seen = 0
    for atom in atoms:
        if not atom:
            raise LegalityError("empty atom")
        for block in atom:
            if not block:
                raise LegalityError("empty block")
            if seen & block:
                clash = min_index(seen & block)
                raise LegalityError(f"variable reused: s{clash}")
            seen |= block
    if seen & ~universe:
        extra = min_index(seen & ~universe)
        raise LegalityError(f"variable outside universe: s{extra}")
    if seen != universe:
        missing = min_index(universe & ~seen)
        raise LegalityError(f"variable missing: s{missing}")
    return canonical_atoms(atoms)


@dataclass(frozen=True)
class Expression:
    """Integer-linear combination of legal terms over a fixed universe."""

    universe: int
    terms: Mapping[LegalTerm, int] = field(default_factory=dict)

    @staticmethod
    def build(universe: int, entries: Iterable[tuple[int, Iterable[ZetaAtom]]]) -> "Expression":
        """Sum coeff * term pairs, validating each term."""
        acc: dict[LegalTerm, int] = {}
        for coeff, atoms in entries:
            term = validate_legal_term(atoms, universe)
            c = acc.get(term, 0) + coeff
            if c:
                acc[term] = c
            else:
                acc.pop(term, None)
        return Expression(universe, acc)

    def __add__(self, other: "Expression") -> "Expression":
        if self.universe != other.universe:
            raise LegalityError("universe mismatch")
        acc = dict(self.terms)
        for term, coeff in other.terms.items():
            c = acc.get(term, 0) + coeff
            if c:
                acc[term] = c
            else:
                acc.pop(term, None)
        return Expression(self.universe, acc)

    def __neg__(self) -> "Expression":
        return Expression(self.universe, {t: -c for t, c in self.terms.items()})

    def __sub__(self, other: "Expression") -> "Expression":
        return self + (-other)

    def scale(self, k: int) -> "Expression":
        if k == 0:
            return Expression(self.universe, {})
        return Expression(self.universe, {t: k * c for t, c in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Expression):
            return NotImplemented
        return self.universe == other.universe and dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash((self.universe, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[LegalTerm, int]]:
        return sorted(self.terms.items(), key=lambda kv: _term_sort_key(kv[0]))


def _term_sort_key(term: LegalTerm):
    return (
        len(term),
        tuple((len(atom), tuple(indices_of(b) for b in atom)) for atom in term),
    )


def partition_sort_key(parts: tuple[Block, ...]):
    return (len(parts), tuple(indices_of(b) for b in parts))


@dataclass(frozen=True)
class CanonicalForm:
    """Linear combination of single zeta factors indexed by ordered partitions."""

    universe: int
    coeffs: Mapping[tuple[Block, ...], int] = field(default_factory=dict)

    def is_zero(self) -> bool:
        return not self.coeffs

    def sorted_coeffs(self) -> list[tuple[tuple[Block, ...], int]]:
        return sorted(self.coeffs.items(), key=lambda kv: partition_sort_key(kv[0]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CanonicalForm):
            return NotImplemented
        return self.universe == other.universe and dict(self.coeffs) == dict(other.coeffs)

    def __hash__(self) -> int:
        return hash((self.universe, frozenset(self.coeffs.items())))


StuffleResult = Counter  # tuple of blocks -> multiplicity


def stuffle_product(u: ZetaAtom, v: ZetaAtom) -> StuffleResult:
    """Multiset of interleavings-with-merges of two disjoint block tuples.

    Implements the three-branch recursion: take the head of u, take the
    head of v, or merge both heads (block union standing in for the sum
    of two scalar arguments), with u * () = () * u = {u}.
    """
    if atom_support(u) & atom_support(v):
        raise LegalityError("operands share a variable")
    return _stuffle(u, v)


def _stuffle(u: ZetaAtom, v: ZetaAtom) -> StuffleResult:
    if not u:
        return Counter({v: 1})
    if not v:
        return Counter({u: 1})
    s, ru = u[0], u[1:]
    t, rv = v[0], v[1:]
    out: StuffleResult = Counter()
    for w, m in _stuffle(ru, v).items():
        out[(s,) + w] += m
    for w, m in _stuffle(u, rv).items():
        out[(t,) + w] += m
    for w, m in _stuffle(ru, rv).items():
        out[(s | t,) + w] += m
    return out


def stuffle_size(m: int, n: int) -> int:
    """Closed-form size of the stuffle multiset for tuple lengths m, n."""
    return sum(comb(m, k) * comb(n, k) * 2**k for k in range(min(m, n) + 1))


def normalize(expr: Expression) -> CanonicalForm:
    """Expand every term into single zeta factors via repeated stuffles."""
    acc: dict[tuple[Block, ...], int] = {}
    for term, coeff in expr.terms.items():
        folded: Counter = Counter()
        first, *rest = term
        folded[first] = 1
        for atom in rest:
            nxt: Counter = Counter()
            for w, m in folded.items():
                for w2, m2 in _stuffle(w, atom).items():
                    nxt[w2] += m * m2
            folded = nxt
        for parts, mult in folded.items():
            c = acc.get(parts, 0) + coeff * mult
            if c:
                acc[parts] = c
            else:
                acc.pop(parts, None)
    return CanonicalForm(expr.universe, acc)


def is_partition_identity(
    expr: Expression,
) -> tuple[bool, Optional[tuple[tuple[Block, ...], int]]]:
    """True iff the expression vanishes identically.

    On failure returns a refutation witness: one ordered partition of
    the universe together with its nonzero canonical coefficient.
    """
    canon = normalize(expr)
    if canon.is_zero():
        return True, None
    parts, coeff = min(canon.coeffs.items(), key=lambda kv: partition_sort_key(kv[0]))
    return False, (parts, coeff)
