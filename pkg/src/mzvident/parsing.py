"""Text grammar for legal expressions, plus serialization.

Grammar (whitespace-insensitive):

    expr        := ['-'] term { ('+'|'-') term }
    term        := [ integer '*' ] factor { '*' factor }
    factor      := 'zeta' '(' arg { ',' arg } ')'
    arg         := var { '+' var }
    var         := 's' positive-integer

Each variable must appear exactly once per term; the universe is the union
of the indices (and must agree across terms) unless declared explicitly.
The bare string "0" denotes the zero expression.

The structured output format is JSON with stable, documented field names;
see README for the schema.
"""

from __future__ import annotations

import json
import re
from typing import Optional

from .algebra import (
    CanonicalForm,
    Expression,
    LegalityError,
    StuffleResult,
    ZetaAtom,
)
from .identities import IdentityReport
from .indexsets import full_universe, indices_of, mask_of


class ParseError(ValueError):
    """Syntax or legality error in expression text, with position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


_TOKEN_RE = re.compile(
    r"""\s*(?:
        (?P<var>s(?P<varidx>\d+))
      | (?P<int>\d+)
      | (?P<zeta>zeta)
      | (?P<op>[+\-*(),])
    )""",
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}", pos)
        if m.group("var"):
            tokens.append(("var", m.group("varidx"), m.start("var")))
        elif m.group("int"):
            tokens.append(("int", m.group("int"), m.start("int")))
        elif m.group("zeta"):
            tokens.append(("zeta", "zeta", m.start("zeta")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, value: Optional[str] = None) -> tuple[str, str, int]:
        tok = self.next()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            raise ParseError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", tok[2])
        return tok

    def parse_arg(self) -> int:
        """arg := var { '+' var } -> block mask."""
        indices = []
        while True:
            kind, val, pos = self.expect("var")
            idx = int(val)
            if idx == 0:
                raise ParseError("variable index must be >= 1", pos)
            indices.append(idx)
            if self.peek()[:2] == ("op", "+"):
                self.next()
            else:
                break
        try:
            return mask_of(indices)
        except ValueError as e:
            raise ParseError(str(e), pos) from None

    def parse_factor(self) -> ZetaAtom:
        self.expect("zeta")
        self.expect("op", "(")
        blocks = [self.parse_arg()]
        while self.peek()[:2] == ("op", ","):
            self.next()
            blocks.append(self.parse_arg())
        self.expect("op", ")")
        return tuple(blocks)

    def parse_term(self) -> tuple[int, list[ZetaAtom]]:
        coeff = 1
        if self.peek()[0] == "int":
            coeff = int(self.next()[1])
            self.expect("op", "*")
        atoms = [self.parse_factor()]
        while self.peek()[:2] == ("op", "*"):
            self.next()
            atoms.append(self.parse_factor())
        return coeff, atoms

    def parse_expr(self) -> list[tuple[int, list[ZetaAtom]]]:
        entries = []
        sign = 1
        if self.peek()[:2] == ("op", "-"):
            self.next()
            sign = -1
        coeff, atoms = self.parse_term()
        entries.append((sign * coeff, atoms))
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = 1 if self.next()[1] == "+" else -1
            coeff, atoms = self.parse_term()
            entries.append((sign * coeff, atoms))
        self.expect("eof")
        return entries


def parse(text: str, universe: Optional[int] = None) -> Expression:
    """Parse expression text; `universe` declares the variable count n."""
    declared = full_universe(universe) if universe else None
    if text.strip() == "0":
        return Expression(declared or 0, {})
    parser = _Parser(text)
    entries = parser.parse_expr()
    supports = []
    for _, atoms in entries:
        m = 0
        for atom in atoms:
            for block in atom:
                m |= block
        supports.append(m)
    inferred = supports[0]
    for s in supports[1:]:
        if s != inferred:
            raise ParseError("terms over different variable sets", 0)
    target = declared if declared is not None else inferred
    try:
        return Expression.build(target, entries)
    except LegalityError as e:
        raise ParseError(str(e), 0) from None


def block_text(block: int) -> str:
    return "+".join(f"s{j}" for j in indices_of(block))


def atom_text(atom: ZetaAtom) -> str:
    return "zeta(" + ",".join(block_text(b) for b in atom) + ")"


def _signed_join(pieces: list[tuple[int, str]]) -> str:
    if not pieces:
        return "0"
    out = []
    for i, (coeff, body) in enumerate(pieces):
        mag = abs(coeff)
        prefix = "" if mag == 1 else f"{mag}*"
        if i == 0:
            sign = "-" if coeff < 0 else ""
            out.append(f"{sign}{prefix}{body}")
        else:
            sign = "-" if coeff < 0 else "+"
            out.append(f" {sign} {prefix}{body}")
    return "".join(out)


def expression_text(expr: Expression) -> str:
    pieces = [
        (coeff, "*".join(atom_text(a) for a in term))
        for term, coeff in expr.sorted_terms()
    ]
    return _signed_join(pieces)


def canonical_text(canon: CanonicalForm) -> str:
    pieces = [(coeff, atom_text(parts)) for parts, coeff in canon.sorted_coeffs()]
    return _signed_join(pieces)


def stuffle_text(result: StuffleResult) -> str:
    pieces = [
        (mult, atom_text(w))
        for w, mult in sorted(
            result.items(), key=lambda kv: (len(kv[0]), tuple(indices_of(b) for b in kv[0]))
        )
    ]
    return _signed_join(pieces)


def report_text(report: IdentityReport) -> str:
    lines = [f"verdict: {report.verdict}"]
    for m in report.methods_run:
        lines.append(f"method {m}: {'identity' if report.per_method[m] else 'not-identity'}")
    if report.numeric_residual is not None:
        lines.append(f"numeric relative residual: {report.numeric_residual:.3e}")
    lines.append(f"agreement: {'yes' if report.agreement else 'no'}")
    if report.witness is not None:
        parts, coeff = report.witness
        lines.append(f"witness: {coeff}*{atom_text(parts)}")
    return "\n".join(lines)


# --- structured (JSON) encoding -------------------------------------------


def _blocks_json(atom: ZetaAtom) -> list[list[int]]:
    return [list(indices_of(b)) for b in atom]


def expression_json(expr: Expression) -> dict:
    return {
        "kind": "expression",
        "universe": expr.universe.bit_length(),
        "terms": [
            {"coeff": coeff, "atoms": [_blocks_json(a) for a in term]}
            for term, coeff in expr.sorted_terms()
        ],
    }


def canonical_json(canon: CanonicalForm) -> dict:
    return {
        "kind": "canonical",
        "universe": canon.universe.bit_length(),
        "coeffs": [
            {"coeff": coeff, "parts": _blocks_json(parts)}
            for parts, coeff in canon.sorted_coeffs()
        ],
    }


def stuffle_json(result: StuffleResult) -> dict:
    return {
        "kind": "stuffle",
        "tuples": [
            {"multiplicity": mult, "blocks": _blocks_json(w)}
            for w, mult in sorted(
                result.items(),
                key=lambda kv: (len(kv[0]), tuple(indices_of(b) for b in kv[0])),
            )
        ],
    }


def report_json(report: IdentityReport) -> dict:
    out: dict = {
        "kind": "report",
        "verdict": report.verdict,
        "methods": {m: report.per_method[m] for m in report.methods_run},
        "agreement": report.agreement,
    }
    if report.numeric_residual is not None:
        out["numeric_residual"] = report.numeric_residual
    if report.witness is not None:
        parts, coeff = report.witness
        out["witness"] = {"coeff": coeff, "parts": _blocks_json(parts)}
    return out


def serialize(obj, fmt: str = "text") -> str:
    """Render a core object as canonical text or structured JSON."""
    if fmt == "text":
        if isinstance(obj, Expression):
            return expression_text(obj)
        if isinstance(obj, CanonicalForm):
            return canonical_text(obj)
        if isinstance(obj, IdentityReport):
            return report_text(obj)
        return stuffle_text(obj)
    if fmt == "structured":
        if isinstance(obj, Expression):
            doc = expression_json(obj)
        elif isinstance(obj, CanonicalForm):
            doc = canonical_json(obj)
        elif isinstance(obj, IdentityReport):
            doc = report_json(obj)
        else:
            doc = stuffle_json(obj)
        return json.dumps(doc, sort_keys=True, indent=2)
    raise ValueError(f"unknown format: {fmt}")


def parse_arglist(text: str) -> ZetaAtom:
    """Parse the `arg {',' arg}` sub-grammar, e.g. "s1,s2+s3"."""
    parser = _Parser(text)
    blocks = [parser.parse_arg()]
    while parser.peek()[:2] == ("op", ","):
        parser.next()
        blocks.append(parser.parse_arg())
    parser.expect("eof")
    return tuple(blocks)
