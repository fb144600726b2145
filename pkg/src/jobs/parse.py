"""
Text grammars for scalars, polynomials, matrices and the JSON documents that
describe spaces, vector lists and maps.

Scalars:      a | bI | a+bI | a-bI | bI+a    (a, b: int or int/int)
Polynomials:  terms <scalar> | <scalar>x | <scalar>x^k joined by + / -,
              two-part coefficients in parentheses: x^2 + (2I+1)x + 2I
Matrices:     [[I,0],[2,2]]@N(Z3)  or  {"field": "N(Z3)", "rows": [["I","0"],["2","2"]]}
Literals carry their field after ``@`` unless the caller supplies one.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Literal, NamedTuple, Union

from pydantic import BaseModel, Field, ValidationError

from src.neutro.errors import ParseError
from src.neutro.matrix import NMatrix
from src.neutro.nspace import (
    ComponentAmbient,
    FoldKind,
    NFoldMap,
    NFoldSpace,
    NFoldVector,
    Shape,
    ShapeKind,
    Subspace,
)
from src.neutro.poly import NPoly
from src.neutro.scalars import FieldDescriptor, NNum


class Token(NamedTuple):
    type: str
    value: str
    where: int


_TOKEN = re.compile(
    r"""
     (?P<ws>\s+)
    |(?P<num>\d+(?:/\d+)?)
    |(?P<i>I)
    |(?P<x>x)
    |(?P<caret>\^)
    |(?P<op>[+\-])
    |(?P<lparen>\()
    |(?P<rparen>\))
    |(?P<lbrack>\[)
    |(?P<rbrack>\])
    |(?P<comma>,)
    """,
    re.VERBOSE,
)


def position(text: str, offset: int) -> tuple[int, int]:
    """1-based (line, column) of ``offset`` in ``text``."""
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


def tokenize(text: str, end: int | None = None, origin: str | None = None) -> list[Token]:
    source = text if origin is None else origin
    end = len(text) if end is None else end
    tokens, at = [], 0
    while at < end:
        m = _TOKEN.match(text, at, end)
        if not m:
            line, col = position(source, at)
            raise ParseError(f"unexpected character {text[at]!r}", line, col,
                             expected="number, I, x, operator or bracket")
        if m.lastgroup != "ws":
            tokens.append(Token(m.lastgroup, m.group(), at))
        at = m.end()
    tokens.append(Token("end", "", end))
    return tokens


class _Reader:
    """Recursive-descent cursor over one literal."""

    def __init__(self, text: str, end: int | None = None):
        self.text = text
        self.tokens = tokenize(text, end)
        self.at = 0

    def peek(self) -> Token:
        return self.tokens[self.at]

    def take(self) -> Token:
        tok = self.tokens[self.at]
        self.at += 1
        return tok

    def error(self, message: str, expected: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.peek()
        line, col = position(self.text, tok.where)
        return ParseError(message, line, col, expected=expected)

    def expect(self, kind: str, expected: str) -> Token:
        tok = self.peek()
        if tok.type != kind:
            found = tok.value or "end of input"
            raise self.error(f"unexpected {found!r}", expected)
        return self.take()

    def finish(self) -> None:
        if self.peek().type != "end":
            raise self.error(f"trailing {self.peek().value!r}", "end of input")

    # --- scalars ---
    def _scalar_term(self) -> tuple[Fraction, bool]:
        """One unsigned term: a number, ``I`` or ``<number>I``; returns (value, is_I)."""
        tok = self.peek()
        if tok.type == "num":
            self.take()
            try:
                value = Fraction(tok.value)
            except ZeroDivisionError:
                raise self.error("zero denominator", "nonzero denominator", tok) from None
            if self.peek().type == "i":
                self.take()
                return value, True
            return value, False
        if tok.type == "i":
            self.take()
            return Fraction(1), True
        raise self.error(f"unexpected {tok.value or 'end of input'!r}", "number or I")

    def scalar(self, field: FieldDescriptor) -> NNum:
        a, b = Fraction(0), Fraction(0)
        seen: set[bool] = set()
        sign = 1
        if self.peek().type == "op":
            sign = -1 if self.take().value == "-" else 1
        while True:
            start = self.peek()
            value, is_i = self._scalar_term()
            if is_i in seen:
                raise self.error("repeated " + ("I part" if is_i else "real part"), "one real and one I part", start)
            seen.add(is_i)
            if is_i:
                b = sign * value
            else:
                a = sign * value
            if self.peek().type != "op" or len(seen) == 2:
                break
            sign = -1 if self.take().value == "-" else 1
        return NNum(field, a, b)

    # --- polynomials ---
    def _coefficient(self) -> tuple[Fraction, Fraction, bool]:
        """Coefficient of one polynomial term; the flag is False when it was implicit."""
        tok = self.peek()
        if tok.type == "lparen":
            self.take()
            inner = self.scalar(FIELD_FREE)
            self.expect("rparen", "')'")
            return inner.a, inner.b, True
        if tok.type in ("num", "i"):
            value, is_i = self._scalar_term()
            return (Fraction(0), value, True) if is_i else (value, Fraction(0), True)
        return Fraction(1), Fraction(0), False

    def poly(self, field: FieldDescriptor) -> NPoly:
        terms: dict[int, tuple[Fraction, Fraction]] = {}
        sign = 1
        if self.peek().type == "op":
            sign = -1 if self.take().value == "-" else 1
        while True:
            start = self.peek()
            a, b, explicit = self._coefficient()
            degree = 0
            if self.peek().type == "x":
                self.take()
                degree = 1
                if self.peek().type == "caret":
                    self.take()
                    degree = int(self.expect("num", "integer exponent").value)
            elif not explicit:
                raise self.error(f"unexpected {start.value or 'end of input'!r}", "term", start)
            old_a, old_b = terms.get(degree, (Fraction(0), Fraction(0)))
            terms[degree] = (old_a + sign * a, old_b + sign * b)
            if self.peek().type != "op":
                break
            sign = -1 if self.take().value == "-" else 1
        top = max(terms)
        coeffs = [NNum(field, *terms.get(k, (0, 0))) for k in range(top + 1)]
        return NPoly(field, tuple(coeffs))

    # --- brackets ---
    def tuple_literal(self, field: FieldDescriptor) -> list[NNum]:
        self.expect("lparen", "'('")
        out = [self.scalar(field)]
        while self.peek().type == "comma":
            self.take()
            out.append(self.scalar(field))
        self.expect("rparen", "',' or ')'")
        return out

    def _row(self, field: FieldDescriptor) -> list[NNum]:
        self.expect("lbrack", "'['")
        out = [self.scalar(field)]
        while self.peek().type == "comma":
            self.take()
            out.append(self.scalar(field))
        self.expect("rbrack", "',' or ']'")
        return out

    def rows(self, field: FieldDescriptor) -> list[list[NNum]]:
        self.expect("lbrack", "'['")
        out = [self._row(field)]
        while self.peek().type == "comma":
            self.take()
            out.append(self._row(field))
        self.expect("rbrack", "',' or ']'")
        return out


# a full-flavor Q descriptor used only to read parenthesized coefficients before conversion
FIELD_FREE = FieldDescriptor.rationals()


def _split_tag(text: str, field: FieldDescriptor | None) -> tuple[int, FieldDescriptor]:
    """Length of the literal body and its field, read from ``@<tag>`` when present."""
    at = text.rfind("@")
    if at < 0:
        if field is None:
            line, col = position(text, len(text))
            raise ParseError("missing field tag", line, col, expected="@<field tag>")
        return len(text), field
    try:
        tagged = FieldDescriptor.from_tag(text[at + 1:])
    except ParseError as exc:
        line, col = position(text, at + 1)
        raise ParseError(f"bad field tag {text[at + 1:].strip()!r}", line, col, expected=exc.expected) from exc
    return at, tagged


def _convert(field: FieldDescriptor, x: NNum) -> NNum:
    return NNum(field, x.a, x.b)


def parse_field(tag: str) -> FieldDescriptor:
    return FieldDescriptor.from_tag(tag)


def parse_scalar(text: str, field: FieldDescriptor | None = None) -> NNum:
    """``2I@N(Z3)``; without a tag the caller's field is used."""
    end, field = _split_tag(text, field)
    reader = _Reader(text, end)
    x = reader.scalar(FIELD_FREE)
    reader.finish()
    return _convert(field, x)


def parse_poly(text: str, field: FieldDescriptor | None = None) -> NPoly:
    if text.lstrip().startswith("{"):
        doc = validate_document(PolyDocument, load_json(text))
        return parse_poly(doc.poly, parse_field(doc.field))
    end, field = _split_tag(text, field)
    reader = _Reader(text, end)
    f = reader.poly(FIELD_FREE)
    reader.finish()
    return NPoly(field, tuple(_convert(field, c) for c in f.coeffs))


def parse_matrix(text: str, field: FieldDescriptor | None = None) -> NMatrix:
    if text.lstrip().startswith("{"):
        doc = validate_document(MatrixDocument, load_json(text))
        field = parse_field(doc.field)
        return NMatrix.of(field, [[parse_scalar(str(x), field) for x in row] for row in doc.rows])
    end, field = _split_tag(text, field)
    reader = _Reader(text, end)
    rows = reader.rows(FIELD_FREE)
    reader.finish()
    width = len(rows[0])
    for r, row in enumerate(rows):
        if len(row) != width:
            raise ParseError(f"row {r + 1} has {len(row)} entries, row 1 has {width}", expected="rectangular rows")
    return NMatrix.of(field, [[_convert(field, x) for x in row] for row in rows])


def parse_tuple(text: str, field: FieldDescriptor) -> list[NNum]:
    reader = _Reader(text)
    out = reader.tuple_literal(FIELD_FREE)
    reader.finish()
    return [_convert(field, x) for x in out]


def scalar_literal(x: NNum) -> str:
    return f"{x}@{x.field.tag}"


def poly_literal(f: NPoly) -> str:
    return f"{f}@{f.field.tag}"


# --- JSON documents ---

def load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno, expected="JSON document") from exc


Value = Union[str, int, list]


class ComponentDocument(BaseModel):
    shape: str
    scalars: str
    entries: str | None = None


class SpaceDocument(BaseModel):
    kind: Literal["TypeI", "TypeII"] = "TypeI"
    components: list[ComponentDocument] = Field(min_length=1)


class VectorsDocument(BaseModel):
    space: SpaceDocument
    vectors: list[list[Value]] = []
    beta: list[Value] | None = None
    context: list[str] | None = None
    subspaces: list[list[list[Value]]] | None = None


class MapDocument(BaseModel):
    domain: SpaceDocument
    codomain: SpaceDocument | None = None
    assign: list[int] | None = None
    mats: list[Union[str, list]]


class MatrixDocument(BaseModel):
    field: str
    rows: list[list[Union[str, int]]] = Field(min_length=1)


class PolyDocument(BaseModel):
    field: str
    poly: str


def validate_document(model: type[BaseModel], data: Any):
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(p) for p in first["loc"]) or "document"
        raise ParseError(f"{where}: {first['msg']}", expected=model.__name__) from exc


def build_space(doc: SpaceDocument) -> NFoldSpace:
    comps = []
    for c in doc.components:
        scalars = parse_field(c.scalars)
        entries = parse_field(c.entries) if c.entries else scalars
        comps.append(ComponentAmbient(Shape.parse(c.shape), scalars, entries))
    return NFoldSpace.build(FoldKind(doc.kind), comps)


def parse_space(text: str) -> NFoldSpace:
    return build_space(validate_document(SpaceDocument, load_json(text)))


def component_value(amb: ComponentAmbient, value: Value):
    """A component literal: a tuple, matrix or polynomial string, or a JSON list of scalars/rows."""
    field = amb.entries
    if isinstance(value, int):
        value = str(value)
    if isinstance(value, list):
        if value and isinstance(value[0], list):
            return NMatrix.of(field, [[parse_scalar(str(x), field) for x in row] for row in value])
        return [parse_scalar(str(x), field) for x in value]
    text = value.strip()
    if text.startswith("("):
        return parse_tuple(text, field)
    if text.startswith("["):
        return parse_matrix(text, field)
    if amb.shape.kind is not ShapeKind.POLY:
        return [parse_scalar(text, field)]
    return parse_poly(text, field)


def build_vector(space: NFoldSpace, parts: list[Value]) -> NFoldVector:
    if len(parts) != space.n:
        raise ParseError(f"{len(parts)} component literals for a {space.n}-fold space",
                         expected=f"{space.n} component literals")
    return space.vector(*[component_value(amb, p) for amb, p in zip(space.components, parts)])


class VectorList(NamedTuple):
    space: NFoldSpace
    vectors: list[NFoldVector]
    beta: NFoldVector | None
    context: list[FieldDescriptor] | None
    subspaces: list[Subspace] | None


def parse_vectors(text: str) -> VectorList:
    doc = validate_document(VectorsDocument, load_json(text))
    space = build_space(doc.space)
    vectors = [build_vector(space, v) for v in doc.vectors]
    beta = build_vector(space, doc.beta) if doc.beta is not None else None
    context = [parse_field(t) for t in doc.context] if doc.context is not None else None
    subspaces = None
    if doc.subspaces is not None:
        subspaces = [Subspace.spanned_by(space, [build_vector(space, v) for v in gens]) for gens in doc.subspaces]
    return VectorList(space, vectors, beta, context, subspaces)


def parse_map(text: str) -> NFoldMap:
    """``assign`` is 1-based and defaults to the identity assignment."""
    doc = validate_document(MapDocument, load_json(text))
    domain = build_space(doc.domain)
    codomain = build_space(doc.codomain) if doc.codomain else domain
    assign = [j - 1 for j in doc.assign] if doc.assign else list(range(domain.n))
    if len(doc.mats) != domain.n:
        raise ParseError(f"{len(doc.mats)} matrices for {domain.n} components", expected=f"{domain.n} matrices")
    mats = []
    for amb, m in zip(domain.components, doc.mats):
        if isinstance(m, list):
            mats.append(NMatrix.of(amb.scalars, [[parse_scalar(str(x), amb.scalars) for x in row] for row in m]))
        else:
            mats.append(parse_matrix(m, amb.scalars))
    return NFoldMap(domain, codomain, tuple(assign), tuple(mats))
