########################################################################################
# Copyright 2026 The xprod Authors                                                     #
#                                                                                      #
# Licensed under the Apache License, Version 2.0 (the "License");                      #
# you may not use this file except in compliance with the License.                     #
# You may obtain a copy of the License at                                              #
#                                                                                      #
#     http://www.apache.org/licenses/LICENSE-2.0                                       #
#                                                                                      #
# Unless required by applicable law or agreed to in writing, software                  #
# distributed under the License is distributed on an "AS IS" BASIS,                    #
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.             #
# See the License for the specific language governing permissions and                  #
# limitations under the License.                                                       #
########################################################################################
"""
The ``.xp`` document format.

A document declares a field followed by any number of blocks:

.. code-block:: none

    field Q                       # or: field F 5

    group G {
        elements 1 g;
        table: 1 g | g 1;         # row x, column y holds x y
    }

    algebra A {
        basis e1 e2;
        e1*e1 = e1;               # unlisted products are zero
        e2*e2 = e2;
    }

    grading B on A by G {         # "on" and "by" may be omitted when unambiguous
        1: e1 + e2;
        g: e1 - e2;
    }

    action T on A by G {
        domain g: e1, e2;         # missing domains: A for 1, zero otherwise
        theta g: [[0, 1], [1, 0]];
        twist g g: (R=[[1, 0], [0, 1]], L=[[1, 0], [0, 1]]);
    }

Rational literals are written ``p/q``; over ``F p`` integers are reduced modulo ``p``.
Linear expressions are sums of ``c*name`` terms, ``0`` is the zero vector.  Matrices
are given in the canonical (reduced row echelon) bases of the subspaces they act on.

:func:`parse` canonicalizes while reading: terms are merged and ordered by basis index,
products and per-element entries are ordered by index, zero products and zero
grading vectors are dropped, and coefficients are reduced.  :func:`print_document`
writes that canonical form, so ``parse(print_document(parse(text))) == parse(text)``.
"""

import re
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple, TypeVar

from .action import TwistedPartialAction
from .algebra import Ideal, StructureAlgebra, make_ideal, subspace_product
from .errors import DimensionMismatch, DslError, DslSemanticError, DslSyntaxError, \
    XprodError
from .fields import Element, Field, Vector
from .graded import GradedAlgebra, make_graded
from .groups import FiniteGroup, make_group
from .linalg import Matrix, span, zero_subspace
from .multipliers import Multiplier

########################################################################################
# Document model.                                                                      #
########################################################################################


@dataclass(frozen=True)
class Term:
    """``coefficient * name`` with a canonical literal coefficient."""

    name: str
    coefficient: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


Expression = Tuple[Term, ...]
"""A linear expression; the empty tuple is ``0``."""

MatrixLiteral = Tuple[Tuple[str, ...], ...]
"""The rows of a matrix as canonical literals."""


@dataclass(frozen=True)
class FieldDecl:
    """``field Q`` (``characteristic = 0``) or ``field F p``."""

    characteristic: int
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class GroupDecl:
    """A group given by element names and its multiplication table."""

    name: str
    elements: Tuple[str, ...]
    table: Tuple[Tuple[str, ...], ...]
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ProductDecl:
    """``left*right = value``."""

    left: str
    right: str
    value: Expression
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class AlgebraDecl:
    """An algebra given by basis names and its nonzero products."""

    name: str
    basis: Tuple[str, ...]
    products: Tuple[ProductDecl, ...]
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ComponentDecl:
    """Spanning vectors attached to a group element (grading components, domains)."""

    element: str
    vectors: Tuple[Expression, ...]
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class GradingDecl:
    """A grading of an algebra by a group."""

    name: str
    algebra: str
    group: str
    components: Tuple[ComponentDecl, ...]
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ThetaDecl:
    """The matrix of ``θ_g``."""

    element: str
    matrix: MatrixLiteral
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class TwistDecl:
    """The matrices ``(R, L)`` of ``w_g,h``."""

    first: str
    second: str
    right: MatrixLiteral
    left: MatrixLiteral
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ActionDecl:
    """A twisted partial action of a group on an algebra."""

    name: str
    algebra: str
    group: str
    domains: Tuple[ComponentDecl, ...]
    thetas: Tuple[ThetaDecl, ...]
    twists: Tuple[TwistDecl, ...]
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Document:
    """A parsed document; blocks of each kind in declaration order."""

    field: FieldDecl
    groups: Tuple[GroupDecl, ...] = ()
    algebras: Tuple[AlgebraDecl, ...] = ()
    gradings: Tuple[GradingDecl, ...] = ()
    actions: Tuple[ActionDecl, ...] = ()


########################################################################################
# Tokens.                                                                              #
########################################################################################
_TOKEN = re.compile(r"""
    (?P<space>[ \t\r]+)
  | (?P<newline>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<number>\d+(?:/\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<symbol>[{}\[\]();:,*+\-=|])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    """
    A lexeme and its 1-based position.

    ``kind`` is ``number``, ``name``, ``symbol`` or ``end``.
    """

    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    """
    Split ``text`` into tokens, dropping whitespace and ``#`` comments.

    Raises
    ------
    DslSyntaxError
        At the first character that starts no token.
    """
    tokens = []
    line, start, pos = 1, 0, 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            raise DslSyntaxError(f"Unexpected character {text[pos]!r}.", line=line,
                                 column=pos - start + 1)
        kind = match.lastgroup
        if kind == "newline":
            line += 1
            start = match.end()
        elif kind in {"number", "name", "symbol"}:
            tokens.append(Token(kind, match.group(), line, pos - start + 1))
        pos = match.end()
    tokens.append(Token("end", "", line, pos - start + 1))
    return tokens


########################################################################################
# Parsing.                                                                             #
########################################################################################
_T = TypeVar("_T")


def _canonical(items: Sequence[_T], key: Callable[[_T], str], order: Sequence[str],
               what: str) -> Tuple[_T, ...]:
    # Reject duplicate keys, then sort by position in ``order``.
    seen = {}  # type: Dict[str, _T]
    for item in items:
        k = key(item)
        if k in seen:
            raise DslSemanticError(f"Duplicate {what} '{k}'.", name=k,
                                   line=getattr(item, "line", 0),
                                   column=getattr(item, "column", 0))
        seen[k] = item
    return tuple(sorted(items, key=lambda item: order.index(key(item))))


class _Parser:
    def __init__(self, text: str, default_field: Optional[Field]):
        self.tokens = tokenize(text)
        self.pos = 0
        self.default_field = default_field
        self.field = None  # type: Optional[Field]
        self.groups = {}  # type: Dict[str, GroupDecl]
        self.algebras = {}  # type: Dict[str, AlgebraDecl]
        self.blocks = {}  # type: Dict[str, Token]

    # Token helpers.
    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.peek()
        self.pos += 1
        return token

    def at(self, text: str) -> bool:
        token = self.peek()
        return token.kind != "end" and token.text == text

    def error(self, message: str, token: Optional[Token] = None) -> DslSyntaxError:
        token = token or self.peek()
        found = "end of input" if token.kind == "end" else f"'{token.text}'"
        return DslSyntaxError(f"{message}, found {found}.", line=token.line,
                              column=token.column)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"Expected '{text}'")
        return self.advance()

    def expect_name(self, what: str) -> Token:
        if self.peek().kind != "name":
            raise self.error(f"Expected {what}")
        return self.advance()

    def expect_element(self) -> Token:
        token = self.peek()
        if token.kind == "name" or (token.kind == "number" and "/" not in token.text):
            return self.advance()
        raise self.error("Expected a group element")

    # Literals.
    def value(self, token: Token) -> Element:
        assert self.field is not None
        try:
            return self.field.parse(token.text)
        except ValueError as err:
            raise DslSemanticError(str(err), line=token.line,
                                   column=token.column) from None

    def signed_literal(self) -> str:
        assert self.field is not None
        negative = self.at("-")
        if negative:
            self.advance()
        if self.peek().kind != "number":
            raise self.error("Expected a number")
        value = self.value(self.advance())
        return self.field.format(-value if negative else value)

    # Grammar.
    def document(self) -> Document:
        field_decl = self.field_decl()
        gradings, actions = [], []
        while self.peek().kind != "end":
            token = self.peek()
            if token.text == "group":
                decl = self.group_block()
                self.groups[decl.name] = decl
            elif token.text == "algebra":
                decl = self.algebra_block()
                self.algebras[decl.name] = decl
            elif token.text == "grading":
                gradings.append(self.grading_block())
            elif token.text == "action":
                actions.append(self.action_block())
            else:
                raise self.error("Expected 'group', 'algebra', 'grading' or 'action'")
        return Document(field_decl, tuple(self.groups.values()),
                        tuple(self.algebras.values()), tuple(gradings), tuple(actions))

    def field_decl(self) -> FieldDecl:
        if not self.at("field"):
            if self.default_field is None:
                raise self.error("Expected 'field'")
            self.field = self.default_field
            return FieldDecl(self.default_field.characteristic)
        start = self.advance()
        token = self.expect_name("'Q' or 'F'")
        if token.text == "Q":
            p = 0
        elif token.text == "F" and self.peek().kind == "number":
            number = self.advance()
            if "/" in number.text:
                raise DslSemanticError(
                    f"Invalid field characteristic '{number.text}'.",
                    line=number.line, column=number.column)
            p = int(number.text)
        elif re.fullmatch(r"F\d+", token.text):
            p = int(token.text[1:])
        else:
            raise self.error("Expected 'Q' or 'F <prime>'", token)
        try:
            self.field = Field(p)
        except ValueError as err:
            raise DslSemanticError(str(err), line=token.line,
                                   column=token.column) from None
        return FieldDecl(p, start.line, start.column)

    def block_name(self) -> Token:
        token = self.expect_name("a block name")
        if token.text in self.blocks:
            raise DslSemanticError(f"Duplicate block name '{token.text}'.",
                                   name=token.text, line=token.line,
                                   column=token.column)
        self.blocks[token.text] = token
        return token

    def group_block(self) -> GroupDecl:
        start = self.expect("group")
        name = self.block_name()
        self.expect("{")
        self.expect("elements")
        elements = []  # type: List[Token]
        while not self.at(";"):
            elements.append(self.expect_element())
        self.expect(";")
        names = [t.text for t in elements]
        for k, token in enumerate(elements):
            if token.text in names[:k]:
                raise DslSemanticError(f"Duplicate group element '{token.text}'.",
                                       name=token.text, line=token.line,
                                       column=token.column)
        self.expect("table")
        self.expect(":")
        rows = [[]]  # type: List[List[str]]
        while not self.at(";"):
            if self.at("|"):
                self.advance()
                rows.append([])
                continue
            token = self.expect_element()
            if token.text not in names:
                raise DslSemanticError(f"Unknown group element '{token.text}'.",
                                       name=token.text, line=token.line,
                                       column=token.column)
            rows[-1].append(token.text)
        self.expect(";")
        self.expect("}")
        return GroupDecl(name.text, tuple(names), tuple(tuple(r) for r in rows),
                         start.line, start.column)

    def expression(self, basis: Sequence[str]) -> Expression:
        # expr := '0' | ['-'] term (('+' | '-') term)* ; term := [number '*'] name
        assert self.field is not None
        if self.at("0") and self.peek(1).text != "*":
            self.advance()
            return ()
        coefficients = {}  # type: Dict[str, Element]
        first = {}  # type: Dict[str, Token]
        negative = self.at("-")
        if negative:
            self.advance()
        while True:
            coefficient = self.field.one
            if self.peek().kind == "number":
                coefficient = self.value(self.advance())
                self.expect("*")
            name = self.expect_name("a basis name")
            if name.text not in basis:
                raise DslSemanticError(f"Unknown basis name '{name.text}'.",
                                       name=name.text, line=name.line,
                                       column=name.column)
            if negative:
                coefficient = -coefficient
            if name.text in coefficients:
                coefficients[name.text] += coefficient
            else:
                coefficients[name.text] = coefficient
                first[name.text] = name
            if not (self.at("+") or self.at("-")):
                break
            negative = self.advance().text == "-"
        return tuple(Term(n, self.field.format(coefficients[n]), first[n].line,
                          first[n].column)
                     for n in basis if n in coefficients and coefficients[n])

    def expression_list(self, basis: Sequence[str]) -> Tuple[Expression, ...]:
        vectors = [self.expression(basis)]
        while self.at(","):
            self.advance()
            vectors.append(self.expression(basis))
        return tuple(vectors)

    def algebra_block(self) -> AlgebraDecl:
        start = self.expect("algebra")
        name = self.block_name()
        self.expect("{")
        self.expect("basis")
        basis = []  # type: List[str]
        while not self.at(";"):
            token = self.expect_name("a basis name")
            if token.text in basis:
                raise DslSemanticError(f"Duplicate basis name '{token.text}'.",
                                       name=token.text, line=token.line,
                                       column=token.column)
            basis.append(token.text)
        self.expect(";")
        products = []
        while not self.at("}"):
            left = self.expect_name("a basis name")
            self.expect("*")
            right = self.expect_name("a basis name")
            for token in (left, right):
                if token.text not in basis:
                    raise DslSemanticError(f"Unknown basis name '{token.text}'.",
                                           name=token.text, line=token.line,
                                           column=token.column)
            self.expect("=")
            value = self.expression(basis)
            self.expect(";")
            products.append(ProductDecl(left.text, right.text, value, left.line,
                                        left.column))
        self.expect("}")
        pairs = [f"{a}*{b}" for a in basis for b in basis]
        canonical = _canonical(products, lambda p: f"{p.left}*{p.right}", pairs,
                               "product")
        return AlgebraDecl(name.text, tuple(basis),
                           tuple(p for p in canonical if p.value),
                           start.line, start.column)

    def resolve(self, table: Dict[str, _T], keyword: str, what: str) -> str:
        if self.at(keyword):
            self.advance()
            token = self.expect_name(f"{what} name")
            if token.text not in table:
                raise DslSemanticError(f"Unknown {what} '{token.text}'.",
                                       name=token.text, line=token.line,
                                       column=token.column)
            return token.text
        if len(table) != 1:
            token = self.peek()
            raise DslSemanticError(
                f"Cannot infer the {what}: {len(table)} declared, use '{keyword}'.",
                line=token.line, column=token.column)
        return next(iter(table))

    def element(self, group: GroupDecl) -> Token:
        token = self.expect_element()
        if token.text not in group.elements:
            raise DslSemanticError(f"Unknown group element '{token.text}'.",
                                   name=token.text, line=token.line,
                                   column=token.column)
        return token

    def grading_block(self) -> GradingDecl:
        start = self.expect("grading")
        name = self.block_name()
        algebra = self.algebras[self.resolve(self.algebras, "on", "algebra")]
        group = self.groups[self.resolve(self.groups, "by", "group")]
        self.expect("{")
        components = []
        while not self.at("}"):
            element = self.element(group)
            self.expect(":")
            vectors = self.expression_list(algebra.basis)
            self.expect(";")
            components.append(ComponentDecl(element.text, vectors, element.line,
                                            element.column))
        self.expect("}")
        canonical = _canonical(components, lambda c: c.element, group.elements,
                               "grading component")
        kept = []
        for c in canonical:
            vectors = tuple(v for v in c.vectors if v)
            if vectors:
                kept.append(ComponentDecl(c.element, vectors, c.line, c.column))
        return GradingDecl(name.text, algebra.name, group.name, tuple(kept),
                           start.line, start.column)

    def matrix(self) -> MatrixLiteral:
        self.expect("[")
        rows = []
        while not self.at("]"):
            self.expect("[")
            row = []
            while not self.at("]"):
                row.append(self.signed_literal())
                if not self.at("]"):
                    self.expect(",")
            self.expect("]")
            rows.append(tuple(row))
            if not self.at("]"):
                self.expect(",")
        self.expect("]")
        return tuple(rows)

    def action_block(self) -> ActionDecl:
        start = self.expect("action")
        name = self.block_name()
        algebra = self.algebras[self.resolve(self.algebras, "on", "algebra")]
        group = self.groups[self.resolve(self.groups, "by", "group")]
        self.expect("{")
        domains, thetas, twists = [], [], []
        while not self.at("}"):
            keyword = self.expect_name("'domain', 'theta' or 'twist'")
            if keyword.text == "domain":
                element = self.element(group)
                self.expect(":")
                vectors = tuple(v for v in self.expression_list(algebra.basis) if v)
                domains.append(ComponentDecl(element.text, vectors, element.line,
                                             element.column))
            elif keyword.text == "theta":
                element = self.element(group)
                self.expect(":")
                thetas.append(ThetaDecl(element.text, self.matrix(), element.line,
                                        element.column))
            elif keyword.text == "twist":
                first = self.element(group)
                second = self.element(group)
                self.expect(":")
                self.expect("(")
                self.expect("R")
                self.expect("=")
                right = self.matrix()
                self.expect(",")
                self.expect("L")
                self.expect("=")
                left = self.matrix()
                self.expect(")")
                twists.append(TwistDecl(first.text, second.text, right, left,
                                        first.line, first.column))
            else:
                raise self.error("Expected 'domain', 'theta' or 'twist'", keyword)
            self.expect(";")
        self.expect("}")
        pairs = [f"{g} {h}" for g in group.elements for h in group.elements]
        return ActionDecl(
            name.text, algebra.name, group.name,
            _canonical(domains, lambda d: d.element, group.elements, "domain"),
            _canonical(thetas, lambda t: t.element, group.elements, "theta"),
            _canonical(twists, lambda t: f"{t.first} {t.second}", pairs, "twist"),
            start.line, start.column)


def parse(text: str, default_field: Optional[Field] = None) -> Document:
    """
    Parse and canonicalize a document.

    Parameters
    ----------
    text : str
        The document.

    default_field : Field, optional
        The field used when the document has no ``field`` line.

    Raises
    ------
    DslSyntaxError
        If ``text`` does not follow the grammar.

    DslSemanticError
        For unknown or duplicate names and malformed literals.
    """
    return _Parser(text, default_field).document()


########################################################################################
# Printing.                                                                            #
########################################################################################
def _print_expression(expr: Expression) -> str:
    parts = []
    for term in expr:
        negative = term.coefficient.startswith("-")
        magnitude = term.coefficient.lstrip("-")
        body = term.name if magnitude == "1" else f"{magnitude}*{term.name}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(parts) if parts else "0"


def _print_matrix(m: MatrixLiteral) -> str:
    return "[" + ", ".join("[" + ", ".join(row) + "]" for row in m) + "]"


def _print_components(keyword: str, components: Sequence[ComponentDecl]) -> List[str]:
    prefix = f"{keyword} " if keyword else ""
    return [f"    {prefix}{c.element}: "
            + ", ".join(_print_expression(v) for v in c.vectors or ((),)) + ";"
            for c in components]


def print_document(doc: Document) -> str:
    """Write ``doc`` in canonical form."""
    p = doc.field.characteristic
    blocks = ["field Q" if p == 0 else f"field F {p}"]
    for g in doc.groups:
        table = " | ".join(" ".join(row) for row in g.table)
        blocks.append("\n".join([
            f"group {g.name} {{", f"    elements {' '.join(g.elements)};",
            f"    table: {table};", "}"]))
    for a in doc.algebras:
        lines = [f"algebra {a.name} {{", f"    basis {' '.join(a.basis)};"]
        lines.extend(f"    {x.left}*{x.right} = {_print_expression(x.value)};"
                     for x in a.products)
        blocks.append("\n".join(lines + ["}"]))
    for b in doc.gradings:
        lines = [f"grading {b.name} on {b.algebra} by {b.group} {{"]
        lines.extend(_print_components("", b.components))
        blocks.append("\n".join(lines + ["}"]))
    for t in doc.actions:
        lines = [f"action {t.name} on {t.algebra} by {t.group} {{"]
        lines.extend(_print_components("domain", t.domains))
        lines.extend(f"    theta {x.element}: {_print_matrix(x.matrix)};"
                     for x in t.thetas)
        lines.extend(f"    twist {x.first} {x.second}: (R={_print_matrix(x.right)}, "
                     f"L={_print_matrix(x.left)});" for x in t.twists)
        blocks.append("\n".join(lines + ["}"]))
    return "\n\n".join(blocks) + "\n"


def _expression_of(fld: Field, names: Sequence[str], v: Vector) -> Expression:
    return tuple(Term(n, fld.format(c)) for n, c in zip(names, v) if c)


def _matrix_literal(m: Matrix) -> MatrixLiteral:
    return tuple(tuple(m.field.format(a) for a in row) for row in m.row_tuples())


def _group_decl(group: FiniteGroup, name: str) -> GroupDecl:
    table = tuple(tuple(group.name(group.mul(g, h)) for h in group.elements)
                  for g in group.elements)
    return GroupDecl(name, group.names, table)


def _algebra_decl(alg: StructureAlgebra, name: str) -> AlgebraDecl:
    names = alg.basis_names
    products = tuple(
        ProductDecl(names[i], names[j], _expression_of(alg.field, names, v))
        for i, row in enumerate(alg.table) for j, v in enumerate(row) if any(v))
    return AlgebraDecl(name, names, products)


def document_from_algebra(alg: StructureAlgebra, *, name: str = "A") -> Document:
    """Return a document declaring ``alg``."""
    return Document(FieldDecl(alg.field.characteristic),
                    algebras=(_algebra_decl(alg, name),))


def document_from_grading(gb: GradedAlgebra, *, name: str = "B", algebra: str = "A",
                          group: str = "G") -> Document:
    """Return a document declaring the group, the algebra and the grading of ``gb``."""
    fld, names = gb.field, gb.ambient.basis_names
    components = tuple(
        ComponentDecl(gb.group.name(g), tuple(_expression_of(fld, names, v)
                                              for v in gb.component(g).vectors))
        for g in gb.group.elements if gb.component(g).dim)
    return Document(FieldDecl(fld.characteristic), (_group_decl(gb.group, group),),
                    (_algebra_decl(gb.ambient, algebra),),
                    (GradingDecl(name, algebra, group, components),))


def document_from_action(action: TwistedPartialAction, *, name: str = "T",
                         algebra: str = "A", group: str = "G") -> Document:
    """
    Return a document declaring the group, the algebra and ``action``.

    Identity twists and the identity ``θ_1`` are omitted, as is the domain of the
    identity when it is the whole algebra.
    """
    fld, names, grp = action.field, action.ambient.basis_names, action.group
    domains = []
    for g in grp.elements:
        d = action.domain(g)
        if g == grp.identity and d.space.is_full():
            continue
        domains.append(ComponentDecl(grp.name(g), tuple(
            _expression_of(fld, names, v) for v in d.vectors)))
    thetas = tuple(ThetaDecl(grp.name(g), _matrix_literal(action.iso(g)))
                   for g in grp.elements if g != grp.identity)
    twists = tuple(TwistDecl(grp.name(g), grp.name(h), _matrix_literal(w.r_matrix),
                             _matrix_literal(w.l_matrix))
                   for (g, h), w in sorted(action.twists.items())
                   if not w.is_identity())
    decl = ActionDecl(name, algebra, group, tuple(domains), thetas, twists)
    return Document(FieldDecl(fld.characteristic), (_group_decl(grp, group),),
                    (_algebra_decl(action.ambient, algebra),), (), (decl,))


########################################################################################
# Resolution into kernel objects.                                                      #
########################################################################################
@dataclass
class Workspace:
    """The kernel objects declared by a document, keyed by block name."""

    field: Field
    groups: Dict[str, FiniteGroup] = field(default_factory=dict)
    algebras: Dict[str, StructureAlgebra] = field(default_factory=dict)
    gradings: Dict[str, GradedAlgebra] = field(default_factory=dict)
    actions: Dict[str, TwistedPartialAction] = field(default_factory=dict)

    def select(self, kind: str, name: Optional[str] = None):
        """
        Return the block of ``kind`` (``"grading"`` or ``"action"``) called ``name``.

        Without ``name`` the document must declare exactly one block of that kind.

        Raises
        ------
        DslSemanticError
            If the block is missing or ambiguous.
        """
        table = {"grading": self.gradings, "action": self.actions,
                 "algebra": self.algebras, "group": self.groups}[kind]
        if name is not None:
            if name not in table:
                raise DslSemanticError(f"No {kind} named '{name}'.", name=name)
            return table[name]
        if len(table) != 1:
            raise DslSemanticError(
                f"Expected exactly one {kind} block, found {len(table)}; use --name.")
        return next(iter(table.values()))


class _located:  # noqa: N801
    # Re-raise kernel errors as semantic errors at a declaration.
    def __init__(self, decl, name: Optional[str] = None):
        self.decl = decl
        self.name = name

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        if exc_value is None or isinstance(exc_value, DslError):
            return False
        if isinstance(exc_value, (XprodError, ValueError)):
            raise DslSemanticError(str(exc_value), line=self.decl.line,
                                   column=self.decl.column,
                                   name=self.name) from exc_value
        return False


def _vector(fld: Field, basis: Sequence[str], expr: Expression) -> Vector:
    entries = [fld.zero] * len(basis)
    for term in expr:
        if term.name not in basis:
            raise DslSemanticError(f"Unknown basis name '{term.name}'.", name=term.name,
                                   line=term.line, column=term.column)
        entries[basis.index(term.name)] += fld.parse(term.coefficient)
    return tuple(entries)


def _matrix(fld: Field, m: MatrixLiteral, rows: int, cols: int, what: str) -> Matrix:
    if len(m) != rows or any(len(r) != cols for r in m):
        found = f"{len(m)}x{len(m[0]) if m else 0}"
        raise DimensionMismatch(f"{what} must be {rows}x{cols}, got {found}.")
    return Matrix.from_rows(fld, [[fld.parse(a) for a in r] for r in m], cols)


def _build_action(fld: Field, decl: ActionDecl, alg: StructureAlgebra,
                  group: FiniteGroup) -> TwistedPartialAction:
    basis = alg.basis_names
    domains = {}  # type: Dict[int, Ideal]
    given = {d.element: d for d in decl.domains}
    for g in group.elements:
        d = given.get(group.name(g))
        if d is None:
            space = alg.full() if g == group.identity else zero_subspace(fld, alg.dim)
            domains[g] = Ideal(alg, space)
            continue
        with _located(d, d.element):
            domains[g] = make_ideal(alg, span(fld, alg.dim, (
                _vector(fld, basis, v) for v in d.vectors)))
    isos = {}
    for t in decl.thetas:
        g = group.index(t.element)
        with _located(t, t.element):
            isos[g] = _matrix(fld, t.matrix, domains[group.inv(g)].dim, domains[g].dim,
                              f"theta {t.element}")
    twists = {}
    for w in decl.twists:
        g, h = group.index(w.first), group.index(w.second)
        carrier = Ideal(alg, subspace_product(alg, domains[g].space,
                                              domains[group.mul(g, h)].space))
        with _located(w, f"{w.first} {w.second}"):
            what = f"twist {w.first} {w.second}"
            twists[(g, h)] = Multiplier(
                carrier, _matrix(fld, w.right, carrier.dim, carrier.dim, f"{what} R"),
                _matrix(fld, w.left, carrier.dim, carrier.dim, f"{what} L"))
    with _located(decl, decl.name):
        return TwistedPartialAction(group, alg, domains, isos, twists)


def build_workspace(doc: Document) -> Workspace:
    """
    Resolve ``doc`` into kernel objects.

    Raises
    ------
    DslSemanticError
        Located at the offending declaration, wrapping the kernel error (invalid group
        table, non associative algebra, not a grading, not an ideal, wrong matrix
        shape, ...).
    """
    fld = Field(doc.field.characteristic)
    ws = Workspace(fld)
    for g in doc.groups:
        with _located(g, g.name):
            ws.groups[g.name] = make_group(
                g.elements, [[g.elements.index(x) for x in row] for row in g.table])
    for a in doc.algebras:
        n = len(a.basis)
        table = [[fld.zero_vector(n) for _ in range(n)] for _ in range(n)]
        for p in a.products:
            table[a.basis.index(p.left)][a.basis.index(p.right)] = \
                _vector(fld, a.basis, p.value)
        with _located(a, a.name):
            ws.algebras[a.name] = StructureAlgebra(fld, a.basis, table)
    for b in doc.gradings:
        alg, group = ws.algebras[b.algebra], ws.groups[b.group]
        components = {}
        for c in b.components:
            components[group.index(c.element)] = span(fld, alg.dim, (
                _vector(fld, alg.basis_names, v) for v in c.vectors))
        with _located(b, b.name):
            ws.gradings[b.name] = make_graded(alg, group, components)
    for t in doc.actions:
        ws.actions[t.name] = _build_action(fld, t, ws.algebras[t.algebra],
                                           ws.groups[t.group])
    return ws


def load(text: str, default_field: Optional[Field] = None) -> Workspace:
    """Shorthand for ``build_workspace(parse(text, default_field))``."""
    return build_workspace(parse(text, default_field))
