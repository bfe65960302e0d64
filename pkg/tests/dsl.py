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
"""Tests for the :mod:`xprod.dsl` module."""

import textwrap
from pathlib import Path

from demos.__main__ import corpus_documents
from xprod.action import verify_action
from xprod.catalog import m2_grading, swap_action
from xprod.dsl import Term, build_workspace, document_from_action, \
    document_from_algebra, document_from_grading, load, parse, print_document, \
    tokenize
from xprod.errors import DslSemanticError, DslSyntaxError
from xprod.fields import Field, RATIONALS
from xprod.graded import check_graded_isomorphism
from xprod.linalg import Matrix

import pytest

Q = RATIONALS

GROUP = textwrap.dedent("""\
    group G {
        elements 1 g;
        table: 1 g | g 1;
    }""")

ALGEBRA = textwrap.dedent("""\
    algebra A {
        basis e1 e2;
        e1*e1 = e1;
        e2*e2 = e2;
    }""")

GRADING = textwrap.dedent("""\
    grading B on A by G {
        1: e1 + e2;
        g: e1 - e2;
    }""")

ACTION = textwrap.dedent("""\
    action T on A by G {
        domain g: e1, e2;
        theta g: [[0, 1], [1, 0]];
    }""")

CANONICAL = "\n\n".join(["field Q", GROUP, ALGEBRA, GRADING, ACTION]) + "\n"


def test_canonical_document_is_a_fixpoint():
    """Validate printing a canonical document reproduces it exactly."""
    doc = parse(CANONICAL)
    assert print_document(doc) == CANONICAL
    assert parse(print_document(doc)) == doc


@pytest.mark.parametrize("path", corpus_documents(), ids=lambda p: p.stem)
def test_corpus_is_a_fixpoint(path: Path):
    """Validate the example documents survive printing and resolve cleanly."""
    doc = parse(path.read_text(encoding="utf-8"), Field(5))
    printed = print_document(doc)
    assert parse(printed) == doc
    assert print_document(parse(printed)) == printed
    ws = build_workspace(doc)
    assert ws.gradings or ws.actions


def test_parse_canonicalizes():
    """Validate terms, products and components are merged, reduced and ordered."""
    text = textwrap.dedent("""\
        field Q   # the rationals
        group G { elements 1 g; table: 1 g | g 1; }
        algebra A {
            basis e1 e2;
            e2*e2 = e2;
            e1*e2 = 0;
            e1*e1 = 2/4*e1 + 1/2*e1;
        }
        grading B { g: -e2 + e1, 0; 1: e2 + e1; }
        action T {
            theta g: [[0, 2/2], [1, 0]];
            domain g: e2, e1;
        }
        """)
    doc = parse(text)
    algebra = doc.algebras[0]
    assert [(p.left, p.right) for p in algebra.products] == [("e1", "e1"),
                                                            ("e2", "e2")]
    assert algebra.products[0].value == (Term("e1", "1"),)
    grading = doc.gradings[0]
    assert (grading.algebra, grading.group) == ("A", "G")
    assert [c.element for c in grading.components] == ["1", "g"]
    assert grading.components[1].vectors == ((Term("e1", "1"), Term("e2", "-1")),)
    action = doc.actions[0]
    assert action.thetas[0].matrix == (("0", "1"), ("1", "0"))
    # Spanning vectors keep their order; only zero vectors are dropped.
    assert action.domains[0].vectors == ((Term("e2", "1"),), (Term("e1", "1"),))
    assert print_document(parse(print_document(doc))) == print_document(doc)


@pytest.mark.parametrize("line,characteristic", [
    ("field Q", 0),
    ("field F 5", 5),
    ("field F5", 5),
])
def test_field_line(line: str, characteristic: int):
    """Validate the accepted spellings of the field line."""
    assert parse(line).field.characteristic == characteristic


def test_field_reduction():
    """Validate coefficients are reduced modulo ``p``."""
    doc = parse("field F 5\nalgebra A { basis x; x*x = 6*x + 1/2*x; }")
    assert doc.algebras[0].products[0].value == (Term("x", "4"),)


def test_missing_field_line():
    """Validate the default field and the missing field error."""
    assert parse(ALGEBRA, Field(7)).field.characteristic == 7
    with pytest.raises(DslSyntaxError) as excinfo:
        parse(ALGEBRA)
    assert str(excinfo.value) == "1:1: Expected 'field', found 'algebra'."
    assert (excinfo.value.line, excinfo.value.column) == (1, 1)
    assert excinfo.value.reason == "Expected 'field', found 'algebra'."

    with pytest.raises(DslSemanticError) as excinfo:
        parse("field F 4")
    assert "prime" in str(excinfo.value)


def test_syntax_errors():
    """Validate syntax errors carry the location of the offending token."""
    with pytest.raises(DslSyntaxError) as excinfo:
        parse("field Q\nalgebra A {\n    basis e1;\n    e1*e1 = e1\n}\n")
    assert str(excinfo.value) == "5:1: Expected ';', found '}'."

    with pytest.raises(DslSyntaxError) as excinfo:
        tokenize("field Q\n  @")
    assert str(excinfo.value) == "2:3: Unexpected character '@'."

    with pytest.raises(DslSyntaxError) as excinfo:
        parse("field Q\nalgebra A {")
    assert excinfo.value.reason == "Expected 'basis', found end of input."

    with pytest.raises(DslSyntaxError) as excinfo:
        parse("field Q\nring R {}")
    assert "Expected 'group', 'algebra', 'grading' or 'action'" in str(excinfo.value)


def test_semantic_errors():
    """Validate unknown and duplicate names are located."""
    with pytest.raises(DslSemanticError) as excinfo:
        parse("field Q\nalgebra A {\n    basis e1 e2;\n    e1*e3 = e1;\n}\n")
    assert str(excinfo.value) == "4:8: Unknown basis name 'e3'."
    assert excinfo.value.name == "e3"

    with pytest.raises(DslSemanticError) as excinfo:
        parse("field Q\nalgebra A { basis x; x*x = x; x*x = 0; }")
    assert excinfo.value.reason == "Duplicate product 'x*x'."

    with pytest.raises(DslSemanticError) as excinfo:
        parse("field Q\n" + ALGEBRA + "\n" + ALGEBRA)
    assert excinfo.value.reason == "Duplicate block name 'A'."

    with pytest.raises(DslSemanticError) as excinfo:
        parse("field Q\n" + GROUP + "\n" + ALGEBRA +
              "\nalgebra C { basis x; }\ngrading B by G { 1: x; }")
    assert excinfo.value.reason == "Cannot infer the algebra: 2 declared, use 'on'."

    with pytest.raises(DslSemanticError) as excinfo:
        parse("field Q\n" + GROUP + "\n" + ALGEBRA + "\ngrading B { h: e1; }")
    assert excinfo.value.reason == "Unknown group element 'h'."

    with pytest.raises(DslSemanticError) as excinfo:
        parse("field F 5/2\n")
    assert str(excinfo.value) == "1:9: Invalid field characteristic '5/2'."


def test_build_workspace():
    """Validate the kernel objects declared by a document."""
    ws = load(CANONICAL)
    gb = ws.select("grading")
    assert gb is ws.gradings["B"]
    assert [c.vectors for c in gb.components] == [[Q.vector([1, 1])],
                                                   [Q.vector([1, -1])]]
    action = ws.select("action", "T")
    assert verify_action(action).passed
    assert action.iso(1) == Matrix.from_rows(Q, [Q.vector([0, 1]), Q.vector([1, 0])])
    assert ws.select("group").order == 2
    assert ws.select("algebra").basis_names == ("e1", "e2")


def test_select_errors():
    """Validate missing and ambiguous block selections."""
    ws = load(CANONICAL + "\ngrading C { 1: e1, e2; }\n")
    with pytest.raises(DslSemanticError) as excinfo:
        ws.select("grading")
    assert excinfo.value.reason == \
        "Expected exactly one grading block, found 2; use --name."
    assert ws.select("grading", "C").identity_component.is_full()

    with pytest.raises(DslSemanticError) as excinfo:
        ws.select("action", "X")
    assert excinfo.value.reason == "No action named 'X'."


def test_resolution_errors_are_located():
    """Validate kernel errors surface at the offending declaration."""
    text = "field Q\nalgebra A {\n    basis a b;\n    a*a = b;\n    b*a = a;\n}\n"
    with pytest.raises(DslSemanticError) as excinfo:
        load(text)
    assert (excinfo.value.line, excinfo.value.column) == (2, 1)
    assert excinfo.value.name == "A"
    assert "(a*a)*a != a*(a*a)" in excinfo.value.reason

    text = "\n".join(["field Q", GROUP, ALGEBRA,
                      "action T {", "    domain g: e1, e2;",
                      "    theta g: [[1]];", "}"])
    with pytest.raises(DslSemanticError) as excinfo:
        load(text)
    assert excinfo.value.reason == "theta g must be 2x2, got 1x1."
    assert excinfo.value.name == "g"

    text = "\n".join(["field Q", GROUP, ALGEBRA, "grading B { 1: e1; g: e2; }"])
    with pytest.raises(DslSemanticError) as excinfo:
        load(text)
    assert excinfo.value.name == "B"
    assert "is not inside" in excinfo.value.reason


def test_documents_from_kernel_objects():
    """Validate generated documents print canonically and load back."""
    doc = document_from_action(swap_action(Q))
    assert print_document(doc) == \
        "\n\n".join(["field Q", GROUP, ALGEBRA, ACTION]) + "\n"
    assert parse(print_document(doc)) == doc

    gb = m2_grading(Q)
    text = print_document(document_from_grading(gb))
    loaded = build_workspace(parse(text)).select("grading")
    assert check_graded_isomorphism(gb, loaded, Matrix.identity(Q, 4)).passed

    text = print_document(document_from_algebra(gb.ambient, name="M"))
    assert text.startswith("field Q\n\nalgebra M {\n    basis e11 e12 e21 e22;\n")
    assert load(text).select("algebra", "M").basis_names == \
        gb.ambient.basis_names
