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
"""Tests for the :mod:`xprod.graded` module."""

from xprod.catalog import dual_numbers_grading, m2_grading, matrix_algebra, \
    partial_action, swap_action, upper_nilpotent_grading
from xprod.crossed import build_crossed_product, build_uv_for_crossed, \
    canonical_grading
from xprod.errors import DimensionMismatch, NotDirectSum, NotGraded, \
    PreconditionFailed
from xprod.fields import Field, RATIONALS
from xprod.graded import CORNERS, LinkingAlgebra, build_linking_algebra, \
    check_component_identities, check_condition_i, check_graded_isomorphism, \
    check_homogeneous_nondegeneracy, check_lemma_uv_properties, component_products, \
    corner_isomorphism, corner_pair_from_maps, grading_from_spans, \
    identity_component_algebra, identity_corner_pair, is_graded_isomorphic, \
    make_graded, validate_corner_pair
from xprod.groups import cyclic_group, klein_four_group
from xprod.linalg import Matrix, span
from xprod.multipliers import mult_compose

import pytest

Q = RATIONALS
F5 = Field(5)


def _m2_spaces(fld: Field, *groups):
    alg = matrix_algebra(fld)
    return alg, [alg.span([alg.basis_vector(alg.basis_names.index(n)) for n in names])
                 for names in groups]


def test_make_graded_errors():
    """Validate :func:`make_graded` rejects invalid decompositions."""
    z2 = cyclic_group(2)
    alg, (diag,) = _m2_spaces(Q, ["e11", "e22"])
    with pytest.raises(DimensionMismatch) as excinfo:
        make_graded(alg, z2, [diag])
    assert str(excinfo.value) == "Expected 2 grading components, got 1."

    with pytest.raises(DimensionMismatch) as excinfo:
        make_graded(alg, z2, [diag, span(Q, 3, [])])
    assert str(excinfo.value) == "Grading component outside the algebra."

    with pytest.raises(DimensionMismatch) as excinfo:
        make_graded(alg, z2, {0: diag, 5: diag})
    assert "unknown group element" in str(excinfo.value)

    alg, (diag, mixed) = _m2_spaces(Q, ["e11", "e22"], ["e11", "e12"])
    with pytest.raises(NotDirectSum) as excinfo:
        make_graded(alg, z2, [diag, mixed])
    assert excinfo.value.witness == ("g", Q.vector([1, 0, 0, 0]))
    assert str(excinfo.value) == "Component 'g' meets the earlier components in e11."

    alg, (first, second) = _m2_spaces(Q, ["e11"], ["e12"])
    with pytest.raises(NotDirectSum) as excinfo:
        make_graded(alg, z2, [first, second])
    assert str(excinfo.value) == "Components span 2 of 4 dimensions."

    alg, (top, bottom) = _m2_spaces(Q, ["e11", "e12"], ["e21", "e22"])
    with pytest.raises(NotGraded) as excinfo:
        make_graded(alg, z2, [top, bottom])
    assert excinfo.value.witness == ("1", "g", Q.vector([1, 0, 0, 0]))
    assert str(excinfo.value) == "B_1 B_g is not inside B_g: e11."


def test_grading_from_spans_unknown_name():
    """Validate unknown element names raise ``KeyError``."""
    alg = matrix_algebra(Q)
    with pytest.raises(KeyError):
        grading_from_spans(alg, cyclic_group(2), {"h": alg.basis_vectors()})


def test_mapping_components_default_to_zero():
    """Validate components missing from a mapping are zero."""
    alg = matrix_algebra(Q)
    gb = make_graded(alg, cyclic_group(3), {0: alg.full()})
    assert [c.dim for c in gb.components] == [4, 0, 0]
    report = check_condition_i(gb)
    assert report.passed
    assert report.get("condition_i[g]").vacuous


@pytest.mark.parametrize("fld", [Q, F5])
def test_m2_grading(fld: Field):
    """Validate the ``Z2`` grading of ``M_2`` passes every grading check."""
    gb = m2_grading(fld)
    assert [c.dim for c in gb.components] == [2, 2]
    condition = check_condition_i(gb)
    assert [c.name for c in condition.checks] == ["condition_i[1]", "condition_i[g]"]
    assert condition.passed
    assert condition.get("condition_i[g]").detail == "dimension 2"
    assert check_homogeneous_nondegeneracy(gb).passed
    identities = check_component_identities(gb)
    assert [c.name for c in identities.checks] == [
        "domain_idempotent", "domains_commute", "left_absorption",
        "right_absorption", "domain_absorbs_component"]
    assert identities.passed
    domains = component_products(gb)
    assert {g: d.dim for g, d in domains.items()} == {0: 2, 1: 2}


def test_dual_numbers_grading():
    """Validate ``x`` in degree ``g`` breaks condition (i) and non-degeneracy."""
    gb = dual_numbers_grading(Q)
    condition = check_condition_i(gb)
    assert not condition.passed
    assert condition.get("condition_i[1]").passed
    failure = condition.first_failure()
    assert failure.name == "condition_i[g]"
    assert failure.witness == "x"
    assert failure.detail == "B_g B_g^-1 B_g has dimension 0, B_g has dimension 1"

    nondegenerate = check_homogeneous_nondegeneracy(gb)
    failure = nondegenerate.first_failure()
    assert failure.name == "nondegenerate[g]"
    assert failure.witness == "x"
    assert failure.detail == "x B_g^-1 = 0"
    assert gb.domain(1).is_zero()


def test_upper_nilpotent_grading():
    """Validate the zero identity component is vacuous and ``B_g`` fails."""
    gb = upper_nilpotent_grading(Q)
    condition = check_condition_i(gb)
    first = condition.get("condition_i[1]")
    assert first.passed and first.vacuous
    assert first.detail == "zero component"
    failure = condition.first_failure()
    assert failure.name == "condition_i[g]"
    assert failure.witness == "e12"


def test_homogeneous_parts_and_identity_algebra():
    """Validate splitting into components and the identity component algebra."""
    gb = m2_grading(Q)
    x = Q.vector([1, 2, 3, 4])
    assert gb.homogeneous_parts(x) == [Q.vector([1, 0, 0, 4]), Q.vector([0, 2, 3, 0])]
    b1 = identity_component_algebra(gb)
    assert b1 is gb.identity_algebra
    assert b1.basis_names == ("e11", "e22")
    assert b1.is_commutative()
    assert gb.to_identity(Q.vector([5, 0, 0, 7])) == Q.vector([5, 7])
    assert gb.from_identity(Q.vector([5, 7])) == Q.vector([5, 0, 0, 7])
    assert gb.describe(x) == "e11 + 2*e12 + 3*e21 + 4*e22"


def test_linking_algebra():
    """Validate the corners, basis and projections of ``C_g``."""
    gb = m2_grading(Q)
    link = build_linking_algebra(gb, 1)
    assert isinstance(link, LinkingAlgebra)
    assert link.corner_dims == {c: 2 for c in CORNERS}
    assert link.dim == 8
    assert link.as_algebra.basis_names[:3] == ("d0", "d1", "b0")
    assert repr(link) == "LinkingAlgebra(g=g, d=2, b=2, bi=2, di=2)"
    assert mult_compose(link.e11, link.e11) == link.e11
    assert mult_compose(link.e22, link.e22) == link.e22

    # e12 in the b corner times e21 in the bi corner lands in d.
    e12, e21 = Q.vector([0, 1, 0, 0]), Q.vector([0, 0, 1, 0])
    z = link.as_algebra.multiply(link.embed("b", e12), link.embed("bi", e21))
    assert link.split(z)["d"] == Q.vector([1, 0, 0, 0])
    assert link.split(z)["b"] == Q.vector([0, 0, 0, 0])


def test_identity_corner_pair():
    """Validate the shift pair at the identity and its precondition."""
    gb = m2_grading(Q)
    pair = identity_corner_pair(LinkingAlgebra(gb, 0))
    assert validate_corner_pair(pair) is None
    assert check_lemma_uv_properties(pair.link, pair).passed

    with pytest.raises(PreconditionFailed):
        identity_corner_pair(LinkingAlgebra(gb, 1))


def test_corner_pair_from_singular_maps():
    """Validate missing ``v`` maps need invertible ``u`` maps."""
    link = LinkingAlgebra(m2_grading(Q), 1)
    zero = Matrix.zeros(Q, 2, 2)
    maps = {name: zero for name in ("u_left_bi", "u_left_di", "u_right_d",
                                    "u_right_bi")}
    with pytest.raises(PreconditionFailed) as excinfo:
        corner_pair_from_maps(link, maps)
    assert str(excinfo.value) == "Corner map 'u_left_bi' is not invertible."


def test_corner_pair_validation_detects_failure():
    """Validate a scaled shift pair is rejected."""
    gb = m2_grading(Q)
    link = LinkingAlgebra(gb, 0)
    identity = Matrix.identity(Q, 2)
    maps = {name: identity for name in ("u_left_bi", "u_left_di", "u_right_d",
                                        "u_right_bi", "v_left_b", "v_right_di")}
    maps["v_left_d"] = identity.scale(Q(2))
    maps["v_right_b"] = identity.scale(Q(2))
    pair = corner_pair_from_maps(link, maps)
    assert validate_corner_pair(pair) is not None


@pytest.mark.parametrize("build", [swap_action, partial_action])
def test_lemma_uv_properties(build):
    """Validate every identity of a crossed product corner pair holds."""
    cp = build_crossed_product(build(Q))
    gb = canonical_grading(cp)
    pair = build_uv_for_crossed(cp, 1, graded=gb)
    report = check_lemma_uv_properties(pair.link, pair)
    assert len(report.checks) == 29
    assert report.passed, report.first_failure()
    assert report.get("(d u)bi = d(u bi)").passed
    assert corner_isomorphism(pair).is_invertible()


def test_graded_isomorphism():
    """Validate graded isomorphism checks on automorphisms of ``M_2``."""
    gb = m2_grading(Q)
    assert is_graded_isomorphic(gb, gb, Matrix.identity(Q, 4))

    rows = [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]
    conjugation = Matrix.from_rows(Q, [Q.vector(r) for r in rows])
    assert check_graded_isomorphism(gb, gb, conjugation).passed

    rows = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
    transpose = Matrix.from_rows(Q, [Q.vector(r) for r in rows])
    report = check_graded_isomorphism(gb, gb, transpose)
    assert report.get("bijective").passed
    assert report.get("preserves_grading").passed
    failure = report.get("multiplicative")
    assert not failure.passed
    assert failure.witness == "(e11, e12)"

    with pytest.raises(DimensionMismatch):
        check_graded_isomorphism(gb, gb, Matrix.identity(Q, 3))

    alg = matrix_algebra(Q)
    other = make_graded(alg, klein_four_group(), {0: alg.full()})
    with pytest.raises(DimensionMismatch):
        check_graded_isomorphism(gb, other, Matrix.identity(Q, 4))
