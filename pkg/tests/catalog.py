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
"""Tests for the :mod:`xprod.catalog` module."""

from xprod.action import verify_action
from xprod.algebra import unit_element
from xprod.catalog import coordinate_algebra, corrupt_cocycle, \
    dual_numbers, dual_numbers_grading, find_quaternion_cocycle, group_algebra, \
    group_algebra_grading, m2_grading, matrix_algebra, quaternion_action, \
    random_twisted_action, scalar_twist_action, trivial_action, upper_nilpotent, \
    upper_nilpotent_grading
from xprod.fields import Field, RATIONALS
from xprod.groups import cyclic_group, klein_four_group
from xprod.linalg import Matrix

import pytest

Q = RATIONALS
F5 = Field(5)


def test_hand_algebras():
    """Validate the basis names and a few products of the named algebras."""
    k3 = coordinate_algebra(Q, 3)
    assert k3.basis_names == ("e1", "e2", "e3")
    assert unit_element(k3) == Q.vector([1, 1, 1])
    assert coordinate_algebra(Q, 2, prefix="y").basis_names == ("y1", "y2")

    m2 = matrix_algebra(F5)
    e11, e12, e21, e22 = m2.basis_vectors()
    assert m2.multiply(e12, e21) == e11
    assert m2.multiply(e21, e12) == e22
    assert m2.multiply(e12, e12) == F5.zero_vector(4)

    dual = dual_numbers(Q)
    one, x = dual.basis_vectors()
    assert dual.multiply(x, x) == Q.zero_vector(2)
    assert dual.multiply(one, x) == x

    nil = upper_nilpotent(Q)
    e12, e13, e23 = nil.basis_vectors()
    assert nil.multiply(e12, e23) == e13
    assert nil.multiply(e23, e12) == Q.zero_vector(3)
    assert unit_element(nil) is None

    kv4 = group_algebra(Q, klein_four_group())
    assert kv4.basis_names == ("u_1", "u_a", "u_b", "u_c")
    assert kv4.is_commutative()


@pytest.mark.parametrize("build", [m2_grading, dual_numbers_grading,
                                   upper_nilpotent_grading])
@pytest.mark.parametrize("fld", [Q, F5])
def test_named_gradings(build, fld: Field):
    """Validate the named gradings are gradings of the expected algebras."""
    gb = build(fld)
    assert gb.field == fld
    assert sum(c.dim for c in gb.components) == gb.ambient.dim


def test_group_algebra_grading():
    """Validate ``kG`` is graded by one line per element."""
    gb = group_algebra_grading(F5, cyclic_group(3))
    assert [c.dim for c in gb.components] == [1, 1, 1]
    assert gb.domain(1) == gb.identity_component


def test_quaternion_cocycle():
    """Validate the quaternion sign cocycle and its characteristic restriction."""
    group = klein_four_group()
    a, b = group.index("a"), group.index("b")
    w = find_quaternion_cocycle(Q)
    assert w[(a, a)] == -Q.one
    assert w[(b, b)] == -Q.one
    assert w[(a, b)] == -w[(b, a)]
    assert set(w.values()) <= {Q.one, -Q.one}

    with pytest.raises(ValueError) as excinfo:
        find_quaternion_cocycle(Field(2))
    assert str(excinfo.value) == "The quaternion cocycle needs -1 != 1."


def test_scalar_twist_actions():
    """Validate trivial and scalar twisted actions on ``k``."""
    trivial = trivial_action(Q, cyclic_group(3))
    assert trivial.ambient.dim == 1
    assert verify_action(trivial).passed
    assert all(w.r_matrix == Matrix.identity(Q, 1)
               for w in trivial.twists.values())

    twisted = scalar_twist_action(F5, cyclic_group(2), {(1, 1): 3})
    assert twisted.twist(1, 1).r_matrix.entries == (F5(3),)
    assert verify_action(twisted).passed


def test_corrupt_cocycle():
    """Validate only the chosen twist changes sign."""
    action = quaternion_action(Q)
    corrupted = corrupt_cocycle(action)
    group = action.group
    a, b = group.index("a"), group.index("b")
    for pair, w in action.twists.items():
        flipped = corrupted.twist(*pair)
        if pair == (a, b):
            assert flipped.r_matrix == w.r_matrix.scale(-Q.one)
            assert flipped.l_matrix == w.l_matrix.scale(-Q.one)
        else:
            assert flipped.r_matrix == w.r_matrix

    other = corrupt_cocycle(action, b, a)
    assert other.twist(b, a).r_matrix == action.twist(b, a).r_matrix.scale(-Q.one)
    assert not verify_action(other).passed


@pytest.mark.parametrize("fld", [Q, F5])
def test_random_twisted_action(fld: Field):
    """Validate random actions are verified and determined by the seed."""
    for seed in range(5):
        first = random_twisted_action(fld, seed)
        second = random_twisted_action(fld, seed)
        assert verify_action(first).passed
        assert first.group == second.group
        assert first.ambient.dim == second.ambient.dim
        assert first.ambient.dim <= 6
        assert first.isos == second.isos
        assert first.group.order in (2, 3, 4)


def test_random_twisted_action_matrix_blocks():
    """Validate random actions include non-central twists over ``M_2`` blocks."""
    two_sided = 0
    for seed in range(50):
        action = random_twisted_action(F5, seed)
        if any(w.r_matrix != w.l_matrix for w in action.twists.values()):
            assert not action.ambient.is_commutative()
            two_sided += 1
    assert two_sided > 0


def test_random_twisted_action_dimension():
    """Validate ``max_dim`` bounds the acted upon algebra."""
    for seed in range(5):
        assert random_twisted_action(F5, seed, max_dim=1).ambient.dim == 1

    with pytest.raises(ValueError) as excinfo:
        random_twisted_action(F5, 0, max_dim=0)
    assert str(excinfo.value) == "max_dim must be positive, got 0."
