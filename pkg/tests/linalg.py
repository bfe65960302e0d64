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
"""Tests for the :mod:`xprod.linalg` module."""

from xprod.errors import DimensionMismatch, MembershipError
from xprod.fields import Field, RATIONALS
from xprod.linalg import LinearSolver, Matrix, full_space, hstack, kernel, \
    linear_combination, matrix_of, rref, solve, span, subspace_contains, \
    subspace_intersect, subspace_sum, vec_add, vec_is_zero, vec_scale, vec_sub, \
    vstack, zero_subspace

import pytest

Q = RATIONALS
F5 = Field(5)


def mat(fld: Field, rows) -> Matrix:
    """Build a matrix from integer rows."""
    return Matrix.from_rows(fld, [[fld(a) for a in r] for r in rows])


def vec(fld: Field, *values):
    """Build a vector from integers."""
    return fld.vector(values)


def test_vector_helpers():
    """Validate the vector arithmetic helpers."""
    x, y = vec(Q, 1, 2), vec(Q, 3, -2)
    assert vec_add(x, y) == vec(Q, 4, 0)
    assert vec_sub(x, y) == vec(Q, -2, 4)
    assert vec_scale(Q(2), x) == vec(Q, 2, 4)
    assert vec_is_zero(vec_sub(x, x))
    assert linear_combination(Q, [Q(1), Q(1)], [x, y], 2) == vec(Q, 4, 0)
    with pytest.raises(DimensionMismatch):
        vec_add(x, vec(Q, 1))
    with pytest.raises(DimensionMismatch):
        vec_sub(x, vec(Q, 1, 2, 3))


def test_matrix_construction():
    """Validate shape checks of the matrix constructors."""
    with pytest.raises(DimensionMismatch) as excinfo:
        Matrix(Q, 2, 2, (Q.one,))
    assert "needs 4 entries" in str(excinfo.value)
    with pytest.raises(DimensionMismatch) as excinfo:
        mat(Q, [[1, 2], [3]])
    assert "Ragged rows" in str(excinfo.value)
    with pytest.raises(ValueError) as excinfo:
        Matrix.from_rows(Q, [])
    assert "Column count required" in str(excinfo.value)
    assert Matrix.from_rows(Q, [], 3).shape == (0, 3)
    assert Matrix.identity(Q, 2) == mat(Q, [[1, 0], [0, 1]])
    assert Matrix.zeros(Q, 1, 2) == mat(Q, [[0, 0]])


def test_matrix_row_convention():
    """Validate matrices act on row vectors."""
    m = mat(Q, [[1, 2], [3, 4]])
    assert m.apply(vec(Q, 1, 0)) == vec(Q, 1, 2)
    assert m.apply(vec(Q, 0, 1)) == vec(Q, 3, 4)
    assert m.row(1) == vec(Q, 3, 4)
    assert m.column(0) == vec(Q, 1, 3)
    assert m.transpose() == mat(Q, [[1, 3], [2, 4]])
    with pytest.raises(DimensionMismatch):
        m.apply(vec(Q, 1, 2, 3))


def test_matrix_arithmetic():
    """Validate products, sums and scaling."""
    a = mat(Q, [[1, 2], [3, 4]])
    b = mat(Q, [[0, 1], [1, 0]])
    assert a @ b == mat(Q, [[2, 1], [4, 3]])
    assert a + b == mat(Q, [[1, 3], [4, 4]])
    assert a - a == Matrix.zeros(Q, 2, 2)
    assert b.scale(Q(3)) == mat(Q, [[0, 3], [3, 0]])
    with pytest.raises(DimensionMismatch):
        a @ mat(Q, [[1, 2, 3]])
    with pytest.raises(DimensionMismatch):
        a + mat(Q, [[1, 2]])
    assert hstack(a, b).shape == (2, 4)
    assert vstack(a, b).shape == (4, 2)
    with pytest.raises(DimensionMismatch):
        hstack(a, mat(Q, [[1]]))


@pytest.mark.parametrize("fld", [Q, F5])
def test_inverse(fld: Field):
    """Validate exact inversion and singular detection."""
    a = mat(fld, [[1, 2], [3, 4]])
    inv = a.inverse()
    assert inv is not None
    assert a @ inv == Matrix.identity(fld, 2)
    assert a.is_invertible()
    singular = mat(fld, [[1, 2], [2, 4]])
    assert singular.inverse() is None
    assert not singular.is_invertible()
    assert mat(fld, [[1, 2]]).inverse() is None
    assert Matrix.zeros(fld, 0, 0).is_invertible()


def test_inverse_depends_on_characteristic():
    """Validate a rational invertible matrix can be singular mod 5."""
    a = [[1, 2], [3, 11]]
    assert mat(Q, a).is_invertible()
    assert not mat(F5, a).is_invertible()


def test_rref():
    """Validate the reduced echelon form drops zero rows."""
    reduced, pivots = rref(mat(Q, [[2, 4, 2], [1, 2, 2], [3, 6, 4]]))
    assert pivots == (0, 2)
    assert reduced == mat(Q, [[1, 2, 0], [0, 0, 1]])
    assert mat(Q, [[1, 2], [2, 4]]).rank() == 1
    empty, none = rref(Matrix.from_rows(Q, [], 2))
    assert empty.shape == (0, 2) and none == ()


def test_solve():
    """Validate the column convention of solve and inconsistency."""
    a = mat(Q, [[1, 1], [1, -1]])
    b = mat(Q, [[3], [1]])
    x = solve(a, b)
    assert x == mat(Q, [[2], [1]])
    assert solve(mat(Q, [[1, 1], [1, 1]]), mat(Q, [[1], [2]])) is None
    with pytest.raises(DimensionMismatch):
        solve(a, mat(Q, [[1]]))


def test_linear_solver_reuse():
    """Validate one elimination serves many right hand sides."""
    solver = LinearSolver(mat(F5, [[1, 2, 0], [0, 0, 1]]))
    assert solver.rank == 2
    x = solver.solve_vector(vec(F5, 3, 4))
    assert x == vec(F5, 3, 0, 4)
    assert solver.solve_vector(vec(F5, 0, 0)) == vec(F5, 0, 0, 0)
    rank_one = LinearSolver(mat(F5, [[1, 1], [2, 2]]))
    assert rank_one.solve_vector(vec(F5, 1, 1)) is None
    with pytest.raises(DimensionMismatch):
        solver.solve_vector(vec(F5, 1))


def test_span_is_canonical():
    """Validate equal subspaces compare equal whatever their spanning set."""
    u = span(Q, 3, [vec(Q, 1, 1, 0), vec(Q, 0, 1, 0)])
    v = span(Q, 3, [vec(Q, 2, 0, 0), vec(Q, 1, 3, 0), vec(Q, 0, 0, 0)])
    assert u == v
    assert u.dim == 2
    assert vec(Q, 5, -1, 0) in u
    assert vec(Q, 0, 0, 1) not in u
    assert u.coordinates(vec(Q, 5, -1, 0)) == vec(Q, 5, -1)
    assert zero_subspace(Q, 3).is_zero()
    assert full_space(Q, 3).is_full()
    with pytest.raises(DimensionMismatch):
        span(Q, 2, [vec(Q, 1, 2, 3)])


def test_require_coordinates():
    """Validate membership errors carry the offending vector."""
    u = span(Q, 2, [vec(Q, 1, 0)])
    with pytest.raises(MembershipError) as excinfo:
        u.require_coordinates(vec(Q, 0, 1), what="domain")
    assert "member of the domain" in str(excinfo.value)
    assert excinfo.value.witness == vec(Q, 0, 1)
    with pytest.raises(DimensionMismatch):
        u.combine(vec(Q, 1, 2))


def test_kernel():
    """Validate the right null space."""
    k = kernel(mat(Q, [[1, 1, 0], [0, 0, 1]]))
    assert k == span(Q, 3, [vec(Q, 1, -1, 0)])
    assert kernel(Matrix.identity(Q, 2)).is_zero()


def test_sum_intersect_contains():
    """Validate the subspace lattice operations."""
    x = span(Q, 3, [vec(Q, 1, 0, 0), vec(Q, 0, 1, 0)])
    y = span(Q, 3, [vec(Q, 0, 1, 0), vec(Q, 0, 0, 1)])
    assert subspace_sum(x, y).is_full()
    assert subspace_intersect(x, y) == span(Q, 3, [vec(Q, 0, 1, 0)])
    assert subspace_intersect(x, zero_subspace(Q, 3)).is_zero()
    assert subspace_contains(x, subspace_intersect(x, y))
    assert not subspace_contains(x, y)
    with pytest.raises(DimensionMismatch):
        subspace_sum(x, full_space(Q, 2))


def test_matrix_of():
    """Validate images are expressed in the target basis."""
    target = span(Q, 3, [vec(Q, 1, 0, 0), vec(Q, 0, 1, 1)])
    m = matrix_of([vec(Q, 0, 2, 2), vec(Q, 1, 0, 0)], target)
    assert m == mat(Q, [[0, 2], [1, 0]])
    with pytest.raises(MembershipError):
        matrix_of([vec(Q, 0, 1, 0)], target, what="image")
