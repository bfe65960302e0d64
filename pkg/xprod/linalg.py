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
Dense exact linear algebra over a |Field|.

Conventions used throughout :mod:`xprod`:

- vectors are tuples of field elements;
- a |Matrix| describing a linear map acts on **row** vectors: row ``i`` is the image of
  the ``i``-th basis vector of the source, so ``x -> x @ M``;
- :func:`solve` and :func:`kernel` use the usual column convention ``a @ x = b``;
- subspaces are |SubspaceBasis| values whose basis is in reduced row echelon form, so
  subspace equality is plain ``==``.

Row reduction is delegated to :class:`sympy.polys.matrices.DomainMatrix`.

.. |Matrix| replace:: :class:`~xprod.linalg.Matrix`
.. |SubspaceBasis| replace:: :class:`~xprod.linalg.SubspaceBasis`
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from .errors import DimensionMismatch, MembershipError
from .fields import Element, Field, Vector


########################################################################################
# Vectors.                                                                             #
########################################################################################
def vec_add(x: Vector, y: Vector) -> Vector:
    """Return ``x + y``."""
    if len(x) != len(y):
        raise DimensionMismatch(f"Cannot add vectors of lengths {len(x)} and {len(y)}.")
    return tuple(a + b for a, b in zip(x, y))


def vec_sub(x: Vector, y: Vector) -> Vector:
    """Return ``x - y``."""
    if len(x) != len(y):
        raise DimensionMismatch(
            f"Cannot subtract vectors of lengths {len(x)} and {len(y)}.")
    return tuple(a - b for a, b in zip(x, y))


def vec_scale(c: Element, x: Vector) -> Vector:
    """Return ``c * x``."""
    return tuple(c * a for a in x)


def vec_is_zero(x: Vector) -> bool:
    """Whether every coordinate of ``x`` is zero."""
    return not any(x)


def linear_combination(field: Field, coefficients: Sequence[Element],
                       vectors: Sequence[Vector], length: int) -> Vector:
    """Return ``sum(c * v)`` as a vector of the given ``length``."""
    acc = list(field.zero_vector(length))
    for c, v in zip(coefficients, vectors):
        if not c:
            continue
        for k, a in enumerate(v):
            if a:
                acc[k] += c * a
    return tuple(acc)


########################################################################################
# Matrices.                                                                            #
########################################################################################
@dataclass(frozen=True)
class Matrix:
    """
    An immutable dense matrix over a |Field|.

    Parameters
    ----------
    field : Field
        The base field.

    rows : int
        Number of rows.

    cols : int
        Number of columns.

    entries : tuple
        The ``rows * cols`` entries in row-major order.
    """

    field: Field
    rows: int
    cols: int
    entries: Tuple[Element, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"Matrix of shape {self.rows}x{self.cols} needs "
                f"{self.rows * self.cols} entries, got {len(self.entries)}.")

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Sequence[Element]],
                  cols: Optional[int] = None) -> "Matrix":
        """
        Build a matrix from a sequence of rows.

        ``cols`` must be supplied when there are no rows.
        """
        rows = [tuple(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("Column count required for a matrix without rows.")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatch(f"Ragged rows: expected {cols} entries.")
        return cls(field, len(rows), cols, tuple(a for r in rows for a in r))

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        """Return the ``rows x cols`` zero matrix."""
        return cls(field, rows, cols, (field.zero,) * (rows * cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        """Return the ``n x n`` identity matrix."""
        return cls.from_rows(field, (field.unit_vector(n, i) for i in range(n)), n)

    @property
    def shape(self) -> Tuple[int, int]:
        """The pair ``(rows, cols)``."""
        return (self.rows, self.cols)

    def row(self, i: int) -> Vector:
        """Return row ``i``."""
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def row_tuples(self) -> List[Vector]:
        """Return all rows."""
        return [self.row(i) for i in range(self.rows)]

    def column(self, j: int) -> Vector:
        """Return column ``j``."""
        return self.entries[j::self.cols] if self.rows else ()

    def transpose(self) -> "Matrix":
        """Return the transpose."""
        return Matrix.from_rows(
            self.field, (self.column(j) for j in range(self.cols)), self.rows)

    def apply(self, x: Vector) -> Vector:
        """Return the row vector ``x @ self`` (the image of ``x`` under the map)."""
        if len(x) != self.rows:
            raise DimensionMismatch(
                f"Vector of length {len(x)} cannot act on a {self.rows}x{self.cols} "
                "matrix.")
        return linear_combination(self.field, x, self.row_tuples(), self.cols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"Cannot multiply {self.rows}x{self.cols} by "
                f"{other.rows}x{other.cols}.")
        return Matrix.from_rows(
            self.field, (other.apply(r) for r in self.row_tuples()), other.cols)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"Cannot add {self.shape} and {other.shape}.")
        return Matrix(self.field, self.rows, self.cols,
                      tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"Cannot subtract {self.shape} and {other.shape}.")
        return Matrix(self.field, self.rows, self.cols,
                      tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, c: Element) -> "Matrix":
        """Return ``c * self``."""
        return Matrix(self.field, self.rows, self.cols,
                      tuple(c * a for a in self.entries))

    def is_square(self) -> bool:
        """Whether ``rows == cols``."""
        return self.rows == self.cols

    def rank(self) -> int:
        """Return the rank."""
        return len(rref(self)[1])

    def is_invertible(self) -> bool:
        """Whether the matrix is square of full rank (the empty one is invertible)."""
        return self.is_square() and self.rank() == self.rows

    def inverse(self) -> Optional["Matrix"]:
        """Return the inverse, or ``None`` when the matrix is singular or not square."""
        if not self.is_square():
            return None
        n = self.rows
        if n == 0:
            return self
        augmented = hstack(self, Matrix.identity(self.field, n))
        reduced, pivots = rref(augmented)
        if tuple(pivots[:n]) != tuple(range(n)) or len(pivots) != n:
            return None
        return Matrix.from_rows(self.field, (r[n:] for r in reduced.row_tuples()), n)


def hstack(left: Matrix, right: Matrix) -> Matrix:
    """Return ``[left | right]``."""
    if left.rows != right.rows:
        raise DimensionMismatch(f"Cannot stack {left.shape} beside {right.shape}.")
    return Matrix.from_rows(
        left.field,
        (a + b for a, b in zip(left.row_tuples(), right.row_tuples())),
        left.cols + right.cols)


def vstack(top: Matrix, bottom: Matrix) -> Matrix:
    """Return ``top`` above ``bottom``."""
    if top.cols != bottom.cols:
        raise DimensionMismatch(f"Cannot stack {top.shape} above {bottom.shape}.")
    return Matrix(top.field, top.rows + bottom.rows, top.cols,
                  top.entries + bottom.entries)


def rref(m: Matrix) -> Tuple[Matrix, Tuple[int, ...]]:
    """
    Return the reduced row echelon form of ``m`` without zero rows, and its pivots.

    Parameters
    ----------
    m : Matrix
        Any matrix.

    Returns
    -------
    tuple
        ``(reduced, pivots)`` where ``reduced`` has exactly ``len(pivots)`` rows.
    """
    if m.rows == 0 or m.cols == 0:
        return Matrix.zeros(m.field, 0, m.cols), ()
    dm = DomainMatrix([list(r) for r in m.row_tuples()], m.shape, m.field.domain)
    reduced, pivots = dm.rref()
    pivots = tuple(int(p) for p in pivots)
    rows = reduced.to_list()[:len(pivots)]
    return Matrix.from_rows(m.field, rows, m.cols), pivots


class LinearSolver:
    """
    Solve ``a @ x = b`` for many right hand sides with a single elimination.

    The elimination of ``[a | I]`` yields ``E`` with ``E @ a`` in reduced row echelon
    form.  Each solve is then a matrix-vector product.  Free variables are set to zero.

    Parameters
    ----------
    a : Matrix
        The coefficient matrix.
    """

    def __init__(self, a: Matrix):
        self.a = a
        field = a.field
        m, n = a.shape
        if m == 0:
            self._transform = Matrix.zeros(field, 0, 0)
            self._pivots = ()  # type: Tuple[int, ...]
            return
        augmented = hstack(a, Matrix.identity(field, m))
        dm = DomainMatrix([list(r) for r in augmented.row_tuples()], augmented.shape,
                          field.domain)
        reduced, pivots = dm.rref()
        rows = reduced.to_list()
        self._pivots = tuple(int(p) for p in pivots if p < n)
        self._transform = Matrix.from_rows(field, (r[n:] for r in rows), m)

    @property
    def rank(self) -> int:
        """The rank of ``a``."""
        return len(self._pivots)

    def solve_vector(self, b: Vector) -> Optional[Vector]:
        """Return some ``x`` with ``a @ x = b``, or ``None`` if inconsistent."""
        field = self.a.field
        m, n = self.a.shape
        if len(b) != m:
            raise DimensionMismatch(
                f"Right hand side of length {len(b)}, expected {m}.")
        if m == 0:
            return field.zero_vector(n)
        # y = E @ b, computed as b @ E^T row by row.
        y = [sum((e * c for e, c in zip(self._transform.row(i), b) if e and c),
                 field.zero) for i in range(m)]
        if any(y[self.rank:]):
            return None
        x = list(field.zero_vector(n))
        for i, p in enumerate(self._pivots):
            x[p] = y[i]
        return tuple(x)


def solve(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """
    Solve ``a @ x = b`` exactly.

    Parameters
    ----------
    a : Matrix
        Coefficient matrix.

    b : Matrix
        Right hand sides, one per column; ``b.rows == a.rows``.

    Returns
    -------
    Matrix or None
        A solution with free variables set to zero, or ``None`` when inconsistent.

    Raises
    ------
    DimensionMismatch
        If ``a.rows != b.rows``.
    """
    if a.rows != b.rows:
        raise DimensionMismatch(f"solve: a has {a.rows} rows but b has {b.rows}.")
    solver = LinearSolver(a)
    columns = []
    for j in range(b.cols):
        x = solver.solve_vector(b.column(j))
        if x is None:
            return None
        columns.append(x)
    return Matrix.from_rows(a.field, columns, a.cols).transpose() if columns else \
        Matrix.zeros(a.field, a.cols, 0)


########################################################################################
# Subspaces.                                                                           #
########################################################################################
@dataclass(frozen=True)
class SubspaceBasis:
    """
    A subspace of ``field ** ambient_dim`` in canonical (RREF) form.

    Build instances with :func:`span`; the constructor trusts its input.

    Parameters
    ----------
    field : Field
        The base field.

    ambient_dim : int
        The dimension of the ambient space.

    basis : Matrix
        RREF basis, one vector per row, no zero rows.

    pivots : tuple
        The pivot columns of ``basis``.
    """

    field: Field
    ambient_dim: int
    basis: Matrix
    pivots: Tuple[int, ...]

    @property
    def dim(self) -> int:
        """The dimension of the subspace."""
        return self.basis.rows

    @property
    def vectors(self) -> List[Vector]:
        """The canonical basis vectors."""
        return self.basis.row_tuples()

    def is_zero(self) -> bool:
        """Whether this is the zero subspace."""
        return self.dim == 0

    def is_full(self) -> bool:
        """Whether this is the whole ambient space."""
        return self.dim == self.ambient_dim

    def coordinates(self, v: Vector) -> Optional[Vector]:
        """
        Return the coordinates of ``v`` in the canonical basis, or ``None``.

        The basis is in RREF, so the candidate coordinates are the entries of ``v`` at
        the pivot columns; membership is confirmed by recombining.
        """
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(
                f"Vector of length {len(v)} in a space of dimension "
                f"{self.ambient_dim}.")
        coords = tuple(v[p] for p in self.pivots)
        if self.combine(coords) != tuple(v):
            return None
        return coords

    def require_coordinates(self, v: Vector, *, what: str = "subspace") -> Vector:
        """
        Like :func:`coordinates` but raise when ``v`` is not a member.

        Raises
        ------
        MembershipError
            If ``v`` does not lie in the subspace.
        """
        coords = self.coordinates(v)
        if coords is None:
            raise MembershipError(f"Vector is not a member of the {what}.", witness=v)
        return coords

    def __contains__(self, v: Vector) -> bool:
        return self.coordinates(v) is not None

    def combine(self, coords: Sequence[Element]) -> Vector:
        """Return the ambient vector with the given coordinates."""
        if len(coords) != self.dim:
            raise DimensionMismatch(
                f"{len(coords)} coordinates for a subspace of dimension {self.dim}.")
        return linear_combination(self.field, coords, self.vectors, self.ambient_dim)


def span(field: Field, ambient_dim: int, vectors: Iterable[Vector]) -> SubspaceBasis:
    """Return the canonical basis of the span of ``vectors``."""
    vectors = [tuple(v) for v in vectors]
    for v in vectors:
        if len(v) != ambient_dim:
            raise DimensionMismatch(
                f"Vector of length {len(v)} in a space of dimension {ambient_dim}.")
    reduced, pivots = rref(Matrix.from_rows(field, vectors, ambient_dim))
    return SubspaceBasis(field, ambient_dim, reduced, pivots)


def zero_subspace(field: Field, ambient_dim: int) -> SubspaceBasis:
    """Return the zero subspace."""
    return span(field, ambient_dim, [])


def full_space(field: Field, ambient_dim: int) -> SubspaceBasis:
    """Return the whole space with its standard basis."""
    return SubspaceBasis(field, ambient_dim, Matrix.identity(field, ambient_dim),
                         tuple(range(ambient_dim)))


def _same_ambient(u: SubspaceBasis, v: SubspaceBasis):
    if u.ambient_dim != v.ambient_dim or u.field != v.field:
        raise DimensionMismatch(
            f"Subspaces of {u.field}^{u.ambient_dim} and {v.field}^{v.ambient_dim} "
            "cannot be combined.")


def kernel(a: Matrix) -> SubspaceBasis:
    """Return the right null space ``{v : a @ v = 0}`` in canonical form."""
    field = a.field
    reduced, pivots = rref(a)
    free = [j for j in range(a.cols) if j not in pivots]
    vectors = []
    for f in free:
        v = list(field.zero_vector(a.cols))
        v[f] = field.one
        for i, p in enumerate(pivots):
            v[p] = -reduced.row(i)[f]
        vectors.append(tuple(v))
    return span(field, a.cols, vectors)


def subspace_sum(u: SubspaceBasis, v: SubspaceBasis) -> SubspaceBasis:
    """Return ``U + V``."""
    _same_ambient(u, v)
    return span(u.field, u.ambient_dim, u.vectors + v.vectors)


def subspace_intersect(u: SubspaceBasis, v: SubspaceBasis) -> SubspaceBasis:
    """
    Return ``U & V``.

    Pairs ``(a, b)`` with ``sum a_i u_i = sum b_j v_j`` are the kernel of the matrix
    whose columns are the two bases; the intersection is spanned by the ``a`` halves.
    """
    _same_ambient(u, v)
    if u.is_zero() or v.is_zero():
        return zero_subspace(u.field, u.ambient_dim)
    stacked = Matrix.from_rows(
        u.field, u.vectors + [vec_scale(-u.field.one, w) for w in v.vectors],
        u.ambient_dim)
    relations = kernel(stacked.transpose())
    return span(u.field, u.ambient_dim,
                (u.combine(r[:u.dim]) for r in relations.vectors))


def subspace_contains(u: SubspaceBasis, v: SubspaceBasis) -> bool:
    """Whether ``V`` is contained in ``U``."""
    _same_ambient(u, v)
    return all(w in u for w in v.vectors)


def matrix_of(images: Sequence[Vector], target: SubspaceBasis, *,
              what: str = "target") -> Matrix:
    """
    Return the matrix of a linear map from the images of a source basis.

    Parameters
    ----------
    images : sequence of vectors
        Ambient images of the canonical source basis, in order.

    target : SubspaceBasis
        The subspace the images must lie in; rows are coordinates in its basis.

    what : str
        Name of the target used in error messages.

    Raises
    ------
    MembershipError
        If some image does not lie in ``target``.
    """
    return Matrix.from_rows(
        target.field, (target.require_coordinates(x, what=what) for x in images),
        target.dim)
