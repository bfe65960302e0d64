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
Finite dimensional associative algebras given by structure constants, and their ideals.

An algebra need not be unital.  Products of subspaces are always the *span* of the
products of basis vectors.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import AssociativityViolation, DimensionMismatch, NotAnIdeal
from .fields import Element, Field, Vector
from .linalg import LinearSolver, Matrix, SubspaceBasis, full_space, kernel, span, \
    subspace_contains

_Sparse = List[Tuple[int, Element]]


class StructureAlgebra:
    """
    An associative algebra with basis ``b_0, ..., b_{n-1}`` and ``b_i b_j = c[i][j]``.

    Algebras compare by identity: two separately constructed algebras are different
    ambients even when their tables agree.

    Parameters
    ----------
    field : Field
        The base field.

    basis_names : sequence of str
        One label per basis vector.

    table : sequence of sequences of vectors
        ``table[i][j]`` is the coordinate vector of ``b_i b_j``.

    check_associativity : bool
        Run the exhaustive basis triple check.  Default: ``True``.  Only constructions
        whose associativity is inherited from an already checked algebra turn it off.

    Raises
    ------
    DimensionMismatch
        If the table does not have shape ``n x n x n``.

    AssociativityViolation
        If ``(b_i b_j) b_l != b_i (b_j b_l)`` for some triple, with ``(i, j, l)`` as the
        witness.
    """

    def __init__(self, field: Field, basis_names: Sequence[str],
                 table: Sequence[Sequence[Vector]], *,
                 check_associativity: bool = True):
        self.field = field
        self.basis_names = tuple(basis_names)
        n = len(self.basis_names)
        if len(set(self.basis_names)) != n:
            raise ValueError(f"Duplicate basis names in {self.basis_names}.")
        if len(table) != n or any(len(row) != n for row in table):
            raise DimensionMismatch(f"Structure constants must be a {n}x{n} table.")
        rows = []
        for row in table:
            entries = []
            for v in row:
                if len(v) != n:
                    raise DimensionMismatch(
                        f"Structure constant of length {len(v)}, expected {n}.")
                entries.append(tuple(v))
            rows.append(tuple(entries))
        self.table = tuple(rows)  # type: Tuple[Tuple[Vector, ...], ...]
        self._sparse = [
            [[(k, c) for k, c in enumerate(v) if c] for v in row] for row in self.table
        ]  # type: List[List[_Sparse]]
        if check_associativity:
            witness = self.associativity_witness()
            if witness is not None:
                i, j, l = witness
                names = self.basis_names
                raise AssociativityViolation(
                    f"({names[i]}*{names[j]})*{names[l]} != "
                    f"{names[i]}*({names[j]}*{names[l]})", witness=witness)

    def __repr__(self) -> str:
        return f"StructureAlgebra(dim={self.dim}, field={self.field})"

    @property
    def dim(self) -> int:
        """The dimension."""
        return len(self.basis_names)

    def basis_vector(self, i: int) -> Vector:
        """Return the coordinate vector of ``b_i``."""
        return self.field.unit_vector(self.dim, i)

    def basis_vectors(self) -> List[Vector]:
        """Return all basis vectors."""
        return [self.basis_vector(i) for i in range(self.dim)]

    def multiply(self, x: Vector, y: Vector) -> Vector:
        """
        Return the product ``x * y``.

        Raises
        ------
        DimensionMismatch
            If either vector does not have length :attr:`dim`.
        """
        n = self.dim
        if len(x) != n or len(y) != n:
            raise DimensionMismatch(
                f"Cannot multiply vectors of lengths {len(x)} and {len(y)} in an "
                f"algebra of dimension {n}.")
        acc = [self.field.zero] * n
        y_support = [(j, b) for j, b in enumerate(y) if b]
        for i, a in enumerate(x):
            if not a:
                continue
            row = self._sparse[i]
            for j, b in y_support:
                ab = a * b
                for k, c in row[j]:
                    acc[k] += ab * c
        return tuple(acc)

    def _combine_sparse(self, terms: _Sparse, other: int, *,
                        left: bool) -> Dict[int, Element]:
        acc = {}  # type: Dict[int, Element]
        for k, c in terms:
            product = self._sparse[k][other] if left else self._sparse[other][k]
            for m, d in product:
                acc[m] = acc.get(m, self.field.zero) + c * d
        return {m: v for m, v in acc.items() if v}

    def associativity_witness(self) -> Optional[Tuple[int, int, int]]:
        """Return the first triple violating associativity, or ``None``."""
        n = self.dim
        for i in range(n):
            for j in range(n):
                ij = self._sparse[i][j]
                for l in range(n):
                    lhs = self._combine_sparse(ij, l, left=True)
                    rhs = self._combine_sparse(self._sparse[j][l], i, left=False)
                    if lhs != rhs:
                        return (i, j, l)
        return None

    def is_commutative(self) -> bool:
        """Whether ``b_i b_j = b_j b_i`` for all basis pairs."""
        n = self.dim
        return all(self.table[i][j] == self.table[j][i]
                   for i in range(n) for j in range(i + 1, n))

    def full(self) -> SubspaceBasis:
        """Return the whole algebra as a subspace."""
        return full_space(self.field, self.dim)

    def span(self, vectors) -> SubspaceBasis:
        """Return the canonical span of ``vectors`` inside this algebra."""
        return span(self.field, self.dim, vectors)


def multiply(alg: StructureAlgebra, x: Vector, y: Vector) -> Vector:
    """Return ``x * y`` in ``alg``; see :meth:`StructureAlgebra.multiply`."""
    return alg.multiply(x, y)


def _check_ambient(alg: StructureAlgebra, *spaces: SubspaceBasis):
    for s in spaces:
        if s.ambient_dim != alg.dim or s.field != alg.field:
            raise DimensionMismatch(
                f"Subspace of {s.field}^{s.ambient_dim} is not inside an algebra of "
                f"dimension {alg.dim} over {alg.field}.")


def subspace_product(alg: StructureAlgebra, u: SubspaceBasis,
                     v: SubspaceBasis) -> SubspaceBasis:
    """Return the span of all products ``x * y`` with ``x`` in ``U``, ``y`` in ``V``."""
    _check_ambient(alg, u, v)
    return alg.span(alg.multiply(x, y) for x in u.vectors for y in v.vectors)


def triple_product(alg: StructureAlgebra, u: SubspaceBasis, v: SubspaceBasis,
                   w: SubspaceBasis) -> SubspaceBasis:
    """Return ``(U V) W``."""
    return subspace_product(alg, subspace_product(alg, u, v), w)


def is_idempotent_subspace(alg: StructureAlgebra, u: SubspaceBasis) -> bool:
    """Whether ``U U = U``."""
    return subspace_product(alg, u, u) == u


def _annihilator(alg: StructureAlgebra, u: SubspaceBasis, w: SubspaceBasis, *,
                 left: bool) -> SubspaceBasis:
    _check_ambient(alg, u, w)
    if u.is_zero() or w.is_zero():
        return u
    # Row i: the products of u_i against every w_j, concatenated.  Coefficient
    # vectors c with c @ rows = 0 are the annihilating combinations.
    rows = []
    for x in u.vectors:
        row = []  # type: List[Element]
        for y in w.vectors:
            row.extend(alg.multiply(x, y) if left else alg.multiply(y, x))
        rows.append(tuple(row))
    stacked = Matrix.from_rows(alg.field, rows, alg.dim * w.dim)
    relations = kernel(stacked.transpose())
    return alg.span(u.combine(c) for c in relations.vectors)


def left_annihilator_in(alg: StructureAlgebra, u: SubspaceBasis,
                        w: SubspaceBasis) -> SubspaceBasis:
    """Return ``{x in U : x W = 0}``."""
    return _annihilator(alg, u, w, left=True)


def right_annihilator_in(alg: StructureAlgebra, u: SubspaceBasis,
                         w: SubspaceBasis) -> SubspaceBasis:
    """Return ``{x in U : W x = 0}``."""
    return _annihilator(alg, u, w, left=False)


def ideal_witness(alg: StructureAlgebra,
                  u: SubspaceBasis) -> Optional[Tuple[str, int, Vector]]:
    """Return ``(side, basis index, vector)`` of a product leaving ``U`` or ``None``."""
    _check_ambient(alg, u)
    for k, b in enumerate(alg.basis_vectors()):
        for x in u.vectors:
            if alg.multiply(b, x) not in u:
                return ("left", k, x)
            if alg.multiply(x, b) not in u:
                return ("right", k, x)
    return None


def is_ideal(alg: StructureAlgebra, u: SubspaceBasis) -> bool:
    """Whether ``U`` is a two-sided ideal of ``alg``."""
    return ideal_witness(alg, u) is None


def local_unit(alg: StructureAlgebra, u: SubspaceBasis, *,
               side: str = "both") -> Optional[Vector]:
    """
    Return ``e`` in ``U`` acting as a unit on ``U``, or ``None``.

    Parameters
    ----------
    alg : StructureAlgebra
        The ambient algebra.

    u : SubspaceBasis
        The subspace, usually an ideal or subalgebra.

    side : str
        ``"left"`` (``e x = x``), ``"right"`` (``x e = x``) or ``"both"``.
    """
    if side not in {"left", "right", "both"}:
        raise ValueError(f"Invalid side '{side}'.")
    _check_ambient(alg, u)
    if u.is_zero():
        return alg.field.zero_vector(alg.dim)
    # Unknown coefficients c over the basis of U; one block of equations per x.
    columns = []
    for e in u.vectors:
        column = []  # type: List[Element]
        for x in u.vectors:
            if side in {"left", "both"}:
                column.extend(alg.multiply(e, x))
            if side in {"right", "both"}:
                column.extend(alg.multiply(x, e))
        columns.append(tuple(column))
    rhs = []  # type: List[Element]
    for x in u.vectors:
        if side in {"left", "both"}:
            rhs.extend(x)
        if side in {"right", "both"}:
            rhs.extend(x)
    a = Matrix.from_rows(alg.field, columns, len(rhs)).transpose()
    coefficients = LinearSolver(a).solve_vector(tuple(rhs))
    if coefficients is None:
        return None
    return u.combine(coefficients)


def unit_element(alg: StructureAlgebra) -> Optional[Vector]:
    """Return the unit of ``alg``, or ``None`` when the algebra is not unital."""
    return local_unit(alg, alg.full())


def is_subalgebra(alg: StructureAlgebra, u: SubspaceBasis) -> bool:
    """Whether ``U U`` is contained in ``U``."""
    return subspace_contains(u, subspace_product(alg, u, u))


@dataclass(frozen=True)
class Ideal:
    """
    A two-sided ideal of a |StructureAlgebra|; build with :func:`make_ideal`.

    Parameters
    ----------
    ambient : StructureAlgebra
        The algebra.

    space : SubspaceBasis
        The ideal as a subspace of the algebra.

    .. |StructureAlgebra| replace:: :class:`~xprod.algebra.StructureAlgebra`
    """

    ambient: StructureAlgebra
    space: SubspaceBasis

    @property
    def dim(self) -> int:
        """The dimension of the ideal."""
        return self.space.dim

    @property
    def field(self) -> Field:
        """The base field."""
        return self.ambient.field

    @property
    def vectors(self) -> List[Vector]:
        """The canonical basis of the ideal (ambient coordinates)."""
        return self.space.vectors

    def coordinates(self, x: Vector, *, what: str = "ideal") -> Vector:
        """Return coordinates of ``x``; raise :class:`~xprod.errors.MembershipError`."""
        return self.space.require_coordinates(x, what=what)

    def combine(self, coords: Sequence[Element]) -> Vector:
        """Return the ambient vector with coordinates ``coords``."""
        return self.space.combine(coords)


def make_ideal(alg: StructureAlgebra, space: SubspaceBasis) -> Ideal:
    """
    Validate that ``space`` is a two-sided ideal and wrap it.

    Raises
    ------
    NotAnIdeal
        With the first ``(side, basis index, ideal vector)`` escaping the subspace.
    """
    _check_ambient(alg, space)
    if not space.is_full():
        witness = ideal_witness(alg, space)
        if witness is not None:
            side, k, x = witness
            raise NotAnIdeal(
                f"Subspace is not a {side} ideal: multiplying by basis "
                f"'{alg.basis_names[k]}' leaves it.", witness=witness)
    return Ideal(alg, space)


def change_basis(alg: StructureAlgebra, p: Matrix, *,
                 basis_names: Optional[Sequence[str]] = None) -> StructureAlgebra:
    """
    Return ``alg`` rewritten in the basis given by the rows of ``p``.

    Row ``i`` of ``p`` holds the old coordinates of the new basis vector ``i``, so a
    vector with new coordinates ``y`` has old coordinates ``y @ p`` and old coordinates
    ``x`` become ``x @ p^-1``.  Associativity is inherited and not re-checked.

    Raises
    ------
    DimensionMismatch
        If ``p`` is not an invertible ``dim x dim`` matrix.
    """
    p_inv = p.inverse() if p.shape == (alg.dim, alg.dim) else None
    if p_inv is None:
        raise DimensionMismatch(
            f"Change of basis must be an invertible {alg.dim}x{alg.dim} matrix.")
    rows = p.row_tuples()
    table = [[p_inv.apply(alg.multiply(x, y)) for y in rows] for x in rows]
    return StructureAlgebra(alg.field, basis_names or alg.basis_names, table,
                            check_associativity=False)
