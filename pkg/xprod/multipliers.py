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
Multipliers of an ideal: compatible pairs ``(R, L)`` with ``(aR)b = a(Lb)``.

Both maps are stored as matrices in the ideal's canonical basis, using the row vector
convention of :mod:`xprod.linalg`: ``a -> aR`` is ``coords(a) @ r_matrix`` and
``a -> La`` is ``coords(a) @ l_matrix``.  The carrier ideal is always explicit; moving a
multiplier to a smaller ideal goes through :func:`restrict_multiplier`.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple

from .algebra import Ideal, is_idempotent_subspace
from .errors import CompatibilityViolation, DimensionMismatch, ModuleMapViolation, \
    NotIdempotent
from .fields import Vector
from .linalg import Matrix, SubspaceBasis, kernel, matrix_of, subspace_contains, \
    vec_scale


@dataclass(frozen=True)
class Multiplier:
    """
    A multiplier ``(R, L)`` of an ideal; build validated values with
    :func:`make_multiplier`.

    Parameters
    ----------
    ideal : Ideal
        The carrier ideal ``I``.

    r_matrix : Matrix
        ``dim I x dim I``, the right action ``a -> aR``.

    l_matrix : Matrix
        ``dim I x dim I``, the left action ``a -> La``.
    """

    ideal: Ideal
    r_matrix: Matrix
    l_matrix: Matrix

    def __post_init__(self):
        d = self.ideal.dim
        for m in (self.r_matrix, self.l_matrix):
            if m.shape != (d, d):
                raise DimensionMismatch(
                    f"Multiplier matrices must be {d}x{d}, got {m.rows}x{m.cols}.")

    def right(self, x: Vector) -> Vector:
        """Return ``x w`` for ``x`` in the carrier (ambient coordinates)."""
        coords = self.ideal.coordinates(x, what="carrier ideal")
        return self.ideal.combine(self.r_matrix.apply(coords))

    def left(self, x: Vector) -> Vector:
        """Return ``w x`` for ``x`` in the carrier (ambient coordinates)."""
        coords = self.ideal.coordinates(x, what="carrier ideal")
        return self.ideal.combine(self.l_matrix.apply(coords))

    def act(self, side: str, x: Vector) -> Vector:
        """Dispatch to :meth:`right` or :meth:`left` by ``side``."""
        if side == "right":
            return self.right(x)
        if side == "left":
            return self.left(x)
        raise ValueError(f"Multiplier side must be 'right' or 'left', got '{side}'.")

    def is_identity(self) -> bool:
        """Whether both matrices are the identity."""
        identity = Matrix.identity(self.ideal.field, self.ideal.dim)
        return self.r_matrix == identity and self.l_matrix == identity


def validate_multiplier(w: Multiplier) -> Optional[Tuple[str, tuple]]:
    """
    Return the first violated condition of ``w``, or ``None`` when it is valid.

    Returns
    -------
    tuple or None
        ``("compatibility", (a, b))`` or ``("module", (side, x, a))``, with basis
        indices of the ideal (``a``, ``b``) and of the ambient algebra (``x``).
    """
    ideal = w.ideal
    alg = ideal.ambient
    basis = ideal.vectors
    right = [ideal.combine(w.r_matrix.row(i)) for i in range(ideal.dim)]
    left = [ideal.combine(w.l_matrix.row(i)) for i in range(ideal.dim)]
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            if alg.multiply(right[i], b) != alg.multiply(a, left[j]):
                return ("compatibility", (i, j))
    for k, x in enumerate(alg.basis_vectors()):
        for i, a in enumerate(basis):
            if w.right(alg.multiply(x, a)) != alg.multiply(x, right[i]):
                return ("module", ("right", k, i))
            if w.left(alg.multiply(a, x)) != alg.multiply(left[i], x):
                return ("module", ("left", k, i))
    return None


def make_multiplier(ideal: Ideal, r: Matrix, l: Matrix) -> Multiplier:  # noqa: E741
    """
    Build and validate a multiplier of ``ideal``.

    Raises
    ------
    DimensionMismatch
        If the matrices are not ``dim I x dim I``.

    CompatibilityViolation
        With the ideal basis indices ``(a, b)`` where ``(aR)b != a(Lb)``.

    ModuleMapViolation
        With ``(side, x, a)`` where ``R`` fails to be a left module map or ``L`` a right
        module map over the ambient algebra.
    """
    w = Multiplier(ideal, r, l)
    violation = validate_multiplier(w)
    if violation is None:
        return w
    kind, witness = violation
    if kind == "compatibility":
        raise CompatibilityViolation(
            f"(aR)b != a(Lb) for ideal basis vectors {witness}.", witness=witness)
    side, x, a = witness
    name = ideal.ambient.basis_names[x]
    if side == "right":
        message = f"R is not a left module map: (x a)R != x(aR) for x = '{name}'."
    else:
        message = f"L is not a right module map: L(a x) != (La)x for x = '{name}'."
    raise ModuleMapViolation(message, witness=witness)


def identity_multiplier(ideal: Ideal) -> Multiplier:
    """Return the identity multiplier of ``ideal``."""
    identity = Matrix.identity(ideal.field, ideal.dim)
    return Multiplier(ideal, identity, identity)


def element_multiplier(ideal: Ideal, a: Vector) -> Multiplier:
    """Return ``(R_a, L_a)``: right and left multiplication by ``a`` on ``ideal``."""
    alg = ideal.ambient
    r = matrix_of([alg.multiply(x, a) for x in ideal.vectors], ideal.space)
    l = matrix_of(  # noqa: E741
        [alg.multiply(a, x) for x in ideal.vectors], ideal.space)
    return Multiplier(ideal, r, l)


def _same_ideal(u: Multiplier, w: Multiplier):
    if u.ideal != w.ideal:
        raise DimensionMismatch("Multipliers are carried on different ideals.")


def mult_compose(u: Multiplier, w: Multiplier) -> Multiplier:
    """
    Return the product ``u w`` in ``M(I)``.

    The product acts by ``x (uw) = (xu)w`` and ``(uw)x = u(wx)``, so element
    multipliers compose as ``(R_a, L_a)(R_b, L_b) = (R_ab, L_ab)``.

    Raises
    ------
    DimensionMismatch
        If the carriers differ.
    """
    _same_ideal(u, w)
    return Multiplier(u.ideal, u.r_matrix @ w.r_matrix, w.l_matrix @ u.l_matrix)


def mult_invert(u: Multiplier) -> Optional[Multiplier]:
    """Return the inverse of ``u`` in ``M(I)``, or ``None`` if a matrix is singular."""
    r = u.r_matrix.inverse()
    l = u.l_matrix.inverse()  # noqa: E741
    if r is None or l is None:
        return None
    return Multiplier(u.ideal, r, l)


def _unknowns(d: int, support: Optional[Iterable[Tuple[int, int]]],
              offset: int) -> Dict[Tuple[int, int], int]:
    positions = sorted(set(support)) if support is not None else \
        [(i, k) for i in range(d) for k in range(d)]
    for i, k in positions:
        if not (0 <= i < d and 0 <= k < d):
            raise DimensionMismatch(
                f"Support position {(i, k)} outside a {d}x{d} matrix.")
    return {pos: offset + n for n, pos in enumerate(positions)}


def multiplier_space(ideal: Ideal, *,
                     r_support: Optional[Iterable[Tuple[int, int]]] = None,
                     l_support: Optional[Iterable[Tuple[int, int]]] = None
                     ) -> SubspaceBasis:
    """
    Return the space of all multipliers of ``ideal`` as coordinate vectors.

    A vector lists the free entries of ``R`` (row-major) then those of ``L``; turn it
    back into a :class:`Multiplier` with :func:`multiplier_from_vector`.  The zero
    ideal yields the zero space of dimension zero, i.e. the unique empty pair.

    Parameters
    ----------
    ideal : Ideal
        The carrier.

    r_support, l_support : iterable of (int, int), optional
        The matrix positions allowed to be nonzero; every other entry is fixed at zero.
        Default: all ``d^2`` positions, so vectors have length ``2 d^2``.
    """
    alg = ideal.ambient
    field = ideal.field
    d = ideal.dim
    r_index = _unknowns(d, r_support, 0)
    l_index = _unknowns(d, l_support, len(r_index))
    n_unknowns = len(r_index) + len(l_index)
    basis = ideal.vectors
    rows = []

    def image_terms(index, i, post):
        # Linear form of post(a_i M) in the free entries of row i of M.
        return [(index[(i, k)], post(basis[k])) for k in range(d) if (i, k) in index]

    def scaled(index, coords):
        terms = []
        for m, c in enumerate(coords):
            if c:
                terms.extend((u, vec_scale(c, v))
                             for u, v in image_terms(index, m, lambda v: v))
        return terms

    def add_equation(lhs, rhs):
        # sum(unknown * vector) over lhs == same over rhs, one row per coordinate.
        for coordinate in range(alg.dim):
            row = [field.zero] * n_unknowns
            for unknown, v in lhs:
                row[unknown] += v[coordinate]
            for unknown, v in rhs:
                row[unknown] -= v[coordinate]
            if any(row):
                rows.append(tuple(row))

    for i in range(d):
        for j in range(d):
            b = basis[j]
            add_equation(image_terms(r_index, i, lambda v: alg.multiply(v, b)),
                         [(u, alg.multiply(basis[i], v))
                          for u, v in image_terms(l_index, j, lambda v: v)])
    for x in alg.basis_vectors():
        for i, a in enumerate(basis):
            add_equation(scaled(r_index, ideal.coordinates(alg.multiply(x, a))),
                         image_terms(r_index, i, lambda v: alg.multiply(x, v)))
            add_equation(scaled(l_index, ideal.coordinates(alg.multiply(a, x))),
                         image_terms(l_index, i, lambda v: alg.multiply(v, x)))
    return kernel(Matrix.from_rows(field, rows, n_unknowns))


def multiplier_from_vector(ideal: Ideal, vector: Vector, *,
                           r_support: Optional[Iterable[Tuple[int, int]]] = None,
                           l_support: Optional[Iterable[Tuple[int, int]]] = None
                           ) -> Multiplier:
    """
    Return the multiplier whose free entries are listed in ``vector``.

    The supports must be the ones passed to :func:`multiplier_space`.
    """
    d = ideal.dim
    r_index = _unknowns(d, r_support, 0)
    l_index = _unknowns(d, l_support, len(r_index))
    if len(vector) != len(r_index) + len(l_index):
        raise DimensionMismatch(
            f"Multiplier vector of length {len(vector)}, expected "
            f"{len(r_index) + len(l_index)}.")

    def place(index):
        entries = [ideal.field.zero] * (d * d)
        for (i, k), n in index.items():
            entries[i * d + k] = vector[n]
        return Matrix(ideal.field, d, d, tuple(entries))

    return Multiplier(ideal, place(r_index), place(l_index))


def restrict_multiplier(w: Multiplier, smaller: Ideal) -> Multiplier:
    """
    Restrict ``w`` to an ideal contained in its carrier.

    Raises
    ------
    DimensionMismatch
        If ``smaller`` lives in another algebra or is not contained in the carrier.

    MembershipError
        If ``w`` does not map ``smaller`` into itself.
    """
    if smaller.ambient is not w.ideal.ambient or \
            not subspace_contains(w.ideal.space, smaller.space):
        raise DimensionMismatch("Restriction target is not inside the carrier ideal.")
    r = matrix_of([w.right(x) for x in smaller.vectors], smaller.space,
                  what="restricted ideal")
    l = matrix_of([w.left(x) for x in smaller.vectors], smaller.space,  # noqa: E741
                  what="restricted ideal")
    return Multiplier(smaller, r, l)


def check_commuting_property(ideal: Ideal, u: Multiplier, w: Multiplier) -> bool:
    """
    Whether ``(u x) w = u (x w)`` for every basis vector ``x`` of ``ideal``.

    Raises
    ------
    NotIdempotent
        If ``I I != I``; the property is only guaranteed for idempotent ideals.
    """
    if not is_idempotent_subspace(ideal.ambient, ideal.space):
        raise NotIdempotent("The commuting property requires an idempotent ideal.")
    return all(w.right(u.left(x)) == u.left(w.right(x)) for x in ideal.vectors)
