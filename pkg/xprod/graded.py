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
Group graded algebras, their linking algebras and corner multipliers.

For a grading ``B = sum B_g`` write ``D_g = B_g B_g^-1``, a subspace of the identity
component ``B_1``.  The linking algebra of ``g`` is the algebra of block matrices

.. code-block:: none

    C_g = | D_g     B_g    |      corners:  | d   b  |
          | B_g^-1  D_g^-1 |                | bi  di |

multiplied like 2x2 matrices through the product of ``B``.  A |CornerMultiplierPair|
``(u, v)`` of ``C_g`` with ``uv = e11`` and ``vu = e22`` is stored as the eight linear
maps between corners it induces:

==============  =========  ==============================
map             corners    meaning
==============  =========  ==============================
``u_left_bi``   bi -> d    ``m' -> u m'``
``u_left_di``   di -> b    ``r' -> u r'``
``u_right_d``   d -> b     ``r -> r u``
``u_right_bi``  bi -> di   ``m' -> m' u``
``v_left_d``    d -> bi    ``r -> v r``
``v_left_b``    b -> di    ``m -> v m``
``v_right_b``   b -> d     ``m -> m v``
``v_right_di``  di -> bi   ``r' -> r' v``
==============  =========  ==============================

Every ``v`` map is the inverse of one ``u`` map.

.. |CornerMultiplierPair| replace:: :class:`~xprod.graded.CornerMultiplierPair`
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .algebra import Ideal, StructureAlgebra, left_annihilator_in, make_ideal, \
    right_annihilator_in, subspace_product, triple_product
from .errors import DimensionMismatch, InternalInconsistency, NotAnIdeal, \
    NotDirectSum, NotGraded, PreconditionFailed, XprodError
from .fields import Field, Vector
from .groups import FiniteGroup
from .linalg import Matrix, SubspaceBasis, full_space, span, \
    subspace_intersect, subspace_sum, zero_subspace
from .multipliers import Multiplier, mult_compose, validate_multiplier
from .report import CheckReport, format_expression


@dataclass(frozen=True)
class GradedAlgebra:
    """
    A validated ``G``-grading of a |StructureAlgebra|; build with :func:`make_graded`.

    Parameters
    ----------
    group : FiniteGroup
        The grading group.

    ambient : StructureAlgebra
        The graded algebra ``B``.

    components : tuple of SubspaceBasis
        ``B_g`` for every element index ``g``.

    .. |StructureAlgebra| replace:: :class:`~xprod.algebra.StructureAlgebra`
    """

    group: FiniteGroup
    ambient: StructureAlgebra
    components: Tuple[SubspaceBasis, ...]

    @property
    def field(self) -> Field:
        """The base field."""
        return self.ambient.field

    def component(self, g: int) -> SubspaceBasis:
        """Return ``B_g``."""
        return self.components[g]

    @cached_property
    def _products(self) -> Dict[Tuple[int, int], SubspaceBasis]:
        return {}

    def product(self, g: int, h: int) -> SubspaceBasis:
        """Return ``B_g B_h`` (memoized)."""
        key = (g, h)
        if key not in self._products:
            self._products[key] = subspace_product(
                self.ambient, self.components[g], self.components[h])
        return self._products[key]

    def domain(self, g: int) -> SubspaceBasis:
        """Return ``D_g = B_g B_g^-1`` as a subspace of ``B``."""
        return self.product(g, self.group.inv(g))

    @cached_property
    def _unstack(self) -> Matrix:
        rows = [v for c in self.components for v in c.vectors]
        inverse = Matrix.from_rows(self.field, rows, self.ambient.dim).inverse()
        assert inverse is not None  # make_graded checked the direct sum
        return inverse

    def homogeneous_parts(self, x: Vector) -> List[Vector]:
        """Return the components ``x_g`` of ``x``, indexed by ``g``."""
        coords = self._unstack.apply(x)
        parts, start = [], 0
        for c in self.components:
            parts.append(c.combine(coords[start:start + c.dim]))
            start += c.dim
        return parts

    @property
    def identity_component(self) -> SubspaceBasis:
        """Return ``B_1``."""
        return self.components[self.group.identity]

    @cached_property
    def identity_algebra(self) -> StructureAlgebra:
        """
        The identity component ``B_1`` as an algebra in its own right.

        Its basis is the canonical basis of ``B_1``; each basis vector is named after
        the basis vector of ``B`` at its pivot.
        """
        b1 = self.identity_component
        names = [self.ambient.basis_names[p] for p in b1.pivots]
        table = [[self.to_identity(self.ambient.multiply(x, y)) for y in b1.vectors]
                 for x in b1.vectors]
        return StructureAlgebra(self.field, names, table, check_associativity=False)

    def to_identity(self, x: Vector) -> Vector:
        """Return the coordinates in :attr:`identity_algebra` of ``x`` in ``B_1``."""
        return self.identity_component.require_coordinates(x, what="identity component")

    def from_identity(self, a: Vector) -> Vector:
        """Return the vector of ``B`` with coordinates ``a`` in ``B_1``."""
        return self.identity_component.combine(a)

    def describe(self, x: Vector) -> str:
        """Render ``x`` in the basis names of ``B``."""
        return format_expression(self.field, self.ambient.basis_names, x)


def make_graded(alg: StructureAlgebra, group: FiniteGroup,
                components: Union[Sequence[SubspaceBasis], Mapping[int, SubspaceBasis]]
                ) -> GradedAlgebra:
    """
    Validate a grading of ``alg`` by ``group``.

    Parameters
    ----------
    alg : StructureAlgebra
        The algebra to grade.

    group : FiniteGroup
        The grading group.

    components : sequence or mapping of SubspaceBasis
        ``B_g`` per element index.  Missing entries of a mapping are zero.

    Raises
    ------
    DimensionMismatch
        If a component does not live in ``alg`` or there are too many components.

    NotDirectSum
        If the components overlap (the witness is ``(g, vector)``, a nonzero vector of
        ``B_g`` in the sum of the earlier components) or do not span ``alg``.

    NotGraded
        If ``B_g B_h`` is not inside ``B_gh``; the witness is ``(g, h, product)``.
    """
    if isinstance(components, Mapping):
        parts = [components.get(g, zero_subspace(alg.field, alg.dim))
                 for g in group.elements]
        if any(g not in group.elements for g in components):
            raise DimensionMismatch("Grading component for an unknown group element.")
    else:
        parts = list(components)
    if len(parts) != group.order:
        raise DimensionMismatch(
            f"Expected {group.order} grading components, got {len(parts)}.")
    for c in parts:
        if c.ambient_dim != alg.dim or c.field != alg.field:
            raise DimensionMismatch("Grading component outside the algebra.")

    accumulated = zero_subspace(alg.field, alg.dim)
    for g, c in enumerate(parts):
        overlap = subspace_intersect(accumulated, c)
        if not overlap.is_zero():
            vector = overlap.vectors[0]
            raise NotDirectSum(
                f"Component '{group.name(g)}' meets the earlier components in "
                f"{format_expression(alg.field, alg.basis_names, vector)}.",
                witness=(group.name(g), vector))
        accumulated = subspace_sum(accumulated, c)
    if not accumulated.is_full():
        raise NotDirectSum(
            f"Components span {accumulated.dim} of {alg.dim} dimensions.")

    for g in group.elements:
        for h in group.elements:
            target = parts[group.mul(g, h)]
            for x in parts[g].vectors:
                for y in parts[h].vectors:
                    xy = alg.multiply(x, y)
                    if xy not in target:
                        raise NotGraded(
                            f"B_{group.name(g)} B_{group.name(h)} is not inside "
                            f"B_{group.name(group.mul(g, h))}: "
                            f"{format_expression(alg.field, alg.basis_names, xy)}.",
                            witness=(group.name(g), group.name(h), xy))
    return GradedAlgebra(group, alg, tuple(parts))


def component_products(gb: GradedAlgebra) -> Dict[int, Ideal]:
    """
    Return ``D_g = B_g B_g^-1`` for every ``g`` as an ideal of ``gb.identity_algebra``.

    Raises
    ------
    InternalInconsistency
        If some ``D_g`` fails to be an ideal, which the grading law rules out.
    """
    alg = gb.identity_algebra
    result = {}
    for g in gb.group.elements:
        space = alg.span(gb.to_identity(v) for v in gb.domain(g).vectors)
        try:
            result[g] = make_ideal(alg, space)
        except NotAnIdeal as err:
            raise InternalInconsistency(
                f"D_{gb.group.name(g)} is not an ideal of B_1: {err}") from err
    return result


def check_condition_i(gb: GradedAlgebra) -> CheckReport:
    """
    Check ``B_g B_g^-1 B_g = B_g`` for every ``g``.

    One check ``condition_i[g]`` per element; a zero ``B_g`` passes vacuously.  A
    failure carries a basis vector of ``B_g`` outside the triple product as witness.
    """
    report = CheckReport("condition (i)")
    group = gb.group
    for g in group.elements:
        name = f"condition_i[{group.name(g)}]"
        b = gb.component(g)
        if b.is_zero():
            report.add(name, True, vacuous=True, witness=group.name(g),
                       detail="zero component")
            continue
        triple = triple_product(gb.ambient, b, gb.component(group.inv(g)), b)
        if triple == b:
            report.add(name, True, detail=f"dimension {b.dim}")
            continue
        missing = next(v for v in b.vectors if v not in triple)
        report.add(name, False, witness=gb.describe(missing),
                   detail=f"B_g B_g^-1 B_g has dimension {triple.dim}, B_g has "
                          f"dimension {b.dim}")
    return report


def check_homogeneous_nondegeneracy(gb: GradedAlgebra) -> CheckReport:
    """
    Check that no nonzero ``x`` in ``B_g`` has ``x B_g^-1 = 0`` or ``B_g^-1 x = 0``.

    One check ``nondegenerate[g]`` per element, vacuous when ``B_g = 0``.
    """
    report = CheckReport("homogeneous non-degeneracy")
    group = gb.group
    for g in group.elements:
        name = f"nondegenerate[{group.name(g)}]"
        b, bi = gb.component(g), gb.component(group.inv(g))
        if b.is_zero():
            report.add(name, True, vacuous=True, witness=group.name(g),
                       detail="zero component")
            continue
        left = left_annihilator_in(gb.ambient, b, bi)
        right = right_annihilator_in(gb.ambient, b, bi)
        if not left.is_zero():
            report.add(name, False, witness=gb.describe(left.vectors[0]),
                       detail="x B_g^-1 = 0")
        elif not right.is_zero():
            report.add(name, False, witness=gb.describe(right.vectors[0]),
                       detail="B_g^-1 x = 0")
        else:
            report.add(name, True)
    return report


def check_component_identities(gb: GradedAlgebra) -> CheckReport:
    """
    Check the subspace identities that follow from ``B_g B_g^-1 B_g = B_g``.

    ``domain_idempotent``
        ``D_g D_g = D_g``.

    ``domains_commute``
        ``D_g D_h = D_h D_g``.

    ``left_absorption``
        ``B_g^-1 B_g B_h = B_g^-1 B_gh``.

    ``right_absorption``
        ``B_g B_h B_h^-1 = B_gh B_h^-1``.

    ``domain_absorbs_component``
        ``D_g B_g = B_g`` and ``B_g D_g^-1 = B_g``.

    Run it only on gradings passing :func:`check_condition_i`.
    """
    report = CheckReport("component identities")
    group, alg = gb.group, gb.ambient
    witnesses = {}  # type: Dict[str, Optional[str]]
    names = ["domain_idempotent", "domains_commute", "left_absorption",
             "right_absorption", "domain_absorbs_component"]
    for name in names:
        witnesses[name] = None

    def expect(name: str, holds: bool, witness: str):
        if not holds and witnesses[name] is None:
            witnesses[name] = witness

    for g in group.elements:
        gi = group.inv(g)
        d = gb.domain(g)
        b = gb.component(g)
        label = f"({group.name(g)})"
        expect("domain_idempotent", subspace_product(alg, d, d) == d, label)
        expect("domain_absorbs_component",
               subspace_product(alg, d, b) == b and
               subspace_product(alg, b, gb.domain(gi)) == b, label)
        for h in group.elements:
            label = f"({group.name(g)}, {group.name(h)})"
            gh = group.mul(g, h)
            hi = group.inv(h)
            e = gb.domain(h)
            expect("domains_commute",
                   subspace_product(alg, d, e) == subspace_product(alg, e, d), label)
            expect("left_absorption",
                   subspace_product(alg, gb.domain(gi), gb.component(h)) ==
                   gb.product(gi, gh), label)
            expect("right_absorption",
                   subspace_product(alg, b, gb.domain(h)) == gb.product(gh, hi), label)
    for name in names:
        report.add(name, witnesses[name] is None, witness=witnesses[name])
    return report


########################################################################################
# Linking algebras.                                                                    #
########################################################################################
CORNERS = ("d", "b", "bi", "di")
"""The corners of a linking algebra, in basis order."""

_POSITION = {"d": (0, 0), "b": (0, 1), "bi": (1, 0), "di": (1, 1)}
_AT = {position: corner for corner, position in _POSITION.items()}


class LinkingAlgebra:
    """
    The linking algebra ``C_g`` of a graded algebra.

    The basis of :attr:`as_algebra` is the canonical basis of ``D_g``, then ``B_g``,
    then ``B_g^-1``, then ``D_g^-1``, named ``d0 d1 ... b0 ... bi0 ... di0 ...``.

    Parameters
    ----------
    graded : GradedAlgebra
        The graded algebra ``B``.

    g : int
        The group element.

    Attributes
    ----------
    corners : dict
        Corner name to subspace of ``B``.

    as_algebra : StructureAlgebra
        ``C_g`` with its block product.

    carrier : Ideal
        ``C_g`` as an ideal of itself, the carrier of its multipliers.

    e11, e22 : Multiplier
        The corner projections.
    """

    def __init__(self, graded: GradedAlgebra, g: int):
        self.graded = graded
        self.g = g
        group = graded.group
        gi = group.inv(g)
        self.corners = {
            "d": graded.domain(g),
            "b": graded.component(g),
            "bi": graded.component(gi),
            "di": graded.domain(gi),
        }  # type: Dict[str, SubspaceBasis]
        self.offsets = {}  # type: Dict[str, int]
        start = 0
        for corner in CORNERS:
            self.offsets[corner] = start
            start += self.corners[corner].dim
        self.dim = start
        field = graded.field
        names = [f"{corner}{k}" for corner in CORNERS
                 for k in range(self.corners[corner].dim)]
        table = []
        for first in CORNERS:
            for x in self.corners[first].vectors:
                row = []
                for second in CORNERS:
                    for y in self.corners[second].vectors:
                        row.append(self._block_product(first, x, second, y))
                table.append(row)
        self.as_algebra = StructureAlgebra(field, names, table,
                                           check_associativity=False)
        self.carrier = Ideal(self.as_algebra, full_space(field, self.dim))
        self.e11 = self._projection(right=("d", "bi"), left=("d", "b"))
        self.e22 = self._projection(right=("b", "di"), left=("bi", "di"))

    def __repr__(self) -> str:
        dims = ", ".join(f"{c}={self.corners[c].dim}" for c in CORNERS)
        return f"LinkingAlgebra(g={self.graded.group.name(self.g)}, {dims})"

    @property
    def corner_dims(self) -> Dict[str, int]:
        """The dimension of every corner."""
        return {c: self.corners[c].dim for c in CORNERS}

    def _block_product(self, first: str, x: Vector, second: str, y: Vector) -> Vector:
        (i, j), (k, l) = _POSITION[first], _POSITION[second]
        result = [self.graded.field.zero] * self.dim
        if j != k:
            return tuple(result)
        target = _AT[(i, l)]
        coords = self.corners[target].require_coordinates(
            self.graded.ambient.multiply(x, y), what=f"corner {target}")
        start = self.offsets[target]
        result[start:start + len(coords)] = coords
        return tuple(result)

    def _projection(self, *, right: Sequence[str], left: Sequence[str]) -> Multiplier:
        identity = {c: Matrix.identity(self.graded.field, self.corners[c].dim)
                    for c in CORNERS}
        return block_multiplier(self, {(c, c): identity[c] for c in right},
                                {(c, c): identity[c] for c in left})

    def embed(self, corner: str, x: Vector) -> Vector:
        """Return the element of ``C_g`` holding ``x`` (of ``B``) in ``corner``."""
        coords = self.corners[corner].require_coordinates(x, what=f"corner {corner}")
        result = [self.graded.field.zero] * self.dim
        start = self.offsets[corner]
        result[start:start + len(coords)] = coords
        return tuple(result)

    def split(self, z: Vector) -> Dict[str, Vector]:
        """Return the four corner entries of ``z`` as vectors of ``B``."""
        parts = {}
        for corner in CORNERS:
            start = self.offsets[corner]
            space = self.corners[corner]
            parts[corner] = space.combine(z[start:start + space.dim])
        return parts


def block_multiplier(link: LinkingAlgebra,
                     right: Mapping[Tuple[str, str], Matrix],
                     left: Mapping[Tuple[str, str], Matrix]) -> Multiplier:
    """
    Assemble a multiplier of ``C_g`` from maps between corners.

    Parameters
    ----------
    link : LinkingAlgebra
        The linking algebra.

    right, left : mapping of (source, target) to Matrix
        The corner maps of the right and left actions, each in the canonical corner
        bases.  Corners without an entry are sent to zero.
    """
    field = link.graded.field

    def assemble(maps: Mapping[Tuple[str, str], Matrix]) -> Matrix:
        entries = [field.zero] * (link.dim * link.dim)
        for (source, target), m in maps.items():
            expected = (link.corners[source].dim, link.corners[target].dim)
            if m.shape != expected:
                raise DimensionMismatch(
                    f"Corner map {source} -> {target} must be "
                    f"{expected[0]}x{expected[1]}, got {m.rows}x{m.cols}.")
            r0, c0 = link.offsets[source], link.offsets[target]
            for i in range(m.rows):
                for j, a in enumerate(m.row(i)):
                    entries[(r0 + i) * link.dim + c0 + j] = a
        return Matrix(field, link.dim, link.dim, tuple(entries))

    return Multiplier(link.carrier, assemble(right), assemble(left))


CORNER_MAPS = {
    "u_left_bi": ("bi", "d"),
    "u_left_di": ("di", "b"),
    "u_right_d": ("d", "b"),
    "u_right_bi": ("bi", "di"),
    "v_left_d": ("d", "bi"),
    "v_left_b": ("b", "di"),
    "v_right_b": ("b", "d"),
    "v_right_di": ("di", "bi"),
}
"""Source and target corner of every corner map."""

INVERSE_MAP = {
    "v_left_d": "u_left_bi",
    "v_left_b": "u_left_di",
    "v_right_b": "u_right_d",
    "v_right_di": "u_right_bi",
}
"""The ``u`` map each ``v`` map inverts."""


@dataclass(frozen=True, eq=False)
class CornerMultiplierPair:
    """
    Multipliers ``u = e11 u e22`` and ``v = e22 v e11`` of a linking algebra.

    Build with :func:`corner_pair_from_maps`.

    Parameters
    ----------
    link : LinkingAlgebra
        The linking algebra ``C_g``.

    maps : dict
        The eight corner maps, keyed as in :data:`CORNER_MAPS`.

    u, v : Multiplier
        The assembled multipliers of ``C_g``.
    """

    link: LinkingAlgebra
    maps: Mapping[str, Matrix]
    u: Multiplier
    v: Multiplier

    def apply(self, name: str, x: Vector) -> Vector:
        """
        Apply the corner map ``name`` to a vector ``x`` of ``B``.

        Raises
        ------
        MembershipError
            If ``x`` is not in the source corner.
        """
        source, target = CORNER_MAPS[name]
        corners = self.link.corners
        coords = corners[source].require_coordinates(x, what=f"corner {source}")
        return corners[target].combine(self.maps[name].apply(coords))

    def theta(self, x: Vector) -> Vector:
        """Return ``u x v`` for ``x`` in ``D_g^-1``."""
        return self.apply("v_right_b", self.apply("u_left_di", x))

    def theta_inverse(self, x: Vector) -> Vector:
        """Return ``v x u`` for ``x`` in ``D_g``."""
        return self.apply("u_right_bi", self.apply("v_left_d", x))


def corner_pair_from_maps(link: LinkingAlgebra,
                          maps: Mapping[str, Matrix]) -> CornerMultiplierPair:
    """
    Assemble ``(u, v)`` from corner maps.

    When only the four ``u`` maps are given, the ``v`` maps are their inverses.

    Raises
    ------
    PreconditionFailed
        If a ``v`` map is missing and the ``u`` map it should invert is singular.

    DimensionMismatch
        If a map has the wrong shape.
    """
    maps = dict(maps)
    for name, inverted in INVERSE_MAP.items():
        if name not in maps:
            inverse = maps[inverted].inverse()
            if inverse is None:
                raise PreconditionFailed(f"Corner map '{inverted}' is not invertible.")
            maps[name] = inverse
    missing = set(CORNER_MAPS) - set(maps)
    if missing:
        raise DimensionMismatch(f"Missing corner maps {sorted(missing)}.")

    def side(prefix: str) -> Dict[Tuple[str, str], Matrix]:
        return {CORNER_MAPS[n]: maps[n] for n in CORNER_MAPS if n.startswith(prefix)}

    u = block_multiplier(link, side("u_right"), side("u_left"))
    v = block_multiplier(link, side("v_right"), side("v_left"))
    return CornerMultiplierPair(link, maps, u, v)


def identity_corner_pair(link: LinkingAlgebra) -> CornerMultiplierPair:
    """
    Return the shift pair ``u = e12``, ``v = e21`` of ``C_1``.

    Raises
    ------
    PreconditionFailed
        If the four corners are not the same subspace, i.e. ``B_1 B_1 != B_1``.
    """
    space = link.corners["d"]
    if any(link.corners[c] != space for c in CORNERS):
        raise PreconditionFailed(
            "The shift pair needs B_1 B_1 = B_1 so that all corners of C_1 agree.")
    identity = Matrix.identity(link.graded.field, space.dim)
    return corner_pair_from_maps(link, {name: identity for name in CORNER_MAPS})


def validate_corner_pair(pair: CornerMultiplierPair) -> Optional[str]:
    """Return why ``pair`` is not a valid corner pair, or ``None`` when it is."""
    for name, w in (("u", pair.u), ("v", pair.v)):
        violation = validate_multiplier(w)
        if violation is not None:
            kind, where = violation
            return f"{name} is not a multiplier: {kind} violation at {where}"
    if mult_compose(pair.u, pair.v) != pair.link.e11:
        return "uv != e11"
    if mult_compose(pair.v, pair.u) != pair.link.e22:
        return "vu != e22"
    return None


# Each entry: name, first corner, second corner, left hand side, right hand side; the
# sides take the pair, the product of B and the two arguments.
_Side = Callable[[CornerMultiplierPair, Callable, Vector, Vector], Vector]


def _left(name: str, inner: str) -> Tuple[_Side, _Side]:
    # name(x y) = (inner(x)) y
    return (lambda p, m, x, y: p.apply(name, m(x, y)),
            lambda p, m, x, y: m(p.apply(inner, x), y))


def _right(name: str, inner: str) -> Tuple[_Side, _Side]:
    # name(x y) = x inner(y)
    return (lambda p, m, x, y: p.apply(name, m(x, y)),
            lambda p, m, x, y: m(x, p.apply(inner, y)))


def _middle(first: str, second: str) -> Tuple[_Side, _Side]:
    # first(x) y = x second(y)
    return (lambda p, m, x, y: m(p.apply(first, x), y),
            lambda p, m, x, y: m(x, p.apply(second, y)))


_IDENTITIES = [
    ("u(bi d) = (u bi)d", "bi", "d", _left("u_left_bi", "u_left_bi")),
    ("u(bi b) = (u bi)b", "bi", "b", _left("u_left_di", "u_left_bi")),
    ("u(di bi) = (u di)bi", "di", "bi", _left("u_left_bi", "u_left_di")),
    ("u(di di) = (u di)di", "di", "di", _left("u_left_di", "u_left_di")),
    ("(d d)u = d(d u)", "d", "d", _right("u_right_d", "u_right_d")),
    ("(b bi)u = b(bi u)", "b", "bi", _right("u_right_d", "u_right_bi")),
    ("(di bi)u = di(bi u)", "di", "bi", _right("u_right_bi", "u_right_bi")),
    ("(bi d)u = bi(d u)", "bi", "d", _right("u_right_bi", "u_right_d")),
    ("(d u)bi = d(u bi)", "d", "bi", _middle("u_right_d", "u_left_bi")),
    ("(d u)di = d(u di)", "d", "di", _middle("u_right_d", "u_left_di")),
    ("(bi u)bi = bi(u bi)", "bi", "bi", _middle("u_right_bi", "u_left_bi")),
    ("(bi u)di = bi(u di)", "bi", "di", _middle("u_right_bi", "u_left_di")),
    ("v(d d) = (v d)d", "d", "d", _left("v_left_d", "v_left_d")),
    ("v(b bi) = (v b)bi", "b", "bi", _left("v_left_d", "v_left_b")),
    ("v(d b) = (v d)b", "d", "b", _left("v_left_b", "v_left_d")),
    ("v(b di) = (v b)di", "b", "di", _left("v_left_b", "v_left_b")),
    ("(d b)v = d(b v)", "d", "b", _right("v_right_b", "v_right_b")),
    ("(b di)v = b(di v)", "b", "di", _right("v_right_b", "v_right_di")),
    ("(bi b)v = bi(b v)", "bi", "b", _right("v_right_di", "v_right_b")),
    ("(di di)v = di(di v)", "di", "di", _right("v_right_di", "v_right_di")),
    ("(b v)d = b(v d)", "b", "d", _middle("v_right_b", "v_left_d")),
    ("(b v)b = b(v b)", "b", "b", _middle("v_right_b", "v_left_b")),
    ("(di v)b = di(v b)", "di", "b", _middle("v_right_di", "v_left_b")),
    ("(di v)d = di(v d)", "di", "d", _middle("v_right_di", "v_left_d")),
]


def check_lemma_uv_properties(link: LinkingAlgebra,
                              pair: CornerMultiplierPair) -> CheckReport:
    """
    Check the associativity identities of a corner pair and the induced isomorphism.

    The report holds, in order:

    - ``uv_equals_e11`` and ``vu_equals_e22``;
    - the 24 identities saying that every product of three factors, one of which is
      ``u`` or ``v`` and two of which lie in corners, may be bracketed either way.  Each
      is named by its shape, e.g. ``(d u)bi = d(u bi)``, with corners ``d = D_g``,
      ``b = B_g``, ``bi = B_g^-1`` and ``di = D_g^-1``;
    - ``theta_bijective``, ``theta_multiplicative`` and ``theta_inverse_formula`` for
      ``theta(x) = u x v`` from ``D_g^-1`` to ``D_g`` with inverse ``x -> v x u``.

    Checks quantifying over a zero corner pass vacuously.
    """
    report = CheckReport(f"corner pair of {link.graded.group.name(link.g)}")
    report.add("uv_equals_e11", mult_compose(pair.u, pair.v) == link.e11)
    report.add("vu_equals_e22", mult_compose(pair.v, pair.u) == link.e22)
    multiply = link.graded.ambient.multiply
    describe = link.graded.describe
    for name, first, second, (lhs, rhs) in _IDENTITIES:
        xs, ys = link.corners[first].vectors, link.corners[second].vectors
        if not xs or not ys:
            report.add(name, True, vacuous=True)
            continue
        witness = None
        for x in xs:
            for y in ys:
                try:
                    holds = lhs(pair, multiply, x, y) == rhs(pair, multiply, x, y)
                except XprodError:
                    holds = False
                if not holds:
                    witness = f"({describe(x)}, {describe(y)})"
                    break
            if witness is not None:
                break
        report.add(name, witness is None, witness=witness)

    di = link.corners["di"].vectors
    theta = corner_isomorphism(pair)
    report.add("theta_bijective", theta.is_invertible(),
               detail=f"{link.corners['di'].dim} -> {link.corners['d'].dim}")
    witness = None
    for x in di:
        for y in di:
            try:
                holds = pair.theta(multiply(x, y)) == \
                    multiply(pair.theta(x), pair.theta(y))
            except XprodError:
                holds = False
            if not holds and witness is None:
                witness = f"({describe(x)}, {describe(y)})"
    report.add("theta_multiplicative", witness is None, vacuous=not di,
               witness=witness)
    witness = None
    for x in di:
        try:
            holds = pair.theta_inverse(pair.theta(x)) == x
        except XprodError:
            holds = False
        if not holds and witness is None:
            witness = describe(x)
    report.add("theta_inverse_formula", witness is None, vacuous=not di,
               witness=witness)
    return report


def corner_isomorphism(pair: CornerMultiplierPair) -> Matrix:
    """Return the matrix of ``x -> u x v`` from ``D_g^-1`` to ``D_g``."""
    return pair.maps["u_left_di"] @ pair.maps["v_right_b"]


########################################################################################
# Graded isomorphisms.                                                                 #
########################################################################################
def check_graded_isomorphism(source: GradedAlgebra, target: GradedAlgebra,
                             matrix: Matrix) -> CheckReport:
    """
    Check that ``x -> x @ matrix`` is a graded algebra isomorphism.

    Checks ``bijective``, ``preserves_grading`` and ``multiplicative`` (on every pair of
    basis vectors of the source).

    Raises
    ------
    DimensionMismatch
        If the groups differ or the matrix has the wrong shape.
    """
    if source.group != target.group:
        raise DimensionMismatch("Graded algebras over different groups.")
    if matrix.shape != (source.ambient.dim, target.ambient.dim):
        raise DimensionMismatch(
            f"Isomorphism must be {source.ambient.dim}x{target.ambient.dim}.")
    report = CheckReport("graded isomorphism")
    report.add("bijective", matrix.is_invertible())
    group = source.group
    witness = None
    for g in group.elements:
        for x in source.component(g).vectors:
            if matrix.apply(x) not in target.component(g):
                witness = f"{group.name(g)}: {source.describe(x)}"
                break
        if witness is not None:
            break
    report.add("preserves_grading", witness is None, witness=witness)
    witness = None
    basis = source.ambient.basis_vectors()
    images = [matrix.apply(x) for x in basis]
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            lhs = matrix.apply(source.ambient.multiply(x, y))
            if lhs != target.ambient.multiply(images[i], images[j]):
                names = source.ambient.basis_names
                witness = f"({names[i]}, {names[j]})"
                break
        if witness is not None:
            break
    report.add("multiplicative", witness is None, witness=witness)
    return report


def is_graded_isomorphic(source: GradedAlgebra, target: GradedAlgebra,
                         matrix: Matrix) -> bool:
    """Whether ``matrix`` passes :func:`check_graded_isomorphism`."""
    return check_graded_isomorphism(source, target, matrix).passed


def grading_from_spans(alg: StructureAlgebra, group: FiniteGroup,
                       spans: Mapping[str, Sequence[Vector]]) -> GradedAlgebra:
    """
    Convenience wrapper of :func:`make_graded` taking spanning vectors per element name.

    Raises
    ------
    KeyError
        If an element name is unknown.
    """
    components = {group.index(name): span(alg.field, alg.dim, vectors)
                  for name, vectors in spans.items()}
    return make_graded(alg, group, components)


def build_linking_algebra(gb: GradedAlgebra, g: int) -> LinkingAlgebra:
    """Return the linking algebra ``C_g`` of ``gb``."""
    return LinkingAlgebra(gb, g)


def identity_component_algebra(gb: GradedAlgebra) -> StructureAlgebra:
    """Return ``B_1`` re-based as an algebra."""
    return gb.identity_algebra
