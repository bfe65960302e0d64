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
Named examples and generators of twisted partial actions.

Hand examples:

================================  ====================================================
:func:`coordinate_algebra`        ``k^n`` with orthogonal idempotents ``e1 .. en``.
:func:`matrix_algebra`            ``M_2(k)`` with matrix units ``e11 e12 e21 e22``.
:func:`dual_numbers`              ``k[x]/(x^2)`` with basis ``one, x``.
:func:`upper_nilpotent`           Strictly upper triangular ``3 x 3`` matrices.
:func:`group_algebra`             ``kG`` with basis ``u_<g>``.
:func:`swap_action`               ``Z2`` swapping the factors of ``k x k``.
:func:`partial_action`            ``Z2`` acting on ``k x k`` with ``D_g = k e1``.
:func:`quaternion_action`         ``V4`` twisted by the quaternion sign cocycle.
================================  ====================================================

:func:`random_twisted_action` produces verified actions from a seed.
"""

import itertools
import random
from typing import Dict, List, Optional, Sequence, Tuple

from .action import TwistedPartialAction, transport_action, verify_action
from .algebra import Ideal, StructureAlgebra, make_ideal, subspace_product
from .errors import InternalInconsistency
from .fields import Element, Field, Vector
from .graded import GradedAlgebra, grading_from_spans
from .groups import FiniteGroup, cyclic_group, klein_four_group
from .linalg import Matrix, matrix_of, span
from .multipliers import Multiplier


def _algebra(fld: Field, names: Sequence[str],
             products: Dict[Tuple[int, int], Dict[int, int]]) -> StructureAlgebra:
    n = len(names)
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            entries = [fld.zero] * n
            for k, c in products.get((i, j), {}).items():
                entries[k] = fld(c)
            row.append(tuple(entries))
        table.append(row)
    return StructureAlgebra(fld, names, table)


def coordinate_algebra(fld: Field, n: int, *, prefix: str = "e") -> StructureAlgebra:
    """Return ``k^n``; basis vector ``i`` is named ``<prefix><i + 1>``."""
    return _algebra(fld, [f"{prefix}{i + 1}" for i in range(n)],
                    {(i, i): {i: 1} for i in range(n)})


def matrix_algebra(fld: Field) -> StructureAlgebra:
    """Return ``M_2(k)`` with the matrix units ``e11, e12, e21, e22``."""
    units = [(0, 0), (0, 1), (1, 0), (1, 1)]
    products = {}
    for a, (i, j) in enumerate(units):
        for b, (k, l) in enumerate(units):  # noqa: E741
            if j == k:
                products[(a, b)] = {units.index((i, l)): 1}
    return _algebra(fld, ["e11", "e12", "e21", "e22"], products)


def dual_numbers(fld: Field) -> StructureAlgebra:
    """Return ``k[x]/(x^2)``."""
    return _algebra(fld, ["one", "x"],
                    {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}})


def upper_nilpotent(fld: Field) -> StructureAlgebra:
    """Return the strictly upper triangular ``3 x 3`` matrices (``e12 e23 = e13``)."""
    return _algebra(fld, ["e12", "e13", "e23"], {(0, 2): {1: 1}})


def group_algebra(fld: Field, group: FiniteGroup) -> StructureAlgebra:
    """Return ``kG`` with ``u_g u_h = u_gh``."""
    names = [f"u_{group.name(g)}" for g in group.elements]
    return _algebra(fld, names, {(g, h): {group.mul(g, h): 1}
                                 for g in group.elements for h in group.elements})


########################################################################################
# Gradings.                                                                            #
########################################################################################
def _unit(alg: StructureAlgebra, name: str) -> Vector:
    return alg.basis_vector(alg.basis_names.index(name))


def m2_grading(fld: Field) -> GradedAlgebra:
    """``M_2(k)`` graded by ``Z2``: diagonal in degree ``1``, antidiagonal in ``g``."""
    alg = matrix_algebra(fld)
    return grading_from_spans(alg, cyclic_group(2), {
        "1": [_unit(alg, "e11"), _unit(alg, "e22")],
        "g": [_unit(alg, "e12"), _unit(alg, "e21")]})


def dual_numbers_grading(fld: Field) -> GradedAlgebra:
    """``k[x]/(x^2)`` graded by ``Z2`` with ``x`` in degree ``g``."""
    alg = dual_numbers(fld)
    return grading_from_spans(alg, cyclic_group(2), {
        "1": [_unit(alg, "one")], "g": [_unit(alg, "x")]})


def upper_nilpotent_grading(fld: Field) -> GradedAlgebra:
    """Strictly upper triangular matrices graded by ``Z3`` through ``j - i``."""
    alg = upper_nilpotent(fld)
    return grading_from_spans(alg, cyclic_group(3), {
        "g": [_unit(alg, "e12"), _unit(alg, "e23")], "g2": [_unit(alg, "e13")]})


def group_algebra_grading(fld: Field, group: FiniteGroup) -> GradedAlgebra:
    """``kG`` with ``B_g = k u_g``."""
    alg = group_algebra(fld, group)
    return grading_from_spans(alg, group, {
        group.name(g): [alg.basis_vector(g)] for g in group.elements})


########################################################################################
# Actions.                                                                             #
########################################################################################
def swap_action(fld: Field) -> TwistedPartialAction:
    """``Z2`` swapping the factors of ``k x k``; the crossed product is ``M_2(k)``."""
    alg = coordinate_algebra(fld, 2)
    group = cyclic_group(2)
    whole = make_ideal(alg, alg.full())
    swap = Matrix.from_rows(fld, [(fld.zero, fld.one), (fld.one, fld.zero)])
    return TwistedPartialAction(group, alg, {0: whole, 1: whole}, {1: swap})


def partial_action(fld: Field) -> TwistedPartialAction:
    """
    ``Z2`` acting partially on ``k x k``: ``D_g = k e1`` and ``θ_g`` fixes ``e1``.

    The crossed product is three dimensional.
    """
    alg = coordinate_algebra(fld, 2)
    group = cyclic_group(2)
    whole = make_ideal(alg, alg.full())
    first = make_ideal(alg, alg.span([_unit(alg, "e1")]))
    return TwistedPartialAction(group, alg, {0: whole, 1: first},
                                {1: Matrix.identity(fld, 1)})


def trivial_action(fld: Field, group: FiniteGroup) -> TwistedPartialAction:
    """``group`` acting trivially on ``k``; the crossed product is ``kG``."""
    return scalar_twist_action(fld, group, {})


def scalar_twist_action(fld: Field, group: FiniteGroup,
                        table: Dict[Tuple[int, int], Element]) -> TwistedPartialAction:
    """
    ``group`` acting trivially on ``k`` twisted by scalars.

    Parameters
    ----------
    fld : Field
        The base field.

    group : FiniteGroup
        The acting group.

    table : dict
        ``w_g,h`` keyed by element indices; missing pairs are ``1``.
    """
    alg = coordinate_algebra(fld, 1)
    whole = make_ideal(alg, alg.full())
    domains = {g: whole for g in group.elements}
    isos = {g: Matrix.identity(fld, 1) for g in group.elements}
    twists = {}
    for (g, h), c in table.items():
        scalar = Matrix.from_rows(fld, [(fld(c),)])
        twists[(g, h)] = Multiplier(whole, scalar, scalar)
    return TwistedPartialAction(group, alg, domains, isos, twists)


def find_quaternion_cocycle(fld: Field) -> Dict[Tuple[int, int], Element]:
    """
    Search the normalized ``±1`` valued 2-cocycles of ``V4`` for the quaternion one.

    Every assignment of signs to the nine pairs of non-identity elements is tried in
    :func:`python:itertools.product` order.  The first one satisfying

    .. code-block:: none

        w(h, t) w(g, ht) = w(g, h) w(gh, t)
        w(a, a) = w(b, b) = -1,  w(a, b) = -w(b, a)

    is returned, keyed by the element indices of :func:`~xprod.groups.klein_four_group`
    (pairs involving the identity are omitted and equal ``1``).

    Raises
    ------
    ValueError
        In characteristic ``2``, where ``-1 = 1``.
    """
    if fld.characteristic == 2:
        raise ValueError("The quaternion cocycle needs -1 != 1.")
    group = klein_four_group()
    a, b = group.index("a"), group.index("b")
    pairs = [(g, h) for g in range(1, 4) for h in range(1, 4)]
    for signs in itertools.product((1, -1), repeat=len(pairs)):
        w = {pair: s for pair, s in zip(pairs, signs)}

        def value(g, h):
            return w.get((g, h), 1)

        if value(a, a) != -1 or value(b, b) != -1 or value(a, b) != -value(b, a):
            continue
        if all(value(h, t) * value(g, group.mul(h, t)) ==
               value(g, h) * value(group.mul(g, h), t)
               for g, h, t in itertools.product(group.elements, repeat=3)):
            return {pair: fld(s) for pair, s in w.items()}
    raise InternalInconsistency("No quaternion sign cocycle on V4.")


def quaternion_action(fld: Field) -> TwistedPartialAction:
    """The twisted group algebra of ``V4`` whose crossed product is the quaternions."""
    return scalar_twist_action(fld, klein_four_group(), find_quaternion_cocycle(fld))


def corrupt_cocycle(action: TwistedPartialAction, g: Optional[int] = None,
                    h: Optional[int] = None) -> TwistedPartialAction:
    """
    Return ``action`` with the sign of ``w_g,h`` flipped.

    Defaults to the pair ``(a, b)`` of :func:`~xprod.groups.klein_four_group`.
    """
    group = action.group
    g = group.index("a") if g is None else g
    h = group.index("b") if h is None else h
    twists = dict(action.twists)
    w = twists[(g, h)]
    minus = -action.field.one
    twists[(g, h)] = Multiplier(w.ideal, w.r_matrix.scale(minus),
                                w.l_matrix.scale(minus))
    isos = {k: action.iso(k) for k in group.elements}
    domains = {k: action.domain(k) for k in group.elements}
    return TwistedPartialAction(group, action.ambient, domains, isos, twists)


########################################################################################
# Random actions.                                                                      #
########################################################################################
RANDOM_GROUPS = ("Z2", "Z3", "Z4", "V4")
"""The groups :func:`random_twisted_action` draws from."""


def _random_group(rng: random.Random) -> FiniteGroup:
    choice = rng.choice(RANDOM_GROUPS)
    if choice == "V4":
        return klein_four_group()
    return cyclic_group(int(choice[1:]))


def _nonzero(fld: Field, rng: random.Random) -> Element:
    if fld.is_rational:
        return fld(rng.choice([-3, -2, -1, 1, 2, 3]))
    return fld(rng.randrange(1, fld.characteristic))


def _random_invertible(fld: Field, n: int, rng: random.Random) -> Matrix:
    while True:
        entries = tuple(fld.random_element(rng, box=2) for _ in range(n * n))
        m = Matrix(fld, n, n, entries)
        if m.is_invertible():
            return m


FIXED_POINT = (-1, 0)
"""The point fixed by every group element; it carries a ``2 x 2`` matrix block."""


def _inverse(m: Matrix) -> Matrix:
    inverse = m.inverse()
    assert inverse is not None  # drawn invertible
    return inverse


def _restricted_action(fld: Field, group: FiniteGroup, points: List[Tuple[int, int]],
                       rng: random.Random) -> TwistedPartialAction:
    # Restrict the action of G on Y to A = the product of M_s(k) over the points of X,
    # s = 2 at the fixed point and 1 elsewhere.  θ_g moves the block at y to the block
    # at gy and conjugates it by E_g,gy; the twist is the coboundary of E.
    size = {p: 2 if p == FIXED_POINT else 1 for p in points}
    offset = {}  # type: Dict[Tuple[int, int], int]
    names = []  # type: List[str]
    products = {}  # type: Dict[Tuple[int, int], Dict[int, int]]
    for k, p in enumerate(points):
        offset[p], s = len(names), size[p]
        if s == 1:
            names.append(f"y{k + 1}")
        else:
            names.extend(f"y{k + 1}_{i + 1}{j + 1}" for i in range(s) for j in range(s))
        for i, j, m in itertools.product(range(s), repeat=3):
            products[(offset[p] + i * s + j, offset[p] + j * s + m)] = \
                {offset[p] + i * s + m: 1}
    alg = _algebra(fld, names, products)
    n = alg.dim

    def move(g: int, p: Tuple[int, int]) -> Tuple[int, int]:
        return p if p == FIXED_POINT else (group.mul(g, p[0]), p[1])

    def support(g: int) -> List[Tuple[int, int]]:
        gi = group.inv(g)
        return [p for p in points if move(gi, p) in size]

    def block(x: Vector, p: Tuple[int, int]) -> Matrix:
        s = size[p]
        return Matrix(fld, s, s, tuple(x[offset[p]:offset[p] + s * s]))

    def embed(blocks: Dict[Tuple[int, int], Matrix]) -> Vector:
        entries = list(fld.zero_vector(n))
        for p, m in blocks.items():
            entries[offset[p]:offset[p] + len(m.entries)] = m.entries
        return tuple(entries)

    def units(p: Tuple[int, int]) -> List[Vector]:
        return [fld.unit_vector(n, offset[p] + k) for k in range(size[p] ** 2)]

    domains = {g: make_ideal(alg, span(fld, n, [u for p in support(g)
                                                for u in units(p)]))
               for g in group.elements}

    conj = {}  # type: Dict[Tuple[int, Tuple[int, int]], Matrix]
    for g in group.elements:
        for p in support(g):
            if g == group.identity:
                conj[(g, p)] = Matrix.identity(fld, size[p])
            elif size[p] == 1:
                conj[(g, p)] = Matrix(fld, 1, 1, (_nonzero(fld, rng),))
            else:
                conj[(g, p)] = _random_invertible(fld, size[p], rng)
    conj_inverse = {key: _inverse(m) for key, m in conj.items()}

    def theta(g: int, x: Vector) -> Vector:
        blocks = {}  # type: Dict[Tuple[int, int], Matrix]
        for q in support(group.inv(g)):
            p = move(g, q)
            blocks[p] = conj[(g, p)] @ block(x, q) @ conj_inverse[(g, p)]
        return embed(blocks)

    isos = {g: matrix_of([theta(g, x) for x in domains[group.inv(g)].vectors],
                         domains[g].space, what="domain")
            for g in group.elements}

    # w_g,h = E_g,p E_h,g^-1p E_gh,p^-1 on the block at p.
    bicharacter = group.order == 4 and group.names == klein_four_group().names and \
        rng.random() < 0.5
    twists = {}
    for g in group.elements:
        for h in group.elements:
            gh = group.mul(g, h)
            carrier = Ideal(alg, subspace_product(alg, domains[g].space,
                                                  domains[gh].space))
            sign = -fld.one if bicharacter and (g & 1) and (h & 2) else fld.one
            in_gh = support(gh)
            w = embed({p: (conj[(g, p)] @ conj[(h, move(group.inv(g), p))]
                           @ conj_inverse[(gh, p)]).scale(sign)
                       for p in support(g) if p in in_gh})
            right = [alg.multiply(x, w) for x in carrier.vectors]
            left = [alg.multiply(w, x) for x in carrier.vectors]
            twists[(g, h)] = Multiplier(
                carrier, matrix_of(right, carrier.space, what="carrier"),
                matrix_of(left, carrier.space, what="carrier"))
    return TwistedPartialAction(group, alg, domains, isos, twists)


def random_twisted_action(fld: Field, seed: int, *,
                          max_dim: int = 6) -> TwistedPartialAction:
    """
    Return a verified twisted partial action determined by ``seed``.

    A group ``G`` among :data:`RANDOM_GROUPS` acts on ``Y = G x {0, 1}`` by left
    multiplication and fixes one more point, :data:`FIXED_POINT`.  For a random ``X``
    in ``Y`` the action is restricted to ``A``, the product of one algebra per point of
    ``X``: ``M_2(k)`` at the fixed point (drawn half of the time when ``max_dim >= 4``)
    and ``k`` elsewhere.  ``D_g`` is the product over ``X ∩ gX``.  ``θ_g`` moves the
    block at ``y`` to the block at ``gy`` and conjugates it by a random invertible
    ``E_g,gy``.  The twist is the coboundary ``w_g,h = E_g θ_g(E_h) E_gh^-1``, so its
    two sides differ on the matrix block; for ``V4`` it is multiplied by the sign
    bicharacter ``(-1)^(g_1 h_2)`` half of the time.  Finally ``A`` is rewritten in a
    random basis with :func:`~xprod.action.transport_action`.

    Raises
    ------
    ValueError
        If ``max_dim < 1``.

    InternalInconsistency
        If no generated action verifies after 20 attempts.
    """
    if max_dim < 1:
        raise ValueError(f"max_dim must be positive, got {max_dim}.")
    rng = random.Random(seed)
    for _ in range(20):
        group = _random_group(rng)
        free = [(g, s) for g in group.elements for s in (0, 1)]
        if max_dim >= 4 and rng.random() < 0.5:
            extra = rng.randint(0, min(max_dim - 4, len(free)))
            points = [FIXED_POINT] + sorted(rng.sample(free, extra))
        else:
            count = rng.randint(1, min(max_dim, len(free)))
            points = sorted(rng.sample(free, count))
        action = _restricted_action(fld, group, points, rng)
        action = transport_action(action,
                                  _random_invertible(fld, action.ambient.dim, rng))
        if verify_action(action).passed:
            return action
    raise InternalInconsistency(f"No verified random action for seed {seed}.")
