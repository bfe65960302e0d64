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
Crossed products by twisted partial actions.

The crossed product of ``Θ = ({D_g}, {θ_g}, {w_g,h})`` is the direct sum of the blocks
``D_g δ_g`` with the product

.. code-block:: none

    (a δ_g)(b δ_h) = θ_g(θ_g^-1(a) b) w_g,h δ_gh

Basis vector ``k`` of block ``g`` is the ``k``-th canonical basis vector of ``D_g``
times ``δ_g`` and is labelled ``d<k>_<g>``.
"""

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .action import TwistedPartialAction, apply_theta, apply_theta_inverse, \
    apply_twist, apply_twist_inverse, verify_action
from .algebra import StructureAlgebra
from .errors import InternalInconsistency, UnverifiedAction
from .fields import Vector
from .graded import CORNER_MAPS, CornerMultiplierPair, GradedAlgebra, LinkingAlgebra, \
    corner_pair_from_maps, identity_corner_pair, make_graded, validate_corner_pair
from .linalg import matrix_of, span


@dataclass(frozen=True, eq=False)
class CrossedProduct:
    """
    The crossed product ``A ⋊_Θ G``; build with :func:`build_crossed_product`.

    Parameters
    ----------
    action : TwistedPartialAction
        The action ``Θ``.

    as_algebra : StructureAlgebra
        The crossed product, of dimension ``sum dim D_g``.

    component_map : tuple of range
        The basis indices of block ``D_g δ_g``, indexed by ``g``.

    back_refs : tuple of (int, int)
        For every basis index, the element ``g`` and the index in the basis of ``D_g``.
    """

    action: TwistedPartialAction
    as_algebra: StructureAlgebra
    component_map: Tuple[range, ...]
    back_refs: Tuple[Tuple[int, int], ...]

    @property
    def dim(self) -> int:
        """The dimension of the crossed product."""
        return self.as_algebra.dim

    def block(self, g: int) -> range:
        """Return the basis indices of ``D_g δ_g``."""
        return self.component_map[g]


def embed(cp: CrossedProduct, g: int, a: Vector) -> Vector:
    """
    Return ``a δ_g`` for ``a`` in ``D_g``.

    Raises
    ------
    MembershipError
        If ``a`` is not in ``D_g``.
    """
    action = cp.action
    coords = action.domain(g).coordinates(a, what=f"domain of {action.group.name(g)}")
    result = [action.field.zero] * cp.dim
    block = cp.block(g)
    result[block.start:block.stop] = coords
    return tuple(result)


def component(cp: CrossedProduct, x: Vector, g: int) -> Vector:
    """Return ``a`` in ``D_g`` such that ``a δ_g`` is the ``g`` block of ``x``."""
    block = cp.block(g)
    return cp.action.domain(g).combine(x[block.start:block.stop])


def _block_products(action: TwistedPartialAction, g: int,
                    h: int) -> Dict[Tuple[int, int], Vector]:
    # Products of basis vectors of D_g with basis vectors of D_h, in D_gh coordinates.
    gh = action.group.mul(g, h)
    target = action.domain(gh)
    products = {}
    for i, a in enumerate(action.domain(g).vectors):
        pulled = apply_theta_inverse(action, g, a)
        for j, b in enumerate(action.domain(h).vectors):
            c = apply_theta(action, g, action.ambient.multiply(pulled, b))
            products[(i, j)] = target.coordinates(
                apply_twist(action, g, h, "right", c),
                what=f"domain of {action.group.name(gh)}")
    return products


def build_crossed_product(action: TwistedPartialAction, *,
                          require_verified: bool = True) -> CrossedProduct:
    """
    Construct ``A ⋊_Θ G`` and run the associativity check on every basis triple.

    Parameters
    ----------
    action : TwistedPartialAction
        The action.

    require_verified : bool
        Run :func:`~xprod.action.verify_action` first.  Default: ``True``.  Turning it
        off lets invalid actions reach the associativity check.

    Raises
    ------
    UnverifiedAction
        If ``require_verified`` and the action fails a postulate.

    AssociativityViolation
        If the product is not associative; the witness is the basis triple.
    """
    group = action.group
    if require_verified:
        failure = verify_action(action).first_failure()
        if failure is not None:
            raise UnverifiedAction(
                f"Action fails '{failure.name}' at {failure.witness}: {failure.detail}",
                witness=failure.witness)

    blocks = []
    back_refs = []
    names = []
    start = 0
    for g in group.elements:
        dim = action.domain(g).dim
        blocks.append(range(start, start + dim))
        start += dim
        for k in range(dim):
            back_refs.append((g, k))
            names.append(f"d{k}_{group.name(g)}")
    n = start
    zero = action.field.zero
    table = [[None] * n for _ in range(n)]  # type: list
    for g in group.elements:
        for h in group.elements:
            target = blocks[group.mul(g, h)]
            for (i, j), coords in _block_products(action, g, h).items():
                row = [zero] * n
                row[target.start:target.stop] = coords
                table[blocks[g][i]][blocks[h][j]] = tuple(row)
    alg = StructureAlgebra(action.field, names, table)
    return CrossedProduct(action, alg, tuple(blocks), tuple(back_refs))


def canonical_grading(cp: CrossedProduct) -> GradedAlgebra:
    """Return the grading of ``cp`` with ``B_g = D_g δ_g``."""
    field = cp.action.field
    components = [span(field, cp.dim, (field.unit_vector(cp.dim, i) for i in block))
                  for block in cp.component_map]
    return make_graded(cp.as_algebra, cp.action.group, components)


def build_uv_for_crossed(cp: CrossedProduct, g: int, *,
                         graded: Optional[GradedAlgebra] = None
                         ) -> CornerMultiplierPair:
    """
    Return the corner pair ``(u_g, v_g)`` of the canonical grading of ``cp``.

    With ``w = w_g^-1,g`` and ``w' = w_g,g^-1`` the eight corner maps are

    .. code-block:: none

        u_right_d   a δ_1 -> a δ_g           v_right_b   b δ_g -> b δ_1
        u_right_bi  c δ_g^-1 -> c w δ_1      v_right_di  d δ_1 -> d w^-1 δ_g^-1
        u_left_bi   c δ_g^-1 -> θ_g(c) w' δ_1
        v_left_d    a δ_1 -> θ_g^-1(a w'^-1) δ_g^-1
        u_left_di   d δ_1 -> θ_g(d) δ_g      v_left_b    b δ_g -> θ_g^-1(b) δ_1

    At the identity the shift pair ``(e12, e21)`` is returned.

    Parameters
    ----------
    cp : CrossedProduct
        A crossed product of a verified action.

    g : int
        The group element.

    graded : GradedAlgebra, optional
        ``canonical_grading(cp)``, when already computed.

    Raises
    ------
    InternalInconsistency
        If ``u_g v_g != e11`` or ``v_g u_g != e22``.
    """
    gb = graded if graded is not None else canonical_grading(cp)
    link = LinkingAlgebra(gb, g)
    action = cp.action
    group = action.group
    if g == group.identity:
        return identity_corner_pair(link)
    gi = group.inv(g)
    one = group.identity
    formulas = {
        "u_right_d": lambda x: embed(cp, g, component(cp, x, one)),
        "u_right_bi": lambda x: embed(
            cp, one, apply_twist(action, gi, g, "right", component(cp, x, gi))),
        "u_left_bi": lambda x: embed(cp, one, apply_twist(
            action, g, gi, "right", apply_theta(action, g, component(cp, x, gi)))),
        "u_left_di": lambda x: embed(cp, g, apply_theta(action, g,
                                                        component(cp, x, one))),
        "v_right_b": lambda x: embed(cp, one, component(cp, x, g)),
        "v_right_di": lambda x: embed(cp, gi, apply_twist_inverse(
            action, gi, g, "right", component(cp, x, one))),
        "v_left_d": lambda x: embed(cp, gi, apply_theta_inverse(
            action, g, apply_twist_inverse(action, g, gi, "right",
                                           component(cp, x, one)))),
        "v_left_b": lambda x: embed(cp, one, apply_theta_inverse(
            action, g, component(cp, x, g))),
    }
    maps = {}
    for name, (source, target) in CORNER_MAPS.items():
        images = [formulas[name](x) for x in link.corners[source].vectors]
        maps[name] = matrix_of(images, link.corners[target], what=f"corner {target}")
    pair = corner_pair_from_maps(link, maps)
    problem = validate_corner_pair(pair)
    if problem is not None:
        raise InternalInconsistency(
            f"Corner pair of the crossed product at {group.name(g)}: {problem}.")
    return pair
