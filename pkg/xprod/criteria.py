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
Deciding whether a graded algebra is a crossed product.

A grading ``B = sum B_g`` is isomorphic to a crossed product ``B_1 ⋊_Θ G`` exactly
when ``B_g B_g^-1 B_g = B_g`` for every ``g`` and every linking algebra ``C_g`` carries
a corner pair ``(u_g, v_g)``.  :func:`check_criteria` runs the whole pipeline:

1. condition (i) and homogeneous non-degeneracy (:mod:`xprod.graded`);
2. one corner pair per element, either from a pair of module isomorphisms
   ``ψ: D_g -> B_g``, ``ψ': D_g^-1 -> B_g`` (the ``"psi"`` route, when every ``D_g``
   is s-unital) or by searching the multipliers of ``C_g`` directly (the ``"uv"``
   route);
3. the action ``θ_g(x) = u_g x v_g``, ``w_g,h = u_g u_h v_gh`` on ``A = B_1``;
4. the graded isomorphism ``φ(x) = x v_g δ_g`` on ``B_g``.

Searches look for an invertible member of a linear family of matrices.  Over ``F_p``
the whole projective family is enumerated when it fits :attr:`SearchBudget.enum_budget`,
so an empty result is a proof.  Otherwise, and always over ``Q``, candidates are
sampled and an empty result is only *undecided*.
"""

import dataclasses
import itertools
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple, \
    Union

from .action import TwistedPartialAction, check_derived_identities, verify_action
from .algebra import Ideal, StructureAlgebra, local_unit, subspace_product
from .colorize import log_check, log_stage
from .crossed import CrossedProduct, build_crossed_product, canonical_grading, embed
from .errors import InternalInconsistency, MembershipError, PreconditionFailed, \
    XprodError
from .fields import Element, Field, Vector
from .graded import CORNER_MAPS, CornerMultiplierPair, GradedAlgebra, LinkingAlgebra, \
    check_component_identities, check_condition_i, check_graded_isomorphism, \
    check_homogeneous_nondegeneracy, check_lemma_uv_properties, component_products, \
    corner_pair_from_maps, identity_corner_pair, \
    validate_corner_pair
from .linalg import LinearSolver, Matrix, matrix_of, span, vec_add, vec_scale
from .multipliers import Multiplier, multiplier_from_vector, multiplier_space
from .report import CheckReport, format_expression, format_matrix

ROUTES = ("auto", "psi", "uv")
"""Accepted values of the ``route`` argument of :func:`check_criteria`."""


@dataclass(frozen=True)
class SearchBudget:
    """
    Configuration of the invertibility searches.

    Parameters
    ----------
    seed : int
        Base seed of the random searches.  Default: ``0``.

    trials : int
        Random candidates per search, also the cap of the deterministic ``0/1`` sweep
        over ``Q``.  Default: ``200``.

    enum_budget : int
        Largest family size ``p^k`` enumerated exhaustively over ``F_p``.  Default:
        ``10**6``.

    probe_prime : int
        The prime used for the modular existence hint of ``Q`` searches.  Default:
        ``10007``.

    Raises
    ------
    ValueError
        If a count is negative or ``probe_prime`` is not prime.
    """

    seed: int = 0
    trials: int = 200
    enum_budget: int = 10 ** 6
    probe_prime: int = 10007

    def __post_init__(self):
        if self.trials < 0 or self.enum_budget < 0:
            raise ValueError("Search budgets must be non-negative.")
        if self.probe_prime < 2:
            raise ValueError(f"Invalid probe prime {self.probe_prime}.")
        Field(self.probe_prime)

    def derive_seed(self, index: int) -> int:
        """Return the seed of the search for group element ``index``."""
        return (self.seed * 1000003 + index) % 2 ** 63

    def merge(self, **overrides: Optional[int]) -> "SearchBudget":
        """Return a copy with the non-``None`` ``overrides`` applied."""
        return dataclasses.replace(
            self, **{k: v for k, v in overrides.items() if v is not None})

    def to_dict(self) -> Dict[str, int]:
        """Return the budgets (without the seed) as a dictionary."""
        return {"trials": self.trials, "enum_budget": self.enum_budget,
                "probe_prime": self.probe_prime}


########################################################################################
# Invertible members of matrix families.                                               #
########################################################################################
@dataclass(frozen=True)
class PencilResult:
    """
    The outcome of :func:`search_invertible_pencil`.

    Parameters
    ----------
    coefficients : tuple or None
        The coefficients of the accepted combination, ``None`` when nothing was found.

    matrices : tuple of Matrix or None
        The accepted combination.

    tried : int
        The number of candidates examined.

    exhaustive : bool
        Whether every candidate (up to scaling) was examined, so that an empty result
        proves that no acceptable combination exists.

    mode : str
        ``"trivial"``, ``"shape"``, ``"enumeration"`` or ``"random"``.

    hint : str or None
        The modular existence hint of a failed search over ``Q``.
    """

    coefficients: Optional[Vector]
    matrices: Optional[Tuple[Matrix, ...]]
    tried: int
    exhaustive: bool
    mode: str
    hint: Optional[str] = None

    @property
    def found(self) -> bool:
        """Whether a combination was accepted."""
        return self.matrices is not None

    def describe(self) -> str:
        """Summarize the search in one line."""
        outcome = "found" if self.found else "none"
        text = f"{self.mode} search, {self.tried} candidate(s), {outcome}"
        if self.hint:
            text += f"; {self.hint}"
        return text


def _projective_points(fld: Field, k: int) -> Iterator[Tuple[Element, ...]]:
    # Fewest zeros first, leading nonzero coefficient 1.
    nonzero = list(fld.nonzero_elements())
    for zeros in range(k):
        for support in itertools.combinations(range(k), k - zeros):
            for rest in itertools.product(nonzero, repeat=len(support) - 1):
                point = [fld.zero] * k
                point[support[0]] = fld.one
                for position, value in zip(support[1:], rest):
                    point[position] = value
                yield tuple(point)


def _binary_patterns(fld: Field, k: int) -> Iterator[Tuple[Element, ...]]:
    for zeros in range(k):
        for support in itertools.combinations(range(k), k - zeros):
            yield tuple(fld.one if i in support else fld.zero for i in range(k))


def _reduce(fld: Field, m: Matrix, prime: Field) -> Optional[Matrix]:
    entries = []
    for a in m.entries:
        value = fld.rational(a)
        if value.denominator % prime.characteristic == 0:
            return None
        entries.append(prime(Fraction(value.numerator, value.denominator)))
    return Matrix(prime, m.rows, m.cols, tuple(entries))


def search_invertible_pencil(fld: Field, shapes: Sequence[Tuple[int, int]],
                             generators: Sequence[Sequence[Matrix]], *,
                             budget: SearchBudget, seed: int,
                             validate: Optional[Callable[[Tuple[Matrix, ...]], bool]]
                             = None) -> PencilResult:
    """
    Search a combination ``sum c_i G_i`` whose matrices are all invertible.

    Every generator is a tuple of matrices of the given ``shapes``; a combination is
    taken componentwise.  ``validate`` may reject further candidates and must be
    invariant under scaling, so that over ``F_p`` only one point per line is tried.

    Over ``F_p`` with ``p^k <= enum_budget`` candidates are enumerated with the fewest
    zero coefficients first; otherwise ``budget.trials`` random candidates are drawn.
    Over ``Q`` the ``0/1`` combinations are swept first (at most ``budget.trials`` of
    them, heaviest first), then ``budget.trials`` integer candidates are drawn from a
    box growing every 20 trials.  A failed ``Q`` search probes the family modulo
    ``budget.probe_prime`` and reports the outcome as a hint.

    Parameters
    ----------
    fld : Field
        The base field.

    shapes : sequence of (int, int)
        The shape of every matrix of a candidate.

    generators : sequence of sequences of Matrix
        A basis of the family.

    budget : SearchBudget
        The search limits.

    seed : int
        Seed of the random candidates.

    validate : callable, optional
        Extra acceptance test on the candidate matrices.
    """
    k = len(generators)
    if any(r != c for r, c in shapes):
        return PencilResult(None, None, 0, True, "shape")
    if k == 0:
        candidate = tuple(Matrix.zeros(fld, r, c) for r, c in shapes)
        ok = all(r == 0 for r, _ in shapes) and \
            (validate is None or validate(candidate))
        return PencilResult(() if ok else None, candidate if ok else None, 1, True,
                            "trivial")

    def combine(coefficients):
        mats = []
        for j, (r, c) in enumerate(shapes):
            acc = Matrix.zeros(fld, r, c)
            for a, gen in zip(coefficients, generators):
                if a:
                    acc = acc + gen[j].scale(a)
            mats.append(acc)
        return tuple(mats)

    def accepts(mats):
        return all(m.is_invertible() for m in mats) and \
            (validate is None or validate(mats))

    tried = 0
    rng = random.Random(seed)
    if not fld.is_rational and fld.characteristic ** k <= budget.enum_budget:
        for point in _projective_points(fld, k):
            tried += 1
            mats = combine(point)
            if accepts(mats):
                return PencilResult(point, mats, tried, False, "enumeration")
        return PencilResult(None, None, tried, True, "enumeration")

    if fld.is_rational:
        for point in itertools.islice(_binary_patterns(fld, k), budget.trials):
            tried += 1
            mats = combine(point)
            if accepts(mats):
                return PencilResult(point, mats, tried, False, "random")
    for t in range(budget.trials):
        point = tuple(fld.random_element(rng, box=1 + t // 20) for _ in range(k))
        if not any(point):
            continue
        tried += 1
        mats = combine(point)
        if accepts(mats):
            return PencilResult(point, mats, tried, False, "random")

    hint = None
    if fld.is_rational:
        hint = _modular_hint(fld, shapes, generators, budget, seed)
    return PencilResult(None, None, tried, False, "random", hint)


def _modular_hint(fld: Field, shapes: Sequence[Tuple[int, int]],
                  generators: Sequence[Sequence[Matrix]], budget: SearchBudget,
                  seed: int) -> str:
    prime = Field(budget.probe_prime)
    reduced = []
    for gen in generators:
        mats = [_reduce(fld, m, prime) for m in gen]
        if any(m is None for m in mats):
            return f"family not defined modulo {prime.characteristic}"
        reduced.append(mats)
    probe = search_invertible_pencil(
        prime, shapes, reduced, budget=budget.merge(enum_budget=0), seed=seed)
    if probe.found:
        return f"an invertible member exists modulo {prime.characteristic}"
    return f"no invertible member found modulo {prime.characteristic}"


########################################################################################
# Linear maps defined on products.                                                     #
########################################################################################
class ProductExtension:
    """
    A linear map on sums of products ``sum x_i y_i`` given by its value on products.

    The argument is decomposed over the products of the two bases; the value is then
    recomputed from a second decomposition, taken over the pairs in reverse order.
    Disagreement means the map is not well defined.

    Parameters
    ----------
    alg : StructureAlgebra
        The algebra the products are taken in.

    first, second : sequence of vectors
        Spanning sets of the two factors.

    evaluate : callable
        ``evaluate(x, y)`` is the value on ``x * y``.

    what : str
        Name of the map used in error messages.
    """

    def __init__(self, alg: StructureAlgebra, first: Sequence[Vector],
                 second: Sequence[Vector], evaluate: Callable[[Vector, Vector], Vector],
                 what: str):
        self.alg = alg
        self.what = what
        self._pairs = [(x, y) for x in first for y in second]
        self._evaluate = evaluate
        self._values = {}  # type: Dict[int, Vector]
        products = [alg.multiply(x, y) for x, y in self._pairs]
        self._forward = LinearSolver(
            Matrix.from_rows(alg.field, products, alg.dim).transpose())
        self._backward = LinearSolver(
            Matrix.from_rows(alg.field, products[::-1], alg.dim).transpose())

    def _value(self, index: int) -> Vector:
        if index not in self._values:
            self._values[index] = self._evaluate(*self._pairs[index])
        return self._values[index]

    def _sum(self, coefficients: Vector, reverse: bool) -> Vector:
        total = self.alg.field.zero_vector(self.alg.dim)
        n = len(self._pairs)
        for position, c in enumerate(coefficients):
            if c:
                index = n - 1 - position if reverse else position
                total = vec_add(total, vec_scale(c, self._value(index)))
        return total

    def __call__(self, x: Vector) -> Vector:
        """
        Evaluate the map at ``x``.

        Raises
        ------
        MembershipError
            If ``x`` is not a sum of products.

        InternalInconsistency
            If the two decompositions give different values.
        """
        forward = self._forward.solve_vector(x)
        if forward is None:
            raise MembershipError(f"Argument of {self.what} is not a sum of products.",
                                  witness=x)
        backward = self._backward.solve_vector(x)
        assert backward is not None
        value = self._sum(forward, reverse=False)
        if value != self._sum(backward, reverse=True):
            raise InternalInconsistency(
                f"{self.what} is not well defined on the products.", witness=x)
        return value


########################################################################################
# Module isomorphisms and corner pairs.                                                #
########################################################################################
@dataclass(frozen=True)
class ModuleIsoPair:
    """
    A left ``D_g``-module isomorphism ``ψ: D_g -> B_g`` and a right ``D_g^-1``-module
    isomorphism ``ψ': D_g^-1 -> B_g`` with ``(d ψ) d' = d (ψ' d')``.

    The matrices use the canonical bases of the subspaces of ``B``.
    """

    g: int
    psi: Matrix
    psi_prime: Matrix


def check_s_unital(ideal: Ideal) -> bool:
    """
    Whether ``x`` lies in ``I x`` and in ``x I`` for every ``x`` of ``I``.

    In finite dimension this holds exactly when ``I`` has a left unit and a right unit
    for all of its elements, which is a linear system.
    """
    alg, space = ideal.ambient, ideal.space
    return local_unit(alg, space, side="left") is not None and \
        local_unit(alg, space, side="right") is not None


def validate_module_iso_pair(gb: GradedAlgebra, pair: ModuleIsoPair) -> Optional[str]:
    """Return why ``pair`` is not a valid module isomorphism pair, or ``None``."""
    group, alg = gb.group, gb.ambient
    g = pair.g
    d, di, b = gb.domain(g), gb.domain(group.inv(g)), gb.component(g)
    if pair.psi.shape != (d.dim, b.dim) or not pair.psi.is_invertible():
        return "psi is not invertible"
    if pair.psi_prime.shape != (di.dim, b.dim) or not pair.psi_prime.is_invertible():
        return "psi' is not invertible"

    def psi(x):
        return b.combine(pair.psi.apply(d.require_coordinates(x, what="D_g")))

    def psi_prime(x):
        return b.combine(pair.psi_prime.apply(di.require_coordinates(x, what="D_g^-1")))

    try:
        for s in d.vectors:
            for x in d.vectors:
                if psi(alg.multiply(s, x)) != alg.multiply(s, psi(x)):
                    return "psi is not a left module map"
            for t in di.vectors:
                if alg.multiply(psi(s), t) != alg.multiply(s, psi_prime(t)):
                    return "psi and psi' are not compatible"
        for x in di.vectors:
            for t in di.vectors:
                if psi_prime(alg.multiply(x, t)) != alg.multiply(psi_prime(x), t):
                    return "psi' is not a right module map"
    except XprodError as err:
        return str(err)
    return None


def _require_route_basics(gb: GradedAlgebra, g: int):
    group = gb.group
    for h in {g, group.inv(g)}:
        b = gb.component(h)
        if b != subspace_product(gb.ambient, gb.domain(h), b):
            raise PreconditionFailed(
                f"Condition (i) fails at '{group.name(h)}'.", witness=group.name(h))


def _search_module_iso_pair(gb: GradedAlgebra, g: int, budget: SearchBudget
                            ) -> Tuple[Optional[ModuleIsoPair], PencilResult]:
    # Every valid pair is (right, left) multiplication by one m in B_g.
    alg = gb.ambient
    d, di, b = gb.domain(g), gb.domain(gb.group.inv(g)), gb.component(g)
    generators = []
    for m in b.vectors:
        psi = matrix_of([alg.multiply(x, m) for x in d.vectors], b, what="B_g")
        psi_prime = matrix_of([alg.multiply(m, x) for x in di.vectors], b, what="B_g")
        generators.append((psi, psi_prime))
    result = search_invertible_pencil(
        gb.field, [(d.dim, b.dim), (di.dim, b.dim)], generators, budget=budget,
        seed=budget.derive_seed(g))
    if not result.found:
        return None, result
    psi, psi_prime = result.matrices
    pair = ModuleIsoPair(g, psi, psi_prime)
    problem = validate_module_iso_pair(gb, pair)
    if problem is not None:
        raise InternalInconsistency(f"Module pair at {gb.group.name(g)}: {problem}.")
    return pair, result


def solve_module_iso_pair(gb: GradedAlgebra, g: int, *,
                          budget: Optional[SearchBudget] = None
                          ) -> Optional[ModuleIsoPair]:
    """
    Search ``(ψ, ψ')`` for element ``g``.

    ``None`` means the configured search found nothing; over ``F_p`` within the
    enumeration budget it also means that no pair exists.

    Raises
    ------
    PreconditionFailed
        If condition (i) fails at ``g`` or ``g^-1``, or ``D_g`` or ``D_g^-1`` is not
        s-unital.
    """
    _require_route_basics(gb, g)
    domains = component_products(gb)
    for h in (g, gb.group.inv(g)):
        if not check_s_unital(domains[h]):
            raise PreconditionFailed(
                f"D_{gb.group.name(h)} is not s-unital.", witness=gb.group.name(h))
    return _search_module_iso_pair(gb, g, budget or SearchBudget())[0]


def assemble_uv(gb: GradedAlgebra, g: int, pair: ModuleIsoPair, *,
                link: Optional[LinkingAlgebra] = None) -> CornerMultiplierPair:
    """
    Build ``(u_g, v_g)`` from a module isomorphism pair.

    ``r u = ψ(r)`` and ``u r' = ψ'(r')`` directly; on ``B_g^-1`` the maps extend over
    products: ``u (r' m') = ψ'(r') m'`` and ``(m' r) u = m' ψ(r)``.  The ``v``
    maps are the inverses.

    Raises
    ------
    InternalInconsistency
        If the pair fails :func:`~xprod.graded.validate_corner_pair` or one of the
        identities of :func:`~xprod.graded.check_lemma_uv_properties`.
    """
    link = link if link is not None else LinkingAlgebra(gb, g)
    if g == gb.group.identity:
        return identity_corner_pair(link)
    alg = gb.ambient
    corners = link.corners

    def psi(x):
        return corners["b"].combine(
            pair.psi.apply(corners["d"].require_coordinates(x, what="D_g")))

    def psi_prime(x):
        return corners["b"].combine(
            pair.psi_prime.apply(corners["di"].require_coordinates(x, what="D_g^-1")))

    left = ProductExtension(alg, corners["di"].vectors, corners["bi"].vectors,
                            lambda r, m: alg.multiply(psi_prime(r), m), "u on B_g^-1")
    right = ProductExtension(alg, corners["bi"].vectors, corners["d"].vectors,
                             lambda m, r: alg.multiply(m, psi(r)), "u on B_g^-1")
    bi = corners["bi"].vectors
    try:
        maps = {
            "u_right_d": pair.psi,
            "u_left_di": pair.psi_prime,
            "u_left_bi": matrix_of(
                [left(m) for m in bi],
                corners["d"], what="D_g"),
            "u_right_bi": matrix_of(
                [right(m) for m in bi],
                corners["di"], what="D_g^-1"),
        }
        corner_pair = corner_pair_from_maps(link, maps)
    except (MembershipError, PreconditionFailed) as err:
        raise InternalInconsistency(
            f"Assembling the corner pair of {gb.group.name(g)}: {err}") from err
    _assert_corner_pair(corner_pair)
    return corner_pair


def _assert_corner_pair(pair: CornerMultiplierPair):
    name = pair.link.graded.group.name(pair.link.g)
    problem = validate_corner_pair(pair)
    if problem is not None:
        raise InternalInconsistency(f"Corner pair of {name}: {problem}.")
    failure = check_lemma_uv_properties(pair.link, pair).first_failure()
    if failure is not None:
        raise InternalInconsistency(
            f"Corner pair of {name} fails '{failure.name}' at {failure.witness}.")


def dimension_obstruction(link: LinkingAlgebra) -> Optional[str]:
    """
    Return why no corner pair of ``link`` can exist, judging by dimensions only.

    ``uv = e11`` and ``vu = e22`` make every corner map of ``u`` invertible, so the four
    corners must have equal dimensions.
    """
    dims = link.corner_dims
    if len(set(dims.values())) > 1:
        text = ", ".join(f"{c}={n}" for c, n in dims.items())
        return f"corner dimensions differ ({text})"
    return None


_U_MAPS = ("u_right_d", "u_right_bi", "u_left_bi", "u_left_di")


def _u_supports(link: LinkingAlgebra) -> Tuple[List[Tuple[int, int]],
                                               List[Tuple[int, int]]]:
    supports = {"right": [], "left": []}  # type: Dict[str, List[Tuple[int, int]]]
    for name in _U_MAPS:
        source, target = CORNER_MAPS[name]
        side = "right" if name.startswith("u_right") else "left"
        r0, c0 = link.offsets[source], link.offsets[target]
        supports[side].extend(
            (r0 + i, c0 + j) for i in range(link.corners[source].dim)
            for j in range(link.corners[target].dim))
    return supports["right"], supports["left"]


def _u_blocks(link: LinkingAlgebra, u: Multiplier) -> Tuple[Matrix, ...]:
    blocks = []
    for name in _U_MAPS:
        source, target = CORNER_MAPS[name]
        m = u.r_matrix if name.startswith("u_right") else u.l_matrix
        r0, c0 = link.offsets[source], link.offsets[target]
        rows, cols = link.corners[source].dim, link.corners[target].dim
        blocks.append(Matrix.from_rows(
            m.field, (m.row(r0 + i)[c0:c0 + cols] for i in range(rows)), cols))
    return tuple(blocks)


def _search_uv(gb: GradedAlgebra, g: int, budget: SearchBudget, link: LinkingAlgebra
               ) -> Tuple[Optional[CornerMultiplierPair], Optional[PencilResult]]:
    if dimension_obstruction(link) is not None:
        return None, None
    r_support, l_support = _u_supports(link)
    space = multiplier_space(link.carrier, r_support=r_support, l_support=l_support)
    generators = [
        _u_blocks(link, multiplier_from_vector(link.carrier, s, r_support=r_support,
                                               l_support=l_support))
        for s in space.vectors]
    shapes = [(link.corners[CORNER_MAPS[n][0]].dim, link.corners[CORNER_MAPS[n][1]].dim)
              for n in _U_MAPS]

    def validate(mats):
        candidate = corner_pair_from_maps(link, dict(zip(_U_MAPS, mats)))
        return validate_corner_pair(candidate) is None

    result = search_invertible_pencil(gb.field, shapes, generators, budget=budget,
                                      seed=budget.derive_seed(g), validate=validate)
    if not result.found:
        return None, result
    pair = corner_pair_from_maps(link, dict(zip(_U_MAPS, result.matrices)))
    _assert_corner_pair(pair)
    return pair, result


def solve_uv_directly(gb: GradedAlgebra, g: int, *,
                      budget: Optional[SearchBudget] = None
                      ) -> Optional[CornerMultiplierPair]:
    """
    Search a corner pair of ``C_g`` among the multipliers of the linking algebra.

    The multipliers ``u`` with ``e11 u e22 = u`` form a linear space; a member whose
    four corner maps are invertible and whose inverse pair ``v`` is again a multiplier
    is a solution.  Returns ``None`` when the search finds nothing, including the
    :func:`dimension_obstruction` case.

    Raises
    ------
    PreconditionFailed
        If condition (i) fails at ``g`` or ``g^-1``, or ``B_g`` or ``B_g^-1`` is
        degenerate.
    """
    _require_route_basics(gb, g)
    report = check_homogeneous_nondegeneracy(gb)
    for h in {g, gb.group.inv(g)}:
        if not report.get(f"nondegenerate[{gb.group.name(h)}]").passed:
            raise PreconditionFailed(
                f"B_{gb.group.name(h)} is degenerate.", witness=gb.group.name(h))
    link = LinkingAlgebra(gb, g)
    if g == gb.group.identity:
        return identity_corner_pair(link)
    return _search_uv(gb, g, budget or SearchBudget(), link)[0]


########################################################################################
# Reconstruction.                                                                      #
########################################################################################
def _reconstruct(gb: GradedAlgebra, pairs: Dict[int, CornerMultiplierPair]
                 ) -> Tuple[TwistedPartialAction, CheckReport, CheckReport]:
    group = gb.group
    missing = [group.name(g) for g in group.elements if g not in pairs]
    if missing:
        raise PreconditionFailed(f"Missing corner pairs for {missing}.")
    alg = gb.identity_algebra
    ambient = gb.ambient
    domains = component_products(gb)

    def lift(a: Vector) -> Vector:
        return gb.from_identity(a)

    isos = {}
    for g in group.elements:
        images = [gb.to_identity(pairs[g].theta(lift(y)))
                  for y in domains[group.inv(g)].vectors]
        isos[g] = matrix_of(images, domains[g].space, what="domain")

    right_ext = {}  # type: Dict[Tuple[int, int], ProductExtension]
    left_ext = {}  # type: Dict[Tuple[int, int], ProductExtension]

    def right_extension(gh: int, h: int) -> ProductExtension:
        if (gh, h) not in right_ext:
            hi = group.inv(h)
            right_ext[(gh, h)] = ProductExtension(
                ambient, gb.component(gh).vectors, gb.component(hi).vectors,
                lambda b, m: ambient.multiply(b, pairs[h].apply("u_right_bi", m)),
                f"right action of u_{group.name(h)}")
        return right_ext[(gh, h)]

    def left_extension(h: int, g: int) -> ProductExtension:
        if (h, g) not in left_ext:
            left_ext[(h, g)] = ProductExtension(
                ambient, gb.component(group.inv(h)).vectors,
                gb.component(group.inv(g)).vectors,
                lambda m, b: ambient.multiply(pairs[h].apply("u_left_bi", m), b),
                f"left action of u_{group.name(h)}")
        return left_ext[(h, g)]

    twists = {}
    for g in group.elements:
        for h in group.elements:
            gh = group.mul(g, h)
            carrier = Ideal(alg, subspace_product(alg, domains[g].space,
                                                  domains[gh].space))
            right, left = [], []
            for y in carrier.vectors:
                x = lift(y)
                z = right_extension(gh, h)(pairs[g].apply("u_right_d", x))
                right.append(gb.to_identity(pairs[gh].apply("v_right_b", z)))
                z = left_extension(h, g)(pairs[gh].apply("v_left_d", x))
                left.append(gb.to_identity(pairs[g].apply("u_left_bi", z)))
            twists[(g, h)] = Multiplier(
                carrier, matrix_of(right, carrier.space, what="carrier"),
                matrix_of(left, carrier.space, what="carrier"))

    action = TwistedPartialAction(group, alg, domains, isos, twists)
    report = verify_action(action)
    failure = report.first_failure()
    if failure is not None:
        raise InternalInconsistency(
            f"Reconstructed action fails '{failure.name}' at {failure.witness}: "
            f"{failure.detail}", witness=failure.witness)
    derived = check_derived_identities(action, strict=True)
    return action, report, derived


def reconstruct_action(gb: GradedAlgebra, pairs: Dict[int, CornerMultiplierPair]
                       ) -> TwistedPartialAction:
    """
    Build the twisted partial action of ``G`` on ``A = B_1`` defined by corner pairs.

    ``θ_g(x) = u_g x v_g`` on ``D_g^-1`` and ``w_g,h = u_g u_h v_gh`` on ``D_g D_gh``;
    the composite is evaluated through the actions of ``u_h`` extended to products
    ``B_gh B_h^-1`` (right) and ``B_h^-1 B_g^-1`` (left).  The result is verified with
    :func:`~xprod.action.verify_action` and
    :func:`~xprod.action.check_derived_identities`.

    Raises
    ------
    PreconditionFailed
        If a pair is missing.

    InternalInconsistency
        If the action fails a postulate or an extended action is not well defined.
    """
    return _reconstruct(gb, pairs)[0]


def build_phi(gb: GradedAlgebra, action: TwistedPartialAction,
              pairs: Dict[int, CornerMultiplierPair], *,
              crossed: Optional[CrossedProduct] = None
              ) -> Tuple[Matrix, CheckReport]:
    """
    Return the graded isomorphism ``φ: B -> B_1 ⋊_Θ G`` and its verification.

    ``φ(x) = (x v_g) δ_g`` for ``x`` in ``B_g``; the inverse is ``a δ_g -> a u_g``.

    Raises
    ------
    InternalInconsistency
        If ``φ`` fails :func:`~xprod.graded.check_graded_isomorphism`.
    """
    cp = crossed if crossed is not None else build_crossed_product(action)
    rows, images = [], []
    for g in gb.group.elements:
        for x in gb.component(g).vectors:
            rows.append(x)
            images.append(embed(cp, g, gb.to_identity(pairs[g].apply("v_right_b", x))))
    stacked = Matrix.from_rows(gb.field, rows, gb.ambient.dim).inverse()
    if stacked is None or len(images) != cp.dim:
        raise InternalInconsistency(
            f"Dimension ledger: B has dimension {gb.ambient.dim}, the crossed product "
            f"{cp.dim}.")
    phi = stacked @ Matrix.from_rows(gb.field, images, cp.dim)
    report = check_graded_isomorphism(gb, canonical_grading(cp), phi)
    failure = report.first_failure()
    if failure is not None:
        raise InternalInconsistency(
            f"phi fails '{failure.name}' at {failure.witness}.",
            witness=failure.witness)
    return phi, report


########################################################################################
# The pipeline.                                                                        #
########################################################################################
@dataclass
class CriteriaCertificate:
    """
    Proof that a graded algebra is a crossed product.

    Parameters
    ----------
    graded : GradedAlgebra
        The input.

    routes : dict
        ``"identity"``, ``"psi"`` or ``"uv"`` per element.

    module_pairs : dict
        The :class:`ModuleIsoPair` of every element solved by the ``"psi"`` route.

    corner_pairs : dict
        ``(u_g, v_g)`` per element.

    action : TwistedPartialAction
        The reconstructed action on ``B_1``.

    crossed : CrossedProduct
        ``B_1 ⋊_Θ G``.

    phi : Matrix
        The graded isomorphism ``B -> B_1 ⋊_Θ G``.

    reports : list of CheckReport
        Every check run by the pipeline, in order.

    corner_reports : dict
        :func:`~xprod.graded.check_lemma_uv_properties` per element.

    budget : SearchBudget
        The budgets in effect.
    """

    graded: GradedAlgebra
    routes: Dict[int, str]
    module_pairs: Dict[int, ModuleIsoPair]
    corner_pairs: Dict[int, CornerMultiplierPair]
    action: TwistedPartialAction
    crossed: CrossedProduct
    phi: Matrix
    reports: List[CheckReport]
    corner_reports: Dict[int, CheckReport]
    budget: SearchBudget
    verdict: str = "pass"

    def to_payload(self) -> Dict[str, Any]:
        """Return the certificate as JSON compatible data."""
        action = self.action
        group = action.group
        names = action.ambient.basis_names
        fld = action.field
        payload = {
            "routes": {group.name(g): r for g, r in sorted(self.routes.items())},
            "domains": {
                group.name(g): [format_expression(fld, names, v)
                                for v in action.domain(g).vectors]
                for g in group.elements},
            "theta": {group.name(g): format_matrix(action.iso(g))
                      for g in group.elements},
            "twists": {
                f"{group.name(g)},{group.name(h)}": {
                    "R": format_matrix(w.r_matrix), "L": format_matrix(w.l_matrix)}
                for (g, h), w in sorted(action.twists.items())},
            "phi": format_matrix(self.phi),
            "psi": {
                group.name(g): {"psi": format_matrix(p.psi),
                                "psi_prime": format_matrix(p.psi_prime)}
                for g, p in sorted(self.module_pairs.items())},
        }  # type: Dict[str, Any]
        return payload


@dataclass
class RejectionReport:
    """
    Why :func:`check_criteria` produced no certificate.

    Parameters
    ----------
    verdict : str
        ``"fail"`` when a necessary condition is violated or a search proved that no
        corner pair exists, ``"undecided"`` when a search ran out of budget or no
        route applies.

    failed_condition : str
        The first failed condition, e.g. ``"condition_i"``.

    reason : str
        Human readable explanation.

    witness : str or None
        The certificate of the failure.

    reports : list of CheckReport
        The checks that ran.

    budget : SearchBudget
        The budgets in effect.
    """

    verdict: str
    failed_condition: str
    reason: str
    witness: Optional[str]
    reports: List[CheckReport] = field(default_factory=list)
    budget: SearchBudget = field(default_factory=SearchBudget)

    def to_payload(self) -> Dict[str, Any]:
        """Return the rejection as JSON compatible data."""
        return {"failed_condition": self.failed_condition, "reason": self.reason,
                "witness": self.witness}


def _stage(verbose: bool, title: str):
    if verbose:
        log_stage(title, file=sys.stderr)


def check_criteria(gb: GradedAlgebra, *, budget: Optional[SearchBudget] = None,
                   route: str = "auto", verbose: bool = False
                   ) -> Union[CriteriaCertificate, RejectionReport]:
    """
    Decide whether ``gb`` is graded isomorphic to a crossed product.

    Parameters
    ----------
    gb : GradedAlgebra
        The grading.

    budget : SearchBudget, optional
        Search limits.  Default: ``SearchBudget()``.

    route : str
        ``"psi"``, ``"uv"`` or ``"auto"`` (``"psi"`` when every ``D_g`` is s-unital,
        ``"uv"`` otherwise).

    verbose : bool
        Print a banner per stage to :data:`python:sys.stderr`.

    Raises
    ------
    ValueError
        If ``route`` is unknown.

    InternalInconsistency
        If a step that holds in theory fails.
    """
    if route not in ROUTES:
        raise ValueError(f"Unknown route '{route}', expected one of {ROUTES}.")
    budget = budget or SearchBudget()
    group = gb.group
    reports = []  # type: List[CheckReport]

    def reject(verdict, condition, reason, witness=None):
        return RejectionReport(verdict, condition, reason, witness, reports, budget)

    _stage(verbose, "Condition (i)")
    condition_i = check_condition_i(gb)
    reports.append(condition_i)
    _stage(verbose, "Homogeneous non-degeneracy")
    nondegenerate = check_homogeneous_nondegeneracy(gb)
    reports.append(nondegenerate)
    if not condition_i.passed:
        failure = condition_i.first_failure()
        reason = f"B_g B_g^-1 B_g != B_g at {failure.name}"
        degenerate = nondegenerate.first_failure()
        if degenerate is not None:
            reason += (f"; homogeneous degeneracy at {degenerate.name} "
                       f"({degenerate.detail}) with witness {degenerate.witness}")
        return reject("fail", "condition_i", reason, failure.witness)

    identities = check_component_identities(gb)
    reports.append(identities)
    if not identities.passed:
        failure = identities.first_failure()
        raise InternalInconsistency(
            f"'{failure.name}' fails at {failure.witness} under condition (i).")

    _stage(verbose, "s-unital domains")
    domains = component_products(gb)
    s_unital = CheckReport("s-unital domains")
    for g in group.elements:
        s_unital.add(f"s_unital[{group.name(g)}]", check_s_unital(domains[g]),
                     vacuous=domains[g].dim == 0)
    reports.append(s_unital)

    chosen = route
    if route == "auto":
        if s_unital.passed:
            chosen = "psi"
        elif nondegenerate.passed:
            chosen = "uv"
        else:
            failure = nondegenerate.first_failure()
            return reject("undecided", "no_route",
                          "domains are not all s-unital and the grading is degenerate",
                          failure.witness)
    elif route == "psi" and not s_unital.passed:
        return reject("undecided", "s_unital",
                      "the module isomorphism route needs s-unital domains",
                      s_unital.first_failure().name)
    elif route == "uv" and not nondegenerate.passed:
        return reject("undecided", "nondegenerate",
                      "the multiplier route needs a non-degenerate grading",
                      nondegenerate.first_failure().witness)

    _stage(verbose, f"Corner pairs ({chosen} route)")
    solutions = CheckReport("corner pairs")
    reports.append(solutions)
    routes, module_pairs, corner_pairs = {}, {}, {}
    for g in group.elements:
        name = f"corner_pair[{group.name(g)}]"
        link = LinkingAlgebra(gb, g)
        if g == group.identity:
            corner_pairs[g] = identity_corner_pair(link)
            routes[g] = "identity"
            solutions.add(name, True, detail="shift pair (e12, e21)")
            continue
        if chosen == "psi":
            pair, result = _search_module_iso_pair(gb, g, budget)
            if pair is not None:
                module_pairs[g] = pair
                corner_pairs[g] = assemble_uv(gb, g, pair, link=link)
            obstruction = None
        else:
            obstruction = dimension_obstruction(link)
            corner_pairs_g, result = _search_uv(gb, g, budget, link)
            if corner_pairs_g is not None:
                corner_pairs[g] = corner_pairs_g
        if g in corner_pairs:
            routes[g] = chosen
            solutions.add(name, True, detail=result.describe())
            if verbose:
                log_check(name, True, detail=result.describe(), file=sys.stderr)
            continue
        if obstruction is not None:
            solutions.add(name, False, witness=group.name(g), detail=obstruction)
            return reject("fail", "corner_pair", obstruction, group.name(g))
        solutions.add(name, False, witness=group.name(g), detail=result.describe())
        if verbose:
            log_check(name, False, detail=result.describe(), file=sys.stderr)
        what = "module isomorphism pair" if chosen == "psi" else "corner pair"
        if result.exhaustive:
            return reject("fail", "corner_pair",
                          f"no {what} exists at {group.name(g)} "
                          f"({result.describe()})", group.name(g))
        return reject("undecided", "budget",
                      f"search budget exhausted at {group.name(g)} "
                      f"({result.describe()})", group.name(g))

    corner_reports = {}
    for g in group.elements:
        corner_reports[g] = check_lemma_uv_properties(corner_pairs[g].link,
                                                      corner_pairs[g])
    summary = CheckReport("corner identities")
    for g in group.elements:
        rep = corner_reports[g]
        summary.add(f"corner_identities[{group.name(g)}]", rep.passed,
                    detail=f"{len(rep.checks)} checks")
        if not rep.passed:
            failure = rep.first_failure()
            raise InternalInconsistency(
                f"Corner pair of {group.name(g)} fails '{failure.name}'.")
    reports.append(summary)

    _stage(verbose, "Reconstruction")
    action, action_report, derived = _reconstruct(gb, corner_pairs)
    reports.extend([action_report, derived])

    _stage(verbose, "Crossed product")
    cp = build_crossed_product(action, require_verified=False)
    phi, phi_report = build_phi(gb, action, corner_pairs, crossed=cp)
    reports.append(phi_report)
    return CriteriaCertificate(gb, routes, module_pairs, corner_pairs, action, cp, phi,
                               reports, corner_reports, budget)


########################################################################################
# Matrix amplification.                                                                #
########################################################################################
def matrix_amplify(gb: GradedAlgebra, n: int) -> GradedAlgebra:
    """
    Return ``M_n(B)`` graded entrywise: ``M_n(B)_g = M_n(B_g)``.

    Basis vector ``(i, j, k)`` is the matrix unit ``E_ij`` times basis vector ``k`` of
    ``B`` and is named ``<name>_r<i>c<j>``.

    Raises
    ------
    ValueError
        If ``n < 1``.

    InternalInconsistency
        If condition (i) or non-degeneracy is not preserved.
    """
    if n < 1:
        raise ValueError(f"Amplification size must be at least 1, got {n}.")
    if n == 1:
        return gb
    alg = gb.ambient
    d = alg.dim
    size = n * n * d
    fld = gb.field

    def index(i: int, j: int, k: int) -> int:
        return (i * n + j) * d + k

    names = [f"{alg.basis_names[k]}_r{i}c{j}"
             for i in range(n) for j in range(n) for k in range(d)]
    table = []
    for i in range(n):
        for j in range(n):
            for k in range(d):
                row = []
                for i2 in range(n):
                    for l in range(n):  # noqa: E741
                        for m in range(d):
                            entries = [fld.zero] * size
                            if j == i2:
                                for c, value in enumerate(alg.table[k][m]):
                                    entries[index(i, l, c)] = value
                            row.append(tuple(entries))
                table.append(row)
    amplified = StructureAlgebra(fld, names, table, check_associativity=False)

    def entrywise(space):
        vectors = []
        for i in range(n):
            for j in range(n):
                for v in space.vectors:
                    entries = [fld.zero] * size
                    entries[index(i, j, 0):index(i, j, 0) + d] = v
                    vectors.append(tuple(entries))
        return span(fld, size, vectors)

    result = GradedAlgebra(gb.group, amplified,
                           tuple(entrywise(c) for c in gb.components))
    for check in (check_condition_i, check_homogeneous_nondegeneracy):
        if check(gb).passed != check(result).passed:
            raise InternalInconsistency(
                f"Amplification changed the outcome of {check.__name__}.")
    return result
