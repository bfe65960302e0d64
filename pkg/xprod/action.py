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
Twisted partial actions of a finite group on a |StructureAlgebra| and their verifiers.

A twisted partial action ``Θ = ({D_g}, {θ_g}, {w_g,h})`` consists of

- an ideal ``D_g`` of the algebra ``A`` for every group element ``g``;
- an isomorphism ``θ_g: D_g^-1 -> D_g`` stored as the matrix between the canonical
  bases of the two ideals;
- an invertible multiplier ``w_g,h`` of the ideal ``D_g D_gh``.

Every postulate is multilinear, so :func:`verify_action` checks each one on basis
vectors only.  A postulate whose quantified subspace is zero passes *vacuously*, which
the report flags.

.. |StructureAlgebra| replace:: :class:`~xprod.algebra.StructureAlgebra`
"""

from typing import Callable, Dict, List, Mapping, Optional, Tuple

from .algebra import Ideal, StructureAlgebra, change_basis, make_ideal, \
    subspace_product, triple_product
from .errors import InternalInconsistency, StructuralError, XprodError
from .fields import Vector
from .groups import FiniteGroup
from .linalg import Matrix, SubspaceBasis, matrix_of, span
from .multipliers import Multiplier, identity_multiplier, mult_invert, \
    validate_multiplier
from .report import CheckReport, format_expression


class TwistedPartialAction:
    """
    The data ``({D_g}, {θ_g}, {w_g,h})`` of a twisted partial action.

    Construction only validates the *shape* of the data; whether the postulates hold is
    decided by :func:`verify_action`.

    Parameters
    ----------
    group : FiniteGroup
        The acting group ``G``.

    ambient : StructureAlgebra
        The algebra ``A`` acted upon.

    domains : mapping of int to Ideal
        ``D_g`` for every element index ``g``.

    isos : mapping of int to Matrix
        ``θ_g`` as a ``dim D_g^-1 x dim D_g`` matrix.  May be omitted for the identity
        (defaults to the identity matrix) and for elements with zero domains.

    twists : mapping of (int, int) to Multiplier, optional
        ``w_g,h`` carried on ``D_g D_gh``.  Missing pairs default to the identity
        multiplier.

    Raises
    ------
    StructuralError
        If a domain or ``θ_g`` is missing, lives in another algebra or has the wrong
        shape, or a twist is carried on the wrong ideal.
    """

    def __init__(self, group: FiniteGroup, ambient: StructureAlgebra,
                 domains: Mapping[int, Ideal], isos: Mapping[int, Matrix],
                 twists: Optional[Mapping[Tuple[int, int], Multiplier]] = None):
        self.group = group
        self.ambient = ambient
        self.field = ambient.field
        self._products = {}  # type: Dict[Tuple[int, int], SubspaceBasis]
        self._theta_inverse = {}  # type: Dict[int, Optional[Matrix]]
        self._twist_inverse = {}  # type: Dict[Tuple[int, int], Optional[Multiplier]]

        domain_list = []
        for g in group.elements:
            if g not in domains:
                raise StructuralError(f"Missing domain for element '{group.name(g)}'.")
            d = domains[g]
            if d.ambient is not ambient:
                raise StructuralError(
                    f"Domain of '{group.name(g)}' is an ideal of another algebra.")
            domain_list.append(d)
        self.domains = tuple(domain_list)

        iso_list = []
        for g in group.elements:
            rows, cols = self.domains[group.inv(g)].dim, self.domains[g].dim
            m = isos.get(g)
            if m is None:
                if g == group.identity:
                    m = Matrix.identity(self.field, cols)
                elif rows == 0 and cols == 0:
                    m = Matrix.zeros(self.field, 0, 0)
                else:
                    raise StructuralError(
                        f"Missing theta for element '{group.name(g)}'.")
            if m.shape != (rows, cols):
                raise StructuralError(
                    f"theta of '{group.name(g)}' must be {rows}x{cols}, got "
                    f"{m.rows}x{m.cols}.", witness=group.name(g))
            iso_list.append(m)
        self.isos = tuple(iso_list)

        twists = twists or {}
        unknown = [pair for pair in twists
                   if any(x not in group.elements for x in pair)]
        if unknown:
            raise StructuralError(f"Twists given for unknown element pairs {unknown}.")
        self.twists = {}  # type: Dict[Tuple[int, int], Multiplier]
        for g in group.elements:
            for h in group.elements:
                carrier = self.carrier_space(g, h)
                w = twists.get((g, h))
                if w is None:
                    w = identity_multiplier(Ideal(ambient, carrier))
                elif w.ideal.ambient is not ambient or w.ideal.space != carrier:
                    names = (group.name(g), group.name(h))
                    raise StructuralError(
                        f"Twist of {names} must be carried on D_g D_gh "
                        f"(dimension {carrier.dim}).", witness=names)
                self.twists[(g, h)] = w

    def __repr__(self) -> str:
        return (f"TwistedPartialAction(order={self.group.order}, "
                f"dim={self.ambient.dim}, field={self.field})")

    def domain(self, g: int) -> Ideal:
        """Return ``D_g``."""
        return self.domains[g]

    def iso(self, g: int) -> Matrix:
        """Return the matrix of ``θ_g``."""
        return self.isos[g]

    def twist(self, g: int, h: int) -> Multiplier:
        """Return ``w_g,h``."""
        return self.twists[(g, h)]

    def domain_product(self, g: int, h: int) -> SubspaceBasis:
        """Return the subspace ``D_g D_h`` (memoized)."""
        key = (g, h)
        if key not in self._products:
            self._products[key] = subspace_product(
                self.ambient, self.domains[g].space, self.domains[h].space)
        return self._products[key]

    def carrier_space(self, g: int, h: int) -> SubspaceBasis:
        """Return ``D_g D_gh``, the carrier of ``w_g,h``."""
        return self.domain_product(g, self.group.mul(g, h))

    def theta_inverse_matrix(self, g: int) -> Optional[Matrix]:
        """Return the matrix of ``θ_g^-1`` or ``None`` when ``θ_g`` is singular."""
        if g not in self._theta_inverse:
            self._theta_inverse[g] = self.isos[g].inverse()
        return self._theta_inverse[g]

    def twist_inverse(self, g: int, h: int) -> Optional[Multiplier]:
        """Return ``w_g,h^-1`` or ``None`` when the twist is not invertible."""
        key = (g, h)
        if key not in self._twist_inverse:
            self._twist_inverse[key] = mult_invert(self.twists[key])
        return self._twist_inverse[key]

    def names(self, *elements: int) -> str:
        """Render group elements as ``(g, h, ...)``."""
        return "(" + ", ".join(self.group.name(g) for g in elements) + ")"

    def describe(self, v: Vector) -> str:
        """Render an algebra vector as a linear expression in the basis names."""
        return format_expression(self.field, self.ambient.basis_names, v)


def apply_theta(action: TwistedPartialAction, g: int, a: Vector) -> Vector:
    """
    Return ``θ_g(a)``.

    Raises
    ------
    MembershipError
        If ``a`` is not in ``D_g^-1``.
    """
    source = action.domain(action.group.inv(g))
    coords = source.coordinates(a, what=f"domain of {action.group.name(g)}^-1")
    return action.domain(g).combine(action.iso(g).apply(coords))


def apply_theta_inverse(action: TwistedPartialAction, g: int, a: Vector) -> Vector:
    """
    Return ``θ_g^-1(a)`` for ``a`` in ``D_g``.

    Raises
    ------
    MembershipError
        If ``a`` is not in ``D_g``.

    StructuralError
        If ``θ_g`` is not invertible.
    """
    inverse = action.theta_inverse_matrix(g)
    if inverse is None:
        raise StructuralError(f"theta of '{action.group.name(g)}' is not invertible.",
                              witness=action.group.name(g))
    coords = action.domain(g).coordinates(a, what=f"domain of {action.group.name(g)}")
    return action.domain(action.group.inv(g)).combine(inverse.apply(coords))


def apply_twist(action: TwistedPartialAction, g: int, h: int, side: str,
                x: Vector) -> Vector:
    """
    Return ``x w_g,h`` (``side="right"``) or ``w_g,h x`` (``side="left"``).

    Raises
    ------
    MembershipError
        If ``x`` is not in ``D_g D_gh``.
    """
    return action.twist(g, h).act(side, x)


def apply_twist_inverse(action: TwistedPartialAction, g: int, h: int, side: str,
                        x: Vector) -> Vector:
    """
    Like :func:`apply_twist` with ``w_g,h^-1``.

    Raises
    ------
    StructuralError
        If ``w_g,h`` is not invertible.
    """
    inverse = action.twist_inverse(g, h)
    if inverse is None:
        raise StructuralError(f"Twist {action.names(g, h)} is not invertible.")
    return inverse.act(side, x)


class _Tally:
    """Accumulates the instances of one check before it is added to a report."""

    def __init__(self, name: str):
        self.name = name
        self.instances = 0
        self.vacuous_instances = 0
        self.witness = None  # type: Optional[str]
        self.vacuous_witness = None  # type: Optional[str]
        self.detail = ""

    def ok(self):
        self.instances += 1

    def vacuous(self, witness: str):
        self.vacuous_instances += 1
        if self.vacuous_witness is None:
            self.vacuous_witness = witness

    def fail(self, witness: str, detail: str):
        self.instances += 1
        if self.witness is None:
            self.witness, self.detail = witness, detail

    def run(self, witness: str, body: Callable[[], Optional[str]]):
        """Run one instance; ``body`` returns a failure detail or ``None``."""
        try:
            problem = body()
        except XprodError as err:
            problem = str(err)
        if problem is None:
            self.ok()
        else:
            self.fail(witness, problem)

    def record(self, report: CheckReport):
        if self.witness is not None:
            report.add(self.name, False, witness=self.witness, detail=self.detail)
        elif self.instances == 0 and self.vacuous_instances:
            report.add(self.name, True, vacuous=True, witness=self.vacuous_witness,
                       detail="every instance is over a zero subspace")
        else:
            detail = f"{self.instances} instances"
            if self.vacuous_instances:
                detail += f", {self.vacuous_instances} vacuous"
            report.add(self.name, True, detail=detail)


def _first_mismatch(vectors: List[Vector], lhs: Callable[[Vector], Vector],
                    rhs: Callable[[Vector], Vector]) -> Optional[Vector]:
    for a in vectors:
        if lhs(a) != rhs(a):
            return a
    return None


def _check_theta_isomorphism(action: TwistedPartialAction, tally: _Tally):
    alg, group = action.ambient, action.group
    for g in group.elements:
        source = action.domain(group.inv(g))
        if source.dim == 0 and action.domain(g).dim == 0:
            tally.vacuous(action.names(g))
            continue

        def body(g=g, source=source):
            if not action.iso(g).is_invertible():
                return (f"theta is not bijective "
                        f"({source.dim} -> {action.domain(g).dim})")
            for a in source.vectors:
                for b in source.vectors:
                    lhs = apply_theta(action, g, alg.multiply(a, b))
                    rhs = alg.multiply(apply_theta(action, g, a),
                                       apply_theta(action, g, b))
                    if lhs != rhs:
                        return (f"theta(ab) != theta(a)theta(b) for a = "
                                f"{action.describe(a)}, b = {action.describe(b)}")
            return None

        tally.run(action.names(g), body)


def _check_domains(action: TwistedPartialAction, tally: _Tally):
    group = action.group
    for g in group.elements:
        tally.run(action.names(g), lambda g=g: None
                  if action.domain_product(g, g) == action.domain(g).space
                  else "D_g D_g != D_g")
    for g in group.elements:
        for h in group.elements:
            if h <= g:
                continue
            tally.run(action.names(g, h), lambda g=g, h=h: None
                      if action.domain_product(g, h) == action.domain_product(h, g)
                      else "D_g D_h != D_h D_g")


def _check_unit(action: TwistedPartialAction, tally: _Tally):
    e = action.group.identity

    def body():
        if not action.domain(e).space.is_full():
            return "the domain of the identity is not the whole algebra"
        if action.iso(e) != Matrix.identity(action.field, action.ambient.dim):
            return "theta of the identity is not the identity map"
        return None

    tally.run(action.names(e), body)


def _check_theta_products(action: TwistedPartialAction, tally: _Tally):
    group = action.group
    for g in group.elements:
        for h in group.elements:
            source = action.domain_product(group.inv(g), h)
            target = action.domain_product(g, group.mul(g, h))

            def body(g=g, source=source, target=target):
                image = span(action.field, action.ambient.dim,
                             (apply_theta(action, g, x) for x in source.vectors))
                if image != target:
                    return (f"theta(D_g^-1 D_h) has dimension {image.dim}, "
                            f"D_g D_gh has dimension {target.dim}")
                return None

            tally.run(action.names(g, h), body)


def _check_twist_validity(action: TwistedPartialAction, valid: _Tally,
                          invertible: _Tally):
    group = action.group
    for g in group.elements:
        for h in group.elements:
            w = action.twist(g, h)
            if w.ideal.dim == 0:
                valid.vacuous(action.names(g, h))
                invertible.vacuous(action.names(g, h))
                continue
            violation = validate_multiplier(w)
            if violation is None:
                valid.ok()
            else:
                valid.fail(action.names(g, h), f"{violation[0]} violation at "
                                               f"{violation[1]}")
            if action.twist_inverse(g, h) is None:
                invertible.fail(action.names(g, h), "a twist matrix is singular")
            else:
                invertible.ok()


def _check_composition(action: TwistedPartialAction, tally: _Tally):
    group = action.group
    for g in group.elements:
        for h in group.elements:
            gh = group.mul(g, h)
            basis = action.domain_product(group.inv(h), group.inv(gh))
            if basis.is_zero():
                tally.vacuous(action.names(g, h))
                continue

            def body(g=g, h=h, gh=gh, basis=basis):
                w = action.twist(g, h)
                w_inv = action.twist_inverse(g, h)
                if w_inv is None:
                    return "the twist is not invertible"
                for a in basis.vectors:
                    lhs = apply_theta(action, g, apply_theta(action, h, a))
                    x = apply_theta(action, gh, a)
                    first = w_inv.right(w.left(x))
                    second = w.left(w_inv.right(x))
                    if first != second:
                        return ("bracketings of w x w^-1 disagree for a = "
                                f"{action.describe(a)}")
                    if lhs != first:
                        return (f"theta_g theta_h(a) != w theta_gh(a) w^-1 for a = "
                                f"{action.describe(a)}")
                return None

            tally.run(action.names(g, h), body)


def _check_normalized(action: TwistedPartialAction, tally: _Tally):
    e = action.group.identity
    for g in action.group.elements:
        tally.run(action.names(g), lambda g=g: None
                  if action.twist(e, g).is_identity()
                  and action.twist(g, e).is_identity()
                  else "w_1,g or w_g,1 is not the identity")


def _check_cocycle(action: TwistedPartialAction, tally: _Tally):
    group, alg = action.group, action.ambient
    for g in group.elements:
        for h in group.elements:
            for t in group.elements:
                ht, gh = group.mul(h, t), group.mul(g, h)
                basis = triple_product(alg, action.domain(group.inv(g)).space,
                                       action.domain(h).space, action.domain(ht).space)
                if basis.is_zero():
                    tally.vacuous(action.names(g, h, t))
                    continue

                def body(g=g, h=h, t=t, ht=ht, gh=gh, basis=basis):
                    for a in basis.vectors:
                        lhs = action.twist(g, ht).right(
                            apply_theta(action, g, action.twist(h, t).right(a)))
                        rhs = action.twist(gh, t).right(
                            action.twist(g, h).right(apply_theta(action, g, a)))
                        if lhs != rhs:
                            return (f"theta_g(a w_h,t) w_g,ht != theta_g(a) w_g,h "
                                    f"w_gh,t for a = {action.describe(a)}")
                    return None

                tally.run(action.names(g, h, t), body)


def verify_action(action: TwistedPartialAction) -> CheckReport:
    """
    Check every postulate of a twisted partial action.

    The checks, in order:

    ``theta_isomorphism``
        Each ``θ_g`` is a bijective algebra map ``D_g^-1 -> D_g``.

    ``idempotent_commuting_domains``
        ``D_g D_g = D_g`` and ``D_g D_h = D_h D_g``.

    ``unit_domain_identity_theta``
        ``D_1 = A`` and ``θ_1`` is the identity.

    ``theta_maps_domain_products``
        ``θ_g(D_g^-1 D_h) = D_g D_gh``.

    ``twist_multiplier`` / ``twist_invertible``
        Each ``w_g,h`` is a valid, invertible multiplier of ``D_g D_gh``.

    ``theta_composition_twisted``
        ``θ_g θ_h(a) = w_g,h θ_gh(a) w_g,h^-1`` on ``D_h^-1 D_h^-1g^-1``; both
        bracketings of the right hand side are computed and compared.

    ``twist_normalized``
        ``w_1,g = w_g,1 = 1``.

    ``twist_cocycle``
        ``θ_g(a w_h,t) w_g,ht = θ_g(a) w_g,h w_gh,t`` on ``D_g^-1 D_h D_ht``.

    Returns
    -------
    CheckReport
        One check per postulate, each failure with a witness.
    """
    report = CheckReport("twisted partial action")
    names = ["theta_isomorphism", "idempotent_commuting_domains",
             "unit_domain_identity_theta", "theta_maps_domain_products",
             "twist_multiplier", "twist_invertible", "theta_composition_twisted",
             "twist_normalized", "twist_cocycle"]
    tallies = {name: _Tally(name) for name in names}
    _check_theta_isomorphism(action, tallies["theta_isomorphism"])
    _check_domains(action, tallies["idempotent_commuting_domains"])
    _check_unit(action, tallies["unit_domain_identity_theta"])
    _check_theta_products(action, tallies["theta_maps_domain_products"])
    _check_twist_validity(action, tallies["twist_multiplier"],
                          tallies["twist_invertible"])
    _check_composition(action, tallies["theta_composition_twisted"])
    _check_normalized(action, tallies["twist_normalized"])
    _check_cocycle(action, tallies["twist_cocycle"])
    for name in names:
        tallies[name].record(report)
    return report


########################################################################################
# Identities implied by the postulates.                                                #
########################################################################################
def _twist_map(action: TwistedPartialAction, g: int, h: int, side: str,
               inverse: bool) -> Callable[[Vector], Vector]:
    if inverse:
        return lambda x: apply_twist_inverse(action, g, h, side, x)
    return lambda x: apply_twist(action, g, h, side, x)


def _twist_identity(action: TwistedPartialAction, tally: _Tally, *, invert_theta: bool,
                    side: str, inverse_twist: bool):
    # f(a w_in) = f(a) w_out (or the left handed version) with f = theta_g or its
    # inverse; the twists are those of (g^-1, g) and (g, g^-1).
    group = action.group
    for g in group.elements:
        gi = group.inv(g)
        if invert_theta:
            source = action.domain(g)
            f = lambda a, g=g: apply_theta_inverse(action, g, a)  # noqa: E731
            w_in = _twist_map(action, g, gi, side, inverse_twist)
            w_out = _twist_map(action, gi, g, side, inverse_twist)
        else:
            source = action.domain(gi)
            f = lambda a, g=g: apply_theta(action, g, a)  # noqa: E731
            w_in = _twist_map(action, gi, g, side, inverse_twist)
            w_out = _twist_map(action, g, gi, side, inverse_twist)
        if source.dim == 0:
            tally.vacuous(action.names(g))
            continue

        def body(source=source, f=f, w_in=w_in, w_out=w_out):
            bad = _first_mismatch(source.vectors, lambda a: f(w_in(a)),
                                  lambda a: w_out(f(a)))
            return None if bad is None else f"fails for a = {action.describe(bad)}"

        tally.run(action.names(g), body)


def _check_inverse_by_conjugation(action: TwistedPartialAction, tally: _Tally):
    group = action.group
    for g in group.elements:
        gi = group.inv(g)
        if action.domain(g).dim == 0:
            tally.vacuous(action.names(g))
            continue

        def body(g=g, gi=gi):
            bad = _first_mismatch(
                action.domain(g).vectors,
                lambda a: apply_theta_inverse(action, g, a),
                lambda a: apply_twist(action, gi, g, "right", apply_twist_inverse(
                    action, gi, g, "left", apply_theta(action, gi, a))))
            return None if bad is None else f"fails for a = {action.describe(bad)}"

        tally.run(action.names(g), body)


def _check_inverse_products(action: TwistedPartialAction, tally: _Tally):
    group = action.group
    for g in group.elements:
        gi = group.inv(g)
        for h in group.elements:
            source = action.domain_product(g, h)
            target = action.domain_product(gi, group.mul(gi, h))

            def body(g=g, source=source, target=target):
                image = span(action.field, action.ambient.dim,
                             (apply_theta_inverse(action, g, x)
                              for x in source.vectors))
                return None if image == target else \
                    f"image of dimension {image.dim}, expected {target.dim}"

            tally.run(action.names(g, h), body)


def _check_conjugation(action: TwistedPartialAction, tally: _Tally):
    group = action.group
    for g in group.elements:
        gi = group.inv(g)
        if action.domain(g).dim == 0:
            tally.vacuous(action.names(g))
            continue

        def body(g=g, gi=gi):
            bad = _first_mismatch(
                action.domain(g).vectors,
                lambda x: apply_theta(action, g, apply_theta(action, gi, x)),
                lambda x: apply_twist_inverse(action, g, gi, "right",
                                              apply_twist(action, g, gi, "left", x)))
            return None if bad is None else f"fails for x = {action.describe(bad)}"

        tally.run(action.names(g), body)


_DERIVED = [
    # name, invert theta, side, inverse twist
    ("theta_right_twist", False, "right", False),
    ("theta_right_twist_inverse", False, "right", True),
    ("theta_inverse_right_twist", True, "right", False),
    ("theta_inverse_right_twist_inverse", True, "right", True),
    ("theta_left_twist", False, "left", False),
    ("theta_left_twist_inverse", False, "left", True),
    ("theta_inverse_left_twist", True, "left", False),
    ("theta_inverse_left_twist_inverse", True, "left", True),
]


def check_derived_identities(action: TwistedPartialAction, *,
                             strict: bool = False) -> CheckReport:
    """
    Check the identities every twisted partial action satisfies.

    With ``w = w_g^-1,g`` and ``w' = w_g,g^-1``:

    - ``θ_g(a w) = θ_g(a) w'`` and ``θ_g(w a) = w' θ_g(a)`` for ``a`` in ``D_g^-1``,
      and the same with ``w^-1``, ``w'^-1`` (four checks ``theta_*``);
    - ``θ_g^-1(a w') = θ_g^-1(a) w`` and ``θ_g^-1(w' a) = w θ_g^-1(a)`` for ``a`` in
      ``D_g``, and the same with inverses (four checks ``theta_inverse_*``);
    - ``theta_inverse_by_conjugation``: ``θ_g^-1(a) = w^-1 θ_g^-1(a) w``;
    - ``theta_inverse_maps_domain_products``: ``θ_g^-1(D_g D_h) = D_g^-1 D_g^-1h``;
    - ``theta_composition_conjugates``: ``θ_g θ_g^-1(x) = w' x w'^-1`` on ``D_g``.

    The action must already pass :func:`verify_action`; a failure here means an
    implementation bug.

    Parameters
    ----------
    action : TwistedPartialAction
        A verified action.

    strict : bool
        Raise instead of reporting.  Default: ``False``.

    Raises
    ------
    InternalInconsistency
        When ``strict`` and an identity fails.
    """
    report = CheckReport("derived identities")
    for name, invert_theta, side, inverse_twist in _DERIVED:
        tally = _Tally(name)
        _twist_identity(action, tally, invert_theta=invert_theta, side=side,
                        inverse_twist=inverse_twist)
        tally.record(report)
    extra = [("theta_inverse_by_conjugation", _check_inverse_by_conjugation),
             ("theta_inverse_maps_domain_products", _check_inverse_products),
             ("theta_composition_conjugates", _check_conjugation)]
    for name, checker in extra:
        tally = _Tally(name)
        checker(action, tally)
        tally.record(report)
    failure = report.first_failure()
    if strict and failure is not None:
        raise InternalInconsistency(
            f"Derived identity '{failure.name}' fails at {failure.witness}: "
            f"{failure.detail}", witness=failure.witness)
    return report


def transport_action(action: TwistedPartialAction, p: Matrix) -> TwistedPartialAction:
    """
    Rewrite ``action`` in the basis of ``A`` given by the rows of ``p``.

    See :func:`~xprod.algebra.change_basis` for the convention.  The transported action
    verifies exactly when the original one does.
    """
    new_alg = change_basis(action.ambient, p)
    p_inv = p.inverse()
    assert p_inv is not None  # change_basis already rejected singular matrices

    def to_new(x: Vector) -> Vector:
        return p_inv.apply(x)

    def to_old(y: Vector) -> Vector:
        return p.apply(y)

    group = action.group
    domains = {g: make_ideal(new_alg, new_alg.span(to_new(x) for x in d.vectors))
               for g, d in enumerate(action.domains)}
    isos = {}
    for g in group.elements:
        source = domains[group.inv(g)]
        isos[g] = matrix_of([to_new(apply_theta(action, g, to_old(y)))
                             for y in source.vectors], domains[g].space)
    twists = {}
    for (g, h), w in action.twists.items():
        carrier = Ideal(new_alg, subspace_product(new_alg, domains[g].space,
                                                  domains[group.mul(g, h)].space))
        r = matrix_of([to_new(w.right(to_old(y))) for y in carrier.vectors],
                      carrier.space)
        l = matrix_of(  # noqa: E741
            [to_new(w.left(to_old(y))) for y in carrier.vectors], carrier.space)
        twists[(g, h)] = Multiplier(carrier, r, l)
    return TwistedPartialAction(group, new_alg, domains, isos, twists)
