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
Exact base fields: the rationals and prime fields.

Elements are the ground domain elements of :mod:`sympy` (``QQ`` and ``GF(p)``), so
fractions are always reduced with a positive denominator and residues always reduced
modulo ``p``.  A |Field| is a small value object; two fields compare equal exactly when
they have the same characteristic.

.. |Field| replace:: :class:`~xprod.fields.Field`
"""

import functools
import itertools
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator, Sequence, Tuple, Union

from sympy import GF, QQ, isprime

Element = Any
"""A ground domain element of a |Field| (``QQ`` or ``GF(p)`` dtype)."""

Vector = Tuple[Element, ...]
"""Coordinates of a vector, always a tuple of field elements."""

_LITERAL = re.compile(r"^\s*(-?)\s*(\d+)\s*(?:/\s*(\d+))?\s*$")


@functools.lru_cache(maxsize=None)
def _ground_domain(characteristic: int):
    if characteristic == 0:
        return QQ
    return GF(characteristic, symmetric=False)


@dataclass(frozen=True)
class Field:
    """
    The field of rationals (``characteristic == 0``) or ``F_p`` for a prime ``p``.

    Parameters
    ----------
    characteristic : int
        ``0`` for the rationals, otherwise a prime.

    Raises
    ------
    ValueError
        If ``characteristic`` is negative, ``1`` or composite.
    """

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and (p < 0 or not isprime(p)):
            raise ValueError(f"Field characteristic must be 0 or a prime, got {p}.")

    def __str__(self) -> str:
        return "Q" if self.characteristic == 0 else f"F {self.characteristic}"

    @property
    def domain(self):
        """The underlying :mod:`sympy` ground domain."""
        return _ground_domain(self.characteristic)

    @property
    def is_rational(self) -> bool:
        """Whether this is the field of rationals."""
        return self.characteristic == 0

    @property
    def zero(self) -> Element:
        """The additive identity."""
        return self.domain.zero

    @property
    def one(self) -> Element:
        """The multiplicative identity."""
        return self.domain.one

    def __call__(self, value: Union[int, str, Fraction, Element]) -> Element:
        """
        Convert ``value`` into an element of this field.

        Integers are reduced modulo ``p`` in a prime field.  Strings are parsed with
        :func:`parse`.  Fractions are only accepted by prime fields when the
        denominator is invertible.
        """
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, Fraction):
            return self.domain(value.numerator) / self.domain(value.denominator)
        if isinstance(value, int):
            return self.domain(value)
        return self.domain.convert(value)

    def parse(self, text: str) -> Element:
        """
        Parse an integer or ``p/q`` literal.

        Raises
        ------
        ValueError
            If ``text`` is not a literal, or has a zero denominator.
        """
        match = _LITERAL.match(text)
        if match is None:
            raise ValueError(f"Invalid field literal '{text}'.")
        sign, numerator, denominator = match.groups()
        value = self.domain(int(numerator))
        if denominator is not None:
            den = self.domain(int(denominator))
            if den == self.zero:
                raise ValueError(f"Zero denominator in literal '{text}' over {self}.")
            value = value / den
        return -value if sign else value

    def format(self, value: Element) -> str:
        """Return the canonical literal of ``value`` (``n``, ``-n`` or ``n/d``)."""
        if self.is_rational:
            numerator, denominator = int(value.numerator), int(value.denominator)
            if denominator == 1:
                return str(numerator)
            return f"{numerator}/{denominator}"
        return str(self.residue(value))

    def residue(self, value: Element) -> int:
        """Return the representative in ``[0, p)`` of a prime field element."""
        return int(self.domain.to_int(value)) % self.characteristic

    def rational(self, value: Element) -> Fraction:
        """Return a rational element as a :class:`python:fractions.Fraction`."""
        return Fraction(int(value.numerator), int(value.denominator))

    def is_zero(self, value: Element) -> bool:
        """Whether ``value`` is zero."""
        return value == self.zero

    def zero_vector(self, n: int) -> Vector:
        """Return the zero vector of length ``n``."""
        return (self.zero,) * n

    def unit_vector(self, n: int, i: int) -> Vector:
        """Return the ``i``-th standard basis vector of length ``n``."""
        return tuple(self.one if k == i else self.zero for k in range(n))

    def vector(self, values: Sequence[Union[int, str, Fraction, Element]]) -> Vector:
        """Convert a sequence of values into a vector."""
        return tuple(self(v) for v in values)

    def random_element(self, rng: random.Random, box: int = 1) -> Element:
        """
        Return a random element.

        Over a prime field the element is uniform, over the rationals it is an integer
        in ``[-box, box]``.
        """
        if self.is_rational:
            return self.domain(rng.randint(-box, box))
        return self.domain(rng.randrange(self.characteristic))

    def elements(self) -> Iterator[Element]:
        """
        Iterate over all elements of a prime field, zero first.

        Raises
        ------
        ValueError
            For the rationals.
        """
        if self.is_rational:
            raise ValueError("Cannot enumerate the elements of Q.")
        return (self.domain(k) for k in range(self.characteristic))

    def nonzero_elements(self) -> Iterator[Element]:
        """Iterate over the nonzero elements of a prime field."""
        return itertools.islice(self.elements(), 1, None)


RATIONALS = Field(0)
"""The field ``Q``."""
