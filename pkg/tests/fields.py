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
"""Tests for the :mod:`xprod.fields` module."""

import random
from fractions import Fraction

from xprod.fields import Field, RATIONALS

import pytest

F5 = Field(5)


@pytest.mark.parametrize("characteristic", [-3, 1, 4, 9])
def test_field_rejects_invalid_characteristic(characteristic: int):
    """Validate only ``0`` and primes are accepted."""
    with pytest.raises(ValueError) as excinfo:
        Field(characteristic)
    assert "must be 0 or a prime" in str(excinfo.value)


def test_field_value_semantics():
    """Validate fields compare by characteristic and print canonically."""
    assert Field(5) == F5
    assert Field() == RATIONALS
    assert str(RATIONALS) == "Q"
    assert str(F5) == "F 5"
    assert RATIONALS.is_rational
    assert not F5.is_rational


@pytest.mark.parametrize("fld,text,expected", [
    (RATIONALS, "3", "3"),
    (RATIONALS, "-3/6", "-1/2"),
    (RATIONALS, " 4 / 2 ", "2"),
    (RATIONALS, "0", "0"),
    (F5, "7", "2"),
    (F5, "-1", "4"),
    (F5, "1/2", "3"),
])
def test_parse_format(fld: Field, text: str, expected: str):
    """Validate literals are parsed and formatted in canonical form."""
    assert fld.format(fld.parse(text)) == expected


@pytest.mark.parametrize("fld,text", [
    (RATIONALS, "x"),
    (RATIONALS, "1/0"),
    (RATIONALS, "1.5"),
    (F5, "1/5"),
])
def test_parse_errors(fld: Field, text: str):
    """Validate malformed literals and zero denominators raise."""
    with pytest.raises(ValueError):
        fld.parse(text)


def test_call_conversions():
    """Validate integers, strings and fractions convert into the field."""
    assert F5(7) == F5(2)
    assert F5("3") == F5(3)
    assert F5(Fraction(1, 2)) == F5(3)
    assert RATIONALS(Fraction(2, 4)) == RATIONALS.parse("1/2")
    assert RATIONALS.rational(RATIONALS.parse("-2/6")) == Fraction(-1, 3)
    assert F5.residue(F5(-1)) == 4


def test_vectors():
    """Validate the vector constructors."""
    assert F5.zero_vector(3) == (F5.zero,) * 3
    assert F5.unit_vector(3, 1) == (F5.zero, F5.one, F5.zero)
    assert F5.vector([1, "2", 6]) == (F5(1), F5(2), F5(1))
    assert F5.is_zero(F5(5))


def test_elements():
    """Validate enumeration of prime fields, and its absence for Q."""
    assert [F5.residue(a) for a in F5.elements()] == [0, 1, 2, 3, 4]
    assert [F5.residue(a) for a in F5.nonzero_elements()] == [1, 2, 3, 4]
    with pytest.raises(ValueError) as excinfo:
        list(RATIONALS.elements())
    assert "Cannot enumerate" in str(excinfo.value)


def test_random_element():
    """Validate random elements are reproducible and bounded over Q."""
    first = [F5.random_element(random.Random(3)) for _ in range(5)]
    second = [F5.random_element(random.Random(3)) for _ in range(5)]
    assert first == second
    rng = random.Random(11)
    for _ in range(50):
        value = RATIONALS.rational(RATIONALS.random_element(rng, box=2))
        assert value.denominator == 1
        assert -2 <= value <= 2
