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
"""Tests for the :mod:`xprod.parsers.utils` module."""

from xprod.fields import Field
from xprod.parsers.utils import env_or_default, parse_field
from xprod.utils import set_env, unset_env

import pytest


@unset_env("XPROD_SEED")
def test_env_or_default():
    """
    Validate |env_or_default| prefers the environment.

    .. |env_or_default| replace:: :func:`~xprod.parsers.utils.env_or_default`
    """
    assert env_or_default(env="XPROD_SEED", default="0") == "0"
    with set_env(XPROD_SEED="42"):
        assert env_or_default(env="XPROD_SEED", default="0") == "42"
    with set_env(XPROD_SEED=""):
        assert env_or_default(env="XPROD_SEED", default="0") == ""


@pytest.mark.parametrize("text,characteristic", [
    ("Q", 0), (" Q ", 0), ("F5", 5), ("F 5", 5), ("F_7", 7), ("11", 11), ("F 2", 2)
])
def test_parse_field(text: str, characteristic: int):
    """Validate the accepted field spellings."""
    assert parse_field(text) == Field(characteristic)


def test_parse_field_errors():
    """Validate bad field names are rejected."""
    for text in ("R", "F", "Fp", "", "Q5"):
        with pytest.raises(ValueError) as excinfo:
            parse_field(text)
        assert str(excinfo.value) == f"Invalid field '{text}', expected Q or F<prime>."

    for text, p in (("F4", 4), ("1", 1), ("F 9", 9)):
        with pytest.raises(ValueError) as excinfo:
            parse_field(text)
        assert str(excinfo.value) == \
            f"Field characteristic must be 0 or a prime, got {p}."
