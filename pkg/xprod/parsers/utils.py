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
Helper routines for :mod:`xprod.parsers`.

In a nested module to avoid any circular import problems.
"""
import os
import re

from ..fields import Field


def env_or_default(*, env: str, default: str) -> str:
    """
    Return the environment variable ``env`` if it is set, otherwise ``default``.

    Example::

        env_or_default(env="XPROD_SEED", default="0")

    Parameters
    ----------
    env : str
        The environment variable to check for first.

    default : str
        Returned if ``env`` is not set.
    """
    val = os.getenv(env, None)
    if val is not None:
        return val
    return default


_FIELD = re.compile(r"\s*(?:Q|F\s*_?\s*(\d+)|(\d+))\s*")


def parse_field(text: str) -> Field:
    """
    Convert ``"Q"``, ``"F5"``, ``"F 5"`` or ``"5"`` into a |Field|.

    .. |Field| replace:: :class:`~xprod.fields.Field`

    Raises
    ------
    ValueError
        If ``text`` names no field or the characteristic is not prime.
    """
    match = _FIELD.fullmatch(text)
    if match is None:
        raise ValueError(f"Invalid field '{text}', expected Q or F<prime>.")
    digits = match.group(1) or match.group(2)
    return Field(int(digits) if digits else 0)
