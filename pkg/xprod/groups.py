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
"""Finite groups given by validated Cayley tables."""

import itertools
from dataclasses import dataclass
from typing import Sequence, Tuple

from .errors import NoIdentity, NoInverse, NotAssociative


@dataclass(frozen=True)
class FiniteGroup:
    """
    A finite group on the indices ``0 .. order - 1``; build with :func:`make_group`.

    Parameters
    ----------
    names : tuple of str
        Element labels.

    table : tuple of tuples of int
        ``table[g][h]`` is the index of ``g h``.

    identity : int
        Index of the identity element.

    inverse : tuple of int
        ``inverse[g]`` is the index of ``g^-1``.
    """

    names: Tuple[str, ...]
    table: Tuple[Tuple[int, ...], ...]
    identity: int
    inverse: Tuple[int, ...]

    @property
    def order(self) -> int:
        """The number of elements."""
        return len(self.names)

    @property
    def elements(self) -> range:
        """The element indices, in table order."""
        return range(self.order)

    def mul(self, g: int, h: int) -> int:
        """Return the index of ``g h``."""
        return self.table[g][h]

    def inv(self, g: int) -> int:
        """Return the index of ``g^-1``."""
        return self.inverse[g]

    def name(self, g: int) -> str:
        """Return the label of ``g``."""
        return self.names[g]

    def index(self, name: str) -> int:
        """
        Return the index of the element labelled ``name``.

        Raises
        ------
        KeyError
            If no element has that label.
        """
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"Unknown group element '{name}'.") from None

    def is_abelian(self) -> bool:
        """Whether ``g h = h g`` for all pairs."""
        return all(self.table[g][h] == self.table[h][g]
                   for g in self.elements for h in self.elements)


def make_group(names: Sequence[str], table: Sequence[Sequence[int]]) -> FiniteGroup:
    """
    Validate a Cayley table and build the group.

    Associativity is checked first, then the identity, then inverses.  Together these
    force the table to be a Latin square.

    Parameters
    ----------
    names : sequence of str
        Distinct element labels.

    table : sequence of sequences of int
        Square table of element indices.

    Raises
    ------
    ValueError
        If the table is not square over valid indices or names repeat.

    NotAssociative
        With the first triple ``(g, h, t)`` where ``(gh)t != g(ht)``.

    NoIdentity
        If no element is a two-sided identity.

    NoInverse
        With the first element lacking a two-sided inverse.
    """
    names = tuple(str(n) for n in names)
    n = len(names)
    if n == 0:
        raise ValueError("A group needs at least one element.")
    if len(set(names)) != n:
        raise ValueError(f"Duplicate group element names in {names}.")
    rows = tuple(tuple(int(x) for x in row) for row in table)
    if len(rows) != n or any(len(row) != n for row in rows):
        raise ValueError(f"Group table must be {n}x{n}.")
    if any(not 0 <= x < n for row in rows for x in row):
        raise ValueError("Group table entries must be element indices.")

    for g, h, t in itertools.product(range(n), repeat=3):
        if rows[rows[g][h]][t] != rows[g][rows[h][t]]:
            raise NotAssociative(
                f"({names[g]}{names[h]}){names[t]} != {names[g]}({names[h]}{names[t]})",
                witness=(names[g], names[h], names[t]))

    identity = next((e for e in range(n)
                     if all(rows[e][g] == g and rows[g][e] == g for g in range(n))),
                    None)
    if identity is None:
        raise NoIdentity("Group table has no identity element.")

    inverse = []
    for g in range(n):
        inv = next((h for h in range(n)
                    if rows[g][h] == identity and rows[h][g] == identity), None)
        if inv is None:
            raise NoInverse(f"Element '{names[g]}' has no inverse.", witness=names[g])
        inverse.append(inv)
    return FiniteGroup(names, rows, identity, tuple(inverse))


def cyclic_group(n: int, *, generator: str = "g") -> FiniteGroup:
    """
    Return the cyclic group of order ``n``.

    Elements are named ``1, g, g2, g3, ...`` (``generator`` replaces ``g``).
    """
    if n < 1:
        raise ValueError(f"Cyclic group order must be positive, got {n}.")
    names = ["1"] + [generator if k == 1 else f"{generator}{k}" for k in range(1, n)]
    return make_group(names, [[(i + j) % n for j in range(n)] for i in range(n)])


def klein_four_group() -> FiniteGroup:
    """Return ``Z2 x Z2`` with elements ``1, a, b, c`` where ``c = ab``."""
    # Indices as bit pairs: 1 = 00, a = 01, b = 10, c = 11.
    return make_group(["1", "a", "b", "c"],
                      [[i ^ j for j in range(4)] for i in range(4)])


def direct_product(first: FiniteGroup, second: FiniteGroup) -> FiniteGroup:
    """Return ``first x second`` with elements named ``g_h`` in row-major order."""
    pairs = list(itertools.product(first.elements, second.elements))
    names = [f"{first.name(g)}_{second.name(h)}" for g, h in pairs]
    index = {p: k for k, p in enumerate(pairs)}
    table = [[index[(first.mul(g, g2), second.mul(h, h2))] for g2, h2 in pairs]
             for g, h in pairs]
    return make_group(names, table)
