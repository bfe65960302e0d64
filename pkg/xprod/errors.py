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
Exception hierarchy shared by every :mod:`xprod` module.

Every exception derives from |XprodError| and carries an optional ``witness``: the
basis indices, vectors or group elements that certify the failure.  Errors describing
invalid *input* also derive from :class:`python:ValueError` so that callers validating
user data can catch them uniformly.

.. |XprodError| replace:: :class:`~xprod.errors.XprodError`
"""

from typing import Any, Optional


class XprodError(Exception):
    """
    Base class of all :mod:`xprod` errors.

    Parameters
    ----------
    message : str
        The human readable explanation.

    witness : Any
        Optional certificate of the failure (indices, vectors, group elements).
    """

    def __init__(self, message: str, *, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class DimensionMismatch(XprodError, ValueError):
    """Vectors, matrices or subspaces with incompatible dimensions were combined."""


class MembershipError(XprodError, ValueError):
    """A vector was required to lie in a subspace and does not."""


class AssociativityViolation(XprodError, ValueError):
    """Structure constants fail associativity; ``witness`` is the basis triple."""


class NotAnIdeal(XprodError, ValueError):
    """A subspace is not a two-sided ideal; ``witness`` is ``(side, basis, vector)``."""


class CompatibilityViolation(XprodError, ValueError):
    """A pair ``(R, L)`` fails ``(aR)b = a(Lb)``; ``witness`` is the pair ``(a, b)``."""


class ModuleMapViolation(XprodError, ValueError):
    """``R`` or ``L`` is not a module map; ``witness`` is ``(side, x, a)``."""


class NotIdempotent(XprodError, ValueError):
    """An ideal ``I`` with ``I * I != I`` was used where idempotency is required."""


class GroupError(XprodError, ValueError):
    """Base class for invalid group tables."""


class NotAssociative(GroupError):
    """The table is not associative; ``witness`` is the triple ``(g, h, t)``."""


class NoIdentity(GroupError):
    """No element of the table acts as a two-sided identity."""


class NoInverse(GroupError):
    """Some element has no two-sided inverse; ``witness`` is the element."""


class StructuralError(XprodError, ValueError):
    """Action data is dimensionally inconsistent, e.g. a twist on the wrong ideal."""


class NotDirectSum(XprodError, ValueError):
    """Grading components do not form a direct sum decomposition."""


class NotGraded(XprodError, ValueError):
    """A product of components escapes ``B_gh``; ``witness`` is ``(g, h, vector)``."""


class UnverifiedAction(XprodError):
    """A crossed product was requested for an action that does not verify."""


class PreconditionFailed(XprodError):
    """The hypotheses of a solver route do not hold."""


class InternalInconsistency(XprodError):
    """A property that holds by theory failed to hold: this is always a bug."""


class DslError(XprodError, ValueError):
    """
    Base class for errors reading an xprod document.

    Parameters
    ----------
    message : str
        The explanation, without location.

    line : int
        The 1-based line of the offending token (``0`` when unknown).

    column : int
        The 1-based column of the offending token (``0`` when unknown).

    name : str or None
        The offending name, when the error concerns a name.
    """

    def __init__(self, message: str, *, line: int = 0, column: int = 0,
                 name: Optional[str] = None):
        super().__init__(f"{line}:{column}: {message}", witness=name)
        self.reason = message
        self.line = line
        self.column = column
        self.name = name


class DslSyntaxError(DslError):
    """The text does not follow the document grammar."""


class DslSemanticError(DslError):
    """The text parses but refers to unknown names or has malformed data."""
