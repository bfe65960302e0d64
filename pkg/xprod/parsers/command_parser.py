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
"""Module for the ``xprod`` command line argument parser |XprodParser|."""

import argparse
import sys
from typing import NoReturn

from .utils import env_or_default, parse_field
from ..core import ExitCode, fail
from ..criteria import ROUTES, SearchBudget

COMMANDS = ("verify-action", "build-crossed", "check-grading", "check-criteria",
            "amplify", "identities")
"""The subcommands understood by ``xprod``, in help order."""

FORMATS = ("human", "json")
"""The report formats."""


class XprodParser(argparse.ArgumentParser):
    """
    The ``xprod`` argument parser.

    Besides the positional ``command`` and ``input`` the parser registers the search
    and output flags every command shares, and folds the search flags into a
    :class:`~xprod.criteria.SearchBudget` after parsing::

        from xprod.parsers import XprodParser

        parser = XprodParser(description="Check a graded algebra")
        args = parser.parse_args(["check-criteria", "m2.xp", "--seed", "3"])
        args.budget        # SearchBudget(seed=3, trials=200, ...)
        args.field_value   # None, or the Field given by --field

    **Arguments**

    +-------------------+-----------------+-------------------------+------------------+
    | Flag              | Dest            | Default                 | Environment      |
    +===================+=================+=========================+==================+
    | ``--name``        | ``name``        | ``None``                |                  |
    +-------------------+-----------------+-------------------------+------------------+
    | ``--field``       | ``field``       | ``None``                |                  |
    +-------------------+-----------------+-------------------------+------------------+
    | ``--seed``        | ``seed``        | ``0``                   | ``XPROD_SEED``   |
    +-------------------+-----------------+-------------------------+------------------+
    | ``--trials``      | ``trials``      | ``200``                 | ``XPROD_TRIALS`` |
    +-------------------+-----------------+-------------------------+------------------+
    | ``--enum-budget`` | ``enum_budget`` | ``1000000``             | ``XPROD_ENUM_    |
    |                   |                 |                         | BUDGET``         |
    +-------------------+-----------------+-------------------------+------------------+
    | ``--route``       | ``route``       | ``auto``                | ``XPROD_ROUTE``  |
    +-------------------+-----------------+-------------------------+------------------+
    | ``--format``      | ``format``      | ``human``               | ``XPROD_FORMAT`` |
    +-------------------+-----------------+-------------------------+------------------+
    | ``--n``           | ``n``           | ``2``                   |                  |
    +-------------------+-----------------+-------------------------+------------------+
    | ``--verbose``     | ``verbose``     | ``False``               |                  |
    +-------------------+-----------------+-------------------------+------------------+
    | ``--no-color``    | ``no_color``    | ``False``               |                  |
    +-------------------+-----------------+-------------------------+------------------+

    Environment defaults are read when the parser is constructed.

    Parameters
    ----------
    **kwargs
        Passed to :class:`python:argparse.ArgumentParser`.  ``formatter_class``
        defaults to :class:`python:argparse.ArgumentDefaultsHelpFormatter`.
    """

    reserved = {"budget", "field_value"}
    """Attribute names populated by :func:`parse_args`."""

    def __init__(self, **kwargs):
        if "formatter_class" not in kwargs:
            kwargs["formatter_class"] = argparse.ArgumentDefaultsHelpFormatter
        kwargs.setdefault("prog", "xprod")

        super().__init__(**kwargs)

        self.add_argument("command", choices=COMMANDS, help="What to do.")
        self.add_argument("input", help="The input document, '-' for standard input.")

        self.add_argument(
            "--name", dest="name", type=str, default=None,
            help="The block to use when the document holds several of the kind.")
        self.add_argument(
            "--field", dest="field", type=str, default=None, metavar="FIELD",
            help="Field (Q or F<p>) for documents without a field line; must match "
                 "the field line otherwise.")
        self.add_argument(
            "--seed", dest="seed", type=int,
            default=env_or_default(env="XPROD_SEED", default="0"),
            help="Base seed of the randomized searches.")
        self.add_argument(
            "--trials", dest="trials", type=int,
            default=env_or_default(env="XPROD_TRIALS", default="200"),
            help="Random candidates per invertibility search.")
        self.add_argument(
            "--enum-budget", dest="enum_budget", type=int,
            default=env_or_default(env="XPROD_ENUM_BUDGET", default="1000000"),
            help="Largest candidate family enumerated exhaustively over F_p.")
        self.add_argument(
            "--route", dest="route", type=str, choices=ROUTES,
            default=env_or_default(env="XPROD_ROUTE", default="auto"),
            help="Criteria route: module isomorphisms (psi), corner pairs (uv), or psi "
                 "when every domain is s-unital and uv otherwise (auto).")
        self.add_argument(
            "--format", dest="format", type=str, choices=FORMATS,
            default=env_or_default(env="XPROD_FORMAT", default="human"),
            help="Report format.")
        self.add_argument(
            "--n", dest="n", type=int, default=2,
            help="Matrix size of the amplify command.")
        self.add_argument(
            "--verbose", dest="verbose", action="store_true",
            help="Print stage banners to standard error.")
        self.add_argument(
            "--no-color", dest="no_color", action="store_true",
            help="Disable coloured output (also disabled by NO_COLOR).")

    def add_argument(self, *args, **kwargs) -> argparse.Action:
        """
        Add an argument to the parser.

        Raises
        ------
        ValueError
            If a name in :attr:`reserved` is among the positional ``*args`` or is the
            ``dest``.
        """
        for name in self.reserved:
            if name in args or kwargs.get("dest") == name:
                raise ValueError(f"'{name}' name is reserved.")
        return super().add_argument(*args, **kwargs)

    def error(self, message: str) -> NoReturn:
        """Report a usage error and exit with ``ExitCode.INPUT_ERROR``."""
        self.print_usage(sys.stderr)
        fail(f"{self.prog}: error: {message}", exit_code=ExitCode.INPUT_ERROR)

    def parse_args(self, args=None, namespace=None):
        """
        Parse the command-line arguments.

        After :meth:`python:argparse.ArgumentParser.parse_args` two attributes are
        added to the returned namespace:

        ``budget``
            A :class:`~xprod.criteria.SearchBudget` from ``--seed``, ``--trials`` and
            ``--enum-budget``.

        ``field_value``
            The :class:`~xprod.fields.Field` named by ``--field``, or ``None``.

        Invalid values (including environment defaults) are reported through
        :func:`error`.
        """
        parsed_args = super().parse_args(args=args, namespace=namespace)

        # Environment defaults bypass argparse's own validation.
        for dest, choices in (("route", ROUTES), ("format", FORMATS)):
            value = getattr(parsed_args, dest, None)
            if value is not None and value not in choices:
                self.error(f"invalid {dest} '{value}' (choose from {list(choices)})")

        try:
            parsed_args.budget = SearchBudget().merge(
                seed=getattr(parsed_args, "seed", None),
                trials=getattr(parsed_args, "trials", None),
                enum_budget=getattr(parsed_args, "enum_budget", None))
        except ValueError as ve:
            self.error(str(ve))

        field = getattr(parsed_args, "field", None)
        try:
            parsed_args.field_value = parse_field(field) if field else None
        except ValueError as ve:
            self.error(str(ve))

        n = getattr(parsed_args, "n", None)
        if n is not None and n < 1:
            self.error(f"--n must be positive, got {n}.")

        return parsed_args

