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
Check results and command reports.

Every verifier returns a |CheckReport|: an ordered list of named |Check| values, each
with an optional witness already rendered as text.  Command line runs wrap the check
reports of a command in a |Report|, which :func:`emit_report` serializes either for a
human or as canonical JSON (sorted keys, no timestamps) so that identical runs produce
byte-identical output.

.. |Check| replace:: :class:`~xprod.report.Check`
.. |CheckReport| replace:: :class:`~xprod.report.CheckReport`
.. |Report| replace:: :class:`~xprod.report.Report`
"""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from .colorize import Colors, Styles, colorize, verdict_badge
from .fields import Field, Vector
from .linalg import Matrix

VERDICTS = ("pass", "fail", "undecided")
"""The three possible verdicts, in exit code order."""


@dataclass(frozen=True)
class Check:
    """
    The outcome of one named check.

    Parameters
    ----------
    name : str
        What was checked, e.g. ``"twist_cocycle"``.

    passed : bool
        Whether the check holds.

    vacuous : bool
        ``True`` when the check passed only because every quantified set was empty.

    witness : str or None
        A rendered certificate of the failure (or of the first vacuous instance).

    detail : str
        Free form explanation.
    """

    name: str
    passed: bool
    vacuous: bool = False
    witness: Optional[str] = None
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        """Return a JSON compatible dictionary."""
        return {"name": self.name, "passed": self.passed, "vacuous": self.vacuous,
                "witness": self.witness, "detail": self.detail}


@dataclass
class CheckReport:
    """An ordered collection of |Check| values under a title."""

    title: str
    checks: List[Check] = field(default_factory=list)

    def add(self, name: str, passed: bool, *, vacuous: bool = False,
            witness: Optional[str] = None, detail: str = "") -> Check:
        """Append a new check and return it."""
        check = Check(name, passed, vacuous, witness, detail)
        self.checks.append(check)
        return check

    @property
    def passed(self) -> bool:
        """Whether every check passed."""
        return all(c.passed for c in self.checks)

    def failures(self) -> List[Check]:
        """Return the failed checks, in order."""
        return [c for c in self.checks if not c.passed]

    def first_failure(self) -> Optional[Check]:
        """Return the first failed check, or ``None``."""
        return next(iter(self.failures()), None)

    def get(self, name: str) -> Check:
        """
        Return the check called ``name``.

        Raises
        ------
        KeyError
            If no check has that name.
        """
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(f"No check named '{name}' in report '{self.title}'.")

    def to_dict(self) -> Dict[str, Any]:
        """Return a JSON compatible dictionary."""
        return {"title": self.title, "passed": self.passed,
                "checks": [c.to_dict() for c in self.checks]}


@dataclass
class Report:
    """
    The result of one command line run.

    Parameters
    ----------
    command : str
        The command name, e.g. ``"check-criteria"``.

    verdict : str
        One of :data:`VERDICTS`.

    sections : list of CheckReport
        The check reports, in the order they ran.

    payload : dict
        Command specific JSON compatible data (certificates, documents).

    seed : int or None
        The seed of randomized searches, when one was used.

    budgets : dict
        The search budgets in effect.
    """

    command: str
    verdict: str
    sections: List[CheckReport] = field(default_factory=list)
    payload: Dict[str, Any] = field(default_factory=dict)
    seed: Optional[int] = None
    budgets: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"Unknown verdict '{self.verdict}'.")

    def to_dict(self) -> Dict[str, Any]:
        """Return a JSON compatible dictionary."""
        return {
            "command": self.command,
            "verdict": self.verdict,
            "sections": [s.to_dict() for s in self.sections],
            "payload": self.payload,
            "seed": self.seed,
            "budgets": self.budgets,
        }


def format_vector(fld: Field, v: Vector) -> str:
    """Render a coordinate vector as ``(a, b, ...)``."""
    return "(" + ", ".join(fld.format(a) for a in v) + ")"


def format_matrix(m: Matrix) -> List[List[str]]:
    """Return the rows of ``m`` as lists of canonical literals."""
    return [[m.field.format(a) for a in row] for row in m.row_tuples()]


def format_expression(fld: Field, names: Sequence[str], v: Vector) -> str:
    """Render ``v`` as a linear expression in ``names``, e.g. ``2*e1 - e2``."""
    terms = []
    for name, c in zip(names, v):
        if not c:
            continue
        literal = fld.format(c)
        negative = literal.startswith("-")
        magnitude = literal.lstrip("-")
        term = name if magnitude == "1" else f"{magnitude}*{name}"
        if not terms:
            terms.append(f"-{term}" if negative else term)
        else:
            terms.append(f"- {term}" if negative else f"+ {term}")
    return " ".join(terms) if terms else "0"


def _emit_human(report: Report) -> str:
    lines = []
    for section in report.sections:
        lines.append(colorize(f"== {section.title} ==", color=Colors.Blue,
                              style=Styles.Bold))
        for c in section.checks:
            line = f"  {verdict_badge('pass' if c.passed else 'fail')} {c.name}"
            if c.vacuous:
                line += " " + colorize("(vacuous)", color=Colors.Yellow)
            if c.detail:
                line += f": {c.detail}"
            if c.witness is not None and (not c.passed or c.vacuous):
                line += f" [witness: {c.witness}]"
            lines.append(line)
    for key in sorted(report.payload):
        value = report.payload[key]
        rendered = value if isinstance(value, str) else \
            json.dumps(value, sort_keys=True)
        lines.append(f"{colorize(key, color=Colors.Cyan)}: {rendered}")
    if report.seed is not None:
        budget = ", ".join(f"{k}={report.budgets[k]}" for k in sorted(report.budgets))
        lines.append(f"seed: {report.seed}" + (f" ({budget})" if budget else ""))
    lines.append(f"{verdict_badge(report.verdict)} {report.command}: {report.verdict}")
    return "\n".join(lines) + "\n"


def emit_report(report: Report, fmt: str = "human") -> str:
    """
    Serialize ``report``.

    Parameters
    ----------
    report : Report
        The report to serialize.

    fmt : str
        ``"human"`` for a coloured console rendering, ``"json"`` for canonical JSON.

    Raises
    ------
    ValueError
        If ``fmt`` is not a known format.
    """
    if fmt == "json":
        return json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"
    if fmt == "human":
        return _emit_human(report)
    raise ValueError(f"Unknown report format '{fmt}'.")
