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
The ``xprod`` command line.

Every command reads one document, runs the kernel and writes a
:class:`~xprod.report.Report` to standard output.  The exit code is the verdict:

.. code-block:: none

    0  pass        1  fail        2  undecided        3  input error

``build-crossed`` in human format writes the canonical grading of the crossed
product as a document to standard output and the report to standard error, so that
the output can be fed back to ``xprod``.
"""

import argparse
import sys
from typing import Callable, Dict, List, Optional

from .action import check_derived_identities, verify_action
from .core import ExitCode, fail
from .criteria import check_criteria, matrix_amplify
from .crossed import build_crossed_product, canonical_grading
from .dsl import Workspace, document_from_grading, load, print_document
from .errors import DslError, UnverifiedAction, XprodError
from .graded import check_component_identities, check_condition_i, \
                     check_homogeneous_nondegeneracy, component_products
from .parsers import XprodParser
from .report import VERDICTS, Report, emit_report
from .utils import read_source, set_env

_EXIT_CODES = dict(zip(VERDICTS, (ExitCode.PASS, ExitCode.FAIL, ExitCode.UNDECIDED)))


def _budget_fields(args: argparse.Namespace) -> Dict:
    return {"seed": args.budget.seed, "budgets": args.budget.to_dict()}


def run_verify_action(ws: Workspace, args: argparse.Namespace) -> Report:
    """Check the postulates of the selected action."""
    action = ws.select("action", args.name)
    report = verify_action(action)
    return Report("verify-action", "pass" if report.passed else "fail", [report])


def run_identities(ws: Workspace, args: argparse.Namespace) -> Report:
    """Check the postulates, then the derived identities, of the selected action."""
    action = ws.select("action", args.name)
    report = verify_action(action)
    if not report.passed:
        return Report("identities", "fail", [report])
    derived = check_derived_identities(action)
    return Report("identities", "pass" if derived.passed else "fail",
                  [report, derived])


def run_build_crossed(ws: Workspace, args: argparse.Namespace) -> Report:
    """Build the crossed product of the selected action and print its grading."""
    action = ws.select("action", args.name)
    verified = verify_action(action)
    try:
        cp = build_crossed_product(action)
    except UnverifiedAction as ua:
        return Report("build-crossed", "fail", [verified], {"reason": str(ua)})
    document = print_document(document_from_grading(canonical_grading(cp), name="C",
                                                    algebra="X", group="G"))
    return Report("build-crossed", "pass", [verified],
                  {"document": document, "dimension": cp.dim})


def run_check_grading(ws: Workspace, args: argparse.Namespace) -> Report:
    """Check condition (i), non-degeneracy and the component identities."""
    gb = ws.select("grading", args.name)
    sections = [check_condition_i(gb), check_homogeneous_nondegeneracy(gb)]
    if sections[0].passed:
        sections.append(check_component_identities(gb))
    group = gb.group
    payload = {
        "components": {group.name(g): gb.component(g).dim for g in group.elements},
        "domains": {group.name(g): d.dim
                    for g, d in sorted(component_products(gb).items())},
    }
    verdict = "pass" if all(s.passed for s in sections) else "fail"
    return Report("check-grading", verdict, sections, payload)


def _criteria_report(command: str, gb, args: argparse.Namespace,
                     extra: Optional[Dict] = None) -> Report:
    result = check_criteria(gb, budget=args.budget, route=args.route,
                            verbose=args.verbose)
    payload = {**(extra or {}), **result.to_payload()}
    return Report(command, result.verdict, list(result.reports), payload,
                  **_budget_fields(args))


def run_check_criteria(ws: Workspace, args: argparse.Namespace) -> Report:
    """Decide whether the selected grading is a crossed product."""
    return _criteria_report("check-criteria", ws.select("grading", args.name), args)


def run_amplify(ws: Workspace, args: argparse.Namespace) -> Report:
    """Run the criteria on ``M_n(B)`` for the selected grading ``B``."""
    amplified = matrix_amplify(ws.select("grading", args.name), args.n)
    return _criteria_report("amplify", amplified, args,
                            {"n": args.n, "dimension": amplified.ambient.dim})


HANDLERS = {
    "verify-action": run_verify_action,
    "build-crossed": run_build_crossed,
    "check-grading": run_check_grading,
    "check-criteria": run_check_criteria,
    "amplify": run_amplify,
    "identities": run_identities,
}  # type: Dict[str, Callable[[Workspace, argparse.Namespace], Report]]
"""Command name to handler."""


def _load(args: argparse.Namespace) -> Workspace:
    source = "<stdin>" if args.input == "-" else args.input
    try:
        text = read_source(args.input)
    except OSError as ose:
        fail(f"Cannot read '{source}': {ose}", exit_code=ExitCode.INPUT_ERROR)
    try:
        ws = load(text, args.field_value)
    except DslError as de:
        fail(f"{source}:{de}", exit_code=ExitCode.INPUT_ERROR)
    except XprodError as xe:
        fail(f"{source}: {xe}", exit_code=ExitCode.INPUT_ERROR)
    if args.field_value is not None and ws.field != args.field_value:
        fail(f"{source}: The document declares field {ws.field}, but --field is "
             f"{args.field_value}.", exit_code=ExitCode.INPUT_ERROR)
    return ws


def _run(args: argparse.Namespace) -> int:
    ws = _load(args)
    try:
        report = HANDLERS[args.command](ws, args)
    except DslError as de:
        # Block selection (--name) problems.
        fail(str(de.reason), exit_code=ExitCode.INPUT_ERROR)

    document = report.payload.get("document")
    if args.command == "build-crossed" and args.format == "human" and document:
        sys.stdout.write(document)
        sys.stderr.write(emit_report(report, "human"))
    else:
        sys.stdout.write(emit_report(report, args.format))
    return int(_EXIT_CODES[report.verdict])


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run the ``xprod`` command line.

    Parameters
    ----------
    argv : list of str, optional
        The arguments (without the program name).  Default: ``sys.argv[1:]``.

    Return
    ------
    int
        The exit code of the verdict.  Input errors exit through
        :func:`~xprod.core.fail` with :data:`~xprod.core.ExitCode.INPUT_ERROR`.
    """
    parser = XprodParser(description="Twisted partial actions, crossed products and "
                                     "graded algebra criteria.")
    args = parser.parse_args(argv)
    if args.no_color:
        with set_env(NO_COLOR="1"):
            return _run(args)
    return _run(args)
