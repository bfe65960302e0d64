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
"""Tests for the :mod:`xprod.report` module."""

import json

from xprod.fields import RATIONALS, Field
from xprod.linalg import Matrix
from xprod.report import Check, CheckReport, Report, emit_report, format_expression, \
    format_matrix, format_vector
from xprod.utils import set_env

import pytest


def _sample_checks() -> CheckReport:
    checks = CheckReport("graded")
    checks.add("direct_sum", True, detail="dimension 2")
    checks.add("condition_i[g]", True, vacuous=True, witness="zero component")
    checks.add("nondegenerate[g]", False, witness="x", detail="x B_g^-1 = 0")
    return checks


def test_check_report():
    """Validate |CheckReport| bookkeeping."""
    empty = CheckReport("empty")
    assert empty.passed
    assert empty.failures() == []
    assert empty.first_failure() is None

    checks = _sample_checks()
    assert not checks.passed
    assert [c.name for c in checks.failures()] == ["nondegenerate[g]"]
    assert checks.first_failure() == Check("nondegenerate[g]", False, False, "x",
                                           "x B_g^-1 = 0")
    assert checks.get("condition_i[g]").vacuous

    with pytest.raises(KeyError) as excinfo:
        checks.get("s_unital")
    assert excinfo.value.args[0] == "No check named 's_unital' in report 'graded'."

    as_dict = checks.to_dict()
    assert as_dict["title"] == "graded"
    assert as_dict["passed"] is False
    assert as_dict["checks"][0] == {"name": "direct_sum", "passed": True,
                                    "vacuous": False, "witness": None,
                                    "detail": "dimension 2"}


def test_report_verdict():
    """Validate |Report| only accepts the three verdicts."""
    for verdict in ("pass", "fail", "undecided"):
        assert Report("check-action", verdict).verdict == verdict

    with pytest.raises(ValueError) as excinfo:
        Report("check-action", "maybe")
    assert str(excinfo.value) == "Unknown verdict 'maybe'."


def test_formatting():
    """Validate vectors, matrices and expressions render canonically."""
    f5 = Field(5)
    names = ("e1", "e2", "e3")
    assert format_vector(RATIONALS, RATIONALS.vector([1, "-1/2", 0])) == "(1, -1/2, 0)"
    assert format_vector(f5, f5.vector([6, -1])) == "(1, 4)"
    assert format_matrix(Matrix.identity(RATIONALS, 2)) == [["1", "0"], ["0", "1"]]

    assert format_expression(RATIONALS, names, RATIONALS.vector([0, 0, 0])) == "0"
    assert format_expression(RATIONALS, names, RATIONALS.vector([2, -1, 0])) == \
        "2*e1 - e2"
    assert format_expression(RATIONALS, names, RATIONALS.vector([0, "-1/2", 1])) == \
        "-1/2*e2 + e3"
    assert format_expression(RATIONALS, names, RATIONALS.vector([-1, 0, 3])) == \
        "-e1 + 3*e3"
    assert format_expression(f5, names, f5.vector([-1, 0, 1])) == "4*e1 + e3"


@set_env(NO_COLOR="1")
def test_emit_human():
    """Validate the human rendering of a |Report|."""
    report = Report("check-graded", "fail", sections=[_sample_checks()],
                    payload={"phi": [["1", "0"]], "note": "x"}, seed=0,
                    budgets={"trials": 200, "enum_budget": 10})
    assert emit_report(report) == "\n".join([
        "== graded ==",
        "  [+] direct_sum: dimension 2",
        "  [+] condition_i[g] (vacuous) [witness: zero component]",
        "  [X] nondegenerate[g]: x B_g^-1 = 0 [witness: x]",
        "note: x",
        'phi: [["1", "0"]]',
        "seed: 0 (enum_budget=10, trials=200)",
        "[X] check-graded: fail",
    ]) + "\n"

    bare = Report("check-action", "undecided")
    assert emit_report(bare, "human") == "[?] check-action: undecided\n"


def test_emit_json():
    """Validate the JSON rendering of a |Report| is canonical."""
    report = Report("check-graded", "fail", sections=[_sample_checks()],
                    payload={"phi": [["1", "0"]]}, seed=3, budgets={"trials": 5})
    text = emit_report(report, "json")
    assert text.endswith("}\n")
    assert text == emit_report(report, "json")
    data = json.loads(text)
    assert data == report.to_dict()
    assert data["verdict"] == "fail"
    assert data["seed"] == 3
    assert list(data) == sorted(data)

    with pytest.raises(ValueError) as excinfo:
        emit_report(report, "yaml")
    assert str(excinfo.value) == "Unknown report format 'yaml'."
