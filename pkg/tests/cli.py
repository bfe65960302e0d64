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
"""Tests for the :mod:`xprod.cli` module."""

import io
import json
import sys
import textwrap
from pathlib import Path

from demos.__main__ import corpus_documents, main as demos_main, read_expectations, \
    run_corpus, run_expectation
from xprod.catalog import corrupt_cocycle, quaternion_action, swap_action
from xprod.cli import main
from xprod.dsl import document_from_action, print_document
from xprod.fields import RATIONALS
from xprod.utils import set_env, unset_env

import pytest

SEARCH_ENV = ("XPROD_SEED", "XPROD_TRIALS", "XPROD_ENUM_BUDGET", "XPROD_ROUTE",
              "XPROD_FORMAT")

GROUP = "group G { elements 1 g; table: 1 g | g 1; }"

IDEMPOTENTS = textwrap.dedent("""\
    field Q
    {group}
    algebra A {{ basis e1 e2; e1*e1 = e1; e2*e2 = e2; }}
    grading B on A by G {{ 1: e1 + e2; g: e1 - e2; }}
""").format(group=GROUP)

DUAL = textwrap.dedent("""\
    field Q
    {group}
    algebra D {{ basis one x; one*one = one; one*x = x; x*one = x; }}
    grading B on D by G {{ 1: one; g: x; }}
""").format(group=GROUP)

LEFT_UNITAL = textwrap.dedent("""\
    field Q
    {group}
    algebra L {{ basis e n; e*e = e; e*n = n; }}
    grading B on L by G {{ 1: e, n; }}
""").format(group=GROUP)


def _write(tmp_path: Path, name: str, text: str) -> str:
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def _exit_code(args) -> int:
    with pytest.raises(SystemExit) as se_excinfo:
        main(args)
    return se_excinfo.value.code


@set_env(NO_COLOR="1")
@unset_env(*SEARCH_ENV)
@pytest.mark.parametrize("command,text,code", [
    ("check-grading", IDEMPOTENTS, 0),
    ("check-criteria", IDEMPOTENTS, 0),
    ("amplify", IDEMPOTENTS, 0),
    ("check-grading", DUAL, 1),
    ("check-criteria", DUAL, 1),
    ("check-criteria", LEFT_UNITAL, 2),
])
def test_grading_verdicts(capsys, tmp_path: Path, command: str, text: str, code: int):
    """Validate the exit code of grading commands follows the verdict."""
    path = _write(tmp_path, "doc.xp", text)
    assert main([command, path]) == code
    captured = capsys.readouterr()
    verdict = ("pass", "fail", "undecided")[code]
    badge = ("[+]", "[X]", "[?]")[code]
    assert captured.out.endswith(f"{badge} {command}: {verdict}\n")
    assert "\033[" not in captured.out


@set_env(NO_COLOR="1")
@unset_env(*SEARCH_ENV)
def test_action_verdicts(capsys, tmp_path: Path):
    """Validate the action commands on a verified and a corrupted action."""
    good = _write(tmp_path, "swap.xp",
                  print_document(document_from_action(swap_action(RATIONALS))))
    bad = _write(tmp_path, "bad.xp", print_document(document_from_action(
        corrupt_cocycle(quaternion_action(RATIONALS)))))

    assert main(["verify-action", good]) == 0
    assert main(["identities", good]) == 0
    assert "== derived identities ==" in capsys.readouterr().out

    assert main(["verify-action", bad]) == 1
    assert main(["identities", bad]) == 1
    assert "== derived identities ==" not in capsys.readouterr().out

    assert main(["build-crossed", bad, "--format", "json"]) == 1
    data = json.loads(capsys.readouterr().out)
    assert data["verdict"] == "fail"
    assert data["payload"]["reason"].startswith("Action fails 'twist_cocycle'")


@unset_env(*SEARCH_ENV)
def test_build_crossed_round_trip(capsys, tmp_path: Path):
    """Validate the printed crossed product grading is itself a crossed product."""
    path = _write(tmp_path, "swap.xp",
                  print_document(document_from_action(swap_action(RATIONALS))))
    assert main(["build-crossed", path, "--no-color"]) == 0
    captured = capsys.readouterr()
    assert captured.out.startswith("field Q\n")
    assert "grading C on X by G" in captured.out
    assert captured.err.endswith("[+] build-crossed: pass\n")

    crossed = _write(tmp_path, "crossed.xp", captured.out)
    assert main(["check-criteria", crossed, "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["command"] == "check-criteria"
    assert data["verdict"] == "pass"
    assert data["seed"] == 0
    assert data["budgets"]["trials"] == 200
    assert sorted(data["payload"]) == ["domains", "phi", "psi", "routes", "theta",
                                       "twists"]

    # JSON keeps the document in the payload.
    assert main(["build-crossed", path, "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["payload"]["document"].startswith("field Q\n")
    assert data["payload"]["dimension"] == 4


@unset_env("NO_COLOR", *SEARCH_ENV)
def test_no_color(capsys, tmp_path: Path):
    """Validate ``--no-color`` strips escape sequences only for that run."""
    path = _write(tmp_path, "doc.xp", IDEMPOTENTS)
    assert main(["check-grading", path]) == 0
    assert "\033[" in capsys.readouterr().out

    assert main(["check-grading", path, "--no-color"]) == 0
    assert "\033[" not in capsys.readouterr().out
    assert main(["check-grading", path]) == 0
    assert "\033[" in capsys.readouterr().out


@set_env(NO_COLOR="1")
@unset_env(*SEARCH_ENV)
def test_standard_input(capsys, monkeypatch):
    """Validate ``-`` reads the document from standard input."""
    monkeypatch.setattr(sys, "stdin", io.StringIO(IDEMPOTENTS))
    assert main(["check-grading", "-", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["payload"] == {"components": {"1": 1, "g": 1},
                               "domains": {"1": 1, "g": 1}}


@set_env(NO_COLOR="1")
@unset_env(*SEARCH_ENV)
def test_field_selection(capsys, tmp_path: Path):
    """Validate ``--field`` must agree with a document's field line."""
    path = _write(tmp_path, "doc.xp", IDEMPOTENTS)
    assert main(["check-grading", path, "--field", "Q"]) == 0
    capsys.readouterr()

    assert _exit_code(["check-grading", path, "--field", "F3"]) == 3
    assert capsys.readouterr().err == \
        f"[X] {path}: The document declares field Q, but --field is F 3.\n"

    bare = _write(tmp_path, "bare.xp", IDEMPOTENTS.replace("field Q\n", ""))
    assert main(["check-grading", bare, "--field", "F5"]) == 0
    capsys.readouterr()

    assert _exit_code(["check-grading", bare]) == 3
    assert capsys.readouterr().err == \
        f"[X] {bare}:1:1: Expected 'field', found 'group'.\n"

    assert _exit_code(["check-grading", bare, "--field", "F2"]) == 3
    assert "meets the earlier components" in capsys.readouterr().err


@set_env(NO_COLOR="1")
@unset_env(*SEARCH_ENV)
def test_input_errors(capsys, tmp_path: Path):
    """Validate unreadable and invalid documents exit with the input error code."""
    missing = str(tmp_path / "missing.xp")
    assert _exit_code(["check-grading", missing]) == 3
    assert capsys.readouterr().err.startswith(f"[X] Cannot read '{missing}': ")

    broken = _write(tmp_path, "broken.xp",
                    "field Q\nalgebra A { basis e1; e1*e1 = e3; }\n")
    assert _exit_code(["check-grading", broken]) == 3
    assert capsys.readouterr().err == \
        f"[X] {broken}:2:31: Unknown basis name 'e3'.\n"

    twice = _write(tmp_path, "twice.xp", IDEMPOTENTS + textwrap.dedent("""\
        grading C on A by G { 1: e1, e2; }
    """))
    assert _exit_code(["check-criteria", twice]) == 3
    assert capsys.readouterr().err == \
        "[X] Expected exactly one grading block, found 2; use --name.\n"
    assert main(["check-grading", twice, "--name", "C"]) == 0
    capsys.readouterr()

    assert _exit_code(["verify-action", twice]) == 3
    assert capsys.readouterr().err == \
        "[X] Expected exactly one action block, found 0; use --name.\n"

    assert _exit_code(["amplify", twice, "--name", "B", "--n", "0"]) == 3
    assert "--n must be positive, got 0." in capsys.readouterr().err


@set_env(NO_COLOR="1")
@unset_env(*SEARCH_ENV)
def test_deterministic_output(capsys, tmp_path: Path):
    """Validate identical runs produce byte identical reports."""
    path = _write(tmp_path, "doc.xp", IDEMPOTENTS)
    outputs = []
    for _ in range(2):
        assert main(["amplify", path, "--format", "json", "--seed", "9"]) == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]
    data = json.loads(outputs[0])
    assert data["payload"]["n"] == 2
    assert data["payload"]["dimension"] == 8
    assert data["seed"] == 9


@unset_env(*SEARCH_ENV)
@pytest.mark.parametrize("path", corpus_documents(), ids=lambda p: p.stem)
def test_corpus(path: Path):
    """Validate every example document exits as its header comments expect."""
    for expectation in read_expectations(path):
        code, output = run_expectation(path, expectation)
        assert code == expectation.code, output


@set_env(NO_COLOR="1")
@unset_env(*SEARCH_ENV)
def test_corpus_runner(capsys, tmp_path: Path):
    """Validate the corpus runner lists, selects and rejects documents."""
    assert len(corpus_documents()) >= 10
    demos_main(["--list"])
    listing = capsys.readouterr().out.splitlines()
    assert "dual_numbers: xprod amplify --n 3 -> 1" in listing
    assert "two_gradings: xprod check-criteria -> 3" in listing

    assert run_corpus(["dual_numbers", "left_unital"]) == 0
    assert "[+] check-criteria --route psi" in capsys.readouterr().out

    with pytest.raises(SystemExit) as se_excinfo:
        demos_main(["no_such_document"])
    assert se_excinfo.value.code == 2
    assert "unknown document(s): ['no_such_document']" in capsys.readouterr().err

    empty = tmp_path / "empty.xp"
    empty.write_text("field Q\n", encoding="utf-8")
    with pytest.raises(ValueError) as excinfo:
        read_expectations(empty)
    assert str(excinfo.value) == "'empty.xp' declares no expected runs."
