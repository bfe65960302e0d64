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
Run the example documents of ``demos/corpus`` through the ``xprod`` command line.

Every document lists the runs it is meant for in header comments of the form::

    # xprod check-criteria --route uv -> 0

that is the command, any extra flags, and the expected exit code.  From the repository
root ``python demos/`` runs the whole corpus, ``python demos/ m3_corner dual_numbers``
only the named documents.  The exit code is ``1`` when any run disagrees with its
expectation.
"""

import argparse
import contextlib
import io
import os
import re
import shlex
import sys
from collections import namedtuple
from pathlib import Path
from typing import List, Optional, Tuple

sys.path.insert(0, os.path.abspath(os.path.dirname(os.path.dirname(__file__))))
from xprod import Colors, Styles, log_check, log_stage  # noqa: E402
from xprod.cli import main as xprod_main  # noqa: E402
from xprod.core import fail  # noqa: E402

CORPUS = Path(__file__).resolve().parent / "corpus"
"""The directory holding the example ``.xp`` documents."""

Expectation = namedtuple("Expectation", ["args", "code"])

_EXPECTATION = re.compile(r"^#\s*xprod\s+(?P<args>.+?)\s*->\s*(?P<code>\d+)\s*$")


def corpus_documents() -> List[Path]:
    """Return the corpus documents sorted by name."""
    return sorted(CORPUS.glob("*.xp"))


def read_expectations(path: Path) -> List[Expectation]:
    """
    Return the ``# xprod ... -> code`` expectations declared in ``path``.

    Raises
    ------
    ValueError
        If the document declares none.
    """
    found = []
    for line in path.read_text(encoding="utf-8").splitlines():
        match = _EXPECTATION.match(line)
        if match:
            found.append(Expectation(tuple(shlex.split(match.group("args"))),
                                     int(match.group("code"))))
    if not found:
        raise ValueError(f"'{path.name}' declares no expected runs.")
    return found


def run_expectation(path: Path, expectation: Expectation) -> Tuple[int, str]:
    """
    Run ``xprod`` in process and return ``(exit code, captured output)``.

    Input errors leave :func:`xprod.cli.main` through :class:`python:SystemExit`,
    which is caught here.
    """
    command, *flags = expectation.args
    out = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(out):
        try:
            code = xprod_main([command, str(path), *flags, "--no-color"])
        except SystemExit as se:
            code = se.code if isinstance(se.code, int) else 1
    return code, out.getvalue()


def run_corpus(names: Optional[List[str]] = None, *, show_output: bool = False,
               **kwargs) -> int:
    """
    Run every expectation of the selected documents.

    Parameters
    ----------
    names : list of str, optional
        Document names without the ``.xp`` suffix.  Default: the whole corpus.

    show_output : bool
        Print the captured ``xprod`` output after each run.

    **kwargs
        Forwarded to :func:`python:print`.

    Return
    ------
    int
        The number of runs whose exit code differed from the expectation.
    """
    documents = corpus_documents()
    if names:
        documents = [CORPUS / f"{name}.xp" for name in names]
    mismatches = 0
    for path in documents:
        log_stage(path.stem, fill_char="-", color=Colors.Cyan, style=Styles.Regular,
                  **kwargs)
        for expectation in read_expectations(path):
            code, output = run_expectation(path, expectation)
            ok = code == expectation.code
            mismatches += not ok
            log_check(" ".join(expectation.args), ok,
                      detail=f"exit {code}, expected {expectation.code}", **kwargs)
            if show_output:
                print(output, end="", **kwargs)
    return mismatches


########################################################################################
def main(argv: Optional[List[str]] = None):
    """Create the argument parser and run the selected documents."""
    available = [p.stem for p in corpus_documents()]
    parser = argparse.ArgumentParser(description="Run the example corpus.")
    parser.add_argument(
        "documents", nargs="*", metavar="DOCUMENT",
        help=f"Documents to run (default: all).  Choices: {', '.join(available)}.")
    parser.add_argument("--list", action="store_true",
                        help="List the documents and their expected runs, then exit.")
    parser.add_argument("--show-output", action="store_true",
                        help="Print the output of every run.")
    args = parser.parse_args(argv)
    unknown = [name for name in args.documents if name not in available]
    if unknown:
        parser.error(f"unknown document(s): {unknown}")

    if args.list:
        for path in corpus_documents():
            for expectation in read_expectations(path):
                print(f"{path.stem}: xprod {' '.join(expectation.args)} -> "
                      f"{expectation.code}")
        return

    mismatches = run_corpus(args.documents, show_output=args.show_output)
    if mismatches:
        fail(f"{mismatches} run(s) disagree with the corpus expectations.")
    log_stage("corpus ok", color=Colors.Green)


if __name__ == "__main__":
    main()
