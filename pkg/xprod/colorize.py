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
Terminal output helpers: ANSI colours, stage banners and check lines.

All human facing output of :mod:`xprod` goes through this module.  Colour is dropped
when the ``NO_COLOR`` environment variable is set, or when a caller passes
``color=None``.
"""

import os
import shutil
from typing import Optional


class Ansi:
    """Wrapper class for defining the escape character and clear sequence."""

    Escape = "\033["
    """The opening escape sequence to use before inserting color / style."""

    Clear = "\033[0m"
    """Convenience definition used to clear ANSI formatting."""


class Colors:
    """The ANSI color codes used by the reports."""

    Red = "31"
    """Failures."""

    Green = "32"
    """Passes and stage banners."""

    Yellow = "33"
    """Undecided outcomes and vacuous passes."""

    Blue = "34"
    """Section titles."""

    Cyan = "36"
    """Payload keys."""

    @classmethod
    def all_colors(cls) -> tuple:
        """Return a tuple of all string colors available (used in tests)."""
        return (Colors.Red, Colors.Green, Colors.Yellow, Colors.Blue, Colors.Cyan)


class Styles:
    """The ANSI style formats used by the reports."""

    Regular = ""
    """The regular ANSI format."""

    Bold = "1"
    """The bold ANSI format."""

    Dim = "2"
    """The dim ANSI format."""

    @classmethod
    def all_styles(cls) -> tuple:
        """Return a tuple of all style strings available (used in tests)."""
        return (Styles.Regular, Styles.Bold, Styles.Dim)


def color_enabled() -> bool:
    """Return ``False`` when the ``NO_COLOR`` environment variable is set."""
    return os.getenv("NO_COLOR") is None


def colorize(message: str, *, color: str, style: str = Styles.Regular) -> str:
    """
    Return ``message`` colorized with specified style.

    Parameters
    ----------
    message : str
        The message to wrap in an :data:`Ansi.Escape` / :data:`Ansi.Clear` pair.

    color : str
        The ANSI color code without the trailing ``m``, e.g. :data:`Colors.Red`.

    style : str
        The ANSI style.  Default: :data:`Styles.Regular`.

    Returns
    -------
    str
        The decorated message, or ``message`` unchanged when colour is disabled.
    """
    if not color_enabled():
        return message
    prefix = f"{Ansi.Escape}{color}"
    # Regular: `m` goes right after color without `;`
    if style != "":
        prefix += ";" + style.lstrip(";")
    prefix += "m"
    return f"{prefix}{message}{Ansi.Clear}"


def log_stage(stage: str, *, fill_char: str = "=", pad: str = " ",
              color: Optional[str] = Colors.Green, style: str = Styles.Bold,
              width: Optional[int] = None, **kwargs):
    """
    Print a terminal width banner with ``stage`` in the middle.

    For example::

        >>> log_stage("Condition (i)", width=40)
        ============ Condition (i) =============

    Parameters
    ----------
    stage : str
        The pipeline stage being entered.

    fill_char : str
        A **length 1** string used as the fill character.  Default: ``"="``.

    pad : str
        Padding inserted on both sides of ``stage``.  Default: ``" "``.

    color : str or None
        The ANSI color code, ``None`` disables colouring.

    style : str
        The ANSI style used with |colorize|.

    width : int or None
        Fixed width; when ``None`` the terminal width is used.

    **kwargs
        Forwarded to :func:`python:print`, typically ``file=sys.stderr``.
    """
    full_width = width or shutil.get_terminal_size().columns
    fill_width = full_width - len(stage) - 2 * len(pad)
    if fill_width < 3:
        message = stage
    else:
        left = fill_char * (fill_width // 2)
        right = fill_char * (fill_width - len(left))
        message = f"{left}{pad}{stage}{pad}{right}"
    if color:
        message = colorize(message, color=color, style=style)
    print(message, **kwargs)


def verdict_badge(verdict: str) -> str:
    """
    Return the coloured badge for a verdict.

    Parameters
    ----------
    verdict : str
        One of ``"pass"``, ``"fail"`` or ``"undecided"``.

    Raises
    ------
    ValueError
        If ``verdict`` is not one of the three verdicts.
    """
    badges = {
        "pass": ("[+]", Colors.Green),
        "fail": ("[X]", Colors.Red),
        "undecided": ("[?]", Colors.Yellow),
    }
    if verdict not in badges:
        raise ValueError(f"Unknown verdict '{verdict}'.")
    text, color = badges[verdict]
    return colorize(text, color=color, style=Styles.Bold)


def log_check(name: str, passed: bool, *, vacuous: bool = False, detail: str = "",
              **kwargs):
    """
    Print one line describing a single check.

    Parameters
    ----------
    name : str
        The check name.

    passed : bool
        Whether the check passed.

    vacuous : bool
        Whether a pass only holds because the quantified set is empty.

    detail : str
        Optional trailing explanation (dimmed).

    **kwargs
        Forwarded to :func:`python:print`.
    """
    line = f"{verdict_badge('pass' if passed else 'fail')} {name}"
    if vacuous:
        line += " " + colorize("(vacuous)", color=Colors.Yellow)
    if detail:
        line += " " + colorize(detail, color=Colors.Blue, style=Styles.Dim)
    print(line, **kwargs)
