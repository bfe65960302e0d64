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
"""Tests for the :mod:`xprod.utils` module."""

import io
import os
import sys
from pathlib import Path

from xprod.utils import read_source, set_env, unset_env

import pytest


@unset_env("XPROD_SEED", "XPROD_TRIALS", "XPROD_ROUTE")
def test_set_env():
    """Validate |set_env| sets and restores environment variables."""
    with pytest.raises(ValueError) as exc_info:
        @set_env()
        def no_arguments_bad():  # pragma: no cover
            pass                 # pragma: no cover
    assert str(exc_info.value) == "set_env: at least one argument required."

    with pytest.raises(ValueError) as exc_info:
        @set_env(XPROD_SEED=12)
        def integer_value_bad():  # pragma: no cover
            pass                  # pragma: no cover
    assert str(exc_info.value) == "set_env: all keys and values must be strings."

    @set_env(XPROD_SEED="1")
    def set_seed():
        @set_env(XPROD_TRIALS="50")
        def set_trials():
            @set_env(XPROD_SEED="2", XPROD_TRIALS="60", XPROD_ROUTE="uv")
            def nested_setting():
                assert os.environ["XPROD_SEED"] == "2"
                assert os.environ["XPROD_TRIALS"] == "60"
                assert os.environ["XPROD_ROUTE"] == "uv"
            assert os.environ["XPROD_SEED"] == "1"
            assert os.environ["XPROD_TRIALS"] == "50"
            nested_setting()
            assert os.environ["XPROD_SEED"] == "1"
            assert os.environ["XPROD_TRIALS"] == "50"
            assert "XPROD_ROUTE" not in os.environ
        assert os.environ["XPROD_SEED"] == "1"
        assert "XPROD_TRIALS" not in os.environ
        set_trials()
        assert os.environ["XPROD_SEED"] == "1"
        assert "XPROD_TRIALS" not in os.environ

    set_seed()
    assert "XPROD_SEED" not in os.environ

    # Same test only with `with`.
    with set_env(XPROD_SEED="1"):
        assert os.environ["XPROD_SEED"] == "1"
        with set_env(XPROD_SEED="2", XPROD_ROUTE="psi"):
            assert os.environ["XPROD_SEED"] == "2"
            assert os.environ["XPROD_ROUTE"] == "psi"
        assert os.environ["XPROD_SEED"] == "1"
        assert "XPROD_ROUTE" not in os.environ
    assert "XPROD_SEED" not in os.environ

    # Make sure that function arguments are passed through / return propagated.
    @set_env(XPROD_TRIALS="7")
    def func_returns(x: int, y: int = 3) -> int:
        return x + y + int(os.environ["XPROD_TRIALS"])

    assert func_returns(1) == 11
    assert func_returns(1, y=0) == 8


def test_unset_env():
    """Validate |unset_env| removes and restores environment variables."""
    with pytest.raises(ValueError) as exc_info:
        @unset_env()
        def no_arguments_bad():  # pragma: no cover
            pass                 # pragma: no cover
    assert str(exc_info.value) == "unset_env: at least one argument required."

    with pytest.raises(ValueError) as exc_info:
        @unset_env("XPROD_SEED", 12)
        def integer_arg_bad():  # pragma: no cover
            pass                # pragma: no cover
    assert str(exc_info.value) == "unset_env: all arguments must be strings."

    @unset_env("XPROD_SEED", "XPROD_FORMAT")
    def unset_all():
        assert "XPROD_SEED" not in os.environ
        assert "XPROD_FORMAT" not in os.environ

    with set_env(XPROD_SEED="3", XPROD_FORMAT="json"):
        unset_all()
        assert os.environ["XPROD_SEED"] == "3"
        assert os.environ["XPROD_FORMAT"] == "json"
        with unset_env("XPROD_SEED"):
            assert "XPROD_SEED" not in os.environ
            assert os.environ["XPROD_FORMAT"] == "json"
        assert os.environ["XPROD_SEED"] == "3"

    # Unsetting something that is not set is fine.
    with unset_env("XPROD_NOT_A_VARIABLE"):
        assert "XPROD_NOT_A_VARIABLE" not in os.environ


def test_read_source(tmp_path: Path, monkeypatch):
    """Validate |read_source| reads files and standard input."""
    document = tmp_path / "m2.xp"
    document.write_text("field Q\n", encoding="utf-8")
    assert read_source(document) == "field Q\n"
    assert read_source(str(document)) == "field Q\n"

    monkeypatch.setattr(sys, "stdin", io.StringIO("field F 5\n"))
    assert read_source("-") == "field F 5\n"

    with pytest.raises(OSError):
        read_source(tmp_path / "missing.xp")
