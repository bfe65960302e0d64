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
The ``xprod`` package top-level namespace.

Exact-arithmetic twisted partial actions, their crossed products, and the criteria
deciding whether a graded algebra is such a crossed product.
"""

from .action import TwistedPartialAction, apply_theta, apply_twist, \
                     check_derived_identities, verify_action
from .algebra import Ideal, StructureAlgebra, is_ideal, is_idempotent_subspace, \
                      left_annihilator_in, multiply, right_annihilator_in, \
                      subspace_product, unit_element
from .colorize import Ansi, Colors, Styles, colorize, log_check, log_stage
from .core import ExitCode, fail
from .criteria import CriteriaCertificate, RejectionReport, SearchBudget, \
                       assemble_uv, build_phi, check_criteria, check_s_unital, \
                       matrix_amplify, reconstruct_action, solve_module_iso_pair, \
                       solve_uv_directly
from .crossed import CrossedProduct, build_crossed_product, build_uv_for_crossed, \
                      canonical_grading
from .dsl import load, parse, print_document
from .errors import DslError, InternalInconsistency, PreconditionFailed, \
                     UnverifiedAction, XprodError
from .fields import Field
from .graded import CornerMultiplierPair, GradedAlgebra, LinkingAlgebra, \
                     build_linking_algebra, check_condition_i, \
                     check_homogeneous_nondegeneracy, check_lemma_uv_properties, \
                     component_products, make_graded
from .groups import FiniteGroup, make_group
from .linalg import Matrix, SubspaceBasis, kernel, rref, solve, subspace_contains, \
                     subspace_intersect, subspace_sum
from .multipliers import Multiplier, check_commuting_property, make_multiplier, \
                          mult_compose, mult_invert, multiplier_space
from .parsers import XprodParser
from .report import CheckReport, Report, emit_report
from .utils import set_env, unset_env

__version__ = "0.1.0"
__all__ = [
    # Core imports from xprod.action module.
    "TwistedPartialAction", "apply_theta", "apply_twist", "check_derived_identities",
    "verify_action",
    # Core imports from xprod.algebra module.
    "Ideal", "StructureAlgebra", "is_ideal", "is_idempotent_subspace",
    "left_annihilator_in", "multiply", "right_annihilator_in", "subspace_product",
    "unit_element",
    # Core imports from xprod.colorize module.
    "Ansi", "Colors", "Styles", "colorize", "log_check", "log_stage",
    # Core imports from xprod.core module.
    "ExitCode", "fail",
    # Core imports from xprod.criteria module.
    "CriteriaCertificate", "RejectionReport", "SearchBudget", "assemble_uv",
    "build_phi", "check_criteria", "check_s_unital", "matrix_amplify",
    "reconstruct_action", "solve_module_iso_pair", "solve_uv_directly",
    # Core imports from xprod.crossed module.
    "CrossedProduct", "build_crossed_product", "build_uv_for_crossed",
    "canonical_grading",
    # Core imports from xprod.dsl module.
    "load", "parse", "print_document",
    # Core imports from xprod.errors module.
    "DslError", "InternalInconsistency", "PreconditionFailed", "UnverifiedAction",
    "XprodError",
    # Core imports from xprod.fields module.
    "Field",
    # Core imports from xprod.graded module.
    "CornerMultiplierPair", "GradedAlgebra", "LinkingAlgebra", "build_linking_algebra",
    "check_condition_i", "check_homogeneous_nondegeneracy",
    "check_lemma_uv_properties", "component_products", "make_graded",
    # Core imports from xprod.groups module.
    "FiniteGroup", "make_group",
    # Core imports from xprod.linalg module.
    "Matrix", "SubspaceBasis", "kernel", "rref", "solve", "subspace_contains",
    "subspace_intersect", "subspace_sum",
    # Core imports from xprod.multipliers module.
    "Multiplier", "check_commuting_property", "make_multiplier", "mult_compose",
    "mult_invert", "multiplier_space",
    # Core imports from xprod.parsers package.
    "XprodParser",
    # Core imports from xprod.report module.
    "CheckReport", "Report", "emit_report",
    # Core imports from xprod.utils module.
    "set_env", "unset_env"
]
