# Copyright 2026 The qotm developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""One-time memories from BB84 conjugate coding and a stateless token."""

from qotm._core import (
    ALPHA,
    DEFAULT_QUERY_BUDGET,
    DEFAULT_SEED,
    AlreadyConsumedError,
    BudgetExceededError,
    IdealOTM,
    RandomStream,
    VerificationError,
    WrapInstance,
    apply_hadamard_all,
    exact_breidbart_both_accept,
    fixed_output_bound,
    interactive_bound,
    measure_computational,
    measure_in_rotated_basis,
    noninteractive_bound,
    numeric_search_n1,
    prepare_bb84,
    run_cli,
    verify_query,
    verify_sdp,
)

__all__ = [
    "ALPHA",
    "DEFAULT_QUERY_BUDGET",
    "DEFAULT_SEED",
    "AlreadyConsumedError",
    "BudgetExceededError",
    "IdealOTM",
    "RandomStream",
    "VerificationError",
    "WrapInstance",
    "apply_hadamard_all",
    "exact_breidbart_both_accept",
    "fixed_output_bound",
    "interactive_bound",
    "measure_computational",
    "measure_in_rotated_basis",
    "noninteractive_bound",
    "numeric_search_n1",
    "prepare_bb84",
    "run_cli",
    "verify_query",
    "verify_sdp",
]

__version__ = "0.1.0"
