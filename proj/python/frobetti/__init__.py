# Copyright 2026 The frobetti Authors
# SPDX-License-Identifier: Apache-2.0
"""Python bindings for the frobetti core library."""

from ._core import (
    BettiTable,
    InvalidArgument,
    PreconditionError,
    betti_over_P,
    betti_over_R,
    format_poly,
    generator_profile,
    hk_direct,
    hk_formula,
    is_relatively_compressed,
    run_cli,
    set_thread_limit,
    socle_direct,
    socle_via_link,
)

__all__ = [
    "BettiTable",
    "InvalidArgument",
    "PreconditionError",
    "betti_over_P",
    "betti_over_R",
    "format_poly",
    "generator_profile",
    "hk_direct",
    "hk_formula",
    "is_relatively_compressed",
    "run_cli",
    "set_thread_limit",
    "socle_direct",
    "socle_via_link",
]
