# Copyright 2025 Altaira Labs
# SPDX-License-Identifier: Apache-2.0

"""Builds partitioning sets and indexes from an IndexConfig."""

from __future__ import annotations

from collections.abc import Iterable

from sparselce.config import IndexConfig
from sparselce.dcover_lce import DcIndex, build_dc, cover_root
from sparselce.errors import ParameterError
from sparselce.lce_index import LceIndex, build_lce
from sparselce.partition_det import DetStats, build_det, log_star
from sparselce.partition_rand import build_rand, build_rand_whp
from sparselce.sparse_suffix import SparseSuffixIndex, build_sst, ssa_of_B, ssa_of_pset
from sparselce.text import Text
from sparselce.types import PartitioningSet


def _check_tau(text: Text, tau: int) -> None:
    if not 1 <= tau <= text.n:
        raise ParameterError("tau", f"must lie in [1, n={text.n}], got {tau}")


def build_partitioning_set(
    text: Text, config: IndexConfig, stats: DetStats | None = None
) -> PartitioningSet:
    """Build the partitioning set selected by ``config.mode``.

    The dcover mode yields the fine deterministic set at tau / ceil(sqrt(log* n)).

    Raises:
        ParameterError: If tau is outside [1, n].
    """
    _check_tau(text, config.tau)
    if config.mode == "rand":
        return build_rand(text, config.tau, seed=config.seed, config=config.selection)
    if config.mode == "rand-whp":
        return build_rand_whp(text, config.tau, seed=config.seed, config=config.selection)
    if config.mode == "det":
        return build_det(text, config.tau, config.decomposition, stats)
    tau_prime = max(1, config.tau // cover_root(log_star(text.n)))
    return build_det(text, tau_prime, config.decomposition, stats)


def build_index(
    text: Text, config: IndexConfig, stats: DetStats | None = None
) -> LceIndex | DcIndex:
    """Build the LCE index selected by ``config.mode``."""
    _check_tau(text, config.tau)
    if config.mode == "dcover":
        return build_dc(text, config.tau, config.decomposition, stats)
    return build_lce(text, build_partitioning_set(text, config, stats))


def build_sparse_index(
    text: Text, positions: Iterable[int], config: IndexConfig
) -> SparseSuffixIndex:
    """Sparse suffix array and tree of ``positions`` through one partitioning set.

    The dcover mode sorts through the deterministic set at tau.
    """
    if config.mode == "dcover":
        config = config.model_copy(update={"mode": "det"})
    pset = build_partitioning_set(text, config)
    lce_index = build_lce(text, pset)
    pset_ssa = ssa_of_pset(text, pset, lce_index)
    order = ssa_of_B(text, positions, pset, pset_ssa, lce_index)
    return build_sst(text, order, lce_index)
