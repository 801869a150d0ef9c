# Copyright 2025 Altaira Labs
# SPDX-License-Identifier: Apache-2.0

"""sparselce - Sparse suffix sorting and LCE indexes over partitioning sets."""

from sparselce.builder import build_index, build_partitioning_set, build_sparse_index
from sparselce.config import (
    MODES,
    DecompositionConfig,
    IndexConfig,
    SelectionConfig,
    make_config,
)
from sparselce.corpus import CORPUS_KINDS, generate
from sparselce.dcover_lce import DcIndex, build_dc, lce_dc
from sparselce.errors import (
    ConfigError,
    ContractError,
    IndexFormatError,
    InvariantError,
    ParameterError,
    PositionRangeError,
    SparseLceError,
)
from sparselce.hashing import Fingerprinter, MinwiseHasher
from sparselce.lce_index import LceIndex, QueryResult, build_lce
from sparselce.partition_det import build_det, iter_det_positions
from sparselce.partition_rand import build_rand, build_rand_whp, select_whp_large_tau
from sparselce.periodicity import find_runs, principal_period, segment
from sparselce.serialization import dump_index, dumps_index, load_index, loads_index
from sparselce.sparse_suffix import SparseSuffixIndex, build_sst, ssa_of_B, ssa_of_pset
from sparselce.text import Text
from sparselce.types import PartitioningSet, Run, Segment, SegmentList

__version__ = "0.1.0"

__all__ = [
    # Text
    "Text",
    # Configuration
    "MODES",
    "IndexConfig",
    "SelectionConfig",
    "DecompositionConfig",
    "make_config",
    # Types
    "PartitioningSet",
    "Run",
    "Segment",
    "SegmentList",
    # Hashing
    "Fingerprinter",
    "MinwiseHasher",
    # Periodicity
    "find_runs",
    "principal_period",
    "segment",
    # Partitioning sets
    "build_rand",
    "build_rand_whp",
    "select_whp_large_tau",
    "build_det",
    "iter_det_positions",
    # Indexes
    "LceIndex",
    "QueryResult",
    "build_lce",
    "DcIndex",
    "build_dc",
    "lce_dc",
    "SparseSuffixIndex",
    "ssa_of_pset",
    "ssa_of_B",
    "build_sst",
    # Builder
    "build_partitioning_set",
    "build_index",
    "build_sparse_index",
    # Serialization
    "dump_index",
    "dumps_index",
    "load_index",
    "loads_index",
    # Corpus
    "CORPUS_KINDS",
    "generate",
    # Errors
    "SparseLceError",
    "ParameterError",
    "PositionRangeError",
    "ContractError",
    "InvariantError",
    "IndexFormatError",
    "ConfigError",
]
