"""Smallest-factor search for binary trinomials."""

from .engine import (
    DEFAULT_K0,
    DEFAULT_M,
    DEFAULT_SEED,
    BlockSchedule,
    FactorResult,
    InnerTable,
    Verdict,
    advance_inner,
    assemble,
    backtrack,
    find_smallest_factor,
    init_inner_table,
    position_table,
    run_ddf,
    run_outer_block,
    sieve_bound,
    sieve_small_factors,
)
from .oracle import count_irreducible_factors, naive_ddf_oracle
from .split import equal_degree_split
from .swan import Parity, squarefree_check, swan_parity

__all__ = [
    "DEFAULT_K0", "DEFAULT_M", "DEFAULT_SEED", "BlockSchedule", "FactorResult",
    "InnerTable", "Verdict", "advance_inner", "assemble", "backtrack",
    "find_smallest_factor", "init_inner_table", "position_table", "run_ddf",
    "run_outer_block", "sieve_bound", "sieve_small_factors",
    "count_irreducible_factors", "naive_ddf_oracle", "equal_degree_split",
    "Parity", "squarefree_check", "swan_parity",
]
