"""Spin-1 condensate quench dynamics (single-mode approximation)."""

from ._core import (
    ConvergenceError,
    FitError,
    InvalidArgument,
    NoKink,
    NoValidWindow,
    QuenchResult,
    RetentionError,
    SpinorError,
    UndefinedTimescale,
    build_hamiltonian,
    classify_region,
    decompose,
    eth_indicators,
    evolve_n0,
    fit_power_law_with_offset,
    fit_pure_power_law,
    ground_state_n0_fraction,
    overlap_distribution,
    participation_ratio,
    predict_timescales,
    run_quench,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
