from ._core import (
    AnalyticSignal,
    DeterminantError,
    DomainError,
    GridSet,
    GridSpec2D,
    OLCTParams,
    ParamPair,
    Quaternion,
    ShapeError,
    convolve,
    correlate,
    l2_norm,
    qft_params,
    qlct_params,
    qolct,
    qolct_grid,
    sample,
    theorem_ids,
    verify,
    verify_variants,
    wvd_grid,
    wvd_point,
)

__all__ = [name for name in dir() if not name.startswith("_")]
