"""Exact sheaf cohomology and splitting decisions for rank-2 bundles on F_n and P2.

Divisors are tuples in the (sigma, f) basis on F_n and a single int on P2.
Bundles use the CLI syntax: "sum:a1,b1/a2,b2" or "ext:sub/quot#seed".
"""

from ._core import (
    InconsistentOracle,
    InvalidCocycle,
    NotNormalizable,
    ParseError,
    PreconditionViolated,
    Surface,
    SurfaceMismatch,
    TruncationUnstable,
    bundle_h,
    canonical_class,
    chern,
    chi_line,
    chi_rank2,
    cocycle_is_coboundary,
    decide,
    ext_dim,
    intersect,
    line_h,
    normalize,
    recover_chern,
    run,
    table,
)

__version__ = "0.1.0"

__all__ = [
    "InconsistentOracle",
    "InvalidCocycle",
    "NotNormalizable",
    "ParseError",
    "PreconditionViolated",
    "Surface",
    "SurfaceMismatch",
    "TruncationUnstable",
    "bundle_h",
    "canonical_class",
    "chern",
    "chi_line",
    "chi_rank2",
    "cocycle_is_coboundary",
    "decide",
    "ext_dim",
    "intersect",
    "line_h",
    "normalize",
    "recover_chern",
    "run",
    "table",
]
