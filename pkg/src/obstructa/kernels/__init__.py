"""Integer wedge kernels with an optional compiled fast path.

The randomized oracles evaluate thousands of integer-coefficient wedge
products after denominators have been cleared.  That arithmetic sits behind
a two-function contract:

    prepare_table(triples, dim) -> opaque handle
    wedge_int(a_terms, b_terms, handle) -> sorted list of (mask, coeffs)

selected at import time: the Cython build when present, else the pure
Python twin.  OBSTRUCTA_PURE=1 forces the pure path.  Both backends are
exercised against each other by the test suite and the benchmark script.

The compiled path uses fixed-width 64-bit integers; callers must check
coefficient growth against INT64_SAFE_BOUND first and route oversized
workloads through the pure backend (arbitrary precision).
"""

import os

from obstructa.kernels import pure as pure_backend

INT64_SAFE_BOUND = 2 ** 62

if os.environ.get("OBSTRUCTA_PURE") == "1":
    _impl = pure_backend
    BACKEND = "pure"
else:
    try:
        from obstructa.kernels import _speedups as _impl  # type: ignore[attr-defined]
        BACKEND = "cython"
    except ImportError:
        _impl = pure_backend
        BACKEND = "pure"

prepare_table = _impl.prepare_table
wedge_int = _impl.wedge_int


def backend_name() -> str:
    return BACKEND
