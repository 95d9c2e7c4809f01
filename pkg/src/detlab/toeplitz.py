"""Exact reference values: finite determinants of Fourier moments.

This module is the ground truth for the whole library; it depends only on
the symbol layer and shares no code with the kernel/asymptotics machinery.
"""

from __future__ import annotations

import numpy as np

from . import errors, symbols


def _pow2_at_least(n: int) -> int:
    m = 1
    while m < n:
        m *= 2
    return m


def moment_table(spec: symbols.SymbolSpec, x: int):
    """Moments c_k of phi for |k| <= x, sampled densely enough for x rows."""
    m = _pow2_at_least(max(256, 8 * x))
    ks, c, _ = symbols.fourier_coefficients(spec, m)
    return {int(k): complex(v) for k, v in zip(ks, c) if abs(k) <= x}


def toeplitz_matrix(spec: symbols.SymbolSpec, x: int) -> np.ndarray:
    if x < 1 or x != int(x):
        raise errors.InputError("matrix order must be a positive integer")
    c = moment_table(spec, x)
    return np.array([[c[i - j] for j in range(x)] for i in range(x)],
                    dtype=complex)


def toeplitz_det(spec: symbols.SymbolSpec, x: int) -> complex:
    """Determinant of the x-by-x moment matrix via LU."""
    return complex(np.linalg.det(toeplitz_matrix(spec, x)))
