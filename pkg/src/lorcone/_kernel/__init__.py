"""Spectral kernel: compiled cyclic Jacobi with a pure-Python fallback.

The compiled extension is preferred when importable; set LORCONE_PURE_PYTHON=1
to force the fallback (used by the benchmark and backend-equivalence tests).
"""

import os

import numpy as np

from . import pyjacobi

if os.environ.get("LORCONE_PURE_PYTHON"):
    _core = pyjacobi.jacobi_sweeps
    BACKEND = "python"
else:
    try:
        from . import _jacobi

        _core = _jacobi.jacobi_sweeps
        BACKEND = "compiled"
    except ImportError:
        _core = pyjacobi.jacobi_sweeps
        BACKEND = "python"

MAX_SWEEPS = 64


def backend_name():
    return BACKEND


def available_backends():
    names = {"python": pyjacobi.jacobi_sweeps}
    try:
        from . import _jacobi

        names["compiled"] = _jacobi.jacobi_sweeps
    except ImportError:
        pass
    return names


def eigh_jacobi(matrix, core=None):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns (eigenvalues descending, eigenvector columns).  Deterministic for
    a fixed input: fixed sweep order, stable sort, and each eigenvector's
    largest-magnitude entry (first on ties) is made positive.
    """
    a = np.array(matrix, dtype=np.float64, order="C", copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    v = np.empty((n, n), dtype=np.float64, order="C")
    run = _core if core is None else core
    run(a, v, MAX_SWEEPS)
    w = np.diagonal(a).copy()
    order = np.argsort(-w, kind="stable")
    w = w[order]
    v = v[:, order]
    for j in range(n):
        i = int(np.argmax(np.abs(v[:, j])))
        if v[i, j] < 0.0:
            v[:, j] = -v[:, j]
    return w, v
