# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled cyclic Jacobi sweeps for symmetric eigendecomposition.

Mirrors lorcone._kernel.pyjacobi.jacobi_sweeps exactly; keep the two in sync.
"""

from libc.math cimport fabs, sqrt


def jacobi_sweeps(double[:, ::1] a, double[:, ::1] v, int max_sweeps):
    """Run cyclic Jacobi rotations on ``a`` in place until the off-diagonal
    Frobenius norm falls below 1e-14 times the matrix norm.

    ``a`` must be symmetric and C-contiguous; it is overwritten (diagonal ->
    eigenvalues).  ``v`` receives the accumulated rotations (columns are
    eigenvectors, unordered).  Returns the number of sweeps performed.
    """
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j, p, q, k, sweep
    cdef double off, frob, apq, app, aqq, theta, t, c, s, tau, akp, akq, vkp, vkq

    for i in range(n):
        for j in range(n):
            v[i, j] = 1.0 if i == j else 0.0
    if n <= 1:
        return 0

    for sweep in range(max_sweeps):
        off = 0.0
        frob = 0.0
        for i in range(n):
            for j in range(n):
                frob += a[i, j] * a[i, j]
                if i != j:
                    off += a[i, j] * a[i, j]
        if sqrt(off) <= 1e-14 * sqrt(frob) or frob == 0.0:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                theta = 0.5 * (aqq - app) / apq
                if theta >= 0.0:
                    t = 1.0 / (theta + sqrt(1.0 + theta * theta))
                else:
                    t = -1.0 / (-theta + sqrt(1.0 + theta * theta))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                tau = s / (1.0 + c)
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    if k == p or k == q:
                        continue
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = akp - s * (akq + tau * akp)
                    a[p, k] = a[k, p]
                    a[k, q] = akq + s * (akp - tau * akq)
                    a[q, k] = a[k, q]
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = vkp - s * (vkq + tau * vkp)
                    v[k, q] = vkq + s * (vkp - tau * vkq)
    return max_sweeps
