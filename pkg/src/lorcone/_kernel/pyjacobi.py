"""Pure-Python cyclic Jacobi sweeps; fallback when the compiled core is absent.

Same rotation formulas and sweep order as _jacobi.pyx so both backends agree
to rounding.  Row/column updates are vectorized with numpy but element-wise
arithmetic is identical.
"""

import math

import numpy as np


def jacobi_sweeps(a, v, max_sweeps):
    """See lorcone._kernel._jacobi.jacobi_sweeps."""
    n = a.shape[0]
    v[:] = np.eye(n)
    if n <= 1:
        return 0

    for sweep in range(max_sweeps):
        frob = float(np.sum(a * a))
        off = frob - float(np.sum(np.diagonal(a) ** 2))
        off = max(off, 0.0)
        if math.sqrt(off) <= 1e-14 * math.sqrt(frob) or frob == 0.0:
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
                    t = 1.0 / (theta + math.sqrt(1.0 + theta * theta))
                else:
                    t = -1.0 / (-theta + math.sqrt(1.0 + theta * theta))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                tau = s / (1.0 + c)
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                akp = a[:, p].copy()
                akq = a[:, q].copy()
                new_p = akp - s * (akq + tau * akp)
                new_q = akq + s * (akp - tau * akq)
                new_p[p] = a[p, p]
                new_p[q] = 0.0
                new_q[q] = a[q, q]
                new_q[p] = 0.0
                a[:, p] = new_p
                a[p, :] = new_p
                a[:, q] = new_q
                a[q, :] = new_q
                vkp = v[:, p].copy()
                vkq = v[:, q].copy()
                v[:, p] = vkp - s * (vkq + tau * vkp)
                v[:, q] = vkq + s * (vkp - tau * vkq)
    return max_sweeps
