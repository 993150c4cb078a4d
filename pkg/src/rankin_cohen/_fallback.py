"""Pure numpy versions of the compiled kernels in ``_speedups.pyx``.

Both modules expose the same two functions with the same signatures; see
``rankin_cohen._accel`` for the selection logic.
"""
import numpy as np


def jacobi_table(l, a, b, x):
    """Rows ``P_0 .. P_l`` of the Jacobi family ``P_n^{(a,b)}`` at ``x``.

    Uses the three-term recurrence; ``x`` is a 1-d float array.
    """
    x = np.ascontiguousarray(x, dtype=float)
    out = np.empty((l + 1, x.shape[0]))
    out[0] = 1.0
    if l == 0:
        return out
    out[1] = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0
    ab = a + b
    for n in range(2, l + 1):
        c = 2.0 * n + ab
        a1 = 2.0 * n * (n + ab) * (c - 2.0)
        a2 = (c - 1.0) * (c * (c - 2.0) * x + a * a - b * b)
        a3 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * c
        out[n] = (a2 * out[n - 1] - a3 * out[n - 2]) / a1
    return out


def kummer_series(a, b, x, rtol=1e-16, max_terms=5000):
    """Partial sums of 1F1(a; b; x) for each entry of ``x``.

    An entry stops once three consecutive terms fall below
    ``rtol * |partial sum|``.  Returns ``(values, converged)``.
    """
    x = np.ascontiguousarray(x, dtype=complex)
    m = x.shape[0]
    term = np.ones(m, dtype=complex)
    total = np.ones(m, dtype=complex)
    small = np.zeros(m, dtype=np.int64)
    active = np.ones(m, dtype=bool)
    for n in range(max_terms):
        if not active.any():
            break
        idx = np.flatnonzero(active)
        term[idx] = term[idx] * ((a + n) / ((b + n) * (n + 1.0)) * x[idx])
        total[idx] = total[idx] + term[idx]
        tiny = np.abs(term[idx]) <= rtol * np.abs(total[idx])
        small[idx] = np.where(tiny, small[idx] + 1, 0)
        active[idx[small[idx] >= 3]] = False
    return total, ~active
