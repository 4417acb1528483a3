"""Pure-Python Numerov sweep kernel (fallback when the compiled one is absent)."""

import numpy as np


def numerov_sweep(w, h, y0, y1):
    """Integrate y'' = w(x) y left to right on a uniform mesh.

    w is the precomputed coefficient array; y0, y1 seed the first two points.
    Returns the full solution array.
    """
    w = np.asarray(w, dtype=float)
    n = w.shape[0]
    y = np.empty(n)
    y[0] = y0
    if n > 1:
        y[1] = y1
    f = 1.0 - (h * h / 12.0) * w
    for i in range(1, n - 1):
        y[i + 1] = ((12.0 - 10.0 * f[i]) * y[i] - f[i - 1] * y[i - 1]) / f[i + 1]
    return y
