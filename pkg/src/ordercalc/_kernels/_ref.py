"""Reference implementations of the numeric kernels (numpy)."""

import numpy as np

# Cap on the theta-chunk size so the grid sweep never materializes more than
# a few MB at once.
_CHUNK = 8192


def square_mean_max(x, y, grid_points):
    """max over theta in the uniform grid of cos(theta)*x + sin(theta)*y.

    x, y: float64 arrays of equal shape (coordinatewise data).
    grid_points: number of grid angles; the grid always contains theta = 0.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    theta = np.arange(grid_points, dtype=np.float64) * (2.0 * np.pi / grid_points)
    out = np.full(x.shape, -np.inf)
    for start in range(0, grid_points, _CHUNK):
        t = theta[start : start + _CHUNK]
        vals = np.cos(t)[:, None] * x[None, :] + np.sin(t)[:, None] * y[None, :]
        np.maximum(out, vals.max(axis=0), out=out)
    return out


def series_eval(coeffs, w):
    """sum_n coeffs[n, i] * w[i]**n for each coordinate i.

    coeffs: complex128 array of shape (terms, m); w: complex128 array (m,).
    """
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    w = np.asarray(w, dtype=np.complex128)
    n = coeffs.shape[0]
    if n == 0:
        return np.zeros_like(w)
    powers = w[None, :] ** np.arange(n, dtype=np.float64)[:, None]
    return (coeffs * powers).sum(axis=0)
