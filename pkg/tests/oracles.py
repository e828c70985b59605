"""Independent recomputations the tests freeze expected values against.

Everything here takes a different route than the package: direct loops,
closed-form sums, or stabilized iteration instead of closed-form masks.
"""

import math


def grid_modulus_slow(xs, ys, grid_points):
    """Direct max over the angle grid, one python loop per coordinate."""
    out = []
    for x, y in zip(xs, ys):
        best = -math.inf
        for j in range(grid_points):
            t = 2.0 * math.pi * j / grid_points
            v = math.cos(t) * x + math.sin(t) * y
            if v > best:
                best = v
        out.append(best)
    return out


def stabilized_projection(x, u):
    """sup_n (x ∧ n u) by doubling n until two successive rounds agree."""
    n = 1
    prev = None
    while True:
        cur = tuple(min(xi, n * ui) for xi, ui in zip(x, u))
        if cur == prev:
            return cur
        prev = cur
        n *= 2


def root_limsup_estimate(term, lo, hi):
    """max |a_n|^(1/n) over a trailing window of indices."""
    best = 0.0
    for n in range(lo, hi):
        v = abs(term(n))
        if v > 0:
            best = max(best, v ** (1.0 / n))
    return best


def horner_sum(coeffs, w):
    """Series value by Horner, highest kept term first."""
    acc = 0j
    for a in reversed(coeffs):
        acc = acc * w + a
    return acc


def geometric_series(ratio, w):
    return 1.0 / (1.0 - ratio * w)


def poly1_geometric_series(ratio, w):
    """sum (n+1) (ratio w)^n."""
    return 1.0 / (1.0 - ratio * w) ** 2
