import numpy as np
import pytest

from ordercalc._kernels import BACKEND, _ref, series_eval, square_mean_max

from oracles import horner_sum


def test_backend_flag():
    assert BACKEND in ("compiled", "python")


def test_square_mean_max_matches_reference():
    rng = np.random.default_rng(5)
    x = rng.uniform(-1e3, 1e3, 64)
    y = rng.uniform(-1e3, 1e3, 64)
    got = square_mean_max(x, y, 4096)
    ref = _ref.square_mean_max(x, y, 4096)
    assert got == pytest.approx(ref, rel=1e-12, abs=1e-12)


def test_square_mean_max_grid_contains_zero_angle():
    rng = np.random.default_rng(6)
    x = rng.uniform(-10, 10, 32)
    y = rng.uniform(-10, 10, 32)
    for g in (1, 7, 64):
        out = square_mean_max(x, y, g)
        assert (out >= x).all()


def test_square_mean_max_bracketed_by_true_modulus():
    rng = np.random.default_rng(7)
    x = rng.uniform(-5, 5, 48)
    y = rng.uniform(-5, 5, 48)
    r = np.hypot(x, y)
    out = square_mean_max(x, y, 4096)
    assert (out <= r + 1e-12).all()
    # the grid angle nearest the maximizer is off by at most pi/G
    assert (out >= r * np.cos(np.pi / 4096) - 1e-12).all()


def test_series_eval_matches_reference():
    rng = np.random.default_rng(8)
    coeffs = rng.normal(size=(40, 6)) + 1j * rng.normal(size=(40, 6))
    w = 0.8 * (rng.normal(size=6) + 1j * rng.normal(size=6))
    got = series_eval(coeffs, w)
    ref = _ref.series_eval(coeffs, w)
    assert got == pytest.approx(ref, rel=1e-12)


def test_series_eval_closed_forms():
    coeffs = np.ones((50, 2), dtype=np.complex128)
    w = np.array([0.5 + 0j, 0.25j])
    got = series_eval(coeffs, w)
    for i in range(2):
        assert got[i] == pytest.approx(horner_sum([1.0] * 50, w[i]), rel=1e-14)
    assert got[0] == pytest.approx((1 - 0.5 ** 50) / 0.5, rel=1e-14)


def test_series_eval_empty():
    out = series_eval(np.zeros((0, 3), dtype=np.complex128),
                      np.ones(3, dtype=np.complex128))
    assert (out == 0).all()
