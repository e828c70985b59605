"""End-to-end acceptance checks, one per criterion, each printing a verdict line.

Run with `pytest tests/test_acceptance.py -s` to see the lines. Tolerances and
budgets are pinned here on purpose; loosening them is a behavior change.
"""

import math
import time

import numpy as np
import pytest

from ordercalc import (
    COUNTEREXAMPLES,
    CoefficientFamily,
    ComplexElement,
    CoordinateSeries,
    Model,
    ONE,
    OrderDisk,
    OutsideDomainError,
    RealElement,
    VAR,
    cauchy_hadamard,
    coordinate_tail,
    difference_quotient_check,
    evaluate,
    evaluate_series,
    finite_part,
    generalized_inverse,
    holomorphy_report,
    infinite_part,
    inverse,
    modulus_closed,
    modulus_square_mean,
    project_positive,
    root_limsup,
    run_all,
    series_derivative,
    series_derivative_check,
    spectrum_membership,
    symbolic_derivative,
    three_part_decompose,
)
from ordercalc.calculus import Add, Const, Inv, IntPow, Mul, ScalarMul
from ordercalc.supcompletion import ExtendedPositive

from oracles import stabilized_projection

M8 = Model.finite(8)


def _line(num, ok, detail):
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'} - {detail}")


def _random_complex(rng, n, lo, hi):
    mags = rng.uniform(lo, hi, n)
    args = rng.uniform(0.0, 2.0 * math.pi, n)
    return ComplexElement.finite(
        [m * complex(math.cos(a), math.sin(a)) for m, a in zip(mags, args)])


def test_criterion_1_modulus_equivalence():
    # components in [-7, 7] keep |z| < 10, where the 1e5-point grid gap
    # |z| (pi/G)^2 / 2 stays below 5e-9
    rng = np.random.default_rng(101)
    t0 = time.perf_counter()
    worst = 0.0
    pairs = []
    for _ in range(100):
        xs = rng.uniform(-7.0, 7.0, 8)
        ys = rng.uniform(-7.0, 7.0, 8)
        x, y = RealElement.finite(xs), RealElement.finite(ys)
        z = ComplexElement.finite([complex(a, b) for a, b in zip(xs, ys)])
        closed = modulus_closed(z)
        grid = modulus_square_mean(x, y, 100_000)
        gap = max(closed.coord(i) - grid.coord(i) for i in range(8))
        worst = max(worst, gap)
        pairs.append((x, y))
    monotone = True
    for x, y in pairs[:10]:
        chain = [modulus_square_mean(x, y, g)
                 for g in (12_500, 25_000, 50_000, 100_000)]
        monotone = monotone and all(a.leq(b) for a, b in zip(chain, chain[1:]))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-8 and worst >= 0.0 and monotone and dt < 5.0
    _line(1, ok, f"worst gap {worst:.3e} over 100 elements, "
                 f"monotone in grid size, {dt:.2f}s")
    assert worst <= 1e-8
    assert monotone
    assert dt < 5.0


def _random_extended(rng):
    coords = []
    for _ in range(8):
        kind = rng.integers(0, 3)
        coords.append(0.0 if kind == 0
                      else math.inf if kind == 2
                      else float(rng.uniform(0.01, 100.0)))
    return ExtendedPositive.finite(coords)


def test_criterion_2_sup_completion_suite():
    rng = np.random.default_rng(102)
    t0 = time.perf_counter()
    failures = 0
    for _ in range(1000):
        u = _random_extended(rng)
        u_f = finite_part(u)
        u_inf = infinite_part(u)
        lifted = ExtendedPositive.from_real(u_f)
        parts = three_part_decompose(u)
        idx = (parts.finite_band.indices | parts.infinite_band.indices
               | parts.disjoint_band.indices)
        ok = (lifted + u_inf == u
              and lifted.inf(u_inf).coords == (0.0,) * 8
              and all(math.isfinite(v) and v >= 0 for v in u_f.prefix)
              and all(float(m) * u_inf == u_inf for m in range(1, 11))
              and idx == frozenset(range(8))
              and not (parts.finite_band.indices & parts.infinite_band.indices)
              and not (parts.finite_band.indices & parts.disjoint_band.indices)
              and not (parts.infinite_band.indices & parts.disjoint_band.indices))
        failures += 0 if ok else 1
    dt = time.perf_counter() - t0
    ok = failures == 0 and dt < 1.0
    _line(2, ok, f"1000 decompositions exact, 0 failures, {dt:.2f}s")
    assert failures == 0
    assert dt < 1.0


def test_criterion_3_projection_oracle():
    rng = np.random.default_rng(103)
    failures = 0
    for _ in range(1000):
        x = RealElement.finite(rng.uniform(0.0, 50.0, 8))
        u = _random_extended(rng)
        got = project_positive(u, x)
        want = stabilized_projection(x.prefix, u.coords)
        failures += 0 if got.prefix == want else 1
    ok = failures == 0
    _line(3, ok, "closed-form band projection equals the stabilized sup "
                 "on 1000 pairs, exact")
    assert failures == 0


def _random_series(rng):
    kind = rng.integers(0, 4)
    if kind == 0:
        s = CoordinateSeries.geometric(float(10.0 ** rng.uniform(-1, 1)),
                                       float(rng.choice([-1, 1]) * rng.uniform(0.5, 2)))
    elif kind == 1:
        s = CoordinateSeries.poly_geometric(int(rng.integers(0, 4)),
                                            float(10.0 ** rng.uniform(-1, 1)))
    elif kind == 2:
        s = CoordinateSeries.inverse_factorial()
    else:
        s = CoordinateSeries.factorial()
    if rng.random() < 0.3:
        s = s.with_table(tuple(rng.uniform(-2, 2, int(rng.integers(1, 4)))))
    return s


def test_criterion_4_cauchy_hadamard():
    rng = np.random.default_rng(104)
    t0 = time.perf_counter()
    origin = ComplexElement.finite([0j])
    probes = 0
    for _ in range(200):
        fam = CoefficientFamily.of([_random_series(rng) for _ in range(4)])
        report = cauchy_hadamard(fam)
        assert report.rho == generalized_inverse(root_limsup(fam))
        assert report.identities_hold()
        for k in sorted(report.rho_parts.finite_band.indices):
            series = fam.coordinates[k]
            rho_k = report.rho.coord(k)
            tail = coordinate_tail(series, 0.9 * rho_k, 1e-9, 10_000)
            assert tail.verified and tail.bound <= 1e-9
            single = CoefficientFamily.of([series])
            verdict = spectrum_membership(single, origin,
                                          RealElement.finite([1.1 * rho_k]))
            assert verdict.membership == "OUT"
            assert verdict.witness is not None and verdict.witness.term > 0
            probes += 1
    dt = time.perf_counter() - t0
    ok = dt < 30.0
    _line(4, ok, f"200 families: rho = L* exactly, band identities hold, "
                 f"{probes} finite-rho coordinates probed both sides, {dt:.2f}s")
    assert dt < 30.0


def _random_tree(rng, depth):
    if depth == 0 or rng.random() < 0.3:
        pick = rng.random()
        if pick < 0.55:
            return VAR
        if pick < 0.75:
            return ONE
        return Const(_random_complex(rng, 8, 0.6, 1.4))
    choice = int(rng.integers(0, 5))
    if choice == 0:
        return Add(_random_tree(rng, depth - 1), _random_tree(rng, depth - 1))
    if choice == 1:
        return Mul(_random_tree(rng, depth - 1), _random_tree(rng, depth - 1))
    if choice == 2:
        scalar = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        return ScalarMul(scalar, _random_tree(rng, depth - 1))
    if choice == 3:
        return Inv(_random_tree(rng, depth - 1))
    return IntPow(_random_tree(rng, depth - 1), int(rng.integers(2, 4)))


def _max_mod(z):
    return max(z.modulus().prefix)


def _well_conditioned(rng, depth, cap=100.0):
    """A random tree and point where f and f' evaluate below the cap."""
    while True:
        tree = _random_tree(rng, depth)
        deriv = symbolic_derivative(tree)
        for _ in range(8):
            c = _random_complex(rng, 8, 0.9, 1.3)
            try:
                if _max_mod(evaluate(tree, c)) <= cap and _max_mod(evaluate(deriv, c)) <= cap:
                    return tree, deriv, c
            except OutsideDomainError:
                continue


def test_criterion_5_differentiation_rules():
    rng = np.random.default_rng(105)
    t0 = time.perf_counter()
    step = RealElement.constant(M8, 2.0 ** -12)
    for _ in range(500):
        tree, _, c = _well_conditioned(rng, 5)
        rep = difference_quotient_check(tree, c, step, depth=20, tol=1e-8)
        assert rep.passed, rep.failure
    for _ in range(500):
        f, fp, c = _well_conditioned(rng, 3)
        g, gp, _ = _well_conditioned(rng, 3)
        try:
            gc = evaluate(g, c)
            if min(gc.modulus().prefix) < 0.1 or _max_mod(evaluate(gp, c)) > 100:
                continue
            lhs = evaluate(symbolic_derivative(Mul(f, Inv(g))), c)
        except OutsideDomainError:
            continue
        rhs = (evaluate(fp, c) * gc - evaluate(f, c) * evaluate(gp, c)) * inverse(gc * gc)
        gap = _max_mod(lhs - rhs)
        assert gap <= 1e-10 * (1.0 + _max_mod(lhs)), gap
    dt = time.perf_counter() - t0
    ok = dt < 60.0
    _line(5, ok, f"500 trees pass the quotient check; quotient rule matches "
                 f"product-inverse composition to 1e-10, {dt:.2f}s")
    assert dt < 60.0


def test_criterion_6_term_by_term():
    # geometric family at half the unit
    fam = CoefficientFamily.of([CoordinateSeries.geometric(1.0),
                                CoordinateSeries.geometric(1.0)])
    c = ComplexElement.constant(Model.finite(2), 0)
    z0 = ComplexElement.constant(Model.finite(2), 0.5)
    rep = series_derivative_check(fam, c, z0)
    f_gap = max(abs(rep.f_value.coord(i) - 2.0) for i in range(2))
    d_gap = max(abs(rep.derivative_value.coord(i) - 4.0) for i in range(2))
    assert rep.passed
    assert f_gap <= 1e-9 and d_gap <= 1e-9

    # exponential family: f' = f at 10 seeded points
    exp_fam = CoefficientFamily.of([CoordinateSeries.inverse_factorial(),
                                    CoordinateSeries.inverse_factorial()])
    exp_deriv = series_derivative(exp_fam)
    rng = np.random.default_rng(106)
    exp_gap = 0.0
    for _ in range(10):
        z = _random_complex(rng, 2, 0.0, 2.0)
        fz, _ = evaluate_series(exp_fam, c, z)
        gz, _ = evaluate_series(exp_deriv, c, z)
        exp_gap = max(exp_gap, _max_mod(fz - gz))
    assert exp_gap <= 1e-9

    # the radius of the derivative family is the radius of the family, exactly
    kinds = [CoordinateSeries.geometric(0.5),
             CoordinateSeries.geometric(3.0, -2.0),
             CoordinateSeries.poly_geometric(2, 0.25),
             CoordinateSeries.inverse_factorial(),
             CoordinateSeries.factorial(),
             CoordinateSeries.geometric(2.0).with_table((5.0, 0.0, 1.0))]
    base = CoefficientFamily.of(kinds)
    assert cauchy_hadamard(series_derivative(base)).rho == cauchy_hadamard(base).rho
    _line(6, True, f"geometric: f = 2e, f' = 4e within 1e-9 with the quotient "
                   f"check passing; exp: max |f' - f| = {exp_gap:.2e}; radius "
                   f"equality exact for all kinds")


def test_criterion_7_counterexamples():
    t0 = time.perf_counter()
    reports = run_all()
    dt = time.perf_counter() - t0
    verdicts = {r.name: r.verdict for r in reports}
    reproduced = [n for n in COUNTEREXAMPLES if n != "finite-contrast"]
    ok = (all(verdicts[n] == "REPRODUCED" for n in reproduced)
          and verdicts["finite-contrast"] == "PASSED" and dt < 1.0)
    _line(7, ok, f"five reproductions REPRODUCED, finite-model contrast "
                 f"PASSED, {dt:.2f}s")
    assert all(verdicts[n] == "REPRODUCED" for n in reproduced)
    assert verdicts["finite-contrast"] == "PASSED"
    assert dt < 1.0


def test_criterion_8_analytic_implies_holomorphic():
    cases = [
        (CoefficientFamily.of([CoordinateSeries.geometric(0.5)]),
         ComplexElement.finite([0j]), RealElement.finite([1.0])),
        (CoefficientFamily.of([CoordinateSeries.inverse_factorial(),
                               CoordinateSeries.inverse_factorial()]),
         ComplexElement.finite([1 + 1j, -2 + 0j]), RealElement.finite([2.0, 2.0])),
        (CoefficientFamily.of([CoordinateSeries.poly_geometric(1, 0.25),
                               CoordinateSeries.geometric(0.5).with_table((3.0, -1.0))]),
         ComplexElement.finite([0j, 0.5j]), RealElement.finite([1.5, 0.8])),
    ]
    checked = 0
    for fam, center, radius in cases:
        verdict = spectrum_membership(fam, center, radius)
        assert verdict.membership == "IN" and verdict.tail_verified
        region = OrderDisk(center, radius, is_open=True)
        rep = holomorphy_report(fam, region, sample_count=25, seed=0)
        assert rep.passed
        assert len(rep.samples) == 25
        checked += 1
    _line(8, True, f"{checked} IN families pass holomorphy sampling at "
                   f"25 seeded points each")
