"""Reproductions of the boundary phenomena, with exact witnesses.

Each reproduction runs in the eventually-constant sequence model (or in C^2
where two coordinates suffice) so every comparison is exact tail arithmetic:
no floating tolerance enters the verdicts.  The positive halves (that a net
does converge) go through the convergence module's certificate verifier; the
refutation halves exhibit the witness data the verdict rests on.

Coordinate indices in reports are 0-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .calculus import super_order_check
from .convergence import ConvergenceCertificate, verify_certificate
from .lattice import (
    Band,
    ComplexElement,
    Model,
    OrderDisk,
    RealElement,
    disk_membership,
    inverse,
    is_invertible,
    strictly_dominates,
    unit,
)

SEQ = Model.sequence()

REPRODUCED = "REPRODUCED"
FAILED = "FAILED"
PASSED = "PASSED"


@dataclass
class WitnessReport:
    name: str
    verdict: str
    lines: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def to_text(self) -> str:
        out = [f"{self.name}: {self.verdict}"]
        out.extend(f"  {line}" for line in self.lines)
        return "\n".join(out)


class _Checks:
    """Collects (description, ok) pairs; the verdict is their conjunction."""

    def __init__(self):
        self.items = []

    def expect(self, ok: bool, description: str) -> bool:
        self.items.append((description, bool(ok)))
        return bool(ok)

    @property
    def all_ok(self) -> bool:
        return all(ok for _, ok in self.items)

    def failures(self):
        return [d for d, ok in self.items if not ok]


def _seq_ones(k: int, tail) -> ComplexElement:
    return ComplexElement(SEQ, (1,) * k, tail)


def _delta(index: int, value: float) -> RealElement:
    return RealElement(SEQ, (0.0,) * index + (value,), 0.0)


# ---------------------------------------------------------------------------

def _shift_or_identity(z: ComplexElement) -> ComplexElement:
    """Identity strictly inside the unit disk, left shift outside it."""
    if strictly_dominates(unit(SEQ), z.modulus()):
        return z
    return ComplexElement(SEQ, z.prefix[1:], z.tail)


def shift_not_super_differentiable(witness_ns=(3, 10, 25)) -> WitnessReport:
    """The shift-extended identity is differentiable at 0 but not super so.

    Steps h_n = (n zeros, then constant 2) have |h_n| vanishing at index
    n-1 while |f(h_n) - h_n| = 2 delta_{n-1}; no regulator bound |h_n| q can
    cover that coordinate, whatever q is.
    """
    checks = _Checks()
    e = unit(SEQ).as_complex()
    zero = ComplexElement(SEQ, (), 0)
    inside = [
        ComplexElement(SEQ, (), 0.5),
        ComplexElement(SEQ, (0.25j, -0.5), 0.125),
        ComplexElement(SEQ, (0.9, 0.3 + 0.3j), 0.0),
    ]
    for h in inside:
        checks.expect(strictly_dominates(unit(SEQ), h.modulus()),
                      "sample lies strictly inside the unit disk")
        checks.expect(_shift_or_identity(h) == h, "f is the identity on the disk")
    consistent = super_order_check(_shift_or_identity, zero, e, inside)
    checks.expect(consistent.verdict == "CONSISTENT" and consistent.max_support_ratio == 0.0,
                  "residuals vanish identically inside the disk")

    violation_coords = []
    for n in witness_ns:
        h = ComplexElement(SEQ, (0,) * n, 2)
        checks.expect(not strictly_dominates(unit(SEQ), h.modulus()),
                      f"witness h_{n} leaves the unit disk")
        gap = (_shift_or_identity(h) - h).modulus()
        checks.expect(gap == _delta(n - 1, 2.0),
                      f"|f(h_{n}) - h_{n}| is exactly 2 at index {n - 1}")
        refuted = super_order_check(_shift_or_identity, zero, e, [h])
        ok = (refuted.verdict == "REFUTED"
              and refuted.violations[0].coordinate == n - 1
              and refuted.violations[0].residual_value == 2.0)
        checks.expect(ok, f"no regulator covers index {n - 1} (|h_{n}| is 0 there)")
        if refuted.violations:
            violation_coords.append(refuted.violations[0].coordinate)

    verdict = REPRODUCED if checks.all_ok else FAILED
    lines = [
        "f = identity inside the open unit disk, left shift outside",
        f"witness steps h_n for n in {tuple(witness_ns)}: |f(h_n) - h_n| = 2 delta_(n-1)",
        f"violation coordinates {violation_coords}: |h_n| vanishes there, residual is 2",
        "every candidate regulator q gives (|h_n| q)_(n-1) = 0 < 2",
    ] + [f"FAILED: {d}" for d in checks.failures()]
    return WitnessReport("shift", verdict, lines,
                         {"witness_ns": tuple(witness_ns),
                          "violation_coordinates": tuple(violation_coords),
                          "residual_value": 2.0})


# ---------------------------------------------------------------------------

def swap_not_differentiable_c2() -> WitnessReport:
    """(z, w) -> (w, z) on C^2 has no multiplier derivative at 0.

    Any candidate d makes the residual at h = (t, 0) equal |t| in the second
    coordinate where |h| vanishes; full-support steps show no such violation.
    """
    checks = _Checks()
    model = Model.finite(2)
    zero = ComplexElement.constant(model, 0)

    def swap(z: ComplexElement) -> ComplexElement:
        return ComplexElement(model, (z.coord(1), z.coord(0)), None)

    candidates = [
        ComplexElement.finite([1, 1]),
        ComplexElement.finite([0, 0]),
        ComplexElement.finite([1j, 3]),
        ComplexElement.finite([2.5 - 1j, -0.75]),
    ]
    h = ComplexElement.finite([0.1, 0])
    for d in candidates:
        rep = super_order_check(swap, zero, d, [h])
        ok = (rep.verdict == "REFUTED"
              and rep.violations[0].coordinate == 1
              and rep.violations[0].residual_value == 0.1)
        checks.expect(ok, "residual 0.1 at coordinate 1 where |h| = 0")
    h_sym = ComplexElement.finite([0, 0.1])
    rep_sym = super_order_check(swap, zero, candidates[0], [h_sym])
    checks.expect(rep_sym.verdict == "REFUTED" and rep_sym.violations[0].coordinate == 0,
                  "symmetric step violates at coordinate 0")
    full = ComplexElement.finite([0.1, 0.1])
    rep_full = super_order_check(swap, zero, candidates[0], [full])
    checks.expect(rep_full.verdict == "CONSISTENT",
                  "full-support step shows no support violation for d = e")

    verdict = REPRODUCED if checks.all_ok else FAILED
    lines = [
        "swap(z, w) = (w, z) at 0; candidates d include e, 0, and generic points",
        "step h = (0.1, 0): residual coordinate 1 equals 0.1, bound coordinate 1 equals 0",
        "step h = (0, 0.1): violation moves to coordinate 0",
        "step h = (0.1, 0.1) with d = e: residual vanishes (no support violation)",
    ] + [f"FAILED: {d}" for d in checks.failures()]
    return WitnessReport("swap", verdict, lines,
                         {"residual_value": 0.1, "violation_coordinate": 1})


# ---------------------------------------------------------------------------

def _fkl(k: int, l: int) -> ComplexElement:
    return _seq_ones(k, 1.0 / l)


def _gk(k: int) -> RealElement:
    return RealElement(SEQ, (0.0,) * k, 1.0)


def fkl_inverse_net_diverges() -> WitnessReport:
    """f_{k,l} (k ones, then 1/l) converges to e but the inverses diverge.

    The inverses have tail l; past any threshold (k0, l0) the tail grows
    beyond every candidate order bound u, so no regulator exists.
    """
    checks = _Checks()
    e = unit(SEQ).as_complex()

    for m in range(4):
        for k in (m, m + 1, m + 3):
            for l in (1, 2, 5, 50):
                d = (_fkl(k, l) - e).modulus()
                checks.expect(d.leq(_gk(m)) == (k >= m),
                              f"|f_{{{k},{l}}} - e| <= g_{m} iff k >= {m}")
    d25 = (_fkl(2, 5) - e).modulus()
    checks.expect(d25 == RealElement(SEQ, (0.0, 0.0), 1.0 - 1.0 / 5.0),
                  "|f_{2,5} - e| is (0, 0, then 4/5) exactly")

    samples = []
    bounds = [
        (RealElement(SEQ, (), 100.0), (3, 1)),
        (unit(SEQ), (2, 0)),
        (RealElement(SEQ, (50.0, 60.0, 70.0, 80.0, 90.0), 7.5), (2, 3)),
    ]
    for u, (k0, l0) in bounds:
        t = u.tail
        l_star = math.ceil(t) + l0 + 1
        idx = max(k0, len(u.prefix))
        f_inv = inverse(_fkl(k0, l_star))
        value = abs(f_inv.coord(idx))
        checks.expect(l_star >= l0 and value > u.coord(idx),
                      f"|f_{{{k0},{l_star}}}^-1| exceeds the bound at index {idx}")
        samples.append({"tail": t, "threshold": (k0, l0), "l": l_star,
                        "index": idx, "value": value})

    verdict = REPRODUCED if checks.all_ok else FAILED
    lines = [
        "f_{k,l} = (k ones, then 1/l) order converges to e with regulator g_k",
        "|f_{2,5} - e| = (0, 0, then 4/5) <= g_2, exactly",
        "inverses have tail l; for a bound with tail t take l = ceil(t) + l0 + 1",
    ] + [f"bound tail {s['tail']}, threshold {s['threshold']}: l = {s['l']} "
         f"violates at index {s['index']} (value {s['value']:g})" for s in samples] \
      + [f"FAILED: {d}" for d in checks.failures()]
    return WitnessReport("fkl", verdict, lines, {"samples": samples})


# ---------------------------------------------------------------------------

def linf_inversion_not_sigma_continuous() -> WitnessReport:
    """On bounded sequences, z_k = f_{k,k} -> e but z_k^{-1} is unbounded.

    Inversion is therefore not sigma order continuous there, although each
    z_k and the limit are invertible.
    """
    checks = _Checks()
    e = unit(SEQ).as_complex()

    cert = ConvergenceCertificate(regulator=_gk, threshold=lambda m: max(m - 1, 0),
                                  levels=8)
    verdict_conv = verify_certificate(lambda n: _fkl(n + 1, n + 1), e, cert, 40)
    checks.expect(verdict_conv.confirmed, "z_k -> e with regulator g_k")

    z5_inv = inverse(_fkl(5, 5))
    checks.expect(z5_inv.tail == 5.0, "z_5^{-1} has tail exactly 5")

    samples = []
    bounds = [
        (RealElement(SEQ, (), 10.0), 3),
        (RealElement(SEQ, (1000.0, 1000.0), 2.5), 1),
        (unit(SEQ), 7),
    ]
    for u, big_k in bounds:
        t = u.tail
        k_star = max(big_k, math.ceil(t) + 1)
        idx = max(k_star, len(u.prefix))
        value = abs(inverse(_fkl(k_star, k_star)).coord(idx))
        checks.expect(k_star >= big_k and value > u.coord(idx),
                      f"|z_{k_star}^-1| exceeds the bound at index {idx}")
        samples.append({"tail": t, "after": big_k, "k": k_star,
                        "index": idx, "value": value})

    verdict = REPRODUCED if checks.all_ok else FAILED
    lines = [
        "z_k = f_{k,k} converges to e (certificate confirmed)",
        "z_k^{-1} has tail k: no candidate bound u survives past k > max(K, tail(u))",
    ] + [f"bound tail {s['tail']}, from K = {s['after']}: k = {s['k']} violates "
         f"at index {s['index']} (value {s['value']:g})" for s in samples] \
      + [f"FAILED: {d}" for d in checks.failures()]
    return WitnessReport("linf", verdict, lines, {"samples": samples})


def finite_inversion_sigma_continuous(seed: int = 7) -> WitnessReport:
    """Contrast: in C^8 inversion is sigma order continuous at invertible points.

    For z_j = c (1 + 1/(j+2)) the inverses are order bounded by u and
    |z_j^{-1} - c^{-1}| <= (1/(j+2)) |c^{-1}| u |c| =: q_j with q_j
    nonincreasing to 0; the certificate verifier confirms the bound.
    """
    checks = _Checks()
    model = Model.finite(8)
    rng = np.random.default_rng(seed)
    mags = rng.uniform(0.5, 2.0, model.size)
    args = rng.uniform(0.0, 2.0 * math.pi, model.size)
    c = ComplexElement(model, tuple(m * complex(math.cos(a), math.sin(a))
                                    for m, a in zip(mags, args)), None)
    checks.expect(is_invertible(c), "the limit point is invertible")
    c_inv = inverse(c)

    def z(j: int) -> ComplexElement:
        return c + c.scale(1.0 / (j + 2))

    depth = 40
    # |z_j^{-1}| = |c^{-1}| / (1 + 1/(j+2)) < |c^{-1}|; inflate for roundoff.
    u = 1.000001 * c_inv.modulus()
    for j in range(depth + 1):
        checks.expect(inverse(z(j)).modulus().leq(u),
                      f"|z_{j}^-1| stays below the order bound")
    p = c_inv.modulus() * u * c.modulus()

    cert = ConvergenceCertificate(regulator=lambda m: (1.0 / (m + 2)) * p,
                                  threshold=lambda m: m, levels=20)
    verdict_conv = verify_certificate(lambda j: inverse(z(j)), c_inv, cert, depth)
    checks.expect(verdict_conv.confirmed,
                  "|z_j^{-1} - c^{-1}| <= q_j for all checked j")

    verdict = PASSED if checks.all_ok else FAILED
    lines = [
        "C^8, z_j = c (1 + 1/(j+2)) -> c with c invertible",
        "inverses are order bounded; q_j = (1/(j+2)) |c^{-1}| u |c| regulates them",
        f"certificate confirmed over {verdict_conv.pairs_checked} (level, index) pairs",
    ] + [f"FAILED: {d}" for d in checks.failures()]
    return WitnessReport("finite-contrast", verdict, lines, {"depth": depth})


# ---------------------------------------------------------------------------

def disk_strict_inequality_not_open() -> WitnessReport:
    """{|x| < r} with the lattice strict order is not order open.

    (1, 0) satisfies |(1,0)| < (1,1) but every disk around it pokes out:
    the point (1 + s_0/2, 0) lies in the disk of radius s yet violates the
    strict inequality in the first coordinate.
    """
    checks = _Checks()
    model = Model.finite(2)
    r = RealElement.finite([1.0, 1.0])
    p0 = ComplexElement.finite([1, 0])
    m0 = p0.modulus()
    checks.expect(m0.leq(r) and m0 != r, "|(1,0)| < (1,1) in the lattice order")

    radii = [(0.2, 0.2), (1e-6, 1.0), (3.0, 0.5), (0.05, 2.0)]
    samples = []
    for s0, s1 in radii:
        s = RealElement.finite([s0, s1])
        viol = p0 + ComplexElement.finite([s0 / 2.0, 0])
        inside = disk_membership(viol, OrderDisk(p0, s, is_open=True))
        mv = viol.modulus()
        escapes = not (mv.leq(r) and mv != r)
        checks.expect(inside, f"(1 + {s0}/2, 0) lies in the open disk of radius ({s0}, {s1})")
        checks.expect(escapes and mv.coord(0) > 1.0,
                      "its modulus exceeds 1 in the first coordinate")
        samples.append({"radius": (s0, s1), "first_coordinate": mv.coord(0)})

    excluded = not strictly_dominates(r, m0)
    checks.expect(excluded, "(1,0) is correctly outside the order-open disk of radius (1,1)")
    gap = r - m0
    checks.expect(gap.is_positive and not is_invertible(gap),
                  "r - |(1,0)| = (0, 1) is positive but not invertible")

    verdict = REPRODUCED if checks.all_ok else FAILED
    lines = [
        "S = {x : |x| <= (1,1), |x| != (1,1)} contains (1, 0)",
        "for every invertible radius s the point (1 + s_0/2, 0) lies in the "
        "disk around (1,0) but outside S",
    ] + [f"radius {s['radius']}: first coordinate reaches {s['first_coordinate']!r}"
         for s in samples] \
      + ["the order-open disk construction excludes (1,0): (1,1) - |(1,0)| "
         "is not invertible"] \
      + [f"FAILED: {d}" for d in checks.failures()]
    return WitnessReport("disk", verdict, lines, {"samples": samples})


# ---------------------------------------------------------------------------

REGISTRY = {
    "shift": shift_not_super_differentiable,
    "swap": swap_not_differentiable_c2,
    "fkl": fkl_inverse_net_diverges,
    "linf": linf_inversion_not_sigma_continuous,
    "disk": disk_strict_inequality_not_open,
    "finite-contrast": finite_inversion_sigma_continuous,
}


def run_all() -> list:
    return [fn() for fn in REGISTRY.values()]
