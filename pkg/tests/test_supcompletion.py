import math

import pytest
from hypothesis import given, settings, strategies as st

from ordercalc import (
    ModelMismatchError,
    Band,
    Model,
    NegativeInputError,
    RealElement,
    ExtendedPositive,
    band_projection_from,
    ext_mul,
    extend_projection,
    finite_part,
    generalized_inverse,
    infinite_part,
    project_positive,
    three_part_decompose,
)

from oracles import stabilized_projection

INF = math.inf

ext_values = st.one_of(
    st.just(0.0),
    st.just(INF),
    st.floats(min_value=1e-6, max_value=1e6, allow_nan=False, allow_infinity=False),
)
ext_vectors = st.lists(ext_values, min_size=1, max_size=6)


def ex(values):
    return ExtendedPositive.finite(values)


# -- construction and validation ------------------------------------------------

def test_construction_validation():
    ex([0.0, 1.5, INF])
    with pytest.raises(NegativeInputError) as err:
        ex([1.0, -0.5])
    assert err.value.witness == 1
    with pytest.raises(TypeError):
        ex([1.0, 1j])
    with pytest.raises(NegativeInputError):
        ex([float("nan")])
    with pytest.raises(ModelMismatchError):
        ExtendedPositive(Model.sequence(), (1.0,))


def test_from_real_and_back():
    x = RealElement.finite([0.0, 2.0, 3.5])
    u = ExtendedPositive.from_real(x)
    assert u.coords == (0.0, 2.0, 3.5)
    assert u.as_real() == x
    with pytest.raises(ValueError):
        ex([1.0, INF]).as_real()
    with pytest.raises(NegativeInputError):
        ExtendedPositive.from_real(RealElement.finite([-1.0]))


def test_scalar_and_addition():
    u = ex([1.0, INF, 0.0])
    assert (2 * u).coords == (2.0, INF, 0.0)
    assert (0 * u).coords == (0.0, 0.0, 0.0)
    with pytest.raises(NegativeInputError):
        -1 * u
    assert (u + ex([1.0, 1.0, INF])).coords == (2.0, INF, INF)


def test_truncate_recovers_u():
    u = ex([3.0, INF, 0.0])
    assert u.truncate(2).coords == (2.0, 2.0, 0.0)
    # truncations increase to u on the finite part and grow without bound on
    # the infinite one
    for n in (1, 10, 1000):
        assert u.truncate(n).leq(u)
    assert u.truncate(10).coords[0] == 3.0


# -- decomposition -----------------------------------------------------------------

def test_three_part_decompose_bands():
    u = ex([2.0, INF, 0.0, 5.0])
    parts = three_part_decompose(u)
    assert parts.finite_band.indices == frozenset({0, 3})
    assert parts.infinite_band.indices == frozenset({1})
    assert parts.disjoint_band.indices == frozenset({2})


@given(ext_vectors)
@settings(deadline=None)
def test_decomposition_identities(values):
    u = ex(values)
    u_f = finite_part(u)
    u_i = infinite_part(u)
    # u = u_F + u_inf with the parts disjoint, u_F finite, m u_inf = u_inf
    assert ExtendedPositive.from_real(u_f) + u_i == u
    assert ExtendedPositive.from_real(u_f).inf(u_i).coords == (0.0,) * len(values)
    assert u_f.is_positive
    for m in (2, 7):
        assert m * u_i == u_i
    parts = three_part_decompose(u)
    all_indices = (parts.finite_band.indices | parts.infinite_band.indices
                   | parts.disjoint_band.indices)
    assert all_indices == frozenset(range(len(values)))


def test_band_projection_matches_stabilized_sup():
    u = ex([0.0, 1e-3, INF, 7.0])
    x = RealElement.finite([5.0, 8.0, 11.0, 0.25])
    projected = project_positive(u, x)
    oracle = stabilized_projection(x.prefix, u.coords)
    assert projected.prefix == oracle
    assert projected == RealElement.finite([0.0, 8.0, 11.0, 0.25])


@given(ext_vectors)
@settings(deadline=None)
def test_projection_oracle_random(values):
    u = ex(values)
    x = RealElement.finite([1.0 + i for i in range(len(values))])
    assert project_positive(u, x).prefix == stabilized_projection(x.prefix, u.coords)


def test_extend_projection_masks():
    u = ex([1.0, INF, 3.0])
    band = Band(u.model, frozenset({1, 2}))
    assert extend_projection(band, u).coords == (0.0, INF, 3.0)
    assert band_projection_from(u).indices == frozenset({0, 1, 2})
    assert band_projection_from(ex([0.0, 2.0, 0.0])).indices == frozenset({1})


# -- extended arithmetic -------------------------------------------------------------

def test_ext_mul_zero_times_inf():
    a = ex([0.0, INF, 2.0, 0.0])
    b = ex([INF, 0.0, 3.0, 0.0])
    assert ext_mul(a, b).coords == (0.0, 0.0, 6.0, 0.0)


@given(ext_vectors)
@settings(deadline=None)
def test_ext_mul_as_limit_of_truncations(values):
    u = ex(values)
    v = ex(list(reversed(values)))
    product = ext_mul(u, v)
    # the truncated (finite) products increase and stay below the extended one
    prev = None
    for n in (1, 4, 16, 64, 256):
        t = ExtendedPositive.finite(
            tuple(a * b for a, b in
                  zip(u.truncate(n).coords, v.truncate(n).coords)))
        assert t.leq(product)
        if prev is not None:
            assert prev.leq(t)
        prev = t
    # where both factors already sit below the truncation cap the limit is hit
    for i in range(len(values)):
        if u.coords[i] <= 256 and v.coords[i] <= 256:
            assert prev.coords[i] == product.coords[i]


def test_ext_mul_with_generalized_inverse():
    u = ex([0.0, 4.0, INF])
    assert ext_mul(u, generalized_inverse(u)).coords == (0.0, 1.0, 0.0)


@given(ext_vectors)
@settings(deadline=None)
def test_generalized_inverse_involution(values):
    u = ex(values)
    v = generalized_inverse(generalized_inverse(u))
    for a, b in zip(u.coords, v.coords):
        if math.isinf(a) or a == 0:
            assert a == b
        else:
            assert b == pytest.approx(a, rel=1e-15)


def test_generalized_inverse_swaps_bands():
    u = ex([0.0, 2.0, INF])
    v = generalized_inverse(u)
    assert v.coords == (INF, 0.5, 0.0)
    pu, pv = three_part_decompose(u), three_part_decompose(v)
    assert pu.disjoint_band.indices == pv.infinite_band.indices
    assert pu.infinite_band.indices == pv.disjoint_band.indices
    assert pu.finite_band.indices == pv.finite_band.indices
