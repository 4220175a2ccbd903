import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scalefield import bundle as B
from scalefield import covariant as C
from scalefield.scalars import ScalingError, canonical

ZERO_CF1 = B.ConnectionField.constant(1, 0.0, 0.0)
UNIT_SF1 = B.ScalingField(B.zero_field(1))
X1 = np.array([0.4])


def test_conn_coeff_examples():
    assert C.conn_coeff(ZERO_CF1, X1, 0, 0.01) == 1
    w = C.conn_coeff(B.ConnectionField.constant(1, 0.1, 0.0), X1, 0, 0.01)
    assert abs(w - math.exp(0.001)) <= 1e-15
    cf = B.ConnectionField.constant(1, 0.3, -1.7)
    assert abs(abs(C.conn_coeff(cf, X1, 0, 0.02)) - math.exp(0.006)) <= 1e-15


def test_position_derivative_zero_connection_is_empty():
    sec = B.Section(B.ScalingField(B.linear(1, 0.3)))
    assert C.d_section_pos_discrete(sec, ZERO_CF1, X1, 0, 1e-3).is_empty


def test_position_derivative_closed_form():
    cf = B.ConnectionField.constant(1, 0.1, 0.2)
    sec = B.Section(UNIT_SF1)
    h = 1e-3
    got = canonical(C.d_section_pos_discrete(sec, cf, X1, 0, h))
    expected = (cmath.exp((0.1 + 0.2j) * h) - 1) / h
    assert abs(got - expected) <= 1e-12
    assert abs(got - (0.1 + 0.2j)) <= 2 * h
    assert C.d_section_pos_continuum(sec, cf, X1, 0).value == 0.1 + 0.2j
    assert C.d_section_pos_continuum(sec, ZERO_CF1, X1, 0).value == 0


@pytest.mark.parametrize("a", [0.5, -1.2, 3.0])
def test_position_derivative_limit(a):
    cf = B.ConnectionField.constant(1, a, 0.0)
    sec = B.Section(UNIT_SF1)
    errs = [abs(canonical(C.d_section_pos_discrete(sec, cf, X1, 0, h)) - a) for h in (1e-2, 1e-3, 1e-4)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 1e-3


@pytest.mark.parametrize(
    "sf, expected",
    [
        (B.ScalingField.constant(1, 2 - 1j), 0),
        (B.ScalingField(B.linear(1, 0.3)), 0.3),
        (B.ScalingField(B.zero_field(1), B.linear(1, 1.7)), 1.7j),
    ],
)
def test_level_derivative_examples(sf, expected):
    assert abs(C.d_section_level_continuum(sf, X1, 0).value - expected) <= 1e-15


def test_level_derivative_discrete_closed_form():
    # gamma = 0.3 x: relativized neighbour gives (e^{0.3 h} - 1)/h
    sec = B.Section(B.ScalingField(B.linear(1, 0.3)))
    h = 1e-3
    got = canonical(C.d_section_level_discrete(sec, X1, 0, h))
    assert abs(got - (math.exp(0.3 * h) - 1) / h) <= 1e-9


def test_scalar_discrete_examples():
    psi = B.plane_wave(1, 2.0, complex_valued=True)
    h = 1e-3
    got = C.d_scalar_discrete(psi, UNIT_SF1, ZERO_CF1, X1, 0, h)
    fwd = (psi(X1 + h) - psi(X1)) / h
    assert abs(got - fwd) <= 1e-12
    c, a = 1.5 - 0.5j, 0.7
    const = B.constant(1, c)
    cf = B.ConnectionField.constant(1, a, 0.0)
    got = C.d_scalar_discrete(const, UNIT_SF1, cf, X1, 0, h)
    assert abs(got - c * (math.exp(a * h) - 1) / h) <= 1e-12


def test_scalar_continuum_examples():
    k = 2.0
    psi = B.plane_wave(1, k, complex_valued=True)
    assert abs(C.d_scalar_continuum(psi, UNIT_SF1, ZERO_CF1, X1, 0) - 1j * k * psi(X1)) <= 1e-15
    sf = B.ScalingField(B.linear(1, 0.3))
    cf = B.ConnectionField.constant(1, 0.1, 0.2)
    got = C.d_scalar_continuum(psi, sf, cf, X1, 0)
    assert abs(got - (1j * k + 0.1 + 0.2j + 0.3) * psi(X1)) <= 1e-14
    other = B.plane_wave(1, -1.0, complex_valued=True)
    assert abs(C.d_scalar_continuum(other, sf, cf, X1, 0) - got) > 0.1


def test_vector_continuum_examples():
    sf = B.ScalingField(B.gaussian(2, 0.4, [0.1, 0.2], 0.8), B.linear(2, [0.3, -0.2]))
    cf = B.ConnectionField([B.linear(2, [0.2, 0.1]), B.constant(2, 0.3)], [B.constant(2, 0.1), B.zero_field(2)])
    psi = B.plane_wave(2, [0.5, 1.5], complex_valued=True)
    x = np.array([[0.1, 0.2], [0.7, -0.3]])
    one = C.d_vector_continuum(B.VectorField((psi,)), sf, cf, x, 1)
    np.testing.assert_array_equal(one[..., 0], C.d_scalar_continuum(psi, sf, cf, x, 1))
    zsf = B.ScalingField(B.zero_field(2))
    zcf = B.ConnectionField.constant(2)
    vf = B.VectorField((psi, B.linear(2, [0.4, -0.9])))
    np.testing.assert_array_equal(C.d_vector_continuum(vf, zsf, zcf, x, 1), vf.d(x, 1))
    const = B.VectorField((B.constant(2, 1.5), B.constant(2, -2j)))
    acf = B.ConnectionField.constant(2, [0.6, 0.0])
    np.testing.assert_allclose(C.d_vector_continuum(const, zsf, acf, x, 0), 0.6 * const(x), rtol=1e-15)


def _random_fields(seed, dim=2):
    rng = np.random.default_rng(seed)

    def real():
        return B.gaussian(dim, rng.normal(0, 0.5), rng.uniform(-1, 1, dim), rng.uniform(0.5, 1.5)) + B.plane_wave(
            dim, rng.uniform(-2, 2, dim), rng.normal(0, 0.5), rng.uniform(0, 6)
        )

    sf = B.ScalingField(real(), real())
    cf = B.ConnectionField([real() for _ in range(dim)], [real() for _ in range(dim)])
    psi = B.plane_wave(dim, rng.uniform(-2, 2, dim), 1.0, 0.3, complex_valued=True) + real()
    return sf, cf, psi, rng.uniform(-1, 1, (10, dim))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**31))
def test_decomposition_identity(seed):
    sf, cf, psi, x = _random_fields(seed)
    for mu in range(2):
        lhs = C.d_scalar_continuum(psi, sf, cf, x, mu) - psi.d(x, mu)
        coef = cf.A[mu](x) + 1j * cf.B[mu](x) + sf.gamma.d(x, mu) + 1j * sf.phi.d(x, mu)
        np.testing.assert_allclose(lhs, coef * psi(x), rtol=1e-13, atol=1e-14)


def test_reduction_to_plain_derivative():
    sf = B.ScalingField.constant(2, 1.0)
    cf = B.ConnectionField.constant(2)
    psi = B.gaussian(2, 1.0, [0.2, 0.1], 0.7) + B.plane_wave(2, [1, 2], complex_valued=True)
    vf = B.VectorField((psi, B.linear(2, [0.3, 0.1])))
    x = np.random.default_rng(0).uniform(-1, 1, (15, 2))
    for mu in range(2):
        np.testing.assert_array_equal(C.d_scalar_continuum(psi, sf, cf, x, mu), psi.d(x, mu))
        np.testing.assert_array_equal(C.d_vector_continuum(vf, sf, cf, x, mu), vf.d(x, mu))


def test_real_kind_coefficients_real():
    sf = B.ScalingField(B.gaussian(1, 0.4, 0.7, 0.6), kind="real")
    cf = B.ConnectionField([B.plane_wave(1, 1.2, 0.3)], kind="real")
    sec = B.Section(sf)
    for h in (1e-2, 1e-3):
        assert C.d_section_discrete(sec, cf, X1, 0, h).sup.imag == 0
        assert np.imag(C.conn_coeff(cf, X1, 0, h)) == 0
        assert np.imag(C.transport_ratio(sf, cf, X1, 0, h)) == 0
    assert C.d_section_continuum(sec, cf, X1, 0).value.imag == 0


@pytest.mark.parametrize(
    "sf, constant",
    [
        (B.ScalingField.constant(2, 2j), True),
        (B.ScalingField(B.constant(2, 0.3), B.constant(2, -1.0)), True),
        (B.ScalingField(B.linear(2, [0.2, 0.0])), False),
        (B.ScalingField(B.zero_field(2), B.gaussian(2, 0.3, 0.0, 1.0)), False),
    ],
)
def test_level_tags_site_independent_iff_constant(sf, constant):
    lat = B.build_lattice(2, [6, 6], [0.2, 0.2])
    x = B.interior_positions(lat)
    psi = B.plane_wave(2, [1, 1], complex_valued=True)
    results = C.scalar_results(psi, sf, B.ConnectionField.constant(2, [0.1, 0.2]), x, 0)
    for r, p in zip(results, x):
        assert r.level == complex(sf(p))
    assert (len({r.level for r in results}) == 1) == constant == sf.is_constant(lat)


def test_product_section():
    sf = B.ScalingField.constant(2, 1.5)
    secS, secV = B.Section(sf), B.Section(sf)
    x = np.array([0.1, 0.2])
    zero = B.ConnectionField.constant(2)
    for part in C.d_product_section(secS, secV, zero, x, 0):
        assert part.is_empty
    cf = B.ConnectionField.constant(2, [0.7, 0.0])
    for part in C.d_product_section(secS, secV, cf, x, 0):
        assert abs(canonical(part) - 0.7) <= 1e-15
    sf2 = B.ScalingField(B.linear(2, [0.3, 0.1]), B.linear(2, [0.0, 0.5]))
    cf2 = B.ConnectionField.constant(2, [0.1, 0.2], [0.3, 0.4])
    a, b = C.d_product_section(B.Section(sf2), B.Section(sf2), cf2, x, 1)
    assert a == b
    assert abs(canonical(a) - (0.2 + 0.4j + 0.1 + 0.5j)) <= 1e-15
    with pytest.raises(ScalingError):
        C.d_product_section(B.Section(sf), B.Section(sf2), cf, x, 0)


def test_group_action_leaves_derivative_coefficient():
    sf = B.ScalingField(B.linear(1, 0.3), B.plane_wave(1, 0.5, 0.2))
    cf = B.ConnectionField.constant(1, 0.1, 0.2)
    sec = B.Section(sf)
    moved = B.group_act(2 - 3j, sec)
    d0 = C.d_section_continuum(sec, cf, X1, 0)
    d1 = C.d_section_continuum(moved, cf, X1, 0)
    assert d0.value == d1.value
    assert abs(d1.level - (2 - 3j) * d0.level) <= 1e-14


# ---- curl -----------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(B.FIELD_CATALOG))
def test_curl_of_gradient_small(name):
    lat = B.build_lattice(2, [32, 32], [0.1, 0.1])
    f = B.catalog_field(name, 2)
    grads = [B.sample_gradient(lat, f, mu) for mu in range(2)]
    curl = np.max(np.abs(C.curl_grid(grads, lat.spacing, 0, 1)))
    assert curl <= 5 * 0.01 * f.deriv_bound(4) + 1e-12


def test_curl_of_rotation_is_two():
    lat = B.build_lattice(2, [8, 8], [0.25, 0.25], origin=[-1, -1])
    x = lat.coords()
    vf = [-x[..., 1], x[..., 0]]
    for site in lat.interior_sites():
        assert abs(C.curl_check(vf, lat.spacing, tuple(site), 0, 1) - 2) <= 1e-12
    with pytest.raises(IndexError):
        C.curl_check(vf, lat.spacing, (0, 3), 0, 1)


def test_curl_order_two():
    f = B.gaussian(2, 1.0, [0.8, 0.8], 0.5)
    errs = []
    for n, h in ((17, 0.1), (33, 0.05)):
        lat = B.build_lattice(2, [n, n], [h, h])
        grads = [B.sample_gradient(lat, f, mu) for mu in range(2)]
        curl = C.curl_grid(grads, lat.spacing, 0, 1)
        # compare at the common physical point (0.5, 1.2), off the symmetry axis
        errs.append(abs(curl[round(0.5 / h) - 1, round(1.2 / h) - 1]))
    assert math.log2(errs[0] / errs[1]) >= 1.9
