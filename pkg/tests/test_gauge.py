import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scalefield import bundle as B
from scalefield import gauge as G

T = G.PAULI


def test_pauli_algebra():
    eps = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1, (1, 0, 2): -1, (2, 1, 0): -1, (0, 2, 1): -1}
    for j, k in itertools.product(range(3), repeat=2):
        comm = sum(2j * eps.get((j, k, l), 0) * T[l] for l in range(3))
        np.testing.assert_allclose(G.commutator(T[j], T[k]), comm, atol=1e-14)
        np.testing.assert_allclose(G.anticommutator(T[j], T[k]), 2 * (j == k) * G.IDENTITY, atol=1e-14)
    for t in T:
        np.testing.assert_array_equal(t, G.dagger(t))
        assert np.trace(t) == 0


def _const_psi(v):
    return B.VectorField((B.constant(2, v[0]), B.constant(2, v[1])))


def _gc_with_alpha3(value, g=1.0, dim=2, mu=0):
    z = B.zero_field(dim)
    alpha = [[z] * dim for _ in range(3)]
    alpha[2][mu] = B.constant(dim, value)
    return G.GaugeConfig(alpha, None, G.Couplings(g=g))


SF0 = B.ScalingField(B.zero_field(2))
CF0 = B.ConnectionField.constant(2)
X = np.array([[0.3, -0.2], [1.1, 0.4]])


def test_full_derivative_examples():
    psi = B.VectorField((B.plane_wave(2, [1, 2], complex_valued=True), B.linear(2, [0.3, -0.4])))
    out = G.full_covariant_derivative(psi, SF0, CF0, G.GaugeConfig.zero(2), X, 1)
    np.testing.assert_array_equal(out, psi.d(X, 1))
    out = G.full_covariant_derivative(_const_psi((1, 0)), SF0, CF0, _gc_with_alpha3(0.4, g=2), X, 0)
    np.testing.assert_allclose(out, np.broadcast_to([0.4j, 0], out.shape), atol=1e-15)


def test_alpha_zero_matches_scalar_connection():
    sf = B.ScalingField(B.linear(2, [0.2, 0.3]), B.linear(2, [0.1, -0.5]))
    cf = B.ConnectionField.constant(2, [0.4, 0.1], [0.7, -0.2])
    c = G.Couplings(g_a=2.0, g_b=0.5, g_g=1.5, g_d=3.0)
    gc = G.GaugeConfig.zero(2, c)
    psi = B.VectorField((B.plane_wave(2, [1, 2], complex_valued=True), B.linear(2, [0.3, -0.4])))
    out = G.full_covariant_derivative(psi, sf, cf, gc, X, 0)
    coef = 2.0 * 0.4 + 0.5j * 0.7 + 1.5 * 0.2 + 3.0j * 0.1
    np.testing.assert_allclose(out, psi.d(X, 0) + coef * psi(X), rtol=1e-14)


def test_u1_examples():
    E = np.array([0.3, -1.2, 2.0])
    np.testing.assert_array_equal(G.u1_transform(E, np.ones(3), np.zeros(3), 1.0), E)
    U = np.exp(1j * 0.8) * np.ones(3)
    np.testing.assert_allclose(G.u1_transform(E, U, np.zeros(3), 1.0), E, rtol=1e-15)
    x = np.array([[0.0], [0.5], [1.3]])
    gmap = G.u1_phase(B.linear(1, 0.5))
    out = G.u1_transform(E, gmap(x), gmap.d(x, 0), 1.0)
    np.testing.assert_allclose(out, E + 0.5j, atol=1e-15)
    with pytest.raises(G.GaugeError):
        G.u1_transform(E, 2 * np.ones(3), np.zeros(3), 1.0)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**31), st.floats(0.2, 5.0))
def test_u1_round_trip(seed, g1):
    rng = np.random.default_rng(seed)
    x = rng.uniform(-2, 2, (30, 2))
    theta = B.gaussian(2, rng.normal(0, 2), rng.uniform(-1, 1, 2), 0.7) + B.linear(2, rng.normal(0, 1, 2))
    gmap = G.u1_phase(theta)
    E = rng.normal(size=30)
    for mu in range(2):
        once = G.u1_transform(E, gmap(x), gmap.d(x, mu), g1)
        back = G.u1_transform(once, np.conj(gmap(x)), np.conj(gmap.d(x, mu)), g1)
        np.testing.assert_allclose(back, E, rtol=0, atol=1e-12)


def test_su2_identity_and_axis3_examples():
    alpha = np.array([0.3, -0.7, 1.1])
    np.testing.assert_allclose(G.su2_transform(alpha, G.IDENTITY, np.zeros((2, 2)), 1.3), alpha, atol=1e-15)
    gmap = G.su2_axis(B.linear(1, 0.5))
    x = np.array([[0.7]])
    out = G.su2_transform(np.zeros((1, 3)), gmap(x), gmap.d(x, 0), 2.0)
    np.testing.assert_allclose(out, [[0, 0, -0.5]], atol=1e-15)


@pytest.mark.parametrize("theta", [0.3, 1.0, -2.2])
def test_constant_axis3_rotation(theta):
    U = np.diag([np.exp(1j * theta), np.exp(-1j * theta)])
    alpha = np.array([0.4, -1.3, 0.9])
    out = G.su2_transform(alpha, U, np.zeros((2, 2)), 1.0)
    c, s = np.cos(2 * theta), np.sin(2 * theta)
    expected = [alpha[0] * c + alpha[1] * s, -alpha[0] * s + alpha[1] * c, alpha[2]]
    np.testing.assert_allclose(out, expected, atol=1e-14)


def test_su2_transform_rejects_inconsistent_derivative():
    with pytest.raises(G.GaugeError):
        G.su2_transform(np.zeros(3), G.IDENTITY, G.IDENTITY, 1.0)


@pytest.mark.parametrize("name", G.GAUGE_MAP_NAMES)
def test_catalog_maps_unitary_with_antihermitian_log_derivative(name):
    gmap = G.gauge_map_catalog(2)[name]
    x = np.random.default_rng(5).uniform(-1, 2, (40, 2))
    U = gmap(x)
    assert G.check_su2(U) <= 1e-12
    for mu in range(2):
        K = gmap.d(x, mu) @ G.dagger(U)
        np.testing.assert_allclose(K, -G.dagger(K), atol=1e-13)
        np.testing.assert_allclose(np.trace(K, axis1=-2, axis2=-1), 0, atol=1e-13)


@pytest.mark.parametrize("name", G.GAUGE_MAP_NAMES)
def test_catalog_derivatives_match_finite_differences(name):
    gmap = G.gauge_map_catalog(2)[name]
    x = np.random.default_rng(6).uniform(-1, 2, (10, 2))
    h = 1e-5
    for mu in range(2):
        e = np.zeros(2)
        e[mu] = h
        fd = (gmap(x + e) - gmap(x - e)) / (2 * h)
        np.testing.assert_allclose(fd, gmap.d(x, mu), atol=1e-8)


def test_residual_identity_and_constant():
    rng = np.random.default_rng(11)
    psi, sf, cf, gc = G.random_setup(rng, 2)
    cat = G.gauge_map_catalog(2)
    x = rng.uniform(0, 1.5, (50, 2))
    for mu in range(2):
        assert np.max(G.covariance_residual(psi, sf, cf, gc, cat["identity"], x, mu)) == 0
        assert np.max(G.covariance_residual(psi, sf, cf, gc, cat["constant"], x, mu)) <= 1e-12


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**31))
def test_residual_axis3_linear(seed):
    rng = np.random.default_rng(seed)
    psi, sf, cf, gc = G.random_setup(rng, 2)
    gmap = G.su2_axis(B.linear(2, [0.5, 0.0]))
    x = rng.uniform(0, 1.5, (50, 2))
    for mu in range(2):
        assert np.max(G.covariance_residual(psi, sf, cf, gc, gmap, x, mu)) <= 1e-10


def test_residual_detects_wrong_transform():
    # dropping the inhomogeneous term must break covariance
    rng = np.random.default_rng(2)
    psi, sf, cf, gc = G.random_setup(rng, 2)
    gmap = G.gauge_map_catalog(2)["tilted_gaussian"]
    x = rng.uniform(0, 1.5, (20, 2))
    U, dU = gmap(x), gmap.d(x, 0)
    coef = G.scaling_coefficient(sf, cf, gc, x, 0)
    g = gc.couplings.g
    before = G.apply_derivative(psi(x), psi.d(x, 0), coef, gc.alpha_at(x, 0), g)
    wrong = G.su2_transform(gc.alpha_at(x, 0), U, np.zeros_like(dU), g)
    new_psi = np.einsum("...ab,...b->...a", U, psi(x))
    new_grad = np.einsum("...ab,...b->...a", dU, psi(x)) + np.einsum("...ab,...b->...a", U, psi.d(x, 0))
    after = G.apply_derivative(new_psi, new_grad, coef, wrong, g)
    assert np.max(np.abs(after - np.einsum("...ab,...b->...a", U, before))) > 1e-3


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**31), st.complex_numbers(min_magnitude=0.1, max_magnitude=10))
def test_gl1_scaling_commutes_with_su2(seed, z):
    rng = np.random.default_rng(seed)
    psi, sf, cf, gc = G.random_setup(rng, 2)
    gmap = G.gauge_map_catalog(2)["two_axis_product"]
    x = rng.uniform(0, 1.5, (20, 2))
    U, dU = gmap(x), gmap.d(x, 1)
    coef = z * G.scaling_coefficient(sf, cf, gc, x, 1)
    g = gc.couplings.g
    before = G.apply_derivative(psi(x), psi.d(x, 1), coef, gc.alpha_at(x, 1), g)
    new_psi = np.einsum("...ab,...b->...a", U, psi(x))
    new_grad = np.einsum("...ab,...b->...a", dU, psi(x)) + np.einsum("...ab,...b->...a", U, psi.d(x, 1))
    after = G.apply_derivative(new_psi, new_grad, coef, G.su2_transform(gc.alpha_at(x, 1), U, dU, g), g)
    scale = 1 + np.max(np.abs(before))
    assert np.max(np.abs(after - np.einsum("...ab,...b->...a", U, before))) <= 1e-12 * scale


def test_reduce_examples():
    rng = np.random.default_rng(8)
    psi, _, _, gc = G.random_setup(rng, 2)
    x = rng.uniform(0, 1.5, (30, 2))
    for mu in range(2):
        assert G.reduce_to_standard(psi, gc, x, mu) <= 1e-12
        out = G.full_covariant_derivative(psi, SF0, CF0, G.GaugeConfig.zero(2, use_E=True), x, mu)
        np.testing.assert_array_equal(out, psi.d(x, mu))
    coef = G.scaling_coefficient(SF0, CF0, G.GaugeConfig.zero(2), x, 0)
    assert np.all(coef == 0)


def test_real_alpha_required():
    z = B.zero_field(1)
    with pytest.raises(ValueError):
        G.GaugeConfig([[B.plane_wave(1, 1.0, complex_valued=True)], [z], [z]])
    with pytest.raises(ValueError):
        G.Couplings(g=0)
