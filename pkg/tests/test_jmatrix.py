import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nbho import ParticleSystem, alpha, build_F, build_G, build_J
from nbho.jmatrix import g_diagonal_closed_form, lambda_factors

from conftest import systems


def _off(a):
    return a - np.diag(np.diag(a))


def test_F_two_equal_masses():
    # alpha = (1, 1): F_11 = (k2 * 1 + k1 * 1) / (1 * 2 * 1)
    s = ParticleSystem(1, (1.0, 1.0), (0.3, 1.1))
    np.testing.assert_allclose(build_F(s), [[0.7]], rtol=1e-15)


def test_F_zero_couplings():
    s = ParticleSystem(3, (1.0, 2.0, 5.0, 0.5))
    np.testing.assert_array_equal(build_F(s), np.zeros((3, 3)))
    np.testing.assert_array_equal(build_G(s), np.zeros((3, 3)))


def test_F_proportional_to_masses_is_rho_m():
    s = ParticleSystem(3, (1.0, 2.0, 3.0), (0.5, 1.0, 1.5), mass_scale=1.0)
    np.testing.assert_allclose(build_F(s), 0.5 * np.eye(2), rtol=1e-14, atol=1e-15)


def test_G_two_body():
    m1, m2, g = 0.7, 2.3, 0.4
    s = ParticleSystem(1, (m1, m2), two_body={(1, 2): g}, mass_scale=1.3)
    a1, a2 = m1 / 1.3, m2 / 1.3
    np.testing.assert_allclose(build_G(s), [[g * (1 / a1 + 1 / a2)]], rtol=1e-15)


def test_G_identical_three():
    g = 0.8
    s = ParticleSystem(3, (1.0, 1.0, 1.0), two_body={(1, 2): g, (1, 3): g, (2, 3): g})
    np.testing.assert_allclose(build_G(s), 3 * g * np.eye(2), rtol=1e-14, atol=1e-15)


def test_J_product_form():
    m = (1.0, 2.0, 3.0)
    s = ParticleSystem(3, m, two_body={(i, j): 2.0 * m[i - 1] * m[j - 1] for i in (1, 2, 3) for j in (1, 2, 3) if i < j},
                       mass_scale=1.0)
    jm = build_J(s)
    np.testing.assert_allclose(jm.J, 12.0 * np.eye(2), rtol=1e-14, atol=1e-13)
    np.testing.assert_array_equal(jm.J, jm.G)


def test_J_is_F_plus_G_and_reduces():
    s = ParticleSystem(2, (1.0, 3.0, 0.2), (0.1, -0.4, 0.9), {(1, 3): 0.5, (2, 3): -0.2})
    jm = build_J(s)
    np.testing.assert_array_equal(jm.J, jm.F + jm.G)
    assert jm.n_modes == 2
    k_only = ParticleSystem(2, s.masses, s.one_body)
    np.testing.assert_array_equal(build_J(k_only).J, build_F(k_only))
    g_only = ParticleSystem(2, s.masses, two_body=dict(s.two_body))
    np.testing.assert_array_equal(build_J(g_only).J, build_G(g_only))


def test_empty_ranges_ignore_missing_tail():
    # last mode: the second term sums over m >= N + 1 and the fourth holds only g_33
    s = ParticleSystem(1, (1.0, 2.0, 3.0), two_body={(2, 3): 1.0})
    G = build_G(s)
    a = alpha(s)
    # (g13 + g23) / s2 - 0 + (g13 + g23) / a3 + 0
    s2 = a[0] + a[1]
    assert G[1, 1] == pytest.approx(1.0 / s2 + 1.0 / a[2], rel=1e-15)


@given(systems(max_n=10))
def test_symmetry(s):
    jm = build_J(s)
    for m in (jm.F, jm.G, jm.J):
        assert np.max(np.abs(m - m.T)) <= 1e-12 * max(1.0, np.linalg.norm(m))


@given(st.lists(st.floats(0.1, 10.0), min_size=2, max_size=10))
def test_gamma_positive(masses):
    lam = lambda_factors(np.asarray(masses))
    assert np.all(lam > 0)
    # Gamma_F = lambda_j / lambda_i and Gamma_G = lambda_j lambda_i / (s_{i+1} s_{j+1})
    assert np.all(np.outer(lam, 1 / lam) > 0)
    s = np.cumsum(masses)
    assert np.all(np.outer(lam, lam) / np.outer(s[1:], s[1:]) > 0)


@settings(max_examples=50)
@given(systems(max_n=9), st.floats(-3.0, 3.0), st.floats(0.05, 20.0))
def test_F_diagonal_condition(s, rho, scale):
    s = ParticleSystem(s.dimension, s.masses, tuple(rho * m for m in s.masses), mass_scale=scale)
    F = build_F(s)
    assert np.max(np.abs(_off(F)), initial=0.0) <= 1e-12 * (1 + abs(rho) * scale)
    np.testing.assert_allclose(np.diag(F), rho * scale, rtol=1e-12, atol=1e-300)


@settings(max_examples=50)
@given(systems(max_n=9, coupling=(-2.0, 2.0)))
def test_G_diagonal_condition(s):
    a = alpha(s)
    n = s.n_particles
    row = {j: s.g(1, j) for j in range(2, n + 1)}
    pairs = {(1, j): row[j] for j in row}
    pairs.update({(i, j): row[j] * a[i - 1] / a[0] for i in range(2, n + 1) for j in range(i + 1, n + 1)})
    s = ParticleSystem(s.dimension, s.masses, two_body=pairs)
    G = build_G(s)
    scale = max(1.0, np.linalg.norm(G))
    assert np.max(np.abs(_off(G)), initial=0.0) <= 1e-12 * scale
    expected = g_diagonal_closed_form(s)
    np.testing.assert_allclose(np.diag(G), expected, rtol=1e-12, atol=1e-14 * scale)
