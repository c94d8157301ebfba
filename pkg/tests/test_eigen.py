import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from nbho import ParticleSystem, Spectrum, build_J, eigen_symmetric, spectrum_from_J
from nbho.errors import NoConvergence, NotSymmetric, UnstableSystem
from nbho.oracle import random_system

from conftest import systems


def test_diagonal_input():
    w, v = eigen_symmetric(np.diag([3.0, 1.0, 2.0]))
    np.testing.assert_array_equal(w, [1, 2, 3])
    np.testing.assert_array_equal(np.abs(v), np.eye(3)[:, [1, 2, 0]])


def test_two_by_two():
    # det([[2 - x, 1], [1, 2 - x]]) = (x - 1)(x - 3)
    w, v = eigen_symmetric([[2.0, 1.0], [1.0, 2.0]])
    np.testing.assert_allclose(w, [1.0, 3.0], rtol=1e-15)
    np.testing.assert_allclose(np.abs(v), np.full((2, 2), 1 / math.sqrt(2)), rtol=1e-15)


def test_scalar():
    w, v = eigen_symmetric([[4.5]])
    assert w.tolist() == [4.5] and v.tolist() == [[1.0]]


def test_zero_matrix():
    w, v = eigen_symmetric(np.zeros((3, 3)))
    np.testing.assert_array_equal(w, 0.0)
    np.testing.assert_array_equal(v, np.eye(3))


def test_rejects_asymmetric():
    with pytest.raises(NotSymmetric):
        eigen_symmetric([[1.0, 2.0], [0.0, 1.0]])
    with pytest.raises(NotSymmetric):
        eigen_symmetric(np.ones((2, 3)))


def test_reports_no_convergence():
    a = np.array([[1.0, 0.5, 0.2], [0.5, 2.0, 0.3], [0.2, 0.3, 3.0]])
    with pytest.raises(NoConvergence):
        eigen_symmetric(a, max_sweeps=1)


symmetric = st.integers(1, 12).flatmap(
    lambda n: arrays(np.float64, (n, n), elements=st.floats(-100, 100, allow_nan=False))
).map(lambda a: a + a.T)


@settings(max_examples=200)
@given(symmetric)
def test_decomposition_properties(a):
    w, v = eigen_symmetric(a)
    scale = max(1.0, np.linalg.norm(a))
    assert np.linalg.norm(a @ v - v * w) <= 1e-10 * scale
    assert np.linalg.norm(v.T @ v - np.eye(len(w))) <= 1e-10
    assert np.all(np.diff(w) >= 0)
    # independent route: LAPACK
    np.testing.assert_allclose(w, np.linalg.eigvalsh(a), atol=1e-12 * scale)


def test_degenerate_spectrum():
    q, _ = np.linalg.qr(np.random.default_rng(3).normal(size=(6, 6)))
    a = q @ np.diag([1.0, 1.0, 1.0, 2.0, 2.0, 5.0]) @ q.T
    w, v = eigen_symmetric(a)
    np.testing.assert_allclose(w, [1, 1, 1, 2, 2, 5], atol=1e-13)
    assert np.linalg.norm(v.T @ v - np.eye(6)) <= 1e-12


def test_large_matrix_converges():
    rng = np.random.default_rng(0)
    a = rng.normal(size=(40, 40))
    a = a + a.T
    w, _ = eigen_symmetric(a)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(a), atol=1e-12 * np.linalg.norm(a))


def test_spectrum_two_body():
    s = ParticleSystem(3, (1.0, 1.0), two_body={(1, 2): 0.5})
    spec = spectrum_from_J(build_J(s), s)
    # reduced mass 1/2: omega = sqrt(2 g / mu)
    np.testing.assert_allclose(spec.omega, [math.sqrt(2.0)], rtol=1e-15)


def test_spectrum_one_body_proportional():
    masses = (1.0, 0.3, 4.0, 2.5)
    s = ParticleSystem(1, masses, tuple(2.0 * m for m in masses), mass_scale=1.0)
    spec = spectrum_from_J(build_J(s), s)
    np.testing.assert_allclose(spec.omega, 2.0, rtol=1e-13)
    np.testing.assert_allclose(spec.d, 2.0, rtol=1e-13)


def test_zero_couplings_are_unstable():
    s = ParticleSystem(3, (1.0, 2.0, 3.0))
    with pytest.raises(UnstableSystem) as info:
        spectrum_from_J(build_J(s), s)
    assert info.value.value == 0.0


def test_spectrum_constructor_rejects_nonpositive():
    with pytest.raises(UnstableSystem):
        Spectrum.from_eigenvalues([1.0, -1e-3], 1.0)
    spec = Spectrum.from_eigenvalues([3.0, 1.0], 2.0)
    assert spec.d == (1.0, 3.0)
    np.testing.assert_allclose(np.square(spec.omega), np.asarray(spec.d), rtol=1e-14)


@settings(max_examples=50)
@given(systems(coupling=(-1.0, 1.0)))
def test_trace_preserved(s):
    jm = build_J(s)
    w, _ = eigen_symmetric(jm.J)
    tr = np.trace(jm.J)
    assert abs(w.sum() - tr) <= 1e-12 * max(abs(tr), np.linalg.norm(jm.J))


@settings(max_examples=50)
@given(st.randoms(use_true_random=False), st.sampled_from([1e-3, 0.37, 1.0, 42.0, 1e3]))
def test_mass_scale_invariance(rnd, scale):
    rng = np.random.default_rng(rnd.randrange(2**32))
    s = random_system(rng)
    ref = spectrum_from_J(build_J(s), s).omega
    t = s.with_mass_scale(scale)
    np.testing.assert_allclose(spectrum_from_J(build_J(t), t).omega, ref, rtol=1e-10)


@settings(max_examples=50)
@given(st.randoms(use_true_random=False))
def test_permutation_invariance(rnd):
    rng = np.random.default_rng(rnd.randrange(2**32))
    s = random_system(rng)
    ref = spectrum_from_J(build_J(s), s).d
    t = s.relabeled(rng.permutation(s.n_particles))
    np.testing.assert_allclose(spectrum_from_J(build_J(t), t).d, ref, rtol=1e-10)
