"""Independent check of the spectrum from the full N-coordinate potential.

The potential of one Cartesian component,

    V(x) = sum_i k_i (x_i - X)^2 + sum_{i<j} g_ij (x_i - x_j)^2,
    X = sum_i m_i x_i / M,

is written as V = x^T A x / 2. The normal-mode frequencies are the square
roots of the eigenvalues of the mass-weighted Hessian M^{-1/2} A M^{-1/2};
translation invariance leaves one zero eigenvalue (the centre of mass), and
the other N-1 must reproduce the frequencies obtained from J.

Nothing here touches mass ratios, Jacobi coordinates, or the rotation
eigensolver: the eigenproblem is handed to LAPACK through numpy.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .eigen import Spectrum
from .errors import Mismatch, UnstableSystem, WrongZeroModeCount
from .model import ParticleSystem

__all__ = ["NormalModeReport", "potential", "hessian", "normal_modes", "cross_check", "random_system"]


@dataclass(frozen=True)
class NormalModeReport:
    omega_oracle: tuple[float, ...]
    zero_modes: int
    max_relative_deviation: float | None = None


def potential(system: ParticleSystem, x, number=float):
    """Evaluate V at positions ``x`` (one Cartesian component per particle).

    ``number`` converts every parameter before use; pass
    ``fractions.Fraction`` to evaluate exactly.
    """
    m = [number(v) for v in system.masses]
    k = [number(v) for v in system.one_body]
    x = [number(v) for v in x]
    total = sum(m, number(0))
    com = sum((mi * xi for mi, xi in zip(m, x)), number(0)) / total
    v = sum((ki * (xi - com) ** 2 for ki, xi in zip(k, x)), number(0))
    for (i, j), g in system.two_body.items():
        v += number(g) * (x[i - 1] - x[j - 1]) ** 2
    return v


def hessian(system: ParticleSystem) -> np.ndarray:
    """Second derivatives of V with respect to the N particle coordinates.

    With w = m / M and K = sum_c k_c, differentiating the gradient
    dV/dx_a = 2 k_a (x_a - X) - 2 w_a sum_c k_c (x_c - X) + (pair terms) gives

        A_ab = 2 k_a (delta_ab - w_b) - 2 w_a (k_b - K w_b)
               + 2 sum_{c != a} g_ac delta_ab - 2 g_ab (1 - delta_ab).
    """
    m = np.asarray(system.masses)
    k = np.asarray(system.one_body)
    w = m / m.sum()
    n = m.size
    eye = np.eye(n)
    a = 2.0 * k[:, None] * (eye - w[None, :]) - 2.0 * w[:, None] * (k[None, :] - k.sum() * w[None, :])

    u = system.coupling_matrix()
    g = u + u.T
    a += 2.0 * (np.diag(g.sum(axis=1)) - g)
    return a


def normal_modes(system: ParticleSystem) -> NormalModeReport:
    """Frequencies of the N-1 internal normal modes, ascending.

    Raises
    ------
    WrongZeroModeCount
        Unless exactly one eigenvalue lies within ``1e-10 * max(1, ||S||_F)``
        of zero.
    UnstableSystem
        If any other eigenvalue is negative.
    """
    m = np.asarray(system.masses)
    inv_sqrt = 1.0 / np.sqrt(m)
    s = hessian(system) * np.outer(inv_sqrt, inv_sqrt)
    lam = np.linalg.eigvalsh(s)
    threshold = 1e-10 * max(1.0, float(np.linalg.norm(s)))
    is_zero = np.abs(lam) <= threshold
    if np.count_nonzero(is_zero) != 1:
        raise WrongZeroModeCount(int(np.count_nonzero(is_zero)))
    internal = np.sort(lam[~is_zero])
    if internal[0] < 0.0:
        raise UnstableSystem(0, float(internal[0]), f"oracle found negative squared frequency {internal[0]!r}")
    return NormalModeReport(tuple(float(x) for x in np.sqrt(internal)), 1)


def cross_check(system: ParticleSystem, reference: Spectrum, tol: float = 1e-9) -> NormalModeReport:
    """Compare a J-derived spectrum with the normal modes; raise :class:`Mismatch` above ``tol``."""
    report = normal_modes(system)
    oracle = np.asarray(report.omega_oracle)
    ref = np.sort(np.asarray(reference.omega, dtype=float))
    if ref.shape != oracle.shape:
        raise Mismatch(float("inf"), tol)
    deviation = float(np.max(np.abs(oracle - ref) / ref))
    if not deviation <= tol:
        raise Mismatch(deviation, tol)
    return replace(report, max_relative_deviation=deviation)


def random_system(rng: np.random.Generator, n_particles=None, dimension=3) -> ParticleSystem:
    """Draw a stable random system.

    N uniform in 2..8 unless given, masses log-uniform in [0.1, 10],
    k_i uniform in [0, 2], every g_ij uniform in [0.1, 2].
    """
    n = int(rng.integers(2, 9)) if n_particles is None else n_particles
    masses = np.exp(rng.uniform(np.log(0.1), np.log(10.0), n))
    k = rng.uniform(0.0, 2.0, n)
    pairs = {(i, j): float(rng.uniform(0.1, 2.0)) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    return ParticleSystem(dimension, tuple(masses), tuple(k), pairs)
