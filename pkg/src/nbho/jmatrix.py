"""Closed-form assembly of the internal-mode matrix J = F + G.

The frequencies of the N-1 decoupled oscillators follow from the eigenvalues
d_i of a symmetric matrix of order N-1,

    d_i = m * omega_i**2 / 2,

where F collects the one-body couplings k_i and G the pair couplings g_ij.
Both are assembled entry by entry from partial sums of the mass ratios
alpha_i = m_i / m and of the couplings; no Jacobi-coordinate transform is
formed.

Index conventions: mode ``r`` (0-based) is mode ``i = r + 1`` in the 1-based
formulas below, and arrays ``a``/``s`` hold ``a[p] = alpha_{p+1}`` and
``s[p] = alpha_1 + ... + alpha_{p+1}``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ParticleSystem, alpha

__all__ = ["JMatrix", "build_F", "build_G", "build_J", "lambda_factors", "g_diagonal_closed_form"]


@dataclass(frozen=True)
class JMatrix:
    F: np.ndarray
    G: np.ndarray
    J: np.ndarray

    @property
    def n_modes(self) -> int:
        return self.J.shape[0]


def lambda_factors(a: np.ndarray) -> np.ndarray:
    """lambda_j = sqrt(alpha_{1..j+1} / (alpha_{1..j} alpha_{j+1})) for j = 1..N-1.

    Equivalently sqrt(1/alpha_{1..j} + 1/alpha_{j+1}); strictly positive.
    """
    s = np.cumsum(a)
    return np.sqrt(s[1:] / (s[:-1] * a[1:]))


def _lower_pairs(n_modes):
    # (i, j) with j < i, both 1-based mode labels
    rows, cols = np.tril_indices(n_modes, k=-1)
    return rows + 1, cols + 1


def build_F(system: ParticleSystem) -> np.ndarray:
    """One-body contribution F.

    Diagonal (1 <= i <= N-1)::

        F_ii = [k_{i+1} s_i^2 + K_i a_{i+1}^2] / (s_i s_{i+1} a_{i+1})

    Off-diagonal (j < i)::

        F_ij = Gamma_F * (K_j a_{j+1} - k_{j+1} s_j) / (s_{j+1} s_i)

    with s_i = alpha_{1..i}, K_j = k_1 + ... + k_j and
    Gamma_F = sqrt(s_{j+1} s_i a_{i+1} / (s_{i+1} s_j a_{j+1})) = lambda_j / lambda_i.
    """
    a = alpha(system)
    k = np.asarray(system.one_body, dtype=float)
    n_modes = system.n_modes
    s = np.cumsum(a)
    kc = np.cumsum(k)
    lam = lambda_factors(a)

    # 1-based helpers over arrays stored 0-based
    A = lambda p: a[p - 1]
    S = lambda p: s[p - 1]
    K = lambda p: kc[p - 1]
    k1 = lambda p: k[p - 1]

    i = np.arange(1, n_modes + 1)
    F = np.diag((k1(i + 1) * S(i) ** 2 + K(i) * A(i + 1) ** 2) / (S(i) * S(i + 1) * A(i + 1)))

    i, j = _lower_pairs(n_modes)
    if i.size:
        gamma = lam[j - 1] / lam[i - 1]
        off = gamma * (K(j) * A(j + 1) - k1(j + 1) * S(j)) / (S(j + 1) * S(i))
        F[i - 1, j - 1] = off
        F[j - 1, i - 1] = off
    return F


def _coupling_sums(u):
    """Partial sums of the strictly upper-triangular coupling array ``u``.

    Returned arrays are indexed with 1-based particle labels:

    col_head[j, c] = sum_{l=1}^{j} g_{l,c}          (shape (N+1, N+1))
    row_tail[r, c] = sum_{l=c}^{N} g_{r,l}          (shape (N+1, N+2))
    block[j, c]    = sum_{l=1}^{j} sum_{m=c}^{N} g_{l,m}  (shape (N+1, N+2))

    Sums over empty ranges are exactly zero.
    """
    n = u.shape[0]
    col_head = np.zeros((n + 1, n + 1))
    col_head[1:, 1:] = np.cumsum(u, axis=0)
    row_tail = np.zeros((n + 1, n + 2))
    row_tail[1:, 1 : n + 1] = np.cumsum(u[:, ::-1], axis=1)[:, ::-1]
    block = np.zeros((n + 1, n + 2))
    block[1:, :] = np.cumsum(row_tail[1:, :], axis=0)
    return col_head, row_tail, block


def build_G(system: ParticleSystem) -> np.ndarray:
    """Two-body contribution G.

    Diagonal::

        G_ii =   [sum_{m>i} sum_{l<=i} g_lm] / s_i
               - [sum_{m>i+1} sum_{l<=i+1} g_lm] / s_{i+1}
               + [sum_{l<=i} g_{l,i+1}] / a_{i+1}
               + [sum_{l>i+1} g_{i+1,l}] / a_{i+1}

    Off-diagonal (j < i)::

        G_ij = Gamma_G * [  a_{j+1} s_i     sum_{l<=j} g_{l,i+1}
                          - a_{i+1} s_j     sum_{l>i+1} g_{j+1,l}
                          + a_{i+1} a_{j+1} sum_{m>i} sum_{l<=j} g_lm
                          - s_{i+1} s_j     g_{j+1,i+1} ]

    with Gamma_G = lambda_j lambda_i / (s_{i+1} s_{j+1}). Pairs with equal
    labels, or labels past N, contribute zero.
    """
    a = alpha(system)
    n_modes = system.n_modes
    s = np.cumsum(a)
    lam = lambda_factors(a)
    u = system.coupling_matrix()
    col_head, row_tail, block = _coupling_sums(u)

    A = lambda p: a[p - 1]
    S = lambda p: s[p - 1]

    i = np.arange(1, n_modes + 1)
    diag = (
        block[i, i + 1] / S(i)
        - block[i + 1, i + 2] / S(i + 1)
        + col_head[i, i + 1] / A(i + 1)
        + row_tail[i + 1, i + 1] / A(i + 1)
    )
    G = np.diag(diag)

    i, j = _lower_pairs(n_modes)
    if i.size:
        gamma = lam[j - 1] * lam[i - 1] / (S(i + 1) * S(j + 1))
        bracket = (
            A(j + 1) * S(i) * col_head[j, i + 1]
            - A(i + 1) * S(j) * row_tail[j + 1, i + 2]
            + A(i + 1) * A(j + 1) * block[j, i + 1]
            - S(i + 1) * S(j) * u[j, i]
        )
        off = gamma * bracket
        G[i - 1, j - 1] = off
        G[j - 1, i - 1] = off
    return G


def build_J(system: ParticleSystem) -> JMatrix:
    F = build_F(system)
    G = build_G(system)
    return JMatrix(F=F, G=G, J=F + G)


def g_diagonal_closed_form(system: ParticleSystem, row=None) -> np.ndarray:
    """Eigenvalues of G when g_ij = g_1j alpha_i / alpha_1, in mode order.

    ``[(g_{1,i+2} + ... + g_{1,N}) a_{i+1} + g_{1,i+1} s_{i+1}] / (a_1 a_{i+1})``

    ``row`` overrides the first-row couplings (g_12, ..., g_1N); by default
    they are read from the system.
    """
    a = alpha(system)
    s = np.cumsum(a)
    n = system.n_particles
    if row is None:
        row = [system.g(1, j) for j in range(2, n + 1)]
    g1 = np.zeros(n + 1)
    g1[2:] = np.asarray(row, dtype=float)  # g1[j] = g_1j
    tail = np.zeros(n + 2)
    tail[: n + 1] = np.cumsum(g1[::-1])[::-1]  # tail[j] = sum_{l>=j} g_1l
    i = np.arange(1, n)
    return (tail[i + 2] * a[i] + g1[i + 1] * s[i]) / (a[0] * a[i])
