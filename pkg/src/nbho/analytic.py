"""Mass/coupling relations under which J is diagonal, and their closed forms.

Three relations are recognised, always for the particle labels as given:

* one-body proportionality ``k_i = rho * m_i``: F = rho * m * identity;
* row proportionality ``g_ij = g_1j * alpha_i / alpha_1`` (2 <= i < j):
  G is diagonal with entries given by :func:`nbho.jmatrix.g_diagonal_closed_form`;
* the product form ``g_ij = beta * m_i * m_j``, a special case of the row
  relation in which every frequency is ``sqrt(2 beta M)``.

No search over relabelings is attempted.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConditionNotSatisfied, UnstableSystem
from .jmatrix import g_diagonal_closed_form
from .model import ParticleSystem, QuantumState, alpha

__all__ = ["AnalyticCondition", "detect", "analytic_frequencies", "analytic_energy"]

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class AnalyticCondition:
    """Detected special relations; ``None`` marks a relation that does not hold."""

    one_body_rho: float | None
    two_body_row: tuple[float, ...] | None
    product_beta: float | None
    tolerance: float = DEFAULT_TOL

    def __post_init__(self):
        if self.product_beta is not None and self.two_body_row is None:
            raise ValueError("product_beta requires two_body_row")

    @property
    def fully_analytic(self) -> bool:
        """True when every coupling of the system is covered by a relation."""
        return self.one_body_rho is not None and self.two_body_row is not None


def _rho(system, tol):
    k = np.asarray(system.one_body)
    m = np.asarray(system.masses)
    rho = k[0] / m[0]
    scale = np.max(np.abs(k))
    if np.all(np.abs(k - rho * m) <= tol * scale):
        return float(rho)
    return None


def _row(system, u, tol):
    n = system.n_particles
    a = alpha(system)
    scale = np.max(np.abs(u)) if u.size else 0.0
    # |g_ij a_1 - g_1j a_i| for 2 <= i < j <= N
    residual = np.triu(u[1:, :] * a[0] - np.outer(a[1:], u[0, :]), k=2)
    if np.all(np.abs(residual) <= tol * a[0] * scale):
        return tuple(float(u[0, j]) for j in range(1, n))
    return None


def _beta(system, u, tol):
    m = np.asarray(system.masses)
    beta = u[0, 1] / (m[0] * m[1])
    scale = np.max(np.abs(u))
    residual = np.triu(u - beta * np.outer(m, m), k=1)
    if np.all(np.abs(residual) <= tol * scale):
        return float(beta)
    return None


def detect(system: ParticleSystem, tol: float = DEFAULT_TOL) -> AnalyticCondition:
    """Test the system's couplings for the special relations.

    Tolerances are relative to the largest coupling magnitude of each kind, so
    an all-zero set of couplings satisfies its relation with rho = 0 (or a
    zero row, and beta = 0).
    """
    u = system.coupling_matrix()
    rho = _rho(system, tol)
    row = _row(system, u, tol)
    beta = _beta(system, u, tol) if row is not None else None
    return AnalyticCondition(rho, row, beta, tol)


def _check_consistent(system, cond):
    tol = cond.tolerance
    k = np.asarray(system.one_body)
    m = np.asarray(system.masses)
    if cond.one_body_rho is None:
        if np.any(k != 0.0):
            raise ConditionNotSatisfied("system has one-body couplings but no rho was detected")
    else:
        scale = max(np.max(np.abs(k)), abs(cond.one_body_rho) * np.max(m))
        if np.any(np.abs(k - cond.one_body_rho * m) > tol * scale):
            raise ConditionNotSatisfied(f"k_i != {cond.one_body_rho!r} * m_i")

    u = system.coupling_matrix()
    if cond.two_body_row is None:
        if np.any(u != 0.0):
            raise ConditionNotSatisfied("system has two-body couplings but no row condition was detected")
        return
    row = np.asarray(cond.two_body_row, dtype=float)
    if row.shape != (system.n_particles - 1,):
        raise ConditionNotSatisfied(f"two_body_row has {row.size} entries for {system.n_particles} particles")
    scale = max(np.max(np.abs(u)), np.max(np.abs(row)))
    if np.any(np.abs(u[0, 1:] - row) > tol * scale):
        raise ConditionNotSatisfied("two_body_row does not match g_1j")
    if _row(system, u, tol) is None:
        raise ConditionNotSatisfied("g_ij != g_1j alpha_i / alpha_1")


def analytic_frequencies(system: ParticleSystem, cond: AnalyticCondition) -> np.ndarray:
    """Frequencies in mode order from the closed form, without diagonalizing.

    ``omega_i = sqrt(2) * sqrt(rho + G_i / m)`` where ``G_i`` is the
    diagonal entry of G under the row relation; either contribution is
    dropped if its relation is absent (its couplings must then vanish).
    """
    _check_consistent(system, cond)
    m = system.mass_scale
    rho = cond.one_body_rho or 0.0
    if cond.two_body_row is None:
        g_part = np.zeros(system.n_modes)
    else:
        g_part = g_diagonal_closed_form(system, cond.two_body_row) / m
    radicand = rho + g_part
    for idx, value in enumerate(radicand):
        if not value > 0.0:
            raise UnstableSystem(idx, float(m * value))
    return math.sqrt(2.0) * np.sqrt(radicand)


def analytic_energy(system: ParticleSystem, cond: AnalyticCondition, state: QuantumState) -> float:
    """Energy of ``state`` from the closed-form frequencies.

    The state's modes are matched to frequencies in ascending order, the same
    convention as :class:`nbho.eigen.Spectrum`, so the result is comparable
    with :func:`nbho.spectrum.energy` on the diagonalized J.
    """
    q = state.q_values(system.dimension, system.n_modes)
    omega = np.sort(analytic_frequencies(system, cond))
    return float(np.dot(omega, q))
