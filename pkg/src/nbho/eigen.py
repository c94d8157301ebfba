"""Symmetric eigensolver and conversion of J eigenvalues to frequencies."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, NotSymmetric, UnstableSystem
from .jmatrix import JMatrix
from .model import ParticleSystem

__all__ = ["Spectrum", "eigen_symmetric", "spectrum_from_J"]

MAX_SWEEPS = 50


def eigen_symmetric(A, off_tol=1e-14, max_sweeps=MAX_SWEEPS):
    """Eigen-decompose a real symmetric matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    A : array_like, shape (n, n)
        Symmetric to within ``1e-10 * ||A||_F``; the symmetric part is used.
    off_tol : float
        Sweeps stop once the off-diagonal Frobenius norm is at most
        ``off_tol * ||A||_F``.
    max_sweeps : int
        Upper bound on the number of full sweeps.

    Returns
    -------
    w : ndarray, shape (n,)
        Eigenvalues in ascending order.
    V : ndarray, shape (n, n)
        Orthogonal matrix whose columns are the matching eigenvectors.

    Raises
    ------
    NotSymmetric
        If ``A`` is not square or not symmetric within tolerance.
    NoConvergence
        If ``max_sweeps`` sweeps do not reach ``off_tol``.
    """
    a = np.array(A, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSymmetric(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    norm = np.linalg.norm(a)
    if n and np.max(np.abs(a - a.T)) > 1e-10 * norm:
        raise NotSymmetric(f"asymmetry {np.max(np.abs(a - a.T)):.3e} exceeds 1e-10 * ||A||_F")
    a = 0.5 * (a + a.T)
    v = np.eye(n)
    target = off_tol * norm
    off_mask = ~np.eye(n, dtype=bool)

    def off_norm():
        return float(np.linalg.norm(a[off_mask]))

    sweeps = 0
    while off_norm() > target:
        if sweeps == max_sweeps:
            raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps (off-norm {off_norm():.3e})")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                # rotation angle zeroing a[p, q], smaller root for stability
                diff = a[q, q] - a[p, p]
                if abs(apq) < 1e-150 * abs(diff):
                    t = apq / diff
                else:
                    theta = diff / (2.0 * apq)
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0

                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq

    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues ``d`` of J and frequencies ``omega``, both ascending.

    ``omega_i = sqrt(2 d_i / m)`` with m the system's mass scale.
    Construct via :meth:`from_eigenvalues` to get the stability check.
    """

    d: tuple[float, ...]
    omega: tuple[float, ...]

    @classmethod
    def from_eigenvalues(cls, d, mass_scale: float) -> Spectrum:
        d = np.sort(np.asarray(d, dtype=float))
        for idx, value in enumerate(d):
            if not value > 0.0:
                raise UnstableSystem(idx, float(value))
        omega = np.sqrt(2.0 * d / mass_scale)
        return cls(tuple(float(x) for x in d), tuple(float(x) for x in omega))

    @property
    def n_modes(self) -> int:
        return len(self.omega)


def spectrum_from_J(jm: JMatrix, system: ParticleSystem) -> Spectrum:
    """Diagonalize J and convert its eigenvalues to frequencies.

    Raises :class:`UnstableSystem` if any eigenvalue is <= 0; a zero
    eigenvalue is an unbound internal mode, not a discrete level.
    """
    w, _ = eigen_symmetric(jm.J)
    return Spectrum.from_eigenvalues(w, system.mass_scale)
