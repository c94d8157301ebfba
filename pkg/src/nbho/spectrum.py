"""Energies E = sum_i omega_i Q_i and level tables with degeneracies."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, prod

import numpy as np

from .eigen import Spectrum
from .errors import CutoffTooLow, DimensionMismatch
from .model import QuantumState

__all__ = ["EnergyLevel", "energy", "enumerate_levels", "cartesian_degeneracy"]

MERGE_TOL = 1e-10


@dataclass(frozen=True)
class EnergyLevel:
    """One distinct energy.

    ``quanta`` is the first per-mode quanta tuple found at this energy and
    ``configurations`` lists every tuple that was merged into the level.
    """

    energy: float
    quanta: tuple[int, ...]
    degeneracy: int
    configurations: tuple[tuple[int, ...], ...] = ()


def energy(spec: Spectrum, state: QuantumState, dimension: int) -> float:
    q = state.q_values(dimension, spec.n_modes)
    return float(np.dot(spec.omega, q))


def cartesian_degeneracy(quanta: int, dimension: int) -> int:
    """Number of D-dimensional isotropic oscillator states with ``quanta`` total quanta."""
    return comb(quanta + dimension - 1, dimension - 1)


def enumerate_levels(spec: Spectrum, dimension: int, e_max: float) -> list[EnergyLevel]:
    """All distinct energies up to ``e_max``, ascending.

    States are grouped by per-mode quanta N_i (n_i in 1D, 2 n_i + l_i
    otherwise); each group contributes prod_i C(N_i + D - 1, D - 1) states.
    Energies within ``1e-10 * (1 + |E|)`` of each other are merged.
    """
    omega = np.asarray(spec.omega, dtype=float)
    if omega.size == 0:
        raise DimensionMismatch("spectrum has no modes")
    ground = float(np.sum(omega)) * dimension / 2.0
    if e_max < ground:
        raise CutoffTooLow(f"e_max = {e_max!r} is below the ground-state energy {ground!r}")
    limit = e_max + MERGE_TOL * (1.0 + abs(e_max))

    found = []  # (energy, quanta)

    def walk(mode, quanta, e):
        if mode == omega.size:
            found.append((e, tuple(quanta)))
            return
        nq = 0
        while e + nq * omega[mode] <= limit:
            quanta.append(nq)
            walk(mode + 1, quanta, e + nq * omega[mode])
            quanta.pop()
            nq += 1

    walk(0, [], ground)
    found.sort()

    levels = []
    group = []
    for e, quanta in found:
        if group and abs(e - group[0][0]) > MERGE_TOL * (1.0 + abs(group[0][0])):
            levels.append(_level(group, dimension))
            group = []
        group.append((e, quanta))
    if group:
        levels.append(_level(group, dimension))
    return levels


def _level(group, dimension):
    deg = sum(prod(cartesian_degeneracy(nq, dimension) for nq in quanta) for _, quanta in group)
    return EnergyLevel(group[0][0], group[0][1], deg, tuple(q for _, q in group))
