"""Domain types for the translation-invariant N-body harmonic oscillator.

A :class:`ParticleSystem` holds the data of the Hamiltonian

    H = sum_i p_i^2 / 2 m_i - P^2 / 2M + sum_i k_i (r_i - R)^2
        + sum_{i<j} g_ij (r_i - r_j)^2

in D dimensions. Particle labels are 1-based everywhere a user sees them
(coupling keys, files); dense arrays handed to numerical code are 0-based.
"""
from __future__ import annotations

import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from .errors import (
    BadDimension,
    DimensionMismatch,
    DuplicateOrOutOfRangeCoupling,
    InputError,
    NonPositiveMass,
    NonPositiveMassScale,
    TooFewParticles,
)

__all__ = ["ParticleSystem", "QuantumState", "validate_system", "alpha"]


def _real(value, what):
    if isinstance(value, bool) or not isinstance(value, (int, float, np.integer, np.floating)):
        raise InputError(f"{what}: expected a real number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise InputError(f"{what}: must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class ParticleSystem:
    """Masses and couplings of an N-body oscillator.

    Parameters
    ----------
    dimension : int
        Spatial dimension D >= 1.
    masses : sequence of float
        The N > 1 particle masses, all strictly positive.
    one_body : sequence of float, optional
        Strengths k_i of the pull toward the centre of mass. Zeros if omitted.
    two_body : mapping, optional
        ``{(i, j): g_ij}`` with 1-based labels and ``i < j``. Absent pairs are
        exact zeros.
    mass_scale : float, optional
        Reference mass m used to form the ratios alpha_i = m_i / m.
        Defaults to ``masses[0]``.

    Instances are validated on construction and immutable afterwards.
    Couplings may be negative; stability is decided from the spectrum.
    """

    dimension: int
    masses: tuple[float, ...]
    one_body: tuple[float, ...] = ()
    two_body: Mapping[tuple[int, int], float] = field(default_factory=dict)
    mass_scale: float | None = None

    def __post_init__(self):
        dim = self.dimension
        if isinstance(dim, bool) or not isinstance(dim, (int, np.integer)) or dim < 1:
            raise BadDimension(f"dimension must be an integer >= 1, got {dim!r}")
        object.__setattr__(self, "dimension", int(dim))

        masses = tuple(_real(m, f"masses[{i}]") for i, m in enumerate(self.masses))
        if len(masses) < 2:
            raise TooFewParticles(f"need at least 2 particles, got {len(masses)}")
        for i, m in enumerate(masses):
            if m <= 0.0:
                raise NonPositiveMass(f"masses[{i}] = {m!r} is not strictly positive")
        n = len(masses)
        object.__setattr__(self, "masses", masses)

        k = self.one_body
        if k is None or len(k) == 0:
            k = (0.0,) * n
        if len(k) != n:
            raise InputError(f"one_body has {len(k)} entries for {n} particles")
        object.__setattr__(self, "one_body", tuple(_real(v, f"one_body[{i}]") for i, v in enumerate(k)))

        pairs = {}
        for key, g in dict(self.two_body or {}).items():
            try:
                i, j = key
            except (TypeError, ValueError):
                raise DuplicateOrOutOfRangeCoupling(f"coupling key {key!r} is not a pair (i, j)") from None
            pairs[_pair(i, j, n)] = _real(g, f"two_body[{i},{j}]")
        object.__setattr__(self, "two_body", MappingProxyType(dict(sorted(pairs.items()))))

        scale = masses[0] if self.mass_scale is None else _real(self.mass_scale, "mass_scale")
        if scale <= 0.0:
            raise NonPositiveMassScale(f"mass_scale = {scale!r} is not strictly positive")
        object.__setattr__(self, "mass_scale", scale)

    @property
    def n_particles(self) -> int:
        return len(self.masses)

    @property
    def n_modes(self) -> int:
        return len(self.masses) - 1

    @property
    def total_mass(self) -> float:
        return math.fsum(self.masses)

    def g(self, i: int, j: int) -> float:
        """Pair coupling for 1-based labels in either order; zero if absent."""
        if i == j:
            return 0.0
        return self.two_body.get((min(i, j), max(i, j)), 0.0)

    def coupling_matrix(self) -> np.ndarray:
        """Dense strictly upper-triangular N x N array, ``U[i-1, j-1] = g_ij``."""
        u = np.zeros((self.n_particles, self.n_particles))
        for (i, j), g in self.two_body.items():
            u[i - 1, j - 1] = g
        return u

    def with_mass_scale(self, mass_scale: float) -> ParticleSystem:
        return ParticleSystem(self.dimension, self.masses, self.one_body, dict(self.two_body), mass_scale)

    def relabeled(self, order: Iterable[int]) -> ParticleSystem:
        """Return the same physical system with particle ``order[a]`` (0-based) renamed to ``a``."""
        order = list(order)
        if sorted(order) != list(range(self.n_particles)):
            raise InputError(f"{order!r} is not a permutation of 0..{self.n_particles - 1}")
        new_label = {old: new for new, old in enumerate(order)}
        masses = [self.masses[p] for p in order]
        k = [self.one_body[p] for p in order]
        pairs = {}
        for (i, j), g in self.two_body.items():
            a, b = sorted((new_label[i - 1] + 1, new_label[j - 1] + 1))
            pairs[(a, b)] = g
        return ParticleSystem(self.dimension, masses, k, pairs, self.mass_scale)


def _pair(i, j, n):
    for label in (i, j):
        if isinstance(label, bool) or not isinstance(label, (int, np.integer)):
            raise DuplicateOrOutOfRangeCoupling(f"coupling labels must be integers, got ({i!r}, {j!r})")
    i, j = int(i), int(j)
    if not 1 <= i < j <= n:
        raise DuplicateOrOutOfRangeCoupling(f"coupling ({i}, {j}) needs 1 <= i < j <= {n}")
    return i, j


def validate_system(raw) -> ParticleSystem:
    """Build a :class:`ParticleSystem` from a loosely typed description.

    ``raw`` may already be a ``ParticleSystem`` (returned unchanged) or a
    mapping with keys ``dimension``, ``masses`` and optionally ``one_body``,
    ``two_body`` and ``mass_scale``. ``two_body`` is either a mapping
    ``{(i, j): g}`` or an iterable of ``{"i", "j", "g"}`` records or
    ``(i, j, g)`` triples. Repeating a pair is an error.
    """
    if isinstance(raw, ParticleSystem):
        return raw
    if not isinstance(raw, Mapping):
        raise InputError(f"expected a mapping describing the system, got {type(raw).__name__}")
    for key in ("dimension", "masses"):
        if key not in raw:
            raise InputError(f"missing required field {key!r}")

    n = len(raw["masses"])
    two_body = raw.get("two_body") or {}
    if isinstance(two_body, Mapping):
        entries = [(*key, g) if isinstance(key, tuple) else (key, g) for key, g in two_body.items()]
    else:
        entries = []
        for rec in two_body:
            if isinstance(rec, Mapping):
                entries.append((rec.get("i"), rec.get("j"), rec.get("g")))
            else:
                entries.append(tuple(rec))
    pairs = {}
    for entry in entries:
        if len(entry) != 3:
            raise DuplicateOrOutOfRangeCoupling(f"coupling entry {entry!r} is not (i, j, g)")
        i, j, g = entry
        key = _pair(i, j, n)
        if key in pairs:
            raise DuplicateOrOutOfRangeCoupling(f"coupling ({i}, {j}) given more than once")
        pairs[key] = g

    return ParticleSystem(
        dimension=raw["dimension"],
        masses=tuple(raw["masses"]),
        one_body=tuple(raw.get("one_body") or ()),
        two_body=pairs,
        mass_scale=raw.get("mass_scale"),
    )


def alpha(system: ParticleSystem) -> np.ndarray:
    """Dimensionless mass ratios alpha_i = m_i / m."""
    return np.asarray(system.masses) / system.mass_scale


@dataclass(frozen=True)
class QuantumState:
    """Quantum numbers of the N-1 internal oscillators.

    Each entry of ``modes`` is ``(n,)`` in one dimension and ``(n, l)`` in two
    or more; bare integers are accepted for the one-dimensional case.
    """

    modes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        modes = []
        for idx, entry in enumerate(self.modes):
            numbers = (entry,) if isinstance(entry, (int, np.integer)) and not isinstance(entry, bool) else tuple(entry)
            if len(numbers) not in (1, 2):
                raise InputError(f"mode {idx}: expected (n,) or (n, l), got {entry!r}")
            for q in numbers:
                if isinstance(q, bool) or not isinstance(q, (int, np.integer)) or q < 0:
                    raise InputError(f"mode {idx}: quantum numbers must be non-negative integers, got {entry!r}")
            modes.append(tuple(int(q) for q in numbers))
        object.__setattr__(self, "modes", tuple(modes))

    @classmethod
    def ground(cls, n_modes: int, dimension: int) -> QuantumState:
        return cls(((0,) if dimension == 1 else (0, 0),) * n_modes)

    @classmethod
    def from_lists(cls, n, l=None) -> QuantumState:
        if l is None:
            return cls(tuple((q,) for q in n))
        if len(l) != len(n):
            raise DimensionMismatch(f"n has {len(n)} entries but l has {len(l)}")
        return cls(tuple(zip(n, l)))

    def quanta(self, dimension: int) -> tuple[int, ...]:
        """Per-mode total quanta: n_i in 1D, 2 n_i + l_i otherwise."""
        self._check(dimension)
        if dimension == 1:
            return tuple(n for (n,) in self.modes)
        return tuple(2 * n + l for n, l in self.modes)

    def q_values(self, dimension: int, n_modes: int | None = None) -> np.ndarray:
        """Q_i = n_i + 1/2 (D = 1) or 2 n_i + l_i + D/2 (D >= 2)."""
        if n_modes is not None and len(self.modes) != n_modes:
            raise DimensionMismatch(f"state has {len(self.modes)} modes, system has {n_modes}")
        return np.asarray(self.quanta(dimension), dtype=float) + 0.5 * dimension

    def _check(self, dimension):
        width = 1 if dimension == 1 else 2
        for idx, entry in enumerate(self.modes):
            if len(entry) != width:
                raise DimensionMismatch(
                    f"mode {idx}: D={dimension} needs {'(n,)' if width == 1 else '(n, l)'}, got {entry!r}"
                )
