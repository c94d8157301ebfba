"""Exact spectra of the translation-invariant N-body harmonic oscillator."""
from .analytic import AnalyticCondition, analytic_energy, analytic_frequencies, detect
from .eigen import Spectrum, eigen_symmetric, spectrum_from_J
from .jmatrix import JMatrix, build_F, build_G, build_J
from .model import ParticleSystem, QuantumState, alpha, validate_system
from .oracle import NormalModeReport, cross_check, hessian, normal_modes
from .spectrum import EnergyLevel, energy, enumerate_levels

__all__ = [
    "AnalyticCondition",
    "EnergyLevel",
    "JMatrix",
    "NormalModeReport",
    "ParticleSystem",
    "QuantumState",
    "Spectrum",
    "alpha",
    "analytic_energy",
    "analytic_frequencies",
    "build_F",
    "build_G",
    "build_J",
    "cross_check",
    "detect",
    "eigen_symmetric",
    "energy",
    "enumerate_levels",
    "hessian",
    "normal_modes",
    "spectrum_from_J",
    "validate_system",
]
