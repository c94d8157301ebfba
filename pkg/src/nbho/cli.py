"""Command-line front end.

Every command reads one system file and writes a single JSON object (or a
CSV table) to standard output. Exit status is 0 on success, 1 when the
physics fails (unstable system, disagreeing frequencies) and 2 on bad input.
"""
from __future__ import annotations

import csv
import json
import logging
import sys
from dataclasses import dataclass

import click
import numpy as np

from .analytic import DEFAULT_TOL, analytic_energy, analytic_frequencies, detect
from .eigen import Spectrum, spectrum_from_J
from .errors import InputError, Mismatch, NBodyError
from .jmatrix import build_J
from .model import QuantumState
from .oracle import cross_check, random_system
from .spectrum import energy, enumerate_levels
from .systemfile import load_document

log = logging.getLogger("nbho")

COMMANDS = ("frequencies", "energy", "levels", "detect", "verify")
AGREEMENT_TOL = 1e-10


@dataclass(frozen=True)
class RunConfig:
    command: str
    system_path: str | None = None
    tolerance: float = DEFAULT_TOL
    e_max: float | None = None
    output_format: str = "json"
    numeric: bool = False
    random: int | None = None
    seed: int | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if self.output_format not in ("json", "csv"):
            raise InputError(f"unknown output format {self.output_format!r}")
        if self.command == "levels" and self.e_max is None:
            raise InputError("levels needs --emax")
        if self.system_path is None and not (self.command == "verify" and self.random is not None):
            raise InputError(f"{self.command} needs a system file")


def _solve(system, tol, numeric_only):
    """Return (method, ascending Spectrum), cross-checking the two routes when both apply."""
    numeric = spectrum_from_J(build_J(system), system)
    if numeric_only:
        return "numeric", numeric, None
    cond = detect(system, tol)
    if not cond.fully_analytic:
        return "numeric", numeric, cond
    omega = np.sort(analytic_frequencies(system, cond))
    deviation = float(np.max(np.abs(omega - np.asarray(numeric.omega)) / np.asarray(numeric.omega)))
    if deviation > AGREEMENT_TOL:
        raise Mismatch(deviation, AGREEMENT_TOL)
    d = system.mass_scale * omega**2 / 2.0
    return "analytic", Spectrum(tuple(map(float, d)), tuple(map(float, omega))), cond


def _frequencies(cfg, system, states):
    method, spec, _ = _solve(system, cfg.tolerance, cfg.numeric)
    result = {"method": method, "omega": list(spec.omega), "d": list(spec.d)}
    rows = [("mode", "omega", "d")] + [(i + 1, w, d) for i, (w, d) in enumerate(zip(spec.omega, spec.d))]
    return result, rows


def _energy(cfg, system, states):
    method, spec, cond = _solve(system, cfg.tolerance, cfg.numeric)
    states = states or [QuantumState.ground(system.n_modes, system.dimension)]
    out = []
    for st in states:
        if method == "analytic":
            e = analytic_energy(system, cond, st)
        else:
            e = energy(spec, st, system.dimension)
        rec = {"n": [mode[0] for mode in st.modes]}
        if system.dimension > 1:
            rec["l"] = [mode[1] for mode in st.modes]
        rec["energy"] = e
        out.append(rec)
    rows = [("index", "n", "l", "energy")] + [
        (idx, _join(r["n"]), _join(r.get("l", [])), r["energy"]) for idx, r in enumerate(out)
    ]
    return {"method": method, "energies": out}, rows


def _levels(cfg, system, states):
    method, spec, _ = _solve(system, cfg.tolerance, cfg.numeric)
    levels = enumerate_levels(spec, system.dimension, cfg.e_max)
    out = [{"energy": lv.energy, "degeneracy": lv.degeneracy, "quanta": list(lv.quanta)} for lv in levels]
    rows = [("energy", "degeneracy", "quanta")] + [(r["energy"], r["degeneracy"], _join(r["quanta"])) for r in out]
    return {"method": method, "levels": out}, rows


def _detect(cfg, system, states):
    cond = detect(system, cfg.tolerance)
    result = {
        "one_body_rho": cond.one_body_rho,
        "two_body_row": None if cond.two_body_row is None else list(cond.two_body_row),
        "product_beta": cond.product_beta,
        "tolerance": cond.tolerance,
        "fully_analytic": cond.fully_analytic,
    }
    return result, _kv_rows(result)


def _verify(cfg, system, states):
    if cfg.random is not None:
        return _verify_random(cfg)
    spec = spectrum_from_J(build_J(system), system)
    try:
        report = cross_check(system, spec, cfg.tolerance)
    except Mismatch as exc:
        result = {
            "pass": False,
            "omega_jmatrix": list(spec.omega),
            "max_relative_deviation": exc.max_relative_deviation,
            "tolerance": cfg.tolerance,
        }
        raise _Failed(result, exc) from None
    result = {
        "pass": True,
        "omega_oracle": list(report.omega_oracle),
        "omega_jmatrix": list(spec.omega),
        "zero_modes": report.zero_modes,
        "max_relative_deviation": report.max_relative_deviation,
        "tolerance": cfg.tolerance,
    }
    return result, _kv_rows(result)


def _verify_random(cfg):
    rng = np.random.default_rng(cfg.seed)
    failures = 0
    worst = 0.0
    for idx in range(cfg.random):
        system = random_system(rng)
        try:
            report = cross_check(system, spectrum_from_J(build_J(system), system), cfg.tolerance)
            worst = max(worst, report.max_relative_deviation)
        except Mismatch as exc:
            log.warning("random system %d: %s", idx, exc)
            failures += 1
            worst = max(worst, exc.max_relative_deviation)
    result = {
        "pass": failures == 0,
        "systems": cfg.random,
        "failures": failures,
        "max_relative_deviation": worst,
        "tolerance": cfg.tolerance,
        "seed": cfg.seed,
    }
    if failures:
        raise _Failed(result, Mismatch(worst, cfg.tolerance))
    return result, _kv_rows(result)


class _Failed(Exception):
    """Carries a partial result alongside the physics error that ended a command."""

    def __init__(self, result, error):
        super().__init__(str(error))
        self.result = result
        self.error = error


_HANDLERS = {
    "frequencies": _frequencies,
    "energy": _energy,
    "levels": _levels,
    "detect": _detect,
    "verify": _verify,
}


def _join(values):
    return " ".join(_fmt(v) for v in values)


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.17g}"
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, (list, tuple)):
        return _join(v)
    return str(v)


def _kv_rows(result):
    return [("field", "value")] + [(k, v) for k, v in result.items()]


def _emit(cfg, result, rows, stream):
    if cfg.output_format == "json":
        stream.write(json.dumps({"command": cfg.command, **result}) + "\n")
    else:
        writer = csv.writer(stream, lineterminator="\n")
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _error_payload(exc):
    payload = {"error": type(exc).__name__, "message": str(exc)}
    for attr in ("index", "value", "max_relative_deviation", "count"):
        if hasattr(exc, attr):
            payload[attr] = getattr(exc, attr)
    return payload


def run(config: RunConfig, stream=None) -> int:
    """Execute one command, writing its result to ``stream`` (stdout by default); returns the exit code."""
    stream = sys.stdout if stream is None else stream
    try:
        system, states = (None, [])
        if config.system_path is not None:
            system, states = load_document(config.system_path)
        result, rows = _HANDLERS[config.command](config, system, states)
    except _Failed as failed:
        payload = {**failed.result, **_error_payload(failed.error)}
        log.error("%s", failed.error)
        _emit(config, payload, _kv_rows(payload), stream)
        return 1
    except NBodyError as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        payload = _error_payload(exc)
        _emit(config, payload, _kv_rows(payload), stream)
        return 2 if isinstance(exc, InputError) else 1
    _emit(config, result, rows, stream)
    return 0


def _execute(command, system_path, **options):
    try:
        cfg = RunConfig(command=command, system_path=system_path, **options)
    except InputError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    sys.exit(run(cfg))


_tol = click.option("--tol", "tolerance", type=float, default=DEFAULT_TOL, show_default=True,
                    help="Relative tolerance for condition detection and verification.")
_format = click.option("--format", "output_format", type=click.Choice(["json", "csv"]), default="json",
                       show_default=True)
_numeric = click.option("--numeric", is_flag=True, help="Always diagonalize J; skip the closed forms.")


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log diagnostics to stderr.")
def main(verbose):
    """Spectra of the translation-invariant N-body harmonic oscillator."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s: %(message)s")


@main.command()
@click.argument("system_path", type=click.Path(dir_okay=False))
@_tol
@_format
@_numeric
def frequencies(system_path, tolerance, output_format, numeric):
    """Normal-mode frequencies omega_i and J eigenvalues d_i."""
    _execute("frequencies", system_path, tolerance=tolerance, output_format=output_format, numeric=numeric)


@main.command(name="energy")
@click.argument("system_path", type=click.Path(dir_okay=False))
@_tol
@_format
@_numeric
def energy_cmd(system_path, tolerance, output_format, numeric):
    """Energies of the states listed in the file (ground state if none)."""
    _execute("energy", system_path, tolerance=tolerance, output_format=output_format, numeric=numeric)


@main.command()
@click.argument("system_path", type=click.Path(dir_okay=False))
@click.option("--emax", "e_max", type=float, required=True, help="Energy cutoff.")
@_tol
@_format
@_numeric
def levels(system_path, e_max, tolerance, output_format, numeric):
    """Energy levels and degeneracies up to --emax."""
    _execute("levels", system_path, e_max=e_max, tolerance=tolerance, output_format=output_format, numeric=numeric)


@main.command(name="detect")
@click.argument("system_path", type=click.Path(dir_okay=False))
@_tol
@_format
def detect_cmd(system_path, tolerance, output_format):
    """Report which closed-form coupling relations hold."""
    _execute("detect", system_path, tolerance=tolerance, output_format=output_format)


@main.command()
@click.argument("system_path", required=False, type=click.Path(dir_okay=False))
@click.option("--random", "random_count", type=click.IntRange(min=1), default=None,
              help="Check this many random systems instead of a file.")
@click.option("--seed", type=int, default=None)
@_tol
@_format
def verify(system_path, random_count, seed, tolerance, output_format):
    """Compare the J spectrum with the full-coordinate normal modes."""
    _execute("verify", system_path, random=random_count, seed=seed, tolerance=tolerance,
             output_format=output_format)


if __name__ == "__main__":
    main()
