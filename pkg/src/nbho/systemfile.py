"""Reading and writing system description files (JSON documents).

Schema::

    {
      "dimension": 3,
      "masses": [1.0, 2.0, 3.0],
      "mass_scale": 1.0,                        # optional, default masses[0]
      "one_body": [0.5, 1.0, 1.5],              # optional, default zeros
      "two_body": [{"i": 1, "j": 2, "g": 0.5}], # optional, 1-based, i < j
      "states": [{"n": [0, 1], "l": [0, 0]}]    # optional; omit "l" in 1D
    }

Unknown keys are rejected so that a misspelt coupling cannot silently vanish.
"""
from __future__ import annotations

import json
from pathlib import Path

from .errors import InputError, ParseError
from .model import ParticleSystem, QuantumState, validate_system

__all__ = ["parse_system_file", "parse_document", "load_document", "system_to_document", "write_system_file"]

_TOP_KEYS = {"dimension", "masses", "mass_scale", "one_body", "two_body", "states"}
_PAIR_KEYS = {"i", "j", "g"}
_STATE_KEYS = {"n", "l"}


def _is_int(v):
    return isinstance(v, int) and not isinstance(v, bool)


def _is_real(v):
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _real_list(doc, key):
    value = doc[key]
    if not isinstance(value, list):
        raise ParseError(f"field {key!r}: expected an array of numbers")
    for idx, v in enumerate(value):
        if not _is_real(v):
            raise ParseError(f"field {key}[{idx}]: expected a number, got {v!r}")
    return value


def _int_list(value, where):
    if not isinstance(value, list) or not all(_is_int(v) for v in value):
        raise ParseError(f"field {where}: expected an array of integers")
    return value


def parse_document(doc) -> tuple[ParticleSystem, list[QuantumState]]:
    """Validate a decoded document; returns the system and any listed states."""
    if not isinstance(doc, dict):
        raise ParseError("top level: expected an object")
    unknown = sorted(set(doc) - _TOP_KEYS)
    if unknown:
        raise ParseError(f"top level: unknown field(s) {', '.join(map(repr, unknown))}")
    for key in ("dimension", "masses"):
        if key not in doc:
            raise ParseError(f"top level: missing required field {key!r}")
    if not _is_int(doc["dimension"]):
        raise ParseError(f"field 'dimension': expected an integer, got {doc['dimension']!r}")

    raw = {"dimension": doc["dimension"], "masses": _real_list(doc, "masses")}
    if "one_body" in doc:
        raw["one_body"] = _real_list(doc, "one_body")
    if "mass_scale" in doc:
        if not _is_real(doc["mass_scale"]):
            raise ParseError(f"field 'mass_scale': expected a number, got {doc['mass_scale']!r}")
        raw["mass_scale"] = doc["mass_scale"]
    if "two_body" in doc:
        pairs = doc["two_body"]
        if not isinstance(pairs, list):
            raise ParseError("field 'two_body': expected an array of {i, j, g} objects")
        entries = []
        for idx, rec in enumerate(pairs):
            where = f"two_body[{idx}]"
            if not isinstance(rec, dict):
                raise ParseError(f"field {where}: expected an object")
            extra = sorted(set(rec) - _PAIR_KEYS)
            if extra:
                raise ParseError(f"field {where}: unknown field(s) {', '.join(map(repr, extra))}")
            for key in ("i", "j", "g"):
                if key not in rec:
                    raise ParseError(f"field {where}: missing {key!r}")
            if not (_is_int(rec["i"]) and _is_int(rec["j"])):
                raise ParseError(f"field {where}: labels i, j must be integers")
            if not _is_real(rec["g"]):
                raise ParseError(f"field {where}.g: expected a number, got {rec['g']!r}")
            entries.append((rec["i"], rec["j"], rec["g"]))
        raw["two_body"] = entries

    system = validate_system(raw)

    states = []
    for idx, rec in enumerate(doc.get("states", [])):
        where = f"states[{idx}]"
        if not isinstance(rec, dict):
            raise ParseError(f"field {where}: expected an object")
        extra = sorted(set(rec) - _STATE_KEYS)
        if extra:
            raise ParseError(f"field {where}: unknown field(s) {', '.join(map(repr, extra))}")
        if "n" not in rec:
            raise ParseError(f"field {where}: missing 'n'")
        n = _int_list(rec["n"], f"{where}.n")
        l = _int_list(rec["l"], f"{where}.l") if "l" in rec else None
        if l is None and system.dimension > 1:
            l = [0] * len(n)
        try:
            states.append(QuantumState.from_lists(n, l))
        except InputError as exc:
            raise ParseError(f"field {where}: {exc}") from None
    return system, states


def load_document(path) -> tuple[ParticleSystem, list[QuantumState]]:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_document(doc)


def parse_system_file(path) -> ParticleSystem:
    return load_document(path)[0]


def system_to_document(system: ParticleSystem, states=None) -> dict:
    doc = {
        "dimension": system.dimension,
        "masses": list(system.masses),
        "mass_scale": system.mass_scale,
        "one_body": list(system.one_body),
        "two_body": [{"i": i, "j": j, "g": g} for (i, j), g in system.two_body.items()],
    }
    if states:
        recs = []
        for st in states:
            rec = {"n": [mode[0] for mode in st.modes]}
            if system.dimension > 1:
                rec["l"] = [mode[1] for mode in st.modes]
            recs.append(rec)
        doc["states"] = recs
    return doc


def write_system_file(system: ParticleSystem, path, states=None) -> None:
    Path(path).write_text(json.dumps(system_to_document(system, states), indent=2) + "\n")
