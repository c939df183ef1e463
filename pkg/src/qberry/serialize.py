"""JSON schemas for states, operators, stars, loops, and reports.

Complex numbers are [re, im] pairs. Dumps are canonical (sorted keys,
fixed indentation) so equal inputs give byte-identical files.
"""

from __future__ import annotations

import hashlib
import json

import numpy as np

from .berry import PhaseReport, StateLoop
from .errors import InputError
from .majorana import Star, StarSet
from .states import as_state


def _pair(z: complex) -> list:
    return [float(np.real(z)), float(np.imag(z))]


def _from_pair(obj) -> complex:
    if (not isinstance(obj, (list, tuple)) or len(obj) != 2
            or not all(isinstance(x, (int, float)) for x in obj)):
        raise InputError(f"expected a [re, im] pair, got {obj!r}")
    return complex(float(obj[0]), float(obj[1]))


# ---- states ----

def state_to_obj(psi) -> dict:
    psi = np.asarray(psi, dtype=complex)
    return {"amps": [_pair(z) for z in psi]}


def state_from_obj(obj) -> np.ndarray:
    if not isinstance(obj, dict) or "amps" not in obj:
        raise InputError('state object needs an "amps" field')
    amps = obj["amps"]
    if not isinstance(amps, list) or len(amps) != 3:
        raise InputError('"amps" must list exactly 3 [re, im] pairs')
    return as_state([_from_pair(p) for p in amps])


# ---- operators ----

def operator_to_obj(m) -> dict:
    m = np.asarray(m, dtype=complex)
    return {"entries": [[_pair(z) for z in row] for row in m]}


def operator_from_obj(obj) -> np.ndarray:
    if not isinstance(obj, dict) or "entries" not in obj:
        raise InputError('operator object needs an "entries" field')
    rows = obj["entries"]
    if not isinstance(rows, list) or len(rows) != 3:
        raise InputError('"entries" must be a 3x3 array of [re, im] pairs')
    out = np.empty((3, 3), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != 3:
            raise InputError('"entries" must be a 3x3 array of [re, im] pairs')
        for j, z in enumerate(row):
            out[i, j] = _from_pair(z)
    return out


# ---- stars and loops ----

def star_to_obj(star: Star) -> dict:
    return {"theta": float(star.theta), "phi": float(star.phi)}


def star_from_obj(obj) -> Star:
    if not isinstance(obj, dict) or "theta" not in obj or "phi" not in obj:
        raise InputError('star object needs "theta" and "phi"')
    return Star(theta=float(obj["theta"]), phi=float(obj["phi"]))


def star_set_to_obj(ss: StarSet) -> dict:
    return {"stars": [star_to_obj(s) for s in ss.stars]}


def star_set_from_obj(obj) -> StarSet:
    if not isinstance(obj, dict) or "stars" not in obj:
        raise InputError('star set object needs a "stars" list')
    stars = [star_from_obj(s) for s in obj["stars"]]
    if len(stars) != 2:
        raise InputError("a spin-1 star set has exactly 2 stars")
    return StarSet(stars=(stars[0], stars[1]))


def loop_to_obj(loop: StateLoop) -> dict:
    return {"states": [state_to_obj(s) for s in loop.states]}


def loop_from_obj(obj) -> StateLoop:
    if not isinstance(obj, dict) or "states" not in obj:
        raise InputError('loop object needs a "states" list')
    states = obj["states"]
    if not isinstance(states, list):
        raise InputError('"states" must be a list of state objects')
    return StateLoop(np.stack([state_from_obj(s) for s in states]))


# ---- reports ----

def report_to_obj(rep: PhaseReport) -> dict:
    return {
        "gamma": float(rep.gamma),
        "gamma0": None if rep.gamma0 is None else float(rep.gamma0),
        "gammaC": None if rep.gamma_c is None else float(rep.gamma_c),
        "class": rep.classification,
        "quantized": None if rep.quantized is None else float(rep.quantized),
    }


# ---- canonical text ----

def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def config_hash(obj) -> str:
    compact = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(compact.encode("utf-8")).hexdigest()


def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc}") from exc


def dump_json(path: str, obj) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(canonical_dumps(obj))
