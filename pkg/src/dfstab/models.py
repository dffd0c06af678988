"""Model I/O and bundled presets.

A model file is JSON:

    {
      "n_qubits": 1,
      "hamiltonian": [TERM, ...],
      "lindblad_ops": [{"rate": 1.0, "terms": [TERM, ...]}, ...]
    }

where TERM is either a Pauli letter string such as "XYIZ" (optionally with
{"letters": ..., "scale": [re, im]}) or a general product
{"scale": [re, im], "factors": [[a0re, a0im, a1re, a1im, a2re, a2im,
a3re, a3im], ...]} with one 8-float row per qubit.
"""

from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

from .lindblad import LindbladModel
from .pauli import MAX_QUBITS, PauliFactor, PauliProduct, PauliSum


class ModelParseError(ValueError):
    """Raised when a model file is malformed; the message names the field."""


def _complex(pair: Any, where: str) -> complex:
    if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
        raise ModelParseError(f"{where}: expected [re, im], got {pair!r}")
    try:
        return complex(float(pair[0]), float(pair[1]))
    except (TypeError, ValueError) as exc:
        raise ModelParseError(f"{where}: non-numeric entry: {exc}") from exc


def _parse_term(term: Any, n_qubits: int, where: str) -> PauliProduct:
    if isinstance(term, str):
        term = {"letters": term}
    if not isinstance(term, dict):
        raise ModelParseError(f"{where}: expected string or object, got {type(term).__name__}")
    scale = _complex(term.get("scale", [1.0, 0.0]), f"{where}.scale")
    if "letters" in term:
        letters = term["letters"]
        if not isinstance(letters, str) or any(ch not in "IXYZ" for ch in letters):
            raise ModelParseError(f"{where}.letters: expected string over IXYZ, got {letters!r}")
        if len(letters) != n_qubits:
            raise ModelParseError(
                f"{where}.letters: length {len(letters)} does not match n_qubits={n_qubits}"
            )
        return PauliProduct.from_letters(letters, scale=scale)
    rows = term.get("factors")
    if not isinstance(rows, list) or len(rows) != n_qubits:
        raise ModelParseError(
            f"{where}.factors: expected {n_qubits} rows of 8 floats, got {rows!r}"
        )
    facs = []
    for j, row in enumerate(rows):
        if not (isinstance(row, list) and len(row) == 8):
            raise ModelParseError(f"{where}.factors[{j}]: expected 8 floats, got {row!r}")
        c = [_complex(row[2 * k : 2 * k + 2], f"{where}.factors[{j}]") for k in range(4)]
        facs.append(PauliFactor(*c))
    return PauliProduct(factors=tuple(facs), global_scale=scale)


def _parse_sum(terms: Any, n_qubits: int, where: str) -> PauliSum:
    if not isinstance(terms, list) or not terms:
        raise ModelParseError(f"{where}: expected a non-empty list of terms")
    return PauliSum(
        terms=tuple(_parse_term(t, n_qubits, f"{where}[{i}]") for i, t in enumerate(terms))
    )


def model_from_dict(data: dict) -> LindbladModel:
    if not isinstance(data, dict):
        raise ModelParseError(f"top level: expected object, got {type(data).__name__}")
    n = data.get("n_qubits")
    if not isinstance(n, int) or not (1 <= n <= MAX_QUBITS):
        raise ModelParseError(f"n_qubits: expected integer in [1, {MAX_QUBITS}], got {n!r}")
    h_s = _parse_sum(data.get("hamiltonian"), n, "hamiltonian")
    ops = data.get("lindblad_ops")
    if not isinstance(ops, list) or not ops:
        raise ModelParseError("lindblad_ops: expected a non-empty list")
    jumps = []
    for i, entry in enumerate(ops):
        if not isinstance(entry, dict):
            raise ModelParseError(f"lindblad_ops[{i}]: expected object")
        rate = entry.get("rate", entry.get("lambda", 1.0))
        if not isinstance(rate, (int, float)) or rate <= 0:
            raise ModelParseError(f"lindblad_ops[{i}].rate: expected positive number, got {rate!r}")
        jumps.append((float(rate), _parse_sum(entry.get("terms"), n, f"lindblad_ops[{i}].terms")))
    return LindbladModel(n_qubits=n, h_s=h_s, jump_ops=tuple(jumps))


def load_model(path: str) -> LindbladModel:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ModelParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ModelParseError(f"{path}: invalid JSON: {exc}") from exc
    return model_from_dict(data)


# ---------------------------------------------------------------------------
# Presets. Each returns (model, eigenvalue hint) where the hint fixes the
# stabilizer normalization branch when the spectrum is symmetric.

def _squeeze_factor(r: float) -> float:
    return math.sinh(r) + math.cosh(r)


def preset_example1(r: float = 0.5, gamma: float = 1.0) -> tuple[LindbladModel, list[complex]]:
    """Single qubit with jump operator ((s+c)/2)(sigma_x + i sigma_y + sigma_z)
    and a drive chosen so the effective Hamiltonian vanishes on the code."""
    sc = _squeeze_factor(r)
    jump = PauliProduct(
        factors=(PauliFactor(0.0, 1.0, 1.0j, 1.0),),
        global_scale=sc / 2.0,
    )
    h_s = PauliProduct(factors=(PauliFactor(0.0, 0.0, 1.0, 0.0),), global_scale=gamma * sc**2 / 4.0)
    model = LindbladModel(
        n_qubits=1,
        h_s=PauliSum(terms=(h_s,)),
        jump_ops=((gamma, PauliSum(terms=(jump,))),),
    )
    return model, [sc / 2.0]


def preset_example2(r: float = 0.5, gamma: float = 1.0, n_qubits: int = 5) -> tuple[
    LindbladModel, list[complex]
]:
    """n-qubit jump operator ((s+c)/2)(sigma_x + i sigma_y + sigma_z)^{x n}
    with the drive (i gamma c_J / 2)(J^dag - J) that cancels the effective
    Hamiltonian on the code."""
    sc = _squeeze_factor(r)
    fac = PauliFactor(0.0, 1.0, 1.0j, 1.0)
    jump = PauliProduct(factors=(fac,) * n_qubits, global_scale=sc / 2.0)
    c_j = sc / 2.0
    fac_dag = PauliFactor(0.0, 1.0, -1.0j, 1.0)
    h_terms = (
        PauliProduct(factors=(fac_dag,) * n_qubits, global_scale=0.5j * gamma * c_j * (sc / 2.0)),
        PauliProduct(factors=(fac,) * n_qubits, global_scale=-0.5j * gamma * c_j * (sc / 2.0)),
    )
    model = LindbladModel(
        n_qubits=n_qubits,
        h_s=PauliSum(terms=h_terms),
        jump_ops=((gamma, PauliSum(terms=(jump,))),),
    )
    return model, [c_j]


def preset_example_hl(r: float = 0.5, gamma: float = 1.0) -> tuple[LindbladModel, list[complex]]:
    """Two-qubit strongly decoherence-free model: jump ((s+c)/2)(II + ZZ),
    drive (gamma (s+c)^2 / 4) XX. Supports the Heisenberg-limit protocol."""
    sc = _squeeze_factor(r)
    jump = PauliSum(
        terms=(
            PauliProduct.from_letters("II", scale=sc / 2.0),
            PauliProduct.from_letters("ZZ", scale=sc / 2.0),
        )
    )
    h_s = PauliSum(terms=(PauliProduct.from_letters("XX", scale=gamma * sc**2 / 4.0),))
    model = LindbladModel(n_qubits=2, h_s=h_s, jump_ops=((gamma, jump),))
    return model, [sc]


PRESETS = {
    "example1": preset_example1,
    "example2": preset_example2,
    "example_hl": preset_example_hl,
}


def load_preset(name: str, r: float = 0.5) -> tuple[LindbladModel, list[complex]]:
    try:
        builder = PRESETS[name]
    except KeyError:
        raise ModelParseError(
            f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}"
        ) from None
    return builder(r=r)


def model_to_dict(model: LindbladModel) -> dict:
    """Serialize back to the JSON schema (general-factor form)."""

    def term_row(p: PauliProduct) -> dict:
        rows = []
        for f in p.factors:
            rows.append(
                [x for c in (f.a0, f.a1, f.a2, f.a3) for x in (float(np.real(c)), float(np.imag(c)))]
            )
        return {
            "scale": [float(np.real(p.global_scale)), float(np.imag(p.global_scale))],
            "factors": rows,
        }

    return {
        "n_qubits": model.n_qubits,
        "hamiltonian": [term_row(t) for t in model.h_s.terms],
        "lindblad_ops": [
            {"rate": lam, "terms": [term_row(t) for t in op.terms]}
            for lam, op in model.jump_ops
        ],
    }
