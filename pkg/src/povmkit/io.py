"""File formats: operator/POVM/sample/channel/dilation/ensemble JSON and
trajectory CSV, plus a byte-stable JSON emitter.

Operators are stored as {"dim": d, "re": [[...]], "im": [[...]]}, row-major.
Loading a Hermitian slot revalidates Hermiticity and rejects bad files;
Kraus matrices and unitaries are stored with the same layout but loaded as
general complex matrices.  Emitted floats are fixed at 12 significant
digits so identical inputs produce identical bytes.
"""

from __future__ import annotations

import json
from typing import IO, Sequence

import numpy as np

from .measurement import Dilation, KrausChannelSet
from .operators import (
    DensityOperator,
    Effect,
    HermitianOperator,
    UnitaryOperator,
)
from .reconstruction import FrameFunctionSample, Povm
from .tomography import Ensemble, Trajectory

__all__ = [
    "stable_json_dumps",
    "matrix_to_json",
    "matrix_from_json",
    "hermitian_from_json",
    "density_from_json",
    "effect_from_json",
    "povm_to_json",
    "povm_from_json",
    "samples_to_json",
    "samples_from_json",
    "bipartite_samples_to_json",
    "bipartite_samples_from_json",
    "kraus_to_json",
    "kraus_from_json",
    "dilation_to_json",
    "dilation_from_json",
    "ensemble_to_json",
    "ensemble_from_json",
    "write_trajectory_csv",
    "load_json",
]

_FLOAT_FORMAT = ".12g"


def _fmt(x: float) -> str:
    if x == 0:  # normalize -0.0
        x = 0.0
    return format(float(x), _FLOAT_FORMAT)


def stable_json_dumps(obj) -> str:
    """JSON text with insertion-ordered keys and 12-significant-digit
    floats; byte-identical for identical inputs."""
    pieces: list[str] = []
    _emit(obj, pieces)
    return "".join(pieces)


def _emit(obj, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_fmt(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        out.append("{")
        for i, (key, value) in enumerate(obj.items()):
            if i:
                out.append(", ")
            out.append(json.dumps(str(key)))
            out.append(": ")
            _emit(value, out)
        out.append("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        out.append("[")
        for i, value in enumerate(obj):
            if i:
                out.append(", ")
            _emit(value, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def matrix_to_json(matrix) -> dict:
    m = np.asarray(matrix, dtype=complex)
    return {
        "dim": int(m.shape[0]),
        "re": m.real.tolist(),
        "im": m.imag.tolist(),
    }


def matrix_from_json(obj) -> np.ndarray:
    d = int(obj["dim"])
    re = np.asarray(obj["re"], dtype=float)
    im = np.asarray(obj["im"], dtype=float)
    if re.shape != (d, d) or im.shape != (d, d):
        raise ValueError(f"matrix entries do not match dim {d}")
    return re + 1j * im


def hermitian_from_json(obj) -> HermitianOperator:
    return HermitianOperator(matrix_from_json(obj))


def density_from_json(obj) -> DensityOperator:
    return DensityOperator(matrix_from_json(obj))


def effect_from_json(obj) -> Effect:
    return Effect(matrix_from_json(obj))


def povm_to_json(povm: Povm) -> dict:
    return {
        "dim": povm.dim,
        "effects": [matrix_to_json(e.matrix) for e in povm],
    }


def povm_from_json(obj) -> Povm:
    return Povm([effect_from_json(e) for e in obj["effects"]])


def samples_to_json(samples: Sequence[FrameFunctionSample]) -> dict:
    return {
        "dim": samples[0].effect.dim,
        "samples": [
            {"effect": matrix_to_json(s.effect.matrix), "value": s.value}
            for s in samples
        ],
    }


def samples_from_json(obj) -> list[FrameFunctionSample]:
    return [
        FrameFunctionSample(
            effect=effect_from_json(entry["effect"]),
            value=float(entry["value"]),
        )
        for entry in obj["samples"]
    ]


def bipartite_samples_to_json(samples, dims) -> dict:
    return {
        "dimA": int(dims[0]),
        "dimB": int(dims[1]),
        "samples": [
            {
                "effect_a": matrix_to_json(ea.matrix),
                "effect_b": matrix_to_json(eb.matrix),
                "value": value,
            }
            for (ea, eb), value in samples
        ],
    }


def bipartite_samples_from_json(obj):
    dims = (int(obj["dimA"]), int(obj["dimB"]))
    samples = [
        (
            (effect_from_json(entry["effect_a"]), effect_from_json(entry["effect_b"])),
            float(entry["value"]),
        )
        for entry in obj["samples"]
    ]
    return samples, dims


def kraus_to_json(channel: KrausChannelSet) -> dict:
    return {
        "dim": channel.dim,
        "outcomes": [
            [matrix_to_json(a) for a in ops] for ops in channel.outcomes
        ],
    }


def kraus_from_json(obj) -> KrausChannelSet:
    return KrausChannelSet(
        [[matrix_from_json(a) for a in ops] for ops in obj["outcomes"]]
    )


def dilation_to_json(dilation: Dilation) -> dict:
    return {
        "system_dim": dilation.system_dim,
        "ancilla_state": matrix_to_json(dilation.ancilla_state.matrix),
        "unitary": matrix_to_json(dilation.unitary.matrix),
        "projectors": [matrix_to_json(p.matrix) for p in dilation.projectors],
    }


def dilation_from_json(obj) -> Dilation:
    return Dilation(
        ancilla_state=density_from_json(obj["ancilla_state"]),
        unitary=UnitaryOperator(matrix_from_json(obj["unitary"])),
        projectors=tuple(
            hermitian_from_json(p) for p in obj["projectors"]
        ),
    )


def ensemble_to_json(ensemble: Ensemble) -> dict:
    return {
        "weights": [float(w) for w in ensemble.weights],
        "states": [matrix_to_json(s.matrix) for s in ensemble.states],
    }


def ensemble_from_json(obj) -> Ensemble:
    return Ensemble(
        np.asarray(obj["weights"], dtype=float),
        [density_from_json(s) for s in obj["states"]],
    )


def write_trajectory_csv(trajectory: Trajectory, stream: IO[str]) -> None:
    """Trajectory CSV with columns step, outcome, dist_ab, dist_a_true,
    dist_b_true and 12-significant-digit floats."""
    stream.write("step,outcome,dist_ab,dist_a_true,dist_b_true\n")
    for row in trajectory.rows:
        stream.write(
            f"{row.step},{row.outcome},{_fmt(row.dist_ab)},"
            f"{_fmt(row.dist_a_true)},{_fmt(row.dist_b_true)}\n"
        )


def load_json(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)
