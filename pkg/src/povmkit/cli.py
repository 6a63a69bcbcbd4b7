"""Command-line front-end.

Each subcommand is a thin shell over one library call, reading the JSON
file formats from :mod:`povmkit.io` and emitting byte-stable JSON on
standard output (CSV for trajectories).  Exit codes: 0 success, 1 domain or
validation failure (JSON error body on standard error), 2 I/O or parse
failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import io as pio
from .entropy import uncertainty_report
from .errors import InconsistentSamples, NotAState, PovmkitError
from .measurement import (
    bayes_decomposition,
    born_probabilities,
    dilate_povm,
    posterior_states,
    povm_from_dilation,
    simulate_teleportation,
)
from .reconstruction import (
    field_dimension_counts,
    reconstruct_bipartite,
    reconstruct_state,
)
from .tomography import real_field_counterexample, simulate_tomography_convergence

__all__ = ["main", "run"]


class _ParseFailure(Exception):
    pass


def _load(path: str, loader):
    try:
        return loader(pio.load_json(path))
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise _ParseFailure(f"{path}: {exc}") from exc


def _print(payload: dict) -> None:
    sys.stdout.write(pio.stable_json_dumps(payload) + "\n")


def _cmd_validate_povm(args) -> int:
    raw = _load(args.file, lambda obj: obj)
    try:
        povm = pio.povm_from_json(raw)
    except PovmkitError as exc:
        _print(
            {"valid": False, "error": type(exc).__name__, "message": str(exc)}
        )
        return 1
    _print({"valid": True, "dim": povm.dim, "outcomes": len(povm)})
    return 0


def _cmd_reconstruct(args) -> int:
    if args.bipartite:
        if not args.dims:
            raise _ParseFailure("--bipartite requires --dims dA,dB")
        try:
            d_a, d_b = (int(x) for x in args.dims.split(","))
        except ValueError as exc:
            raise _ParseFailure(f"--dims {args.dims}: {exc}") from exc
        samples, dims = _load(args.samples, pio.bipartite_samples_from_json)
        if dims != (d_a, d_b):
            raise _ParseFailure(
                f"--dims {args.dims} disagrees with the sample file {dims}"
            )
        state, residual = reconstruct_bipartite(samples, dims)
    else:
        samples = _load(args.samples, pio.samples_from_json)
        state, residual = reconstruct_state(samples)
    _print(
        {"state": pio.matrix_to_json(state.matrix), "residual": residual}
    )
    return 0


def _cmd_entropy(args) -> int:
    state = _load(args.state, pio.density_from_json)
    report = uncertainty_report(state)
    _print(
        {
            "von_neumann_bits": report.von_neumann_bits,
            "subentropy_bits": report.subentropy_bits,
            "mean_entropy_bits": report.mean_entropy_bits,
        }
    )
    return 0


def _cmd_measure(args) -> int:
    state = _load(args.state, pio.density_from_json)
    povm = _load(args.povm, pio.povm_from_json)
    probabilities = born_probabilities(state, povm)
    if args.kraus:
        channel = _load(args.kraus, pio.kraus_from_json)
        for e_channel, e_povm in zip(channel.effects(), povm):
            if np.linalg.norm(e_channel.matrix - e_povm.matrix) > 1e-8:
                raise InconsistentSamples(
                    "Kraus channel does not implement the given POVM"
                )
        pairs = posterior_states(state, channel)
        update = "kraus"
    else:
        pairs = bayes_decomposition(state, povm)
        update = "bayes-refinement"
    _print(
        {
            "probabilities": [float(p) for p in probabilities],
            "update": update,
            "posteriors": [
                None if rho is None else pio.matrix_to_json(rho.matrix)
                for _, rho in pairs
            ],
        }
    )
    return 0


def _cmd_dilate(args) -> int:
    povm = _load(args.povm, pio.povm_from_json)
    dilation = dilate_povm(povm)
    recovered = povm_from_dilation(dilation, povm.dim)
    worst = max(
        float(np.linalg.norm(a.matrix - b.matrix))
        for a, b in zip(recovered, povm)
    )
    if worst > 1e-8:
        raise InconsistentSamples(
            f"dilation round trip missed by {worst:.3e}"
        )
    _print(pio.dilation_to_json(dilation))
    return 0


def _cmd_teleport(args) -> int:
    state = _load(args.state, pio.density_from_json)
    eigs = np.linalg.eigvalsh(state.matrix)
    if state.dim != 2 or eigs[-1] < 1.0 - 1e-6:
        raise NotAState("teleport needs a pure qubit state file")
    _, vecs = np.linalg.eigh(state.matrix)
    transcript = simulate_teleportation(vecs[:, -1], args.seed)
    _print(
        {
            "seed": args.seed,
            "bell_outcome": transcript.bell_outcome,
            "bell_probabilities": [
                float(p) for p in transcript.bell_probabilities
            ],
            "correction": transcript.correction,
            "pre_correction_state": pio.matrix_to_json(
                transcript.pre_correction_state.matrix
            ),
            "final_state": pio.matrix_to_json(transcript.final_state.matrix),
            "verification_probability": transcript.verification_probability,
        }
    )
    return 0


def _cmd_tomography(args) -> int:
    prior_a = _load(args.prior_a, pio.ensemble_from_json)
    prior_b = _load(args.prior_b, pio.ensemble_from_json)
    true_state = _load(args.true, pio.density_from_json)
    povm = _load(args.povm, pio.povm_from_json)
    trajectory = simulate_tomography_convergence(
        prior_a, prior_b, true_state, povm, args.shots, args.seed
    )
    try:
        with open(args.out, "w", encoding="utf-8") as handle:
            pio.write_trajectory_csv(trajectory, handle)
    except OSError as exc:
        raise _ParseFailure(f"{args.out}: {exc}") from exc
    last = trajectory.rows[-1] if trajectory.rows else None
    _print(
        {
            "shots": args.shots,
            "out": args.out,
            "final_dist_ab": trajectory.final_dist_ab,
            "final_dist_a_true": (
                last.dist_a_true if last else trajectory.initial_dist_a_true
            ),
            "final_dist_b_true": (
                last.dist_b_true if last else trajectory.initial_dist_b_true
            ),
        }
    )
    return 0


def _cmd_real_demo(args) -> int:
    report = real_field_counterexample(args.copies)
    _print(
        {
            "copies": report.n_copies,
            "max_abs_imag": report.max_abs_imag,
            "swap_violation": report.swap_violation,
            "sigma2_coefficient": report.sigma2_coefficient,
        }
    )
    return 0


def _cmd_field_count(args) -> int:
    complex_unknowns, real_equations, real_unknowns = field_dimension_counts(
        args.da, args.db
    )
    _print(
        {
            "complex": complex_unknowns,
            "real_equations": real_equations,
            "real_unknowns": real_unknowns,
        }
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="povmkit",
        description="Generalized quantum measurement toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate-povm", help="check a POVM file")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_validate_povm)

    p = sub.add_parser("reconstruct", help="recover a state from frame samples")
    p.add_argument("--samples", required=True)
    p.add_argument("--bipartite", action="store_true")
    p.add_argument("--dims", help="dA,dB for bipartite reconstruction")
    p.set_defaults(handler=_cmd_reconstruct)

    p = sub.add_parser("entropy", help="uncertainty report for a state")
    p.add_argument("--state", required=True)
    p.set_defaults(handler=_cmd_entropy)

    p = sub.add_parser("measure", help="probabilities and posterior states")
    p.add_argument("--state", required=True)
    p.add_argument("--povm", required=True)
    p.add_argument("--kraus")
    p.set_defaults(handler=_cmd_measure)

    p = sub.add_parser("dilate", help="ancilla model of a POVM")
    p.add_argument("--povm", required=True)
    p.set_defaults(handler=_cmd_dilate)

    p = sub.add_parser("teleport", help="simulate one teleportation run")
    p.add_argument("--state", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(handler=_cmd_teleport)

    p = sub.add_parser("tomography", help="two-agent convergence simulation")
    p.add_argument("--prior-a", required=True, dest="prior_a")
    p.add_argument("--prior-b", required=True, dest="prior_b")
    p.add_argument("--true", required=True)
    p.add_argument("--povm", required=True)
    p.add_argument("--shots", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=_cmd_tomography)

    p = sub.add_parser("real-demo", help="real-field counterexample report")
    p.add_argument("--copies", type=int, required=True)
    p.set_defaults(handler=_cmd_real_demo)

    p = sub.add_parser("field-count", help="reconstruction equation counts")
    p.add_argument("--da", type=int, required=True)
    p.add_argument("--db", type=int, required=True)
    p.set_defaults(handler=_cmd_field_count)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except _ParseFailure as exc:
        sys.stderr.write(
            pio.stable_json_dumps({"error": "ParseFailure", "message": str(exc)})
            + "\n"
        )
        return 2
    except (PovmkitError, ValueError) as exc:
        sys.stderr.write(
            pio.stable_json_dumps(
                {"error": type(exc).__name__, "message": str(exc)}
            )
            + "\n"
        )
        return 1


def run() -> None:
    sys.exit(main(sys.argv[1:]))
