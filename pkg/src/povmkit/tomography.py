"""Exchangeable states and Bayesian tomography.

A judgment that many preparations are interchangeable is expressed as a
permutation-invariant, extendable multi-copy state; such states are
mixtures of iid products over a prior on single-copy states.  Measuring
copies and conditioning the prior with the Bayes rule then drives
independent agents toward a common predictive state.  Over a real Hilbert
space this mixture representation fails, and this module constructs the
standard counterexample.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import reduce
from typing import Sequence

import numpy as np

from .config import tol
from .entropy import ProbabilityVector
from .errors import (
    DimensionMismatch,
    ImpossibleOutcome,
    NotInformationallyComplete,
    PriorExcludesTruth,
    TooLarge,
)
from .operators import (
    DensityOperator,
    SIGMA_Y,
    _frozen_real,
    trace_distance,
)
from .measurement import born_probabilities
from .reconstruction import Povm

__all__ = [
    "SimplexDistribution",
    "OutcomeSequence",
    "Ensemble",
    "MeasurementRecord",
    "Trajectory",
    "TrajectoryRow",
    "RealFieldCounterexampleReport",
    "classical_definetti_mixture",
    "exchangeable_state",
    "quantum_bayes_update",
    "update_with_record",
    "predictive_state",
    "simulate_tomography_convergence",
    "informational_completeness_check",
    "real_field_counterexample",
    "permutation_invariance_check",
]

# a simplex point is exactly a probability vector
SimplexDistribution = ProbabilityVector

_MAX_CLASSICAL_JOINT = 10**6
_MAX_QUANTUM_DIM = 1024


@dataclass(frozen=True)
class OutcomeSequence:
    """A finite record of trial outcomes, indices into k possibilities."""

    outcomes: tuple[int, ...]
    num_outcomes: int

    def __post_init__(self):
        object.__setattr__(self, "outcomes", tuple(int(x) for x in self.outcomes))
        if any(not 0 <= x < self.num_outcomes for x in self.outcomes):
            raise ValueError("outcome index out of range")

    def counts(self) -> np.ndarray:
        tally = np.zeros(self.num_outcomes, dtype=int)
        for x in self.outcomes:
            tally[x] += 1
        return tally


class Ensemble:
    """A discrete prior over density operators: weights w_k > 0 summing to
    one, one state per component.  Zero-weight components are dropped at
    construction, so support never silently vanishes."""

    __slots__ = ("weights", "states")

    def __init__(self, weights, states: Sequence[DensityOperator]):
        w = np.asarray(weights, dtype=float)
        states = tuple(states)
        if w.ndim != 1 or w.size != len(states) or w.size == 0:
            raise ValueError("need one weight per state")
        if np.any(w < 0):
            raise ValueError("negative weight")
        if abs(w.sum() - 1.0) > tol("weight_sum"):
            raise ValueError(f"weights sum to {w.sum()!r}")
        d = states[0].dim
        if any(s.dim != d for s in states):
            raise DimensionMismatch("ensemble states have mixed dimensions")
        keep = w > 0
        self.weights = _frozen_real(w[keep] / w[keep].sum())
        self.states = tuple(s for s, k in zip(states, keep) if k)

    @property
    def dim(self) -> int:
        return self.states[0].dim

    def __len__(self):
        return len(self.states)

    def mean_state(self) -> DensityOperator:
        return DensityOperator(
            sum(w * s.matrix for w, s in zip(self.weights, self.states))
        )


@dataclass(frozen=True)
class MeasurementRecord:
    """Outcome tallies of repeated runs of one POVM."""

    povm: Povm
    outcome_counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.outcome_counts)
        object.__setattr__(self, "outcome_counts", counts)
        if len(counts) != len(self.povm):
            raise DimensionMismatch("need one count per POVM outcome")
        if any(c < 0 for c in counts):
            raise ValueError("negative count")


def classical_definetti_mixture(weights, points, n_trials: int) -> np.ndarray:
    """Joint outcome distribution of n exchangeable trials under a finite
    mixture of iid distributions; shape (k,)*n.

    Single component -> the iid product; marginalizing the last trial of the
    (n+1)-trial mixture returns the n-trial mixture.
    """
    comps = [SimplexDistribution(p).entries for p in points]
    w = SimplexDistribution(weights).entries
    if len(comps) != w.size:
        raise ValueError("need one weight per component")
    k = comps[0].size
    if any(c.size != k for c in comps):
        raise DimensionMismatch("components have mixed outcome counts")
    if k**n_trials > _MAX_CLASSICAL_JOINT:
        raise TooLarge(f"{k}^{n_trials} joint outcomes exceed the size guard")
    joint = np.zeros((k,) * n_trials)
    for wk, p in zip(w, comps):
        joint = joint + wk * reduce(np.multiply.outer, [p] * n_trials)
    return joint


def _tensor_power(matrix: np.ndarray, n: int) -> np.ndarray:
    return reduce(np.kron, [matrix] * n)


def exchangeable_state(ensemble: Ensemble, n_copies: int) -> DensityOperator:
    """The n-copy state sum_k w_k rho_k^(x n): permutation invariant and
    consistent under dropping a copy."""
    d = ensemble.dim
    if d**n_copies > _MAX_QUANTUM_DIM:
        raise TooLarge(f"{d}^{n_copies} exceeds the size guard")
    out = sum(
        w * _tensor_power(s.matrix, n_copies)
        for w, s in zip(ensemble.weights, ensemble.states)
    )
    return DensityOperator(out)


def predictive_state(ensemble: Ensemble, n_copies: int) -> DensityOperator:
    """State assigned to the next n_copies systems given the current prior."""
    if n_copies == 1:
        return ensemble.mean_state()
    return exchangeable_state(ensemble, n_copies)


def quantum_bayes_update(prior: Ensemble, povm: Povm, outcome: int) -> Ensemble:
    """Condition a prior over states on one measurement outcome:
    w_k -> w_k tr(rho_k E_b) / P(b).  The component states are untouched;
    only their plausibilities move."""
    if prior.dim != povm.dim:
        raise DimensionMismatch("prior and POVM dimensions differ")
    e = povm[outcome].matrix
    likelihood = np.array(
        [np.trace(s.matrix @ e).real for s in prior.states]
    )
    likelihood = np.clip(likelihood, 0.0, None)
    predicted = float(prior.weights @ likelihood)
    if predicted <= tol("outcome_probability"):
        raise ImpossibleOutcome(
            f"outcome {outcome} has prior probability {predicted:.3e}"
        )
    posterior = prior.weights * likelihood / predicted
    return Ensemble(posterior / posterior.sum(), prior.states)


def update_with_record(prior: Ensemble, record: MeasurementRecord) -> Ensemble:
    """Batch Bayes update on outcome tallies, in log space so that large
    counts cannot underflow; order of outcomes is immaterial."""
    if prior.dim != record.povm.dim:
        raise DimensionMismatch("prior and POVM dimensions differ")
    log_likelihood = np.zeros(len(prior))
    for e, count in zip(record.povm, record.outcome_counts):
        if count == 0:
            continue
        p = np.clip(
            [np.trace(s.matrix @ e.matrix).real for s in prior.states],
            0.0,
            None,
        )
        with np.errstate(divide="ignore"):
            log_likelihood = log_likelihood + count * np.log(p)
    shifted = np.exp(log_likelihood - np.max(log_likelihood))
    posterior = prior.weights * shifted
    total = posterior.sum()
    if total <= tol("outcome_probability"):
        raise ImpossibleOutcome("record has zero probability under the prior")
    return Ensemble(posterior / total, prior.states)


def informational_completeness_check(povm: Povm) -> tuple[int, bool]:
    """Numerical rank of the effect Gram matrix; the POVM determines states
    uniquely exactly when the rank reaches d^2."""
    gram = np.array(
        [
            [np.trace(a.matrix @ b.matrix).real for b in povm]
            for a in povm
        ]
    )
    s = np.linalg.svd(gram, compute_uv=False)
    rank = int(np.sum(s > tol("rank")))
    return rank, rank == povm.dim**2


@dataclass(frozen=True)
class TrajectoryRow:
    step: int
    outcome: int
    dist_ab: float
    dist_a_true: float
    dist_b_true: float


@dataclass(frozen=True)
class Trajectory:
    """Per-shot record of two agents' predictive states: their mutual trace
    distance and each one's distance to the sampled state."""

    initial_dist_ab: float
    initial_dist_a_true: float
    initial_dist_b_true: float
    rows: tuple[TrajectoryRow, ...]
    posterior_a: Ensemble = field(repr=False)
    posterior_b: Ensemble = field(repr=False)

    @property
    def final_dist_ab(self) -> float:
        return self.rows[-1].dist_ab if self.rows else self.initial_dist_ab


def _warn_if_far(prior: Ensemble, true_state: DensityOperator, label: str):
    closest = min(trace_distance(s, true_state) for s in prior.states)
    if closest > 0.2:
        warnings.warn(
            f"prior {label} has no component within trace distance 0.2 of "
            f"the sampled state (closest {closest:.3f}); convergence is not "
            "guaranteed",
            PriorExcludesTruth,
        )


def simulate_tomography_convergence(
    prior_a: Ensemble,
    prior_b: Ensemble,
    true_state: DensityOperator,
    povm: Povm,
    shots: int,
    seed: int,
) -> Trajectory:
    """Drive two agents with the same measurement record and watch their
    single-copy predictive states converge.

    The POVM must be informationally complete; each prior should hold some
    component near the sampled state, else a PriorExcludesTruth warning is
    issued and the convergence contract is void.
    """
    rank, complete = informational_completeness_check(povm)
    if not complete:
        raise NotInformationallyComplete(
            f"POVM Gram rank {rank} < {povm.dim ** 2}"
        )
    _warn_if_far(prior_a, true_state, "A")
    _warn_if_far(prior_b, true_state, "B")

    probs = born_probabilities(true_state, povm)
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    outcomes = rng.choice(len(povm), size=shots, p=probs)

    state_a = prior_a.mean_state()
    state_b = prior_b.mean_state()
    initial = (
        trace_distance(state_a, state_b),
        trace_distance(state_a, true_state),
        trace_distance(state_b, true_state),
    )
    rows = []
    a, b = prior_a, prior_b
    for step, outcome in enumerate(outcomes, start=1):
        a = quantum_bayes_update(a, povm, int(outcome))
        b = quantum_bayes_update(b, povm, int(outcome))
        state_a = a.mean_state()
        state_b = b.mean_state()
        rows.append(
            TrajectoryRow(
                step=step,
                outcome=int(outcome),
                dist_ab=trace_distance(state_a, state_b),
                dist_a_true=trace_distance(state_a, true_state),
                dist_b_true=trace_distance(state_b, true_state),
            )
        )
    return Trajectory(
        initial_dist_ab=initial[0],
        initial_dist_a_true=initial[1],
        initial_dist_b_true=initial[2],
        rows=tuple(rows),
        posterior_a=a,
        posterior_b=b,
    )


def permutation_invariance_check(
    state: DensityOperator, d: int, n_copies: int
) -> float:
    """Worst Frobenius defect of the state under adjacent copy swaps;
    adjacent transpositions generate every permutation."""
    if d**n_copies != state.dim:
        raise DimensionMismatch(
            f"state dim {state.dim} is not {d}^{n_copies}"
        )
    shaped = state.matrix.reshape((d,) * (2 * n_copies))
    worst = 0.0
    for t in range(n_copies - 1):
        axes = list(range(2 * n_copies))
        axes[t], axes[t + 1] = axes[t + 1], axes[t]
        axes[n_copies + t], axes[n_copies + t + 1] = (
            axes[n_copies + t + 1],
            axes[n_copies + t],
        )
        swapped = shaped.transpose(axes)
        worst = max(worst, float(np.linalg.norm(shaped - swapped)))
    return worst


@dataclass(frozen=True)
class RealFieldCounterexampleReport:
    """Certificate that an entrywise-real exchangeable state can escape
    every real-field iid mixture.

    The state (rho_+^(x n) + rho_-^(x n))/2 with rho_pm = (I pm sigma_y)/2
    is real (odd sigma_y terms cancel) and exchangeable, yet its two-copy
    marginal carries coefficient 1 on sigma_y x sigma_y, a component no
    mixture of real-entried product states can produce.
    """

    n_copies: int
    max_abs_imag: float
    swap_violation: float
    sigma2_coefficient: float
    state: DensityOperator = field(repr=False)


def real_field_counterexample(n_copies: int) -> RealFieldCounterexampleReport:
    if not 2 <= n_copies <= 6:
        raise ValueError("n_copies must be between 2 and 6")
    eye = np.eye(2, dtype=complex)
    rho_plus = 0.5 * (eye + SIGMA_Y.matrix)
    rho_minus = 0.5 * (eye - SIGMA_Y.matrix)
    state_matrix = 0.5 * (
        _tensor_power(rho_plus, n_copies) + _tensor_power(rho_minus, n_copies)
    )
    state = DensityOperator(state_matrix)
    max_imag = float(np.max(np.abs(state_matrix.imag)))
    swap = permutation_invariance_check(state, 2, n_copies)
    two_copy = 0.5 * (
        _tensor_power(rho_plus, 2) + _tensor_power(rho_minus, 2)
    )
    witness = np.kron(SIGMA_Y.matrix, SIGMA_Y.matrix)
    coefficient = float(np.trace(two_copy @ witness).real)
    return RealFieldCounterexampleReport(
        n_copies=n_copies,
        max_abs_imag=max_imag,
        swap_violation=swap,
        sigma2_coefficient=coefficient,
        state=state,
    )
