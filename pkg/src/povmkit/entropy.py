"""Uncertainty measures: Shannon and conditional entropy, von Neumann
entropy, subentropy, and the mean entropy of a Haar-typical von Neumann
measurement, plus the expected-uncertainty-decrease check for efficient
measurements.

All values are in bits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import tol
from .errors import NotAJoint, NotEfficient, ZeroProbabilityData
from .measurement import KrausChannelSet, efficient_posterior
from .operators import DensityOperator, _frozen_real, _haar_unitaries

__all__ = [
    "ProbabilityVector",
    "UncertaintyReport",
    "UncertaintyChangeReport",
    "shannon",
    "conditional_shannon",
    "classical_condition",
    "von_neumann",
    "subentropy",
    "subentropy_of_spectrum",
    "mean_entropy",
    "monte_carlo_mean_entropy",
    "expected_posterior_uncertainty",
    "uncertainty_report",
]

_LN2 = float(np.log(2.0))


class ProbabilityVector:
    """Nonnegative entries summing to one."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        p = np.asarray(entries, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise NotAJoint("expected a nonempty 1-d probability vector")
        if np.any(p < -tol("frame_value")):
            raise NotAJoint("negative probability entry")
        if abs(p.sum() - 1.0) > tol("weight_sum"):
            raise NotAJoint(f"probabilities sum to {p.sum()!r}")
        self.entries = _frozen_real(np.clip(p, 0.0, None))

    def __len__(self):
        return self.entries.size

    def __iter__(self):
        return iter(self.entries)


def _coerce(p) -> np.ndarray:
    if isinstance(p, ProbabilityVector):
        return p.entries
    return ProbabilityVector(p).entries


def _entropy_bits(p: np.ndarray) -> float:
    """-sum p log2 p with the 0 log 0 = 0 convention, no validation."""
    mask = p > tol("entropy_zero")
    if not np.any(mask):
        return 0.0
    q = p[mask]
    return float(-np.sum(q * np.log2(q)))


def shannon(p) -> float:
    """Shannon entropy of a probability vector, in bits."""
    return _entropy_bits(_coerce(p))


def _joint_matrix(joint) -> np.ndarray:
    m = np.asarray(joint, dtype=float)
    if m.ndim != 2:
        raise NotAJoint("expected a 2-d joint distribution p(h, d)")
    if np.any(m < -tol("frame_value")):
        raise NotAJoint("negative joint entry")
    if abs(m.sum() - 1.0) > tol("weight_sum"):
        raise NotAJoint(f"joint sums to {m.sum()!r}")
    return np.clip(m, 0.0, None)


def conditional_shannon(joint) -> float:
    """S(H|D) = sum_d p(d) S(H|d) for a joint matrix with rows h, columns d.

    Never exceeds the marginal entropy S(H): conditioning on data cannot be
    expected to increase uncertainty.
    """
    m = _joint_matrix(joint)
    p_d = m.sum(axis=0)
    total = 0.0
    for d in range(m.shape[1]):
        if p_d[d] <= tol("entropy_zero"):
            continue
        total += p_d[d] * _entropy_bits(m[:, d] / p_d[d])
    return total


def classical_condition(joint, observed: int) -> ProbabilityVector:
    """Bayes conditioning: pick off the column of the joint matching the
    observed datum and renormalize, p(h|d) = p(h,d)/p(d)."""
    m = _joint_matrix(joint)
    p_d = float(m[:, observed].sum())
    if p_d <= tol("entropy_zero"):
        raise ZeroProbabilityData(f"datum {observed} has probability {p_d}")
    return ProbabilityVector(m[:, observed] / p_d)


def von_neumann(rho: DensityOperator) -> float:
    """Von Neumann entropy -tr(rho log2 rho): the outcome entropy of the
    most predictable standard measurement (the eigenbasis)."""
    eigs = np.clip(np.linalg.eigvalsh(rho.matrix), 0.0, None)
    return _entropy_bits(eigs)


def _cluster_spectrum(lam: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sort descending and merge eigenvalues chained within the degeneracy
    tolerance into their means; returns (nodes, cluster ids)."""
    lam = np.sort(lam)[::-1]
    delta = tol("degeneracy")
    nodes = np.empty_like(lam)
    ids = np.empty(lam.size, dtype=int)
    start = 0
    cluster = 0
    for i in range(1, lam.size + 1):
        if i < lam.size and lam[i - 1] - lam[i] <= delta:
            continue
        nodes[start:i] = np.mean(lam[start:i])
        ids[start:i] = cluster
        cluster += 1
        start = i
    return nodes, ids


def subentropy_of_spectrum(eigenvalues) -> float:
    """Subentropy Q of a spectrum, in bits.

    Q = -sum_k (prod_{i != k} lambda_k / (lambda_k - lambda_i))
        lambda_k log2 lambda_k
    equals minus the divided difference of g(x) = x^n log2 x over the n
    nonzero eigenvalues.  Repeated (clustered) eigenvalues are handled with
    confluent divided differences, i.e. the exact degenerate limit, which
    stays accurate where naive epsilon-splitting loses all precision.
    """
    lam = np.asarray(eigenvalues, dtype=float)
    lam = lam[lam > tol("entropy_zero")]  # zero eigenvalues drop out exactly
    n = lam.size
    if n == 0:
        return 0.0
    nodes, ids = _cluster_spectrum(lam)

    # confluent values a_j x^(n-j) ln x + b_j x^(n-j) for g(x) = x^n ln x
    a = np.empty(n)
    b = np.empty(n)
    a[0], b[0] = 1.0, 0.0
    for j in range(n - 1):
        a[j + 1] = a[j] * (n - j) / (j + 1)
        b[j + 1] = (a[j] + b[j] * (n - j)) / (j + 1)

    logs = np.log(nodes)
    table = nodes**n * logs
    for j in range(1, n):
        size = n - j
        nxt = np.empty(size)
        for i in range(size):
            if ids[i] == ids[i + j]:
                x = nodes[i]
                nxt[i] = (a[j] * logs[i] + b[j]) * x ** (n - j)
            else:
                nxt[i] = (table[i + 1] - table[i]) / (nodes[i + j] - nodes[i])
        table = nxt
    return -float(table[0]) / _LN2


def subentropy(rho: DensityOperator) -> float:
    """Subentropy Q(rho) in bits; vanishes on pure states and never exceeds
    (1 - gamma)/ln 2, about 0.60995 bits."""
    return subentropy_of_spectrum(np.linalg.eigvalsh(rho.matrix))


def mean_entropy(rho: DensityOperator) -> float:
    """Mean outcome entropy of a Haar-typical von Neumann measurement:
    (1/ln 2)(1/2 + 1/3 + ... + 1/d) + Q(rho), in bits."""
    d = rho.dim
    harmonic = sum(1.0 / k for k in range(2, d + 1)) / _LN2
    return harmonic + subentropy(rho)


def monte_carlo_mean_entropy(
    rho: DensityOperator, samples: int, seed: int
) -> tuple[float, float]:
    """Monte Carlo estimate of the mean measurement entropy: average the
    outcome Shannon entropy over Haar-random orthonormal measurement bases.

    Returns (estimate, standard error); identical seeds reproduce both.
    """
    if samples < 100:
        raise ValueError("need at least 100 samples")
    d = rho.dim
    rng = np.random.default_rng(seed)
    values = np.empty(samples)
    done = 0
    while done < samples:
        batch = min(20000, samples - done)
        units = _haar_unitaries(rng, d, batch)
        probs = np.einsum(
            "bji,jk,bki->bi", units.conj(), rho.matrix, units
        ).real
        probs = np.clip(probs, 0.0, 1.0)
        safe = np.where(probs > tol("entropy_zero"), probs, 1.0)
        values[done : done + batch] = -np.sum(probs * np.log2(safe), axis=1)
        done += batch
    estimate = float(values.mean())
    spread = float(values.std(ddof=1)) if samples > 1 else 0.0
    return estimate, spread / float(np.sqrt(samples))


@dataclass(frozen=True)
class UncertaintyReport:
    """Bundled uncertainty measures of one state, in bits."""

    von_neumann_bits: float
    subentropy_bits: float
    mean_entropy_bits: float


def uncertainty_report(rho: DensityOperator) -> UncertaintyReport:
    return UncertaintyReport(
        von_neumann_bits=von_neumann(rho),
        subentropy_bits=subentropy(rho),
        mean_entropy_bits=mean_entropy(rho),
    )


@dataclass(frozen=True)
class UncertaintyChangeReport:
    """Uncertainty before a measurement vs. expected uncertainty after it,
    for both the von Neumann entropy and the subentropy."""

    s_before: float
    s_after_expected: float
    q_before: float
    q_after_expected: float

    @property
    def s_gap(self) -> float:
        return self.s_before - self.s_after_expected

    @property
    def q_gap(self) -> float:
        return self.q_before - self.q_after_expected


def expected_posterior_uncertainty(
    rho: DensityOperator, channel: KrausChannelSet
) -> UncertaintyChangeReport:
    """Expected posterior entropy and subentropy under an efficient
    measurement; both can only decrease on average, because each posterior
    shares its spectrum with a refinement term of rho."""
    if not channel.is_efficient:
        raise NotEfficient("channel discards information (multiple Kraus "
                           "operators on one outcome)")
    s_after = 0.0
    q_after = 0.0
    for (a,) in channel.outcomes:
        p = float(np.trace(rho.matrix @ (a.conj().T @ a)).real)
        if p < tol("zero_probability"):
            continue
        _, posterior = efficient_posterior(rho, a)
        s_after += p * von_neumann(posterior)
        q_after += p * subentropy(posterior)
    return UncertaintyChangeReport(
        s_before=von_neumann(rho),
        s_after_expected=s_after,
        q_before=subentropy(rho),
        q_after_expected=q_after,
    )
