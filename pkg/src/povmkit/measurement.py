"""The measurement-update calculus.

Born probabilities, Kraus-form posterior states, the square-root
("Bayes-rule") decomposition of a state induced by a POVM, the unitary
readjustment connecting the two, raw collapse via effect square roots,
ancilla dilations of POVMs and their Kraus extraction, remote steering of
one half of an entangled pair, and a seeded teleportation simulation.

The recurring theme: an efficient measurement update factors exactly into a
refinement rho -> sqrt(rho) E_b sqrt(rho) / P(b), which averages back to
rho, followed by an outcome-dependent unitary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .config import tol
from .errors import (
    BadCompleteness,
    DimensionMismatch,
    NotAState,
    ZeroProbability,
)
from .operators import (
    DensityOperator,
    Effect,
    HermitianOperator,
    UnitaryOperator,
    _frozen_real,
    _haar_unitaries,
    _partial_trace,
    _sqrt_psd,
    eig_hermitian,
)
from .reconstruction import Povm, random_povm

__all__ = [
    "KrausChannelSet",
    "Dilation",
    "BipartitePureState",
    "TeleportationTranscript",
    "born_probabilities",
    "posterior_states",
    "efficient_posterior",
    "bayes_decomposition",
    "readjustment_unitary",
    "raw_collapse",
    "polar_factor",
    "dilate_povm",
    "povm_from_dilation",
    "kraus_from_dilation",
    "steering_povm",
    "simulate_teleportation",
    "random_efficient_channel",
]


class KrausChannelSet:
    """Outcome-indexed Kraus operators {A_bi} of a measurement.

    Completeness sum_{b,i} A_bi^dag A_bi = I is enforced; the per-outcome
    sums E_b = sum_i A_bi^dag A_bi are the measured POVM's effects.
    """

    __slots__ = ("outcomes",)

    def __init__(self, outcomes: Sequence[Sequence[np.ndarray]]):
        if not outcomes:
            raise BadCompleteness("a channel needs at least one outcome")
        cleaned = []
        d = None
        for ops in outcomes:
            if not ops:
                raise BadCompleteness("an outcome needs at least one Kraus operator")
            mats = []
            for a in ops:
                m = np.asarray(a, dtype=complex)
                if m.ndim != 2 or m.shape[0] != m.shape[1]:
                    raise DimensionMismatch("Kraus operators must be square")
                if d is None:
                    d = m.shape[0]
                elif m.shape[0] != d:
                    raise DimensionMismatch("Kraus operators have mixed dimensions")
                m = m.copy()
                m.setflags(write=False)
                mats.append(m)
            cleaned.append(tuple(mats))
        total = sum(
            a.conj().T @ a for ops in cleaned for a in ops
        )
        if np.linalg.norm(total - np.eye(d)) > tol("completeness"):
            raise BadCompleteness("Kraus operators do not resolve the identity")
        self.outcomes = tuple(cleaned)

    @classmethod
    def from_single_kraus(cls, operators: Sequence[np.ndarray]) -> "KrausChannelSet":
        """Efficient channel: one Kraus operator per outcome."""
        return cls([[a] for a in operators])

    @property
    def dim(self) -> int:
        return self.outcomes[0][0].shape[0]

    @property
    def n_outcomes(self) -> int:
        return len(self.outcomes)

    @property
    def is_efficient(self) -> bool:
        return all(len(ops) == 1 for ops in self.outcomes)

    def effects(self) -> list[Effect]:
        return [
            Effect(sum(a.conj().T @ a for a in ops)) for ops in self.outcomes
        ]

    def povm(self) -> Povm:
        return Povm(self.effects())


@dataclass(frozen=True)
class Dilation:
    """Ancilla model of a POVM: prepare the ancilla, evolve jointly, read an
    orthogonal projective measurement off the ancilla."""

    ancilla_state: DensityOperator
    unitary: UnitaryOperator
    projectors: tuple[HermitianOperator, ...]

    def __post_init__(self):
        object.__setattr__(self, "projectors", tuple(self.projectors))
        n = self.ancilla_state.dim
        if self.unitary.dim % n != 0:
            raise DimensionMismatch("unitary dim is not a multiple of ancilla dim")
        total = sum(p.matrix for p in self.projectors)
        if np.linalg.norm(total - np.eye(n)) > tol("completeness"):
            raise BadCompleteness("ancilla projectors do not sum to the identity")
        for i, p in enumerate(self.projectors):
            if np.linalg.norm(p.matrix @ p.matrix - p.matrix) > tol("completeness"):
                raise BadCompleteness(f"projector {i} is not idempotent")
            for q in self.projectors[i + 1 :]:
                if np.linalg.norm(p.matrix @ q.matrix) > tol("completeness"):
                    raise BadCompleteness("ancilla projectors are not orthogonal")

    @property
    def system_dim(self) -> int:
        return self.unitary.dim // self.ancilla_state.dim

    @property
    def ancilla_dim(self) -> int:
        return self.ancilla_state.dim


class BipartitePureState:
    """Schmidt form of a pure state on two systems of equal dimension:
    |psi> = sum_i c_i |a_i>|b_i> with c_i >= 0 and complete orthonormal
    bases stored column-wise."""

    __slots__ = ("schmidt_coefficients", "basis_a", "basis_b")

    def __init__(self, schmidt_coefficients, basis_a, basis_b):
        c = np.asarray(schmidt_coefficients, dtype=float)
        a = np.asarray(basis_a, dtype=complex)
        b = np.asarray(basis_b, dtype=complex)
        d = c.size
        if a.shape != (d, d) or b.shape != (d, d):
            raise DimensionMismatch(
                "bases must be complete (square) and match the coefficients"
            )
        if np.any(c < 0):
            raise NotAState("Schmidt coefficients must be nonnegative")
        if abs(np.sum(c**2) - 1.0) > tol("trace"):
            raise NotAState("squared Schmidt coefficients must sum to 1")
        for m in (a, b):
            if np.linalg.norm(m.conj().T @ m - np.eye(d)) > tol("orthonormality"):
                raise NotAState("basis columns are not orthonormal")
        self.schmidt_coefficients = _frozen_real(c)
        a = a.copy()
        b = b.copy()
        a.setflags(write=False)
        b.setflags(write=False)
        self.basis_a = a
        self.basis_b = b

    @property
    def dim(self) -> int:
        return self.schmidt_coefficients.size

    @classmethod
    def from_vector(cls, vector, dims) -> "BipartitePureState":
        """Schmidt-decompose a joint state vector (equal local dimensions)."""
        d_a, d_b = int(dims[0]), int(dims[1])
        if d_a != d_b:
            raise DimensionMismatch("Schmidt form here requires equal dimensions")
        v = np.asarray(vector, dtype=complex).ravel()
        if v.size != d_a * d_b:
            raise DimensionMismatch("vector length does not match dims")
        v = v / np.linalg.norm(v)
        u, s, vh = np.linalg.svd(v.reshape(d_a, d_b))
        return cls(s, u, vh.T)

    @classmethod
    def maximally_entangled(cls, d: int) -> "BipartitePureState":
        return cls(np.full(d, 1.0 / np.sqrt(d)), np.eye(d), np.eye(d))

    def vector(self) -> np.ndarray:
        out = np.zeros(self.dim * self.dim, dtype=complex)
        for i, c in enumerate(self.schmidt_coefficients):
            out += c * np.kron(self.basis_a[:, i], self.basis_b[:, i])
        return out

    def marginal(self, which: str) -> DensityOperator:
        basis = self.basis_a if which == "A" else self.basis_b
        lam = self.schmidt_coefficients**2
        return DensityOperator((basis * lam) @ basis.conj().T)


def born_probabilities(rho: DensityOperator, povm: Povm) -> np.ndarray:
    """Outcome probabilities P(b) = tr(rho E_b), clamped into [0, 1]."""
    if rho.dim != povm.dim:
        raise DimensionMismatch(f"state dim {rho.dim} != POVM dim {povm.dim}")
    p = np.array([np.trace(rho.matrix @ e.matrix).real for e in povm])
    return np.clip(p, 0.0, 1.0)


def posterior_states(
    rho: DensityOperator, channel: KrausChannelSet
) -> list[tuple[float, DensityOperator | None]]:
    """Post-measurement states rho_b = sum_i A_bi rho A_bi^dag / P(b).

    Outcomes with negligible probability carry no state (None)."""
    if rho.dim != channel.dim:
        raise DimensionMismatch("state and channel dimensions differ")
    out = []
    for ops in channel.outcomes:
        sigma = sum(a @ rho.matrix @ a.conj().T for a in ops)
        p = float(np.trace(sigma).real)
        if p < tol("zero_probability"):
            out.append((max(p, 0.0), None))
        else:
            out.append((p, DensityOperator(sigma / p)))
    return out


def efficient_posterior(
    rho: DensityOperator, a_b: np.ndarray
) -> tuple[float, DensityOperator]:
    """Single-Kraus update rho -> A rho A^dag / P(b) with E_b = A^dag A."""
    a = np.asarray(a_b, dtype=complex)
    if a.shape != (rho.dim, rho.dim):
        raise DimensionMismatch("Kraus operator does not match the state")
    sigma = a @ rho.matrix @ a.conj().T
    p = float(np.trace(sigma).real)
    if p < tol("zero_probability"):
        raise ZeroProbability(f"outcome probability {p:.3e} is negligible")
    return p, DensityOperator(sigma / p)


def bayes_decomposition(
    rho: DensityOperator, povm: Povm
) -> list[tuple[float, DensityOperator | None]]:
    """Refinement decomposition rho = sum_b P(b) rho_b~ with
    rho_b~ = sqrt(rho) E_b sqrt(rho) / P(b).

    Unlike a generic collapse, these conditional states average back to
    rho exactly, mirroring classical conditioning on a joint distribution.
    """
    if rho.dim != povm.dim:
        raise DimensionMismatch("state and POVM dimensions differ")
    root = _sqrt_psd(rho.matrix)
    out = []
    for e in povm:
        m = root @ e.matrix @ root
        p = float(np.trace(m).real)
        if p < tol("zero_probability"):
            out.append((max(p, 0.0), None))
        else:
            out.append((p, DensityOperator(m / p)))
    return out


def readjustment_unitary(rho: DensityOperator, a_b: np.ndarray) -> UnitaryOperator:
    """The unitary V_b carrying the refinement state rho_b~ to the actual
    posterior rho_b = V_b rho_b~ V_b^dag.

    rho_b and rho_b~ share a spectrum, so matching their eigenvector frames
    (in the deterministic eig_hermitian order) yields V_b.
    """
    a = np.asarray(a_b, dtype=complex)
    p, rho_b = efficient_posterior(rho, a)
    root = _sqrt_psd(rho.matrix)
    refined = root @ (a.conj().T @ a) @ root / p
    frame_post = eig_hermitian(rho_b).eigenvectors
    frame_refined = eig_hermitian(HermitianOperator(refined)).eigenvectors
    return UnitaryOperator(frame_post @ frame_refined.conj().T)


def raw_collapse(rho: DensityOperator, e_b: Effect) -> tuple[float, DensityOperator]:
    """Effect-square-root collapse sigma_b = sqrt(E_b) rho sqrt(E_b) / P(b);
    the full posterior is U_b sigma_b U_b^dag with U_b the polar factor of
    the chosen Kraus operator."""
    if rho.dim != e_b.dim:
        raise DimensionMismatch("state and effect dimensions differ")
    root = _sqrt_psd(e_b.matrix)
    m = root @ rho.matrix @ root
    p = float(np.trace(m).real)
    if p < tol("zero_probability"):
        raise ZeroProbability(f"outcome probability {p:.3e} is negligible")
    return p, DensityOperator(m / p)


def polar_factor(a: np.ndarray) -> np.ndarray:
    """Unitary factor U of the polar decomposition A = U (A^dag A)^(1/2)."""
    u, _, vh = np.linalg.svd(np.asarray(a, dtype=complex))
    return u @ vh


def _complete_isometry(columns: np.ndarray, positions: list[int], m: int) -> np.ndarray:
    """Deterministically extend orthonormal columns to an m x m unitary.

    The given columns are placed at the given positions; the remaining
    positions are filled by Gram-Schmidt over the standard basis in fixed
    pivot order.
    """
    have = [columns[:, k] for k in range(columns.shape[1])]
    extra = []
    for j in range(m):
        if len(have) + len(extra) == m:
            break
        w = np.zeros(m, dtype=complex)
        w[j] = 1.0
        for _ in range(2):  # twice for numerical orthogonality
            for c in have + extra:
                w = w - c * (c.conj() @ w)
        norm = np.linalg.norm(w)
        if norm > 1e-7:
            extra.append(w / norm)
    if len(have) + len(extra) != m:
        raise RuntimeError("failed to complete isometry")
    u = np.zeros((m, m), dtype=complex)
    rest = [k for k in range(m) if k not in positions]
    for col, k in zip(have, positions):
        u[:, k] = col
    for col, k in zip(extra, rest):
        u[:, k] = col
    return u


def dilate_povm(povm: Povm) -> Dilation:
    """Naimark model of a POVM: a pure ancilla of one dimension per outcome,
    a joint unitary extending the isometry V|s> = sum_b sqrt(E_b)|s> |b>,
    and the ancilla basis projectors.

    The canonical Kraus choice baked in here is A_b = sqrt(E_b).
    """
    d = povm.dim
    n = len(povm)
    roots = [_sqrt_psd(e.matrix) for e in povm]
    v = np.zeros((d * n, d), dtype=complex)
    for b, root in enumerate(roots):
        for i in range(d):
            v[i * n + b, :] = v[i * n + b, :] + root[i, :]
    # column s of the unitary at tensor position (s, ancilla=0)
    unitary = _complete_isometry(v, [s * n for s in range(d)], d * n)
    ancilla = np.zeros((n, n), dtype=complex)
    ancilla[0, 0] = 1.0
    projectors = []
    for b in range(n):
        p = np.zeros((n, n))
        p[b, b] = 1.0
        projectors.append(HermitianOperator(p))
    return Dilation(
        ancilla_state=DensityOperator(ancilla),
        unitary=UnitaryOperator(unitary),
        projectors=tuple(projectors),
    )


def povm_from_dilation(dilation: Dilation, d_system: int) -> Povm:
    """Read the measured POVM off an ancilla model:
    E_b = tr_anc[(I x rho_A) U^dag (I x Pi_b) U]."""
    n = dilation.ancilla_dim
    if d_system * n != dilation.unitary.dim:
        raise DimensionMismatch("system dim inconsistent with the dilation")
    u = dilation.unitary.matrix
    rho_a = dilation.ancilla_state.matrix
    eye_rho = np.kron(np.eye(d_system), rho_a)
    effects = []
    for p in dilation.projectors:
        heis = u.conj().T @ np.kron(np.eye(d_system), p.matrix) @ u
        e = _partial_trace(eye_rho @ heis, d_system, n, "A")
        effects.append(Effect(0.5 * (e + e.conj().T)))
    return Povm(effects)


def kraus_from_dilation(dilation: Dilation, d_system: int) -> KrausChannelSet:
    """Extract outcome-indexed Kraus operators from an ancilla model:
    A_{b,(beta,alpha)} = sqrt(lambda_alpha) <a_beta| Pi_b U |a_alpha>,
    contracting only the ancilla factor.

    Rows with negligible norm are pruned; the survivors satisfy
    sum_i A_bi^dag A_bi = E_b and reproduce the projection-postulate-at-a-
    distance posterior.
    """
    n = dilation.ancilla_dim
    if d_system * n != dilation.unitary.dim:
        raise DimensionMismatch("system dim inconsistent with the dilation")
    spec = eig_hermitian(dilation.ancilla_state)
    lam = np.clip(spec.eigenvalues, 0.0, None)
    avecs = spec.eigenvectors
    u = dilation.unitary.matrix.reshape(d_system, n, d_system, n)
    outcomes = []
    for p in dilation.projectors:
        # Pi_b applied on the ancilla output index
        pu = np.einsum("mc,icjd->imjd", p.matrix, u)
        ops = []
        for alpha in range(n):
            if lam[alpha] < tol("zero_probability"):
                continue
            weight = np.sqrt(lam[alpha])
            for beta in range(n):
                a = weight * np.einsum(
                    "m,imjd,d->ij", avecs[:, beta].conj(), pu, avecs[:, alpha]
                )
                if np.linalg.norm(a) > 1e-12:
                    ops.append(a)
        if not ops:
            # outcome of probability zero for every state; keep a zero row
            # impossible for valid dilations of POVMs, guard anyway
            ops.append(np.zeros((d_system, d_system), dtype=complex))
        outcomes.append(ops)
    return KrausChannelSet(outcomes)


def steering_povm(
    psi: BipartitePureState, kraus_on_a: Sequence[np.ndarray]
) -> list[tuple[Effect, DensityOperator | None]]:
    """Remote measurement: Kraus operators applied to side A of a shared
    pure state steer side B through the effective POVM
    F_b = (U A_b^dag A_b U^dag)^T, written in the B Schmidt basis.

    The returned posteriors are computed by honest partial tracing; they
    coincide with the pure refinement sqrt(rho) F_b sqrt(rho) / P(b) of B's
    marginal.
    """
    d = psi.dim
    ops = [np.asarray(a, dtype=complex) for a in kraus_on_a]
    if any(a.shape != (d, d) for a in ops):
        raise DimensionMismatch("Kraus operators do not match side A")
    total = sum(a.conj().T @ a for a in ops)
    if np.linalg.norm(total - np.eye(d)) > tol("completeness"):
        raise BadCompleteness("Kraus set on A does not resolve the identity")
    vec = psi.vector()
    out = []
    for a in ops:
        gram = psi.basis_a.conj().T @ (a.conj().T @ a) @ psi.basis_a
        f_b = psi.basis_b @ gram.T @ psi.basis_b.conj().T
        effect = Effect(0.5 * (f_b + f_b.conj().T))
        m = ((np.kron(a, np.eye(d)) @ vec)).reshape(d, d)
        p = float(np.sum(np.abs(m) ** 2))
        if p < tol("zero_probability"):
            out.append((effect, None))
        else:
            out.append((effect, DensityOperator(m.T @ m.conj() / p)))
    return out


_BELL_VECTORS = np.array(
    [
        [1, 0, 0, 1],   # (|00> + |11>)/sqrt2
        [0, 1, 1, 0],   # (|01> + |10>)/sqrt2
        [0, 1, -1, 0],  # (|01> - |10>)/sqrt2
        [1, 0, 0, -1],  # (|00> - |11>)/sqrt2
    ],
    dtype=complex,
) / np.sqrt(2)

_PAULI_CORRECTIONS = (
    ("I", np.eye(2, dtype=complex)),
    ("X", np.array([[0, 1], [1, 0]], dtype=complex)),
    ("Y", np.array([[0, -1j], [1j, 0]], dtype=complex)),
    ("Z", np.array([[1, 0], [0, -1]], dtype=complex)),
)


@dataclass(frozen=True)
class TeleportationTranscript:
    """Record of one teleportation run: the sampled Bell outcome, Bob's
    conditional state before and after the Pauli correction, and the final
    verification probability."""

    input_state: np.ndarray = field(repr=False)
    bell_probabilities: np.ndarray
    bell_outcome: int
    pre_correction_state: DensityOperator
    correction: str
    final_state: DensityOperator
    verification_probability: float


def simulate_teleportation(psi, seed: int) -> TeleportationTranscript:
    """Teleport a qubit state through a shared maximally entangled pair.

    Alice Bell-measures her input together with her half of the pair
    (outcome sampled from the seed), Bob applies the Pauli correction
    matching the broadcast outcome, and the transcript closes with the
    yes/no verification tr(|psi><psi| rho_final).
    """
    v = np.asarray(psi, dtype=complex).ravel()
    if v.size != 2 or np.linalg.norm(v) == 0:
        raise DimensionMismatch("input must be a nonzero qubit state vector")
    v = v / np.linalg.norm(v)
    bell_pair = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    total = np.kron(v, bell_pair)  # qubits: input, Alice half, Bob half

    conditionals = []
    probs = []
    for k in range(4):
        proj = np.kron(_BELL_VECTORS[k].conj(), np.eye(2))  # (2, 8)
        bob = proj @ total
        probs.append(float(np.sum(np.abs(bob) ** 2)))
        conditionals.append(bob)
    probs = np.array(probs)

    rng = np.random.default_rng(seed)
    outcome = int(rng.choice(4, p=probs / probs.sum()))
    bob = conditionals[outcome] / np.sqrt(probs[outcome])
    pre = DensityOperator(np.outer(bob, bob.conj()))
    label, correction = _PAULI_CORRECTIONS[outcome]
    final = DensityOperator(correction @ pre.matrix @ correction.conj().T)
    verification = float((v.conj() @ final.matrix @ v).real)
    frozen_input = v.copy()
    frozen_input.setflags(write=False)
    return TeleportationTranscript(
        input_state=frozen_input,
        bell_probabilities=_frozen_real(probs),
        bell_outcome=outcome,
        pre_correction_state=pre,
        correction=label,
        final_state=final,
        verification_probability=verification,
    )


def random_efficient_channel(d: int, n_outcomes: int, seed: int) -> KrausChannelSet:
    """Seeded efficient channel A_b = U_b sqrt(E_b) over a random POVM, with
    independent Haar readjustments U_b."""
    rng = np.random.default_rng(seed)
    povm = random_povm(d, n_outcomes, int(rng.integers(0, 2**31)))
    units = _haar_unitaries(rng, d, n_outcomes)
    ops = [units[b] @ _sqrt_psd(e.matrix) for b, e in enumerate(povm)]
    return KrausChannelSet.from_single_kraus(ops)
