"""Frame functions over effects and density-operator reconstruction.

A frame function assigns a value in [0, 1] to every effect such that the
values across any POVM sum to one.  Linearity then forces the Born form
f(E) = tr(rho E), so a state can be recovered by solving the linear system
tr(rho E_i) = f(E_i) over a spanning effect set.  This module implements
that reconstruction for single and bipartite systems, the frame-function
law checks, locally-measurable two-stage POVM trees, and the rank analysis
showing that reconstruction from product effects is unique over the complex
field but not over the reals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .config import tol
from .errors import (
    BadCompleteness,
    DimensionMismatch,
    InconsistentSamples,
    NotAState,
    NotInformationallyComplete,
)
from .operators import (
    DensityOperator,
    Effect,
    _sqrt_psd,
    operator_basis,
    spanning_effects,
)

__all__ = [
    "Povm",
    "FrameFunctionSample",
    "PovmTree",
    "TreeValidation",
    "FrameLawReport",
    "RealFieldRankReport",
    "validate_povm",
    "frame_from_state",
    "reconstruct_state",
    "reconstruct_bipartite",
    "check_frame_function_laws",
    "field_dimension_counts",
    "real_rank_deficiency_demo",
    "validate_povm_tree",
    "projective_povm",
    "trine_povm",
    "tetrahedral_povm",
    "domino_povm",
    "random_povm",
]


class Povm:
    """A finite set of effects resolving the identity."""

    __slots__ = ("effects",)

    def __init__(self, effects: Sequence[Effect]):
        if not effects:
            raise BadCompleteness("a POVM needs at least one effect")
        effects = tuple(
            e if isinstance(e, Effect) else Effect(e) for e in effects
        )
        d = effects[0].dim
        if any(e.dim != d for e in effects):
            raise DimensionMismatch("effects have mixed dimensions")
        total = sum(e.matrix for e in effects)
        if np.linalg.norm(total - np.eye(d)) > tol("completeness"):
            raise BadCompleteness("effects do not sum to the identity")
        self.effects = effects

    @property
    def dim(self) -> int:
        return self.effects[0].dim

    def __len__(self):
        return len(self.effects)

    def __iter__(self):
        return iter(self.effects)

    def __getitem__(self, b):
        return self.effects[b]


def validate_povm(effects: Sequence) -> Povm:
    """Check the effect conditions and the identity sum; raises NotAnEffect
    or BadCompleteness on failure."""
    return Povm(effects)


@dataclass(frozen=True)
class FrameFunctionSample:
    """One (effect, value) probability assignment."""

    effect: Effect
    value: float

    def __post_init__(self):
        slack = tol("frame_value")
        if not -slack <= self.value <= 1.0 + slack:
            raise ValueError(f"frame value {self.value} outside [0, 1]")


def frame_from_state(rho: DensityOperator) -> Callable[[Effect], float]:
    """The Born-rule frame function E -> tr(rho E) of a given state."""

    def f(effect: Effect) -> float:
        if effect.dim != rho.dim:
            raise DimensionMismatch(
                f"effect dim {effect.dim} != state dim {rho.dim}"
            )
        return float(np.trace(rho.matrix @ effect.matrix).real)

    return f


def _orthonormal_hermitian_basis(d: int) -> list[np.ndarray]:
    """operator_basis(d) rescaled to Frobenius-orthonormal matrices."""
    return [
        b.matrix / np.linalg.norm(b.matrix) for b in operator_basis(d)
    ]


def _solve_frame_system(design: np.ndarray, values: np.ndarray, unknowns: int):
    """Least-squares solve with an SVD rank gate.

    Returns (coefficients, residual); raises when the design does not span.
    """
    u, s, vt = np.linalg.svd(design, full_matrices=False)
    rank = int(np.sum(s > tol("rank")))
    if rank < unknowns:
        raise NotInformationallyComplete(
            f"design rank {rank} < {unknowns} unknowns"
        )
    coeff = vt.T @ ((u.T @ values) / s)
    residual = float(np.linalg.norm(design @ coeff - values))
    if residual > tol("residual"):
        raise InconsistentSamples(f"residual {residual:.3e} too large")
    return coeff, residual


def _repair_to_state(matrix: np.ndarray) -> DensityOperator:
    """Clamp-and-renormalize PSD repair, allowed only for small deviations."""
    eigs, vecs = np.linalg.eigh(matrix)
    negativity = max(0.0, -float(eigs[0]))
    trace_dev = abs(float(np.trace(matrix).real) - 1.0)
    if negativity > tol("psd_repair") or trace_dev > tol("psd_repair"):
        raise NotAState(
            f"solution is not a state (negativity {negativity:.3e}, "
            f"trace deviation {trace_dev:.3e})"
        )
    clamped = np.clip(eigs, 0.0, None)
    repaired = (vecs * (clamped / np.sum(clamped))) @ vecs.conj().T
    return DensityOperator(repaired)


def reconstruct_state(
    samples: Sequence[FrameFunctionSample],
) -> tuple[DensityOperator, float]:
    """Recover the density operator behind a set of frame-function samples.

    Solves tr(rho E_i) = f(E_i) by least squares over an orthonormal
    Hermitian basis.  The effect set must span the operator space
    (design rank d^2); the reported residual is the L2 misfit.
    """
    if not samples:
        raise NotInformationallyComplete("no samples")
    d = samples[0].effect.dim
    if any(s.effect.dim != d for s in samples):
        raise DimensionMismatch("samples have mixed dimensions")
    basis = _orthonormal_hermitian_basis(d)
    design = np.array(
        [
            [np.trace(s.effect.matrix @ b).real for b in basis]
            for s in samples
        ]
    )
    values = np.array([s.value for s in samples])
    coeff, residual = _solve_frame_system(design, values, d * d)
    estimate = sum(c * b for c, b in zip(coeff, basis))
    return _repair_to_state(estimate), residual


def reconstruct_bipartite(
    samples: Sequence[tuple[tuple[Effect, Effect], float]],
    dims: tuple[int, int],
) -> tuple[DensityOperator, float]:
    """Recover a joint state from product-effect frame values
    f(E, F) = tr(rho (E otimes F)).

    Over the complex field the product effects can span the full joint
    operator space, making the solution unique.
    """
    d_a, d_b = int(dims[0]), int(dims[1])
    basis_a = _orthonormal_hermitian_basis(d_a)
    basis_b = _orthonormal_hermitian_basis(d_b)
    rows = []
    values = []
    for (e_a, e_b), value in samples:
        if e_a.dim != d_a or e_b.dim != d_b:
            raise DimensionMismatch("sample effect dims do not match dims")
        a = np.array([np.trace(e_a.matrix @ b).real for b in basis_a])
        b = np.array([np.trace(e_b.matrix @ c).real for c in basis_b])
        rows.append(np.outer(a, b).ravel())
        values.append(value)
    design = np.array(rows)
    values = np.array(values)
    unknowns = (d_a * d_b) ** 2
    coeff, residual = _solve_frame_system(design, values, unknowns)
    estimate = np.zeros((d_a * d_b, d_a * d_b), dtype=complex)
    for idx, c in enumerate(coeff):
        j, k = divmod(idx, len(basis_b))
        estimate += c * np.kron(basis_a[j], basis_b[k])
    return _repair_to_state(estimate), residual


@dataclass(frozen=True)
class FrameLawReport:
    """Worst-case violations of frame-function additivity and rational
    homogeneity over a randomized sweep."""

    trials: int
    max_additivity_violation: float
    max_homogeneity_violation: float


def check_frame_function_laws(
    f: Callable[[Effect], float], d: int, trials: int, seed: int
) -> FrameLawReport:
    """Drive a frame function with random fine-grainings E = E1 + E2 and
    random rational rescalings qE, recording the worst law violations."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    max_add = 0.0
    max_hom = 0.0
    for _ in range(trials):
        n_outcomes = int(rng.integers(2, 5))
        povm = random_povm(d, n_outcomes, int(rng.integers(0, 2**31)))
        e = povm[int(rng.integers(0, n_outcomes))].matrix
        # split E into E1 + E2 via 0 <= E1 = sqrt(E) S sqrt(E) <= E
        s = random_povm(d, 2, int(rng.integers(0, 2**31)))[0].matrix
        root = _sqrt_psd(e)
        e1 = root @ s @ root
        e2 = e - e1
        add = abs(
            f(Effect(e1 + e2)) - f(Effect(e1)) - f(Effect(e2))
        )
        m = int(rng.integers(1, 17))
        n = int(rng.integers(1, m + 1))
        q = n / m
        hom = abs(f(Effect(q * e)) - q * f(Effect(e)))
        max_add = max(max_add, add)
        max_hom = max(max_hom, hom)
    return FrameLawReport(trials, max_add, max_hom)


def field_dimension_counts(d_a: int, d_b: int) -> tuple[int, int, int]:
    """Unknown/equation counts for bipartite reconstruction: complex
    unknowns, real-symmetric product equations, real-symmetric unknowns."""
    if d_a < 2 or d_b < 2:
        raise ValueError("dimensions must be >= 2")
    complex_unknowns = (d_a * d_b) ** 2
    real_equations = d_a * d_b * (d_a + 1) * (d_b + 1) // 4
    real_unknowns = d_a * d_b * (d_a * d_b + 1) // 2
    return complex_unknowns, real_equations, real_unknowns


def _real_symmetric_basis(d: int) -> list[np.ndarray]:
    """Frobenius-orthonormal basis of real symmetric d x d matrices."""
    out = []
    for i in range(d):
        m = np.zeros((d, d))
        m[i, i] = 1.0
        out.append(m)
    for i in range(d):
        for j in range(i + 1, d):
            m = np.zeros((d, d))
            m[i, j] = m[j, i] = 1.0 / np.sqrt(2)
            out.append(m)
    return out


def _real_symmetric_effects(d: int) -> list[np.ndarray]:
    """Real rank-1 projector effects spanning the symmetric matrix space."""
    basis = np.eye(d)
    vectors = [basis[i] for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            vectors.append((basis[i] + basis[j]) / np.sqrt(2))
    return [np.outer(v, v) for v in vectors]


def _random_real_effect(rng: np.random.Generator, d: int) -> np.ndarray:
    a = rng.normal(size=(d, d))
    s = a + a.T
    lo, hi = np.linalg.eigvalsh(s)[[0, -1]]
    return (s - lo * np.eye(d)) / (hi - lo)


@dataclass(frozen=True)
class RealFieldRankReport:
    """Rank accounting for bipartite reconstruction over both number fields,
    with a kernel witness exhibiting real-field non-uniqueness."""

    real_rank: int
    real_equations: int
    real_unknowns: int
    complex_rank: int
    complex_unknowns: int
    kernel_dimension: int
    kernel_witness: np.ndarray = field(repr=False)
    max_kernel_pairing: float


def real_rank_deficiency_demo(
    d_a: int, d_b: int, check_samples: int = 1000, seed: int = 0
) -> RealFieldRankReport:
    """Show that real-symmetric product effects cannot pin down a joint
    operator: the design matrix is rank deficient and its kernel holds a
    nonzero operator invisible to every real product measurement."""
    complex_unknowns, real_equations, real_unknowns = field_dimension_counts(
        d_a, d_b
    )
    d = d_a * d_b

    sym_basis = _real_symmetric_basis(d)
    rows = []
    for e in _real_symmetric_effects(d_a):
        for f_ in _real_symmetric_effects(d_b):
            prod = np.kron(e, f_)
            rows.append([np.sum(prod * b) for b in sym_basis])
    design = np.array(rows)
    _, s, vt = np.linalg.svd(design)
    real_rank = int(np.sum(s > tol("rank")))
    kernel_dim = real_unknowns - real_rank

    witness = np.zeros((d, d))
    if kernel_dim > 0:
        coeff = vt[real_rank]
        witness = sum(c * b for c, b in zip(coeff, sym_basis))
        witness = witness / np.linalg.norm(witness)

    herm_basis = _orthonormal_hermitian_basis(d)
    rows_c = []
    for e in spanning_effects(d_a):
        for f_ in spanning_effects(d_b):
            prod = np.kron(e.matrix, f_.matrix)
            rows_c.append([np.trace(prod @ b).real for b in herm_basis])
    s_c = np.linalg.svd(np.array(rows_c), compute_uv=False)
    complex_rank = int(np.sum(s_c > tol("rank")))

    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(check_samples):
        e = _random_real_effect(rng, d_a)
        f_ = _random_real_effect(rng, d_b)
        worst = max(worst, abs(np.sum(np.kron(e, f_) * witness)))

    return RealFieldRankReport(
        real_rank=real_rank,
        real_equations=real_equations,
        real_unknowns=real_unknowns,
        complex_rank=complex_rank,
        complex_unknowns=complex_unknowns,
        kernel_dimension=kernel_dim,
        kernel_witness=witness,
        max_kernel_pairing=worst,
    )


@dataclass(frozen=True)
class PovmTree:
    """A two-stage locally-measurable measurement: one POVM on the leading
    system, then a conditional POVM on the trailing system per outcome.

    ``order`` is "A" when the first stage acts on system A, "B" otherwise.
    Stages are stored as raw effect sequences so that validation can point
    at the offending layer.
    """

    order: str
    first_stage: tuple[Effect, ...]
    second_stage: tuple[tuple[Effect, ...], ...]

    def __post_init__(self):
        if self.order not in ("A", "B"):
            raise ValueError("order must be 'A' or 'B'")
        object.__setattr__(self, "first_stage", tuple(self.first_stage))
        object.__setattr__(
            self, "second_stage", tuple(tuple(s) for s in self.second_stage)
        )
        if len(self.second_stage) != len(self.first_stage):
            raise DimensionMismatch(
                "need one conditional measurement per first-stage outcome"
            )


@dataclass(frozen=True)
class TreeValidation:
    """Joint outcome enumeration of a validated POVM tree.

    ``pairs`` lists ((i, j), effect_on_A, effect_on_B) in enumeration order;
    ``joint_probabilities`` aligns with it when a state was supplied.
    """

    pairs: tuple
    joint_probabilities: np.ndarray | None


def _check_resolution(effects, d, stage, outcome=None):
    total = sum(e.matrix for e in effects)
    if np.linalg.norm(total - np.eye(d)) > tol("completeness"):
        raise BadCompleteness(
            f"stage {stage}"
            + (f", outcome {outcome}" if outcome is not None else "")
            + " does not resolve the identity",
            stage=stage,
            outcome=outcome,
        )


def validate_povm_tree(
    tree: PovmTree, state: DensityOperator | None = None
) -> TreeValidation:
    """Check both completeness layers and enumerate the ordered outcome
    pairs; optionally evaluate the joint Born probabilities for a state."""
    d_first = tree.first_stage[0].dim
    d_second = tree.second_stage[0][0].dim
    _check_resolution(tree.first_stage, d_first, stage=1)
    for k, conditional in enumerate(tree.second_stage):
        if any(e.dim != d_second for e in conditional):
            raise DimensionMismatch("conditional stage has mixed dimensions")
        _check_resolution(conditional, d_second, stage=2, outcome=k)

    pairs = []
    if tree.order == "A":
        for i, e in enumerate(tree.first_stage):
            for j, f_ in enumerate(tree.second_stage[i]):
                pairs.append(((i, j), e, f_))
    else:
        for j, f_ in enumerate(tree.first_stage):
            for i, e in enumerate(tree.second_stage[j]):
                pairs.append(((i, j), e, f_))

    probs = None
    if state is not None:
        d_a = pairs[0][1].dim
        d_b = pairs[0][2].dim
        if state.dim != d_a * d_b:
            raise DimensionMismatch(
                f"state dim {state.dim} != {d_a}*{d_b}"
            )
        probs = np.array(
            [
                np.trace(state.matrix @ np.kron(e.matrix, f_.matrix)).real
                for _, e, f_ in pairs
            ]
        )
        if abs(probs.sum() - 1.0) > tol("completeness"):
            raise BadCompleteness(
                f"joint probabilities sum to {probs.sum()!r}", stage=2
            )
        probs = np.clip(probs, 0.0, 1.0)
    return TreeValidation(pairs=tuple(pairs), joint_probabilities=probs)


# ---------------------------------------------------------------------------
# standard POVM fixtures


def projective_povm(vectors) -> Povm:
    """Rank-1 projective measurement onto the columns of an orthonormal set."""
    v = np.asarray(vectors, dtype=complex)
    return Povm([Effect(np.outer(v[:, k], v[:, k].conj())) for k in range(v.shape[1])])


def trine_povm() -> Povm:
    """Three-outcome qubit POVM (2/3)|psi_k><psi_k| at 120-degree spacing on
    the Bloch equator; more outcomes than any standard qubit measurement."""
    effects = []
    for k in range(3):
        phase = np.exp(2j * np.pi * k / 3)
        v = np.array([1.0, phase]) / np.sqrt(2)
        effects.append(Effect((2.0 / 3.0) * np.outer(v, v.conj())))
    return Povm(effects)


def tetrahedral_povm() -> Povm:
    """Symmetric informationally complete qubit POVM: four rank-1 effects of
    weight 1/2 at tetrahedral Bloch vectors."""
    directions = np.array(
        [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float
    ) / np.sqrt(3)
    paulis = [
        np.array([[0, 1], [1, 0]], dtype=complex),
        np.array([[0, -1j], [1j, 0]], dtype=complex),
        np.array([[1, 0], [0, -1]], dtype=complex),
    ]
    effects = []
    for n in directions:
        bloch = sum(c * p for c, p in zip(n, paulis))
        effects.append(Effect(0.25 * (np.eye(2) + bloch)))
    return Povm(effects)


def domino_povm() -> Povm:
    """The nine orthonormal product states on two qutrits whose joint
    measurement cannot be realized by local operations and classical
    communication, included here as a validation fixture."""
    e = np.eye(3, dtype=complex)
    plus = lambda i, j: (e[i] + e[j]) / np.sqrt(2)
    minus = lambda i, j: (e[i] - e[j]) / np.sqrt(2)
    states = [
        np.kron(e[1], e[1]),
        np.kron(e[0], plus(0, 1)),
        np.kron(e[0], minus(0, 1)),
        np.kron(e[2], plus(1, 2)),
        np.kron(e[2], minus(1, 2)),
        np.kron(plus(1, 2), e[0]),
        np.kron(minus(1, 2), e[0]),
        np.kron(plus(0, 1), e[2]),
        np.kron(minus(0, 1), e[2]),
    ]
    return Povm([Effect(np.outer(v, v.conj())) for v in states])


def random_povm(d: int, n_outcomes: int, seed: int) -> Povm:
    """Seeded random POVM: Ginibre-positive pieces symmetrized by the
    inverse square root of their sum."""
    if n_outcomes < 1:
        raise ValueError("need at least one outcome")
    rng = np.random.default_rng(seed)
    pieces = []
    for _ in range(n_outcomes):
        g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        pieces.append(g @ g.conj().T)
    total = sum(pieces)
    eigs, vecs = np.linalg.eigh(total)
    inv_root = (vecs * (1.0 / np.sqrt(eigs))) @ vecs.conj().T
    return Povm([Effect(inv_root @ p @ inv_root) for p in pieces])
