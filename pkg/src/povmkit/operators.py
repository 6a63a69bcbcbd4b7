"""Dense complex operator algebra: validated operator types, Hermitian
eigendecomposition, operator functions, tensor products, partial traces,
operator bases, and seeded random sampling.

All values are immutable after construction (arrays are frozen), all
operations are pure functions of their inputs, and randomness enters only
through explicit integer seeds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import tol
from .errors import (
    BadRank,
    DimensionMismatch,
    NotAnEffect,
    NotAState,
    NotHermitian,
    NotPositive,
    NotUnitary,
)

__all__ = [
    "HermitianOperator",
    "DensityOperator",
    "Effect",
    "UnitaryOperator",
    "Spectrum",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "identity",
    "pure_state",
    "eig_hermitian",
    "op_sqrt",
    "tensor",
    "partial_trace",
    "operator_basis",
    "spanning_effects",
    "haar_random_unitary",
    "random_density",
    "trace_distance",
]


def _frozen(matrix) -> np.ndarray:
    m = np.array(matrix, dtype=complex)
    m.setflags(write=False)
    return m


class HermitianOperator:
    """A dense complex matrix validated to equal its conjugate transpose."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        m = np.asarray(matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
            raise NotHermitian(f"expected a square matrix, got shape {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > tol("hermiticity"):
            raise NotHermitian("matrix is not Hermitian within tolerance")
        self.matrix = _frozen(m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim})"


class DensityOperator(HermitianOperator):
    """Hermitian, positive semidefinite, unit trace."""

    __slots__ = ()

    def __init__(self, matrix):
        super().__init__(matrix)
        eigs = np.linalg.eigvalsh(self.matrix)
        if eigs[0] < -tol("psd"):
            raise NotAState(f"negative eigenvalue {eigs[0]:.3e}")
        if abs(np.trace(self.matrix).real - 1.0) > tol("trace"):
            raise NotAState(f"trace {np.trace(self.matrix).real!r} is not 1")


class Effect(HermitianOperator):
    """Hermitian with spectrum inside [0, 1]: one potential measurement
    consequence."""

    __slots__ = ()

    def __init__(self, matrix):
        super().__init__(matrix)
        eigs = np.linalg.eigvalsh(self.matrix)
        if eigs[0] < -tol("psd") or eigs[-1] > 1.0 + tol("effect_upper"):
            raise NotAnEffect(
                f"spectrum [{eigs[0]:.3e}, {eigs[-1]:.6f}] leaves [0, 1]"
            )


class UnitaryOperator:
    """A dense complex matrix validated to be unitary."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        m = np.asarray(matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise NotUnitary(f"expected a square matrix, got shape {m.shape}")
        defect = m.conj().T @ m - np.eye(m.shape[0])
        if np.linalg.norm(defect) > tol("unitarity"):
            raise NotUnitary("U^dag U differs from the identity")
        self.matrix = _frozen(m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __repr__(self):
        return f"UnitaryOperator(dim={self.dim})"


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition with eigenvalues sorted descending and
    phase-canonicalized eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return v @ np.diag(self.eigenvalues) @ v.conj().T


SIGMA_X = HermitianOperator([[0, 1], [1, 0]])
SIGMA_Y = HermitianOperator([[0, -1j], [1j, 0]])
SIGMA_Z = HermitianOperator([[1, 0], [0, -1]])


def identity(d: int) -> HermitianOperator:
    return HermitianOperator(np.eye(d))


def pure_state(vector) -> DensityOperator:
    """Rank-1 density operator |v><v| for a normalized state vector."""
    v = np.asarray(vector, dtype=complex).ravel()
    n = np.linalg.norm(v)
    if n == 0:
        raise NotAState("zero vector")
    v = v / n
    return DensityOperator(np.outer(v, v.conj()))


def _canonical_phase(vectors: np.ndarray) -> np.ndarray:
    """Rotate each column so its first nonzero component is positive real."""
    out = np.array(vectors)
    for k in range(out.shape[1]):
        col = out[:, k]
        idx = np.flatnonzero(np.abs(col) > 1e-12)
        if idx.size:
            lead = col[idx[0]]
            out[:, k] = col * (lead.conjugate() / abs(lead))
    return out


def eig_hermitian(h: HermitianOperator) -> Spectrum:
    """Spectral decomposition with a deterministic ordering contract."""
    eigs, vecs = np.linalg.eigh(h.matrix)
    order = np.argsort(eigs)[::-1]
    eigs = eigs[order]
    vecs = _canonical_phase(vecs[:, order])
    return Spectrum(_frozen_real(eigs), _frozen(vecs))


def _frozen_real(values) -> np.ndarray:
    v = np.array(values, dtype=float)
    v.setflags(write=False)
    return v


def op_sqrt(p: HermitianOperator) -> HermitianOperator:
    """Positive square root of a positive semidefinite operator.

    Eigenvalues in [-psd_tol, 0) are clamped to zero; anything more
    negative raises NotPositive.
    """
    eigs = np.linalg.eigvalsh(p.matrix)
    if eigs[0] < -tol("psd"):
        raise NotPositive(f"eigenvalue {eigs[0]:.3e} below -PSD tolerance")
    return HermitianOperator(_sqrt_psd(p.matrix))


def _sqrt_psd(matrix: np.ndarray) -> np.ndarray:
    # eigenvalues at noise level are exact zeros: sqrt would amplify them
    # from 1e-17 to 1e-9 and pollute the kernel
    eigs, vecs = np.linalg.eigh(matrix)
    eigs = np.where(eigs > 1e-14, eigs, 0.0)
    return (vecs * np.sqrt(eigs)) @ vecs.conj().T


def tensor(a: HermitianOperator, b: HermitianOperator) -> HermitianOperator:
    """Kronecker product with the left factor as the slow index."""
    return HermitianOperator(np.kron(a.matrix, b.matrix))


def _partial_trace(joint: np.ndarray, d_a: int, d_b: int, keep: str) -> np.ndarray:
    blocks = joint.reshape(d_a, d_b, d_a, d_b)
    if keep == "A":
        return np.einsum("ikjk->ij", blocks)
    return np.einsum("kikj->ij", blocks)


def partial_trace(joint: HermitianOperator, dims, keep: str) -> HermitianOperator:
    """Trace out one tensor factor of a bipartite operator.

    ``dims`` is (d_A, d_B); ``keep`` selects the surviving factor, "A" or "B".
    """
    d_a, d_b = int(dims[0]), int(dims[1])
    if d_a * d_b != joint.dim:
        raise DimensionMismatch(
            f"dims {d_a}x{d_b} incompatible with operator of dim {joint.dim}"
        )
    if keep not in ("A", "B"):
        raise ValueError("keep must be 'A' or 'B'")
    return HermitianOperator(_partial_trace(joint.matrix, d_a, d_b, keep))


def _gell_mann(d: int) -> list[np.ndarray]:
    """Generalized Gell-Mann matrices, normalized to tr(G_a G_b) = 2 delta_ab.

    Order: symmetric pair matrices, antisymmetric pair matrices, diagonal
    matrices; for d = 2 this is exactly (sigma_x, sigma_y, sigma_z).
    """
    mats = []
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = m[k, j] = 1.0
            mats.append(m)
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = -1.0j
            m[k, j] = 1.0j
            mats.append(m)
    for l in range(1, d):
        m = np.zeros((d, d), dtype=complex)
        m[np.arange(l), np.arange(l)] = 1.0
        m[l, l] = -float(l)
        mats.append(m * np.sqrt(2.0 / (l * (l + 1))))
    return mats


def operator_basis(d: int) -> list[HermitianOperator]:
    """Trace-orthogonal Hermitian basis: identity plus the generalized
    Gell-Mann matrices; d*d linearly independent operators."""
    if d < 2:
        raise ValueError("operator_basis requires d >= 2")
    return [identity(d)] + [HermitianOperator(m) for m in _gell_mann(d)]


def spanning_effects(d: int) -> list[Effect]:
    """An informationally complete set of d*d rank-1 projector effects.

    Projectors onto |j>, (|j>+|k>)/sqrt2 and (|j>+i|k>)/sqrt2 span the whole
    Hermitian operator space, so frame-function values on this set determine
    a state uniquely.
    """
    if d < 2:
        raise ValueError("spanning_effects requires d >= 2")
    basis = np.eye(d, dtype=complex)
    vectors = [basis[j] for j in range(d)]
    for j in range(d):
        for k in range(j + 1, d):
            vectors.append((basis[j] + basis[k]) / np.sqrt(2))
            vectors.append((basis[j] + 1j * basis[k]) / np.sqrt(2))
    return [Effect(np.outer(v, v.conj())) for v in vectors]


def _haar_unitaries(rng: np.random.Generator, d: int, size: int) -> np.ndarray:
    """Stack of Haar-distributed unitaries via QR of complex Ginibre
    matrices with the R diagonal phase-normalized."""
    z = rng.normal(size=(size, d, d)) + 1j * rng.normal(size=(size, d, d))
    q, r = np.linalg.qr(z / np.sqrt(2.0))
    diag = np.einsum("bii->bi", r)
    q = q * (diag / np.abs(diag))[:, None, :]
    return q


def haar_random_unitary(d: int, seed: int) -> UnitaryOperator:
    """Seeded Haar-random unitary; identical seeds give identical output."""
    rng = np.random.default_rng(seed)
    return UnitaryOperator(_haar_unitaries(rng, d, 1)[0])


def random_density(d: int, rank: int, seed: int) -> DensityOperator:
    """Seeded random density operator of the requested rank (Ginibre
    construction G G^dag / tr)."""
    if not 1 <= rank <= d:
        raise BadRank(f"rank {rank} outside [1, {d}]")
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    m = g @ g.conj().T
    return DensityOperator(m / np.trace(m).real)


def trace_distance(a: DensityOperator, b: DensityOperator) -> float:
    """Half the trace norm of the difference of two states."""
    if a.dim != b.dim:
        raise DimensionMismatch("states have different dimensions")
    eigs = np.linalg.eigvalsh(a.matrix - b.matrix)
    return 0.5 * float(np.sum(np.abs(eigs)))
