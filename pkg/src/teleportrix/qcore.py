"""Exact complex linear algebra over small named qubit registers.

A register is an ordered tuple of unique labels; the first label is the
most significant bit of the amplitude index, so a two-qubit register
(a, b) stores amplitudes in the order |00>, |01>, |10>, |11> with a as
the left bit. All values are immutable after construction and every
operation is a pure function, so concurrent use needs no coordination.

State equality is always judged through fidelity (phase insensitive),
never by comparing amplitudes componentwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadSubset,
    LabelCollision,
    LabelMismatch,
    NormalizationError,
    NotUnitary,
    ShapeError,
)
from .tolerances import TOL_EQ, TOL_NORM

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized pure state over an ordered qubit register.

    The constructor validates; it does not repair. Use make_state to
    normalize raw amplitudes.
    """

    qubits: tuple
    amps: np.ndarray

    def __post_init__(self):
        labels = tuple(self.qubits)
        if not labels:
            raise ShapeError("a state needs at least one qubit label")
        if len(set(labels)) != len(labels):
            raise LabelCollision(f"duplicate qubit labels in {labels!r}")
        amps = np.array(self.amps, dtype=complex)
        if amps.ndim != 1 or amps.size != 2 ** len(labels):
            raise ShapeError(
                f"{len(labels)} labels need {2 ** len(labels)} amplitudes, got {amps.size}"
            )
        if not np.all(np.isfinite(amps.view(np.float64))):
            raise NormalizationError("amplitudes must be finite")
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > TOL_NORM:
            raise NormalizationError(f"squared norm {norm_sq!r} deviates from 1")
        amps.setflags(write=False)
        object.__setattr__(self, "qubits", labels)
        object.__setattr__(self, "amps", amps)

    @property
    def num_qubits(self) -> int:
        return len(self.qubits)

    def as_tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per qubit, register order."""
        return self.amps.reshape((2,) * self.num_qubits)

    def relabel(self, new_labels: Sequence) -> "PureState":
        """Same amplitudes on a renamed register."""
        return PureState(tuple(new_labels), self.amps)

    def __repr__(self) -> str:
        return f"PureState(qubits={self.qubits!r}, amps={np.array2string(self.amps, precision=6)})"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix on 1..3 qubits."""

    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ShapeError("density matrix must be square")
        dim = entries.shape[0]
        if dim not in (2, 4, 8):
            raise ShapeError(f"unsupported density matrix dimension {dim}")
        if np.max(np.abs(entries - entries.conj().T)) > TOL_NORM:
            raise ShapeError("density matrix is not Hermitian")
        if abs(np.trace(entries).real - 1.0) > TOL_NORM or abs(np.trace(entries).imag) > TOL_NORM:
            raise ShapeError("density matrix trace is not 1")
        if np.min(np.linalg.eigvalsh(entries)) < -TOL_NORM:
            raise ShapeError("density matrix has a negative eigenvalue")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True, eq=False)
class SchmidtForm:
    """Two-qubit state as coeffs[0]*|u0>|v0> + coeffs[1]*|u1>|v1>.

    coeffs are non-negative and descending; basis_a[:, i] and
    basis_b[:, i] are the local kets |ui>, |vi>, each matrix unitary.
    """

    coeffs: tuple
    basis_a: np.ndarray
    basis_b: np.ndarray

    def __post_init__(self):
        c = (float(self.coeffs[0]), float(self.coeffs[1]))
        if c[0] < c[1] or c[1] < -TOL_NORM:
            raise ShapeError("Schmidt coefficients must be descending and non-negative")
        if abs(c[0] ** 2 + c[1] ** 2 - 1.0) > TOL_NORM:
            raise NormalizationError("Schmidt coefficients must square-sum to 1")
        object.__setattr__(self, "coeffs", c)

    def reconstruct(self) -> np.ndarray:
        """Four amplitudes of the state this decomposition encodes."""
        out = np.zeros(4, dtype=complex)
        for i, c in enumerate(self.coeffs):
            out += c * np.kron(self.basis_a[:, i], self.basis_b[:, i])
        return out


def make_state(labels: Sequence, amps: Iterable) -> PureState:
    """Build a normalized state; rejects zero vectors and bad shapes."""
    labels_t = tuple(labels)
    arr = np.array(list(amps), dtype=complex)
    if arr.size != 2 ** len(labels_t):
        raise ShapeError(
            f"{len(labels_t)} labels need {2 ** len(labels_t)} amplitudes, got {arr.size}"
        )
    if not np.all(np.isfinite(arr.view(np.float64))):
        raise NormalizationError("amplitudes must be finite")
    norm_sq = float(np.vdot(arr, arr).real)
    if norm_sq < 1e-12:
        raise NormalizationError("cannot normalize a (near-)zero vector")
    return PureState(labels_t, arr / math.sqrt(norm_sq))


def basis_state(labels: Sequence, bits: str) -> PureState:
    """Computational basis state, e.g. basis_state(("a", "b"), "01")."""
    labels_t = tuple(labels)
    if len(bits) != len(labels_t) or set(bits) - {"0", "1"}:
        raise ShapeError(f"bit string {bits!r} does not match {labels_t!r}")
    amps = np.zeros(2 ** len(labels_t), dtype=complex)
    amps[int(bits, 2)] = 1.0
    return PureState(labels_t, amps)


def tensor(s1: PureState, s2: PureState) -> PureState:
    """Kronecker product; s1's labels come first (and stay most significant)."""
    if set(s1.qubits) & set(s2.qubits):
        raise LabelCollision(
            f"label sets overlap: {set(s1.qubits) & set(s2.qubits)!r}"
        )
    return PureState(s1.qubits + s2.qubits, np.kron(s1.amps, s2.amps))


def apply_unitary(s: PureState, target, u: np.ndarray) -> PureState:
    """Apply a single-qubit unitary to the named qubit."""
    mat = np.asarray(u, dtype=complex)
    if mat.shape != (2, 2):
        raise ShapeError("single-qubit unitary must be 2x2")
    if np.max(np.abs(mat.conj().T @ mat - np.eye(2))) > TOL_EQ:
        raise NotUnitary("matrix fails U^dag U = I")
    if target not in s.qubits:
        raise LabelMismatch(f"qubit {target!r} not in register {s.qubits!r}")
    axis = s.qubits.index(target)
    t = np.tensordot(mat, s.as_tensor(), axes=([1], [axis]))
    t = np.moveaxis(t, 0, axis)
    return PureState(s.qubits, t.reshape(-1))


def reduced_density(s: PureState, keep: Sequence) -> DensityMatrix:
    """Partial trace keeping the given labels (row order follows keep)."""
    keep_t = tuple(keep)
    if not keep_t:
        raise BadSubset("keep must be nonempty")
    if len(set(keep_t)) != len(keep_t):
        raise BadSubset(f"duplicate labels in keep: {keep_t!r}")
    if not set(keep_t) <= set(s.qubits):
        raise BadSubset(f"{set(keep_t) - set(s.qubits)!r} not in register")
    if len(keep_t) == s.num_qubits:
        raise BadSubset("keep must be a proper subset of the register")
    pos = tuple(s.qubits.index(q) for q in keep_t)
    t = np.moveaxis(s.as_tensor(), pos, range(len(pos)))
    block = t.reshape(2 ** len(keep_t), -1)
    return DensityMatrix(block @ block.conj().T)


def _svd2(a: np.ndarray):
    """Closed-form singular value decomposition of a 2x2 complex matrix.

    Returns (u, (s1, s2), v) with a = u @ diag(s1, s2) @ v^dag,
    s1 >= s2 >= 0 and u, v unitary. Solved from the quadratic
    characteristic polynomial of the Gram matrix a^dag a; no iterative
    numerics involved.
    """
    a = np.asarray(a, dtype=complex)
    g = a.conj().T @ a
    t = float(g[0, 0].real + g[1, 1].real)
    d = float((g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]).real)
    disc = math.sqrt(max(t * t - 4.0 * d, 0.0))
    lam1 = max(0.5 * (t + disc), 0.0)
    lam2 = max(0.5 * (t - disc), 0.0)
    s1, s2 = math.sqrt(lam1), math.sqrt(lam2)
    # Eigenvector of g for lam1: both candidate rows solve (g - lam1) v = 0,
    # pick the numerically larger one; degenerate g is a multiple of I.
    c1 = np.array([g[0, 1], lam1 - g[0, 0]], dtype=complex)
    c2 = np.array([lam1 - g[1, 1], g[1, 0]], dtype=complex)
    v1 = c1 if np.linalg.norm(c1) >= np.linalg.norm(c2) else c2
    nv = np.linalg.norm(v1)
    if nv <= 1e-14 * max(t, 1.0):
        v1 = np.array([1.0, 0.0], dtype=complex)
    else:
        v1 = v1 / nv
    v2 = np.array([-np.conj(v1[1]), np.conj(v1[0])])
    if s1 > 1e-12:
        u1 = a @ v1 / s1
        u1 = u1 / np.linalg.norm(u1)
    else:
        u1 = np.array([1.0, 0.0], dtype=complex)
    if s2 > 1e-9 * max(s1, 1e-300):
        u2 = a @ v2 / s2
        u2 = u2 - np.vdot(u1, u2) * u1
        u2 = u2 / np.linalg.norm(u2)
    else:
        u2 = np.array([-np.conj(u1[1]), np.conj(u1[0])])
    return np.column_stack([u1, u2]), (s1, s2), np.column_stack([v1, v2])


def schmidt(s: PureState) -> SchmidtForm:
    """Schmidt decomposition of a two-qubit state."""
    if s.num_qubits != 2:
        raise ShapeError("Schmidt decomposition is defined here for exactly 2 qubits")
    u, sv, v = _svd2(s.amps.reshape(2, 2))
    # a[i, j] = sum_k s_k u[i, k] conj(v[j, k]), so the second local ket
    # is the conjugated right singular vector.
    return SchmidtForm((sv[0], sv[1]), u, v.conj())


def entropy(d: DensityMatrix) -> float:
    """Von Neumann entropy in ebits, with 0 log 0 = 0; clamped to [0, log2 dim]."""
    evals = np.linalg.eigvalsh(d.entries)
    h = 0.0
    for lam in evals:
        if lam > 0.0:
            h -= lam * math.log2(lam)
    return min(max(h, 0.0), math.log2(d.dim))


def fidelity(a: PureState, b: PureState) -> float:
    """|<a|b>|^2 after aligning registers; invariant under global phase."""
    if set(a.qubits) != set(b.qubits):
        raise LabelMismatch(f"label sets differ: {a.qubits!r} vs {b.qubits!r}")
    if a.qubits == b.qubits:
        b_amps = b.amps
    else:
        perm = tuple(b.qubits.index(q) for q in a.qubits)
        b_amps = b.as_tensor().transpose(perm).reshape(-1)
    val = abs(np.vdot(a.amps, b_amps)) ** 2
    return min(float(val), 1.0)


def states_close(a: PureState, b: PureState, tol: float = TOL_EQ) -> bool:
    """Phase-insensitive state equality: fidelity >= 1 - tol."""
    return fidelity(a, b) >= 1.0 - tol
