"""Dense complex linear algebra and the validated density-matrix model.

Operators are plain ``numpy`` complex arrays.  A bipartite basis vector
``|i> (x) |j>`` lives at flat index ``i * dim_b + j`` (row-major over
subsystem A), which is also the ordering produced by ``numpy.kron``.
"""

from dataclasses import dataclass
import math
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    ConvergenceFailure,
    DuplicateTerm,
    IndexOutOfRange,
    InvalidWeights,
    NonHermitianInput,
    ValidationError,
)

ATOL = 1e-9
MAX_SUBSYSTEM_DIM = 16
JACOBI_OFF_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100


def as_complex_matrix(m):
    """Return ``m`` as a read-only square complex128 array.

    Raises:
        ValidationError: if ``m`` is not a finite, non-empty square matrix.
    """
    arr = np.array(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValidationError("square", f"expected a square matrix, got shape {arr.shape}")
    if arr.shape[0] < 1:
        raise ValidationError("square", "matrix dimension must be at least 1")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("finite entries", "matrix contains NaN or Inf")
    arr.setflags(write=False)
    return arr


def hermiticity_violation(m):
    return float(np.max(np.abs(m - m.conj().T)))


def tensor_product(a, b):
    """Kronecker product ``a (x) b``.

    ``result[i*db + k, j*db + l] == a[i, j] * b[k, l]``.
    """
    out = np.kron(as_complex_matrix(a), as_complex_matrix(b))
    out.setflags(write=False)
    return out


class EigenDecomposition(NamedTuple):
    """Eigenvalues in descending order and matching eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _off_norm(a):
    return float(np.linalg.norm(a[~np.eye(a.shape[0], dtype=bool)]))


def hermitian_eigen(m, *, max_sweeps=JACOBI_MAX_SWEEPS):
    """Diagonalize a Hermitian matrix with cyclic complex Jacobi rotations.

    Each rotation first removes the phase of the pivot ``a[p, q]`` with a
    diagonal unitary, then applies the classical real Jacobi rotation to the
    resulting real symmetric 2x2 block.  Sweeps stop once the off-diagonal
    Frobenius norm falls below ``1e-14`` times ``max(1, ||m||_F)``.

    Raises:
        NonHermitianInput: if ``max|m - m^H| > 1e-9``.
        ConvergenceFailure: if ``max_sweeps`` sweeps do not converge.
    """
    m = as_complex_matrix(m)
    violation = hermiticity_violation(m)
    if violation > ATOL:
        raise NonHermitianInput(violation)
    a = 0.5 * (m + m.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = max(1.0, float(np.linalg.norm(a)))
    threshold = JACOBI_OFF_TOL * scale
    negligible = 1e-18 * scale

    sweeps = 0
    while _off_norm(a) > threshold:
        if sweeps == max_sweeps:
            raise ConvergenceFailure(
                f"Jacobi iteration did not converge in {max_sweeps} sweeps "
                f"(off-diagonal norm {_off_norm(a):.3e})"
            )
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= negligible:
                    a[p, q] = a[q, p] = 0.0
                    continue
                phase = apq / r
                theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if abs(theta) > 1e150:
                    t = 0.5 / abs(theta)
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # U = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                u00, u01 = c, s
                u10, u11 = -s * phase.conjugate(), c * phase.conjugate()

                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = col_p * u00 + col_q * u10
                a[:, q] = col_p * u01 + col_q * u11
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = row_p * u00 + row_q * u10.conjugate()
                a[q, :] = row_p * u01 + row_q * u11.conjugate()
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = vp * u00 + vq * u10
                v[:, q] = vp * u01 + vq * u11

    w = np.diag(a).real
    order = np.argsort(-w, kind="stable")
    w = w[order].copy()
    v = v[:, order].copy()
    w.setflags(write=False)
    v.setflags(write=False)
    return EigenDecomposition(w, v)


@dataclass(frozen=True)
class DensityMatrix:
    """A Hermitian, unit-trace, positive-semidefinite operator.

    Validation happens on construction; every invariant is checked with an
    absolute tolerance of 1e-9.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = as_complex_matrix(self.matrix)
        violation = hermiticity_violation(m)
        if violation > ATOL:
            raise ValidationError("Hermitian", "density matrix is not Hermitian", violation)
        trace_dev = abs(complex(np.trace(m)) - 1.0)
        if trace_dev > ATOL:
            raise ValidationError("unit trace", f"trace is {np.trace(m).real:.12g}", trace_dev)
        lowest = float(hermitian_eigen(m).eigenvalues[-1])
        if lowest < -ATOL:
            raise ValidationError(
                "positive semidefinite", f"smallest eigenvalue is {lowest:.3e}", -lowest
            )
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self):
        return self.matrix.shape[0]

    def eigenvalues(self):
        """Spectrum in descending order, clamped into ``[0, 1]``."""
        return np.clip(hermitian_eigen(self.matrix).eigenvalues, 0.0, 1.0)


def _check_dim(name, d):
    if not isinstance(d, (int, np.integer)) or isinstance(d, bool) or d < 1:
        raise ValidationError("positive dimension", f"{name} must be a positive integer, got {d!r}")
    if d > MAX_SUBSYSTEM_DIM:
        raise ValidationError(
            "dimension cap", f"{name} = {d} exceeds the supported maximum {MAX_SUBSYSTEM_DIM}"
        )
    return int(d)


@dataclass(frozen=True)
class BipartiteState:
    """Density matrix on the product space of subsystems A and B."""

    dim_a: int
    dim_b: int
    rho: DensityMatrix

    def __post_init__(self):
        object.__setattr__(self, "dim_a", _check_dim("dim_a", self.dim_a))
        object.__setattr__(self, "dim_b", _check_dim("dim_b", self.dim_b))
        if not isinstance(self.rho, DensityMatrix):
            object.__setattr__(self, "rho", DensityMatrix(self.rho))
        if self.rho.dim != self.dim_a * self.dim_b:
            raise ValidationError(
                "product dimension",
                f"matrix dimension {self.rho.dim} != {self.dim_a} * {self.dim_b}",
            )

    @classmethod
    def from_matrix(cls, matrix, dim_a, dim_b):
        return cls(dim_a, dim_b, DensityMatrix(matrix))

    @classmethod
    def from_ket(cls, ket, dim_a, dim_b):
        """Pure state ``|psi><psi|`` from a (normalized) state vector."""
        psi = np.asarray(ket, dtype=np.complex128).reshape(-1)
        return cls.from_matrix(np.outer(psi, psi.conj()), dim_a, dim_b)

    @classmethod
    def product(cls, rho_a, rho_b):
        rho_a = rho_a if isinstance(rho_a, DensityMatrix) else DensityMatrix(rho_a)
        rho_b = rho_b if isinstance(rho_b, DensityMatrix) else DensityMatrix(rho_b)
        return cls.from_matrix(tensor_product(rho_a.matrix, rho_b.matrix), rho_a.dim, rho_b.dim)

    @property
    def matrix(self):
        return self.rho.matrix


def partial_trace(state, keep):
    """Reduced density matrix of subsystem ``keep`` (``"A"`` or ``"B"``)."""
    t = state.matrix.reshape(state.dim_a, state.dim_b, state.dim_a, state.dim_b)
    if keep == "A":
        reduced = np.einsum("ijkj->ik", t)
    elif keep == "B":
        reduced = np.einsum("ijil->jl", t)
    else:
        raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")
    return DensityMatrix(reduced)


def make_classical_mixture(dim_a, dim_b, terms: Sequence[tuple[float, int, int]]):
    """Diagonal state ``sum_k w_k |i_k j_k><i_k j_k|``.

    Args:
        dim_a, dim_b: subsystem dimensions.
        terms: ``(weight, i, j)`` triples with distinct ``(i, j)`` pairs.

    Raises:
        InvalidWeights: non-positive weight, or weights not summing to 1.
        IndexOutOfRange: ``i >= dim_a`` or ``j >= dim_b``.
        DuplicateTerm: the same ``(i, j)`` appears twice.
    """
    dim_a = _check_dim("dim_a", dim_a)
    dim_b = _check_dim("dim_b", dim_b)
    if not terms:
        raise InvalidWeights("unit trace", "mixture has no terms")
    diag = np.zeros(dim_a * dim_b)
    seen = set()
    total = 0.0
    for weight, i, j in terms:
        weight = float(weight)
        if not math.isfinite(weight) or weight <= 0.0:
            raise InvalidWeights("positive weights", f"weight {weight!r} for term ({i}, {j})")
        if not (0 <= i < dim_a and 0 <= j < dim_b):
            raise IndexOutOfRange(
                "index range", f"term ({i}, {j}) outside {dim_a} x {dim_b}"
            )
        if (i, j) in seen:
            raise DuplicateTerm("distinct terms", f"term ({i}, {j}) appears more than once")
        seen.add((i, j))
        diag[i * dim_b + j] = weight
        total += weight
    if abs(total - 1.0) > ATOL:
        raise InvalidWeights("unit trace", f"weights sum to {total:.12g}", abs(total - 1.0))
    return BipartiteState.from_matrix(np.diag(diag), dim_a, dim_b)
