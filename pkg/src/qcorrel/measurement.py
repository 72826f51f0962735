"""Local projective measurements on a bipartite state.

Outcome ``i`` of a basis corresponds to the rank-1 projector onto its
``i``-th column vector.  Outcome labels (the observable's eigenvalues) are
carried for reporting only and never enter a probability.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import ATOL, BipartiteState, partial_trace, tensor_product
from .errors import DimensionMismatch, ValidationError, ZeroProbabilityOutcome

PROB_EPS = 1e-12
ORDERS = ("a_first", "b_first")


@dataclass(frozen=True)
class ProjectiveBasis:
    """Orthonormal measurement basis; ``vectors[:, i]`` is outcome ``i``."""

    vectors: np.ndarray
    labels: Optional[tuple] = None

    def __post_init__(self):
        v = np.array(self.vectors, dtype=np.complex128)
        if v.ndim != 2 or v.shape[0] != v.shape[1] or v.shape[0] < 1:
            raise ValidationError("square", f"basis must be a d x d array of columns, got {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValidationError("finite entries", "basis contains NaN or Inf")
        gram_dev = float(np.max(np.abs(v.conj().T @ v - np.eye(v.shape[0]))))
        if gram_dev > ATOL:
            raise ValidationError("orthonormal basis", "columns are not orthonormal", gram_dev)
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)
        if self.labels is not None:
            labels = tuple(float(x) for x in self.labels)
            if len(labels) != v.shape[0]:
                raise ValidationError("labels", f"expected {v.shape[0]} labels, got {len(labels)}")
            if len(set(labels)) != len(labels):
                raise ValidationError("distinct labels", f"labels {labels} repeat a value")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def computational(cls, dim, labels=None):
        return cls(np.eye(dim), labels)

    @property
    def dim(self):
        return self.vectors.shape[0]

    def projector(self, i):
        vec = self.vectors[:, i]
        return np.outer(vec, vec.conj())


def _check_side(side):
    if side not in ("A", "B"):
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")


def _check_dims(state, basis_a, basis_b):
    if basis_a.dim != state.dim_a:
        raise DimensionMismatch(f"basis A has dimension {basis_a.dim}, subsystem A has {state.dim_a}")
    if basis_b.dim != state.dim_b:
        raise DimensionMismatch(f"basis B has dimension {basis_b.dim}, subsystem B has {state.dim_b}")


def _born(rho, basis):
    """``Tr(P_i rho)`` for every basis projector ``P_i``."""
    v = basis.vectors
    return np.einsum("ki,kl,li->i", v.conj(), rho, v).real


def outcome_marginals(state, basis_a, basis_b):
    """Outcome probabilities of each local measurement on its reduced state."""
    _check_dims(state, basis_a, basis_b)
    p_a = _born(partial_trace(state, "A").matrix, basis_a)
    p_b = _born(partial_trace(state, "B").matrix, basis_b)
    return _clamp(p_a), _clamp(p_b)


def _local_projector(state, side, basis, outcome):
    if side == "A":
        return tensor_product(basis.projector(outcome), np.eye(state.dim_b))
    return tensor_product(np.eye(state.dim_a), basis.projector(outcome))


def _project(state, side, basis, outcome):
    """Unnormalized Lüders update ``(P (x) I) rho (P (x) I)`` and its trace."""
    op = _local_projector(state, side, basis, outcome)
    sub = op @ state.matrix @ op
    return sub, float(np.trace(sub).real)


def post_measurement_state(state, side, basis, outcome):
    """State after observing ``outcome`` of ``basis`` on subsystem ``side``.

    Raises:
        ZeroProbabilityOutcome: the outcome has probability <= 1e-12.
        DimensionMismatch: ``basis`` does not act on subsystem ``side``.
    """
    _check_side(side)
    expected = state.dim_a if side == "A" else state.dim_b
    if basis.dim != expected:
        raise DimensionMismatch(f"basis has dimension {basis.dim}, subsystem {side} has {expected}")
    if not 0 <= outcome < basis.dim:
        raise ValueError(f"outcome {outcome} out of range for a {basis.dim}-outcome basis")
    sub, prob = _project(state, side, basis, outcome)
    if prob <= PROB_EPS:
        raise ZeroProbabilityOutcome(
            f"outcome {outcome} on subsystem {side} has probability {prob:.3e}"
        )
    return BipartiteState.from_matrix(sub / prob, state.dim_a, state.dim_b)


def _clamp(p):
    p = np.asarray(p, dtype=float)
    if np.any(p < -PROB_EPS):
        raise ValidationError("nonnegative probabilities", f"entry {p.min():.3e} is negative")
    out = np.clip(p, 0.0, None)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class JointDistribution:
    """Joint outcome table ``p_joint[i, j] = P(a_i, b_j)`` with its marginals.

    ``order`` records which party measured first; it has no effect on the
    numbers.
    """

    p_joint: np.ndarray
    p_a: np.ndarray = field(default=None)
    p_b: np.ndarray = field(default=None)
    order: str = "a_first"

    def __post_init__(self):
        table = np.array(self.p_joint, dtype=float)
        if table.ndim != 2 or 0 in table.shape:
            raise ValidationError("table shape", f"joint table must be 2-D and non-empty, got {table.shape}")
        table = _clamp(table)
        total = float(table.sum())
        if abs(total - 1.0) > ATOL:
            raise ValidationError("normalization", f"joint table sums to {total:.12g}", abs(total - 1.0))
        rows = table.sum(axis=1)
        cols = table.sum(axis=0)
        p_a = rows if self.p_a is None else _clamp(self.p_a)
        p_b = cols if self.p_b is None else _clamp(self.p_b)
        if p_a.shape != rows.shape or np.max(np.abs(p_a - rows)) > ATOL:
            raise ValidationError("marginal consistency", "row sums differ from p_a")
        if p_b.shape != cols.shape or np.max(np.abs(p_b - cols)) > ATOL:
            raise ValidationError("marginal consistency", "column sums differ from p_b")
        if self.order not in ORDERS:
            raise ValueError(f"order must be one of {ORDERS}, got {self.order!r}")
        for name, arr in (("p_joint", table), ("p_a", _clamp(p_a)), ("p_b", _clamp(p_b))):
            object.__setattr__(self, name, arr)

    @property
    def n_a(self):
        return self.p_joint.shape[0]

    @property
    def n_b(self):
        return self.p_joint.shape[1]

    def transposed(self):
        """The same distribution with the roles of A and B swapped."""
        order = "b_first" if self.order == "a_first" else "a_first"
        return JointDistribution(self.p_joint.T, self.p_b, self.p_a, order)


def joint_distribution(state, basis_a, basis_b, order="a_first"):
    """Joint outcome distribution of the two local measurements.

    The table is built by running the sequential protocol for ``order``:
    the first party measures, the state collapses by the Lüders rule, then
    the second party measures the collapsed state.  Local projectors on
    different subsystems commute, so both orders give the same table as
    ``Tr[(P_i (x) Q_j) rho]``.
    """
    _check_dims(state, basis_a, basis_b)
    if order not in ORDERS:
        raise ValueError(f"order must be one of {ORDERS}, got {order!r}")
    table = np.zeros((basis_a.dim, basis_b.dim))
    if order == "a_first":
        for i in range(basis_a.dim):
            sub, _ = _project(state, "A", basis_a, i)
            for j in range(basis_b.dim):
                table[i, j] = np.trace(_local_projector(state, "B", basis_b, j) @ sub).real
    else:
        for j in range(basis_b.dim):
            sub, _ = _project(state, "B", basis_b, j)
            for i in range(basis_a.dim):
                table[i, j] = np.trace(_local_projector(state, "A", basis_a, i) @ sub).real
    return JointDistribution(table, order=order)


@dataclass(frozen=True)
class ConditionalTable:
    """Conditional distributions, one row per conditioning outcome.

    For ``"b_given_a"`` row ``i`` is ``P(b_j | a_i)``; for ``"a_given_b"``
    row ``i`` is ``P(a_j | b_i)``.  A row is ``None`` (undefined) when the
    conditioning outcome has probability <= 1e-12.
    """

    direction: str
    rows: tuple

    def is_defined(self, i):
        return self.rows[i] is not None


DIRECTIONS = ("b_given_a", "a_given_b")


def conditional_table(joint, direction):
    if direction == "b_given_a":
        table, given = joint.p_joint, joint.p_a
    elif direction == "a_given_b":
        table, given = joint.p_joint.T, joint.p_b
    else:
        raise ValueError(f"direction must be one of {DIRECTIONS}, got {direction!r}")
    rows = []
    for row, p in zip(table, given):
        if p <= PROB_EPS:
            rows.append(None)
        else:
            r = row / p
            r.setflags(write=False)
            rows.append(r)
    return ConditionalTable(direction, tuple(rows))


_FUNCTIONAL = {"b_of_a": "b_given_a", "a_of_b": "a_given_b"}


def is_functional(joint, direction):
    """Whether one outcome is a deterministic function of the other.

    ``"b_of_a"`` asks whether ``B = f(A)``: every defined row of ``P(b | a)``
    has an entry >= 1 - 1e-9.
    """
    if direction not in _FUNCTIONAL:
        raise ValueError(f"direction must be one of {tuple(_FUNCTIONAL)}, got {direction!r}")
    cond = conditional_table(joint, _FUNCTIONAL[direction])
    return all(row.max() >= 1.0 - ATOL for row in cond.rows if row is not None)


def outcome_arrows(joint, direction):
    """Support of the conditional map as ``(given, outcome, probability)``.

    With ``"b_of_a"`` each triple ``(i, j, p)`` reads "a_i -> b_j with
    probability p"; undefined rows contribute nothing.
    """
    if direction not in _FUNCTIONAL:
        raise ValueError(f"direction must be one of {tuple(_FUNCTIONAL)}, got {direction!r}")
    cond = conditional_table(joint, _FUNCTIONAL[direction])
    return [
        (i, j, float(p))
        for i, row in enumerate(cond.rows)
        if row is not None
        for j, p in enumerate(row)
        if p > PROB_EPS
    ]
