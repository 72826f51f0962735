"""Entropies, mutual informations and normalized correlation measures.

All logarithms are base 2.  Quantities that would require dividing by a
(numerically) zero entropy are returned as ``None`` rather than 0 or NaN.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .core import ATOL, partial_trace
from .errors import CrossCheckFailure, MarginalsNotIdentical, NotADistribution
from .measurement import (
    PROB_EPS,
    ConditionalTable,
    JointDistribution,
    conditional_table,
    is_functional,
    joint_distribution,
    outcome_arrows,
)

NON_CLASSICAL = "non-classical regime"


def _entropy_terms(p):
    p = p[p > PROB_EPS]
    return float(-np.sum(p * np.log2(p)))


def shannon_entropy(p):
    """Shannon entropy in bits, with ``0 log 0 = 0``.

    Raises:
        NotADistribution: an entry is below -1e-12 or the sum is not 1.
    """
    p = np.asarray(p, dtype=float).reshape(-1)
    if p.size == 0 or not np.all(np.isfinite(p)):
        raise NotADistribution("probability vector", "empty or non-finite entries")
    if np.any(p < -PROB_EPS):
        raise NotADistribution("nonnegative probabilities", f"entry {p.min():.3e} is negative")
    total = float(p.sum())
    if abs(total - 1.0) > ATOL:
        raise NotADistribution("normalization", f"entries sum to {total:.12g}", abs(total - 1.0))
    return max(_entropy_terms(np.clip(p, 0.0, None)), 0.0)


def conditional_entropy(joint, direction):
    """``H(B|A)`` for ``"b_given_a"`` or ``H(A|B)`` for ``"a_given_b"``.

    Undefined conditional rows (zero-probability conditioning outcomes)
    carry zero weight and are skipped.
    """
    cond = conditional_table(joint, direction)
    weights = joint.p_a if direction == "b_given_a" else joint.p_b
    total = 0.0
    for w, row in zip(weights, cond.rows):
        if row is not None:
            total += w * _entropy_terms(row)
    return max(total, 0.0)


def classical_mutual_information(joint):
    """``sum_ij p_ij log2(p_ij / (p_i p_j))`` over entries with ``p_ij > 1e-12``."""
    total = 0.0
    for i, j in zip(*np.nonzero(joint.p_joint > PROB_EPS)):
        pij = joint.p_joint[i, j]
        total += pij * math.log2(pij / (joint.p_a[i] * joint.p_b[j]))
    return total


def von_neumann_entropy(rho):
    """``-sum lambda log2 lambda`` over the spectrum of a density matrix."""
    return max(_entropy_terms(rho.eigenvalues()), 0.0)


def quantum_mutual_information(state):
    """``S(rho_A) + S(rho_B) - S(rho_AB)``."""
    return (
        von_neumann_entropy(partial_trace(state, "A"))
        + von_neumann_entropy(partial_trace(state, "B"))
        - von_neumann_entropy(state.rho)
    )


def _ratio(num, den):
    if den <= PROB_EPS:
        return None
    return num / den


def cover_thomas_measure(joint):
    """``I(A:B) / H(A)`` for a joint whose two marginals are identical.

    Returns ``None`` when ``H(A)`` vanishes.

    Raises:
        MarginalsNotIdentical: ``p_a`` and ``p_b`` differ (beyond 1e-9) or
            have different lengths.
    """
    if joint.p_a.shape != joint.p_b.shape or np.max(np.abs(joint.p_a - joint.p_b)) > ATOL:
        raise MarginalsNotIdentical(
            f"marginals differ: p_a = {np.round(joint.p_a, 6).tolist()}, "
            f"p_b = {np.round(joint.p_b, 6).tolist()}"
        )
    return _ratio(classical_mutual_information(joint), shannon_entropy(joint.p_a))


def directional_ratio(joint, direction):
    """``I(A:B) / H(A)`` (``"over_ha"``) or ``I(A:B) / H(B)`` (``"over_hb"``)."""
    if direction == "over_ha":
        den = shannon_entropy(joint.p_a)
    elif direction == "over_hb":
        den = shannon_entropy(joint.p_b)
    else:
        raise ValueError(f"direction must be 'over_ha' or 'over_hb', got {direction!r}")
    return _ratio(classical_mutual_information(joint), den)


def correlation_measure(joint):
    """``I(A:B) / min(H(A), H(B))``, the larger of the two directional ratios."""
    den = min(shannon_entropy(joint.p_a), shannon_entropy(joint.p_b))
    return _ratio(classical_mutual_information(joint), den)


def total_correlation(state):
    """Quantum mutual information normalized by ``min(S(rho_A), S(rho_B))``.

    Only for classically correlated states is this bounded by 1; pure
    entangled states reach 2.
    """
    den = min(
        von_neumann_entropy(partial_trace(state, "A")),
        von_neumann_entropy(partial_trace(state, "B")),
    )
    return _ratio(quantum_mutual_information(state), den)


@dataclass(frozen=True)
class CorrelationReport:
    """Every entropy and correlation measure for one state and basis pair.

    Entropies are in bits.  ``None`` marks an undefined ratio.
    ``cover_thomas`` is ``None`` both when undefined and when the marginals
    are not identical (see ``marginals_identical``).
    """

    dims: tuple
    order: str
    h_a: float
    h_b: float
    h_b_given_a: float
    h_a_given_b: float
    mi_classical: float
    s_a: float
    s_b: float
    s_ab: float
    mi_quantum: float
    ratio_a: float | None
    ratio_b: float | None
    c_measure: float | None
    t_measure: float | None
    cover_thomas: float | None
    marginals_identical: bool
    functional_b_of_a: bool
    functional_a_of_b: bool
    annotations: tuple = ()
    joint: JointDistribution | None = field(default=None, compare=False)
    cond_b_given_a: ConditionalTable | None = field(default=None, compare=False)
    cond_a_given_b: ConditionalTable | None = field(default=None, compare=False)
    labels_a: tuple | None = field(default=None, compare=False)
    labels_b: tuple | None = field(default=None, compare=False)

    @property
    def non_classical(self):
        return NON_CLASSICAL in self.annotations

    def arrows(self, direction):
        return outcome_arrows(self.joint, direction)


def build_report(state, basis_a, basis_b, order="a_first"):
    """Compute every measure for ``state`` measured in ``basis_a``/``basis_b``.

    Raises:
        DimensionMismatch: a basis does not match its subsystem.
        CrossCheckFailure: ``I(A:B)``, ``H(B) - H(B|A)`` and ``H(A) - H(A|B)``
            disagree by more than 1e-9.
    """
    joint = joint_distribution(state, basis_a, basis_b, order)
    h_a = shannon_entropy(joint.p_a)
    h_b = shannon_entropy(joint.p_b)
    h_b_given_a = conditional_entropy(joint, "b_given_a")
    h_a_given_b = conditional_entropy(joint, "a_given_b")
    mi = classical_mutual_information(joint)
    for label, other in (("H(B) - H(B|A)", h_b - h_b_given_a), ("H(A) - H(A|B)", h_a - h_a_given_b)):
        if abs(mi - other) > ATOL:
            raise CrossCheckFailure(f"I(A:B) = {mi!r} but {label} = {other!r}")

    s_a = von_neumann_entropy(partial_trace(state, "A"))
    s_b = von_neumann_entropy(partial_trace(state, "B"))
    s_ab = von_neumann_entropy(state.rho)
    mi_q = s_a + s_b - s_ab
    t = _ratio(mi_q, min(s_a, s_b))

    try:
        cover_thomas = cover_thomas_measure(joint)
        identical = True
    except MarginalsNotIdentical:
        cover_thomas, identical = None, False

    annotations = ()
    if t is not None and t > 1.0 + ATOL:
        annotations = (NON_CLASSICAL,)

    return CorrelationReport(
        dims=(state.dim_a, state.dim_b),
        order=order,
        h_a=h_a,
        h_b=h_b,
        h_b_given_a=h_b_given_a,
        h_a_given_b=h_a_given_b,
        mi_classical=mi,
        s_a=s_a,
        s_b=s_b,
        s_ab=s_ab,
        mi_quantum=mi_q,
        ratio_a=_ratio(mi, h_a),
        ratio_b=_ratio(mi, h_b),
        c_measure=_ratio(mi, min(h_a, h_b)),
        t_measure=t,
        cover_thomas=cover_thomas,
        marginals_identical=identical,
        functional_b_of_a=is_functional(joint, "b_of_a"),
        functional_a_of_b=is_functional(joint, "a_of_b"),
        annotations=annotations,
        joint=joint,
        cond_b_given_a=conditional_table(joint, "b_given_a"),
        cond_a_given_b=conditional_table(joint, "a_given_b"),
        labels_a=basis_a.labels,
        labels_b=basis_b.labels,
    )
