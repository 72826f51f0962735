import numpy as np
import pytest

from qcorrel import (
    BipartiteState,
    DimensionMismatch,
    JointDistribution,
    ProjectiveBasis,
    ValidationError,
    ZeroProbabilityOutcome,
    conditional_table,
    is_functional,
    joint_distribution,
    make_classical_mixture,
    outcome_arrows,
    outcome_marginals,
    post_measurement_state,
)
from qcorrel.fixtures import qubit_state, qutrit_state

from conftest import random_density, random_mixture, random_unitary

THIRD = 1 / 3


def one_shot_joint(state, ua, ub):
    """p_ij = <u_i (x) w_j| rho |u_i (x) w_j>, computed vector by vector."""
    out = np.zeros((ua.shape[1], ub.shape[1]))
    for i in range(ua.shape[1]):
        for j in range(ub.shape[1]):
            vec = np.kron(ua[:, i], ub[:, j])
            out[i, j] = (vec.conj() @ state.matrix @ vec).real
    return out


def comp(d):
    return ProjectiveBasis.computational(d)


class TestProjectiveBasis:
    def test_non_orthonormal(self):
        with pytest.raises(ValidationError, match="orthonormal"):
            ProjectiveBasis([[1, 1], [0, 1]])

    def test_repeated_labels(self):
        with pytest.raises(ValidationError, match="distinct labels"):
            ProjectiveBasis(np.eye(2), labels=(1, 1))

    def test_labels_kept(self):
        assert ProjectiveBasis.computational(2, labels=(1, -1)).labels == (1.0, -1.0)


class TestMarginals:
    def test_qubit(self):
        p_a, p_b = outcome_marginals(qubit_state(0.3), comp(2), comp(2))
        np.testing.assert_allclose(p_a, [0.3, 0.7], atol=1e-15)
        np.testing.assert_allclose(p_b, [0.3, 0.7], atol=1e-15)

    def test_qutrit(self):
        p_a, p_b = outcome_marginals(qutrit_state(), comp(3), comp(3))
        np.testing.assert_allclose(p_a, [0, THIRD, 2 * THIRD], atol=1e-15)
        np.testing.assert_allclose(p_b, [THIRD] * 3, atol=1e-15)

    def test_maximally_mixed_any_basis(self, rng):
        s = BipartiteState.from_matrix(np.eye(4) / 4, 2, 2)
        p_a, p_b = outcome_marginals(s, ProjectiveBasis(random_unitary(rng, 2)), ProjectiveBasis(random_unitary(rng, 2)))
        np.testing.assert_allclose(p_a, [0.5, 0.5], atol=1e-12)
        np.testing.assert_allclose(p_b, [0.5, 0.5], atol=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            outcome_marginals(qubit_state(0.3), comp(3), comp(2))


class TestPostMeasurement:
    def test_qubit_outcome_zero(self):
        post = post_measurement_state(qubit_state(0.3), "A", comp(2), 0)
        np.testing.assert_allclose(post.matrix, np.diag([1, 0, 0, 0]), atol=1e-15)

    def test_qutrit_outcome_two(self):
        post = post_measurement_state(qutrit_state(), "A", comp(3), 2)
        expected = np.zeros(9)
        expected[[6, 8]] = 0.5  # |20>, |22>
        np.testing.assert_allclose(post.matrix, np.diag(expected), atol=1e-15)

    def test_qutrit_zero_probability(self):
        with pytest.raises(ZeroProbabilityOutcome):
            post_measurement_state(qutrit_state(), "A", comp(3), 0)

    def test_side_b(self):
        post = post_measurement_state(qutrit_state(), "B", comp(3), 0)
        expected = np.zeros(9)
        expected[6] = 1.0  # only |20> has b = 0
        np.testing.assert_allclose(post.matrix, np.diag(expected), atol=1e-15)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            post_measurement_state(qubit_state(0.3), "B", comp(3), 0)


class TestJointDistribution:
    def test_qubit(self):
        j = joint_distribution(qubit_state(0.3), comp(2), comp(2))
        np.testing.assert_allclose(j.p_joint, [[0.3, 0], [0, 0.7]], atol=1e-15)

    @pytest.mark.parametrize("order", ["a_first", "b_first"])
    def test_qutrit(self, order):
        j = joint_distribution(qutrit_state(), comp(3), comp(3), order)
        np.testing.assert_allclose(j.p_joint, [[0, 0, 0], [0, THIRD, 0], [THIRD, 0, THIRD]], atol=1e-15)
        assert j.order == order

    def test_product_factorizes(self, rng):
        s = BipartiteState.product(random_density(rng, 2), random_density(rng, 3))
        j = joint_distribution(s, ProjectiveBasis(random_unitary(rng, 2)), ProjectiveBasis(random_unitary(rng, 3)))
        np.testing.assert_allclose(j.p_joint, np.outer(j.p_a, j.p_b), atol=1e-12)

    def test_matches_one_shot_formula(self, rng):
        s = BipartiteState.from_matrix(random_density(rng, 12), 3, 4)
        ua, ub = random_unitary(rng, 3), random_unitary(rng, 4)
        for order in ("a_first", "b_first"):
            j = joint_distribution(s, ProjectiveBasis(ua), ProjectiveBasis(ub), order)
            np.testing.assert_allclose(j.p_joint, one_shot_joint(s, ua, ub), atol=1e-12)

    def test_marginals_agree_with_outcome_marginals(self, rng):
        s = BipartiteState.from_matrix(random_density(rng, 6), 2, 3)
        ba, bb = ProjectiveBasis(random_unitary(rng, 2)), ProjectiveBasis(random_unitary(rng, 3))
        j = joint_distribution(s, ba, bb)
        p_a, p_b = outcome_marginals(s, ba, bb)
        np.testing.assert_allclose(j.p_a, p_a, atol=1e-9)
        np.testing.assert_allclose(j.p_b, p_b, atol=1e-9)

    def test_invalid_order(self):
        with pytest.raises(ValueError):
            joint_distribution(qubit_state(0.3), comp(2), comp(2), "simultaneous")

    def test_table_validation(self):
        with pytest.raises(ValidationError, match="normalization"):
            JointDistribution([[0.5, 0.2]])
        with pytest.raises(ValidationError, match="nonnegative"):
            JointDistribution([[1.1, -0.1]])
        with pytest.raises(ValidationError, match="marginal consistency"):
            JointDistribution([[0.5, 0.5]], p_a=[0.9])

    def test_tiny_negatives_clamped(self):
        j = JointDistribution([[1.0 + 1e-13, -1e-13]])
        assert j.p_joint.min() == 0.0


class TestConditionals:
    def test_qubit(self):
        cond = conditional_table(joint_distribution(qubit_state(0.3), comp(2), comp(2)), "b_given_a")
        np.testing.assert_allclose(np.array(cond.rows), np.eye(2), atol=1e-15)

    def test_qutrit_b_given_a(self):
        cond = conditional_table(joint_distribution(qutrit_state(), comp(3), comp(3)), "b_given_a")
        assert cond.rows[0] is None and not cond.is_defined(0)
        np.testing.assert_allclose(cond.rows[1], [0, 1, 0], atol=1e-15)
        np.testing.assert_allclose(cond.rows[2], [0.5, 0, 0.5], atol=1e-15)

    def test_qutrit_a_given_b(self):
        cond = conditional_table(joint_distribution(qutrit_state(), comp(3), comp(3), "b_first"), "a_given_b")
        # b_0 -> a_2, b_1 -> a_1, b_2 -> a_2
        np.testing.assert_allclose(np.array(cond.rows), [[0, 0, 1], [0, 1, 0], [0, 0, 1]], atol=1e-15)

    def test_bad_direction(self):
        with pytest.raises(ValueError):
            conditional_table(joint_distribution(qubit_state(0.3), comp(2), comp(2)), "sideways")

    def test_chain_rule(self, rng):
        for _ in range(20):
            s = random_mixture(rng)
            j = joint_distribution(s, ProjectiveBasis(random_unitary(rng, s.dim_a)), ProjectiveBasis(random_unitary(rng, s.dim_b)))
            cond = conditional_table(j, "b_given_a")
            for i, row in enumerate(cond.rows):
                if row is not None:
                    np.testing.assert_allclose(j.p_joint[i], j.p_a[i] * row, atol=1e-9)
                    assert abs(row.sum() - 1) <= 1e-9


def test_sequential_protocol_consistency(rng):
    """Measure A, collapse, then measure B: reproduces the joint table."""
    for _ in range(20):
        s = random_mixture(rng)
        ba, bb = ProjectiveBasis(random_unitary(rng, s.dim_a)), ProjectiveBasis(random_unitary(rng, s.dim_b))
        j = joint_distribution(s, ba, bb)
        for i in range(s.dim_a):
            if j.p_a[i] <= 1e-12:
                continue
            post = post_measurement_state(s, "A", ba, i)
            for k in range(s.dim_b):
                q = np.kron(np.eye(s.dim_a), bb.projector(k))
                assert abs(j.p_joint[i, k] - j.p_a[i] * np.trace(q @ post.matrix).real) <= 1e-9


class TestFunctional:
    def test_qubit_both_ways(self):
        j = joint_distribution(qubit_state(0.3), comp(2), comp(2))
        assert is_functional(j, "b_of_a") and is_functional(j, "a_of_b")

    def test_qutrit(self):
        j = joint_distribution(qutrit_state(), comp(3), comp(3))
        assert not is_functional(j, "b_of_a")
        assert is_functional(j, "a_of_b")

    def test_uniform_product(self):
        j = JointDistribution(np.full((2, 2), 0.25))
        assert not is_functional(j, "b_of_a") and not is_functional(j, "a_of_b")

    def test_arrows(self):
        j = joint_distribution(qutrit_state(), comp(3), comp(3))
        assert [(g, o) for g, o, _ in outcome_arrows(j, "a_of_b")] == [(0, 2), (1, 1), (2, 2)]
        arrows = outcome_arrows(j, "b_of_a")
        assert [(g, o) for g, o, _ in arrows] == [(1, 1), (2, 0), (2, 2)]
        np.testing.assert_allclose([p for *_, p in arrows], [1, 0.5, 0.5], atol=1e-15)

    def test_bad_direction(self):
        with pytest.raises(ValueError):
            is_functional(JointDistribution([[1.0]]), "b_given_a")
