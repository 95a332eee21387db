import math
from itertools import product

import numpy as np
import pytest

from snrecoupling.combinatorics import (
    all_permutations,
    enumerate_partitions,
    random_permutation,
    sk_dimension,
)
from snrecoupling.errors import ResourceLimitError, ValidationError
from snrecoupling.intertwiner import (
    bend_and_compare,
    cg_isometries,
    kronecker_coefficient,
    trivial_coupling,
)
from snrecoupling.repsym import represent, young_orthogonal_rep
from snrecoupling.tensorlinalg import kron


def brute_force_kronecker(alpha, beta, lam):
    """Oracle: average of explicit matrix traces over the whole group."""
    k = sum(lam)
    reps = {p: young_orthogonal_rep(p) for p in (alpha, beta, lam)}
    total = 0.0
    for perm in all_permutations(k):
        total += (
            np.trace(represent(reps[alpha], perm))
            * np.trace(represent(reps[beta], perm))
            * np.trace(represent(reps[lam], perm))
        )
    value = total / math.factorial(k)
    assert abs(value - round(value)) < 1e-9
    return int(round(value))


class TestKroneckerCoefficient:
    def test_tensoring_with_trivial(self):
        for lam in enumerate_partitions(4):
            for mu in enumerate_partitions(4):
                expected = 1 if lam == mu else 0
                assert kronecker_coefficient(lam, (4,), mu) == expected

    def test_self_duality(self):
        for lam in enumerate_partitions(5):
            assert kronecker_coefficient(lam, lam, (5,)) == 1

    def test_standard_cube_of_s3(self):
        assert brute_force_kronecker((2, 1), (2, 1), (2, 1)) == 1
        assert kronecker_coefficient((2, 1), (2, 1), (2, 1)) == 1

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_matches_matrix_trace_oracle(self, k):
        for alpha, beta, lam in product(enumerate_partitions(k), repeat=3):
            assert kronecker_coefficient(alpha, beta, lam) == brute_force_kronecker(
                alpha, beta, lam
            )

    def test_rejects_mismatched_k(self):
        with pytest.raises(ValidationError):
            kronecker_coefficient((2,), (2, 1), (3,))


class TestCgIsometries:
    def test_one_dimensional_case(self):
        basis = cg_isometries((1, 1), (1, 1), (2,))
        assert len(basis) == 1
        assert np.allclose(np.abs(basis.maps[0]), [[1.0]])

    def test_count_matches_kronecker(self):
        for k in (2, 3, 4, 5):
            for alpha, beta, lam in product(enumerate_partitions(k), repeat=3):
                basis = cg_isometries(alpha, beta, lam)
                assert len(basis) == kronecker_coefficient(alpha, beta, lam)

    def test_orthonormality_with_dimension_scale(self):
        for k in (3, 4):
            for alpha, beta, lam in product(enumerate_partitions(k), repeat=3):
                basis = cg_isometries(alpha, beta, lam)
                dl = sk_dimension(lam)
                for i, phi_i in enumerate(basis.maps):
                    for j, phi_j in enumerate(basis.maps):
                        inner = np.trace(phi_j.T @ phi_i)
                        assert inner == pytest.approx(
                            dl if i == j else 0.0, abs=1e-9
                        )

    def test_each_map_is_an_isometry(self):
        for alpha, beta, lam in product(enumerate_partitions(3), repeat=3):
            for phi in cg_isometries(alpha, beta, lam).maps:
                eye = np.eye(sk_dimension(lam))
                assert np.abs(phi.T @ phi - eye).max() < 1e-9

    def test_equivariance_on_random_permutations(self):
        rng = np.random.default_rng(17)
        for k in (3, 4):
            for alpha, beta, lam in product(enumerate_partitions(k), repeat=3):
                basis = cg_isometries(alpha, beta, lam)
                if not basis.maps:
                    continue
                rep_a = young_orthogonal_rep(alpha)
                rep_b = young_orthogonal_rep(beta)
                rep_l = young_orthogonal_rep(lam)
                perm = random_permutation(k, rng)
                big = kron(represent(rep_a, perm), represent(rep_b, perm))
                small = represent(rep_l, perm)
                for phi in basis.maps:
                    assert np.abs(big @ phi - phi @ small).max() < 1e-9

    def test_completeness_resolution_of_identity(self):
        # the isometry normalization tr(phi^T phi) = dim[lam] makes each
        # phi phi^T an orthogonal projector, so they resolve the identity
        # with no extra weight
        for k in (2, 3, 4):
            for alpha in enumerate_partitions(k):
                for beta in enumerate_partitions(k):
                    da = sk_dimension(alpha)
                    db = sk_dimension(beta)
                    acc = np.zeros((da * db, da * db))
                    for lam in enumerate_partitions(k):
                        basis = cg_isometries(alpha, beta, lam)
                        for phi in basis.maps:
                            acc += phi @ phi.T
                    assert np.abs(acc - np.eye(da * db)).max() < 1e-8

    def test_resource_cap(self):
        with pytest.raises(ResourceLimitError):
            cg_isometries((3, 2), (3, 2), (3, 2), product_cap=10)


class TestTrivialCoupling:
    def test_trivial_rep_scalar(self):
        assert np.allclose(trivial_coupling((3,)), [1.0])

    def test_standard_rep(self):
        expected = np.array([1.0, 0.0, 0.0, 1.0]) / math.sqrt(2)
        assert np.allclose(trivial_coupling((2, 1)), expected)

    def test_matches_cg_up_to_sign(self):
        for k in (2, 3, 4):
            for lam in enumerate_partitions(k):
                vec = cg_isometries(lam, lam, (k,)).maps[0].reshape(-1)
                ref = trivial_coupling(lam)
                assert min(
                    np.abs(vec - ref).max(), np.abs(vec + ref).max()
                ) < 1e-9

    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_teleportation_identity(self, k):
        for lam in enumerate_partitions(k):
            d = sk_dimension(lam)
            phi = trivial_coupling(lam).reshape(d, d)
            # (cap on the left) o (cup on the right) collapses to 1/d times
            # the identity line
            composed = np.einsum("ef,fg->ge", phi, phi)
            assert np.abs(composed - np.eye(d) / d).max() < 1e-10


class TestBendAndCompare:
    def test_one_dimensional_reps(self):
        u = bend_and_compare((1, 1), (1, 1), (2,))
        assert u.shape == (1, 1)
        assert abs(abs(u[0, 0]) - 1.0) < 1e-12

    def test_standard_cube(self):
        u = bend_and_compare((2, 1), (2, 1), (2, 1))
        assert u.shape == (1, 1)
        assert abs(abs(u[0, 0]) - 1.0) < 1e-10

    def test_all_k3_triples(self):
        for alpha, beta, lam in product(enumerate_partitions(3), repeat=3):
            if kronecker_coefficient(alpha, beta, lam) < 1:
                continue
            u = bend_and_compare(alpha, beta, lam)
            g = u.shape[0]
            assert np.abs(u @ u.T.conj() - np.eye(g)).max() < 1e-8

    def test_gram_check_is_enforced(self):
        with pytest.raises(ValidationError):
            bend_and_compare((2,), (2,), (1, 1))  # no intertwiners at all
