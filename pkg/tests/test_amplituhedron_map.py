"""Setup validation, the map on representatives, and the cyclic matrix."""

from fractions import Fraction
from random import Random

import pytest

from tnngrass import (
    DimensionError,
    RankError,
    RationalMatrix,
    TNNPoint,
    UnsupportedParameterError,
    build_setup,
    build_z0,
    check_well_defined_on_samples,
    hat_map,
    minor,
    outer_product,
    rank,
    signs_alternate,
    IndexSubset,
)
from helpers import (
    draw_nodes,
    random_fraction,
    random_matrix,
    scaled_vandermonde_point,
    vandermonde_setup,
)


class TestBuildSetup:
    def test_minimal_corank_one(self):
        setup = build_setup(1, 0, RationalMatrix([[1, 1]]))
        assert setup.kernel_gen == (Fraction(1), Fraction(-1))
        assert setup.kernel_alternating

    def test_vandermonde_positive_and_alternating(self):
        setup = vandermonde_setup(1, 2, [Fraction(i) for i in (1, 2, 3, 4)])
        assert setup.all_minors_positive
        assert setup.positivity.is_tnn
        assert signs_alternate(setup.kernel_gen)

    def test_repeated_columns_give_zero_kernel_entry(self):
        z = RationalMatrix([[1, 1, 0], [0, 0, 1]])
        setup = build_setup(1, 1, z)
        assert not setup.all_minors_positive
        assert any(x == 0 for x in setup.kernel_gen)
        assert setup.kernel_alternating is False

    def test_rank_error(self):
        with pytest.raises(RankError):
            build_setup(1, 1, RationalMatrix([[1, 2, 3], [2, 4, 6]]))

    def test_no_kernel_without_corank_one(self):
        setup = build_setup(1, 1, RationalMatrix.identity(2))
        assert setup.kernel_gen is None
        assert setup.kernel_alternating is None

    def test_kernel_canonical_leading_sign(self):
        setup = vandermonde_setup(2, 1, [Fraction(i) for i in (1, 2, 3, 5)])
        assert setup.kernel_gen[0] > 0


class TestHatMap:
    def test_identity_z_is_identity_on_representatives(self):
        setup = build_setup(2, 1, RationalMatrix.identity(3))
        v = RationalMatrix([[1, 2, 3], [0, 1, 1]])
        mapped = hat_map(setup, v)
        assert mapped.image == v
        assert mapped.image_rank == rank(v)

    def test_kernel_vector_maps_to_zero(self):
        setup = build_setup(1, 0, RationalMatrix([[1, 1]]))
        mapped = hat_map(setup, RationalMatrix([[1, -1]]))
        assert mapped.image == RationalMatrix([[0]])
        assert mapped.image_rank == 0

    def test_unit_vector_selects_column(self):
        setup = vandermonde_setup(1, 2, [Fraction(i) for i in (1, 2, 3, 4)])
        mapped = hat_map(setup, RationalMatrix([[1, 0, 0, 0]]))
        assert mapped.image == RationalMatrix([[1, 1, 1]])

    def test_linearity(self):
        rng = Random(31)
        setup = vandermonde_setup(2, 1, draw_nodes(rng, 4))
        for _ in range(20):
            u = random_matrix(rng, 2, 4)
            v = random_matrix(rng, 2, 4)
            alpha, beta = random_fraction(rng), random_fraction(rng)
            combo = u.scale(alpha) + v.scale(beta)
            lhs = hat_map(setup, combo).image
            rhs = hat_map(setup, u).image.scale(alpha) + hat_map(setup, v).image.scale(beta)
            assert lhs == rhs

    def test_equivariance(self):
        rng = Random(37)
        setup = vandermonde_setup(2, 2, draw_nodes(rng, 5))
        for _ in range(20):
            v = random_matrix(rng, 2, 5)
            g = random_matrix(rng, 2, 2)
            assert hat_map(setup, g @ v).image == g @ hat_map(setup, v).image

    def test_kernel_direction_annihilated(self):
        rng = Random(41)
        setup = vandermonde_setup(2, 1, draw_nodes(rng, 4))
        a = setup.kernel_gen
        for _ in range(20):
            x = tuple(random_fraction(rng) for _ in range(2))
            mapped = hat_map(setup, outer_product(x, a))
            assert mapped.image == RationalMatrix.zeros(2, 3)

    def test_dimension_mismatch(self):
        setup = build_setup(1, 0, RationalMatrix([[1, 1]]))
        with pytest.raises(DimensionError):
            hat_map(setup, RationalMatrix([[1, 2, 3]]))


class TestWellDefinedness:
    def test_identity_z(self):
        setup = build_setup(2, 0, RationalMatrix.identity(2))
        samples = [TNNPoint.from_matrix(RationalMatrix.identity(2))]
        assert check_well_defined_on_samples(setup, samples).ok

    def test_positive_z_never_fails(self):
        rng = Random(43)
        setup = vandermonde_setup(2, 2, draw_nodes(rng, 5))
        samples = [scaled_vandermonde_point(rng, 2, 5) for _ in range(100)]
        report = check_well_defined_on_samples(setup, samples)
        assert report.ok and report.witness is None

    def test_adversarial_z_found_by_brute_force(self):
        # columns (1,0), (0,1), (-1,-1): the all-ones TNN row maps to zero
        z = RationalMatrix([[1, 0, -1], [0, 1, -1]])
        setup = build_setup(1, 1, z)
        assert not setup.all_minors_positive
        samples = [
            TNNPoint.from_matrix(RationalMatrix([[a, b, c]]))
            for a in range(3)
            for b in range(3)
            for c in range(3)
            if (a, b, c) != (0, 0, 0)
        ]
        report = check_well_defined_on_samples(setup, samples)
        assert not report.ok
        assert report.worst_rank == 0
        assert report.witness.matrix == RationalMatrix([[1, 1, 1]])


class TestBuildZ0:
    def test_k1_m2_exact_rows(self):
        setup = build_z0(1, 2)
        assert setup.Z == RationalMatrix(
            [[1, 1, 1, 1], [1, 0, -1, 0], [0, 1, 0, -1]]
        )
        assert minor(setup.Z, IndexSubset((1, 2, 3)), IndexSubset((1, 2, 3))) == 2

    def test_k1_m2_kernel(self):
        setup = build_z0(1, 2)
        assert setup.kernel_gen == (
            Fraction(1), Fraction(-1), Fraction(1), Fraction(-1)
        )

    def test_twisted_shift_case_positive(self):
        setup = build_z0(2, 2)
        assert setup.all_minors_positive
        assert setup.kernel_alternating
        assert setup.n == 5

    @pytest.mark.parametrize("k,m", [(1, 2), (2, 2), (3, 2), (2, 4)])
    def test_all_configs_verified(self, k, m):
        setup = build_z0(k, m)
        assert setup.all_minors_positive
        assert setup.kernel_alternating
        assert setup.n == k + m + 1

    def test_odd_m_rejected(self):
        with pytest.raises(UnsupportedParameterError):
            build_z0(1, 1)

    def test_low_precision_rejected(self):
        with pytest.raises(UnsupportedParameterError):
            build_z0(1, 2, precision_digits=4)

    def test_higher_precision_also_verifies(self):
        setup = build_z0(2, 2, precision_digits=20)
        assert setup.all_minors_positive
