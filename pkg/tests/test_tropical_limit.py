"""Tests for node configurations, exact logs, the limit period matrix,
theta coefficients, period vectors, and Abel sums."""

import itertools
from fractions import Fraction as F

import pytest

from tropkp.hirota_parametrization import kprime, vandermonde_minor
from tropkp.tropical_limit import (
    Divisor,
    LogRational,
    PeriodVectors,
    abel_map,
    kappa_config,
    limit_R,
    make_divisor,
    signed_log,
    theta_coefficients,
    uvw,
)

KC = kappa_config([0, 1, 2, 3])

# exp(R) at kappa = (0, 1, 2, 3), worked out from the defining rational
# functions: diagonal (kappa_{i+1} - kappa_1)^(-4), off-diagonal the squared
# cross ratio.
EXP_R = (
    (F(1), F(1, 4), F(4, 9)),
    (F(1, 4), F(1, 16), F(1, 36)),
    (F(4, 9), F(1, 36), F(1, 81)),
)


def exp_bilinear(R, c, c0):
    """exp(c^T R c0) as an exact rational, diagonal entries included."""
    val = F(1)
    for i in range(1, R.genus + 1):
        for j in range(1, R.genus + 1):
            e = c[i - 1] * c0[j - 1]
            if not e:
                continue
            if i == j:
                val *= R.exp_half_diag(i) ** (2 * e)
            else:
                val *= R.exp_entry(i, j) ** e
    return val


class TestKappaConfig:
    def test_basic_accessors(self):
        assert KC.n == 4
        assert KC.genus == 3
        assert KC.kappa(2) == 1
        assert KC.diff(4, 2) == 2
        assert KC.sorted_flag

    def test_unsorted_flag(self):
        assert not kappa_config([1, 0, 2]).sorted_flag

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError, match="distinct"):
            kappa_config([0, 1, 1])

    def test_rejects_short_input(self):
        with pytest.raises(ValueError):
            kappa_config([0])


class TestLogRational:
    def test_arithmetic_multiplies_arguments(self):
        a = LogRational(F(2, 3))
        b = LogRational(F(3, 4))
        assert (a + b).arg == F(1, 2)
        assert (a - b).arg == F(8, 9)
        assert (-a).arg == F(3, 2)
        assert a.scale(3).arg == F(8, 27)

    def test_value_is_float_log(self):
        import math

        assert LogRational(F(5, 2)).value() == pytest.approx(math.log(2.5))

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            LogRational(F(0))
        with pytest.raises(ValueError):
            LogRational(F(-1, 2))

    def test_signed_log_roundtrip(self):
        s = signed_log(F(-7, 3))
        assert s.sign == -1
        assert s.log_abs.arg == F(7, 3)
        assert s.exp_value() == F(-7, 3)

    def test_signed_log_rejects_zero(self):
        with pytest.raises(ValueError):
            signed_log(F(0))


class TestLimitR:
    def test_exp_entries_frozen(self):
        R = limit_R(KC)
        for i in range(1, 4):
            for j in range(1, 4):
                assert R.exp_entry(i, j) == EXP_R[i - 1][j - 1], f"entry ({i},{j})"

    def test_index_zero_reads_as_one(self):
        R = limit_R(KC)
        assert R.exp_entry(0, 2) == 1
        assert R.exp_half_diag(0) == 1

    def test_half_diagonal_squares_to_diagonal(self):
        R = limit_R(KC)
        for i in range(1, 4):
            assert R.exp_half_diag(i) ** 2 == R.exp_entry(i, i)

    @pytest.mark.parametrize("size", [1, 2, 3, 4])
    def test_vandermonde_squares_from_R(self, size):
        """K_J^2 is recoverable from the period matrix alone, which pins the
        exponent convention of the off-diagonal entries."""
        from tropkp.hirota_parametrization import kj_squared_from_R

        R = limit_R(KC)
        for J in itertools.combinations(range(1, 5), size):
            assert kj_squared_from_R(R, J) == vandermonde_minor(KC, J) ** 2, f"J={J}"


class TestThetaCoefficients:
    def test_frozen_values(self):
        R = limit_R(KC)
        coeffs = theta_coefficients(R, [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, -1, 0)])
        assert coeffs[(0, 0, 0)] == 1
        assert coeffs[(1, 0, 0)] == 1
        assert coeffs[(0, 1, 0)] == F(1, 4)
        assert coeffs[(1, -1, 0)] == 1

    def test_even_in_c(self):
        R = limit_R(KC)
        pts = [(1, -1, 0), (0, 1, -1), (1, 1, 1)]
        coeffs = theta_coefficients(R, pts + [tuple(-x for x in p) for p in pts])
        for p in pts:
            assert coeffs[p] == coeffs[tuple(-x for x in p)]

    def test_translation_identity(self):
        """a_{c - c0} exp(c^T R c0) = a_c a_{c0}, the quasi-periodicity of the
        coefficient family."""
        R = limit_R(KC)
        cs = [(1, 0, 0), (1, -1, 0), (0, 1, -1), (1, 1, 1), (2, -1, 0)]
        c0s = [(1, 0, 0), (0, 0, 1), (1, -1, -1)]
        for c in cs:
            for c0 in c0s:
                diff = tuple(a - b for a, b in zip(c, c0))
                coeffs = theta_coefficients(R, [c, c0, diff])
                lhs = coeffs[diff] * exp_bilinear(R, c, c0)
                assert lhs == coeffs[c] * coeffs[c0], f"c={c}, c0={c0}"

    def test_wrong_length_rejected(self):
        R = limit_R(KC)
        with pytest.raises(ValueError, match="wrong length"):
            theta_coefficients(R, [(1, 0)])


class TestPeriodVectors:
    def test_frozen_components(self):
        pv = uvw(KC, "X+")
        assert pv.U == (-1, -2, -3)
        assert pv.V == (-1, -4, -9)
        assert pv.W == (-1, -8, -27)

    def test_other_component_negates(self):
        plus = uvw(KC, "X+")
        minus = uvw(KC, "X-")
        assert minus.U == tuple(-u for u in plus.U)
        assert minus.V == tuple(-v for v in plus.V)
        assert minus.W == tuple(-w for w in plus.W)

    @pytest.mark.parametrize("component", ["X+", "X-"])
    def test_dispersion_vanishes(self, component):
        pv = uvw(KC, component)
        assert pv.dispersion_residuals() == (0, 0, 0)

    def test_dispersion_detects_corruption(self):
        pv = PeriodVectors(U=(F(1),), V=(F(2),), W=(F(1),), component_choice="X+")
        assert pv.dispersion_residuals() != (0,)

    def test_rejects_unknown_component(self):
        with pytest.raises(ValueError, match="component"):
            uvw(KC, "Y+")


class TestDivisorAndAbel:
    def test_products(self):
        d = make_divisor([F(1, 2), F(3, 2), F(5, 2)], 1)
        assert d.P_at(F(0)) == F(-1, 2)
        assert d.Q_prod_at(F(0)) == F(4, 15)

    def test_split_bounds(self):
        with pytest.raises(ValueError, match="split_k"):
            Divisor(points=(F(1, 2),), split_k=2, p0_component="X+")

    def test_component_validation(self):
        with pytest.raises(ValueError):
            Divisor(points=(F(1, 2),), split_k=0, p0_component="Z")

    def test_abel_frozen_first_entry(self):
        d = make_divisor([F(1, 2), F(3, 2), F(5, 2)], 1)
        sums = abel_map(KC, d)
        assert sums[0].exp_value() == -5

    def test_abel_consistent_with_column_weights(self):
        """lambda_j = K'(kappa_1) / (exp(A_j) K'(kappa_{j+1}))."""
        from tropkp.hirota_parametrization import lambda_from_divisor

        d = make_divisor([F(1, 2), F(3, 2), F(5, 2)], 1)
        sums = abel_map(KC, d)
        lams = lambda_from_divisor(KC, d)
        for j in range(1, 4):
            expected = kprime(KC, 1) / (sums[j - 1].exp_value() * kprime(KC, j + 1))
            assert lams[j - 1] == expected, f"lambda_{j}"

    def test_abel_wrong_degree(self):
        with pytest.raises(ValueError, match="points"):
            abel_map(KC, make_divisor([F(1, 2)], 1))

    def test_abel_rejects_node_collision(self):
        with pytest.raises(ValueError, match="avoid"):
            abel_map(KC, make_divisor([F(1), F(3, 2), F(5, 2)], 1))
