from fractions import Fraction
from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from youngfield.characters import (
    CharacterTable,
    Distribution,
    ThomaParams,
    character,
    class_function,
    disjoint_cycles,
    from_class_function,
    gelfand,
    involution_count,
    m_rho,
    natural_representation,
    pad_class,
    plancherel,
    schur_weyl,
    thoma_character,
    thoma_induced,
    young_log_derivative,
)
from youngfield.group_algebra import Perm
from youngfield.partitions import Partition, dim_syt, enumerate_partitions

from oracles import cycle_type


class TestCharacters:
    @pytest.mark.parametrize("n", range(1, 8))
    def test_identity_class_is_dimension(self, n):
        for lam in enumerate_partitions(n):
            assert character(lam, [1] * n) == dim_syt(lam)

    @pytest.mark.parametrize("n", range(1, 8))
    def test_trivial_representation(self, n):
        for mu in enumerate_partitions(n):
            assert character([n], mu) == 1

    def test_hook_on_three_cycle(self):
        assert character([2, 1], [3]) == -1

    def test_sign_representation(self):
        for mu in enumerate_partitions(5):
            assert character([1] * 5, mu) == (-1) ** (5 - len(mu))

    @pytest.mark.parametrize("n", range(1, 8))
    def test_column_orthogonality(self, n):
        assert CharacterTable.build(n).column_orthogonality()

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            character([2, 1], [2])

    def test_pad_class(self):
        assert pad_class([3], 5) == Partition([3, 1, 1])


class TestDistributions:
    def test_plancherel_three(self):
        rho = plancherel(3)
        assert rho.probs == {Partition([3]): Fraction(1, 6), Partition([2, 1]): Fraction(2, 3),
                             Partition([1, 1, 1]): Fraction(1, 6)}

    def test_gelfand_four(self):
        assert involution_count(4) == 10
        assert sum(dim_syt(lam) for lam in enumerate_partitions(4)) == 10
        assert gelfand(4)[[3, 1]] == Fraction(3, 10)

    def test_involution_count_brute_force(self):
        for n in range(7):
            brute = sum(1 for p in permutations(range(n)) if all(p[p[i]] == i for i in range(n)))
            assert involution_count(n) == brute

    @pytest.mark.parametrize("build", [plancherel, gelfand, lambda n: schur_weyl(n, 3), natural_representation,
                                       lambda n: thoma_induced(n, ThomaParams((Fraction(1, 3),), (Fraction(1, 5),)))])
    @pytest.mark.parametrize("n", range(1, 7))
    def test_normalized_and_nonnegative(self, build, n):
        rho = build(n)
        assert rho.total() == 1
        assert all(p >= 0 for p in rho.probs.values())

    def test_schur_weyl_row_bound(self):
        assert all(lam.length() <= 2 for lam in schur_weyl(6, 2).probs)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_thoma_plancherel_specialization(self, n):
        assert thoma_induced(n, ThomaParams()).probs == plancherel(n).probs

    def test_cap(self):
        with pytest.raises(ValueError):
            plancherel(13)

    def test_rejects_wrong_size(self):
        with pytest.raises(ValueError):
            Distribution(3, {Partition([2]): 1})

    def test_json(self):
        data = plancherel(2).to_json()
        assert data["probs"] == [[[2], 1, 2], [[1, 1], 1, 2]]


class TestCharacterFunctional:
    def test_plancherel_is_regular_character(self):
        rho = plancherel(5)
        assert m_rho(rho, []) == 1
        for mu in enumerate_partitions(5):
            if mu != Partition([1] * 5):
                assert m_rho(rho, mu) == 0

    def test_natural_representation(self):
        n = 4
        rho = natural_representation(n)
        M = class_function(rho)
        for p in permutations(range(n)):
            fixed = sum(1 for i in range(n) if p[i] == i)
            assert M(Perm(p)) == Fraction(fixed, n)

    def test_gelfand_on_transposition(self):
        rho = gelfand(4)
        brute = sum(Fraction(dim_syt(lam), 10) * Fraction(character(lam, [2, 1, 1]), dim_syt(lam))
                    for lam in enumerate_partitions(4))
        assert m_rho(rho, [2]) == brute

    def test_too_long_cycles(self):
        assert m_rho(plancherel(3), [2, 2]) == 0


class TestThomaCharacter:
    def test_plancherel_point(self):
        assert thoma_character(ThomaParams(), [2]) == 0
        assert thoma_character(ThomaParams(), []) == 1

    def test_trivial_character(self):
        params = ThomaParams((1,))
        assert all(thoma_character(params, mu) == 1 for mu in enumerate_partitions(5))

    def test_sign_character(self):
        params = ThomaParams((), (1,))
        for p in permutations(range(5)):
            ct = cycle_type(p)
            assert thoma_character(params, ct) == Perm(p).sign()

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            ThomaParams((Fraction(2, 3),), (Fraction(1, 2),))
        with pytest.raises(ValueError):
            ThomaParams((Fraction(-1, 3),))

    def test_gamma(self):
        assert ThomaParams((Fraction(1, 2),), (Fraction(1, 4),)).gamma == Fraction(1, 4)

    @settings(max_examples=15, deadline=None)
    @given(st.fractions(0, 1, max_denominator=6), st.fractions(0, 1, max_denominator=6), st.integers(1, 6))
    def test_fourier_round_trip(self, a, b, n):
        if a + b > 1:
            a, b = 1 - a, 1 - b
        if a + b > 1:
            return
        params = ThomaParams((a,), (b,))
        rho = thoma_induced(n, params)
        for mu in enumerate_partitions(n):
            assert m_rho(rho, mu) == thoma_character(params, mu)

    def test_from_class_function_inverts_plancherel(self):
        rho = from_class_function(5, lambda mu: 1 if not [p for p in mu if p > 1] else 0)
        assert rho.probs == plancherel(5).probs


class TestYoungLogDerivative:
    @pytest.mark.parametrize("n", range(2, 9))
    def test_plancherel(self, n):
        rho = plancherel(n)
        assert young_log_derivative(rho, [1]) == 1
        for ks in ([2], [3], [2, 2], [2, 3]):
            if sum(ks) <= n:
                assert young_log_derivative(rho, ks) == 0

    @pytest.mark.parametrize("n", range(2, 9))
    def test_plancherel_second_order_vanishes(self, n):
        rho = plancherel(n)
        for i in range(1, 5):
            for j in range(1, 5):
                if i + j <= n:
                    assert n * young_log_derivative(rho, [i, j]) == 0

    @pytest.mark.parametrize("n, D, c", [(4, 2, Fraction(1)), (9, 3, Fraction(1)), (4, 4, Fraction(1, 2)),
                                         (9, 6, Fraction(1, 2))])
    def test_schur_weyl_exact_scaling(self, n, D, c):
        rho = schur_weyl(n, D)
        for i in range(1, 5):
            assert young_log_derivative(rho, [i]) == c ** (i - 1)

    def test_schur_weyl_irrational_scaling_is_float(self):
        value = young_log_derivative(schur_weyl(8, 4), [2])
        assert isinstance(value, float)
        assert value == pytest.approx(8**0.5 / 4)

    def test_requires_indices(self):
        with pytest.raises(ValueError):
            young_log_derivative(plancherel(3), [])

    def test_disjoint_cycles(self):
        perms = disjoint_cycles([2, 3], 6)
        assert [p.cycle_type() for p in perms] == [Partition([2]), Partition([3])]
        with pytest.raises(ValueError):
            disjoint_cycles([4, 3], 6)

    def test_gelfand_mixed_derivative(self):
        # two disjoint transpositions: covariance of M is the Gelfand second-order datum
        rho = gelfand(6)
        M = class_function(rho)
        a, b = disjoint_cycles([2, 2], 6)
        expected = 6 * (M(a * b) - M(a) * M(b))
        assert young_log_derivative(rho, [2, 2]) == expected
