from collections import Counter
from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.stats import chisquare

from youngfield.characters import ThomaParams, gelfand, plancherel, schur_weyl, thoma_induced
from youngfield.fluctuations import height_array
from youngfield.partitions import EMPTY, Partition, enumerate_partitions
from youngfield.samplers import (
    GrowthPath,
    branching_probability,
    cotransition_weights,
    diagonal_count,
    downward_chain,
    downward_law,
    draw_index,
    gelfand_growth,
    height_field,
    height_function,
    hook_walk_syt,
    plancherel_growth,
    rng_stream,
    rsk_growth,
    rsk_shape_sequence,
    rsk_shapes_at,
    schur_weyl_growth,
    thoma_growth,
    transition_weights,
    uniform_involution,
)

from oracles import count_skew_syt, count_syt, enumerate_syt

P_MIN = 1e-3


def shape_of(rows):
    return Partition(Counter(rows)[r] for r in range(len(set(rows))))


def final_shape_from_word(word, strict=None):
    return shape_of(rsk_shape_sequence(word, strict))


def chi_square_p(observed: Counter, law: dict) -> float:
    keys = [k for k, p in law.items() if p > 0]
    assert set(observed) <= set(keys)
    total = sum(observed.values())
    obs = np.array([observed.get(k, 0) for k in keys], dtype=float)
    exp = np.array([float(law[k]) * total for k in keys])
    return float(chisquare(obs, exp).pvalue)


def longest_monotone(seq, increasing=True):
    best = []
    for i, x in enumerate(seq):
        prev = [best[j] for j in range(i) if (seq[j] < x if increasing else seq[j] > x)]
        best.append(1 + max(prev, default=0))
    return max(best, default=0)


class TestRng:
    def test_deterministic(self):
        a = rng_stream(7, 3).random(5)
        b = rng_stream(7, 3).random(5)
        assert np.array_equal(a, b)

    def test_streams_differ(self):
        assert not np.array_equal(rng_stream(7, 0).random(5), rng_stream(7, 1).random(5))

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            rng_stream(-1)

    def test_draw_index_degenerate(self):
        rng = rng_stream(1)
        assert all(draw_index([Fraction(0), Fraction(1), Fraction(0)], rng) == 1 for _ in range(50))

    def test_draw_index_law(self):
        rng = rng_stream(2)
        weights = [Fraction(1, 6), Fraction(1, 2), Fraction(1, 3)]
        counts = Counter(draw_index(weights, rng) for _ in range(20000))
        assert chi_square_p(counts, dict(enumerate(weights))) > P_MIN


class TestGrowthPath:
    def test_validation(self):
        with pytest.raises(ValueError):
            GrowthPath((Partition([1]),), 0, "x")
        with pytest.raises(ValueError):
            GrowthPath((EMPTY, Partition([1]), Partition([3])), 0, "x")
        with pytest.raises(ValueError):
            GrowthPath((EMPTY, Partition([1]), Partition([2]), Partition([1, 1, 1])), 0, "x")

    def test_tableau_and_csv(self):
        path = GrowthPath((EMPTY, Partition([1]), Partition([1, 1]), Partition([2, 1])), 5, "x")
        assert path.steps == 3
        assert path.final() == Partition([2, 1])
        assert path.tableau() == [[1, 3], [2]]
        assert path.added_cells() == [(1, 1), (2, 1), (1, 2)]
        assert path.csv_rows() == [(0, ""), (1, "1"), (2, "1;1"), (3, "2;1")]

    @pytest.mark.parametrize(
        "sampler",
        [
            lambda s, i: plancherel_growth(30, s, i),
            lambda s, i: rsk_growth(30, s, i),
            lambda s, i: gelfand_growth(30, s, i),
            lambda s, i: schur_weyl_growth(30, 3, s, i),
            lambda s, i: thoma_growth(30, ThomaParams((Fraction(1, 3),), (Fraction(1, 4),)), s, i),
            lambda s, i: hook_walk_syt([5, 3, 1], s, i),
        ],
    )
    def test_determinism(self, sampler):
        assert sampler(123, 4) == sampler(123, 4)
        assert sampler(123, 4).csv_rows() == sampler(123, 4).csv_rows()

    @pytest.mark.parametrize("fn", [plancherel_growth, rsk_growth, gelfand_growth])
    def test_rejects_zero_steps(self, fn):
        with pytest.raises(ValueError):
            fn(0, 1)


class TestPlancherel:
    def test_first_steps(self):
        assert transition_weights(EMPTY) == ((0, Fraction(1)),)
        assert dict(transition_weights(Partition([1]))) == {0: Fraction(1, 2), 1: Fraction(1, 2)}

    @pytest.mark.parametrize("lam", [lam for n in range(1, 8) for lam in enumerate_partitions(n)])
    def test_transition_weights_formula(self, lam):
        weights = dict(transition_weights(lam))
        assert sum(weights.values()) == 1
        n = lam.size()
        for row, w in weights.items():
            assert w == Fraction(count_syt(tuple(lam.add_box(row + 1))), (n + 1) * count_syt(tuple(lam)))

    def test_marginal_n3(self):
        counts = Counter(plancherel_growth(3, 99, i).final() for i in range(20000))
        law = {Partition([3]): Fraction(1, 6), Partition([2, 1]): Fraction(2, 3), Partition([1, 1, 1]): Fraction(1, 6)}
        assert chi_square_p(counts, law) > P_MIN

    def test_marginal_n5(self):
        counts = Counter(plancherel_growth(5, 5, i).final() for i in range(20000))
        assert chi_square_p(counts, plancherel(5).probs) > P_MIN


class TestRSK:
    def test_monotone_words(self):
        assert final_shape_from_word([5, 4, 3, 2, 1]) == Partition([1] * 5)
        assert final_shape_from_word([1, 2, 3, 4, 5]) == Partition([5])
        assert final_shape_from_word([1, 1, 1]) == Partition([3])

    def test_rsk_counts_dim_squared(self):
        counts = Counter(final_shape_from_word(p) for p in permutations(range(5)))
        assert counts == {lam: count_syt(tuple(lam)) ** 2 for lam in enumerate_partitions(5)}

    def test_involutions_count_dim(self):
        invs = [p for p in permutations(range(5)) if all(p[p[i]] == i for i in range(5))]
        counts = Counter(final_shape_from_word(p) for p in invs)
        assert counts == {lam: count_syt(tuple(lam)) for lam in enumerate_partitions(5)}

    @settings(max_examples=60)
    @given(st.permutations(range(8)))
    def test_schensted(self, word):
        shape = final_shape_from_word(word)
        assert shape[0] == longest_monotone(word, True)
        assert len(shape) == longest_monotone(word, False)

    def test_rsk_shapes_at(self):
        path = rsk_growth(25, 8, 2)
        snap = rsk_shapes_at([0, 5, 25], 8, 2)
        assert snap == {0: EMPTY, 5: path.shapes[5], 25: path.shapes[25]}

    def test_marginal_n5(self):
        counts = Counter(rsk_growth(5, 6, i).final() for i in range(20000))
        assert chi_square_p(counts, plancherel(5).probs) > P_MIN


class TestOtherModels:
    def test_uniform_involution(self):
        rng = rng_stream(3)
        counts = Counter(tuple(uniform_involution(4, rng)) for _ in range(10000))
        invs = [p for p in permutations(range(4)) if all(p[p[i]] == i for i in range(4))]
        assert len(invs) == 10
        assert chi_square_p(counts, {p: Fraction(1, 10) for p in invs}) > P_MIN

    def test_gelfand_marginal(self):
        counts = Counter(gelfand_growth(5, 4, i).final() for i in range(10000))
        assert chi_square_p(counts, gelfand(5).probs) > P_MIN

    def test_schur_weyl_marginal(self):
        counts = Counter(schur_weyl_growth(5, 2, 4, i).final() for i in range(10000))
        assert all(len(lam) <= 2 for lam in counts)
        assert chi_square_p(counts, schur_weyl(5, 2).probs) > P_MIN

    def test_thoma_single_row(self):
        params = ThomaParams(alpha=(1,))
        assert all(thoma_growth(12, params, 1, i).final() == Partition([12]) for i in range(20))

    def test_thoma_single_column(self):
        params = ThomaParams(beta=(1,))
        assert all(thoma_growth(12, params, 1, i).final() == Partition([1] * 12) for i in range(20))

    def test_thoma_gamma_one_is_plancherel(self):
        params = ThomaParams()
        counts = Counter(thoma_growth(4, params, 12, i).final() for i in range(10000))
        assert chi_square_p(counts, plancherel(4).probs) > P_MIN

    @pytest.mark.parametrize(
        "params",
        [
            ThomaParams(alpha=(Fraction(1, 2),), beta=(Fraction(1, 4),)),
            ThomaParams(alpha=(Fraction(1, 3), Fraction(1, 3)), beta=(Fraction(1, 3),)),
        ],
    )
    def test_thoma_marginal(self, params):
        counts = Counter(thoma_growth(4, params, 21, i).final() for i in range(10000))
        assert chi_square_p(counts, thoma_induced(4, params).probs) > P_MIN


class TestHookWalk:
    def test_single_row(self):
        assert hook_walk_syt([4], 1).tableau() == [[1, 2, 3, 4]]

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            hook_walk_syt([], 1)

    @pytest.mark.parametrize("shape", [(2, 2), (3, 2), (3, 1, 1)])
    def test_uniform(self, shape):
        tableaux = enumerate_syt(shape)
        counts = Counter(tuple(map(tuple, hook_walk_syt(shape, 17, i).tableau())) for i in range(6000))
        assert chi_square_p(counts, {t: Fraction(1, len(tableaux)) for t in tableaux}) > P_MIN


class TestDownward:
    def test_identity(self):
        assert downward_chain([3, 2], 5, 1) == Partition([3, 2])

    def test_range(self):
        with pytest.raises(ValueError):
            downward_chain([2, 1], 4, 1)

    def test_21_to_2(self):
        assert downward_law([2, 1], 2) == {Partition([2]): Fraction(1, 2), Partition([1, 1]): Fraction(1, 2)}

    @pytest.mark.parametrize("lam", [lam for n in range(1, 9) for lam in enumerate_partitions(n)])
    def test_single_step(self, lam):
        law = downward_law(lam, lam.size() - 1)
        weights = {lam.remove_box(r + 1): w for r, w in cotransition_weights(lam)}
        assert law == weights

    @pytest.mark.parametrize("lam", [lam for n in range(2, 7) for lam in enumerate_partitions(n)])
    def test_composed_branching(self, lam):
        n = lam.size()
        for m in range(n + 1):
            law = downward_law(lam, m)
            for mu, p in law.items():
                oracle = Fraction(count_skew_syt(tuple(lam), tuple(mu)) * count_syt(tuple(mu)), count_syt(tuple(lam)))
                assert p == oracle == branching_probability(lam, mu)
            assert sum(law.values()) == 1

    def test_empirical(self):
        lam = Partition([3, 2, 1])
        counts = Counter(downward_chain(lam, 3, 2, i) for i in range(6000))
        assert chi_square_p(counts, downward_law(lam, 3)) > P_MIN


class TestHeight:
    def test_example(self):
        lam = Partition([5, 3, 2, 2, 1])
        assert diagonal_count(lam, 0) == 2
        assert sum(diagonal_count(lam, x) for x in range(-13, 14)) == 13

    def test_zero_time(self):
        path = plancherel_growth(10, 1)
        assert all(height_function(path, x, 0) == 0 for x in range(-10, 11))

    def test_range(self):
        with pytest.raises(ValueError):
            height_function(plancherel_growth(3, 1), 0, 4)

    def test_height_field_rows(self):
        path = plancherel_growth(6, 2)
        rows = height_field(path)
        assert len(rows) == 7 * 13
        assert all(h == height_function(path, x, t) for x, t, h in rows)

    def test_area_identity(self):
        # 10^3 paths, every t <= 200
        for i in range(1000):
            path = rsk_growth(200, 31, i) if i % 2 else plancherel_growth(200, 31, i)
            H = height_array(path)
            assert np.array_equal(H.sum(axis=1), np.arange(201))
            if i < 3:
                for t in (0, 17, 200):
                    assert all(H[t, x + 200] == diagonal_count(path.shapes[t], x) for x in range(-200, 201))
