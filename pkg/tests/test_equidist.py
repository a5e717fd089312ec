import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from salemkit.cantor import build_stage, ternary_plan
from salemkit.core_sets import fractional_density, weyl_sum
from salemkit.equidist import (
    NApproximation,
    characterize_salem,
    equidist_order,
    integers_from_approximations,
    n_approximation,
    weyl_moduli,
)

LOG23 = math.log(2) / math.log(3)


def interval_strategy():
    lo = st.fractions(min_value=0, max_value=1, max_denominator=32)
    return st.tuples(lo, lo).map(sorted).filter(lambda p: p[0] < p[1])


class TestNApproximation:
    def test_single_point(self):
        assert n_approximation([Fraction(1, 3)], 3).cells == (1,)

    def test_full_interval(self):
        for N in (3, 7, 16):
            assert n_approximation([(Fraction(0), Fraction(1))], N).cells == tuple(range(N))

    def test_ternary_stage_with_default_eta(self):
        stage = build_stage(ternary_plan(2), 1)
        assert stage.intervals() == [
            (Fraction(0), Fraction(1, 4)),
            (Fraction(2, 3), Fraction(11, 12)),
        ]
        assert n_approximation(stage, 3).cells == (0, 2)

    def test_empty_target(self):
        assert n_approximation([], 8).cells == ()

    def test_point_at_one_meets_no_cell(self):
        assert n_approximation([Fraction(1)], 4).cells == ()

    @given(st.lists(interval_strategy(), min_size=1, max_size=4), st.integers(1, 24))
    @settings(max_examples=80, deadline=None)
    def test_monotone_in_target(self, intervals, N):
        sub = n_approximation(intervals[:1], N)
        full = n_approximation(intervals, N)
        assert set(sub.cells) <= set(full.cells)

    @given(st.lists(interval_strategy(), min_size=1, max_size=3), st.integers(1, 8), st.integers(2, 4))
    @settings(max_examples=80, deadline=None)
    def test_refinement_consistency(self, intervals, coarse, factor):
        # every fine cell floors into a coarse cell of the approximation
        fine = coarse * factor
        coarse_cells = set(n_approximation(intervals, coarse).cells)
        for j in n_approximation(intervals, fine).cells:
            assert j * coarse // fine in coarse_cells


class TestEquidistOrder:
    def test_full_grid_hits_cap(self):
        approx = NApproximation(64, tuple(range(64)))
        assert equidist_order([approx]).alpha == 1.0

    def test_single_cell_gives_zero(self):
        approx = NApproximation(64, (0,))
        assert equidist_order([approx]).alpha == 0.0

    def test_random_cells_square_root_cancellation(self):
        # d = ceil(sqrt(N)) uniform cells: alpha within 0.5 +- 0.15 in at
        # least 80% of seeds
        N = 4096
        d = 64
        hits = 0
        for seed in range(100):
            rng = np.random.default_rng(seed)
            cells = tuple(sorted(rng.choice(N, size=d, replace=False)))
            est = equidist_order([NApproximation(N, cells)])
            hits += abs(est.alpha - 0.5) <= 0.15
        assert hits >= 80

    def test_small_N_rejected(self):
        with pytest.raises(ValueError):
            equidist_order([NApproximation(8, (0, 1))])

    def test_too_few_usable_samples_rejected(self):
        approx = NApproximation(64, (0, 5, 9))
        with pytest.raises(ValueError):
            equidist_order([approx], m_grid=[2, 3, 4])

    def test_moduli_match_weyl_sum(self):
        approx = NApproximation(32, (0, 3, 7, 9, 21))
        ms = [2, 3, 5, 17, 31]
        mods = weyl_moduli(approx.cells, approx.N, ms)
        for m, mod in zip(ms, mods):
            assert mod == pytest.approx(abs(weyl_sum(approx.fractions(), m)), abs=1e-12)

    def test_duplicate_phase_point_never_raises_alpha(self):
        base = NApproximation(64, (0, 5, 17, 33, 50))
        # doubling N and cells keeps every phase class; alpha cannot rise
        doubled = NApproximation(128, tuple(2 * c for c in base.cells))
        ms = [2, 3, 5, 9, 17, 33, 63]
        a1 = equidist_order([base], m_grid=ms).alpha
        a2 = equidist_order([doubled], m_grid=ms).alpha
        assert a2 <= a1 + 1e-12


class TestCharacterizeSalem:
    def test_full_interval_is_salem(self):
        approxs = [n_approximation([(Fraction(0), Fraction(1))], N) for N in (16, 64, 256)]
        report = characterize_salem(approxs, 1.0)
        assert report.verdict == "salem"
        assert report.beta_hat == pytest.approx(1.0, abs=1e-9)

    def test_ternary_control_not_salem(self):
        plan = ternary_plan(4, unit_eta=True)
        approxs = [n_approximation(build_stage(plan, k), 3**k) for k in (1, 2, 3, 4)]
        report = characterize_salem(approxs, LOG23)
        assert report.verdict in ("salem-type", "neither")
        density = report.beta_hat
        assert density == pytest.approx(LOG23, abs=0.01)
        assert report.order_estimate.alpha < density - report.tolerance

    def test_non_increasing_sizes_rejected(self):
        a = NApproximation(16, (0,))
        with pytest.raises(ValueError):
            characterize_salem([a, a, a], 0.5)

    def test_stage_constants_reported(self):
        approxs = [n_approximation([(Fraction(0), Fraction(1))], N) for N in (16, 64, 256)]
        report = characterize_salem(approxs, 1.0)
        for s in report.density_exponents:
            assert s.c_value == pytest.approx(1.0)
        assert report.c_in_bounds


class TestIntegersFromApproximations:
    def test_single_stage(self):
        B = integers_from_approximations([NApproximation(10, (0, 3, 7))])
        assert B.elements == (0, 3, 7)

    def test_two_stage_subtraction(self):
        # stage-2 fractions 0/8 and 4/8 already occur at stage 1 as 0/4, 2/4
        stages = [NApproximation(4, (0, 2)), NApproximation(8, (0, 2, 4))]
        B = integers_from_approximations(stages)
        assert B.elements == (0, 2, 6)

    def test_blocks_within_windows(self):
        rng = np.random.default_rng(3)
        Ns = [16, 64, 256]
        approxs = [
            NApproximation(N, tuple(sorted(rng.choice(N, size=max(2, N // 8), replace=False))))
            for N in Ns
        ]
        B = integers_from_approximations(approxs)
        assert B.elements == tuple(sorted(set(B.elements)))
        windows = [(0, Ns[0]), (Ns[0], Ns[0] + Ns[1]), (Ns[1], Ns[1] + Ns[2])]
        for e in B.elements:
            assert any(lo <= e < hi for lo, hi in windows)

    def test_round_trip_first_stage(self):
        rng = np.random.default_rng(9)
        for _ in range(50):
            N = int(rng.integers(8, 64))
            size = int(rng.integers(1, N))
            cells = tuple(sorted(rng.choice(N, size=size, replace=False)))
            B = integers_from_approximations([NApproximation(N, cells)])
            back = n_approximation([Fraction(b, N) for b in B.elements], N)
            assert back.cells == cells

    def test_density_tracks_construction(self):
        # four stages of one beta = 0.5 refinement; counting at the block
        # ends (where each stage's contribution is complete), the extracted
        # set's fitted density lands near 0.5
        rng = np.random.default_rng(12)
        beta = 0.5
        size = 64
        Ms = [size, size**2, size**3, size**4]
        approxs = []
        cells = np.arange(size, dtype=np.int64)[rng.random(size) < size**-beta]
        approxs.append(NApproximation(size, tuple(int(c) for c in cells)))
        for M in Ms[1:]:
            children = (cells[:, None] * size + np.arange(size, dtype=np.int64)).ravel()
            cells = children[rng.random(children.size) < size**-beta]
            approxs.append(NApproximation(M, tuple(int(c) for c in cells)))
        B = integers_from_approximations(approxs)
        grid = [Ms[0]] + [Ms[i - 1] + Ms[i] for i in range(1, 4)]
        est = fractional_density(B, grid)
        assert est.exponent == pytest.approx(beta, abs=0.1)
