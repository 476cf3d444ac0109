import math
import random
from fractions import Fraction as F

import pytest

from setavg.catalog import BUILTIN_SVFS
from setavg.intervals import contains_ae, from_pairs, measure, sym_diff_distance
from setavg.operators import (
    BERNSTEIN_SCHEME,
    PIECEWISE_LINEAR_SCHEME,
    REAL_SPACE,
    IntervalSetSpace,
    SampledSVF,
    bernstein_real,
    bernstein_svf,
    bernstein_weights,
    decasteljau_naive,
    decasteljau_svf,
    dominance_holds,
    measure_profile_secants,
    positive_operator,
    speed_profile,
)
from setavg.partition import CENTROID_OF_UNION, fixed_point, partition_average

from conftest import random_interval_set

GROW = BUILTIN_SVFS["grow"]
SPLIT = BUILTIN_SVFS["split"]


def step_svf(sets):
    """SVF jumping through the given sets at equispaced thresholds."""
    sets = list(sets)

    def evaluate(x):
        idx = min(int(x * len(sets)), len(sets) - 1)
        return sets[idx]

    return SampledSVF(evaluate)


class TestBernsteinWeights:
    def test_symmetric_midpoint(self):
        assert bernstein_weights(2, F(1, 2)) == (F(1, 4), F(1, 2), F(1, 4))

    def test_endpoint(self):
        assert bernstein_weights(3, F(0)) == (1, 0, 0, 0)

    def test_sum_to_one(self):
        for n in (1, 4, 9):
            for x in (F(1, 7), F(2, 3), F(1)):
                assert sum(bernstein_weights(n, x)) == 1

    def test_domain_check(self):
        with pytest.raises(ValueError):
            bernstein_weights(3, F(3, 2))


class TestBernsteinReal:
    def test_constant(self):
        assert bernstein_real(lambda t: F(7), 5, F(1, 3)) == 7

    def test_reproduces_linear(self):
        assert bernstein_real(lambda t: t, 4, F(1, 3)) == F(1, 3)

    def test_square(self):
        assert bernstein_real(lambda t: t * t, 2, F(1, 2)) == F(3, 8)


class TestSchemes:
    def test_pl_hat_weights(self):
        assert PIECEWISE_LINEAR_SCHEME.weights(2, F(1, 4)) == (F(1, 2), F(1, 2), 0)

    def test_pl_node_interpolation(self):
        assert PIECEWISE_LINEAR_SCHEME.weights(4, F(1, 2)) == (0, 0, 1, 0, 0)
        assert PIECEWISE_LINEAR_SCHEME.weights(2, F(1)) == (0, 0, 1)

    def test_nodes(self):
        assert BERNSTEIN_SCHEME.nodes(2) == [0, F(1, 2), 1]
        assert PIECEWISE_LINEAR_SCHEME.nodes(3) == [0, F(1, 3), F(2, 3), 1]


class TestBernsteinSVF:
    def test_two_sample_example(self):
        F1 = step_svf([from_pairs([(0, 1)]), from_pairs([(0, 2)])])
        assert bernstein_svf(F1, 1, F(1, 2)) == from_pairs([(0, F(3, 2))])

    def test_endpoint_interpolation(self):
        for name in ("grow", "slide", "split", "holder"):
            G = BUILTIN_SVFS[name]
            assert bernstein_svf(G, 4, F(0)) == G(F(0))
            assert bernstein_svf(G, 4, F(1)) == G(F(1))

    def test_constant_svf(self):
        a = from_pairs([(0, 1), (3, 5)])
        const = SampledSVF(lambda x: a)
        for n, x in ((1, F(1, 3)), (5, F(2, 7))):
            assert bernstein_svf(const, n, x) == a

    def test_measure_transfer(self, rng):
        for _ in range(10):
            sets = [random_interval_set(rng) for _ in range(4)]
            G = step_svf(sets)
            n = rng.randint(1, 6)
            x = F(rng.randint(0, 12), 12)
            approx = bernstein_svf(G, n, x)
            mu_of_samples = lambda t: measure(G(t))
            assert measure(approx) == bernstein_real(mu_of_samples, n, x)


class TestDeCasteljau:
    def test_degree_one_equals_bernstein(self, rng):
        for _ in range(5):
            G = step_svf([random_interval_set(rng), random_interval_set(rng)])
            x = F(rng.randint(0, 8), 8)
            assert decasteljau_svf(G, 1, x) == bernstein_svf(G, 1, x)

    def test_endpoints(self):
        assert decasteljau_svf(GROW, 3, F(0)) == GROW(F(0))
        assert decasteljau_svf(GROW, 3, F(1)) == GROW(F(1))

    def test_distance_identity_hand_example(self):
        G = step_svf([from_pairs([(0, 1)]), from_pairs([(0, 2)]), from_pairs([(0, 4)])])
        result = decasteljau_svf(G, 2, F(1, 2))
        assert sym_diff_distance(result, G(F(0))) == F(5, 4)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_distance_identity_random(self, n, rng):
        for _ in range(3):
            sets = [random_interval_set(rng) for _ in range(n + 1)]
            G = step_svf(sets)
            x = F(rng.randint(0, 6), 6)
            result = decasteljau_svf(G, n, x)
            w = bernstein_weights(n, x)
            for i in range(n + 1):
                expect = sum(
                    (w[j] * sym_diff_distance(G(F(i, n)), G(F(j, n))) for j in range(n + 1)),
                    F(0),
                )
                assert sym_diff_distance(result, G(F(i, n))) == expect

    def test_naive_variant_differs(self):
        # the plain binary recursion is a genuinely different operator
        G = step_svf([from_pairs([(0, 6)]), from_pairs([(7, 8)]), from_pairs([(4, 7)])])
        x = F(1, 2)
        assert decasteljau_naive(G, 2, x) != decasteljau_svf(G, 2, x)


class TestPositiveOperator:
    def test_bernstein_scheme_matches_bernstein_svf(self):
        space = IntervalSetSpace(CENTROID_OF_UNION)
        for x in (F(1, 4), F(2, 3)):
            assert positive_operator(GROW, BERNSTEIN_SCHEME, 3, x, space) == \
                bernstein_svf(GROW, 3, x)

    def test_real_instance_matches_bernstein_real(self):
        f = lambda t: t * t + 1
        for n, x in ((2, F(1, 2)), (5, F(1, 3))):
            got = positive_operator(f, BERNSTEIN_SCHEME, n, x, REAL_SPACE)
            assert got == bernstein_real(f, n, x)

    def test_pl_interpolates_between_nodes(self):
        space = IntervalSetSpace(CENTROID_OF_UNION)
        got = positive_operator(GROW, PIECEWISE_LINEAR_SCHEME, 2, F(1, 4), space)
        expect = partition_average(
            [GROW(F(0)), GROW(F(1, 2)), GROW(F(1))], [F(1, 2), F(1, 2), F(0)]
        )
        assert got == expect

    def test_sample_distance_identity(self, rng):
        # distance from any node sample to the operator value is the
        # weighted average of sample distances, zero-weighted nodes included
        space = IntervalSetSpace(CENTROID_OF_UNION)
        for scheme in (BERNSTEIN_SCHEME, PIECEWISE_LINEAR_SCHEME):
            sets = [random_interval_set(rng) for _ in range(4)]
            G = step_svf(sets)
            n, x = 3, F(2, 5)
            value = positive_operator(G, scheme, n, x, space)
            w = scheme.weights(n, x)
            nodes = scheme.nodes(n)
            for j, node in enumerate(nodes):
                expect = sum(
                    (w[i] * sym_diff_distance(G(node), G(nodes[i])) for i in range(n + 1)),
                    F(0),
                )
                assert sym_diff_distance(G(node), value) == expect


class TestDominance:
    def test_examples(self):
        assert dominance_holds([F(1, 2), F(1, 2), F(0)], [F(1, 4), F(1, 2), F(1, 4)])
        w = bernstein_weights(3, F(2, 5))
        assert dominance_holds(w, w)
        assert dominance_holds(bernstein_weights(2, F(3, 10)), bernstein_weights(2, F(3, 5)))

    def test_violation(self):
        assert not dominance_holds([F(0), F(1)], [F(1), F(0)])

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            dominance_holds([F(1)], [F(1, 2), F(1, 2)])

    def test_bernstein_cumulative_monotone(self):
        xs = [F(i, 8) for i in range(9)]
        for n in (2, 5, 8):
            for a, b in zip(xs, xs[1:]):
                assert dominance_holds(bernstein_weights(n, a), bernstein_weights(n, b))

    def test_necessity_witness(self):
        # a non-dominant pair admits a nested step sequence breaking containment
        alpha, beta = [F(0), F(0), F(1)], [F(0), F(1), F(0)]
        assert not dominance_holds(alpha, beta)
        sets = [from_pairs([(0, 1)]), from_pairs([(0, 1)]), from_pairs([(0, 2)])]
        avg_a = partition_average(sets, alpha)
        avg_b = partition_average(sets, beta)
        assert not contains_ae(avg_b, avg_a)


class TestSpeedProfile:
    def test_linear_growth_unit_speed(self):
        grid = [F(0), F(1, 4), F(1, 2), F(3, 4), F(1)]
        assert speed_profile(GROW, BERNSTEIN_SCHEME, 3, grid) == [1, 1, 1, 1]

    def test_constant_zero_speed(self):
        const = SampledSVF(lambda x: from_pairs([(0, 2)]))
        grid = [F(0), F(1, 2), F(1)]
        assert speed_profile(const, BERNSTEIN_SCHEME, 2, grid) == [0, 0]

    def test_quadratic_growth_matches_secants(self):
        quad = SampledSVF(lambda x: from_pairs([(0, 1 + x * x)]))
        grid = [F(i, 6) for i in range(7)]
        speeds = speed_profile(quad, BERNSTEIN_SCHEME, 2, grid)
        assert speeds == measure_profile_secants(quad, BERNSTEIN_SCHEME, 2, grid)

    def test_non_monotone_rejected(self):
        bump = step_svf([from_pairs([(0, 1)]), from_pairs([(0, 3)]), from_pairs([(0, 2)])])
        with pytest.raises(ValueError):
            speed_profile(bump, BERNSTEIN_SCHEME, 2, [F(0), F(1, 2), F(1)])


class TestHolderInvariants:
    def test_builtin_holder_spot_check(self, rng):
        # declared class: d(F(x), F(y)) <= L |x-y|^nu, checked in floats
        for name, G in BUILTIN_SVFS.items():
            L, nu = float(G.holder_constant), float(G.holder_exponent)
            for _ in range(20):
                x = F(rng.randint(0, 24), 24)
                y = F(rng.randint(0, 24), 24)
                d = float(sym_diff_distance(G(x), G(y)))
                assert d <= L * abs(float(x - y)) ** nu + 1e-9

    def test_closest_point_bound(self, rng):
        # triangle-inequality bound through the nearest sample node
        G = BUILTIN_SVFS["slide"]
        for n in (2, 5):
            for _ in range(5):
                x = F(rng.randint(0, 16), 16)
                xp = min((F(i, n) for i in range(n + 1)), key=lambda t: abs(t - x))
                w = bernstein_weights(n, x)
                rhs = 2 * sym_diff_distance(G(xp), G(x)) + sum(
                    (w[i] * sym_diff_distance(G(x), G(F(i, n))) for i in range(n + 1)),
                    F(0),
                )
                assert sym_diff_distance(G(x), bernstein_svf(G, n, x)) <= rhs
