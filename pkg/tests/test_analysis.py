from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import brute
from conftest import laws, spec_and_law, spec_and_two_laws
from shiftinv import (
    CircleRational,
    Distribution,
    GroupSpec,
    PreconditionFailed,
    Subgroup,
    TheoremViolation,
    ValidationError,
    annihilator,
    char_table,
    circle_classify,
    convolve,
    dirac,
    embed_circle_support,
    fixed_point_space,
    generated_subgroup,
    haar_forced,
    independence_check,
    invariance_subgroup,
    is_fixed_point,
    lambda_set,
    power_invariance,
    stabilizer,
    uniform,
    verify_converse,
    verify_forward,
)
from shiftinv import analysis
from shiftinv.analysis import FINITE_CYCLIC, HAAR_FORCED
from shiftinv.generators import random_pair

Z2 = GroupSpec((2,))
Z3 = GroupSpec((3,))
Z4 = GroupSpec((4,))
Z5 = GroupSpec((5,))
Z6 = GroupSpec((6,))


def vec(spec, *values):
    return Distribution.from_vector(spec, [F(v) for v in values])


def on(spec, *points):
    return Distribution.uniform_on(spec, [spec.element([p]) for p in points])


def cyc(sub):
    return [e.residues[0] for e in sub]


HALF_EVEN = vec(Z4, F(1, 2), 0, F(1, 2), 0)


class TestLambda:
    def test_examples(self):
        assert len(lambda_set(dirac(Z4, Z4.zero()))) == 4
        assert [c.indices for c in lambda_set(on(Z4, 0, 2))] == [(0,), (2,)]
        assert [c.indices for c in lambda_set(dirac(Z6, Z6.element([2])))] == [(0,), (3,)]

    @given(spec_and_law())
    @settings(max_examples=60)
    def test_closed_contains_trivial_and_matches_numeric_route(self, case):
        spec, mu = case
        lam = lambda_set(mu)
        assert spec.trivial_character() in lam
        assert lam.is_closed()
        t = char_table(mu).values
        numeric = {i for i in range(spec.order) if abs(t[i] - 1) <= 1e-9}
        assert lam.index_set == numeric


class TestInvarianceSubgroup:
    def test_examples(self):
        assert cyc(invariance_subgroup(dirac(Z4, Z4.zero()))) == [0]
        assert cyc(invariance_subgroup(dirac(Z4, Z4.element([2])))) == [0, 2]
        assert invariance_subgroup(vec(Z5, F(1, 5), F(1, 5), F(1, 5), F(1, 5), F(1, 5))).is_whole()

    @given(spec_and_law())
    @settings(max_examples=80)
    def test_equals_generated_subgroup_and_lambda_is_annihilator(self, case):
        spec, mu = case
        a = invariance_subgroup(mu)
        assert a == generated_subgroup(mu.support())
        assert set(e.residues for e in a) == brute.closure(spec, [x.residues for x in mu.support()])
        assert a.is_closed()
        assert lambda_set(mu) == annihilator(a)


class TestStabilizer:
    def test_examples(self):
        for n in (1, 4, 7):
            g = GroupSpec((n,))
            assert stabilizer(uniform(g)).is_whole()
        assert cyc(stabilizer(dirac(Z6, Z6.element([4])))) == [0]
        assert cyc(stabilizer(HALF_EVEN)) == [0, 2]

    @given(spec_and_law(max_order=36))
    def test_matches_brute_force(self, case):
        spec, mu = case
        s = stabilizer(mu)
        assert set(e.residues for e in s) == brute.stabilizer(spec, brute.table(mu))
        assert s.is_closed()


class TestFixedPoint:
    def test_examples(self):
        assert is_fixed_point(uniform(Z6), vec(Z6, F(1, 2), F(1, 3), 0, 0, F(1, 6), 0))
        assert not is_fixed_point(dirac(Z2, Z2.zero()), dirac(Z2, Z2.element([1])))
        assert is_fixed_point(HALF_EVEN, dirac(Z4, Z4.element([2])))

    @given(spec_and_two_laws(max_order=36))
    def test_equivalence_with_stabilizer(self, case):
        _, mu_x, mu_y = case
        inside = all(y in stabilizer(mu_x) for y in mu_y.support())
        assert is_fixed_point(mu_x, mu_y) == inside

    @given(st.sampled_from([GroupSpec(o) for o in [(4,), (2, 2), (6,), (2, 6), (3, 3), (8,)]]),
           st.integers(0, 2**32))
    def test_equivalence_on_biased_pairs(self, spec, seed):
        mu_x, mu_y = random_pair(np.random.default_rng(seed), spec)
        inside = all(y in stabilizer(mu_x) for y in mu_y.support())
        assert is_fixed_point(mu_x, mu_y) == inside


class TestForwardConverse:
    def test_forward_examples(self):
        res = verify_forward(HALF_EVEN, on(Z4, 0, 2))
        assert cyc(res.a_subgroup) == [0, 2] and cyc(res.stabilizer) == [0, 2]
        assert res.fixed_point_dimension == 2 and not res.haar_forced

        mu_y = vec(Z6, 0, 0, F(1, 3), F(2, 3), 0, 0)
        res = verify_forward(uniform(Z6), mu_y)
        assert res.a_subgroup == generated_subgroup(mu_y.support())
        assert res.stabilizer.is_whole()

        mu_x = vec(Z6, F(1, 7), F(2, 7), 0, F(4, 7), 0, 0)
        res = verify_forward(mu_x, dirac(Z6, Z6.zero()))
        assert cyc(res.a_subgroup) == [0]

    def test_forward_precondition(self):
        with pytest.raises(PreconditionFailed):
            verify_forward(dirac(Z2, Z2.zero()), dirac(Z2, Z2.element([1])))

    def test_converse_examples(self):
        for w in ([1, 0], [F(1, 3), F(2, 3)], [0, 1]):
            mu_y = vec(Z4, w[0], 0, w[1], 0)
            assert verify_converse(HALF_EVEN, mu_y)
        assert verify_converse(uniform(Z5), vec(Z5, 0, F(1, 2), 0, 0, F(1, 2)))
        assert verify_converse(vec(Z5, F(1, 2), F(1, 2), 0, 0, 0), dirac(Z5, Z5.zero()))

    def test_converse_precondition(self):
        with pytest.raises(PreconditionFailed):
            verify_converse(HALF_EVEN, dirac(Z4, Z4.element([1])))

    def test_theorem_violation_is_raised_on_a_broken_stabilizer(self, monkeypatch):
        # a wrong stabilizer must trip the bug sentinel rather than pass silently
        monkeypatch.setattr(analysis, "stabilizer", lambda mu: Subgroup.trivial(mu.spec))
        with pytest.raises(TheoremViolation):
            analysis.verify_forward(HALF_EVEN, dirac(Z4, Z4.element([2])))

    @given(spec_and_two_laws(max_order=36))
    @settings(max_examples=60)
    def test_forward_invariants(self, case):
        _, mu_x, mu_y = case
        if not is_fixed_point(mu_x, mu_y):
            return
        res = verify_forward(mu_x, mu_y)
        assert res.a_subgroup.issubset(res.stabilizer)
        assert res.haar_forced == res.a_subgroup.is_whole()
        assert res.fixed_point_dimension * len(res.a_subgroup) == mu_x.spec.order


class TestFixedPointSpace:
    def test_z4_support_two(self):
        space = fixed_point_space(dirac(Z4, Z4.element([2])))
        assert space.dimension == 2
        assert [[x.residues[0] for x in c] for c in space.cosets] == [[0, 2], [1, 3]]
        assert space.lift([F(1, 3), F(2, 3)]) == vec(Z4, F(1, 6), F(1, 3), F(1, 6), F(1, 3))
        assert space.contains(vec(Z4, F(1, 8), F(3, 8), F(1, 8), F(3, 8)))
        assert not space.contains(vec(Z4, F(1, 4), F(1, 2), 0, F(1, 4)))

    def test_full_support_gives_uniform(self):
        space = fixed_point_space(vec(Z5, F(1, 15), F(2, 15), F(3, 15), F(4, 15), F(5, 15)))
        assert space.dimension == 1
        assert space.lift([1]) == uniform(Z5)

    def test_dirac_zero_everything_fixed(self):
        g = GroupSpec((2, 3))
        space = fixed_point_space(dirac(g, g.zero()))
        assert space.dimension == g.order
        mu = Distribution.from_vector(g, [F(k, 21) for k in range(1, 7)])
        assert space.contains(mu) and is_fixed_point(mu, dirac(g, g.zero()))

    def test_lift_validation(self):
        space = fixed_point_space(dirac(Z4, Z4.element([2])))
        with pytest.raises(ValidationError):
            space.lift([1])
        with pytest.raises(ValidationError):
            space.lift([F(1, 2), F(1, 3)])

    @given(spec_and_law(max_order=24), st.data())
    @settings(max_examples=50)
    def test_lifts_are_fixed_points_and_fixed_points_are_lifts(self, case, data):
        spec, mu_y = case
        space = fixed_point_space(mu_y)
        w = data.draw(st.lists(st.integers(0, 4), min_size=space.dimension, max_size=space.dimension))
        if not any(w):
            w[0] = 1
        nu = space.lift([F(x, sum(w)) for x in w])
        assert is_fixed_point(nu, mu_y)
        other = data.draw(laws(spec))
        assert is_fixed_point(other, mu_y) == space.contains(other)
        assert space.dimension == brute.fixed_point_free_dimension(spec, brute.table(mu_y))


class TestHaarForced:
    def test_examples(self):
        assert haar_forced(uniform(Z6))
        assert not haar_forced(dirac(Z6, Z6.element([2])))
        assert cyc(invariance_subgroup(dirac(Z6, Z6.element([2])))) == [0, 2, 4]
        assert haar_forced(on(Z6, 2, 3))

    @given(spec_and_law(max_order=36))
    def test_unique_fixed_point_is_uniform(self, case):
        spec, mu_y = case
        if haar_forced(mu_y):
            assert fixed_point_space(mu_y).basis() == [uniform(spec)]


class TestIndependence:
    def test_examples(self):
        for mu_y in (vec(Z3, 1, 0, 0), vec(Z3, F(1, 6), F(1, 3), F(1, 2))):
            assert independence_check(uniform(Z3), mu_y)
        assert independence_check(vec(Z4, F(1, 10), F(2, 5), F(1, 10), F(2, 5)), dirac(Z4, Z4.zero()))
        assert independence_check(HALF_EVEN, on(Z4, 0, 2))

    def test_precondition(self):
        with pytest.raises(PreconditionFailed):
            independence_check(dirac(Z2, Z2.zero()), dirac(Z2, Z2.element([1])))

    def test_non_fixed_point_pairs_are_dependent(self):
        # X + Y and Y genuinely fail to factor without the hypothesis
        mu_x, mu_y = dirac(Z2, Z2.zero()), on(Z2, 0, 1)
        s = brute.convolve(Z2, brute.table(mu_x), brute.table(mu_y))
        joint = {(b, e): mu_x[((b - e) % 2,)] * mu_y[(e,)] for b in range(2) for e in range(2)}
        assert any(joint[(b, e)] != s[(b,)] * mu_y[(e,)] for b in range(2) for e in range(2))


class TestPowerInvariance:
    def test_examples(self):
        assert power_invariance(HALF_EVEN, on(Z4, 0, 2), 0)
        assert power_invariance(HALF_EVEN, on(Z4, 0, 2), 1)
        assert power_invariance(HALF_EVEN, dirac(Z4, Z4.element([2])), 2)
        assert convolve(dirac(Z4, Z4.element([2])), dirac(Z4, Z4.element([2]))) == dirac(Z4, Z4.zero())

    def test_errors(self):
        with pytest.raises(ValidationError):
            power_invariance(HALF_EVEN, on(Z4, 0, 2), -1)
        with pytest.raises(PreconditionFailed):
            power_invariance(HALF_EVEN, dirac(Z4, Z4.element([1])), 2)


def cr(s):
    return CircleRational.parse(s)


class TestCircle:
    def test_examples(self):
        c = circle_classify([cr("1/2")])
        assert (c.kind, c.N) == (FINITE_CYCLIC, 2)
        assert [str(p) for p in c.subgroup_points] == ["0/1", "1/2"]
        assert circle_classify([CircleRational(F(2, 6))]).N == 3
        c = circle_classify([cr("1/4"), cr("1/6")])
        assert c.N == 12
        embedded = embed_circle_support([cr("1/4"), cr("1/6")], 12)
        assert [e.residues[0] for e in embedded.support()] == [2, 3]
        assert invariance_subgroup(embedded).is_whole()
        assert circle_classify([], has_nonrational_mass=True).kind == HAAR_FORCED
        assert circle_classify([cr("1/3")], has_nonrational_mass=True).kind == HAAR_FORCED

    def test_zero_support_is_trivial_subgroup(self):
        c = circle_classify([cr("0")])
        assert c.N == 1 and [str(p) for p in c.subgroup_points] == ["0/1"]

    def test_empty_support_rejected(self):
        with pytest.raises(ValidationError):
            circle_classify([])

    @given(st.lists(st.fractions(min_value=0, max_value=1, max_denominator=30), min_size=1, max_size=4))
    @settings(max_examples=60)
    def test_minimal_period(self, points):
        support = [CircleRational(p) for p in points]
        c = circle_classify(support)
        ns = [n for n in range(1, c.N + 1) if all((p.fraction * n).denominator == 1 for p in support)]
        assert ns[0] == c.N
        assert sorted(c.subgroup_points) == list(c.subgroup_points)
        assert set(p.fraction for p in support) <= set(q.fraction for q in c.subgroup_points)
