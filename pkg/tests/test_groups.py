from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import brute
from conftest import group_specs
from shiftinv import (
    CircleRational,
    GroupSpec,
    SpecMismatchError,
    Subgroup,
    ValidationError,
    add,
    character_kernel,
    circle_add,
    coset_partition,
    generated_subgroup,
    pairing_phase,
    subgroup_intersection,
)
from shiftinv.groups import annihilator_indices, common_kernel_indices


def el(spec, *r):
    return spec.element(r)


def elems(sub):
    return [tuple(e.residues) for e in sub]


Z4 = GroupSpec((4,))
Z6 = GroupSpec((6,))
Z2xZ3 = GroupSpec((2, 3))
Z2xZ2 = GroupSpec((2, 2))


class TestGroupSpec:
    def test_order_and_canonical_order(self):
        g = GroupSpec((2, 3))
        assert g.order == 6
        assert [e.residues for e in g.elements()] == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
        assert [g.element_at(i).residues for i in range(6)] == [e.residues for e in g.elements()]

    @pytest.mark.parametrize("orders", [(), (0,), (-3,), (2, 0)])
    def test_rejects_bad_orders(self, orders):
        with pytest.raises(ValidationError):
            GroupSpec(orders)

    def test_order_cap(self):
        GroupSpec((100, 100))
        with pytest.raises(ValidationError):
            GroupSpec((101, 100))
        assert GroupSpec((101, 100), max_order=20_000).order == 10_100

    def test_trivial_group(self):
        g = GroupSpec((1,))
        assert g.order == 1
        z = g.zero()
        assert z + z == z
        assert character_kernel(g.trivial_character()) == Subgroup.whole(g)
        assert coset_partition(Subgroup.trivial(g)) == [(z,)]

    def test_element_must_be_canonical(self):
        from shiftinv import GroupElement

        with pytest.raises(ValidationError):
            GroupElement(Z4, (4,))
        assert Z4.element([7]).residues == (3,)


class TestAdd:
    def test_examples(self):
        assert add(el(Z4, 3), el(Z4, 2)) == el(Z4, 1)
        assert add(el(Z2xZ3, 1, 2), el(Z2xZ3, 1, 2)) == el(Z2xZ3, 0, 1)
        for g in Z2xZ3.elements():
            assert g + Z2xZ3.zero() == g

    def test_spec_mismatch(self):
        with pytest.raises(SpecMismatchError):
            add(el(Z4, 1), el(Z6, 1))

    @given(group_specs(), st.data())
    def test_group_axioms(self, spec, data):
        pick = st.integers(0, spec.order - 1)
        a, b, c = (spec.element_at(data.draw(pick)) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a + (-a) == spec.zero()
        assert (a + b).index == spec.add_index(a.index, b.index)


class TestPairing:
    def test_examples(self):
        assert pairing_phase(el(Z4, 1), Z4.character([1])) == Fraction(1, 4)
        for x in Z2xZ3.elements():
            assert pairing_phase(x, Z2xZ3.trivial_character()) == 0
        assert pairing_phase(el(Z2xZ3, 1, 2), Z2xZ3.character([1, 1])) == Fraction(1, 6)

    def test_phase_is_reduced_and_in_unit_interval(self):
        g = GroupSpec((4, 6))
        for x in g.elements():
            for c in g.characters():
                p = pairing_phase(x, c)
                assert 0 <= p < 1
                assert p == brute.phase(g, x.residues, c.indices)

    @given(group_specs(), st.data())
    def test_homomorphism(self, spec, data):
        pick = st.integers(0, spec.order - 1)
        x, y = spec.element_at(data.draw(pick)), spec.element_at(data.draw(pick))
        c = spec.character_at(data.draw(pick))
        assert pairing_phase(x + y, c) == (pairing_phase(x, c) + pairing_phase(y, c)) % 1

    @given(group_specs(max_order=40), st.data())
    def test_vectorized_phases_match_exact(self, spec, data):
        from shiftinv.groups import phase_numerators

        rows = spec.residue_array
        ph = phase_numerators(spec, rows, rows)
        i = data.draw(st.integers(0, spec.order - 1))
        j = data.draw(st.integers(0, spec.order - 1))
        exact = pairing_phase(spec.element_at(j), spec.character_at(i))
        assert Fraction(int(ph[i, j]), spec.exponent) == exact


class TestKernels:
    def test_examples(self):
        assert elems(character_kernel(Z4.character([0]))) == [(0,), (1,), (2,), (3,)]
        assert elems(character_kernel(Z4.character([2]))) == [(0,), (2,)]
        assert elems(character_kernel(Z6.character([1]))) == [(0,)]

    def test_kernel_matches_enumeration(self):
        g = GroupSpec((4, 6))
        for c in g.characters():
            expected = sorted(x for x in brute.residues(g) if brute.phase(g, x, c.indices) == 0)
            assert elems(character_kernel(c)) == expected

    @given(group_specs())
    @settings(max_examples=40)
    def test_every_kernel_is_a_subgroup(self, spec):
        for c in spec.characters():
            k = character_kernel(c)
            assert k.is_closed()
            assert spec.order % len(k) == 0

    @given(st.integers(1, 64))
    def test_kernel_size_times_character_order_cyclic(self, n):
        g = GroupSpec((n,))
        for c in g.characters():
            assert len(character_kernel(c)) * c.order() == n

    def test_common_kernel_and_annihilator_agree_with_brute(self):
        g = GroupSpec((2, 4))
        chars = [g.character([1, 2]).index, g.character([0, 2]).index]
        expected = sorted(
            g.index_of(x) for x in brute.residues(g) if all(brute.phase(g, x, g.residues_of(c)) == 0 for c in chars)
        )
        assert common_kernel_indices(g, chars) == expected
        els = [g.element([1, 2]).index]
        expected_chars = sorted(
            g.index_of(m) for m in brute.residues(g) if brute.phase(g, (1, 2), m) == 0
        )
        assert annihilator_indices(g, els) == expected_chars


class TestGeneratedSubgroup:
    def test_examples(self):
        assert elems(generated_subgroup([el(Z6, 2)])) == [(0,), (2,), (4,)]
        assert elems(generated_subgroup([Z6.zero()])) == [(0,)]
        assert generated_subgroup([el(Z2xZ2, 1, 0), el(Z2xZ2, 0, 1)]) == Subgroup.whole(Z2xZ2)

    def test_empty_rejected(self):
        with pytest.raises(ValidationError):
            generated_subgroup([])

    @given(group_specs(max_order=48), st.data())
    def test_matches_naive_closure_and_is_idempotent(self, spec, data):
        idx = data.draw(st.lists(st.integers(0, spec.order - 1), min_size=1, max_size=3))
        gens = [spec.element_at(i) for i in idx]
        h = generated_subgroup(gens)
        assert set(elems(h)) == brute.closure(spec, [g.residues for g in gens])
        assert h.is_closed()
        assert generated_subgroup(list(h.elements)) == h
        assert spec.order % len(h) == 0


class TestIntersectionAndCosets:
    def test_intersection_examples(self):
        s1 = generated_subgroup([el(Z6, 3)])
        s2 = generated_subgroup([el(Z6, 2)])
        a = Subgroup.from_elements(Z6, [el(Z6, 0), el(Z6, 2), el(Z6, 4)])
        b = Subgroup.from_elements(Z6, [el(Z6, 0), el(Z6, 3)])
        assert elems(subgroup_intersection(a, b)) == [(0,)]
        assert subgroup_intersection(s1, Subgroup.whole(Z6)) == s1
        assert subgroup_intersection(s2, s2) == s2

    def test_coset_examples(self):
        a = Subgroup.from_elements(Z4, [el(Z4, 0), el(Z4, 2)])
        assert [[x.residues for x in c] for c in coset_partition(a)] == [[(0,), (2,)], [(1,), (3,)]]
        assert coset_partition(Subgroup.whole(Z4)) == [tuple(Z4.elements())]
        assert coset_partition(Subgroup.trivial(Z6)) == [(x,) for x in Z6.elements()]

    @given(group_specs(max_order=48), st.data())
    def test_cosets_partition_the_group(self, spec, data):
        idx = data.draw(st.lists(st.integers(0, spec.order - 1), min_size=1, max_size=2))
        a = generated_subgroup([spec.element_at(i) for i in idx])
        cosets = coset_partition(a)
        assert len(cosets) == spec.order // len(a)
        flat = [x for c in cosets for x in c]
        assert sorted(flat) == spec.elements()
        assert all(len(c) == len(a) for c in cosets)
        reps = [c[0] for c in cosets]
        assert reps == sorted(reps)
        for c in cosets:
            assert c[0] == min(c)
            assert all((x - c[0]) in a for x in c)


class TestCircle:
    def test_examples(self):
        half, third = CircleRational(Fraction(1, 2)), CircleRational(Fraction(1, 3))
        assert circle_add(half, half) == CircleRational(0)
        assert circle_add(third, half) == CircleRational(Fraction(5, 6))
        assert circle_add(CircleRational(Fraction(3, 4)), half) == CircleRational(Fraction(1, 4))

    def test_normalization(self):
        p = CircleRational(Fraction(8, 6))
        assert (p.numerator, p.denominator) == (1, 3)
        assert str(CircleRational.parse("2/6")) == "1/3"
        with pytest.raises(ValidationError):
            CircleRational(0.5)

    @given(st.fractions(), st.fractions())
    def test_addition_is_mod_one(self, a, b):
        s = CircleRational(a) + CircleRational(b)
        assert 0 <= s.fraction < 1
        assert (s.fraction - (a + b)).denominator == 1
