import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import totient

from cmtwist.residues import (
    Subgroup,
    all_subgroups,
    coset_inv,
    coset_mul,
    coset_of,
    coset_order,
    element_order,
    group_order,
    invariant_factor_basis,
    invariant_factors,
    is_quotient_basis,
    quotient_cosets,
    subgroup,
    subgroup_generated,
    trivial_subgroup,
    unit_group,
)
from helpers import (
    abstract_order_histogram,
    quotient_order_histogram,
    subgroups_two_generated,
)


class TestUnitGroup:
    def test_prime_modulus(self):
        assert unit_group(7) == (1, 2, 3, 4, 5, 6)

    def test_size_matches_totient(self):
        for m in range(1, 120):
            expected = 1 if m == 1 else int(totient(m))
            assert group_order(m) == expected
        assert len(unit_group(51)) == 32

    def test_trivial_modulus(self):
        assert unit_group(1) == ()
        assert group_order(1) == 1
        assert unit_group(2) == (1,)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            unit_group(0)


class TestSubgroups:
    def test_generated_examples(self):
        assert subgroup_generated(7, [2]).sorted_elements() == (1, 2, 4)
        assert subgroup_generated(51, [16]).sorted_elements() == (1, 16)
        assert subgroup_generated(7, []).sorted_elements() == (1,)

    def test_non_unit_generator_rejected(self):
        with pytest.raises(ValueError):
            subgroup_generated(51, [17])
        with pytest.raises(ValueError):
            subgroup_generated(7, [0])

    def test_non_closed_set_rejected(self):
        with pytest.raises(ValueError):
            subgroup(7, [1, 2])

    def test_lagrange(self):
        for m in range(2, 80):
            for elems in subgroups_two_generated(m):
                assert len(unit_group(m)) % len(elems) == 0


class TestCosets:
    def test_partition_mod7(self):
        H = subgroup(7, [1, 2, 4])
        assert quotient_cosets(7, H) == (
            frozenset({1, 2, 4}),
            frozenset({3, 5, 6}),
        )

    def test_mul_of_nonresidue_class(self):
        nonres = frozenset({3, 5, 6})
        assert coset_mul(7, nonres, nonres) == frozenset({1, 2, 4})

    def test_identity_coset_is_its_own_inverse(self):
        H = subgroup(7, [1, 2, 4])
        assert coset_inv(7, frozenset(H.elements)) == frozenset(H.elements)

    def test_product_is_representative_independent(self):
        # literal element-wise products collapse back onto a single coset
        for m in (20, 36, 51):
            H = subgroup_generated(m, [unit_group(m)[1]])
            cosets = quotient_cosets(m, H)
            for c1 in cosets:
                for c2 in cosets:
                    prod = coset_mul(m, c1, c2)
                    assert len(prod) == H.order
                    assert prod == coset_of(m, H, (min(c1) * min(c2)) % m)

    @given(st.integers(min_value=3, max_value=100), st.data())
    @settings(max_examples=60, deadline=None)
    def test_group_axioms(self, m, data):
        units = unit_group(m)
        gens = data.draw(
            st.lists(st.sampled_from(units), min_size=0, max_size=2)
        )
        H = subgroup_generated(m, gens)
        cosets = quotient_cosets(m, H)
        identity = frozenset(H.elements)
        a = data.draw(st.sampled_from(cosets))
        b = data.draw(st.sampled_from(cosets))
        c = data.draw(st.sampled_from(cosets))
        assert coset_mul(m, a, identity) == a
        assert coset_mul(m, a, b) == coset_mul(m, b, a)
        assert coset_mul(m, coset_mul(m, a, b), c) == coset_mul(m, a, coset_mul(m, b, c))
        assert coset_mul(m, a, coset_inv(m, a)) == identity

    def test_axioms_exhaustive_small(self):
        # full triple check where the quotient is small enough to afford it
        for m in range(3, 101):
            H = subgroup_generated(m, unit_group(m)[:2])
            cosets = quotient_cosets(m, H)
            if len(cosets) > 12:
                continue
            identity = frozenset(H.elements)
            for a in cosets:
                assert coset_mul(m, a, identity) == a
                for b in cosets:
                    ab = coset_mul(m, a, b)
                    assert ab == coset_mul(m, b, a)
                    for c in cosets:
                        assert coset_mul(m, ab, c) == coset_mul(m, a, coset_mul(m, b, c))


class TestInvariantFactors:
    def test_paper_group_structure(self):
        # Gal of the conductor-51 example field: Z/2 x Z/8
        assert invariant_factors(51, subgroup_generated(51, [16])) == (2, 8)

    def test_cyclic_prime_case(self):
        assert invariant_factors(7, trivial_subgroup(7)) == (6,)

    def test_rank_two_case(self):
        # every element of (Z/8)^x squares to 1, so two C2 factors
        assert all(element_order(8, x) <= 2 for x in unit_group(8))
        assert invariant_factors(8, trivial_subgroup(8)) == (2, 2)

    def test_modulus_mismatch_rejected(self):
        with pytest.raises(ValueError):
            invariant_factors(7, subgroup(5, [1, 4]))

    def test_chain_and_product(self):
        for m in (24, 51, 63, 80, 91):
            for elems in subgroups_two_generated(m):
                H = Subgroup(m, elems)
                factors = invariant_factors(m, H)
                prod = 1
                for d1, d2 in zip(factors, factors[1:]):
                    assert d2 % d1 == 0
                for d in factors:
                    assert d >= 2
                    prod *= d
                assert prod == group_order(m) // H.order

    def test_against_order_histogram_oracle_full_sweep(self):
        # every <=2-generated subgroup for every modulus up to 200:
        # the abstract group built from the invariant factors must have the
        # same element-order multiset as the actual coset quotient
        for m in range(2, 201):
            for elems in subgroups_two_generated(m):
                H = Subgroup(m, elems)
                factors = invariant_factors(m, H)
                assert abstract_order_histogram(factors) == (
                    quotient_order_histogram(m, H)
                ), (m, sorted(elems), factors)

    def test_basis_spans_and_matches_factors(self):
        for m in (7, 8, 20, 51, 85):
            for elems in list(subgroups_two_generated(m))[:12]:
                H = Subgroup(m, elems)
                basis = invariant_factor_basis(m, H)
                assert is_quotient_basis(m, H, basis)
                assert tuple(d for _, d in basis) == invariant_factors(m, H)
                for g, d in basis:
                    assert coset_order(m, H, g) == d


class TestSubgroupEnumeration:
    def test_counts_for_small_cyclic_groups(self):
        # (Z/7)^x is cyclic of order 6: one subgroup per divisor
        assert len(all_subgroups(7)) == 4
        # (Z/8)^x = C2 x C2: trivial, three C2s, full
        assert len(all_subgroups(8)) == 5

    def test_all_closed_and_distinct(self):
        for m in (12, 20, 51):
            subs = all_subgroups(m)
            assert len({S.elements for S in subs}) == len(subs)
            for S in subs:
                subgroup(m, S.elements)  # re-validates closure
