import pytest

from parityforge.errors import NotOdd, OutOfDomain
from parityforge.twins import (
    TwinPair,
    census_digit_bound,
    check_hypothesis_t,
    first_strong_pair,
    iter_twin_pairs,
    product_S,
    twin_pairs,
)

from _oracle import naive_twin_pairs


def test_twin_pair_fields():
    t = TwinPair(11)
    assert (t.p, t.q, t.product) == (11, 13, 143)


def test_twin_pairs_below_100():
    assert [t.p for t in twin_pairs(100)] == [3, 5, 11, 17, 29, 41, 59, 71]


def test_twin_pairs_match_naive_across_segment_boundaries():
    got = [t.p for t in iter_twin_pairs(10**5)]
    assert got == naive_twin_pairs(10**5)


def test_twin_pairs_limit_applies_to_lower_member():
    # 59 is in range even though 61 lies past the limit.
    assert [t.p for t in twin_pairs(59)] == [3, 5, 11, 17, 29, 41, 59]
    assert [t.p for t in twin_pairs(58)] == [3, 5, 11, 17, 29, 41]
    assert twin_pairs(2) == []


def test_hypothesis_t_reference_values():
    r = check_hypothesis_t(1)
    assert (r.pair.p, r.strong, r.holds) == (3, True, True)
    r = check_hypothesis_t(15)  # 3*5 | 15, so (3,5) is skipped; 5 | 15 kills strength
    assert (r.pair.p, r.strong) == (5, False)
    r = check_hypothesis_t(105)  # 105 = 3*5*7 rules out (3,5) and (5,7)
    assert (r.pair.p, r.pair.q, r.strong) == (11, 13, True)


def test_hypothesis_t_rejects_even_and_bad_n():
    with pytest.raises(NotOdd):
        check_hypothesis_t(6)
    with pytest.raises(OutOfDomain):
        check_hypothesis_t(0)
    with pytest.raises(NotOdd):
        first_strong_pair(4)


def test_first_strong_pair():
    assert first_strong_pair(1).p == 3
    assert first_strong_pair(15).p == 11  # needs both sides coprime to 15
    assert first_strong_pair(3 * 5 * 11 * 13).p == 17


def test_product_modes_and_digits():
    pairs = twin_pairs(20)  # (3,5), (5,7), (11,13), (17,19)
    union, digits = product_S(pairs, "union")
    assert union == 3 * 5 * 7 * 11 * 13 * 17 * 19
    assert digits == len(str(union))
    paired, _ = product_S(pairs, "pairs")
    assert paired == 15 * 35 * 143 * 323
    with pytest.raises(ValueError):
        product_S(pairs, "intersect")


def test_census_digit_bound_scales_with_count():
    assert census_digit_bound(1) == 30
    assert census_digit_bound(10, digits_per_pair=12) == 120
