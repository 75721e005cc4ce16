import dataclasses

import pytest

from parityforge.arith import MAX_VALUE, factorize
from parityforge.catalog import (
    build_construction,
    stage1_cutoff,
    stage1_system,
)
from parityforge.errors import ClaimMismatch
from parityforge.forms import FormSystem, LinearForm
from parityforge.search import (
    assemble_witness,
    e2_check,
    e2_gap_scan,
    find_simultaneous_e2,
    oracle_scan,
    search_witnesses,
    stage2_input_from_hit,
    verify_witness,
    witness_to_dict,
)

from _oracle import naive_big_omega, naive_d, naive_is_e2, naive_omega


def test_e2_check():
    assert not e2_check(6)  # default cutoff 2 already excludes the factor 2
    assert e2_check(6, C=1)
    assert e2_check(145, C=4)
    assert not e2_check(145, C=5)  # smaller factor must exceed C
    assert not e2_check(4)  # square
    assert not e2_check(13)  # prime
    assert not e2_check(30)  # three factors
    for x in range(2, 500):
        assert e2_check(x) == naive_is_e2(x), x


def test_first_simultaneous_hit_small_triplet():
    # {6m+1, 8m+1, 9m+1}: the first index where two values are both E2
    # with factors above 3 is 24, on the outer pair.
    c = build_construction("T2", A=3)
    hits = find_simultaneous_e2(c.adjoined.reduced, c.C, hi=30)
    assert hits[0].ell == 24
    assert hits[0].pair == (0, 2)
    assert hits[0].values == (145, 217)
    assert hits[0].factors == ((5, 29), (7, 31))


def test_first_witnesses_of_distinct_value_claim():
    # {4m+1, 5m+1, 6m+1} with four planted primes: first witness pair is
    # 27965 / 27966 and every side factors as claimed.
    c = build_construction("T1", A=4)
    ws, mism = search_witnesses(c, hi=40, limit=3)
    assert not mism
    assert [(w.ell, w.x, w.x_plus, w.pair) for w in ws] == [
        (12, 27965, 27966, (2, 3)),
        (32, 49444, 49445, (1, 2)),
        (32, 29666, 29667, (1, 3)),
    ]
    for w in ws:
        assert verify_witness(w)
        assert w.x_plus - w.x == 1
        assert w.x_factors.stat(c.claim.statistic) == c.claim.value


def test_witnesses_for_pattern_claim():
    c = build_construction("T123")
    ws, mism = search_witnesses(c, hi=20, limit=3)
    assert not mism
    assert [(w.ell, w.x, w.pair) for w in ws] == [
        (7, 2537660, (1, 2)),
        (13, 7786834, (2, 3)),
        (17, 15237650, (1, 3)),
    ]
    for w in ws:
        assert verify_witness(w)
        assert factorize(w.x).pattern() == (2, 1, 1, 1)
        assert factorize(w.x_plus).pattern() == (2, 1, 1, 1)


def test_verify_witness_rejects_tampering():
    c = build_construction("T1", A=4)
    w = search_witnesses(c, hi=40, limit=1)[0][0]
    assert verify_witness(w)
    assert not verify_witness(dataclasses.replace(w, x=w.x + 2))
    assert not verify_witness(dataclasses.replace(w, value=5))
    assert not verify_witness(
        dataclasses.replace(w, x_factors=factorize(w.x + 1))
    )


def test_assemble_witness_rejects_foreign_pair():
    c = build_construction("T1", A=4)
    hits = find_simultaneous_e2(c.adjoined.reduced, c.C, hi=40)
    bad = dataclasses.replace(hits[0], pair=(9, 10))
    with pytest.raises(ClaimMismatch):
        assemble_witness(c, bad)


def test_search_is_deterministic_across_workers_and_segments():
    c = build_construction("T2", A=3)
    base = find_simultaneous_e2(c.adjoined.reduced, c.C, hi=120000, limit=200)
    assert len(base) == 200
    for workers in (2, 8):
        assert (
            find_simultaneous_e2(
                c.adjoined.reduced, c.C, hi=120000, limit=200, workers=workers
            )
            == base
        )
    assert (
        find_simultaneous_e2(
            c.adjoined.reduced, c.C, hi=120000, limit=200, segment=1 << 12
        )
        == base
    )


def test_oversized_bound_reports_usable_range():
    system = FormSystem((LinearForm(MAX_VALUE // 2, 1), LinearForm(MAX_VALUE // 2, 3)))
    with pytest.raises(OverflowError, match="largest usable bound"):
        find_simultaneous_e2(system, 2, hi=10**6)
    hopeless = FormSystem((LinearForm(MAX_VALUE, 1), LinearForm(MAX_VALUE, 3)))
    with pytest.raises(OverflowError, match="no searchable"):
        find_simultaneous_e2(hopeless, 2, hi=10)


def test_stage1_anchor_hits():
    # 672l + {41, 47, 55}: one anchor hit per pair class inside l < 64.
    hits = find_simultaneous_e2(stage1_system(), stage1_cutoff(105), hi=64)
    firsts = {}
    for h in hits:
        firsts.setdefault(h.pair, h)
    assert firsts[(0, 2)].ell == 13
    assert firsts[(0, 2)].values == (8777, 8791)
    assert firsts[(0, 2)].factors == ((67, 131), (59, 149))
    assert firsts[(0, 1)].ell == 43
    assert firsts[(0, 1)].values[0] == 28937
    assert firsts[(1, 2)].ell == 46
    assert firsts[(1, 2)].values[0] == 30959


def test_stage2_input_from_hit():
    hits = find_simultaneous_e2(stage1_system(), stage1_cutoff(105), hi=64)
    firsts = {}
    for h in hits:
        firsts.setdefault(h.pair, h)
    s2 = stage2_input_from_hit(firsts[(0, 2)], 105)
    assert (s2.case, s2.q, s2.k) == (2, 8777, 627)
    s1 = stage2_input_from_hit(firsts[(0, 1)], 105)
    assert (s1.case, s1.q, s1.k) == (1, 28937, 4823)
    s3 = stage2_input_from_hit(firsts[(1, 2)], 105)
    assert (s3.case, s3.q, s3.k) == (3, 30959, 3870)
    assert s1.k % 4 == 3 and s2.k % 4 == 3 and s3.k % 4 == 2


def test_witness_to_dict_shape():
    c = build_construction("T123")
    w = search_witnesses(c, hi=20, limit=1)[0][0]
    doc = witness_to_dict(w)
    assert doc["schema"] == "parity-forge/1" and doc["kind"] == "witness"
    assert doc["x"] == 2537660 and doc["x_plus_n"] == 2537661
    assert doc["value"] == [2, 1, 1, 1]  # tuples serialize as lists
    assert doc["pair"] == [1, 2]
    assert doc["x_factors"] == [[int(p), int(e)] for p, e in factorize(w.x).pairs]


def test_oracle_scan_reference_values():
    assert oracle_scan("big_omega", 4, 1, 200)[0] == 135
    assert oracle_scan("omega", 3, 1, 300)[0] == 230
    assert oracle_scan("d", 6, 2, 60)[:2] == [18, 50]
    assert oracle_scan("pattern", (1, 1), 1, 60) == [14, 21, 33, 34, 38, 57]
    with pytest.raises(ValueError):
        oracle_scan("omega", 3, 0, 100)
    with pytest.raises(ValueError):
        oracle_scan("sigma", 3, 1, 100)


def test_oracle_scan_matches_naive():
    stats = {"omega": naive_omega, "big_omega": naive_big_omega, "d": naive_d}
    for statistic, fn in stats.items():
        for value, shift in ((3, 1), (4, 2)):
            got = oracle_scan(statistic, value, shift, 400)
            want = [
                x for x in range(2, 401) if fn(x) == value and fn(x + shift) == value
            ]
            assert got == want, (statistic, value, shift)


def test_oracle_scan_segment_independence():
    full = oracle_scan("big_omega", 4, 1, 5000)
    assert oracle_scan("big_omega", 4, 1, 5000, segment=64) == full


def test_e2_gap_scan_reference_and_invariant():
    assert e2_gap_scan(40, 2) == [(14, 15), (21, 22), (33, 34), (34, 35), (38, 39)]
    assert e2_gap_scan(40, 4) == [
        (6, 10), (10, 14), (14, 15), (21, 22), (22, 26),
        (33, 34), (34, 35), (35, 38), (38, 39),
    ]
    # Reported pairs are consecutive: no E2 lies strictly between them.
    # The scan uses the plain squarefree-semiprime notion (no cutoff).
    plain = lambda x: factorize(x).pattern() == (1, 1)
    for a, b in e2_gap_scan(3000, 6):
        assert plain(a) and plain(b)
        assert all(not plain(x) for x in range(a + 1, b))
