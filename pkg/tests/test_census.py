"""Census values, special balls, windows, and the brute-force oracle."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sturmtree import (
    CapExceeded,
    RadiusMismatch,
    Unsaturated,
    ball_census,
    brute_force_census,
    census_agrees,
    complexity,
    example_catalog,
    extend_ray_prefix,
    special_balls,
)
from sturmtree.verify import random_finite_presentation

presentations = st.integers(0, 10**6).map(
    lambda seed: random_finite_presentation(random.Random(seed))
)


@pytest.fixture(scope="module")
def catalog():
    return example_catalog()


def test_constant_census(catalog):
    c = ball_census(catalog["constant"], 6)
    assert [c.b(n) for n in range(7)] == [1] * 7
    assert complexity(catalog["constant"], 0) == 1


def test_bounded_type_profile(catalog):
    c = ball_census(catalog["sec2-bounded-type"], 10)
    assert [c.b(n) for n in range(11)] == [n + 2 for n in range(11)]


def test_sturmian_small_values(catalog):
    c = ball_census(catalog["ex31-sturmian"], 4)
    assert c.b(0) == 2 and c.b(1) == 3 and c.b(2) == 4


def test_alternating_census_vs_oracle(catalog):
    p = catalog["alternating"]
    c = ball_census(p, 5)
    assert [c.b(n) for n in range(6)] == [2] * 6
    o = brute_force_census(p, 5)
    assert o.saturated and census_agrees(c, o)[0]


def test_special_balls(catalog):
    c = ball_census(catalog["constant"], 5)
    assert all(special_balls(c, n) == [] for n in range(5))
    c = ball_census(catalog["alternating"], 5)
    assert all(special_balls(c, n) == [] for n in range(5))
    c = ball_census(catalog["ex31-sturmian"], 9)
    for n in range(9):
        assert len(special_balls(c, n)) == 1, n


def test_special_needs_extension_data(catalog):
    c = ball_census(catalog["constant"], 3)
    with pytest.raises(RadiusMismatch):
        special_balls(c, 3)


def test_census_radius_bounds(catalog):
    c = ball_census(catalog["constant"], 3)
    with pytest.raises(RadiusMismatch):
        c.b(4)


def test_cap_precheck(catalog):
    with pytest.raises(CapExceeded):
        ball_census(catalog["constant"], 25, cap=1000)


@settings(max_examples=40, deadline=None)
@given(presentations)
def test_monotone_and_plateau_persistence(p):
    c = ball_census(p, 8)
    bs = [c.b(n) for n in range(9)]
    assert all(b2 >= b1 for b1, b2 in zip(bs, bs[1:]))
    assert all(b <= len(p.vertices) for b in bs)
    for n in range(8):
        if bs[n + 1] == bs[n]:
            assert all(b == bs[n] for b in bs[n:]), bs
            break
    else:
        pytest.fail(f"no plateau for a finite presentation: {bs}")


@settings(max_examples=15, deadline=None)
@given(presentations)
def test_oracle_equivalence_random_finite(p):
    fast = ball_census(p, 4)
    oracle = brute_force_census(p, 4)
    assert oracle.saturated
    ok, detail = census_agrees(fast, oracle)
    assert ok, detail


def test_window_invariance_under_prefix_extension(catalog):
    # a longer explicit prefix widens the center window; classes must agree
    p = catalog["sec2-bounded-type"]
    q = extend_ray_prefix(p, 8)
    cp, cq = ball_census(p, 6), ball_census(q, 6)
    for n in range(7):
        assert {e.sym_id for e in cp.entries(n)} == {e.sym_id for e in cq.entries(n)}
        assert set(cp.keys_at(n)) == set(cq.keys_at(n))


def test_extension_relation(catalog):
    c = ball_census(catalog["ex31-sturmian"], 6)
    for n in range(6):
        for e in c.entries(n):
            assert 1 <= len(e.extension_ids) <= 2
            assert e.special == (len(e.extension_ids) == 2)
        specials = [e for e in c.entries(n) if e.special]
        assert len(specials) == 1
    # every (n+1)-class restricts to exactly one n-class
    for n in range(6):
        next_ids = {e.sym_id for e in c.entries(n + 1)}
        claimed = [x for e in c.entries(n) for x in e.extension_ids]
        assert set(claimed) == next_ids
        assert len(claimed) == len(next_ids)


def test_unsaturated_detection(catalog):
    p = catalog["ex31-sturmian"]
    with pytest.raises(Unsaturated):
        brute_force_census(p, 4, R=2, base=0, step=1, strict=True)
    o = brute_force_census(p, 4, R=2, base=0, step=1, strict=False)
    assert not o.saturated


def test_census_disagreement_reported(catalog):
    fast = ball_census(catalog["constant"], 3)
    oracle = brute_force_census(catalog["alternating"], 3)
    ok, detail = census_agrees(fast, oracle)
    assert not ok and "b(" in detail


def test_count_semantics_finite(catalog):
    c = ball_census(catalog["alternating"], 2)
    assert sorted(e.count for e in c.entries(0)) == [1, 1]
    assert sum(e.count for e in c.entries(2)) == 2  # one per vertex


def test_oracle_equivalence_100_random_finite():
    for seed in range(100):
        p = random_finite_presentation(random.Random(31000 + seed))
        fast = ball_census(p, 5)
        oracle = brute_force_census(p, 5)
        assert oracle.saturated, seed
        ok, detail = census_agrees(fast, oracle)
        assert ok, (seed, detail)


def test_parallel_edges_lift_correctly():
    # two undirected edges between the same pair are distinct quotient edges;
    # the lift must track which one a node arrived through
    from sturmtree import finite

    p = finite(3, ["a", "b"], [(0, 1, 1, 1), (0, 1, 2, 2)])
    fast = ball_census(p, 5)
    oracle = brute_force_census(p, 5)
    assert oracle.saturated and census_agrees(fast, oracle)[0]


def test_degree_two_finite_presentation():
    from sturmtree import finite

    p = finite(2, ["a", "b"], [(0, 1, 1, 1)], selfs=[1, 1])
    fast = ball_census(p, 6)
    oracle = brute_force_census(p, 6)
    assert oracle.saturated and census_agrees(fast, oracle)[0]
    assert fast.b(6) == fast.b(5)  # periodic
