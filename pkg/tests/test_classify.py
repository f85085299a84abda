"""Type profiles, neighbor rules, periodicity, reconstruction, shapes."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sturmtree import (
    NotPeriodic,
    ball_census,
    cached_census,
    classify_shape,
    detect_periodic,
    example_catalog,
    is_sturmian_up_to,
    neighbor_type_check,
    reconstruct_quotient,
    type_profiles,
)
from sturmtree.classify import (
    EP_TYPE_A,
    EP_TYPE_B,
    FINITE_GRAPH,
    LINE_WITH_LOOPS,
    RAY_WITH_LOOPS,
)
from sturmtree.verify import corrupt_presentation, random_finite_presentation

presentations = st.integers(0, 10**6).map(
    lambda seed: random_finite_presentation(random.Random(seed))
)


@pytest.fixture(scope="module")
def catalog():
    return example_catalog()


def test_bounded_type_vertex_has_empty_type_set(catalog):
    profiles = type_profiles(catalog["sec2-bounded-type"], 8)
    pr = profiles[0]
    assert pr.type_set == frozenset() and pr.observed_max_type == -1
    assert not pr.censored


def test_constant_all_types_empty(catalog):
    profiles = type_profiles(catalog["constant"], 6)
    assert all(pr.observed_max_type == -1 for pr in profiles.values())


def test_arbitrary_quotient_max_type_is_distance(catalog):
    N = 9
    profiles = type_profiles(catalog["arbitrary-quotient"], N)
    for d in range(N):
        assert profiles[d].observed_max_type == d, d
        assert not profiles[d].censored
    assert profiles[N].censored


def test_censoring_at_horizon(catalog):
    profiles = type_profiles(catalog["sec2-bounded-type"], 6)
    # max type at position p is p - 1; position 7 observes 6 == N
    assert profiles[7].observed_max_type == 6 and profiles[7].censored


def test_class_coherence(catalog):
    # equal radius-N classes entail equal truncated type data
    for name in ("ex31-sturmian", "word-lift-uniform", "alternating"):
        N = 6
        profiles = type_profiles(catalog[name], N)
        by_class = {}
        for pr in profiles.values():
            prev = by_class.setdefault(pr.class_id, pr)
            assert pr.type_set == prev.type_set
            assert pr.observed_max_type == prev.observed_max_type


def test_same_max_type_means_same_class(catalog):
    # among positions away from the horizon boundary, the observed maximal
    # type determines the radius-N class.  A position whose true type set
    # continues past N can show a truncated maximum, but only within one
    # tail period of the horizon, so those profiles are out of scope.
    from sturmtree import stability_period

    N = 8
    for name in ("sec2-bounded-type", "ex31-sturmian", "arbitrary-quotient"):
        margin = N - stability_period(catalog[name]) - 1
        profiles = type_profiles(catalog[name], N)
        by_tau = {}
        seen = 0
        for pr in profiles.values():
            if pr.censored or pr.observed_max_type > margin:
                continue
            seen += 1
            assert by_tau.setdefault(pr.observed_max_type, pr.class_id) == pr.class_id
        assert seen >= 3, name


def test_neighbor_check_clean(catalog):
    r = neighbor_type_check(catalog["arbitrary-quotient"], 10)
    assert r.ok and r.checked > 0
    r = neighbor_type_check(catalog["constant"], 6)
    assert r.ok  # vacuous: no special balls at all


def test_neighbor_check_corrupted_control(catalog):
    control = corrupt_presentation(catalog["ex31-sturmian"])
    r = neighbor_type_check(control, 10)
    assert not r.ok
    assert all(v.rule in ("range", "ascend", "descend") for v in r.violations)


def test_detect_periodic(catalog):
    assert detect_periodic(ball_census(catalog["alternating"], 4)) == 0
    assert detect_periodic(ball_census(catalog["constant"], 4)) == 0
    assert detect_periodic(ball_census(catalog["ex31-sturmian"], 8)) is None


def test_reconstruct_constant(catalog):
    q = reconstruct_quotient(catalog["constant"], 0)
    assert len(q.vertices) == 1 and q.vertices[0].self_adjacency == 3
    assert q.edges == ()


def test_reconstruct_alternating(catalog):
    q = reconstruct_quotient(catalog["alternating"], 0)
    assert len(q.vertices) == 2
    (e,) = q.edges
    assert (e.fwd, e.bwd) == (3, 3)
    cq = ball_census(q, 6)
    assert [cq.b(n) for n in range(7)] == [2] * 7


def test_reconstruct_requires_plateau(catalog):
    with pytest.raises(NotPeriodic):
        reconstruct_quotient(catalog["ex31-sturmian"], 6)


@settings(max_examples=25, deadline=None)
@given(presentations)
def test_reconstruction_roundtrip_random(p):
    c = ball_census(p, 7)
    plateau = detect_periodic(c)
    assert plateau is not None
    q = reconstruct_quotient(p, plateau)
    cq = ball_census(q, 6)
    for n in range(7):
        assert {e.sym_id for e in c.entries(n)} == {e.sym_id for e in cq.entries(n)}


def test_is_sturmian(catalog):
    assert is_sturmian_up_to(cached_census(catalog["ex31-sturmian"], 10), 10)
    assert is_sturmian_up_to(cached_census(catalog["sec2-bounded-type"], 10), 10)
    assert not is_sturmian_up_to(cached_census(catalog["alternating"], 8), 8)


def test_shape_verdicts(catalog):
    assert classify_shape(catalog["ep-typeA"]).shape == EP_TYPE_A
    assert classify_shape(catalog["ep-typeA-alt"]).shape == EP_TYPE_A
    assert classify_shape(catalog["ep-typeB"]).shape == EP_TYPE_B
    assert classify_shape(catalog["sec2-bounded-type"]).shape == RAY_WITH_LOOPS
    assert classify_shape(catalog["ex31-sturmian"]).shape == RAY_WITH_LOOPS
    assert classify_shape(catalog["alternating"]).shape == FINITE_GRAPH
    assert classify_shape(catalog["word-lift-uniform"]).shape == LINE_WITH_LOOPS


def test_shape_verdict_json(catalog):
    text = classify_shape(catalog["ep-typeA"]).to_json()
    assert "\n" not in text
    import json

    doc = json.loads(text)
    assert doc["shape"] == EP_TYPE_A and "leading_self" in doc["evidence"]


def test_unbounded_example_one_ball_type_sets():
    # horizon shadow of the 1-ball bound: among a vertex and its quotient
    # neighbors, at most three distinct truncated type sets
    from sturmtree import lift_word_uniform, fibonacci_word
    from sturmtree.classify import quotient_neighbors

    p = lift_word_uniform(fibonacci_word(min_denominator=300), 1, 1, 3)
    N = 6
    profiles = type_profiles(p, N)
    for pos, pr in profiles.items():
        sets = {pr.type_set}
        for q in quotient_neighbors(p, pos):
            if q in profiles:
                sets.add(profiles[q].type_set)
        assert len(sets) <= 3, (pos, sets)
