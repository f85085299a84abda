"""Universal-cover lifting: sizes, colors, determinism, fiber invariance."""

from collections import Counter

import numpy as np
import pytest

from sturmtree import (
    CapExceeded,
    OutOfRange,
    ball_size,
    ball_to_dot,
    ball_to_json,
    canonical_key,
    example_catalog,
    extract_ball,
    lift_ball,
    lift_patch,
    transitions,
    truncate,
)
from sturmtree.cover import ROOT
from sturmtree.errors import RadiusMismatch


@pytest.fixture(scope="module")
def catalog():
    return example_catalog()


def test_ball_size_formula():
    assert ball_size(3, 0) == 1
    assert ball_size(3, 2) == 10
    assert ball_size(3, 4) == 46
    assert ball_size(2, 5) == 11
    assert ball_size(4, 2) == 17


def test_constant_ball(catalog):
    ball = lift_ball(catalog["constant"], 0, 2)
    assert ball.node_count == 10
    assert set(ball.color_of(v) for v in range(10)) == {"a"}


def test_sturmian_root_ball(catalog):
    ball = lift_ball(catalog["ex31-sturmian"], 0, 1)
    assert ball.color_of(0) == "b"
    assert Counter(ball.color_of(c) for c in ball.children(0)) == {"a": 3}


def test_bounded_type_root_ball(catalog):
    ball = lift_ball(catalog["sec2-bounded-type"], 0, 1)
    assert ball.color_of(0) == "b"
    assert Counter(ball.color_of(c) for c in ball.children(0)) == {"b": 2, "a": 1}


def test_patch_marks_centers(catalog):
    p = catalog["sec2-bounded-type"]
    patch = lift_patch(p, 0, 2, 2)
    assert patch.node_count == 46
    assert len(patch.marked_centers()) == 10
    trivial = lift_patch(p, 0, 0, 2)
    assert len(trivial.marked_centers()) == 1
    assert trivial.node_count == lift_ball(p, 0, 2).node_count


def test_cap_exceeded(catalog):
    with pytest.raises(CapExceeded):
        lift_ball(catalog["constant"], 0, 3, cap=10)


def test_out_of_range(catalog):
    with pytest.raises(OutOfRange):
        lift_ball(catalog["sec2-bounded-type"], -2, 1)


def test_deterministic_lift(catalog):
    p = catalog["arbitrary-quotient"]
    b1, b2 = lift_ball(p, 3, 4), lift_ball(p, 3, 4)
    assert np.array_equal(b1.projections, b2.projections)
    assert np.array_equal(b1.color_ids, b2.color_ids)
    assert np.array_equal(b1.child_start, b2.child_start)


def test_projection_consistency(catalog):
    # children-projection multisets are a function of (projection, arrival):
    # nodes of the same projection arrived the same way expand identically
    from sturmtree import vertex_at

    p = catalog["ex31-sturmian"]
    ball = lift_ball(p, 0, 5)
    parent_proj = lambda v: (int(ball.projections[ball.parents[v]])
                             if ball.parents[v] >= 0 else None)
    seen = {}
    for v in range(ball.node_count):
        if ball.depth_of(v) >= ball.radius:
            continue
        key = (int(ball.projections[v]), parent_proj(v))
        sig = tuple(sorted(int(ball.projections[c]) for c in ball.children(v)))
        seen.setdefault(key, set()).add(sig)
    for key, sigs in seen.items():
        assert len(sigs) == 1, key
    # transitions always emit k children at the root, k - 1 elsewhere
    for pos in range(4):
        assert sum(m for _, _, m in transitions(p, pos, ROOT)) == p.k
        for inc in vertex_at(p, pos).neighbor_indices:
            got = sum(m for _, _, m in transitions(p, pos, ("edge", inc.edge_id)))
            assert got == p.k - 1


def test_fiber_invariance(catalog):
    # marked centers sharing a projection carry equal sub-ball keys
    for name in ("sec2-bounded-type", "ex31-sturmian", "word-lift-uniform"):
        p = catalog[name]
        patch = lift_patch(p, 0, 3, 2)
        keys = {}
        for c in patch.marked_centers():
            key = canonical_key(extract_ball(patch, c, 2))
            proj = int(patch.projections[c])
            assert keys.setdefault(proj, key) == key, (name, proj)


def test_truncate_is_prefix(catalog):
    ball = lift_ball(catalog["ex31-sturmian"], 1, 4)
    small = truncate(ball, 2)
    assert small.node_count == ball_size(3, 2)
    assert np.array_equal(small.color_ids,
                          ball.color_ids[:small.node_count])
    assert canonical_key(small) == canonical_key(lift_ball(
        catalog["ex31-sturmian"], 1, 2))


def test_truncate_cannot_grow(catalog):
    ball = lift_ball(catalog["constant"], 0, 2)
    with pytest.raises(RadiusMismatch):
        truncate(ball, 3)


def test_extract_ball_matches_direct_lift(catalog):
    p = catalog["arbitrary-quotient"]
    big = lift_ball(p, 2, 4)
    for child in big.children(0):
        sub = extract_ball(big, child, 3)
        direct = lift_ball(p, int(big.projections[child]), 3)
        assert canonical_key(sub) == canonical_key(direct)


def test_extract_ball_needs_room(catalog):
    ball = lift_ball(catalog["constant"], 0, 2)
    deep = ball.node_count - 1
    with pytest.raises(RadiusMismatch):
        extract_ball(ball, deep, 1)


def test_ball_dot_export(catalog):
    dot = ball_to_dot(lift_ball(catalog["ex31-sturmian"], 0, 1))
    assert dot.count("n0 --") == 3
    assert 'label="b@0"' in dot and 'label="a@1"' in dot
    assert dot.count("[label=") == 4  # four nodes


def test_ball_json_export(catalog):
    import json

    doc = json.loads(ball_to_json(lift_ball(catalog["sec2-bounded-type"], 0, 1)))
    assert doc["radius"] == 1 and doc["k"] == 3
    root = doc["root"]
    assert root["color"] == "b" and len(root["children"]) == 3
    assert Counter(ch["color"] for ch in root["children"]) == {"b": 2, "a": 1}


def test_cap_env_default(monkeypatch, catalog):
    from sturmtree.cover import default_cap

    monkeypatch.setenv("STURMTREE_CAP", "50")
    assert default_cap() == 50
    with pytest.raises(CapExceeded):
        lift_ball(catalog["constant"], 0, 5)  # 94 nodes > 50
    monkeypatch.delenv("STURMTREE_CAP")
    assert default_cap() == 1_000_000
