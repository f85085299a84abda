"""Universal-cover expansion: colored balls lifted from a presentation.

The covering tree of an edge-indexed presentation is grown breadth-first.  A
node projecting to quotient vertex v that was reached through edge e emits
i(f) children along every other incident edge f, i(e-bar) - 1 further children
back along the arrival edge, and self_adjacency(v) same-fiber children (one
fewer when the arrival itself was a self-adjacency).  This is the unique rule
that makes every lifted vertex have degree k.

Balls are stored as flat numpy arrays in BFS order, so the children of node i
are the contiguous index range child_start[i]..child_start[i+1] and the nodes
at depth d are the contiguous range level_offsets[d]..level_offsets[d+1].
"""

from __future__ import annotations

import json
import os

import numpy as np

from .errors import CapExceeded, RadiusMismatch
from .presentation import QuotientPresentation, vertex_at

ROOT = ("root",)
SELF = ("self",)


def default_cap() -> int:
    return int(os.environ.get("STURMTREE_CAP", 1_000_000))


def ball_size(k: int, n: int) -> int:
    """Number of vertices of a radius-n ball in the k-regular tree."""
    if n < 0:
        return 0
    if k == 2:
        return 2 * n + 1
    return 1 + k * ((k - 1) ** n - 1) // (k - 2)


def transitions(p: QuotientPresentation, pos: int, arrival):
    """Child (position, arrival, multiplicity) triples below a lifted node.

    `arrival` is ROOT, SELF, or ("edge", edge_id) naming the quotient edge the
    node was reached through.  The triple order is deterministic: incident
    edges in record order, then the self-adjacency group.
    """
    rec = vertex_at(p, pos)
    out = []
    for inc in rec.neighbor_indices:
        m = inc.index_out - (1 if arrival == ("edge", inc.edge_id) else 0)
        if m:
            out.append((inc.neighbor, ("edge", inc.edge_id), m))
    s = rec.self_adjacency - (1 if arrival == SELF else 0)
    if s:
        out.append((pos, SELF, s))
    return out


class ColoredBall:
    """A lifted radius-n ball (or patch) with per-node color and projection.

    Nodes are numbered in BFS order from the root.  `marked_radius`, when set,
    flags every node within that distance of the root as a census center.
    """

    def __init__(self, k, radius, alphabet, color_ids, projections, parents,
                 child_start, level_offsets, marked_radius=None):
        self.k = k
        self.radius = radius
        self.alphabet = tuple(alphabet)
        self.color_ids = color_ids
        self.projections = projections
        self.parents = parents
        self.child_start = child_start
        self.level_offsets = level_offsets
        self.marked_radius = marked_radius
        self._check()

    @property
    def node_count(self) -> int:
        return len(self.color_ids)

    def color_of(self, node: int) -> str:
        return self.alphabet[self.color_ids[node]]

    def children(self, node: int) -> range:
        return range(self.child_start[node], self.child_start[node + 1])

    def depth_of(self, node: int) -> int:
        return int(np.searchsorted(self.level_offsets, node, side="right")) - 1

    def depths(self) -> np.ndarray:
        out = np.empty(self.node_count, dtype=np.int32)
        for d in range(len(self.level_offsets) - 1):
            out[self.level_offsets[d]:self.level_offsets[d + 1]] = d
        return out

    def marked_centers(self) -> range:
        if self.marked_radius is None:
            return range(1)
        return range(self.level_offsets[min(self.marked_radius, self.radius) + 1])

    def _check(self):
        n = self.node_count
        expected = ball_size(self.k, self.radius)
        if n != expected:
            raise AssertionError(
                f"ball has {n} nodes, size formula gives {expected}"
            )
        if self.radius >= 1:
            counts = np.diff(self.child_start)
            has_parent = (self.parents >= 0).astype(counts.dtype)
            interior = self.level_offsets[self.radius]
            deg = counts[:interior] + has_parent[:interior]
            if not np.all(deg == self.k):
                bad = int(np.argmax(deg != self.k))
                raise AssertionError(
                    f"lifted node {bad} has degree {int(deg[bad])} != k"
                )


def _lift(p: QuotientPresentation, pos: int, radius: int, cap: int,
          marked_radius=None) -> ColoredBall:
    need = ball_size(p.k, radius)
    if need > cap:
        raise CapExceeded(need, cap)
    color_index = {c: i for i, c in enumerate(p.alphabet)}
    k = p.k

    # Lazily discovered (position, arrival) types.  Each type stores its
    # color, projection and the child type ids expanded per multiplicity.
    type_ids: dict = {}
    type_pos: list[int] = []
    type_arrival: list = []
    type_color: list[int] = []
    templates: list = []  # list[None | list[int]]

    def tid_of(position, arrival) -> int:
        key = (position, arrival)
        t = type_ids.get(key)
        if t is None:
            t = len(type_pos)
            type_ids[key] = t
            type_pos.append(position)
            type_arrival.append(arrival)
            type_color.append(color_index[vertex_at(p, position).color])
            templates.append(None)
        return t

    def template_of(t: int) -> list[int]:
        tmpl = templates[t]
        if tmpl is None:
            tmpl = []
            for cpos, carr, mult in transitions(p, type_pos[t], type_arrival[t]):
                ct = tid_of(cpos, carr)
                tmpl.extend([ct] * mult)
            templates[t] = tmpl
        return tmpl

    root = tid_of(pos, ROOT)
    level_types = [np.array([root], dtype=np.int32)]
    level_parents = [np.array([-1], dtype=np.int32)]
    level_child_counts = []
    total = 1
    for depth in range(radius):
        cur = level_types[-1]
        for t in np.unique(cur):
            template_of(int(t))
        n_types = len(type_pos)
        counts_arr = np.fromiter(
            (len(templates[t]) if templates[t] is not None else 0
             for t in range(n_types)),
            dtype=np.int32, count=n_types,
        )
        tmpl_mat = np.full((n_types, k), -1, dtype=np.int32)
        for t in range(n_types):
            if templates[t]:
                tmpl_mat[t, :len(templates[t])] = templates[t]
        counts = counts_arr[cur]
        total_children = int(counts.sum())
        total += total_children
        if total > cap:
            raise CapExceeded(total, cap)
        child_mat = tmpl_mat[cur]
        next_types = child_mat[child_mat >= 0].astype(np.int32)
        base = sum(len(lv) for lv in level_types[:-1])
        node_ids = np.arange(base, base + len(cur), dtype=np.int32)
        level_parents.append(np.repeat(node_ids, counts))
        level_child_counts.append(counts)
        level_types.append(next_types)
    level_child_counts.append(
        np.zeros(len(level_types[-1]), dtype=np.int32)
    )

    types_all = np.concatenate(level_types)
    parents = np.concatenate(level_parents)
    counts_all = np.concatenate(level_child_counts)
    child_start = np.zeros(len(types_all) + 1, dtype=np.int64)
    child_start[1:] = np.cumsum(counts_all, dtype=np.int64)
    child_start += 1  # children of the root start after the root itself
    child_start[0] = 1
    pos_arr = np.asarray(type_pos, dtype=np.int64)
    col_arr = np.asarray(type_color, dtype=np.int16)
    level_offsets = np.zeros(radius + 2, dtype=np.int64)
    level_offsets[1:] = np.cumsum([len(lv) for lv in level_types], dtype=np.int64)
    return ColoredBall(
        k, radius, p.alphabet,
        col_arr[types_all],
        pos_arr[types_all],
        parents,
        child_start,
        level_offsets,
        marked_radius=marked_radius,
    )


def lift_ball(p: QuotientPresentation, pos: int, n: int,
              cap: int | None = None) -> ColoredBall:
    """Lift the radius-n ball around (a lift of) quotient position pos."""
    return _lift(p, pos, n, cap if cap is not None else default_cap())


def lift_patch(p: QuotientPresentation, pos: int, R: int, n: int,
               cap: int | None = None) -> ColoredBall:
    """Radius R+n ball whose nodes within R of the root are census centers."""
    return _lift(p, pos, R + n, cap if cap is not None else default_cap(),
                 marked_radius=R)


def truncate(ball: ColoredBall, r: int) -> ColoredBall:
    """Restriction of a ball to radius r (a prefix of the BFS arrays)."""
    if r > ball.radius:
        raise RadiusMismatch(f"cannot grow a ball from {ball.radius} to {r}")
    if r == ball.radius:
        return ball
    n_new = int(ball.level_offsets[r + 1])
    return ColoredBall(
        ball.k, r, ball.alphabet,
        ball.color_ids[:n_new],
        ball.projections[:n_new],
        ball.parents[:n_new],
        np.minimum(ball.child_start[:n_new + 1], n_new),
        ball.level_offsets[:r + 2],
        marked_radius=None,
    )


def extract_ball(ball: ColoredBall, center: int, r: int) -> ColoredBall:
    """Radius-r sub-ball around any node of a larger ball or patch.

    The center must be deep enough inside the source that the sub-ball is a
    full ball: depth(center) + r <= source radius.
    """
    if ball.depth_of(center) + r > ball.radius:
        raise RadiusMismatch(
            f"node at depth {ball.depth_of(center)} has no full radius-{r} ball"
        )
    order = [center]
    parent_new = [-1]
    child_counts = []
    dist = {center: 0}
    level_offsets = [0]
    i = 0
    while i < len(order):
        v = order[i]
        d = dist[v]
        while len(level_offsets) <= d:
            level_offsets.append(i)
        emitted = 0
        if d < r:
            nbrs = []
            pv = int(ball.parents[v])
            if pv >= 0:
                nbrs.append(pv)
            nbrs.extend(ball.children(v))
            for w in nbrs:
                if w not in dist:
                    dist[w] = d + 1
                    order.append(w)
                    parent_new.append(i)
                    emitted += 1
        child_counts.append(emitted)
        i += 1
    while len(level_offsets) < r + 2:
        level_offsets.append(len(order))
    order_arr = np.asarray(order, dtype=np.int64)
    cs = np.zeros(len(order) + 1, dtype=np.int64)
    np.cumsum(np.asarray(child_counts, dtype=np.int64), out=cs[1:])
    cs += 1
    cs[0] = 1
    lo = np.asarray(level_offsets[:r + 2], dtype=np.int64)
    return ColoredBall(
        ball.k, r, ball.alphabet,
        ball.color_ids[order_arr],
        ball.projections[order_arr],
        np.asarray(parent_new, dtype=np.int32),
        cs,
        lo,
    )


# ---------------------------------------------------------------------------
# exports


def ball_to_dot(ball: ColoredBall, name: str = "ball") -> str:
    """GraphViz DOT with nodes labeled color@projection."""
    lines = [f"graph {name} {{"]
    for v in range(ball.node_count):
        lines.append(
            f'  n{v} [label="{ball.color_of(v)}@{int(ball.projections[v])}"];'
        )
    for v in range(ball.node_count):
        for c in ball.children(v):
            lines.append(f"  n{v} -- n{c};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _ball_tree(ball: ColoredBall, v: int) -> dict:
    return {
        "color": ball.color_of(v),
        "projection": int(ball.projections[v]),
        "children": [_ball_tree(ball, c) for c in ball.children(v)],
    }


def ball_to_json(ball: ColoredBall) -> str:
    """Nested JSON of the rooted ball, children in construction order."""
    return json.dumps(
        {"k": ball.k, "radius": ball.radius, "root": _ball_tree(ball, 0)},
        separators=(",", ":"),
    )
