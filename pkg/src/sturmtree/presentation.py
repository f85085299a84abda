"""Colored edge-indexed quotient presentations of k-regular trees.

A presentation is a finite description of a colored graph (X, i) whose
universal cover is the k-regular tree: a finite graph, a one-sided ray, or a
bi-infinite line, with per-vertex self-adjacency counts standing in for loops
and half-edges.  At every vertex the self-adjacency plus the sum of outgoing
edge indices must equal k.

Positions: finite graphs are addressed by vertex list index, rays by integers
>= 0, lines by arbitrary integers.  Ray/line vertex records beyond the
explicit region are resolved from eventually-periodic tails by modular
arithmetic.

Edge index convention: the pair (fwd, bwd) on the edge between positions p and
p+1 means i([p, p+1]) = fwd and i([p+1, p]) = bwd.  On finite edges {u, v} the
pair is (i([u, v]), i([v, u])).

Presentations are immutable (frozen dataclasses) and hashable; they are safe
to share across threads once constructed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Union

from .errors import OutOfRange, PeriodError, RegularityError, SchemaError

Color = str


@dataclass(frozen=True)
class RawVertex:
    """One stored vertex record: color token plus self-adjacency count."""

    color: Color
    self_adjacency: int


@dataclass(frozen=True)
class EdgePair:
    """Directed index pair on the edge between consecutive positions."""

    fwd: int
    bwd: int


@dataclass(frozen=True)
class FiniteEdge:
    """Undirected edge {u, v} of a finite presentation with its index pair."""

    u: int
    v: int
    fwd: int  # i([u, v])
    bwd: int  # i([v, u])


@dataclass(frozen=True)
class Tail:
    """Eventually-repeating block of vertex records and edge pairs.

    For a ray (and the right tail of a line), vertices cover positions
    offset, offset+1, ... and edges[j] joins (offset+j, offset+j+1).  For the
    left tail of a line, vertices cover positions -1, -2, ... going left and
    edges[j] joins (-1-j, -j), so edges[0] attaches the tail to the core.
    """

    offset: int
    vertices: tuple[RawVertex, ...]
    edges: tuple[EdgePair, ...]

    @property
    def period(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class IncidentEdge:
    """One incident undirected edge as seen from a fixed endpoint."""

    edge_id: tuple
    neighbor: int
    index_out: int  # i(e) leaving this vertex
    index_in: int  # i(e-bar) leaving the neighbor toward this vertex


@dataclass(frozen=True)
class VertexRecord:
    """Resolved vertex: color, self-adjacency, and incident edge indices."""

    color: Color
    self_adjacency: int
    neighbor_indices: tuple[IncidentEdge, ...]

    @property
    def degree_sum(self) -> int:
        return self.self_adjacency + sum(e.index_out for e in self.neighbor_indices)

    @property
    def signature(self):
        """Position-free record data: color, self-adjacency, index pairs."""
        return (
            self.color,
            self.self_adjacency,
            tuple((e.index_out, e.index_in) for e in self.neighbor_indices),
        )


@dataclass(frozen=True)
class FinitePresentation:
    k: int
    alphabet: tuple[Color, ...]
    vertices: tuple[RawVertex, ...]
    edges: tuple[FiniteEdge, ...]

    kind = "finite"


@dataclass(frozen=True)
class RayPresentation:
    k: int
    alphabet: tuple[Color, ...]
    vertices: tuple[RawVertex, ...]  # positions 0 .. len-1, at least one
    edges: tuple[EdgePair, ...]  # edges[p] joins (p, p+1); len == len(vertices)
    tail: Tail

    kind = "ray"


@dataclass(frozen=True)
class LinePresentation:
    k: int
    alphabet: tuple[Color, ...]
    vertices: tuple[RawVertex, ...]  # core positions 0 .. len-1, at least one
    edges: tuple[EdgePair, ...]  # edges[p] joins (p, p+1); len == len(vertices)-1
    left_tail: Tail
    right_tail: Tail

    kind = "line"


QuotientPresentation = Union[FinitePresentation, RayPresentation, LinePresentation]


# ---------------------------------------------------------------------------
# position resolution


def _ray_record(p: RayPresentation, pos: int) -> RawVertex:
    n = len(p.vertices)
    if pos < n:
        return p.vertices[pos]
    return p.tail.vertices[(pos - n) % p.tail.period]


def _ray_edge(p: RayPresentation, pos: int) -> EdgePair:
    """Edge pair joining (pos, pos+1)."""
    n = len(p.vertices)
    if pos < n:
        return p.edges[pos]
    return p.tail.edges[(pos - n) % p.tail.period]


def _line_record(p: LinePresentation, pos: int) -> RawVertex:
    n = len(p.vertices)
    if 0 <= pos < n:
        return p.vertices[pos]
    if pos >= n:
        return p.right_tail.vertices[(pos - n) % p.right_tail.period]
    return p.left_tail.vertices[(-1 - pos) % p.left_tail.period]


def _line_edge(p: LinePresentation, pos: int) -> EdgePair:
    """Edge pair joining (pos, pos+1)."""
    n = len(p.vertices)
    if 0 <= pos < n - 1:
        return p.edges[pos]
    if pos >= n - 1:
        return p.right_tail.edges[(pos - (n - 1)) % p.right_tail.period]
    return p.left_tail.edges[(-1 - pos) % p.left_tail.period]


def vertex_at(p: QuotientPresentation, pos: int) -> VertexRecord:
    """Resolve a position to its record with incident edge indices.

    Periodic tails are resolved by modular arithmetic, so any in-range
    position works no matter how deep in a tail it lies.
    """
    if p.kind == "finite":
        if not (0 <= pos < len(p.vertices)):
            raise OutOfRange(f"finite presentation has no vertex {pos}")
        raw = p.vertices[pos]
        inc = []
        for j, e in enumerate(p.edges):
            if e.u == pos:
                inc.append(IncidentEdge(("f", j), e.v, e.fwd, e.bwd))
            elif e.v == pos:
                inc.append(IncidentEdge(("f", j), e.u, e.bwd, e.fwd))
        return VertexRecord(raw.color, raw.self_adjacency, tuple(inc))
    if p.kind == "ray":
        if pos < 0:
            raise OutOfRange(f"ray positions start at 0, got {pos}")
        raw = _ray_record(p, pos)
        inc = []
        if pos >= 1:
            left = _ray_edge(p, pos - 1)
            inc.append(IncidentEdge(("s", pos - 1), pos - 1, left.bwd, left.fwd))
        right = _ray_edge(p, pos)
        inc.append(IncidentEdge(("s", pos), pos + 1, right.fwd, right.bwd))
        return VertexRecord(raw.color, raw.self_adjacency, tuple(inc))
    # line
    raw = _line_record(p, pos)
    left = _line_edge(p, pos - 1)
    right = _line_edge(p, pos)
    inc = (
        IncidentEdge(("s", pos - 1), pos - 1, left.bwd, left.fwd),
        IncidentEdge(("s", pos), pos + 1, right.fwd, right.bwd),
    )
    return VertexRecord(raw.color, raw.self_adjacency, tuple(inc))


def positions_of(p: QuotientPresentation) -> range:
    """Explicitly stored positions (finite: all; ray/line: prefix/core)."""
    return range(len(p.vertices))


def stability_period(p: QuotientPresentation) -> int:
    """Translation period of the tail region (1 for finite presentations)."""
    if p.kind == "ray":
        return p.tail.period
    if p.kind == "line":
        return math.lcm(p.left_tail.period, p.right_tail.period)
    return 1


# ---------------------------------------------------------------------------
# validation


def _check_vertex(p: QuotientPresentation, pos: int) -> None:
    rec = vertex_at(p, pos)
    if rec.self_adjacency < 0:
        raise SchemaError(f"negative self-adjacency at position {pos}")
    for e in rec.neighbor_indices:
        if e.index_out < 1 or e.index_in < 1:
            raise SchemaError(f"edge index < 1 on edge {e.edge_id}")
    if rec.degree_sum != p.k:
        raise RegularityError(pos, rec.degree_sum, p.k)
    if rec.color not in p.alphabet:
        raise SchemaError(f"color {rec.color!r} at {pos} not in alphabet")


def _checked_positions(p: QuotientPresentation) -> list[int]:
    """Positions whose records exhaust the presentation's data."""
    if p.kind == "finite":
        return list(range(len(p.vertices)))
    if p.kind == "ray":
        return list(range(len(p.vertices) + p.tail.period + 1))
    lo = -(p.left_tail.period + 1)
    hi = len(p.vertices) + p.right_tail.period + 1
    return list(range(lo, hi))


def validate(p: QuotientPresentation) -> QuotientPresentation:
    """Check degree regularity at every (representative) position.

    Returns the presentation unchanged when every vertex satisfies
    self_adjacency + sum of outgoing indices = k; idempotent.
    """
    if p.k < 2:
        raise SchemaError(f"degree k must be >= 2, got {p.k}")
    if not p.alphabet or len(set(p.alphabet)) != len(p.alphabet):
        raise SchemaError("alphabet must be nonempty without duplicates")
    if p.kind == "finite":
        n = len(p.vertices)
        if n == 0:
            raise SchemaError("finite presentation needs at least one vertex")
        adj = {i: set() for i in range(n)}
        for e in p.edges:
            if not (0 <= e.u < n and 0 <= e.v < n):
                raise SchemaError(f"edge endpoint out of range: {e}")
            if e.u == e.v:
                raise SchemaError(
                    "loops are stored as self-adjacency, not as edges"
                )
            adj[e.u].add(e.v)
            adj[e.v].add(e.u)
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != n:
            raise SchemaError("finite presentation must be connected")
    else:
        if len(p.vertices) < 1:
            raise SchemaError(f"{p.kind} needs at least one explicit vertex")
        tails = (p.tail,) if p.kind == "ray" else (p.left_tail, p.right_tail)
        for t in tails:
            if t.period < 1:
                raise SchemaError("tail period must be >= 1")
            if len(t.edges) != t.period:
                raise SchemaError("tail needs one edge pair per vertex record")
        if p.kind == "ray":
            if len(p.edges) != len(p.vertices):
                raise SchemaError("ray needs len(edges) == len(vertices)")
            if p.tail.offset != len(p.vertices):
                raise SchemaError("ray tail offset must equal prefix length")
        else:
            if len(p.edges) != len(p.vertices) - 1:
                raise SchemaError("line needs len(edges) == len(vertices) - 1")
            if p.right_tail.offset != len(p.vertices):
                raise SchemaError("right tail offset must equal core length")
            if p.left_tail.offset != -1:
                raise SchemaError("left tail offset must be -1")
    for pos in _checked_positions(p):
        _check_vertex(p, pos)
    return p


# ---------------------------------------------------------------------------
# JSON serialization
#
# Schema: {"k": int, "kind": "finite"|"ray"|"line", "alphabet": [str],
#          "vertices": [{"color": str, "self": int}, ...],
#          "edges": [...], "tail": {...}}
# Finite edges are {"u": int, "v": int, "fwd": int, "bwd": int}; ray/line
# edges are {"fwd": int, "bwd": int}.  tail = {"offset": int,
# "period_vertices": [...], "period_edges": [...]}; a line carries
# "left_tail" and "right_tail" instead of "tail".  The serializer emits keys
# in exactly this order and never emits floats.


def _want(obj: dict, key: str, typ, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"missing key {key!r} in {where}")
    val = obj[key]
    if typ is int and isinstance(val, bool):
        raise SchemaError(f"{where}.{key} must be an integer")
    if not isinstance(val, typ):
        raise SchemaError(f"{where}.{key} has wrong type")
    return val


def _parse_raw_vertex(obj, where: str) -> RawVertex:
    color = _want(obj, "color", str, where)
    self_adj = _want(obj, "self", int, where)
    return RawVertex(color, self_adj)


def _parse_edge_pair(obj, where: str) -> EdgePair:
    return EdgePair(_want(obj, "fwd", int, where), _want(obj, "bwd", int, where))


def _parse_tail(obj, where: str) -> Tail:
    offset = _want(obj, "offset", int, where)
    pv = _want(obj, "period_vertices", list, where)
    pe = _want(obj, "period_edges", list, where)
    return Tail(
        offset,
        tuple(_parse_raw_vertex(v, f"{where}.period_vertices") for v in pv),
        tuple(_parse_edge_pair(e, f"{where}.period_edges") for e in pe),
    )


def _normalize_tail(tail: Tail, explicit_len: int, kind: str) -> tuple[Tail, int]:
    """Allow a ray tail to overlap the explicit prefix.

    A tail with offset < len(vertices) re-predicts the overlapped suffix; the
    prediction must match record-by-record, else the declared period is a lie
    (PeriodError).  Returns the tail rebased to offset == explicit_len along
    with the number of verified overlap positions.
    """
    off = tail.offset
    if off > explicit_len or off < 0:
        raise SchemaError(f"{kind} tail offset {off} out of range")
    shift = explicit_len - off
    if shift == 0:
        return tail, 0
    per = tail.period
    vs = tuple(tail.vertices[(j + shift) % per] for j in range(per))
    es = tuple(tail.edges[(j + shift) % per] for j in range(per))
    return Tail(explicit_len, vs, es), shift


def parse_presentation(text: str) -> QuotientPresentation:
    """Parse and fully validate a serialized presentation.

    Raises SchemaError for malformed input, RegularityError when some degree
    sum misses k, and PeriodError when an overlapping tail declaration fails
    to repeat.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise SchemaError("top level must be an object")
    k = _want(obj, "k", int, "top")
    kind = _want(obj, "kind", str, "top")
    alphabet = tuple(_want(obj, "alphabet", list, "top"))
    if not all(isinstance(a, str) for a in alphabet):
        raise SchemaError("alphabet entries must be strings")
    vs = _want(obj, "vertices", list, "top")
    vertices = tuple(_parse_raw_vertex(v, "vertices") for v in vs)
    if kind == "finite":
        edges = []
        for j, e in enumerate(_want(obj, "edges", list, "top")):
            edges.append(
                FiniteEdge(
                    _want(e, "u", int, f"edges[{j}]"),
                    _want(e, "v", int, f"edges[{j}]"),
                    _want(e, "fwd", int, f"edges[{j}]"),
                    _want(e, "bwd", int, f"edges[{j}]"),
                )
            )
        return validate(FinitePresentation(k, alphabet, vertices, tuple(edges)))
    if kind == "ray":
        edges = tuple(
            _parse_edge_pair(e, "edges") for e in _want(obj, "edges", list, "top")
        )
        tail, overlap = _normalize_tail(
            _parse_tail(_want(obj, "tail", dict, "top"), "tail"),
            len(vertices),
            "ray",
        )
        p = RayPresentation(k, alphabet, vertices, edges, tail)
        if overlap:
            _check_tail_overlap(p, overlap)
        return validate(p)
    if kind == "line":
        edges = tuple(
            _parse_edge_pair(e, "edges") for e in _want(obj, "edges", list, "top")
        )
        lt = _parse_tail(_want(obj, "left_tail", dict, "top"), "left_tail")
        rt, overlap = _normalize_tail(
            _parse_tail(_want(obj, "right_tail", dict, "top"), "right_tail"),
            len(vertices),
            "line",
        )
        p = LinePresentation(k, alphabet, vertices, edges, lt, rt)
        if overlap:
            _check_tail_overlap(p, overlap)
        return validate(p)
    raise SchemaError(f"unknown kind {kind!r}")


def _check_tail_overlap(p: QuotientPresentation, overlap: int) -> None:
    """Verify an overlapping tail declaration against the explicit records."""
    n = len(p.vertices)
    tail = p.tail if p.kind == "ray" else p.right_tail
    per = tail.period
    for back in range(1, overlap + 1):
        pos = n - back
        predicted_v = tail.vertices[(pos - n) % per]
        if p.vertices[pos] != predicted_v:
            raise PeriodError(f"declared tail does not repeat at position {pos}")
        predicted_e = tail.edges[(pos - n) % per]
        actual_e = p.edges[pos] if p.kind == "ray" else _line_edge(p, pos)
        if actual_e != predicted_e:
            raise PeriodError(
                f"declared tail does not repeat on edge ({pos}, {pos + 1})"
            )


def _vertex_obj(v: RawVertex) -> dict:
    return {"color": v.color, "self": v.self_adjacency}


def _pair_obj(e: EdgePair) -> dict:
    return {"fwd": e.fwd, "bwd": e.bwd}


def _tail_obj(t: Tail) -> dict:
    return {
        "offset": t.offset,
        "period_vertices": [_vertex_obj(v) for v in t.vertices],
        "period_edges": [_pair_obj(e) for e in t.edges],
    }


def serialize_presentation(p: QuotientPresentation) -> str:
    """Serialize to the canonical JSON form (fixed key order, no floats)."""
    obj = {
        "k": p.k,
        "kind": p.kind,
        "alphabet": list(p.alphabet),
        "vertices": [_vertex_obj(v) for v in p.vertices],
    }
    if p.kind == "finite":
        obj["edges"] = [
            {"u": e.u, "v": e.v, "fwd": e.fwd, "bwd": e.bwd} for e in p.edges
        ]
    else:
        obj["edges"] = [_pair_obj(e) for e in p.edges]
        if p.kind == "ray":
            obj["tail"] = _tail_obj(p.tail)
        else:
            obj["left_tail"] = _tail_obj(p.left_tail)
            obj["right_tail"] = _tail_obj(p.right_tail)
    return json.dumps(obj, separators=(",", ":"))


# ---------------------------------------------------------------------------
# small constructors used across the package


def finite(k, colors, edges, selfs=None, alphabet=None) -> FinitePresentation:
    """Build a finite presentation from colors, FiniteEdge tuples and selfs."""
    n = len(colors)
    selfs = selfs or [0] * n
    alphabet = tuple(alphabet) if alphabet else tuple(sorted(set(colors)))
    return validate(
        FinitePresentation(
            k,
            alphabet,
            tuple(RawVertex(c, s) for c, s in zip(colors, selfs)),
            tuple(FiniteEdge(*e) for e in edges),
        )
    )


def ray(k, prefix, prefix_edges, tail_block, tail_edges, alphabet=None) -> RayPresentation:
    """Build a ray from (color, self) prefix records and tail blocks."""
    verts = tuple(RawVertex(c, s) for c, s in prefix)
    tail = Tail(
        len(verts),
        tuple(RawVertex(c, s) for c, s in tail_block),
        tuple(EdgePair(*e) for e in tail_edges),
    )
    colors = [v.color for v in verts] + [v.color for v in tail.vertices]
    alphabet = tuple(alphabet) if alphabet else tuple(sorted(set(colors)))
    return validate(
        RayPresentation(
            k, alphabet, verts, tuple(EdgePair(*e) for e in prefix_edges), tail
        )
    )


def line(k, core, core_edges, left_block, left_edges, right_block, right_edges,
         alphabet=None) -> LinePresentation:
    """Build a line from core records and left/right tail blocks."""
    verts = tuple(RawVertex(c, s) for c, s in core)
    lt = Tail(
        -1,
        tuple(RawVertex(c, s) for c, s in left_block),
        tuple(EdgePair(*e) for e in left_edges),
    )
    rt = Tail(
        len(verts),
        tuple(RawVertex(c, s) for c, s in right_block),
        tuple(EdgePair(*e) for e in right_edges),
    )
    colors = (
        [v.color for v in verts]
        + [v.color for v in lt.vertices]
        + [v.color for v in rt.vertices]
    )
    alphabet = tuple(alphabet) if alphabet else tuple(sorted(set(colors)))
    return validate(
        LinePresentation(
            k, alphabet, verts, tuple(EdgePair(*e) for e in core_edges), lt, rt
        )
    )


def presentation_to_dot(p: QuotientPresentation, name: str = "quotient") -> str:
    """GraphViz DOT: self-adjacencies as dotted loops, edges labeled "fwd bwd".

    Infinite presentations are drawn on their explicit region plus one full
    period, with an ellipsis node marking each infinite direction.
    """
    lines = [f"graph {name} {{", "  rankdir=LR;"]

    def node(pos):
        rec = vertex_at(p, pos)
        tag = f"v{pos}".replace("-", "m")
        lines.append(f'  {tag} [label="{rec.color}@{pos}"];')
        if rec.self_adjacency:
            lines.append(
                f'  {tag} -- {tag} [style=dotted, label="{rec.self_adjacency}"];'
            )
        return tag

    if p.kind == "finite":
        tags = [node(i) for i in range(len(p.vertices))]
        for e in p.edges:
            lines.append(f'  {tags[e.u]} -- {tags[e.v]} [label="{e.fwd} {e.bwd}"];')
    else:
        if p.kind == "ray":
            span = range(0, len(p.vertices) + p.tail.period + 1)
        else:
            span = range(
                -(p.left_tail.period + 1),
                len(p.vertices) + p.right_tail.period + 1,
            )
        tags = {pos: node(pos) for pos in span}
        for pos in list(span)[:-1]:
            e = _ray_edge(p, pos) if p.kind == "ray" else _line_edge(p, pos)
            lines.append(
                f'  {tags[pos]} -- {tags[pos + 1]} [label="{e.fwd} {e.bwd}"];'
            )
        lines.append('  more [shape=plaintext, label="..."];')
        lines.append(f"  {tags[max(span)]} -- more [style=dashed];")
        if p.kind == "line":
            lines.append('  lmore [shape=plaintext, label="..."];')
            lines.append(f"  lmore -- {tags[min(span)]} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def extend_ray_prefix(p: RayPresentation, upto: int) -> RayPresentation:
    """Equivalent ray whose explicit prefix covers positions 0..upto.

    Useful for editing individual deep positions (the census of the result
    equals the census of the input).
    """
    n = len(p.vertices)
    if upto < n:
        return p
    verts = [_ray_record(p, q) for q in range(upto + 1)]
    edges = [_ray_edge(p, q) for q in range(upto + 1)]
    shift = (upto + 1 - n) % p.tail.period
    per = p.tail.period
    tail = Tail(
        upto + 1,
        tuple(p.tail.vertices[(j + shift) % per] for j in range(per)),
        tuple(p.tail.edges[(j + shift) % per] for j in range(per)),
    )
    return validate(
        RayPresentation(p.k, p.alphabet, tuple(verts), tuple(edges), tail)
    )
