"""Type sets, periodicity detection, quotient reconstruction, shape verdicts.

All quantities here are horizon-truncated: a census to radius N+1 yields
special flags up to radius N, so a vertex's observed type set is its true
type set intersected with [0, N].  A profile whose observed maximal type
equals the horizon is flagged censored and treated as unknown by every
downstream check, never as "type exactly N".
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .canon import CanonicalKey, canonical_key
from .census import BallCensus, cached_census
from .cover import extract_ball, lift_ball
from .errors import NotPeriodic, RadiusMismatch
from .presentation import (
    FinitePresentation,
    QuotientPresentation,
    RawVertex,
    FiniteEdge,
    validate,
    vertex_at,
)


@dataclass(frozen=True)
class TypeProfile:
    position: int
    type_set: frozenset[int]  # observed: true type set intersected [0, N]
    observed_max_type: int  # -1 when the observed type set is empty
    censored: bool  # observed_max_type hit the horizon
    class_id: CanonicalKey  # radius-N ball class


def type_profiles(p: QuotientPresentation, N: int,
                  cap: int | None = None) -> dict[int, TypeProfile]:
    """Horizon-N type profile for every census window position."""
    c = cached_census(p, N + 1, cap)
    special_at = [
        {e.sym_id for e in c.special_entries(n)} for n in range(N + 1)
    ]
    out = {}
    for pos in c.positions:
        lam = frozenset(
            n for n in range(N + 1) if c.id_of(pos, n) in special_at[n]
        )
        tau = max(lam) if lam else -1
        out[pos] = TypeProfile(pos, lam, tau, tau == N, c.key_of(pos, N))
    return out


def quotient_neighbors(p: QuotientPresentation, pos: int) -> list[int]:
    """Positions adjacent in the quotient, including pos itself for loops."""
    rec = vertex_at(p, pos)
    nbrs = []
    for inc in rec.neighbor_indices:
        if inc.neighbor not in nbrs:
            nbrs.append(inc.neighbor)
    if rec.self_adjacency > 0:
        nbrs.append(pos)
    return nbrs


@dataclass(frozen=True)
class Violation:
    position: int
    rule: str
    message: str


@dataclass(frozen=True)
class NeighborTypeReport:
    horizon: int
    checked: int
    skipped_censored: int
    skipped_boundary: int
    min_max_type: int
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def neighbor_type_check(p: QuotientPresentation, N: int,
                        cap: int | None = None) -> NeighborTypeReport:
    """Check the neighbor rules for observed maximal types.

    For every uncensored position of observed maximal type m, neighbors must
    have observed maximal type in {m-1, m, m+1}, some neighbor must reach
    m+1, and when m is not the observed minimum some neighbor must drop to
    m-1.  Censored or out-of-window neighbors are unknowns: they never count
    as violations, and the existence rules are only enforced when every
    neighbor is determinate.
    """
    profiles = type_profiles(p, N, cap)
    uncensored = {q: pr for q, pr in profiles.items() if not pr.censored}
    m_min = min((pr.observed_max_type for pr in uncensored.values()), default=-1)
    # the ascend rule is justified by the existence of strictly larger types
    m_max = max(pr.observed_max_type for pr in profiles.values())
    violations = []
    checked = skipped_censored = skipped_boundary = 0
    for pos, pr in sorted(profiles.items()):
        if pr.censored:
            skipped_censored += 1
            continue
        m = pr.observed_max_type
        nbrs = quotient_neighbors(p, pos)
        if any(q not in profiles for q in nbrs):
            skipped_boundary += 1
            continue
        checked += 1
        nbr_profiles = [profiles[q] for q in nbrs]
        determinate = all(not npr.censored for npr in nbr_profiles)
        for npr in nbr_profiles:
            if not npr.censored and abs(npr.observed_max_type - m) > 1:
                violations.append(Violation(
                    pos, "range",
                    f"neighbor {npr.position} has max type "
                    f"{npr.observed_max_type}, center has {m}",
                ))
        if determinate:
            taus = {npr.observed_max_type for npr in nbr_profiles}
            if m < m_max and m + 1 not in taus:
                violations.append(Violation(
                    pos, "ascend", f"no neighbor of max type {m + 1}"
                ))
            if m > m_min and m - 1 not in taus:
                violations.append(Violation(
                    pos, "descend", f"no neighbor of max type {m - 1}"
                ))
    return NeighborTypeReport(
        N, checked, skipped_censored, skipped_boundary, m_min,
        tuple(violations),
    )


def detect_periodic(c: BallCensus) -> Optional[int]:
    """Smallest n with b(n+1) = b(n), or None if no plateau was observed."""
    for n in range(c.N):
        if c.b(n + 1) == c.b(n):
            return n
    return None


def is_sturmian_up_to(c: BallCensus, N: int) -> bool:
    """Whether b(n) = n + 2 for all 0 <= n <= N."""
    if N > c.N:
        raise RadiusMismatch(f"census only reaches {c.N}, asked {N}")
    return all(c.b(n) == n + 2 for n in range(N + 1))


def reconstruct_quotient(p: QuotientPresentation, n: int,
                         cap: int | None = None) -> FinitePresentation:
    """Finite quotient presentation built from the radius-n classes.

    Requires a census plateau at some radius <= n.  Vertices are the
    radius-n classes; the directed index from class [B_n(x)] toward a class
    C counts tree-neighbors of x whose radius-n ball lies in C.  Neighbors in
    x's own class become self-adjacency.  The result validates and its own
    census reproduces the input census.
    """
    c = cached_census(p, n + 1, cap)
    plateau = detect_periodic(c)
    if plateau is None or plateau > n:
        raise NotPeriodic(
            f"no plateau at radius <= {n} (b values {[c.b(i) for i in range(c.N + 1)]})"
        )
    entries = c.entries(n)
    index_of = {e.sym_id: i for i, e in enumerate(entries)}
    m = len(entries)
    counts = [[0] * m for _ in range(m)]
    key_to_class = {c.key_for_id(n, e.sym_id): i for i, e in enumerate(entries)}
    for i, e in enumerate(entries):
        ball = lift_ball(p, e.representative, n + 1, cap=c.cap)
        for child in ball.children(0):
            sub = extract_ball(ball, child, n)
            j = key_to_class[canonical_key(sub)]
            counts[i][j] += 1
    vertices = tuple(
        RawVertex(vertex_at(p, e.representative).color, counts[i][i])
        for i, e in enumerate(entries)
    )
    edges = []
    for i in range(m):
        for j in range(i + 1, m):
            if counts[i][j] or counts[j][i]:
                edges.append(FiniteEdge(i, j, counts[i][j], counts[j][i]))
    return validate(
        FinitePresentation(p.k, p.alphabet, vertices, tuple(edges))
    )


# ---------------------------------------------------------------------------
# shape classification

FINITE_GRAPH = "FiniteGraph"
RAY_WITH_LOOPS = "RayWithLoops"
LINE_WITH_LOOPS = "LineWithLoops"
EP_TYPE_A = "EventuallyPeriodicTypeA"
EP_TYPE_B = "EventuallyPeriodicTypeB"
OTHER = "Other"


@dataclass(frozen=True)
class ShapeVerdict:
    shape: str
    evidence: tuple[tuple[str, str], ...]

    def to_json(self) -> str:
        return json.dumps(
            {"shape": self.shape, "evidence": dict(self.evidence)},
            separators=(",", ":"),
        )


def classify_shape(p: QuotientPresentation) -> ShapeVerdict:
    """Purely syntactic pattern match on the presentation.

    A ray matches EventuallyPeriodicTypeA when it carries a single leading
    half-edge of index 1 and every index pair is (k-1, 1); it matches TypeB
    when it has no loops, a leading pair (k, 1) and all later pairs (k-1, 1).
    Any other ray is reported as RayWithLoops.
    """
    if p.kind == "finite":
        return ShapeVerdict(FINITE_GRAPH, (("vertices", str(len(p.vertices))),))
    if p.kind == "line":
        return ShapeVerdict(LINE_WITH_LOOPS, (("core", str(len(p.vertices))),))
    k = p.k
    span = len(p.vertices) + p.tail.period
    recs = [vertex_at(p, q) for q in range(span + 1)]
    pairs = [
        (recs[q].neighbor_indices[-1].index_out,
         recs[q + 1].neighbor_indices[0].index_out)
        for q in range(span)
    ]
    selfs = [r.self_adjacency for r in recs]
    evidence = (
        ("leading_self", str(selfs[0])),
        ("leading_pair", f"{pairs[0][0]} {pairs[0][1]}"),
        ("later_pairs", " ".join(sorted({f"{a} {b}" for a, b in pairs[1:]}))),
        ("later_selfs", " ".join(sorted({str(s) for s in selfs[1:]}))),
    )
    tail_ok = all(pr == (k - 1, 1) for pr in pairs[1:])
    no_later_loops = all(s == 0 for s in selfs[1:])
    if (selfs[0] == 1 and no_later_loops and tail_ok
            and pairs[0] == (k - 1, 1)):
        return ShapeVerdict(EP_TYPE_A, evidence)
    if (selfs[0] == 0 and no_later_loops and tail_ok
            and pairs[0] == (k, 1)):
        return ShapeVerdict(EP_TYPE_B, evidence)
    return ShapeVerdict(RAY_WITH_LOOPS, evidence)
