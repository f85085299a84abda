"""Ball census: the complexity profile b(n) of a presentation.

Fast path.  The isomorphism class of the subtree hanging below a lifted node
is a function of (projection, arrival edge, remaining depth), so per-position
ball classes are computed by memoized structural recursion without
materializing any tree.  For a finite presentation every vertex is a census
center; for a ray or line, any position deeper than prefix + N into a
periodic tail sees only tail records inside radius N, hence repeats the class
one period earlier, so the window prefix + N + period is exhaustive and the
census exact.

Oracle.  `brute_force_census` is the independent route: it materializes one
honest patch of the covering tree around a base lift, keys the radius-n ball
of every marked center inside the patch by level-wise integer relabeling
(directed-edge keys, down and up families sharing one id space per height),
and certifies saturation by checking the class sets did not grow across one
full period step of the marked radius.  It never assumes that same-projection
centers agree.

Both routes report classes as canonical byte keys, so their censuses are
comparable object-for-object.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .canon import CanonicalKey, canonical_key
from .cover import (
    ROOT,
    ball_size,
    default_cap,
    extract_ball,
    lift_ball,
    lift_patch,
    transitions,
)
from .errors import CapExceeded, RadiusMismatch, Unsaturated
from .presentation import (
    FinitePresentation,
    QuotientPresentation,
    stability_period,
    vertex_at,
)

# Shared interner: symbolic class ids are comparable across presentations
# within one process.  Canonical byte keys are the cross-run currency.
_INTERN: dict = {}


def _intern(item) -> int:
    got = _INTERN.get(item)
    if got is None:
        got = len(_INTERN)
        _INTERN[item] = got
    return got


def census_window(p: QuotientPresentation, N: int) -> range:
    """Positions whose balls exhaust all radius-<=N classes."""
    if p.kind == "finite":
        return range(len(p.vertices))
    if p.kind == "ray":
        return range(len(p.vertices) + N + p.tail.period)
    return range(
        -(N + p.left_tail.period),
        len(p.vertices) + N + p.right_tail.period,
    )


def _symbolic_ids(p: QuotientPresentation, positions, N: int):
    """Ball class ids per position per radius, via subtree-key recursion."""
    memo: dict = {}

    def sub(pos: int, arrival, r: int) -> int:
        got = memo.get((pos, arrival, r))
        if got is not None:
            return got
        color = vertex_at(p, pos).color
        if r == 0:
            key = _intern((color, ()))
        else:
            kids = []
            for cpos, carr, mult in transitions(p, pos, arrival):
                cid = sub(cpos, carr, r - 1)
                kids.extend([cid] * mult)
            key = _intern((color, tuple(sorted(kids))))
        memo[(pos, arrival, r)] = key
        return key

    return {pos: tuple(sub(pos, ROOT, n) for n in range(N + 1)) for pos in positions}


@dataclass
class ClassEntry:
    sym_id: int
    representative: int
    count: int
    special: Optional[bool]  # None at the top radius (no extension data)
    extension_ids: tuple[int, ...]


class BallCensus:
    """Registry of distinct colored ball classes per radius n <= N."""

    def __init__(self, p: QuotientPresentation, N: int, cap: int,
                 positions, pos_ids):
        self.presentation = p
        self.N = N
        self.cap = cap
        self.positions = tuple(positions)
        self._pos_ids = pos_ids
        self._key_cache: dict = {}
        self.classes: list[list[ClassEntry]] = []
        extensions: list[dict] = [dict() for _ in range(N + 1)]
        for n in range(N):
            for pos in self.positions:
                ids = pos_ids[pos]
                extensions[n].setdefault(ids[n], set()).add(ids[n + 1])
        for n in range(N + 1):
            by_id: dict[int, ClassEntry] = {}
            for pos in self.positions:
                sid = pos_ids[pos][n]
                entry = by_id.get(sid)
                if entry is None:
                    ext = tuple(sorted(extensions[n].get(sid, ())))
                    special = len(ext) >= 2 if n < N else None
                    by_id[sid] = ClassEntry(sid, pos, 1, special, ext)
                else:
                    entry.count += 1
            self.classes.append(list(by_id.values()))
        for n in range(N):
            if len(self.classes[n + 1]) < len(self.classes[n]):
                raise AssertionError("census monotonicity violated")

    def b(self, n: int) -> int:
        if not 0 <= n <= self.N:
            raise RadiusMismatch(f"census holds radii 0..{self.N}, asked {n}")
        return len(self.classes[n])

    def entries(self, n: int) -> list[ClassEntry]:
        if not 0 <= n <= self.N:
            raise RadiusMismatch(f"census holds radii 0..{self.N}, asked {n}")
        return self.classes[n]

    def id_of(self, pos: int, n: int) -> int:
        ids = self._pos_ids.get(pos)
        if ids is None:
            # out-of-window positions resolve lazily (same recursion)
            ids = _symbolic_ids(self.presentation, [pos], self.N)[pos]
            self._pos_ids[pos] = ids
        return ids[n]

    def key_for_id(self, n: int, sym_id: int) -> CanonicalKey:
        got = self._key_cache.get(sym_id)
        if got is not None:
            return got
        rep = next(e.representative for e in self.classes[n] if e.sym_id == sym_id)
        key = canonical_key(lift_ball(self.presentation, rep, n, cap=self.cap))
        self._key_cache[sym_id] = key
        return key

    def key_of(self, pos: int, n: int) -> CanonicalKey:
        return self.key_for_id(n, self.id_of(pos, n))

    def keys_at(self, n: int) -> list[CanonicalKey]:
        return [self.key_for_id(n, e.sym_id) for e in self.entries(n)]

    def special_entries(self, n: int) -> list[ClassEntry]:
        if n >= self.N:
            raise RadiusMismatch(
                f"special flags need extension data; census N={self.N}, asked {n}"
            )
        return [e for e in self.entries(n) if e.special]


def ball_census(p: QuotientPresentation, N: int,
                cap: int | None = None) -> BallCensus:
    """Exact census of colored n-ball classes for all n <= N."""
    cap = cap if cap is not None else default_cap()
    need = ball_size(p.k, N)
    if need > cap:
        raise CapExceeded(need, cap)
    window = census_window(p, N)
    pos_ids = _symbolic_ids(p, window, N)
    return BallCensus(p, N, cap, window, pos_ids)


_CENSUS_CACHE: dict = {}


def cached_census(p: QuotientPresentation, N: int,
                  cap: int | None = None) -> BallCensus:
    """Census memoized per presentation; reuses any deep-enough earlier run."""
    got = _CENSUS_CACHE.get(p)
    if got is not None and got.N >= N:
        return got
    c = ball_census(p, N, cap)
    _CENSUS_CACHE[p] = c
    return c


def complexity(p: QuotientPresentation, n: int, cap: int | None = None) -> int:
    """b(n) from a cached census."""
    return cached_census(p, n, cap).b(n)


def special_balls(c: BallCensus, n: int) -> list[CanonicalKey]:
    """Keys of the n-classes with at least two (n+1)-extensions."""
    return [c.key_for_id(n, e.sym_id) for e in c.special_entries(n)]


# ---------------------------------------------------------------------------
# brute-force oracle


@dataclass
class BruteForceCensus:
    N: int
    b_values: tuple[int, ...]
    keys: tuple[tuple[CanonicalKey, ...], ...]  # per radius, sorted by hex
    saturated: bool
    base: int
    R: int
    step: int

    def b(self, n: int) -> int:
        return self.b_values[n]

    def keys_at(self, n: int) -> frozenset:
        return frozenset(self.keys[n])


def _padded_child_vals(ball, vals: np.ndarray, sent: int) -> np.ndarray:
    """(n x k) matrix: vals of each node's children, sent-padded, unsorted."""
    n = ball.node_count
    k = ball.k
    starts = ball.child_start[:-1]
    counts = np.diff(ball.child_start)
    idx = starts[:, None] + np.arange(k, dtype=np.int64)[None, :]
    valid = np.arange(k)[None, :] < counts[:, None]
    return np.where(valid, vals[np.minimum(idx, n - 1)], np.int64(sent))


_BINCOUNT_LIMIT = 1 << 22


def _fold_relabel(mat: np.ndarray, bound: int) -> tuple[np.ndarray, int]:
    """Row ids for a matrix with entries in [0, bound), folding columnwise.

    The running composite key stays exact; bincount relabeling keeps each
    fold linear as long as the key range is modest, falling back to a sort
    when it is not.  Returns (ids, number of distinct rows).
    """
    cur = mat[:, 0].astype(np.int64)
    cur_bound = int(bound)
    for j in range(1, mat.shape[1]):
        key = cur * bound + mat[:, j]
        rng = cur_bound * bound
        if rng <= _BINCOUNT_LIMIT:
            counts = np.bincount(key, minlength=rng)
            lut = np.cumsum(counts > 0) - 1
            cur = lut[key]
            cur_bound = int(lut[-1]) + 1
        else:
            uniq, cur = np.unique(key, return_inverse=True)
            cur = cur.reshape(-1)
            cur_bound = len(uniq)
    return cur, cur_bound


def _center_class_ids(patch, N: int) -> np.ndarray:
    """(centers x N+1) matrix of within-patch ball class ids per radius.

    Down keys Dn_h mark the height-h subtree below a node; up keys Up_h mark
    the height-h tree hanging at its parent away from it.  Both families are
    relabeled together at each height so a ball row may mix them freely.
    """
    n = patch.node_count
    n_centers = len(patch.marked_centers())
    colors = patch.color_ids.astype(np.int64)
    n_colors = len(patch.alphabet)
    parent_clamped = np.maximum(patch.parents, 0).astype(np.int64)
    beta = np.empty((n_centers, N + 1), dtype=np.int64)
    beta[:, 0] = colors[:n_centers]
    dn = colors
    up = colors[parent_clamped]  # up_0: single-node tree colored like parent
    nvals = n_colors  # dn/up ids currently lie in [0, nvals)
    slot_of = np.arange(n, dtype=np.int64) - patch.child_start[parent_clamped]
    non_root = patch.parents >= 0
    parent_non_root = non_root[parent_clamped]
    for h in range(1, N + 1):
        sent = nvals  # one past every live id; pads short rows
        childvals = _padded_child_vals(patch, dn, sent)
        up_unsorted = childvals[parent_clamped]
        up_unsorted[np.arange(n), np.minimum(slot_of, patch.k - 1)] = np.where(
            parent_non_root, up[parent_clamped], np.int64(sent)
        )
        ball_unsorted = np.concatenate(
            [childvals[:n_centers],
             np.where(non_root[:n_centers], up[:n_centers],
                      np.int64(sent))[:, None]],
            axis=1,
        )
        filler = np.full((n, 1), sent, dtype=np.int64)
        rows = np.concatenate(
            [
                np.column_stack(
                    [colors, np.sort(childvals, axis=1), filler]
                ),
                np.column_stack(
                    [colors[parent_clamped], np.sort(up_unsorted, axis=1), filler]
                ),
                np.column_stack(
                    [colors[:n_centers], np.sort(ball_unsorted, axis=1)]
                ),
            ],
            axis=0,
        )
        ids, nvals = _fold_relabel(rows, max(n_colors, sent + 1))
        dn = ids[:n]
        up = ids[n:2 * n]
        beta[:, h] = ids[2 * n:]
    return beta


def _quotient_diameter(p: FinitePresentation) -> int:
    n = len(p.vertices)
    diam = 0
    for src in range(n):
        dist = {src: 0}
        frontier = [src]
        while frontier:
            nxt = []
            for v in frontier:
                for inc in vertex_at(p, v).neighbor_indices:
                    if inc.neighbor not in dist:
                        dist[inc.neighbor] = dist[v] + 1
                        nxt.append(inc.neighbor)
            frontier = nxt
        diam = max(diam, max(dist.values()))
    return diam


def _default_oracle_geometry(p: QuotientPresentation, N: int):
    """Provably exhaustive (base, R, step); callers may pass tighter values."""
    if p.kind == "finite":
        diam = _quotient_diameter(p)
        step = max(diam, 1)
        return 0, diam + step, step
    step = stability_period(p)
    if p.kind == "ray":
        span = len(p.vertices) + N + step  # window [0, span)
        base = span // 2
        r1 = max(base, span - 1 - base)
    else:
        lo = -(N + p.left_tail.period)
        hi = len(p.vertices) - 1 + N + p.right_tail.period
        base = 0
        r1 = max(hi, -lo)
    return base, r1 + step, step


def brute_force_census(p: QuotientPresentation, N: int, R: int | None = None,
                       base: int | None = None, cap: int | None = None,
                       step: int | None = None,
                       strict: bool = True) -> BruteForceCensus:
    """Independent census from one materialized patch of the covering tree.

    Marked centers are the patch nodes within R of the base lift.  The result
    is saturated when the class sets over centers within R - step already
    equal those within R (one full translation period of the quotient).  In
    strict (verification) mode an unsaturated run raises; otherwise it is
    reported on the result.
    """
    cap = cap if cap is not None else default_cap()
    d_base, d_R, d_step = _default_oracle_geometry(p, N)
    base = base if base is not None else d_base
    step = step if step is not None else d_step
    R = R if R is not None else d_R
    if R <= step:
        R = step + 1
    patch = lift_patch(p, base, R, N, cap=cap)
    beta = _center_class_ids(patch, N)
    inner = int(patch.level_offsets[max(R - step, 0) + 1])
    saturated = True
    byte_keys: list[tuple[CanonicalKey, ...]] = []
    b_values: list[int] = []
    for n in range(N + 1):
        col = beta[:, n]
        ids_all, first = np.unique(col, return_index=True)
        ids_inner = np.unique(col[:inner])
        if len(ids_inner) != len(ids_all):
            saturated = False
        keys = []
        for center in sorted(int(i) for i in first):
            keys.append(canonical_key(extract_ball(patch, center, n)))
        if len(set(keys)) != len(keys):
            raise AssertionError("oracle relabeling split one canonical class")
        byte_keys.append(tuple(sorted(keys, key=lambda kk: kk.hex)))
        b_values.append(len(keys))
    if strict and not saturated:
        raise Unsaturated(
            f"class sets still growing between R={R - step} and R={R}"
        )
    return BruteForceCensus(
        N, tuple(b_values), tuple(byte_keys), saturated, base, R, step
    )


def census_agrees(fast: BallCensus, oracle: BruteForceCensus,
                  upto: int | None = None) -> tuple[bool, str]:
    """Compare key sets and counts radius by radius."""
    upto = min(fast.N, oracle.N) if upto is None else upto
    for n in range(upto + 1):
        if fast.b(n) != oracle.b(n):
            return False, f"b({n}): fast {fast.b(n)} vs oracle {oracle.b(n)}"
        if frozenset(fast.keys_at(n)) != oracle.keys_at(n):
            return False, f"key sets differ at radius {n}"
    return True, f"agree through n={upto}"
