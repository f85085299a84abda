"""Canonical forms of colored balls up to root-fixing isomorphism.

A root-fixing graph isomorphism of two tree balls is exactly a rooted-tree
isomorphism, so canonical equality reduces to the classic bottom-up encoding
with lexicographically sorted child encodings.  Colors are embedded as
length-prefixed tokens, which makes keys comparable across presentations and
across runs.  The full byte string decides equality; the fixed-width digest
only accelerates hashing and names keys in reports.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .cover import ColoredBall
from .errors import RadiusMismatch


@dataclass(frozen=True)
class CanonicalKey:
    data: bytes
    digest: bytes = field(compare=False)

    @property
    def hex(self) -> str:
        return self.digest.hex()

    def __hash__(self):
        return hash(self.digest)

    def __repr__(self):
        return f"CanonicalKey({self.hex[:12]})"


def _key_from_bytes(data: bytes) -> CanonicalKey:
    return CanonicalKey(data, hashlib.blake2b(data, digest_size=16).digest())


def _color_token(color: str) -> bytes:
    raw = color.encode("utf-8")
    return b"%d:" % len(raw) + raw


def _subtree_encodings(ball: ColoredBall) -> list[bytes]:
    """Bottom-up encoding of every node's subtree within the ball."""
    enc: list = [None] * ball.node_count
    for d in range(ball.radius, -1, -1):
        for v in range(ball.level_offsets[d], ball.level_offsets[d + 1]):
            kids = sorted(enc[c] for c in ball.children(v))
            enc[v] = b"(" + _color_token(ball.color_of(v)) + b"".join(kids) + b")"
    return enc


def canonical_key(ball: ColoredBall) -> CanonicalKey:
    """Canonical key of the ball class [B_n(x)].

    Two balls get equal keys exactly when a color-preserving isomorphism maps
    one to the other with root going to root; the key is invariant under any
    permutation of sibling subtrees.
    """
    return _key_from_bytes(_subtree_encodings(ball)[0])


def balls_equivalent(b1: ColoredBall, b2: ColoredBall) -> bool:
    """Whether two balls of equal radius represent the same colored class."""
    if b1.radius != b2.radius:
        raise RadiusMismatch(f"radii differ: {b1.radius} vs {b2.radius}")
    return canonical_key(b1) == canonical_key(b2)


def branches(ball: ColoredBall) -> tuple[CanonicalKey, ...]:
    """Multiset (sorted tuple) of the k root-branch keys.

    The branch through root neighbor x_i is the root plus the full subtree
    hanging through x_i, canonicalized with the root held fixed as a marked
    degree-1 vertex.
    """
    if ball.radius < 1:
        raise RadiusMismatch("branches need radius >= 1")
    enc = _subtree_encodings(ball)
    root_tok = _color_token(ball.color_of(0))
    keys = [
        _key_from_bytes(b"(" + root_tok + enc[c] + b")")
        for c in ball.children(0)
    ]
    return tuple(sorted(keys, key=lambda kk: kk.data))
