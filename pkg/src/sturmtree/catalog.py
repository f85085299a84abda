"""Named presentations used throughout the test and verification suites.

Every entry validates on load.  Ray entries list the explicit prefix records
(color, self_adjacency), the prefix edge pairs, then the repeating tail block.
"""

from __future__ import annotations

from .presentation import QuotientPresentation, finite, ray
from .words import (
    PeriodicWord,
    fibonacci_word,
    lift_word_ab,
    lift_word_uniform,
    line_from_word,
)

# Entries whose censuses grow like n + 2 at every tested horizon.
STURMIAN_ENTRIES = (
    "sec2-bounded-type",
    "ex31-sturmian",
    "sturmian-ray-2",
    "sturmian-ray-3",
    "arbitrary-quotient",
    "ep-typeA",
    "ep-typeA-alt",
    "ep-typeB",
)


def example_catalog() -> dict[str, QuotientPresentation]:
    cat: dict[str, QuotientPresentation] = {}

    # one orbit, every vertex alike
    cat["constant"] = finite(3, ["a"], [], selfs=[3])

    # bipartite two-class coloring: a--b with index 3 both ways
    cat["alternating"] = finite(3, ["a", "b"], [(0, 1, 3, 3)])

    # single b-geodesic in an otherwise a-colored tree: b(n) = n + 2 but the
    # quotient data is periodic from position 1 on
    cat["sec2-bounded-type"] = ray(
        3, [("b", 2)], [(1, 1)], [("a", 0)], [(2, 1)]
    )

    # b at every third position, leading pair (3, 2), repeating (1, 2)
    cat["ex31-sturmian"] = ray(
        3, [("b", 0)], [(3, 2)],
        [("a", 0), ("a", 0), ("b", 0)],
        [(1, 2)] * 3,
    )

    # same color pattern, pairs alternating (1,1)/(2,2) after the lead
    cat["sturmian-ray-2"] = ray(
        3, [("b", 0)], [(3, 2)],
        [("a", 0), ("a", 0), ("b", 0)] * 2,
        [(1, 1), (2, 2)] * 3,
    )

    # half-edge at the front, colors alternating, pairs (1, 2)
    cat["sturmian-ray-3"] = ray(
        3, [("a", 1)], [(2, 2)],
        [("b", 0), ("a", 0)],
        [(1, 2)] * 2,
    )

    # ray with loops whose word of a/b blocks is not forced to be periodic;
    # each a has tree-neighbors {a,b,b}, each b has {a,a,b}, except the
    # leftmost vertex which sees {b,b,b}
    cat["arbitrary-quotient"] = ray(
        3,
        [("a", 0), ("b", 1), ("a", 0), ("a", 0), ("b", 1), ("a", 1), ("b", 1)],
        [(3, 1), (1, 2), (1, 1), (2, 1), (1, 1), (1, 1), (1, 2)],
        [("a", 0), ("a", 0), ("b", 1)],
        [(1, 1), (2, 1), (1, 2)],
    )

    # the two eventually-periodic ray shapes at k = 3
    cat["ep-typeA"] = ray(3, [("b", 1)], [(2, 1)], [("a", 0)], [(2, 1)])
    cat["ep-typeA-alt"] = ray(
        3, [("a", 1)], [(2, 1)], [("b", 0), ("a", 0)], [(2, 1), (2, 1)]
    )
    cat["ep-typeB"] = ray(3, [("b", 0)], [(3, 1)], [("a", 0)], [(2, 1)])

    # word-driven lines with small periods (kept small so the brute-force
    # patch census can certify saturation)
    cat["word-lift-uniform"] = lift_word_uniform(
        PeriodicWord(("a", "a", "b")), s=1, t=1, k=3
    )
    cat["word-lift-ab"] = lift_word_ab(
        PeriodicWord(("a", "b", "b")), s1=1, s2=0, t1=1, t2=2, k=3
    )

    # degree-2 coloring by a golden-slope convergent word
    cat["line-fibonacci"] = line_from_word(fibonacci_word(min_denominator=300))

    return cat
