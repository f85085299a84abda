"""Bi-infinite words and their liftings to tree colorings.

Mechanical words use the exact floor formula s(i) = floor((i+1)a + r) -
floor(ia + r) over rational slopes, evaluated with Fraction arithmetic; an
irrational slope is represented by a continued-fraction convergent whose
denominator certifies the window on which letters agree with the limit word.
All lifting constructions produce line presentations whose tails carry the
word's exact period, so their censuses are exact, not sampled.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Union

from .errors import CapExceeded, ForbiddenFactor, ParameterError, Unstable
from .presentation import LinePresentation, line

MAX_MATERIALIZED_PERIOD = 100_000


@dataclass(frozen=True)
class PeriodicWord:
    block: tuple[str, ...]

    kind = "periodic"

    def letter(self, i: int) -> str:
        return self.block[i % len(self.block)]

    @property
    def period(self) -> int:
        return len(self.block)


@dataclass(frozen=True)
class MechanicalWord:
    slope: Fraction
    intercept: Fraction = Fraction(0)
    letters: tuple[str, str] = ("a", "b")
    approximates_irrational: bool = False

    kind = "mechanical"

    def __post_init__(self):
        if not 0 <= self.slope <= 1:
            raise ParameterError(f"slope must lie in [0, 1], got {self.slope}")
        if len(set(self.letters)) != 2:
            raise ParameterError("mechanical words need two distinct letters")

    def letter(self, i: int) -> str:
        a, r = self.slope, self.intercept
        s = floor((i + 1) * a + r) - floor(i * a + r)
        return self.letters[s]

    @property
    def period(self) -> int:
        return self.slope.denominator


@dataclass(frozen=True)
class ExplicitWord:
    core: tuple[str, ...]  # positions 0 .. len-1
    left_block: tuple[str, ...]  # positions -1, -2, ... cycling
    right_block: tuple[str, ...]  # positions len, len+1, ... cycling

    kind = "explicit"

    def letter(self, i: int) -> str:
        if 0 <= i < len(self.core):
            return self.core[i]
        if i >= len(self.core):
            return self.right_block[(i - len(self.core)) % len(self.right_block)]
        return self.left_block[(-1 - i) % len(self.left_block)]

    @property
    def period(self) -> None:
        return None  # eventually periodic, not globally periodic


InfiniteWord = Union[PeriodicWord, MechanicalWord, ExplicitWord]


def word_letter(w: InfiniteWord, i: int) -> str:
    return w.letter(i)


def word_alphabet(w: InfiniteWord) -> tuple[str, ...]:
    if w.kind == "mechanical":
        return w.letters
    if w.kind == "periodic":
        return tuple(sorted(set(w.block)))
    return tuple(sorted(set(w.core) | set(w.left_block) | set(w.right_block)))


def cf_to_fraction(digits) -> Fraction:
    """Value of the continued fraction [a0; a1, a2, ...]."""
    if not digits:
        raise ParameterError("continued fraction needs at least one digit")
    num, den = 1, 0
    for a in reversed(digits):
        num, den = a * num + den, num
    return Fraction(num, den)


def mechanical_from_cf(digits, intercept=Fraction(0),
                       letters=("a", "b")) -> MechanicalWord:
    """Mechanical word whose slope is the given continued fraction value."""
    return MechanicalWord(cf_to_fraction(digits), Fraction(intercept),
                          tuple(letters), approximates_irrational=True)


def fibonacci_word(min_denominator: int = 10**6,
                   intercept=Fraction(0)) -> MechanicalWord:
    """Mechanical word at a convergent of [0; 1, 1, 1, ...].

    The convergent's denominator is pushed past `min_denominator`, so letters
    agree with the golden-slope limit word on any window shorter than that.
    """
    digits = [0, 1]
    while cf_to_fraction(digits).denominator < min_denominator:
        digits.append(1)
    return mechanical_from_cf(digits, intercept)


def letters_window(w: InfiniteWord, lo: int, hi: int) -> list[str]:
    """Letters at positions lo..hi-1, with the convergent-validity guard."""
    if (w.kind == "mechanical" and w.approximates_irrational
            and hi - lo >= w.period):
        raise Unstable(
            f"window of {hi - lo} letters exceeds the convergent denominator "
            f"{w.period}; the approximation is no longer faithful"
        )
    return [w.letter(i) for i in range(lo, hi)]


def word_complexity(w: InfiniteWord, n: int, window: int | None = None) -> int:
    """p(n): distinct length-n factors, counted by brute-force scanning.

    The count over positions [-window, window] must survive doubling the
    window, else Unstable is raised.
    """
    if n == 0:
        return 1
    if window is None:
        window = max(64, 16 * n)

    def count(wd: int) -> int:
        letters = letters_window(w, -wd, wd + n)
        return len({tuple(letters[i:i + n]) for i in range(2 * wd + 1)})

    small, big = count(window), count(2 * window)
    if small != big:
        raise Unstable(
            f"factor count grew from {small} to {big} when the window doubled"
        )
    return small


# ---------------------------------------------------------------------------
# liftings to line presentations


def _line_from_maps(w: InfiniteWord, k: int, rec, edge,
                    stretch: int = 1) -> LinePresentation:
    """Assemble a line presentation from position-indexed record/edge rules.

    `rec(q)` and `edge(q)` give the vertex record at line position q and the
    index pair on (q, q+1).  For periodic and mechanical words the line
    period is stretch * word period; explicit words keep their own tails
    (stretch 1 only), with the core widened by one position on each side
    so both tail blocks repeat exactly.
    """
    period = w.period
    if period is not None:
        lp = period * stretch
        if lp > MAX_MATERIALIZED_PERIOD:
            raise CapExceeded(lp, MAX_MATERIALIZED_PERIOD)
        return line(
            k,
            [rec(0)],
            [],
            [rec(-1 - j) for j in range(lp)],
            [edge(-1 - j) for j in range(lp)],
            [rec(1 + j) for j in range(lp)],
            [edge(j) for j in range(lp)],
        )
    if stretch != 1:
        raise ParameterError(
            "this construction needs a periodic or mechanical word"
        )
    c = len(w.core)
    pl, pr = len(w.left_block), len(w.right_block)
    # core widened to word positions -1..c so tail edges use tail letters only
    return line(
        k,
        [rec(q) for q in range(-1, c + 1)],
        [edge(q) for q in range(-1, c)],
        [rec(-2 - j) for j in range(pl)],
        [edge(-2 - j) for j in range(pl)],
        [rec(c + 1 + j) for j in range(pr)],
        [edge(c + j) for j in range(pr)],
    )


def lift_word_uniform(w: InfiniteWord, s: int, t: int, k: int) -> LinePresentation:
    """Line coloring with constant loop count s and edge index t both ways."""
    if not (s >= 0 and t >= 1 and s + 2 * t == k):
        raise ParameterError(f"need s >= 0, t >= 1, s + 2t = k; got s={s}, t={t}, k={k}")

    def rec(q):
        return (w.letter(q), s)

    def edge(q):
        return (t, t)

    return _line_from_maps(w, k, rec, edge)


def line_from_word(w: InfiniteWord) -> LinePresentation:
    """Degree-2 line: the word itself as a coloring of the 2-regular tree."""
    return lift_word_uniform(w, 0, 1, 2)


def lift_word_alternating(w: InfiniteWord, s1: int, s2: int, s3: int,
                          t1: int, t2: int, t3: int, k: int) -> LinePresentation:
    """Alternating a/b line driven by a two-letter word on the a-positions.

    Line position 2i is colored a and carries (s1, t1) or (s2, t2) according
    to the word letter at i; odd positions are colored b with (s3, t3).
    """
    for s, t in ((s1, t1), (s2, t2), (s3, t3)):
        if not (s >= 0 and t >= 1 and s + 2 * t == k):
            raise ParameterError(
                f"each pair needs s >= 0, t >= 1, s + 2t = k; got ({s}, {t})"
            )
    if s1 == s2:
        raise ParameterError("the two a-vertex loop counts must differ")
    first = word_alphabet(w)[0]  # a constant word uses (s1, t1) throughout

    def params(i):
        return (s1, t1) if w.letter(i) == first else (s2, t2)

    def rec(q):
        if q % 2 == 0:
            s, _ = params(q // 2)
            return ("a", s)
        return ("b", s3)

    def edge(q):
        if q % 2 == 0:  # a at q, b at q+1
            _, t = params(q // 2)
            return (t, t3)
        _, t = params((q + 1) // 2)
        return (t3, t)

    return _line_from_maps(w, k, rec, edge, stretch=2)


def lift_word_ab(w: InfiniteWord, s1: int, s2: int, t1: int, t2: int,
                 k: int) -> LinePresentation:
    """Line colored by a two-letter word with color-dependent indices.

    a-vertices carry index t1 on both line edges and loop count s1;
    b-vertices carry t1 toward a-neighbors, t2 toward b-neighbors and loop
    count s2.  Degree sums force 2*t1 + s1 = k and t1 + t2 + s2 = k, which
    requires every b to have one a-neighbor and one b-neighbor: the factors
    aba and bbb must not occur in the word.
    """
    if not (t1 >= 1 and t2 >= 1 and s1 >= 0 and s2 >= 0):
        raise ParameterError("need t1, t2 >= 1 and s1, s2 >= 0")
    if 2 * t1 + s1 != k or t1 + t2 + s2 != k:
        raise ParameterError(
            f"need 2*t1 + s1 = k and t1 + t2 + s2 = k; got "
            f"t1={t1}, s1={s1}, t2={t2}, s2={s2}, k={k}"
        )
    if s1 == s2:
        raise ParameterError("need s1 != s2 (equal loops is the uniform lift)")
    if set(word_alphabet(w)) - {"a", "b"}:
        raise ParameterError("the base word must be over letters a, b")
    if w.period is not None:
        scan = range(-1, w.period + 2)
    else:
        scan = range(-len(w.left_block) - 2, len(w.core) + len(w.right_block) + 2)
    for i in scan:
        triple = "".join(w.letter(i + d) for d in (-1, 0, 1))
        if triple in ("aba", "bbb"):
            raise ForbiddenFactor(f"factor {triple} around position {i}")

    def rec(q):
        c = w.letter(q)
        return (c, s1 if c == "a" else s2)

    def toward(src, dst):
        if src == "a":
            return t1
        return t1 if dst == "a" else t2

    def edge(q):
        x, y = w.letter(q), w.letter(q + 1)
        return (toward(x, y), toward(y, x))

    return _line_from_maps(w, k, rec, edge)
