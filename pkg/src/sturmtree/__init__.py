"""Subword complexity of vertex colorings of regular trees.

Colorings are handled through colored edge-indexed quotient presentations
(finite graphs, rays, and lines whose universal cover is the k-regular
tree).  The package lifts colored balls, canonicalizes them up to
root-fixing isomorphism, counts classes per radius, detects periodicity with
constructive quotient reconstruction, classifies quotient shapes, and builds
the word-driven line colorings.
"""

from .canon import CanonicalKey, balls_equivalent, branches, canonical_key
from .catalog import STURMIAN_ENTRIES, example_catalog
from .census import (
    BallCensus,
    BruteForceCensus,
    ball_census,
    brute_force_census,
    cached_census,
    census_agrees,
    census_window,
    complexity,
    special_balls,
)
from .classify import (
    NeighborTypeReport,
    ShapeVerdict,
    TypeProfile,
    classify_shape,
    detect_periodic,
    is_sturmian_up_to,
    neighbor_type_check,
    reconstruct_quotient,
    type_profiles,
)
from .cover import (
    ColoredBall,
    ball_size,
    ball_to_dot,
    ball_to_json,
    extract_ball,
    lift_ball,
    lift_patch,
    transitions,
    truncate,
)
from .errors import (
    CapExceeded,
    ForbiddenFactor,
    NotPeriodic,
    OutOfRange,
    ParameterError,
    PeriodError,
    RadiusMismatch,
    RegularityError,
    SchemaError,
    SturmtreeError,
    Unsaturated,
    Unstable,
)
from .presentation import (
    EdgePair,
    FiniteEdge,
    FinitePresentation,
    LinePresentation,
    QuotientPresentation,
    RawVertex,
    RayPresentation,
    Tail,
    VertexRecord,
    extend_ray_prefix,
    finite,
    line,
    parse_presentation,
    presentation_to_dot,
    ray,
    serialize_presentation,
    stability_period,
    validate,
    vertex_at,
)
from .words import (
    ExplicitWord,
    InfiniteWord,
    MechanicalWord,
    PeriodicWord,
    cf_to_fraction,
    fibonacci_word,
    lift_word_ab,
    lift_word_alternating,
    lift_word_uniform,
    line_from_word,
    mechanical_from_cf,
    word_complexity,
    word_letter,
)

__version__ = "0.1.0"
