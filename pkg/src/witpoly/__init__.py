"""Exact-arithmetic witness sets in simple polygons.

Visibility polygons with window/wall structure, the witness-set verifier,
candidate-set discretization, exact discrete/continuous solving, and the
PMR3SAT hardness reduction with its equivalence harness.
"""

from .discretize import Budget, CandidateSet, maximal_chord, witgen
from .errors import (
    EmbeddingInvalid,
    InvalidPolygon,
    InvariantViolated,
    NotAWindow,
    NotAWitnessSet,
    NotReflex,
    NotSimplicial,
    NotVisible,
    ParseError,
    PointOutside,
    SegmentOutside,
    TooLarge,
    WitpolyError,
)
from .geometry import Point2, Rat, Segment, midpoint, orientation, pt, seg, segment_intersection
from .hardness import (
    Clause,
    PMR3SATInstance,
    ReductionOutput,
    reduce,
    sat_bruteforce,
    verify_reduction,
)
from .polygon import PolygonWithHoles, SimplePolygon, ray_shoot
from .regions import PolygonalRegion, region_boolean, regions_symmetric_difference_empty
from .solver import (
    ConflictGraph,
    SolveResult,
    conflict_graph,
    grid_oracle,
    max_independent_set,
    solve_continuous,
    solve_discrete,
)
from .structure import (
    MovableRegion,
    NeighborWitnessGraph,
    VisibilitySplit,
    movable_region,
    neighbor_witness_graph,
    perfect_elimination_ordering,
    simplicial_replace,
    visibility_split,
)
from .visibility import (
    VisibilityPolygon,
    Window,
    has_arms,
    restricted_visibility,
    visibility_polygon,
    visible,
    weak_visibility,
)
from .witness import (
    NVisDecomposition,
    disjoint_via_windows,
    nvis,
    regions_intersect,
    verify_witness_set,
)
