"""Exact regular subdivisions, secondary fans and tropical plane curves of
marked lattice polygons."""
from .errors import (
    BaseMismatch,
    BudgetExceeded,
    DegenerateInput,
    DimensionMismatch,
    EdgeNotInSubdivision,
    EmptyCone,
    InvalidSubdivision,
    NotComplementary,
    NotNodal,
    NotParallelogram,
    NotSimple,
    PreconditionViolated,
    TropfanError,
    UnderMarkedCell,
)
from .fan import (
    FanCensus,
    Membership,
    SecondaryCone,
    cone_dim,
    enumerate_effective_subdivisions,
    membership,
    rank,
    secondary_cone,
    severi_cone_test,
    subfan_obstruction_witness,
)
from .geometry import (
    MarkedPolygon,
    Point,
    Segment,
    convex_hull,
    lattice_length,
    lattice_points,
    primitive_vector,
    twice_area,
)
from .multiplicity import (
    MultiplicityReport,
    RationalSubspace,
    count_components_VS,
    principal_index,
    saturated_lattice_basis,
    severi_multiplicity,
    transversal_multiplicity,
)
from .subdivision import (
    ClassificationReport,
    HeightFunction,
    MarkedCell,
    Subdivision,
    classify,
    concave_hull_values,
    edge_equivalence_classes,
    is_effective,
    is_effective_subdivision,
    refines,
    regular_subdivision,
    special_points,
    subdivision_from_cells,
)
from .tropcurve import (
    PointCondition,
    TropicalCurve,
    dual_curve,
    eval_tropical,
    on_curve,
    point_condition_system,
    point_hyperplane_contains,
    s_general_position,
)

__all__ = [name for name in dir() if not name.startswith("_")]
