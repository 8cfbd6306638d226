"""Exact engine for Hurwitz self-correspondences of marked spheres.

A portrait (marked points P, self-map F, degree d, branching partitions
br, local degrees rm) determines a Hurwitz space together with two maps
to the moduli space of |P|-marked spheres, remembering the branch
configuration and the source configuration.  This package enumerates
the covers exactly, decomposes them into braid orbits (the components),
computes the degrees of the two maps (the endpoint dynamical degrees),
the polynomiality index, and certified interval bounds for everything
in between.  All arithmetic is exact; decimal output is rendering only.
"""

__version__ = "0.1.0"

from .core import (
    BranchingData,
    CompletionResult,
    ModelViolationError,
    ValidationReport,
    fully_marked_completion,
    make_partition,
    relabel_target,
    require_portrait,
    require_valid,
    trivial_partition,
    validate_branching,
)
from .portrait_io import PortraitParseError, parse_portrait, print_portrait
from .perms import (
    MarkedTuple,
    canonical_key,
    check_marked_tuple,
    compose,
    conjugate_tuple,
    cycle_type,
    cycles,
    identity,
    inverse,
    marked_tuple,
    product,
)
from .counting import (
    CapacityError,
    Ceilings,
    ConstellationSet,
    DEFAULT_CEILINGS,
    enumerate_marked,
    hurwitz_number,
)
from .braid import (
    ComponentDecomposition,
    Orbit,
    decompose_components,
    hurwitz_move,
    hurwitz_move_inverse,
    monodromy_permutation,
    permutation_cycle_lengths,
    pure_braid_move,
    sort_to_declared_order,
)
from .dynamics import (
    BandReport,
    BoundValue,
    ConditionsReport,
    DegreeBoundTable,
    PortraitCycleReport,
    RootValue,
    compare_roots,
    degree_bounds,
    format_significant,
    integer_nth_root,
    inverse_table,
    iterate_counts,
    iterated_dynamics,
    polynomiality_index,
    single_valued_band,
    single_valued_conditions,
)
from .boundary import (
    AdmissibleCover,
    BoundaryAnalysis,
    Branch,
    SourceDegreeReport,
    TargetSplit,
    analyze_boundary,
    branch_degrees,
    component_euler_characteristics,
    enumerate_admissible,
    euler_characteristic,
    expand_branches,
    flatness_check,
    puncture_degrees,
    source_degree_report,
    splits_of,
    stabilize_tree,
)
