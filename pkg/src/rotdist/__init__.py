"""Restricted rotation distances between binary trees, computed through Thompson's group F."""

from .errors import (
    InternalInvariantViolation,
    NotApplicable,
    NotApplicableAtStep,
    NotASiblingPair,
    NotDefined,
    NotRightArmSet,
    ParameterViolation,
    ParseError,
    ResourceCap,
    RotDistError,
    SizeMismatch,
    UnspecifiedCase,
)
from .trees import (
    LEAF,
    Arm,
    CaretLocation,
    GTrace,
    Tree,
    all_right,
    caret_count,
    catalan,
    enumerate_trees,
    g_trace,
    has_sibling_pair,
    leaf_exponents,
    left_comb,
    parse_tree,
    render_tree,
    sibling_pairs,
)
from .rotations import (
    Direction,
    Generator,
    RotationStep,
    Word,
    apply_word,
    g_table_conformance,
    predict_g_transition,
    rotate,
    sibling_effect,
)
from .groupf import (
    NormalForm,
    TreePair,
    multiply,
    pair_of_word,
    partial_reduce,
    partially_reduce_pair,
    reduce_pair,
    seminormal_form,
    to_unique_normal_form,
    word_length_infinite,
    word_of_pair,
)
from .distances import (
    DistanceCache,
    DistanceResult,
    GenSet,
    Mode,
    bfs_distance,
    check_lower_bound_family,
    check_sibling_persistence,
    check_upper_bounds,
    d_r_ordinary_diameter,
    d_ra,
    rotation_graph,
    rra_defined,
    witness_sequence,
)
from .families import FamilyInstance, badword, discovered_rr, longra, spinal_parity, spinalword

__version__ = "0.1.0"
