"""Taxonomy-based binary motion codes for manipulation motions.

The package encodes motions as 18-bit codes, measures mechanically
weighted distances between them, derives trajectory attributes from
6-DOF pose recordings, and embeds code collections in 2-D for
inspection.
"""

from .codec import (
    CODE_LENGTH,
    MotionCode,
    StructuralOutcome,
    TrajectoryDescriptor,
    build_code,
    format_code,
    parse_code,
)
from .embedding import Embedding2D, PcaReduction, TsneParams, pca_reduce, tsne
from .errors import (
    AlphabetError,
    CliError,
    EmbeddingError,
    HierarchyError,
    InconsistentAnswers,
    LengthError,
    MotionCodesError,
    RegistryError,
    StructuralError,
    TrajectoryError,
    UnknownLabel,
    WordVectorError,
)
from .metrics import (
    DistanceMatrix,
    WeightConfig,
    consolidate,
    distance_matrix,
    hamming,
    nearest,
    weighted_distance,
)
from .registry import LabelRegistry, bundled_registry, load_registry, save_registry
from .rotations import (
    axis_angle_from_matrix,
    matrix_from_axis_angle,
    matrix_to_quat,
    quat_to_matrix,
)
from .trajectory import (
    AngleHistogram,
    PoseSample,
    PrismaticAnalysis,
    RevoluteAnalysis,
    Trajectory,
    TrajectoryAttributes,
    analysis_report,
    derive_trajectory_substring,
    load_trajectory,
    prismatic_analysis,
    recurrence_detect,
    revolute_analysis,
)
from .wordvec import (
    WordVectorTable,
    cosine_distance_matrix,
    default_substitutions,
    load_substitutions,
    parse_word_vectors,
    save_word_vectors,
)

__version__ = "0.1.0"

__all__ = [
    "CODE_LENGTH",
    "MotionCode",
    "StructuralOutcome",
    "TrajectoryDescriptor",
    "build_code",
    "format_code",
    "parse_code",
    "Embedding2D",
    "PcaReduction",
    "TsneParams",
    "pca_reduce",
    "tsne",
    "AlphabetError",
    "CliError",
    "EmbeddingError",
    "HierarchyError",
    "InconsistentAnswers",
    "LengthError",
    "MotionCodesError",
    "RegistryError",
    "StructuralError",
    "TrajectoryError",
    "UnknownLabel",
    "WordVectorError",
    "DistanceMatrix",
    "WeightConfig",
    "consolidate",
    "distance_matrix",
    "hamming",
    "nearest",
    "weighted_distance",
    "LabelRegistry",
    "bundled_registry",
    "load_registry",
    "save_registry",
    "axis_angle_from_matrix",
    "matrix_from_axis_angle",
    "matrix_to_quat",
    "quat_to_matrix",
    "AngleHistogram",
    "PoseSample",
    "PrismaticAnalysis",
    "RevoluteAnalysis",
    "Trajectory",
    "TrajectoryAttributes",
    "analysis_report",
    "derive_trajectory_substring",
    "load_trajectory",
    "prismatic_analysis",
    "recurrence_detect",
    "revolute_analysis",
    "WordVectorTable",
    "cosine_distance_matrix",
    "default_substitutions",
    "load_substitutions",
    "parse_word_vectors",
    "save_word_vectors",
    "__version__",
]
