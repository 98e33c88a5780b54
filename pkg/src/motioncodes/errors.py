"""Exception types shared across the toolkit.

Every exception carries a short ``category`` tag. The command-line
interface prefixes messages with ``E<category>:`` so scripts can match
on a stable string without parsing free-form text.
"""


class MotionCodesError(Exception):
    """Base class for all toolkit errors."""

    category = "error"


class LengthError(MotionCodesError):
    """Motion-code string has the wrong number of characters."""

    category = "length"


class AlphabetError(MotionCodesError):
    """Motion-code string contains characters other than 0 and 1."""

    category = "alphabet"


class HierarchyError(MotionCodesError):
    """Dependent bits are set although their parent answer disables them."""

    category = "hierarchy"


class StructuralError(MotionCodesError):
    """Structural-outcome bits claim a permanent change without deformation."""

    category = "structural"


class InconsistentAnswers(MotionCodesError):
    """Taxonomy answers passed to the encoder contradict each other."""

    category = "answers"


class RegistryError(MotionCodesError):
    """Label registry file is malformed or violates registry invariants."""

    category = "registry"


class UnknownLabel(MotionCodesError):
    """A label was requested that the registry does not contain."""

    category = "label"


class TrajectoryError(MotionCodesError):
    """Pose recording is malformed or too short to analyze."""

    category = "trajectory"


class EmbeddingError(MotionCodesError):
    """Embedding input or parameters are unusable."""

    category = "embedding"


class WordVectorError(MotionCodesError):
    """Word-vector table is malformed or lacks a requested word."""

    category = "wordvec"


class CliError(MotionCodesError):
    """Command-line arguments are inconsistent or unsupported."""

    category = "cli"
