"""Binary motion codes: an 18-bit encoding of manipulation mechanics.

A motion code answers a fixed sequence of taxonomy questions about one
manipulation motion and packs the answers into 18 bits. Bit 0 is the
leftmost character of the printed string:

    bit  0       interaction          0 non-contact / 1 contact
    bit  1       engagement           0 rigid / 1 soft          (contact only)
    bit  2       contact duration     0 discontinuous / 1 continuous
    bits 3-4     active structural outcome    00 none / 10 temporary / 11 permanent
    bits 5-6     passive structural outcome   (same encoding)
    bits 7-11    active trajectory    [recurrent][prismatic DOF 2b][revolute DOF 2b]
    bits 12-16   passive trajectory   (same layout)
    bit  17      tool use             0 hand only / 1 hand with tool

"Active" refers to the manipulator (hand, or hand-held tool), "passive"
to the object acted upon. Two consistency rules are enforced rather than
silently normalized: a non-contact motion cannot answer the engagement or
duration questions (bits 1-2 must be 0), and a structural outcome cannot
be permanent without deforming at all (the pair ``01`` is invalid).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    AlphabetError,
    HierarchyError,
    InconsistentAnswers,
    LengthError,
    StructuralError,
)

CODE_LENGTH = 18

_OUTCOME_NAMES = {
    (False, False): "none",
    (True, False): "temporary",
    (True, True): "permanent",
}
_OUTCOME_BY_NAME = {name: flags for flags, name in _OUTCOME_NAMES.items()}


@dataclass(frozen=True)
class StructuralOutcome:
    """Whether an object's structure changes, and whether the change persists."""

    deforms: bool = False
    permanent: bool = False

    def __post_init__(self) -> None:
        if self.permanent and not self.deforms:
            raise StructuralError("a structural outcome cannot be permanent without deforming")

    @classmethod
    def from_name(cls, name: str) -> "StructuralOutcome":
        try:
            deforms, permanent = _OUTCOME_BY_NAME[name]
        except KeyError:
            raise InconsistentAnswers(
                f"unknown structural outcome {name!r}; expected one of "
                + ", ".join(sorted(_OUTCOME_BY_NAME))
            ) from None
        return cls(deforms, permanent)

    @property
    def bits(self) -> str:
        return f"{self.deforms:d}{self.permanent:d}"

    @property
    def name(self) -> str:
        return _OUTCOME_NAMES[(self.deforms, self.permanent)]


@dataclass(frozen=True)
class TrajectoryDescriptor:
    """Shape of one side's motion: recurrence plus translational and
    rotational degrees of freedom, each counted 0 to 3."""

    recurrent: bool = False
    prismatic_dof: int = 0
    revolute_dof: int = 0

    def __post_init__(self) -> None:
        for field_name in ("prismatic_dof", "revolute_dof"):
            value = getattr(self, field_name)
            if not isinstance(value, int) or not 0 <= value <= 3:
                raise InconsistentAnswers(f"{field_name} must be an integer in 0..3, got {value!r}")

    @classmethod
    def from_bits(cls, bits: str) -> "TrajectoryDescriptor":
        if len(bits) != 5 or any(ch not in "01" for ch in bits):
            raise AlphabetError(f"trajectory descriptor needs 5 binary characters, got {bits!r}")
        return cls(bits[0] == "1", int(bits[1:3], 2), int(bits[3:5], 2))

    @property
    def bits(self) -> str:
        return f"{self.recurrent:d}{self.prismatic_dof:02b}{self.revolute_dof:02b}"

    def describe(self) -> str:
        parts = []
        if self.prismatic_dof:
            parts.append(f"{self.prismatic_dof}-D prismatic")
        if self.revolute_dof:
            parts.append(f"{self.revolute_dof}-D revolute")
        if not parts:
            return "no motion"
        text = " + ".join(parts)
        return f"recurrent {text}" if self.recurrent else text


@dataclass(frozen=True)
class MotionCode:
    """One fully answered taxonomy questionnaire.

    The engagement and duration fields are meaningful only when
    ``contact`` is true; construction rejects any attempt to set them on
    a non-contact code so every reachable instance is valid.
    """

    contact: bool
    soft_engagement: bool = False
    continuous_contact: bool = False
    active_outcome: StructuralOutcome = StructuralOutcome()
    passive_outcome: StructuralOutcome = StructuralOutcome()
    active_trajectory: TrajectoryDescriptor = TrajectoryDescriptor()
    passive_trajectory: TrajectoryDescriptor = TrajectoryDescriptor()
    with_tool: bool = False

    def __post_init__(self) -> None:
        if not self.contact and (self.soft_engagement or self.continuous_contact):
            raise HierarchyError(
                "non-contact motions cannot set engagement (bit 1) or duration (bit 2)"
            )

    @property
    def bits(self) -> str:
        return (
            f"{self.contact:d}{self.soft_engagement:d}{self.continuous_contact:d}"
            + self.active_outcome.bits
            + self.passive_outcome.bits
            + self.active_trajectory.bits
            + self.passive_trajectory.bits
            + f"{self.with_tool:d}"
        )

    def __str__(self) -> str:
        return self.bits

    def describe(self) -> list[tuple[str, str, str]]:
        """Expand the code into (attribute, value, bit range) rows."""
        if self.contact:
            engagement = "soft" if self.soft_engagement else "rigid"
            duration = "continuous" if self.continuous_contact else "discontinuous"
        else:
            engagement = "n/a (non-contact)"
            duration = "n/a (non-contact)"
        return [
            ("interaction", "contact" if self.contact else "non-contact", "bit 0"),
            ("engagement", engagement, "bit 1"),
            ("contact duration", duration, "bit 2"),
            ("active deformation", self.active_outcome.name, "bits 3-4"),
            ("passive deformation", self.passive_outcome.name, "bits 5-6"),
            ("active trajectory", self.active_trajectory.describe(), "bits 7-11"),
            ("passive trajectory", self.passive_trajectory.describe(), "bits 12-16"),
            ("tool use", "hand with tool" if self.with_tool else "hand only", "bit 17"),
        ]


def parse_code(text: str) -> MotionCode:
    """Parse an 18-character binary string into a validated MotionCode.

    Checks run in order: length, alphabet, hierarchy (bits 1-2 against
    bit 0), then structural outcomes. Error messages name the offending
    bit positions.
    """
    if len(text) != CODE_LENGTH:
        raise LengthError(f"motion code must have {CODE_LENGTH} characters, got {len(text)}")
    for position, char in enumerate(text):
        if char not in "01":
            raise AlphabetError(f"bit {position} is {char!r}; motion codes use only 0 and 1")
    if text[0] == "0":
        if text[1] == "1":
            raise HierarchyError("bit 1 (engagement) is set although bit 0 says non-contact")
        if text[2] == "1":
            raise HierarchyError("bit 2 (duration) is set although bit 0 says non-contact")
    if text[3:5] == "01":
        raise StructuralError("bits 3-4 read 01: active outcome permanent without deformation")
    if text[5:7] == "01":
        raise StructuralError("bits 5-6 read 01: passive outcome permanent without deformation")
    return MotionCode(
        contact=text[0] == "1",
        soft_engagement=text[1] == "1",
        continuous_contact=text[2] == "1",
        active_outcome=StructuralOutcome(text[3] == "1", text[4] == "1"),
        passive_outcome=StructuralOutcome(text[5] == "1", text[6] == "1"),
        active_trajectory=TrajectoryDescriptor.from_bits(text[7:12]),
        passive_trajectory=TrajectoryDescriptor.from_bits(text[12:17]),
        with_tool=text[17] == "1",
    )


def format_code(code: MotionCode) -> str:
    """Render a MotionCode as its 18-character binary string."""
    return code.bits


def _as_trajectory(value, side: str) -> TrajectoryDescriptor:
    if isinstance(value, TrajectoryDescriptor):
        return value
    try:
        recurrent, prismatic, revolute = value
        return TrajectoryDescriptor(bool(recurrent), int(prismatic), int(revolute))
    except (TypeError, ValueError):
        raise InconsistentAnswers(
            f"{side} trajectory must be a TrajectoryDescriptor or a "
            f"(recurrent, prismatic, revolute) triple, got {value!r}"
        ) from None


def build_code(
    contact: bool,
    engagement: str | None = None,
    duration: str | None = None,
    active_outcome: str | StructuralOutcome = "none",
    passive_outcome: str | StructuralOutcome = "none",
    active_trajectory: TrajectoryDescriptor | tuple = TrajectoryDescriptor(),
    passive_trajectory: TrajectoryDescriptor | tuple = TrajectoryDescriptor(),
    tool: bool = False,
) -> MotionCode:
    """Assemble a MotionCode from named taxonomy answers.

    ``engagement`` ("rigid"/"soft") and ``duration`` ("discontinuous"/
    "continuous") must be answered for contact motions and must be left
    None for non-contact ones; anything else raises InconsistentAnswers.
    """
    if contact:
        if engagement is None or duration is None:
            raise InconsistentAnswers("contact motions must answer engagement and duration")
    else:
        if engagement is not None or duration is not None:
            raise InconsistentAnswers("non-contact motions take no engagement or duration answer")
    if engagement not in (None, "rigid", "soft"):
        raise InconsistentAnswers(f"engagement must be 'rigid' or 'soft', got {engagement!r}")
    if duration not in (None, "discontinuous", "continuous"):
        raise InconsistentAnswers(
            f"duration must be 'discontinuous' or 'continuous', got {duration!r}"
        )
    if isinstance(active_outcome, str):
        active_outcome = StructuralOutcome.from_name(active_outcome)
    if isinstance(passive_outcome, str):
        passive_outcome = StructuralOutcome.from_name(passive_outcome)
    return MotionCode(
        contact=contact,
        soft_engagement=engagement == "soft",
        continuous_contact=duration == "continuous",
        active_outcome=active_outcome,
        passive_outcome=passive_outcome,
        active_trajectory=_as_trajectory(active_trajectory, "active"),
        passive_trajectory=_as_trajectory(passive_trajectory, "passive"),
        with_tool=bool(tool),
    )
