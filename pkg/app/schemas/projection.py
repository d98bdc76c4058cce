from typing import Optional, Tuple

from pydantic import Field, NonNegativeInt

from core.config import MIN_RUN, REPEAT_FRACTION
from schemas.common_schemas import FrozenModel
from schemas.document import Span
from utils.constants import ProjectionKindEnum


class ProjectionOutcome(FrozenModel):
    kind: ProjectionKindEnum
    span: Optional[Span] = None                  # target span when aligned
    targets: Tuple[NonNegativeInt, ...] = ()     # target word indices when misaligned

    @classmethod
    def aligned(cls, span: Span) -> "ProjectionOutcome":
        return cls(kind=ProjectionKindEnum.aligned, span=span)

    @classmethod
    def misaligned(cls, targets) -> "ProjectionOutcome":
        return cls(kind=ProjectionKindEnum.misaligned, targets=tuple(sorted(set(targets))))

    @classmethod
    def non_aligned(cls) -> "ProjectionOutcome":
        return cls(kind=ProjectionKindEnum.non_aligned)


class ProjectionSummary(FrozenModel):
    aligned: NonNegativeInt = 0
    misaligned: NonNegativeInt = 0
    non_aligned: NonNegativeInt = 0
    # mentions dropped because their target sentence failed the sanity check (also in non_aligned)
    in_failed_sentences: NonNegativeInt = 0

    @property
    def total(self) -> int:
        return self.aligned + self.misaligned + self.non_aligned

    def __add__(self, other: "ProjectionSummary") -> "ProjectionSummary":
        return ProjectionSummary(
            aligned=self.aligned + other.aligned,
            misaligned=self.misaligned + other.misaligned,
            non_aligned=self.non_aligned + other.non_aligned,
            in_failed_sentences=self.in_failed_sentences + other.in_failed_sentences,
        )


class RateRow(FrozenModel):
    group: str
    mentions: NonNegativeInt
    aligned: str
    misaligned: str
    non_aligned: str


class SanityConfig(FrozenModel):
    repeat_fraction: float = Field(default=REPEAT_FRACTION, gt=0, le=1)
    min_run: int = Field(default=MIN_RUN, ge=1)


class SanityVerdict(FrozenModel):
    passed: bool
    reason: Optional[str] = None


class SanityRow(FrozenModel):
    group: str
    passed: NonNegativeInt = 0
    failed: NonNegativeInt = 0
