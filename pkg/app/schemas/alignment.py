from typing import Tuple

from pydantic import NonNegativeInt, field_validator

from schemas.common_schemas import FrozenModel


class AlignmentMap(FrozenModel):
    """Word alignment of one sentence pair as 0-based (source, target) index pairs."""

    pairs: Tuple[Tuple[NonNegativeInt, NonNegativeInt], ...] = ()

    @field_validator("pairs")
    @classmethod
    def collapse_duplicates(cls, pairs):
        return tuple(sorted(set(pairs)))

    def targets_of(self, source_index: int) -> Tuple[int, ...]:
        return tuple(t for s, t in self.pairs if s == source_index)
