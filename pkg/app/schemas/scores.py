from typing import Optional, Tuple

from pydantic import NonNegativeInt, model_validator

from schemas.common_schemas import FrozenModel
from schemas.document import Span


class PairwiseScores(FrozenModel):
    """Mention-ranking scores of one document; s_a triples are (i, j, value) with j < i."""

    doc_key: str
    language: str = "und"
    sentences: Tuple[Tuple[str, ...], ...]
    mentions: Tuple[Span, ...]
    s_m: Tuple[float, ...]
    s_a: Tuple[Tuple[NonNegativeInt, NonNegativeInt, float], ...] = ()

    @model_validator(mode="after")
    def check_shape(self):
        if len(self.s_m) != len(self.mentions):
            raise ValueError(f"s_m has {len(self.s_m)} scores for {len(self.mentions)} mentions")
        for earlier, later in zip(self.mentions, self.mentions[1:]):
            if not earlier.key < later.key:
                raise ValueError(f"mentions not in strictly increasing order at {later}")
        seen = set()
        for i, j, _ in self.s_a:
            if i >= len(self.mentions):
                raise ValueError(f"s_a index {i} out of range")
            if j >= i:
                raise ValueError(f"s_a pair ({i}, {j}) is not an earlier antecedent")
            if (i, j) in seen:
                raise ValueError(f"s_a pair ({i}, {j}) given twice")
            seen.add((i, j))
        return self


class AntecedentChoice(FrozenModel):
    mention_index: NonNegativeInt
    antecedent: Optional[NonNegativeInt] = None   # None is the dummy antecedent
    # probabilities over (dummy, 0, 1, ..., mention_index - 1)
    distribution: Tuple[float, ...]
