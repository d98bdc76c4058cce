from typing import Any, Optional, Tuple

from pydantic import NonNegativeInt, model_serializer, model_validator

from schemas.common_schemas import FrozenModel
from utils.constants import ViolationKindEnum


class Span(FrozenModel):
    """Sentence-local half-open word span [start, end)."""

    sentence_index: NonNegativeInt
    start: NonNegativeInt
    end: NonNegativeInt

    @model_validator(mode="before")
    @classmethod
    def from_triple(cls, data: Any) -> Any:
        # canonical files store spans as [sentence, start, end]
        if isinstance(data, (list, tuple)):
            if len(data) != 3:
                raise ValueError("span must be [sentence, start, end]")
            return {"sentence_index": data[0], "start": data[1], "end": data[2]}
        return data

    @model_serializer
    def to_triple(self) -> list:
        return [self.sentence_index, self.start, self.end]

    @classmethod
    def of(cls, sentence_index: int, start: int, end: int) -> "Span":
        return cls(sentence_index=sentence_index, start=start, end=end)

    @property
    def key(self) -> Tuple[int, int, int]:
        return (self.sentence_index, self.start, self.end)

    @property
    def length(self) -> int:
        return self.end - self.start

    def __lt__(self, other: "Span") -> bool:
        return self.key < other.key

    def __str__(self) -> str:
        return f"{self.sentence_index}:[{self.start},{self.end})"


class Entity(FrozenModel):
    id: str
    mentions: Tuple[Span, ...]


class PluralLink(FrozenModel):
    anaphor: Span
    antecedent_entities: Tuple[str, ...]


class Document(FrozenModel):
    doc_key: str
    language: str = "und"
    sentences: Tuple[Tuple[str, ...], ...]
    entities: Tuple[Entity, ...] = ()
    plural_links: Tuple[PluralLink, ...] = ()
    expanded: bool = False
    # CoNLL columns other than the coreference column, per sentence and token
    columns: Optional[Tuple[Tuple[Tuple[str, ...], ...], ...]] = None


class Violation(FrozenModel):
    doc_key: str
    kind: ViolationKindEnum
    location: str
    message: str
