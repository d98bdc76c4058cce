from typing import List, Optional

from pydantic import BaseModel, Field

from core.config import MIN_RUN, REPEAT_FRACTION
from schemas.document import Document
from schemas.stats import CorpusStats
from utils.constants import SingletonModeEnum, SplitModeEnum


class ScoreRequest(BaseModel):
    key: List[Document]
    response: List[Document]
    singletons: SingletonModeEnum = SingletonModeEnum.include
    split: SplitModeEnum = SplitModeEnum.plain
    per_document: bool = False


class SanityRequest(BaseModel):
    text: str
    repeat_fraction: float = Field(default=REPEAT_FRACTION, gt=0, le=1)
    min_run: int = Field(default=MIN_RUN, ge=1)


class StatsResponse(BaseModel):
    stats: CorpusStats
    split_antecedent_ratio: Optional[str] = None
