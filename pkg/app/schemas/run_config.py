from typing import List, Optional

from pydantic import BaseModel, Field, model_validator

from core.config import JOBS, LOG_LEVEL, MIN_RUN, REPEAT_FRACTION
from utils.constants import (
    DocumentFormatEnum,
    RenderStyleEnum,
    ReportFormatEnum,
    SingletonModeEnum,
    SplitModeEnum,
)


class RunConfig(BaseModel):
    """Validated settings of one command line invocation."""

    subcommand: str
    input: Optional[str] = None
    inputs: List[str] = []
    output: Optional[str] = None
    key: Optional[str] = None
    response: Optional[str] = None
    alignments: Optional[str] = None
    target_sents: Optional[str] = None
    report: Optional[str] = None
    language: Optional[str] = None
    from_format: DocumentFormatEnum = DocumentFormatEnum.canonical
    to_format: DocumentFormatEnum = DocumentFormatEnum.canonical
    key_format: DocumentFormatEnum = DocumentFormatEnum.canonical
    response_format: DocumentFormatEnum = DocumentFormatEnum.canonical
    singletons: SingletonModeEnum = SingletonModeEnum.include
    split: SplitModeEnum = SplitModeEnum.plain
    style: RenderStyleEnum = RenderStyleEnum.decimal
    format: ReportFormatEnum = ReportFormatEnum.tsv
    repeat_fraction: float = Field(default=REPEAT_FRACTION, gt=0, le=1)
    min_run: int = Field(default=MIN_RUN, ge=1)
    jobs: int = Field(default=JOBS, ge=1)
    log_level: str = LOG_LEVEL
    per_document: bool = False

    @model_validator(mode="after")
    def check_consistency(self):
        if self.split == SplitModeEnum.expanded and DocumentFormatEnum.conll in (self.key_format, self.response_format):
            raise ValueError("--split expanded requires canonical key and response (CoNLL cannot carry plural links)")
        return self
