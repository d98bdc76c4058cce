"""Line-delimited JSON documents: one canonical record per line."""

import logging
from typing import List, Sequence, Type, TypeVar, Union

from pydantic import BaseModel, ValidationError

from core.exceptions import SchemaError
from schemas.document import Document
from utils.file_utils import as_text

logger = logging.getLogger(__name__)

RecordType = TypeVar("RecordType", bound=BaseModel)


def parse_records(stream: Union[bytes, str], model: Type[RecordType]) -> List[RecordType]:
    records = []
    for lineno, line in enumerate(as_text(stream).splitlines(), start=1):
        if not line.strip():
            continue
        try:
            records.append(model.model_validate_json(line))
        except ValidationError as e:
            error = e.errors()[0]
            field = [part for part in error["loc"]] or None
            raise SchemaError(error["msg"], field=field, line=lineno) from e
    return records


def write_records(records: Sequence[BaseModel]) -> bytes:
    return "".join(record.model_dump_json(exclude_none=True) + "\n" for record in records).encode("utf-8")


def parse_canonical(stream: Union[bytes, str]) -> List[Document]:
    docs = parse_records(stream, Document)
    logger.info("Parsed %d canonical documents", len(docs))
    return docs


def write_canonical(docs: Sequence[Document]) -> bytes:
    return write_records(docs)
