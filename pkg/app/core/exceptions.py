from typing import Any, List, Optional, Union

from starlette.requests import Request
from starlette.responses import JSONResponse


class CorefToolkitError(Exception):
    """Base class for data errors; `detail` mirrors the pydantic error shape."""

    status_code = 422
    error_type = "data_error"

    def __init__(
        self,
        message: str,
        field: Optional[Union[str, List[Union[str, int]]]] = None,  # Support nested field paths
        line: Optional[int] = None,
        input_value: Any = None,
        location: str = "input",
    ):
        if isinstance(field, list):
            loc = [location] + field
        else:
            loc = [location, field] if field is not None else [location]
        if line is not None:
            loc = loc + [f"line {line}"]

        self.message = message
        self.source: Optional[str] = None  # file the error came from, set by loaders
        self.field = field
        self.line = line
        self.loc = loc
        self.detail = [{
            "type": self.error_type,
            "loc": loc,
            "msg": message,
            "input": input_value,
        }]
        super().__init__(self.diagnostic())

    def diagnostic(self) -> str:
        parts = []
        if self.source is not None:
            parts.append(self.source)
        if self.line is not None:
            parts.append(f"line {self.line}")
        if self.field is not None:
            path = self.field if isinstance(self.field, str) else ".".join(str(p) for p in self.field)
            parts.append(path)
        prefix = ", ".join(parts)
        return f"{prefix}: {self.message}" if prefix else self.message


class ParseError(CorefToolkitError):
    error_type = "parse_error"


class SchemaError(CorefToolkitError):
    error_type = "schema_error"


class DocumentError(CorefToolkitError):
    error_type = "document_error"


class ProjectionError(CorefToolkitError):
    error_type = "projection_error"


class ScoreInputError(CorefToolkitError):
    status_code = 400
    error_type = "score_input_error"


class DecodeError(CorefToolkitError):
    error_type = "decode_error"


class StatsError(CorefToolkitError):
    error_type = "stats_error"


async def coref_exception_handler(request: Request, exc: CorefToolkitError):
    return JSONResponse(
        status_code=exc.status_code,
        content={"errors": exc.detail}  # Use "errors" to support multiple issues
    )
