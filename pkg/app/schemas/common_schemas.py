from fractions import Fraction
from typing import Annotated, Any

from pydantic import BaseModel, ConfigDict, PlainSerializer, PlainValidator, WithJsonSchema


class FrozenModel(BaseModel):
    """Base model for immutable domain values."""

    model_config = ConfigDict(frozen=True, extra="forbid", arbitrary_types_allowed=True)


def _to_fraction(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("expected a rational, got a boolean")
    if isinstance(value, (int, str)):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"invalid rational {value!r}") from e
    raise ValueError(f"invalid rational {value!r}")


def _fraction_to_str(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


# Exact rational, serialized as "num/den"
Rational = Annotated[
    Fraction,
    PlainValidator(_to_fraction),
    PlainSerializer(_fraction_to_str, return_type=str),
    WithJsonSchema({"type": "string", "pattern": r"^-?\d+/\d+$"}),
]
