import math
from fractions import Fraction
from typing import Union

Number = Union[Fraction, int]


def _format_scaled(scaled: int, places: int) -> str:
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(places + 1, "0")
    if places == 0:
        return sign + digits
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def truncate(value: Number, places: int = 2) -> str:
    """Render with `places` decimals, dropping the remaining digits (7/6 -> "1.16")."""
    scaled = Fraction(value) * 10 ** places
    return _format_scaled(math.trunc(scaled), places)


def round_half_up(value: Number, places: int = 0) -> str:
    """Render with `places` decimals, halves rounded away from zero (166/3 -> "55")."""
    scaled = Fraction(value) * 10 ** places
    magnitude = math.floor(abs(scaled) + Fraction(1, 2))
    return _format_scaled(magnitude if scaled >= 0 else -magnitude, places)


def percent(numerator: int, denominator: int, places: int = 1) -> str:
    if denominator == 0:
        return round_half_up(0, places)
    return round_half_up(Fraction(100 * numerator, denominator), places)
