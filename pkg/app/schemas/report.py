from fractions import Fraction
from typing import Dict, Optional, Tuple

from schemas.common_schemas import FrozenModel, Rational
from utils.constants import MetricEnum, SingletonModeEnum, SplitModeEnum

ZERO = Fraction(0)


class MetricCounts(FrozenModel):
    """Pooled numerators and denominators of one metric; summing merges documents."""

    p_num: Rational = ZERO
    p_den: Rational = ZERO
    r_num: Rational = ZERO
    r_den: Rational = ZERO

    def __add__(self, other: "MetricCounts") -> "MetricCounts":
        return MetricCounts(
            p_num=self.p_num + other.p_num,
            p_den=self.p_den + other.p_den,
            r_num=self.r_num + other.r_num,
            r_den=self.r_den + other.r_den,
        )


class MetricScore(FrozenModel):
    precision: Rational
    recall: Rational
    f1: Rational


class ScoreReport(FrozenModel):
    metrics: Dict[MetricEnum, MetricScore]
    conll_f1: Rational
    singletons: SingletonModeEnum = SingletonModeEnum.include
    split: SplitModeEnum = SplitModeEnum.plain
    warnings: Tuple[str, ...] = ()
    per_document: Optional[Dict[str, Dict[MetricEnum, MetricScore]]] = None


class ComparisonRow(FrozenModel):
    metric: str
    first: str
    second: str
