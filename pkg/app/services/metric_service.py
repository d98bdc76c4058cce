"""
Coreference metrics over entities given as sets of mention spans.

Every kernel returns pooled numerators and denominators (MetricCounts) so that
documents are merged by summation before dividing. All arithmetic is exact;
overlapping entities (split-antecedent expansion) go through the same formulas.
"""

import logging
from fractions import Fraction
from typing import FrozenSet, List, Sequence, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from core.exceptions import ScoreInputError
from schemas.document import Document, Span
from schemas.report import MetricCounts, MetricScore

logger = logging.getLogger(__name__)

Cluster = FrozenSet[Span]


def clusters_of(doc: Document) -> List[Cluster]:
    return [frozenset(entity.mentions) for entity in doc.entities if entity.mentions]


def _check_pair(key: Document, response: Document) -> None:
    if key.doc_key != response.doc_key:
        raise ScoreInputError(
            f"key document {key.doc_key!r} scored against response {response.doc_key!r}",
            field="doc_key",
        )


def score_from_counts(counts: MetricCounts, label: str = "metric") -> Tuple[MetricScore, List[str]]:
    """Precision, recall and F1; an undefined 0/0 ratio becomes 0 and a warning."""
    warnings = []
    if counts.p_den:
        precision = counts.p_num / counts.p_den
    else:
        precision = Fraction(0)
        warnings.append(f"{label} precision undefined (0/0), reported as 0")
    if counts.r_den:
        recall = counts.r_num / counts.r_den
    else:
        recall = Fraction(0)
        warnings.append(f"{label} recall undefined (0/0), reported as 0")
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else Fraction(0)
    return MetricScore(precision=precision, recall=recall, f1=f1), warnings


def conll_f1(muc_f1, b3_f1, ceaf_f1) -> Fraction:
    return (Fraction(muc_f1) + Fraction(b3_f1) + Fraction(ceaf_f1)) / 3


# --- kernels -----------------------------------------------------------------

def mention_counts(key: Sequence[Cluster], response: Sequence[Cluster]) -> MetricCounts:
    key_mentions = set().union(*key) if key else set()
    response_mentions = set().union(*response) if response else set()
    matched = len(key_mentions & response_mentions)
    return MetricCounts(p_num=matched, p_den=len(response_mentions), r_num=matched, r_den=len(key_mentions))


def _muc_side(key: Sequence[Cluster], response: Sequence[Cluster]) -> Tuple[Fraction, Fraction]:
    numerator = denominator = 0
    for k in key:
        covered = set()
        parts = 0
        for r in response:
            common = k & r
            if common:
                parts += 1
                covered |= common
        parts += len(k - covered)  # unresolved mentions are parts of their own
        numerator += len(k) - parts
        denominator += len(k) - 1
    return Fraction(numerator), Fraction(denominator)


def muc_counts(key: Sequence[Cluster], response: Sequence[Cluster]) -> MetricCounts:
    r_num, r_den = _muc_side(key, response)
    p_num, p_den = _muc_side(response, key)
    return MetricCounts(p_num=p_num, p_den=p_den, r_num=r_num, r_den=r_den)


def _b_cubed_side(key: Sequence[Cluster], response: Sequence[Cluster]) -> Tuple[Fraction, Fraction]:
    numerator = Fraction(0)
    denominator = 0
    for k in key:
        for r in response:
            common = len(k & r)
            if common:
                numerator += Fraction(common * common, len(k))
        denominator += len(k)
    return numerator, Fraction(denominator)


def b_cubed_counts(key: Sequence[Cluster], response: Sequence[Cluster]) -> MetricCounts:
    r_num, r_den = _b_cubed_side(key, response)
    p_num, p_den = _b_cubed_side(response, key)
    return MetricCounts(p_num=p_num, p_den=p_den, r_num=r_num, r_den=r_den)


def phi4(k: Cluster, r: Cluster) -> Fraction:
    return Fraction(2 * len(k & r), len(k) + len(r))


def ceaf_e_counts(key: Sequence[Cluster], response: Sequence[Cluster]) -> MetricCounts:
    similarity = Fraction(0)
    if key and response:
        exact = [[phi4(k, r) for r in response] for k in key]
        matrix = np.array([[float(value) for value in row] for row in exact], dtype=np.float64)
        rows, cols = linear_sum_assignment(matrix, maximize=True)
        similarity = sum((exact[i][j] for i, j in zip(rows, cols)), Fraction(0))
    return MetricCounts(p_num=similarity, p_den=len(response), r_num=similarity, r_den=len(key))


def link(size: int) -> int:
    return size * (size - 1) // 2


def _lea_side(key: Sequence[Cluster], response: Sequence[Cluster]) -> Tuple[Fraction, Fraction]:
    singletons = {r for r in response if len(r) == 1}
    numerator = Fraction(0)
    denominator = 0
    for k in key:
        if len(k) == 1:
            # self-link: resolved only by the identical singleton
            resolution = Fraction(1 if k in singletons else 0)
        else:
            resolution = Fraction(sum(link(len(k & r)) for r in response), link(len(k)))
        numerator += len(k) * resolution
        denominator += len(k)
    return numerator, Fraction(denominator)


def lea_counts(key: Sequence[Cluster], response: Sequence[Cluster]) -> MetricCounts:
    r_num, r_den = _lea_side(key, response)
    p_num, p_den = _lea_side(response, key)
    return MetricCounts(p_num=p_num, p_den=p_den, r_num=r_num, r_den=r_den)


# --- per-document scores ---------------------------------------------------------

def _document_score(kernel, label: str, key: Document, response: Document) -> MetricScore:
    _check_pair(key, response)
    score, warnings = score_from_counts(kernel(clusters_of(key), clusters_of(response)), label)
    for warning in warnings:
        logger.warning("%s: %s", key.doc_key, warning)
    return score


def mention_detection(key: Document, response: Document) -> MetricScore:
    """Exact-span mention matching over unique spans."""
    return _document_score(mention_counts, "Mentions", key, response)


def muc(key: Document, response: Document) -> MetricScore:
    return _document_score(muc_counts, "MUC", key, response)


def b_cubed(key: Document, response: Document) -> MetricScore:
    return _document_score(b_cubed_counts, "B3", key, response)


def ceaf_e(key: Document, response: Document) -> MetricScore:
    return _document_score(ceaf_e_counts, "CEAFe", key, response)


def lea(key: Document, response: Document) -> MetricScore:
    return _document_score(lea_counts, "LEA", key, response)
