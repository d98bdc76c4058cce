"""Mention-ranking decoding over precomputed mention and antecedent scores."""

import logging
from typing import List, Optional, Sequence, Union

import numpy as np
from scipy.cluster.hierarchy import DisjointSet

from core.exceptions import DecodeError
from schemas.document import Document, Entity
from schemas.scores import AntecedentChoice, PairwiseScores
from services.base_service import BaseService
from services.canonical_service import parse_records

logger = logging.getLogger(__name__)

DUMMY = None  # the dummy antecedent; S(i, DUMMY) is always 0


def antecedent_matrix(scores: PairwiseScores) -> np.ndarray:
    """Dense s_a with -inf for every pair the score record omits."""
    n = len(scores.mentions)
    matrix = np.full((n, n), -np.inf, dtype=np.float64)
    for i, j, value in scores.s_a:
        matrix[i, j] = value
    return matrix


def pair_score(scores: PairwiseScores, i: int, j: Optional[int] = DUMMY, s_a: Optional[np.ndarray] = None) -> float:
    if not 0 <= i < len(scores.mentions):
        raise DecodeError(f"mention index {i} out of range", field="i")
    if j is DUMMY:
        return 0.0
    if not 0 <= j < i:
        raise DecodeError(f"antecedent {j} must precede mention {i}", field="j")
    if s_a is None:
        s_a = antecedent_matrix(scores)
    return float(scores.s_m[i] + scores.s_m[j] + s_a[i, j])


def candidate_scores(scores: PairwiseScores, i: int, s_a: Optional[np.ndarray] = None) -> np.ndarray:
    """S(i, y) for y in (dummy, 0, ..., i-1)."""
    if s_a is None:
        s_a = antecedent_matrix(scores)
    s_m = np.asarray(scores.s_m, dtype=np.float64)
    return np.concatenate(([0.0], s_m[i] + s_m[:i] + s_a[i, :i]))


def antecedent_distribution(scores: PairwiseScores, i: int, s_a: Optional[np.ndarray] = None) -> np.ndarray:
    if not 0 <= i < len(scores.mentions):
        raise DecodeError(f"mention index {i} out of range", field="i")
    values = candidate_scores(scores, i, s_a)
    # the dummy entry is 0, so the max is finite and -inf entries come out exactly 0
    shifted = np.exp(values - values.max())
    return shifted / shifted.sum()


def choose_antecedent(values: np.ndarray) -> Optional[int]:
    """Best candidate of (dummy, 0, ..., i-1); ties go to the dummy, then to the closest antecedent."""
    antecedents = values[1:]
    if antecedents.size == 0:
        return DUMMY
    best = antecedents.max()
    if not best > 0.0:
        return DUMMY
    return int(np.flatnonzero(antecedents == best)[-1])


def antecedent_choices(scores: PairwiseScores) -> List[AntecedentChoice]:
    s_a = antecedent_matrix(scores)
    choices = []
    for i in range(len(scores.mentions)):
        values = candidate_scores(scores, i, s_a)
        choices.append(AntecedentChoice(
            mention_index=i,
            antecedent=choose_antecedent(values),
            distribution=tuple(float(p) for p in antecedent_distribution(scores, i, s_a)),
        ))
    return choices


def decode(scores: PairwiseScores) -> List[Entity]:
    """Greedy per-mention argmax, links merged into clusters ordered by first mention."""
    s_a = antecedent_matrix(scores)
    clusters = DisjointSet(range(len(scores.mentions)))
    for i in range(len(scores.mentions)):
        j = choose_antecedent(candidate_scores(scores, i, s_a))
        if j is not DUMMY:
            clusters.merge(i, j)

    groups = sorted(clusters.subsets(), key=min)
    return [
        Entity(id=str(number), mentions=tuple(scores.mentions[index] for index in sorted(group)))
        for number, group in enumerate(groups)
    ]


def decode_document(scores: PairwiseScores) -> Document:
    entities = decode(scores)
    logger.debug("%s: %d mentions decoded into %d entities", scores.doc_key, len(scores.mentions), len(entities))
    return Document(
        doc_key=scores.doc_key,
        language=scores.language,
        sentences=scores.sentences,
        entities=tuple(entities),
    )


def parse_score_file(stream: Union[bytes, str]) -> List[PairwiseScores]:
    return parse_records(stream, PairwiseScores)


class DecoderService(BaseService[PairwiseScores, Document]):

    def decode_corpus(self, records: Sequence[PairwiseScores]) -> List[Document]:
        return self.map_documents(decode_document, list(records))
