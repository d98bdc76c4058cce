"""Projection of mention annotations onto a translation through word alignments."""

import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from core.exceptions import ProjectionError
from schemas.alignment import AlignmentMap
from schemas.document import Document, Entity, PluralLink, Span
from schemas.projection import ProjectionOutcome, ProjectionSummary, RateRow, SanityConfig
from services.base_service import BaseService
from services.document_service import document_mentions
from services.sanity_service import check_translation_sanity
from utils.constants import ProjectionKindEnum
from utils.rendering import percent

logger = logging.getLogger(__name__)


def _check_alignment(alignment: AlignmentMap, target_len: int, source_len: Optional[int]) -> None:
    for s, t in alignment.pairs:
        if t >= target_len:
            raise ProjectionError(f"alignment pair {s}-{t} exceeds target length {target_len}", field="alignments")
        if source_len is not None and s >= source_len:
            raise ProjectionError(f"alignment pair {s}-{t} exceeds source length {source_len}", field="alignments")


def project_mention(
    mention: Span,
    alignment: AlignmentMap,
    target_len: int,
    source_len: Optional[int] = None,
) -> ProjectionOutcome:
    """
    Classify the image of a source mention under a word alignment.

    Aligned: every word of the mention is aligned and the aligned target words
    form one contiguous run. Non-aligned: no word of the mention is aligned.
    Misaligned: everything else (gaps in the target, or partially aligned).
    """
    _check_alignment(alignment, target_len, source_len)
    if source_len is not None and mention.end > source_len:
        raise ProjectionError(f"mention {mention} exceeds source length {source_len}", field="mention")

    targets = set()
    fully_aligned = True
    for word in range(mention.start, mention.end):
        linked = alignment.targets_of(word)
        if linked:
            targets.update(linked)
        else:
            fully_aligned = False

    if not targets:
        return ProjectionOutcome.non_aligned()
    ordered = sorted(targets)
    contiguous = ordered[-1] - ordered[0] + 1 == len(ordered)
    if fully_aligned and contiguous:
        return ProjectionOutcome.aligned(Span.of(mention.sentence_index, ordered[0], ordered[-1] + 1))
    return ProjectionOutcome.misaligned(ordered)


def project_document(
    source: Document,
    alignments: Sequence[AlignmentMap],
    target_sentences: Sequence[Sequence[str]],
    language: Optional[str] = None,
    sanity: Optional[SanityConfig] = None,
) -> Tuple[Document, ProjectionSummary]:
    n_sents = len(source.sentences)
    if len(alignments) != n_sents:
        raise ProjectionError(f"{len(alignments)} alignment lines for {n_sents} source sentences", field="alignments")
    if len(target_sentences) != n_sents:
        raise ProjectionError(f"{len(target_sentences)} target sentences for {n_sents} source sentences",
                              field="target_sentences")

    holes = set()
    if sanity is not None:
        holes = {
            index for index, sentence in enumerate(target_sentences)
            if not check_translation_sanity(sentence, sanity).passed
        }
        if holes:
            logger.warning("%s: %d target sentences failed the sanity check", source.doc_key, len(holes))

    outcomes: Dict[Span, ProjectionOutcome] = {}
    counts = {kind: 0 for kind in ProjectionKindEnum}
    in_failed = 0
    for span in document_mentions(source):
        if span.sentence_index in holes:
            outcome = ProjectionOutcome.non_aligned()
            in_failed += 1
        else:
            outcome = project_mention(
                span,
                alignments[span.sentence_index],
                target_len=len(target_sentences[span.sentence_index]),
                source_len=len(source.sentences[span.sentence_index]),
            )
        outcomes[span] = outcome
        counts[outcome.kind] += 1

    entities = []
    for entity in source.entities:
        spans = sorted({
            outcomes[span].span for span in entity.mentions
            if outcomes[span].kind == ProjectionKindEnum.aligned
        })
        if spans:
            entities.append(Entity(id=entity.id, mentions=tuple(spans)))
    surviving = {entity.id for entity in entities}

    links = []
    for link in source.plural_links:
        anaphor = outcomes.get(link.anaphor)
        antecedents = tuple(entity_id for entity_id in link.antecedent_entities if entity_id in surviving)
        if anaphor is not None and anaphor.kind == ProjectionKindEnum.aligned and len(set(antecedents)) >= 2:
            links.append(PluralLink(anaphor=anaphor.span, antecedent_entities=antecedents))

    target = Document(
        doc_key=source.doc_key,
        language=language or source.language,
        sentences=tuple(tuple(sentence) for sentence in target_sentences),
        entities=tuple(entities),
        plural_links=tuple(links),
        expanded=source.expanded,
    )
    summary = ProjectionSummary(
        aligned=counts[ProjectionKindEnum.aligned],
        misaligned=counts[ProjectionKindEnum.misaligned],
        non_aligned=counts[ProjectionKindEnum.non_aligned],
        in_failed_sentences=in_failed,
    )
    logger.info("%s: projected %d of %d mentions", source.doc_key, summary.aligned, summary.total)
    return target, summary


def aggregate_projection_stats(summaries: Iterable[Tuple[str, ProjectionSummary]]) -> List[RateRow]:
    """Aligned / misaligned / non-aligned percentages per group, then a Total row."""
    groups: Dict[str, ProjectionSummary] = {}
    for group, summary in summaries:
        groups[group] = groups.get(group, ProjectionSummary()) + summary
    if not groups:
        return []

    def row(name: str, summary: ProjectionSummary) -> RateRow:
        return RateRow(
            group=name,
            mentions=summary.total,
            aligned=percent(summary.aligned, summary.total),
            misaligned=percent(summary.misaligned, summary.total),
            non_aligned=percent(summary.non_aligned, summary.total),
        )

    total = ProjectionSummary()
    for summary in groups.values():
        total = total + summary
    return [row(name, groups[name]) for name in sorted(groups)] + [row("Total", total)]


def subword_to_word_map(
    words: Sequence[str],
    subwords: Sequence[str],
    alignment: AlignmentMap,
) -> Dict[int, Optional[int]]:
    """Map each subword index to its word (lowest aligned index); None marks an unmapped subword."""
    _check_alignment(alignment, target_len=len(subwords), source_len=len(words))
    mapping: Dict[int, Optional[int]] = {index: None for index in range(len(subwords))}
    for word, subword in alignment.pairs:
        current = mapping[subword]
        if current is None or word < current:
            mapping[subword] = word
    return mapping


def subword_span_to_word_span(span: Span, mapping: Dict[int, Optional[int]]) -> Optional[Span]:
    """Word span covering the mapped subwords of `span`, or None when none is mapped."""
    words = [mapping.get(index) for index in range(span.start, span.end)]
    words = [word for word in words if word is not None]
    if not words:
        return None
    return Span.of(span.sentence_index, min(words), max(words) + 1)


def _project_job(job) -> Tuple[Document, ProjectionSummary]:
    source, alignments, target_sentences, language, sanity = job
    return project_document(source, alignments, target_sentences, language, sanity)


class ProjectionService(BaseService[tuple, Tuple[Document, ProjectionSummary]]):

    def project_corpus(
        self,
        sources: Sequence[Document],
        alignments: Sequence[Sequence[AlignmentMap]],
        target_sentences: Sequence[Sequence[Sequence[str]]],
        language: Optional[str] = None,
        sanity: Optional[SanityConfig] = None,
    ) -> Tuple[List[Document], List[RateRow]]:
        if not len(sources) == len(alignments) == len(target_sentences):
            raise ProjectionError("sources, alignments and target sentences differ in document count")
        jobs = [
            (source, tuple(doc_alignments), tuple(tuple(s) for s in doc_targets), language, sanity)
            for source, doc_alignments, doc_targets in zip(sources, alignments, target_sentences)
        ]
        results = self.map_documents(_project_job, jobs)
        targets = [target for target, _ in results]
        rates = aggregate_projection_stats((target.language, summary) for target, summary in results)
        return targets, rates
