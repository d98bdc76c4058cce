import logging
from typing import Dict, List, Sequence, Tuple

from core.exceptions import ScoreInputError
from schemas.document import Document
from schemas.report import ComparisonRow, MetricCounts, MetricScore, ScoreReport
from services.base_service import BaseService
from services.document_service import expand_split_antecedents, strip_singletons
from services.metric_service import (
    b_cubed_counts,
    ceaf_e_counts,
    clusters_of,
    conll_f1,
    lea_counts,
    mention_counts,
    muc_counts,
    score_from_counts,
)
from utils.constants import (
    METRIC_LABELS,
    METRIC_ORDER,
    MetricEnum,
    RenderStyleEnum,
    SingletonModeEnum,
    SplitModeEnum,
)
from utils.rendering import round_half_up, truncate

logger = logging.getLogger(__name__)

KERNELS = {
    MetricEnum.mentions: mention_counts,
    MetricEnum.muc: muc_counts,
    MetricEnum.b_cubed: b_cubed_counts,
    MetricEnum.ceaf_e: ceaf_e_counts,
    MetricEnum.lea: lea_counts,
}

CountTable = Dict[MetricEnum, MetricCounts]


def prepare(doc: Document, singletons: SingletonModeEnum, split: SplitModeEnum) -> Document:
    # expansion first, so plural entities are folded before singletons are judged
    if split == SplitModeEnum.expanded and not doc.expanded:
        doc = expand_split_antecedents(doc)
    if singletons == SingletonModeEnum.exclude:
        doc = strip_singletons(doc)
    return doc


def score_document(key: Document, response: Document) -> CountTable:
    key_clusters = clusters_of(key)
    response_clusters = clusters_of(response)
    return {metric: kernel(key_clusters, response_clusters) for metric, kernel in KERNELS.items()}


def _score_job(job: Tuple[Document, Document, SingletonModeEnum, SplitModeEnum]) -> CountTable:
    key, response, singletons, split = job
    return score_document(prepare(key, singletons, split), prepare(response, singletons, split))


def _scores(counts: CountTable, warnings: List[str]) -> Dict[MetricEnum, MetricScore]:
    scores = {}
    for metric in METRIC_ORDER:
        score, found = score_from_counts(counts[metric], METRIC_LABELS[metric])
        scores[metric] = score
        warnings.extend(found)
    return scores


class ScoringService(BaseService[tuple, CountTable]):

    def __init__(
        self,
        singletons: SingletonModeEnum = SingletonModeEnum.include,
        split: SplitModeEnum = SplitModeEnum.plain,
        **kwargs,
    ):
        super().__init__(**kwargs)
        self.singletons = singletons
        self.split = split

    def pair_documents(self, key_docs: Sequence[Document], response_docs: Sequence[Document]) -> List[Tuple[Document, Document]]:
        key_by_id = {}
        for doc in key_docs:
            if doc.doc_key in key_by_id:
                raise ScoreInputError(f"key document {doc.doc_key!r} appears twice", field="key")
            key_by_id[doc.doc_key] = doc
        response_by_id = {}
        for doc in response_docs:
            if doc.doc_key in response_by_id:
                raise ScoreInputError(f"response document {doc.doc_key!r} appears twice", field="response")
            response_by_id[doc.doc_key] = doc

        unmatched = sorted(set(response_by_id) - set(key_by_id))
        if unmatched:
            raise ScoreInputError(
                f"response documents missing from the key: {', '.join(unmatched)}",
                field="response", input_value=unmatched,
            )

        pairs = []
        for doc_key in sorted(key_by_id):
            key = key_by_id[doc_key]
            response = response_by_id.get(doc_key)
            if response is None:
                logger.warning("No response for key document %s; scoring it as empty", doc_key)
                response = Document(doc_key=doc_key, language=key.language, sentences=key.sentences)
            pairs.append((key, response))
        return pairs

    def score_corpus(
        self,
        key_docs: Sequence[Document],
        response_docs: Sequence[Document],
        per_document: bool = False,
    ) -> ScoreReport:
        pairs = self.pair_documents(key_docs, response_docs)
        jobs = [(key, response, self.singletons, self.split) for key, response in pairs]
        tables = self.map_documents(_score_job, jobs)

        totals: CountTable = {metric: MetricCounts() for metric in METRIC_ORDER}
        for table in tables:
            for metric in METRIC_ORDER:
                totals[metric] = totals[metric] + table[metric]

        warnings: List[str] = []
        scores = _scores(totals, warnings)
        for metric, score in scores.items():
            for name in ("precision", "recall", "f1"):
                value = getattr(score, name)
                if value > 1:
                    warnings.append(
                        f"{METRIC_LABELS[metric]} {name} {truncate(value)} exceeds 1 under {self.split.value} mode"
                    )
        for warning in warnings:
            logger.warning(warning)

        breakdown = None
        if per_document:
            breakdown = {key.doc_key: _scores(table, []) for (key, _), table in zip(pairs, tables)}

        return ScoreReport(
            metrics=scores,
            conll_f1=conll_f1(scores[MetricEnum.muc].f1, scores[MetricEnum.b_cubed].f1, scores[MetricEnum.ceaf_e].f1),
            singletons=self.singletons,
            split=self.split,
            warnings=tuple(warnings),
            per_document=breakdown,
        )


def render_value(value, style: RenderStyleEnum) -> str:
    if style == RenderStyleEnum.percent:
        return round_half_up(value * 100)
    return truncate(value)


def render_report(report: ScoreReport, style: RenderStyleEnum = RenderStyleEnum.decimal) -> str:
    """TSV in the column order of the result tables, one row per metric."""
    lines = ["metric\tP\tR\tF1"]
    for metric in METRIC_ORDER:
        score = report.metrics[metric]
        lines.append("\t".join([
            METRIC_LABELS[metric],
            render_value(score.precision, style),
            render_value(score.recall, style),
            render_value(score.f1, style),
        ]))
    lines.append(f"CoNLL\t\t\t{render_value(report.conll_f1, style)}")
    lines.append(f"# singletons={report.singletons.value} split={report.split.value}")
    lines.extend(f"# warning: {warning}" for warning in report.warnings)
    return "\n".join(lines) + "\n"


def compare_reports(first: ScoreReport, second: ScoreReport, style: RenderStyleEnum = RenderStyleEnum.percent) -> List[ComparisonRow]:
    """Side-by-side F1 of two systems, "first vs second" per metric."""
    rows = [
        ComparisonRow(
            metric=f"{METRIC_LABELS[metric]} F1",
            first=render_value(first.metrics[metric].f1, style),
            second=render_value(second.metrics[metric].f1, style),
        )
        for metric in METRIC_ORDER
    ]
    rows.append(ComparisonRow(
        metric="CoNLL F1",
        first=render_value(first.conll_f1, style),
        second=render_value(second.conll_f1, style),
    ))
    return rows


def render_comparison(rows: Sequence[ComparisonRow]) -> str:
    header = "\t".join(row.metric for row in rows)
    values = "\t".join(f"{row.first} vs {row.second}" for row in rows)
    return f"{header}\n{values}\n"
