import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from core.exceptions import StatsError
from schemas.document import Document
from schemas.stats import CorpusStats, StatsRow
from services.base_service import BaseService
from services.document_service import document_mentions
from utils.rendering import round_half_up

logger = logging.getLogger(__name__)

STATS_COLUMNS = [
    ("#sents", "n_sents"),
    ("#mentions", "n_mentions"),
    ("#coreference clusters", "n_clusters_multi"),
    ("#clusters incl. singletons", "n_clusters_total"),
    ("#split-antecedents", "n_split_antecedents"),
    ("#singletons", "n_singletons"),
    ("#docs", "n_docs"),
]

TOTAL = "Total"


def document_stats(doc: Document) -> CorpusStats:
    sizes = [len(set(entity.mentions)) for entity in doc.entities]
    return CorpusStats(
        n_sents=len(doc.sentences),
        n_mentions=len(document_mentions(doc)),
        n_clusters_multi=sum(1 for size in sizes if size >= 2),
        n_singletons=sum(1 for size in sizes if size == 1),
        n_split_antecedents=len(doc.plural_links),
        n_docs=1,
    )


def sum_stats(items: Iterable[CorpusStats]) -> CorpusStats:
    total = CorpusStats()
    for item in items:
        total = total + item
    return total


def split_antecedent_ratio(stats: CorpusStats) -> str:
    """Split antecedents per hundred mentions, one decimal."""
    if stats.n_mentions == 0:
        raise StatsError("split-antecedent ratio is undefined for a corpus without mentions", field="n_mentions")
    return round_half_up(Fraction(100 * stats.n_split_antecedents, stats.n_mentions), 1)


class StatsService(BaseService[Document, CorpusStats]):

    def corpus_stats(
        self,
        groups: Sequence[Tuple[Optional[str], Sequence[Document]]],
        by_language: bool = False,
    ) -> List[StatsRow]:
        """
        One row per (language, split) group plus a Total row.

        `groups` pairs a split label (or None) with its documents; rows are
        keyed by language when `by_language` is set, else by the split label.
        """
        labelled = [(split, doc) for split, docs in groups for doc in docs]
        per_doc = self.map_documents(document_stats, [doc for _, doc in labelled])

        table: Dict[Tuple[str, Optional[str]], CorpusStats] = {}
        for (split, doc), stats in zip(labelled, per_doc):
            group = doc.language if by_language else (split or TOTAL)
            row_split = split if by_language else None
            table[(group, row_split)] = table.get((group, row_split), CorpusStats()) + stats

        rows = [
            StatsRow(group=group, split=split, stats=table[(group, split)])
            for group, split in sorted(table, key=lambda key: (key[0], key[1] or ""))
            if group != TOTAL
        ]
        rows.append(StatsRow(group=TOTAL, stats=sum_stats(per_doc)))
        logger.info("Computed statistics over %d documents in %d groups", len(per_doc), len(rows) - 1)
        return rows


def render_stats_table(rows: Sequence[StatsRow]) -> str:
    header = ["group", "split"] + [label for label, _ in STATS_COLUMNS] + ["split-antecedent %"]
    lines = ["\t".join(header)]
    for row in rows:
        ratio = split_antecedent_ratio(row.stats) if row.stats.n_mentions else ""
        values = [str(getattr(row.stats, field)) for _, field in STATS_COLUMNS]
        lines.append("\t".join([row.group, row.split or ""] + values + [ratio]))
    return "\n".join(lines) + "\n"


def render_split_triples(rows: Sequence[StatsRow], splits: Sequence[str]) -> str:
    """One line per language with "(train, dev, test)" style triples in every column."""
    by_group: Dict[str, Dict[str, CorpusStats]] = {}
    for row in rows:
        if row.group == TOTAL or row.split is None:
            continue
        by_group.setdefault(row.group, {})[row.split] = row.stats

    lines = ["\t".join(["language"] + [label for label, _ in STATS_COLUMNS])]
    for group in sorted(by_group):
        cells = []
        for _, field in STATS_COLUMNS:
            values = [str(getattr(by_group[group].get(split, CorpusStats()), field)) for split in splits]
            cells.append(f"({', '.join(values)})")
        lines.append("\t".join([group] + cells))
    return "\n".join(lines) + "\n"
