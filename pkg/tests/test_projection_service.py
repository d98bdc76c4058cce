import random

import pytest

from conftest import make_split_antecedent_doc, span
from core.exceptions import ProjectionError
from schemas.alignment import AlignmentMap
from schemas.document import Document, Entity
from schemas.projection import ProjectionOutcome, ProjectionSummary, SanityConfig
from services.alignment_service import parse_alignments
from services.canonical_service import parse_canonical, write_canonical
from services.conll_service import parse_conll, write_conll
from services.document_service import validate_document
from services.projection_service import (
    ProjectionService,
    aggregate_projection_stats,
    project_document,
    project_mention,
    subword_span_to_word_span,
    subword_to_word_map,
)
from utils.constants import ProjectionKindEnum, ViolationKindEnum


def alignment(*pairs) -> AlignmentMap:
    return AlignmentMap(pairs=pairs)


def classify(mention, pairs):
    """Straight-line restatement of the aligned / misaligned / non-aligned rules."""
    words = range(mention.start, mention.end)
    targets = sorted({t for s, t in pairs if s in words})
    if not targets:
        return ProjectionKindEnum.non_aligned, None
    every_word = all(any(s == w for s, _ in pairs) for w in words)
    if every_word and targets == list(range(targets[0], targets[-1] + 1)):
        return ProjectionKindEnum.aligned, (targets[0], targets[-1] + 1)
    return ProjectionKindEnum.misaligned, None


class TestProjectMention:

    def test_crossing_links_still_aligned(self):
        assert project_mention(span(0, 0, 2), alignment((0, 1), (1, 0)), 3) == \
            ProjectionOutcome.aligned(span(0, 0, 2))

    def test_gap_is_misaligned(self):
        outcome = project_mention(span(0, 0, 2), alignment((0, 0), (1, 5)), 6)
        assert outcome.kind == ProjectionKindEnum.misaligned
        assert outcome.targets == (0, 5)

    def test_no_links_is_non_aligned(self):
        assert project_mention(span(0, 2, 3), alignment((0, 0), (1, 1)), 3).kind == ProjectionKindEnum.non_aligned

    def test_unaligned_middle_word_is_misaligned(self):
        outcome = project_mention(span(0, 0, 3), alignment((0, 0), (2, 1)), 2)
        assert outcome.kind == ProjectionKindEnum.misaligned
        assert outcome.targets == (0, 1)

    def test_reordered_mention(self):
        # "the red car" -> "car red the"-style inversion, every word linked across
        pairs = parse_alignments("0-4 1-3 2-2 3-0 4-1")[0]
        outcome = project_mention(span(0, 0, 3), pairs, 5)
        assert outcome == ProjectionOutcome.aligned(span(0, 2, 5))

    def test_out_of_bounds_alignment(self):
        with pytest.raises(ProjectionError, match="target length"):
            project_mention(span(0, 0, 1), alignment((0, 4)), 3)
        with pytest.raises(ProjectionError, match="source length"):
            project_mention(span(0, 0, 1), alignment((5, 0)), 3, source_len=2)

    def test_partition_on_random_alignments(self):
        rng = random.Random(8)
        counts = {kind: 0 for kind in ProjectionKindEnum}
        for _ in range(1000):
            source_len, target_len = rng.randint(1, 12), rng.randint(1, 12)
            start = rng.randrange(source_len)
            mention = span(0, start, rng.randint(start + 1, source_len))
            pairs = tuple({(rng.randrange(source_len), rng.randrange(target_len))
                           for _ in range(rng.randint(0, 2 * source_len))})
            outcome = project_mention(mention, alignment(*pairs), target_len, source_len)
            kind, bounds = classify(mention, pairs)
            assert outcome.kind == kind
            if kind == ProjectionKindEnum.aligned:
                assert (outcome.span.start, outcome.span.end) == bounds
            counts[outcome.kind] += 1
        assert sum(counts.values()) == 1000


def one_sentence(entities, tokens=("w0", "w1", "w2", "w3", "w4")) -> Document:
    return Document(doc_key="d", sentences=(tokens,), entities=entities)


class TestProjectDocument:

    def test_all_aligned_keeps_structure(self, split_antecedent_doc):
        identity = [alignment(*[(i, i) for i in range(len(s))]) for s in split_antecedent_doc.sentences]
        target, summary = project_document(
            split_antecedent_doc, identity, split_antecedent_doc.sentences, language="hin_Deva")
        assert target.entities == split_antecedent_doc.entities
        assert target.plural_links == split_antecedent_doc.plural_links
        assert target.language == "hin_Deva"
        assert summary == ProjectionSummary(aligned=6)

    def test_lost_entity_is_dropped(self):
        source = one_sentence((
            Entity(id="0", mentions=(span(0, 0, 1), span(0, 1, 2))),
            Entity(id="1", mentions=(span(0, 3, 4), span(0, 4, 5))),
        ))
        target, summary = project_document(source, [alignment((3, 0), (4, 1))], [("t0", "t1")])
        assert [e.id for e in target.entities] == ["1"]
        assert (summary.aligned, summary.misaligned, summary.non_aligned) == (2, 0, 2)
        assert summary.total == 4

    def test_same_target_span_within_entity_collapses(self):
        source = one_sentence((Entity(id="0", mentions=(span(0, 0, 1), span(0, 1, 2))),))
        target, _ = project_document(source, [alignment((0, 0), (1, 0))], [("t0",)])
        assert target.entities[0].mentions == (span(0, 0, 1),)

    def test_same_target_span_across_entities_is_kept_in_both(self):
        source = one_sentence((
            Entity(id="0", mentions=(span(0, 0, 1), span(0, 3, 4))),
            Entity(id="1", mentions=(span(0, 1, 2), span(0, 4, 5))),
        ))
        target, summary = project_document(source, [alignment((0, 0), (1, 0), (3, 1), (4, 2))], [("t0", "t1", "t2")])
        assert [(e.id, e.mentions) for e in target.entities] == [
            ("0", (span(0, 0, 1), span(0, 1, 2))),
            ("1", (span(0, 0, 1), span(0, 2, 3))),
        ]
        assert summary.aligned == 4
        assert [v.kind for v in validate_document(target)] == [ViolationKindEnum.shared_span]

    def test_plural_link_needs_surviving_antecedents(self, split_antecedent_doc):
        # drop "Mary" in both sentences where it appears
        pairs = [
            alignment((0, 0), (1, 1), (3, 3), (4, 4)),
            alignment(*[(i, i) for i in range(6)]),
            alignment((1, 1), (2, 2), (3, 3), (4, 4), (5, 5)),
        ]
        target, summary = project_document(split_antecedent_doc, pairs, split_antecedent_doc.sentences)
        assert [e.id for e in target.entities] == ["1", "3"]
        assert target.plural_links == ()
        assert summary.non_aligned == 2

    def test_sentence_count_mismatch(self, split_antecedent_doc):
        with pytest.raises(ProjectionError, match="alignment lines"):
            project_document(split_antecedent_doc, [AlignmentMap()], split_antecedent_doc.sentences)

    def test_failed_translations_are_holes(self, split_antecedent_doc):
        identity = [alignment(*[(i, i) for i in range(len(s))]) for s in split_antecedent_doc.sentences]
        targets = list(split_antecedent_doc.sentences)
        targets[2] = ("!",) * 6
        _, summary = project_document(split_antecedent_doc, identity, targets, sanity=SanityConfig())
        assert summary.in_failed_sentences == 2
        assert summary.non_aligned == 2
        assert summary.aligned == 4

    def test_projected_documents_round_trip(self):
        source = one_sentence((Entity(id="0", mentions=(span(0, 0, 3),)),), tokens=("the", "red", "car"))
        target, _ = project_document(source, parse_alignments("0-2 1-1 2-0"), [("car", "red", "the")])
        assert parse_canonical(write_canonical([target])) == [target]
        data, _ = write_conll([target])
        assert parse_conll(data) == [target]


class TestAggregation:

    def test_one_decimal_rates(self):
        rows = aggregate_projection_stats([("hin_Deva", ProjectionSummary(aligned=725, misaligned=114, non_aligned=162))])
        assert [(r.group, r.mentions, r.aligned, r.misaligned, r.non_aligned) for r in rows] == [
            ("hin_Deva", 1001, "72.4", "11.4", "16.2"),
            ("Total", 1001, "72.4", "11.4", "16.2"),
        ]

    def test_empty(self):
        assert aggregate_projection_stats([]) == []

    def test_equal_groups(self):
        summary = ProjectionSummary(aligned=3, misaligned=1, non_aligned=1)
        a, b, total = aggregate_projection_stats([("a", summary), ("b", summary)])
        assert (total.aligned, total.misaligned, total.non_aligned) == (a.aligned, a.misaligned, a.non_aligned)
        assert total.mentions == 10

    def test_partition_invariance(self):
        parts = [("x", ProjectionSummary(aligned=1, non_aligned=2)), ("x", ProjectionSummary(misaligned=4))]
        merged = [("x", parts[0][1] + parts[1][1])]
        assert aggregate_projection_stats(parts) == aggregate_projection_stats(merged)
        assert aggregate_projection_stats(parts[::-1]) == aggregate_projection_stats(parts)


class TestProjectionService:

    def test_corpus_rates_by_language(self, split_antecedent_doc):
        sources = [split_antecedent_doc, make_split_antecedent_doc("other")]
        identity = [[alignment(*[(i, i) for i in range(len(s))]) for s in doc.sentences] for doc in sources]
        targets, rates = ProjectionService(jobs=2).project_corpus(
            sources, identity, [doc.sentences for doc in sources], language="tam_Taml")
        assert [t.doc_key for t in targets] == ["both_left", "other"]
        assert [(r.group, r.mentions, r.aligned) for r in rates] == [("tam_Taml", 12, "100.0"), ("Total", 12, "100.0")]

    def test_document_count_mismatch(self, split_antecedent_doc):
        with pytest.raises(ProjectionError):
            ProjectionService().project_corpus([split_antecedent_doc], [], [])


class TestSubwordMapping:

    def test_split_word(self):
        words = ["கடுமையான", "மழை"]
        subwords = ["கடுமைய்", "ஆன", "மழை"]
        mapping = subword_to_word_map(words, subwords, alignment((0, 0), (0, 1), (1, 2)))
        assert mapping == {0: 0, 1: 0, 2: 1}

    def test_identity(self):
        words = ["a", "b", "c"]
        assert subword_to_word_map(words, words, alignment((0, 0), (1, 1), (2, 2))) == {0: 0, 1: 1, 2: 2}

    def test_unmapped_and_lowest_word(self):
        mapping = subword_to_word_map(["a", "b"], ["x", "y", "z"], alignment((1, 0), (0, 0)))
        assert mapping == {0: 0, 1: None, 2: None}

    def test_out_of_bounds(self):
        with pytest.raises(ProjectionError):
            subword_to_word_map(["a"], ["x"], alignment((0, 3)))

    def test_span_conversion(self):
        mapping = {0: 0, 1: 0, 2: 1, 3: None}
        assert subword_span_to_word_span(span(0, 1, 3), mapping) == span(0, 0, 2)
        assert subword_span_to_word_span(span(0, 3, 4), mapping) is None
