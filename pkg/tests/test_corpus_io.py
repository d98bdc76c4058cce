import pytest

from conftest import make_split_antecedent_doc, span
from core.exceptions import DocumentError, ParseError, SchemaError
from schemas.alignment import AlignmentMap
from schemas.document import Document, Entity
from services.alignment_service import parse_alignments, read_target_sentences, write_alignments
from services.canonical_service import parse_canonical, write_canonical
from services.conll_service import parse_conll, token_column, write_conll
from services.document_service import expand_split_antecedents

SIMPLE_CONLL = """#begin document test
0\tThe\t(0
1\told\t-
2\tman\t0)
3\tsmiled\t-

0\tHe\t(1|(0)
1\tleft\t1)

#end document
"""


def conll(*rows: str, key: str = "t") -> str:
    return "\n".join([f"#begin document {key}", *rows, "#end document", ""])


class TestParseConll:

    def test_multi_token_mention(self):
        doc, = parse_conll(conll("0\tThe\t(0", "1\told\t-", "2\tman\t0)"))
        assert doc.doc_key == "t"
        assert doc.sentences == (("The", "old", "man"),)
        assert [(e.id, e.mentions) for e in doc.entities] == [("0", (span(0, 0, 3),))]

    def test_single_token_and_open_on_one_token(self):
        doc, = parse_conll(SIMPLE_CONLL)
        assert [(e.id, e.mentions) for e in doc.entities] == [
            ("0", (span(0, 0, 3), span(1, 0, 1))),
            ("1", (span(1, 0, 2),)),
        ]
        assert doc.columns is None

    def test_unclosed_mention_names_entity_and_line(self):
        with pytest.raises(ParseError) as info:
            parse_conll(conll("0\tThe\t(3", "1\tman\t-"))
        assert "entity 3" in info.value.message
        assert info.value.line == 2

    def test_same_entity_opened_twice(self):
        with pytest.raises(ParseError, match="entity 0 opened"):
            parse_conll(conll("0\ta\t(0", "1\tb\t(0", "2\tc\t0)", "3\td\t0)"))

    def test_close_and_reopen_on_one_token(self):
        with pytest.raises(ParseError, match="overlapping") as info:
            parse_conll(conll("0\ta\t(0", "1\tb\t0)|(0", "2\tc\t0)"))
        assert info.value.line == 4

    def test_single_inside_closed_mention(self):
        with pytest.raises(ParseError, match="overlapping"):
            parse_conll(conll("0\ta\t(0", "1\tb\t0)|(0)"))

    def test_close_without_open(self):
        with pytest.raises(ParseError, match="never opened") as info:
            parse_conll(conll("0\ta\t-", "1\tb\t2)"))
        assert info.value.line == 3

    def test_column_count_must_be_stable(self):
        with pytest.raises(ParseError, match="expected 3 columns") as info:
            parse_conll(conll("0\ta\t-", "1\tb\tX\t-"))
        assert info.value.line == 3

    def test_malformed_atom(self):
        with pytest.raises(ParseError, match="malformed"):
            parse_conll(conll("0\ta\t(x)"))

    def test_missing_end(self):
        with pytest.raises(ParseError, match="no end line"):
            parse_conll("#begin document t\n0\ta\t-\n")

    def test_nested_mentions_of_different_entities(self):
        doc, = parse_conll(conll("0\tHis\t(0|(1)", "1\tdog\t0)"))
        assert {e.id: e.mentions for e in doc.entities} == {"0": (span(0, 0, 2),), "1": (span(0, 0, 1),)}

    def test_mention_count_equals_open_markers(self):
        text = SIMPLE_CONLL
        docs = parse_conll(text)
        opens = text.count("(")
        assert sum(len(e.mentions) for d in docs for e in d.entities) == opens

    def test_conll_2012_layout_reads_word_column(self):
        row = "bc/cnn/00\t0\t{i}\t{w}\tNN\t*\t-\t-\t-\tSpeaker#1\t*\t{c}"
        doc, = parse_conll(conll(row.format(i=0, w="Peace", c="(4"), row.format(i=1, w="talks", c="4)")))
        assert doc.sentences == (("Peace", "talks"),)
        assert doc.columns is not None
        assert token_column(12) == 3 and token_column(3) == 1

    def test_language_is_assigned(self):
        doc, = parse_conll(SIMPLE_CONLL, language="hin_Deva")
        assert doc.language == "hin_Deva"


class TestWriteConll:

    def test_round_trip_is_byte_stable(self):
        data, warnings = write_conll(parse_conll(SIMPLE_CONLL))
        assert warnings == []
        assert data.decode("utf-8") == SIMPLE_CONLL
        again, _ = write_conll(parse_conll(data))
        assert again == data

    def test_passthrough_columns_survive(self):
        row = "bc/cnn/00\t0\t{i}\t{w}\tNN\t*\t-\t-\t-\tSpeaker#1\t*\t{c}"
        text = conll(row.format(i=0, w="Peace", c="(4"), row.format(i=1, w="talks", c="4)"), "")
        data, _ = write_conll(parse_conll(text))
        assert data.decode("utf-8") == text

    def test_plural_links_dropped_with_warning(self, split_antecedent_doc):
        data, warnings = write_conll([split_antecedent_doc])
        assert len(warnings) == 1
        assert "1:[0,1)" in warnings[0]
        doc, = parse_conll(data)
        assert doc.plural_links == ()
        assert len(doc.entities) == 3

    def test_expanded_documents_rejected(self, split_antecedent_doc):
        with pytest.raises(DocumentError):
            write_conll([expand_split_antecedents(split_antecedent_doc)])

    def test_whitespace_token_rejected(self):
        doc = Document(doc_key="d", sentences=(("New York", "is", "big"),))
        with pytest.raises(DocumentError, match="whitespace") as info:
            write_conll([doc])
        assert info.value.loc == ["input", "sentences", 0, 0]

    def test_empty_document_list(self):
        assert write_conll([]) == (b"", [])

    def test_non_numeric_ids_are_renumbered(self):
        doc = Document(doc_key="d", sentences=(("a", "b"),), entities=(Entity(id="x", mentions=(span(0, 0, 2),)),))
        data, _ = write_conll([doc])
        assert "(0\n" in data.decode("utf-8").replace("\t", "\n")


class TestCanonical:

    def test_plural_links_round_trip(self, split_antecedent_doc):
        data = write_canonical([split_antecedent_doc])
        assert parse_canonical(data) == [split_antecedent_doc]
        assert write_canonical(parse_canonical(data)) == data

    def test_expanded_overlap_round_trips(self, split_antecedent_doc):
        expanded = expand_split_antecedents(split_antecedent_doc)
        assert parse_canonical(write_canonical([expanded])) == [expanded]

    def test_span_wire_shape(self, split_antecedent_doc):
        line = write_canonical([split_antecedent_doc]).decode("utf-8")
        assert '"mentions":[[0,0,1],[2,3,4]]' in line
        assert line.endswith("\n") and line.count("\n") == 1

    def test_missing_field_is_a_schema_error(self):
        with pytest.raises(SchemaError) as info:
            parse_canonical(b'{"doc_key": "x"}\n')
        assert info.value.line == 1
        assert "sentences" in info.value.loc

    def test_error_line_number(self, split_antecedent_doc):
        data = write_canonical([split_antecedent_doc]) + b'{"doc_key": "y", "sentences": [["a"]], "bogus": 1}\n'
        with pytest.raises(SchemaError) as info:
            parse_canonical(data)
        assert info.value.line == 2

    def test_conll_and_canonical_agree(self):
        docs = parse_conll(SIMPLE_CONLL)
        assert parse_canonical(write_canonical(docs)) == docs


class TestAlignments:

    def test_pairs(self):
        alignment, = parse_alignments("0-1 1-0 2-2\n")
        assert alignment.pairs == ((0, 1), (1, 0), (2, 2))

    def test_empty_line(self):
        assert parse_alignments("0-0\n\n") == [AlignmentMap(pairs=((0, 0),)), AlignmentMap()]

    def test_duplicates_collapse(self):
        assert parse_alignments("0-1 0-1")[0].pairs == ((0, 1),)

    def test_order_invariance(self):
        assert parse_alignments("2-2 0-1 1-0 0-1") == parse_alignments("0-1 1-0 2-2")

    @pytest.mark.parametrize("token", ["0-x", "-1-2", "3", "1:2"])
    def test_malformed_pairs(self, token):
        with pytest.raises(ParseError) as info:
            parse_alignments(f"0-0\n0-0 {token}\n")
        assert info.value.line == 2

    def test_write(self):
        assert write_alignments(parse_alignments("1-0 0-1\n\n")) == b"0-1 1-0\n\n"

    def test_target_sentences(self):
        assert read_target_sentences("राम ने  फल खाया\n\n") == [("राम", "ने", "फल", "खाया"), ()]

    def test_targets_of(self):
        assert parse_alignments("0-1 0-3 1-2")[0].targets_of(0) == (1, 3)
