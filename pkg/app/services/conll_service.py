"""CoNLL-2012 coreference column reader and writer."""

import logging
import re
from typing import Dict, List, Optional, Sequence, Tuple, Union

from core.config import DEFAULT_LANGUAGE
from core.exceptions import DocumentError, ParseError
from schemas.document import Document, Entity, Span
from services.document_service import validate_document
from utils.file_utils import as_text

logger = logging.getLogger(__name__)

BEGIN = "#begin document"
END = "#end document"
NO_ANNOTATION = "-"

OPEN_RE = re.compile(r"^\((\d+)$")
CLOSE_RE = re.compile(r"^(\d+)\)$")
SINGLE_RE = re.compile(r"^\((\d+)\)$")
WHITESPACE_RE = re.compile(r"\s")

# rows with at least this many columns follow the CoNLL-2012 layout (word in column 3)
CONLL_2012_MIN_COLUMNS = 12


def token_column(n_columns: int) -> int:
    return 3 if n_columns >= CONLL_2012_MIN_COLUMNS else 1


class _DocumentBuilder:
    def __init__(self, doc_key: str, line: int, language: str):
        self.doc_key = doc_key
        self.begin_line = line
        self.language = language
        self.n_columns: Optional[int] = None
        self.sentences: List[Tuple[str, ...]] = []
        self.columns: List[Tuple[Tuple[str, ...], ...]] = []
        self.tokens: List[str] = []
        self.rows: List[Tuple[str, ...]] = []
        self.open: Dict[int, Tuple[int, int]] = {}   # entity id -> (start word, line)
        self.mentions: Dict[int, List[Span]] = {}

    def add_row(self, cols: List[str], line: int) -> None:
        if self.n_columns is None:
            if len(cols) < 3:
                raise ParseError(f"expected at least 3 columns, found {len(cols)}", line=line)
            self.n_columns = len(cols)
        elif len(cols) != self.n_columns:
            raise ParseError(f"expected {self.n_columns} columns, found {len(cols)}", line=line)

        word = len(self.tokens)
        self.tokens.append(cols[token_column(self.n_columns)])
        self.rows.append(tuple(cols[:-1]))

        coref = cols[-1]
        if coref == NO_ANNOTATION:
            return
        for atom in coref.split("|"):
            single = SINGLE_RE.match(atom)
            opening = OPEN_RE.match(atom)
            closing = CLOSE_RE.match(atom)
            if single:
                entity_id = int(single.group(1))
                if entity_id in self.open:
                    raise ParseError(f"entity {entity_id} opened while another of its mentions is open", line=line)
                self._add(entity_id, word, word + 1, line)
            elif opening:
                entity_id = int(opening.group(1))
                if entity_id in self.open:
                    raise ParseError(f"entity {entity_id} opened while another of its mentions is open", line=line)
                self.open[entity_id] = (word, line)
            elif closing:
                entity_id = int(closing.group(1))
                if entity_id not in self.open:
                    raise ParseError(f"entity {entity_id} closed but never opened", line=line)
                start, _ = self.open.pop(entity_id)
                self._add(entity_id, start, word + 1, line)
            else:
                raise ParseError(f"malformed coreference annotation {atom!r}", line=line, input_value=coref)

    def _add(self, entity_id: int, start: int, end: int, line: int) -> None:
        span = Span.of(len(self.sentences), start, end)
        spans = self.mentions.setdefault(entity_id, [])
        if span in spans:
            raise ParseError(f"entity {entity_id} repeats mention {span}", line=line)
        for other in spans:
            if other.sentence_index == span.sentence_index and other.start < span.end and span.start < other.end:
                raise ParseError(f"entity {entity_id} has overlapping mentions {other} and {span}", line=line)
        spans.append(span)

    def end_sentence(self) -> None:
        if self.open:
            entity_id, (_, open_line) = min(self.open.items(), key=lambda item: item[1][1])
            raise ParseError(
                f"entity {entity_id} opened at line {open_line} is never closed in its sentence",
                line=open_line,
            )
        if not self.tokens:
            return
        self.sentences.append(tuple(self.tokens))
        self.columns.append(tuple(self.rows))
        self.tokens, self.rows = [], []

    def finish(self, line: int) -> Document:
        self.end_sentence()
        entities = tuple(
            Entity(id=str(entity_id), mentions=tuple(sorted(spans)))
            for entity_id, spans in sorted(self.mentions.items())
        )
        doc = Document(
            doc_key=self.doc_key,
            language=self.language,
            sentences=tuple(self.sentences),
            entities=entities,
            columns=None if self._default_columns() else tuple(self.columns),
        )
        violations = validate_document(doc)
        if violations:
            raise ParseError(violations[0].message, field=violations[0].location, line=line)
        return doc

    def _default_columns(self) -> bool:
        # [word index, token] rows carry nothing beyond the sentences themselves
        return all(
            row == (str(word), token)
            for sentence, rows in zip(self.sentences, self.columns)
            for word, (token, row) in enumerate(zip(sentence, rows))
        )


def parse_conll(stream: Union[bytes, str], language: str = DEFAULT_LANGUAGE) -> List[Document]:
    docs: List[Document] = []
    current: Optional[_DocumentBuilder] = None

    for lineno, line in enumerate(as_text(stream).splitlines(), start=1):
        if line.startswith(BEGIN):
            if current is not None:
                raise ParseError(f"document {current.doc_key!r} not ended before a new begin", line=lineno)
            current = _DocumentBuilder(line[len(BEGIN):].strip(), lineno, language)
        elif line.startswith(END):
            if current is None:
                raise ParseError("end of document without a begin", line=lineno)
            docs.append(current.finish(lineno))
            current = None
        elif not line.strip():
            if current is not None:
                current.end_sentence()
        elif current is None:
            raise ParseError("row outside of a document", line=lineno, input_value=line)
        elif line.startswith("#"):
            raise ParseError("unexpected comment line inside a document", line=lineno, input_value=line)
        else:
            current.add_row(line.split(), lineno)

    if current is not None:
        raise ParseError(f"document {current.doc_key!r} has no end line", line=current.begin_line)
    logger.info("Parsed %d CoNLL documents", len(docs))
    return docs


def _conll_ids(doc: Document) -> Dict[str, int]:
    if all(entity.id.isascii() and entity.id.isdigit() for entity in doc.entities):
        return {entity.id: int(entity.id) for entity in doc.entities}
    logger.warning("Renumbering non-numeric entity ids of %s", doc.doc_key)
    return {entity.id: number for number, entity in enumerate(doc.entities)}


def _coref_cells(doc: Document) -> List[List[List[str]]]:
    ids = _conll_ids(doc)
    starts: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
    singles: Dict[Tuple[int, int], List[int]] = {}
    ends: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}

    for entity in doc.entities:
        spans = sorted(set(entity.mentions))
        for prev, span in zip(spans, spans[1:]):
            if prev.sentence_index == span.sentence_index and span.start < prev.end:
                raise DocumentError(
                    f"entity {entity.id} has overlapping mentions {prev} and {span}, not representable in CoNLL",
                    field="entities",
                )
        number = ids[entity.id]
        for span in spans:
            if span.length == 1:
                singles.setdefault((span.sentence_index, span.start), []).append(number)
            else:
                starts.setdefault((span.sentence_index, span.start), []).append((-span.end, number))
                ends.setdefault((span.sentence_index, span.end - 1), []).append((-span.start, number))

    cells = []
    for s, sentence in enumerate(doc.sentences):
        rows = []
        for w in range(len(sentence)):
            atoms = [f"({number}" for _, number in sorted(starts.get((s, w), []))]
            atoms += [f"({number})" for number in sorted(singles.get((s, w), []))]
            atoms += [f"{number})" for _, number in sorted(ends.get((s, w), []))]
            rows.append(atoms)
        cells.append(rows)
    return cells


def write_conll(docs: Sequence[Document]) -> Tuple[bytes, List[str]]:
    """Serialize documents; returns the bytes and warnings about dropped plural links."""
    lines: List[str] = []
    warnings: List[str] = []
    for doc in docs:
        if doc.expanded:
            raise DocumentError(
                "expanded documents have overlapping entities and cannot be written as CoNLL",
                field="expanded", input_value=doc.doc_key,
            )
        for link in doc.plural_links:
            warning = (
                f"{doc.doc_key}: dropped plural link {link.anaphor} -> "
                f"{', '.join(link.antecedent_entities)} (not representable in CoNLL)"
            )
            logger.warning(warning)
            warnings.append(warning)

        lines.append(f"{BEGIN} {doc.doc_key}")
        cells = _coref_cells(doc)
        for s, sentence in enumerate(doc.sentences):
            for w, token in enumerate(sentence):
                columns = doc.columns[s][w] if doc.columns is not None else (str(w), token)
                if any(not cell or WHITESPACE_RE.search(cell) for cell in columns):
                    raise DocumentError(
                        f"token {w} of sentence {s} has an empty or whitespace-bearing column, not representable in CoNLL",
                        field=["sentences", s, w], input_value=list(columns),
                    )
                coref = "|".join(cells[s][w]) or NO_ANNOTATION
                lines.append("\t".join(columns + (coref,)))
            lines.append("")
        lines.append(END)

    if not lines:
        return b"", warnings
    return ("\n".join(lines) + "\n").encode("utf-8"), warnings
