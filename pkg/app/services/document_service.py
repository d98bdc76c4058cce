import logging
from collections import Counter
from typing import Dict, List, Optional, Sequence

from core.exceptions import DocumentError
from schemas.document import Document, Entity, PluralLink, Span, Violation
from services.base_service import BaseService
from utils.constants import ViolationKindEnum

logger = logging.getLogger(__name__)


def document_mentions(doc: Document) -> List[Span]:
    """Unique mention spans of a document in discourse order."""
    return sorted({span for entity in doc.entities for span in entity.mentions})


def entity_of(doc: Document, span: Span) -> Optional[str]:
    for entity in doc.entities:
        if span in entity.mentions:
            return entity.id
    return None


def _span_violations(doc: Document, span: Span, location: str) -> List[Violation]:
    found = []
    if span.start >= span.end:
        found.append(Violation(
            doc_key=doc.doc_key, kind=ViolationKindEnum.empty_span, location=location,
            message=f"span {span} has start >= end",
        ))
    if span.sentence_index >= len(doc.sentences):
        found.append(Violation(
            doc_key=doc.doc_key, kind=ViolationKindEnum.out_of_bounds, location=location,
            message=f"span {span} refers to sentence {span.sentence_index} of {len(doc.sentences)}",
        ))
    elif span.end > len(doc.sentences[span.sentence_index]):
        found.append(Violation(
            doc_key=doc.doc_key, kind=ViolationKindEnum.out_of_bounds, location=location,
            message=f"span {span} ends beyond sentence length {len(doc.sentences[span.sentence_index])}",
        ))
    return found


def validate_document(doc: Document) -> List[Violation]:
    """Every invariant violation of `doc`; an empty list means the document is valid."""
    violations: List[Violation] = []

    id_counts = Counter(entity.id for entity in doc.entities)
    for entity_id, count in sorted(id_counts.items()):
        if count > 1:
            violations.append(Violation(
                doc_key=doc.doc_key, kind=ViolationKindEnum.duplicate_entity_id,
                location=f"entity {entity_id}", message=f"entity id used {count} times",
            ))

    owners: Dict[Span, List[str]] = {}
    for entity in doc.entities:
        location = f"entity {entity.id}"
        if not entity.mentions:
            violations.append(Violation(
                doc_key=doc.doc_key, kind=ViolationKindEnum.empty_entity,
                location=location, message="entity has no mentions",
            ))
        for span, count in Counter(entity.mentions).items():
            if count > 1:
                violations.append(Violation(
                    doc_key=doc.doc_key, kind=ViolationKindEnum.duplicate_span,
                    location=location, message=f"span {span} listed {count} times",
                ))
        for span in dict.fromkeys(entity.mentions):
            violations.extend(_span_violations(doc, span, f"{location} mention {span}"))
            owners.setdefault(span, []).append(entity.id)

    if not doc.expanded:
        for span in sorted(owners):
            if len(owners[span]) > 1:
                violations.append(Violation(
                    doc_key=doc.doc_key, kind=ViolationKindEnum.shared_span,
                    location=f"mention {span}",
                    message=f"span belongs to entities {', '.join(owners[span])}",
                ))

    for index, link in enumerate(doc.plural_links):
        location = f"plural link {index}"
        violations.extend(_span_violations(doc, link.anaphor, f"{location} anaphor"))
        if link.anaphor not in owners:
            violations.append(Violation(
                doc_key=doc.doc_key, kind=ViolationKindEnum.orphan_anaphor,
                location=location, message=f"anaphor {link.anaphor} belongs to no entity",
            ))
        for entity_id in link.antecedent_entities:
            if entity_id not in id_counts:
                violations.append(Violation(
                    doc_key=doc.doc_key, kind=ViolationKindEnum.dangling_reference,
                    location=location, message=f"antecedent entity {entity_id} does not exist",
                ))
        if len(set(link.antecedent_entities)) < 2:
            violations.append(Violation(
                doc_key=doc.doc_key, kind=ViolationKindEnum.too_few_antecedents,
                location=location, message="a plural link needs at least two antecedent entities",
            ))

    if doc.columns is not None:
        shape = [len(sentence) for sentence in doc.sentences]
        if [len(sentence) for sentence in doc.columns] != shape:
            violations.append(Violation(
                doc_key=doc.doc_key, kind=ViolationKindEnum.out_of_bounds,
                location="columns", message="passthrough columns do not match the sentence shape",
            ))

    return violations


def expand_split_antecedents(doc: Document) -> Document:
    """
    Fold every plural entity into its antecedent entities.

    The mentions of the entity holding a plural anaphor are added to each
    antecedent entity and the plural entity is dropped, so entities may overlap
    afterwards. Links are applied in one pass in document order against the
    original entities; chains are not followed.
    """
    if doc.expanded:
        raise DocumentError("document is already expanded", field="expanded", input_value=doc.doc_key)
    if not doc.plural_links:
        return doc

    original = {entity.id: entity for entity in doc.entities}
    working: Dict[str, List[Span]] = {entity.id: list(entity.mentions) for entity in doc.entities}
    dissolved = set()

    for link in sorted(doc.plural_links, key=lambda link: link.anaphor.key):
        plural_id = entity_of(doc, link.anaphor)
        if plural_id is None:
            raise DocumentError(f"anaphor {link.anaphor} belongs to no entity", field="plural_links")
        for entity_id in link.antecedent_entities:
            if entity_id not in original:
                raise DocumentError(f"antecedent entity {entity_id} does not exist", field="plural_links")
            additions = [span for span in original[plural_id].mentions if span not in working[entity_id]]
            working[entity_id].extend(additions)
        dissolved.add(plural_id)

    entities = tuple(
        Entity(id=entity.id, mentions=tuple(sorted(working[entity.id])))
        for entity in doc.entities
        if entity.id not in dissolved
    )
    logger.debug("Expanded %s: dissolved %d plural entities", doc.doc_key, len(dissolved))
    return doc.model_copy(update={"entities": entities, "plural_links": (), "expanded": True})


def strip_singletons(doc: Document) -> Document:
    kept = tuple(entity for entity in doc.entities if len(set(entity.mentions)) != 1)
    if len(kept) == len(doc.entities):
        return doc
    kept_ids = {entity.id for entity in kept}
    kept_spans = {span for entity in kept for span in entity.mentions}

    links = []
    for link in doc.plural_links:
        antecedents = tuple(entity_id for entity_id in link.antecedent_entities if entity_id in kept_ids)
        if len(set(antecedents)) >= 2 and link.anaphor in kept_spans:
            links.append(PluralLink(anaphor=link.anaphor, antecedent_entities=antecedents))
    return doc.model_copy(update={"entities": kept, "plural_links": tuple(links)})


class DocumentService(BaseService[Document, List[Violation]]):

    def validate_corpus(self, docs: Sequence[Document]) -> List[Violation]:
        results = self.map_documents(validate_document, list(docs))
        violations = [violation for found in results for violation in found]
        if violations:
            logger.warning("%d violations in %d documents", len(violations), len(docs))
        return violations

    def expand_corpus(self, docs: Sequence[Document]) -> List[Document]:
        return self.map_documents(expand_split_antecedents, list(docs))

    def strip_corpus(self, docs: Sequence[Document]) -> List[Document]:
        return self.map_documents(strip_singletons, list(docs))
