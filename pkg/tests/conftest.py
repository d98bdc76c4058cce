import random
from typing import List

import pytest

from schemas.document import Document, Entity, PluralLink, Span


def span(s: int, start: int, end: int) -> Span:
    return Span.of(s, start, end)


# "John and Mary met . / Both smiled and they left . / Mary waved ; John stayed ."
# a=John, b=Mary, c=Both, d=they, e=Mary, f=John; c refers to {John, Mary} jointly.
A, B = span(0, 0, 1), span(0, 2, 3)
C, D = span(1, 0, 1), span(1, 3, 4)
E, F = span(2, 0, 1), span(2, 3, 4)


def make_split_antecedent_doc(doc_key: str = "both_left") -> Document:
    return Document(
        doc_key=doc_key,
        language="eng_Latn",
        sentences=(
            ("John", "and", "Mary", "met", "."),
            ("Both", "smiled", "and", "they", "left", "."),
            ("Mary", "waved", ";", "John", "stayed", "."),
        ),
        entities=(
            Entity(id="1", mentions=(A, F)),
            Entity(id="2", mentions=(B, E)),
            Entity(id="3", mentions=(C, D)),
        ),
        plural_links=(PluralLink(anaphor=C, antecedent_entities=("1", "2")),),
    )


@pytest.fixture
def split_antecedent_doc() -> Document:
    return make_split_antecedent_doc()


def random_document(rng: random.Random, doc_key: str = "doc", max_mentions: int = 8, max_entities: int = 4,
                    sentence_length: int = 20, ensure_link: bool = True) -> Document:
    """Single-sentence document with non-overlapping single-token mentions."""
    n_mentions = rng.randint(2, max_mentions)
    n_entities = rng.randint(1, min(max_entities, n_mentions))
    positions = sorted(rng.sample(range(sentence_length), n_mentions))
    owners = [rng.randrange(n_entities) for _ in positions]
    if ensure_link:
        owners[0] = owners[1] = 0
    groups = {}
    for position, owner in zip(positions, owners):
        groups.setdefault(owner, []).append(span(0, position, position + 1))
    return Document(
        doc_key=doc_key,
        sentences=(tuple(f"w{i}" for i in range(sentence_length)),),
        entities=tuple(Entity(id=str(owner), mentions=tuple(groups[owner])) for owner in sorted(groups)),
    )


def random_response(rng: random.Random, key: Document, max_entities: int = 4) -> Document:
    """Regroup a random subset of the key's mentions, plus a few spurious ones."""
    mentions = [m for entity in key.entities for m in entity.mentions if rng.random() < 0.8]
    taken = {m.start for m in mentions}
    free = [i for i in range(len(key.sentences[0])) if i not in taken]
    mentions += [span(0, i, i + 1) for i in rng.sample(free, rng.randint(0, 2))]
    groups = {}
    for mention in mentions:
        groups.setdefault(rng.randrange(max_entities), []).append(mention)
    return key.model_copy(update={
        "entities": tuple(Entity(id=str(g), mentions=tuple(sorted(groups[g]))) for g in sorted(groups)),
    })


def random_corpus(seed: int, n_docs: int) -> List[Document]:
    rng = random.Random(seed)
    return [random_document(rng, doc_key=f"doc{i:04d}") for i in range(n_docs)]


def random_plural_document(rng: random.Random, doc_key: str = "doc") -> Document:
    """Valid random document with one or two plural links between its entities."""
    doc = random_document(rng, doc_key=doc_key, max_mentions=12, max_entities=6)
    while len(doc.entities) < 3:
        doc = random_document(rng, doc_key=doc_key, max_mentions=12, max_entities=6)
    ids = [entity.id for entity in doc.entities]
    anaphors = rng.sample([(entity.id, m) for entity in doc.entities for m in entity.mentions], rng.randint(1, 2))
    links = []
    for owner, anaphor in anaphors:
        others = [entity_id for entity_id in ids if entity_id != owner]
        links.append(PluralLink(anaphor=anaphor, antecedent_entities=tuple(rng.sample(others, rng.randint(2, len(others))))))
    return doc.model_copy(update={"plural_links": tuple(links)})
