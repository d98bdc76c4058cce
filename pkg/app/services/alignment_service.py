"""Pharaoh-style word alignments ("i-j" pairs) and target sentence files."""

import re
from typing import List, Sequence, Tuple, Union

from core.exceptions import ParseError
from schemas.alignment import AlignmentMap
from utils.file_utils import as_text

PAIR_RE = re.compile(r"^(\d+)-(\d+)$")


def parse_alignment_line(line: str, lineno: int = 1) -> AlignmentMap:
    pairs = []
    for token in line.split():
        match = PAIR_RE.match(token)
        if not match:
            raise ParseError(f"alignment pair {token!r} is not of the form i-j with non-negative integers",
                             line=lineno, input_value=token)
        pairs.append((int(match.group(1)), int(match.group(2))))
    return AlignmentMap(pairs=tuple(pairs))


def parse_alignments(stream: Union[bytes, str]) -> List[AlignmentMap]:
    return [
        parse_alignment_line(line, lineno)
        for lineno, line in enumerate(as_text(stream).splitlines(), start=1)
    ]


def write_alignments(alignments: Sequence[AlignmentMap]) -> bytes:
    lines = [" ".join(f"{s}-{t}" for s, t in alignment.pairs) for alignment in alignments]
    return "".join(line + "\n" for line in lines).encode("utf-8")


def read_target_sentences(stream: Union[bytes, str]) -> List[Tuple[str, ...]]:
    return [tuple(line.split()) for line in as_text(stream).splitlines()]
