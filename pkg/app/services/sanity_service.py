"""Translation sanity check: reject outputs that are mostly repeated punctuation."""

import itertools
import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Union

import regex

from schemas.projection import SanityConfig, SanityRow, SanityVerdict
from utils.constants import INDIC_PUNCTUATION

logger = logging.getLogger(__name__)

PUNCTUATION_RE = regex.compile(r"[\p{P}" + regex.escape(INDIC_PUNCTUATION) + r"]")


def is_punctuation(char: str) -> bool:
    return PUNCTUATION_RE.fullmatch(char) is not None


def check_translation_sanity(
    sentence: Union[str, Sequence[str]],
    config: SanityConfig = SanityConfig(),
) -> SanityVerdict:
    text = sentence if isinstance(sentence, str) else " ".join(sentence)
    chars = [char for char in text if not char.isspace()]
    if not chars:
        return SanityVerdict(passed=False, reason="empty")
    if all(is_punctuation(char) for char in chars):
        return SanityVerdict(passed=False, reason="all punctuation")

    run_char, run = "", 0
    for char, group in itertools.groupby(chars):
        length = sum(1 for _ in group)
        if length > run and is_punctuation(char):
            run_char, run = char, length

    threshold = Fraction(str(config.repeat_fraction))
    if run >= config.min_run and Fraction(run, len(chars)) >= threshold:
        return SanityVerdict(
            passed=False,
            reason=f"repeated {run_char!r} covers {run} of {len(chars)} characters",
        )
    return SanityVerdict(passed=True)


def aggregate_sanity_stats(verdicts: Mapping[str, Iterable[SanityVerdict]]) -> List[SanityRow]:
    """Passed/failed counts per group, followed by a Total row."""
    rows: Dict[str, SanityRow] = {}
    for group in sorted(verdicts):
        passed = failed = 0
        for verdict in verdicts[group]:
            if verdict.passed:
                passed += 1
            else:
                failed += 1
        rows[group] = SanityRow(group=group, passed=passed, failed=failed)
    if not rows:
        return []
    total = SanityRow(
        group="Total",
        passed=sum(row.passed for row in rows.values()),
        failed=sum(row.failed for row in rows.values()),
    )
    if total.failed:
        logger.info("%d of %d translations failed the sanity check", total.failed, total.passed + total.failed)
    return list(rows.values()) + [total]
