"""Command line entry point: validate, convert, project, sanity, score, decode, stats, serve."""

import argparse
import logging
import sys
from typing import List, Optional, Sequence, Tuple

from pydantic import ValidationError

from core.config import API_HOST, API_PORT, DEFAULT_LANGUAGE, JOBS, LOG_LEVEL, MIN_RUN, REPEAT_FRACTION
from core.exceptions import CorefToolkitError, ProjectionError
from core.logging_config import LOG_LEVELS, setup_logging
from schemas.document import Document
from schemas.projection import SanityConfig
from schemas.run_config import RunConfig
from services.alignment_service import parse_alignments, read_target_sentences
from services.canonical_service import parse_canonical, write_canonical, write_records
from services.conll_service import parse_conll, write_conll
from services.decoder_service import DecoderService, parse_score_file
from services.document_service import DocumentService
from services.projection_service import ProjectionService
from services.sanity_service import aggregate_sanity_stats, check_translation_sanity
from services.scoring_service import ScoringService, compare_reports, render_comparison, render_report
from services.stats_service import StatsService, render_split_triples, render_stats_table
from utils.constants import DataSplitEnum, DocumentFormatEnum, LanguageCodeEnum, ReportFormatEnum
from utils.file_utils import read_input, write_output

logger = logging.getLogger("cli")

EXIT_OK = 0
EXIT_DATA_ERROR = 1
EXIT_USAGE_ERROR = 2

FORMATS = [f.value for f in DocumentFormatEnum]
LANGUAGES = [code.value for code in LanguageCodeEnum]


def load_documents(path: Optional[str], fmt: DocumentFormatEnum, language: Optional[str] = None) -> List[Document]:
    try:
        data = read_input(path)
        if fmt == DocumentFormatEnum.conll:
            return parse_conll(data, language=language or DEFAULT_LANGUAGE)
        return parse_canonical(data)
    except CorefToolkitError as e:
        e.source = path or "stdin"
        raise


def load_sentences(path: Optional[str]) -> List[Tuple[str, ...]]:
    try:
        return read_target_sentences(read_input(path))
    except CorefToolkitError as e:
        e.source = path or "stdin"
        raise


def dump_documents(docs: Sequence[Document], fmt: DocumentFormatEnum) -> bytes:
    if fmt == DocumentFormatEnum.conll:
        data, _ = write_conll(docs)  # dropped plural links are logged
        return data
    return write_canonical(docs)


def labelled_path(value: str) -> Tuple[Optional[str], str]:
    """`NAME=PATH` or plain `PATH`."""
    label, sep, path = value.partition("=")
    if sep and label and path:
        return label, path
    return None, value


# --- subcommands -------------------------------------------------------------------

def cmd_validate(config: RunConfig) -> int:
    docs = load_documents(config.input, config.from_format, config.language)
    violations = DocumentService(jobs=config.jobs).validate_corpus(docs)
    if config.format == ReportFormatEnum.records:
        data = write_records(violations)
    else:
        lines = ["doc_key\tkind\tlocation\tmessage"]
        lines += [f"{v.doc_key}\t{v.kind.value}\t{v.location}\t{v.message}" for v in violations]
        data = ("\n".join(lines) + "\n").encode("utf-8")
    write_output(data, config.output)
    return EXIT_DATA_ERROR if violations else EXIT_OK


def cmd_convert(config: RunConfig) -> int:
    docs = load_documents(config.input, config.from_format, config.language)
    write_output(dump_documents(docs, config.to_format), config.output)
    return EXIT_OK


def _split_by_documents(items: Sequence, docs: Sequence[Document], what: str) -> List[Tuple]:
    expected = sum(len(doc.sentences) for doc in docs)
    if len(items) != expected:
        raise ProjectionError(f"{len(items)} {what} lines for {expected} source sentences", field=what)
    chunks, offset = [], 0
    for doc in docs:
        chunks.append(tuple(items[offset:offset + len(doc.sentences)]))
        offset += len(doc.sentences)
    return chunks


def cmd_project(config: RunConfig) -> int:
    sources = load_documents(config.input, config.from_format)
    try:
        alignments = _split_by_documents(parse_alignments(read_input(config.alignments)), sources, "alignments")
    except CorefToolkitError as e:
        e.source = config.alignments
        raise
    targets = _split_by_documents(load_sentences(config.target_sents), sources, "target_sents")

    sanity = SanityConfig(repeat_fraction=config.repeat_fraction, min_run=config.min_run)
    projected, rates = ProjectionService(jobs=config.jobs).project_corpus(
        sources, alignments, targets, language=config.language, sanity=sanity,
    )
    write_output(write_canonical(projected), config.output)

    lines = ["group\tmentions\taligned\tmisaligned\tnon_aligned"]
    lines += [f"{r.group}\t{r.mentions}\t{r.aligned}%\t{r.misaligned}%\t{r.non_aligned}%" for r in rates]
    report = "\n".join(lines) + "\n"
    if config.report:
        write_output(report.encode("utf-8"), config.report)
    else:
        sys.stderr.write(report)
    return EXIT_OK


def cmd_sanity(config: RunConfig) -> int:
    sanity = SanityConfig(repeat_fraction=config.repeat_fraction, min_run=config.min_run)
    lines = ["group\tline\tverdict\treason"]
    verdicts = {}
    for value in config.inputs:
        label, path = labelled_path(value)
        group = label or config.language or DEFAULT_LANGUAGE
        for lineno, sentence in enumerate(load_sentences(path), start=1):
            verdict = check_translation_sanity(sentence, sanity)
            verdicts.setdefault(group, []).append(verdict)
            lines.append(f"{group}\t{lineno}\t{'pass' if verdict.passed else 'fail'}\t{verdict.reason or ''}")
    lines.append("")
    lines.append("group\tpassed\tfailed")
    lines += [f"{row.group}\t{row.passed}\t{row.failed}" for row in aggregate_sanity_stats(verdicts)]
    write_output(("\n".join(lines) + "\n").encode("utf-8"), config.output)
    return EXIT_OK


def cmd_score(config: RunConfig, compare: Optional[str] = None) -> int:
    key_docs = load_documents(config.key, config.key_format, config.language)
    response_docs = load_documents(config.response, config.response_format, config.language)
    service = ScoringService(singletons=config.singletons, split=config.split, jobs=config.jobs)
    report = service.score_corpus(key_docs, response_docs, per_document=config.per_document)

    if compare:
        other = service.score_corpus(key_docs, load_documents(compare, config.response_format, config.language))
        write_output(render_comparison(compare_reports(report, other, config.style)).encode("utf-8"), config.output)
    elif config.format == ReportFormatEnum.records:
        write_output((report.model_dump_json(exclude_none=True) + "\n").encode("utf-8"), config.output)
    else:
        write_output(render_report(report, config.style).encode("utf-8"), config.output)
    return EXIT_OK


def cmd_decode(config: RunConfig) -> int:
    try:
        records = parse_score_file(read_input(config.input))
    except CorefToolkitError as e:
        e.source = config.input or "stdin"
        raise
    docs = DecoderService(jobs=config.jobs).decode_corpus(records)
    write_output(write_canonical(docs), config.output)
    return EXIT_OK


def cmd_stats(config: RunConfig, by_language: bool = False, triples: bool = False) -> int:
    groups = []
    for value in config.inputs:
        label, path = labelled_path(value)
        groups.append((label, load_documents(path, config.from_format, config.language)))
    rows = StatsService(jobs=config.jobs).corpus_stats(groups, by_language=by_language)

    if config.format == ReportFormatEnum.records:
        data = write_records(rows)
    elif triples:
        splits = list(dict.fromkeys(label for label, _ in groups if label)) or [s.value for s in DataSplitEnum]
        data = render_split_triples(rows, splits).encode("utf-8")
    else:
        data = render_stats_table(rows).encode("utf-8")
    write_output(data, config.output)
    return EXIT_OK


def cmd_serve(config: RunConfig, host: str, port: int) -> int:
    import uvicorn
    uvicorn.run("main:app", host=host, port=port)
    return EXIT_OK


# --- argument parsing ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coref-toolkit", description=__doc__)
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="output path (default: stdout)")
    common.add_argument("--log-level", type=str.upper, choices=LOG_LEVELS, default=LOG_LEVEL,
                        help="logging level for stderr diagnostics")
    common.add_argument("-j", "--jobs", type=int, default=JOBS, help="document-parallel worker processes")
    common.add_argument("--language", choices=LANGUAGES, metavar="LANG",
                        help="FLORES-200 code for CoNLL input and projected documents, e.g. hin_Deva")

    report_format = argparse.ArgumentParser(add_help=False)
    report_format.add_argument("--format", choices=[f.value for f in ReportFormatEnum], default="tsv")

    sanity_flags = argparse.ArgumentParser(add_help=False)
    sanity_flags.add_argument("--repeat-fraction", type=float, default=REPEAT_FRACTION)
    sanity_flags.add_argument("--min-run", type=int, default=MIN_RUN)

    validate = subparsers.add_parser("validate", parents=[common, report_format], help="check document invariants")
    validate.add_argument("--input", "-i", help="documents (default: stdin)")
    validate.add_argument("--from", dest="from_format", choices=FORMATS, default="canonical")

    convert = subparsers.add_parser("convert", parents=[common], help="convert between CoNLL and canonical")
    convert.add_argument("--input", "-i", help="documents (default: stdin)")
    convert.add_argument("--from", dest="from_format", choices=FORMATS, required=True)
    convert.add_argument("--to", dest="to_format", choices=FORMATS, required=True)

    project = subparsers.add_parser("project", parents=[common, sanity_flags], help="project mentions via word alignments")
    project.add_argument("--source", dest="input", required=True, help="source documents")
    project.add_argument("--from", dest="from_format", choices=FORMATS, default="canonical")
    project.add_argument("--alignments", required=True, help="one i-j alignment line per source sentence")
    project.add_argument("--target-sents", required=True, help="one tokenized translation per source sentence")
    project.add_argument("--report", help="alignment rate TSV (default: stderr)")

    sanity = subparsers.add_parser("sanity", parents=[common, sanity_flags], help="translation sanity check")
    sanity.add_argument("--input", "-i", dest="inputs", action="append", required=True,
                        help="[GROUP=]PATH of tokenized sentences, repeatable")

    score = subparsers.add_parser("score", parents=[common, report_format], help="score a response against a key")
    score.add_argument("--key", required=True)
    score.add_argument("--response", required=True)
    score.add_argument("--key-format", choices=FORMATS, default="canonical")
    score.add_argument("--response-format", choices=FORMATS, default="canonical")
    score.add_argument("--singletons", choices=["include", "exclude"], default="include")
    score.add_argument("--split", choices=["plain", "expanded"], default="plain")
    score.add_argument("--style", choices=["decimal", "percent"], default="decimal")
    score.add_argument("--per-document", action="store_true", help="add per-document scores to records output")
    score.add_argument("--compare", help="second response; prints 'first vs second' F1 per metric")

    decode = subparsers.add_parser("decode", parents=[common], help="decode mention-ranking score files")
    decode.add_argument("--input", "-i", help="score records (default: stdin)")

    stats = subparsers.add_parser("stats", parents=[common, report_format], help="corpus statistics")
    stats.add_argument("--input", "-i", dest="inputs", action="append", required=True,
                       help="[SPLIT=]PATH of documents, repeatable")
    stats.add_argument("--from", dest="from_format", choices=FORMATS, default="canonical")
    stats.add_argument("--by-language", action="store_true", help="one row per language and split")
    stats.add_argument("--triples", action="store_true", help="per-language rows with (train, dev, test) triples")

    serve = subparsers.add_parser("serve", parents=[common], help="run the HTTP API")
    serve.add_argument("--host", default=API_HOST)
    serve.add_argument("--port", type=int, default=API_PORT)

    return parser


CONFIG_FIELDS = set(RunConfig.model_fields)


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK

    values = {name: value for name, value in vars(args).items() if name in CONFIG_FIELDS and value is not None}
    try:
        config = RunConfig(**values)
    except ValidationError as e:
        for error in e.errors():
            sys.stderr.write(f"usage error: {error['msg']}\n")
        return EXIT_USAGE_ERROR

    setup_logging(config.log_level)
    logger.debug("Running %s with %s", config.subcommand, config.model_dump(exclude_defaults=True))

    try:
        if config.subcommand == "validate":
            return cmd_validate(config)
        if config.subcommand == "convert":
            return cmd_convert(config)
        if config.subcommand == "project":
            return cmd_project(config)
        if config.subcommand == "sanity":
            return cmd_sanity(config)
        if config.subcommand == "score":
            return cmd_score(config, compare=args.compare)
        if config.subcommand == "decode":
            return cmd_decode(config)
        if config.subcommand == "stats":
            return cmd_stats(config, by_language=args.by_language, triples=args.triples)
        return cmd_serve(config, args.host, args.port)
    except CorefToolkitError as e:
        sys.stderr.write(f"error: {e.diagnostic()}\n")
        return EXIT_DATA_ERROR
    except OSError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_DATA_ERROR


if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
