"""Command-line interface: ``possgen generate | eval | validate``.

Exit status is 0 on success, 1 when inputs fail validation, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence, TextIO

from . import data_text
from .engine import AnnotatedSentence, EvaluationError, GenerationError, evaluate, generate, read_gold
from .ir import RecordError, sentence_from_dict, validate_against_lexicon
from .lexicon import LexiconError, load_lexicon
from .patterns import PatternError, load_patterns
from .refgen import RefgenConfig, load_config

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str | None, default: str | None = None) -> str:
    if path is None:
        if default is None:
            raise UsageError("missing input path")
        return data_text(default)
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _records(text: str, label: str) -> list[tuple[int, dict]]:
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            out.append((lineno, json.loads(line)))
        except json.JSONDecodeError as exc:
            raise RecordError(f"{label} line {lineno}: malformed record: {exc.msg}") from exc
    return out


def cmd_generate(args: argparse.Namespace, out: TextIO) -> int:
    lexicon = load_lexicon(_read(args.lexicon, "lexicon.json"))
    patterns = load_patterns(_read(args.patterns, "patterns.json"))
    config = load_config(_read(args.config)) if args.config else RefgenConfig()
    corpus = _read(args.corpus or "-")
    lines = []
    for lineno, rec in _records(corpus, "corpus"):
        try:
            sentence = sentence_from_dict(rec)
        except RecordError as exc:
            raise RecordError(f"corpus line {lineno}: {exc}") from exc
        ann = generate(sentence, lexicon, patterns, config)
        lines.append(json.dumps(ann.to_record(rec, trace=args.trace), ensure_ascii=False))
    out.write("".join(line + "\n" for line in lines))
    return EXIT_OK


def cmd_eval(args: argparse.Namespace, out: TextIO) -> int:
    gold = read_gold(_read(args.gold))
    outputs = []
    for lineno, rec in _records(_read(args.annotated or "-"), "annotated"):
        try:
            outputs.append(AnnotatedSentence.from_record(rec))
        except (RecordError, ValueError, KeyError) as exc:
            raise RecordError(f"annotated line {lineno}: {exc}") from exc
    metrics = evaluate(outputs, gold)
    out.write(json.dumps(metrics.to_dict()) + "\n")
    return EXIT_OK


def cmd_validate(args: argparse.Namespace, out: TextIO) -> int:
    lexicon = load_lexicon(_read(args.lexicon, "lexicon.json"))
    if args.patterns:
        load_patterns(_read(args.patterns))
    status = EXIT_OK
    for lineno, rec in _records(_read(args.corpus or "-"), "corpus"):
        try:
            sentence = sentence_from_dict(rec)
        except RecordError as exc:
            print(f"corpus line {lineno}: {exc}", file=sys.stderr)
            status = EXIT_INVALID
            continue
        for problem in validate_against_lexicon(sentence, lexicon):
            print(f"corpus line {lineno} (sentence {sentence.id}): {problem}", file=sys.stderr)
            status = EXIT_INVALID
    if status == EXIT_OK:
        out.write("ok\n")
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="possgen", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="annotate a corpus with possessive decisions")
    g.add_argument("--lexicon", help="lexicon JSON (default: shipped lexicon)")
    g.add_argument("--patterns", help="pattern JSON (default: shipped patterns)")
    g.add_argument("--config", help="config JSON")
    g.add_argument("--trace", action="store_true", help="include rule-firing trace per sentence")
    g.add_argument("corpus", nargs="?", help="corpus JSONL (default: stdin)")
    g.set_defaults(func=cmd_generate)

    e = sub.add_parser("eval", help="score annotated output against gold")
    e.add_argument("--gold", required=True, help="gold JSONL with gold_possessive per NP")
    e.add_argument("annotated", nargs="?", help="annotated JSONL (default: stdin)")
    e.set_defaults(func=cmd_eval)

    v = sub.add_parser("validate", help="cross-check a corpus against the lexicon")
    v.add_argument("--lexicon", help="lexicon JSON (default: shipped lexicon)")
    v.add_argument("--patterns", help="pattern JSON to check as well")
    v.add_argument("corpus", nargs="?", help="corpus JSONL (default: stdin)")
    v.set_defaults(func=cmd_validate)
    return parser


def run_cli(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out or sys.stdout)
    except UsageError as exc:
        print(f"possgen: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (LexiconError, PatternError, RecordError, GenerationError, EvaluationError,
            ValueError) as exc:
        print(f"possgen: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run_cli())
