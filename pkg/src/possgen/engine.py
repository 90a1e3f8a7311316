"""Per-sentence decision orchestration and corpus evaluation."""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from .ir import Sentence, sentence_from_dict, sentence_to_dict, validate_against_lexicon
from .lexicon import Lexicon, LexiconError
from .patterns import (Decision, ExpressionPattern, Reason, explicit_genitive_decision,
                       match_expression)
from .pronouns import UnresolvedReflexive
from .refgen import (RefgenConfig, apply_compound_subject, apply_parents_children,
                     decide_default_pronoun)


class GenerationError(ValueError):
    pass


class EvaluationError(ValueError):
    pass


@dataclass(frozen=True)
class TraceRecord:
    rule: str
    np_id: str
    outcome: str

    def to_dict(self) -> dict[str, str]:
        return {"rule": self.rule, "np": self.np_id, "outcome": self.outcome}


def _describe(d: Decision) -> str:
    if d.reason is not None:
        return f"{d.outcome.value} {d.reason.value}"
    if d.surface is not None:
        return f"{d.outcome.value} {d.surface}"
    return d.outcome.value


@dataclass
class AnnotatedSentence:
    sentence: Sentence
    decisions: dict[str, Decision]
    trace: list[TraceRecord] = field(default_factory=list)

    def to_record(self, base: Mapping[str, Any] | None = None, trace: bool = False) -> dict:
        """Output record: the input record with a ``decision`` on every NP.

        ``base`` is the raw input object; when omitted the sentence is
        re-serialized in canonical form.
        """
        rec = copy.deepcopy(dict(base)) if base is not None else sentence_to_dict(self.sentence)
        for np_rec in rec["nps"]:
            np_rec["decision"] = self.decisions[np_rec["id"]].to_dict()
        if trace:
            rec["trace"] = [t.to_dict() for t in self.trace]
        return rec

    @classmethod
    def from_record(cls, rec: Mapping[str, Any]) -> AnnotatedSentence:
        sentence = sentence_from_dict(rec)
        decisions = {}
        for np_rec in rec.get("nps", []):
            if "decision" not in np_rec:
                raise EvaluationError(f"sentence {sentence.id!r}: NP {np_rec['id']!r} has no decision")
            decisions[np_rec["id"]] = Decision.from_dict(np_rec["decision"])
        trace = [TraceRecord(t["rule"], t["np"], t["outcome"]) for t in rec.get("trace", [])]
        return cls(sentence, decisions, trace)


def generate(
    sentence: Sentence,
    lexicon: Lexicon,
    patterns: Sequence[ExpressionPattern] = (),
    config: RefgenConfig = RefgenConfig(),
    diagnostics: list[str] | None = None,
) -> AnnotatedSentence:
    """Decide the possessive determiner for every NP of ``sentence``.

    Precedence per NP: a filled determiner slot blocks everything; then a
    genitive construction in the source; then an expression pattern; then
    the trigger-noun defaults, followed by the parents/children and
    compound-subject passes over the whole sentence.
    """
    problems = validate_against_lexicon(sentence, lexicon)
    if problems:
        raise GenerationError(f"sentence {sentence.id!r}: " + "; ".join(problems))

    trace: list[TraceRecord] = []
    decisions: dict[str, Decision] = {}
    try:
        matched = {np_id: (dec, pat) for np_id, dec, pat in
                   match_expression(sentence, patterns, diagnostics)}
        for np in sentence.in_position_order():
            if np.slot_filled:
                dec, rule = Decision.none(Reason.SLOT_FILLED), "slot_filled"
            elif (explicit := explicit_genitive_decision(sentence, np)) is not None:
                dec, rule = explicit, "explicit_genitive"
            elif np.id in matched:
                dec, pat = matched[np.id]
                rule = f"pattern:{pat.id}"
            else:
                dec, rule = decide_default_pronoun(sentence, np, lexicon, config, diagnostics), "default"
            decisions[np.id] = dec
            trace.append(TraceRecord(rule, np.id, _describe(dec)))
    except (LexiconError, UnresolvedReflexive) as exc:
        raise GenerationError(f"sentence {sentence.id!r}: {exc}") from exc

    passes = [("parents_children", apply_parents_children)]
    if config.enable_compound_subject_rule:
        passes.append(("compound_subject", apply_compound_subject))
    for rule, fn in passes:
        updated = fn(sentence, decisions, lexicon)
        for np in sentence.in_position_order():
            if updated[np.id] != decisions[np.id]:
                trace.append(TraceRecord(rule, np.id, _describe(updated[np.id])))
        decisions = updated

    ordered = {np.id: decisions[np.id] for np in sentence.nps}
    return AnnotatedSentence(sentence, ordered, trace)


# -- evaluation --------------------------------------------------------------

@dataclass(frozen=True)
class Metrics:
    good_generated: int = 0
    good_not_generated: int = 0
    bad_generated: int = 0
    bad_not_generated: int = 0

    @property
    def total(self) -> int:
        return (self.good_generated + self.good_not_generated
                + self.bad_generated + self.bad_not_generated)

    @property
    def correct(self) -> int:
        return self.good_generated + self.good_not_generated

    @property
    def accuracy_fraction(self) -> Fraction | None:
        return Fraction(self.correct, self.total) if self.total else None

    @property
    def precision_fraction(self) -> Fraction | None:
        # every NP except the missed generations counts as committed
        committed = self.correct + self.bad_generated
        return Fraction(self.correct, committed) if committed else None

    @property
    def accuracy(self) -> float | None:
        f = self.accuracy_fraction
        return None if f is None else float(f)

    @property
    def precision(self) -> float | None:
        f = self.precision_fraction
        return None if f is None else float(f)

    def __add__(self, other: Metrics) -> Metrics:
        return Metrics(
            self.good_generated + other.good_generated,
            self.good_not_generated + other.good_not_generated,
            self.bad_generated + other.bad_generated,
            self.bad_not_generated + other.bad_not_generated,
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "good_generated": self.good_generated,
            "good_not_generated": self.good_not_generated,
            "bad_generated": self.bad_generated,
            "bad_not_generated": self.bad_not_generated,
            "accuracy": self.accuracy,
            "precision": self.precision,
        }


GoldTable = Mapping[tuple[str, str], "str | None"]


def read_gold(text: str) -> dict[tuple[str, str], str | None]:
    """Gold file: corpus records whose NPs each carry ``gold_possessive``."""
    gold: dict[tuple[str, str], str | None] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        rec = json.loads(line)
        for np_rec in rec.get("nps", []):
            if "gold_possessive" not in np_rec:
                raise EvaluationError(f"gold line {lineno}: NP {np_rec.get('id')!r} lacks gold_possessive")
            value = np_rec["gold_possessive"]
            if value is not None and not isinstance(value, str):
                raise EvaluationError(f"gold line {lineno}: gold_possessive must be a string or null")
            key = (rec["id"], np_rec["id"])
            if key in gold:
                raise EvaluationError(f"gold line {lineno}: duplicate entry {key}")
            gold[key] = value.strip() if value else None
    return gold


def score(produced: str | None, expected: str | None) -> Metrics:
    if produced is None:
        if expected is None:
            return Metrics(good_not_generated=1)
        return Metrics(bad_not_generated=1)
    if produced == expected:
        return Metrics(good_generated=1)
    return Metrics(bad_generated=1)


def evaluate(outputs: Iterable[AnnotatedSentence], gold: GoldTable) -> Metrics:
    """Compare produced possessives with gold forms, NP by NP."""
    total = Metrics()
    for ann in outputs:
        for np_id, dec in ann.decisions.items():
            key = (ann.sentence.id, np_id)
            if key not in gold:
                raise EvaluationError(f"gold has no entry for sentence {key[0]!r} NP {key[1]!r}")
            produced = str(dec.form) if dec.is_possessive else None
            total = total + score(produced, gold[key])
    if total.total == 0:
        raise EvaluationError("no evaluable noun phrases")
    return total
