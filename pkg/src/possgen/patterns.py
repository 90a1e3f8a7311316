"""Explicit genitive constructions and expressions with an obligatory possessive.

Also defines :class:`Decision`, the per-NP outcome shared by every stage.
"""

from __future__ import annotations

import enum
import json
import logging
from dataclasses import dataclass
from typing import Any, Sequence

from .ir import GenitiveKind, GrammRole, NounPhrase, Sentence
from .pronouns import Form, PossessiveForm, pronoun_for_antecedent, resolve_reflexive

logger = logging.getLogger(__name__)

DEICTIC = "DEICTIC"
POSS_SLOT = "{POSS}"


class Outcome(str, enum.Enum):
    NONE = "NONE"
    POSSESSIVE = "POSSESSIVE"
    SOME_ANY = "SOME_ANY"


class Source(str, enum.Enum):
    EXPLICIT = "EXPLICIT"
    PATTERN = "PATTERN"
    DEFAULT = "DEFAULT"


class Reliability(str, enum.Enum):
    RELIABLE = "RELIABLE"
    DEFAULT_HEURISTIC = "DEFAULT_HEURISTIC"


class Reason(str, enum.Enum):
    SLOT_FILLED = "slot_filled"
    GENERIC = "generic"
    ASCRIPTIVE = "ascriptive"
    POSSESSION_VERB = "possession_verb"
    ACQUISITION_VERB = "acquisition_verb"
    NOT_TRIGGER = "not_trigger"
    SUBJECT_NOT_KIN_BODY = "subject_not_kin_body"
    PARENTS_CHILDREN_UNPAIRED = "parents_children_unpaired"
    PARENTS_CHILDREN_ANTECEDENT = "parents_children_antecedent"
    NO_SUBJECT = "no_subject"


@dataclass(frozen=True)
class Decision:
    outcome: Outcome
    form: PossessiveForm | None = None
    antecedent: str | None = None
    source: Source | None = None
    reason: Reason | None = None
    word: str | None = None  # "some"/"any" for SOME_ANY outcomes

    @classmethod
    def none(cls, reason: Reason) -> Decision:
        return cls(Outcome.NONE, reason=reason)

    @classmethod
    def possessive(cls, form: PossessiveForm, antecedent: str | None, source: Source) -> Decision:
        return cls(Outcome.POSSESSIVE, form=form, antecedent=antecedent, source=source)

    @classmethod
    def some_any(cls, word: str) -> Decision:
        return cls(Outcome.SOME_ANY, source=Source.DEFAULT, word=word)

    @property
    def reliability(self) -> Reliability:
        if self.source is Source.DEFAULT:
            return Reliability.DEFAULT_HEURISTIC
        return Reliability.RELIABLE

    @property
    def is_possessive(self) -> bool:
        return self.outcome is Outcome.POSSESSIVE

    @property
    def surface(self) -> str | None:
        """The determiner string this decision puts in the NP, if any."""
        if self.outcome is Outcome.POSSESSIVE:
            return str(self.form)
        return self.word

    def to_dict(self) -> dict[str, Any]:
        return {
            "outcome": self.outcome.value,
            "form": self.form.form.value if self.form is not None else self.word,
            "own": self.form.own if self.form is not None else False,
            "antecedent": self.antecedent,
            "source": self.source.value if self.source else None,
            "reliability": self.reliability.value,
            "reason": self.reason.value if self.reason else None,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> Decision:
        outcome = Outcome(d["outcome"])
        source = Source(d["source"]) if d.get("source") else None
        reason = Reason(d["reason"]) if d.get("reason") else None
        if outcome is Outcome.POSSESSIVE:
            dec = cls(outcome, PossessiveForm(Form(d["form"]), bool(d.get("own"))),
                      d.get("antecedent"), source)
        elif outcome is Outcome.SOME_ANY:
            dec = cls(outcome, source=source, word=d["form"])
        else:
            dec = cls(outcome, reason=reason, source=source)
        if "reliability" in d and Reliability(d["reliability"]) is not dec.reliability:
            raise ValueError("reliability inconsistent with source")
        return dec


# -- group I -----------------------------------------------------------------

def explicit_genitive_decision(sentence: Sentence, np: NounPhrase) -> Decision | None:
    """Translate a PRONOUN-no / jibun-no construction directly.

    Returns None when the NP carries no genitive marker. The antecedent of a
    genitive pronoun lies inside the NP itself, so it is reported as None.
    """
    kind = np.genitive.kind
    if kind is GenitiveKind.PRONOUN:
        return Decision.possessive(pronoun_for_antecedent(np.genitive.features), None, Source.EXPLICIT)
    if kind is GenitiveKind.REFLEXIVE:
        form, antecedent = resolve_reflexive(sentence, np)
        return Decision.possessive(form, antecedent, Source.EXPLICIT)
    return None


# -- group II ----------------------------------------------------------------

class Selector(str, enum.Enum):
    SUBJECT = "SUBJECT"
    HEAD_MODIFICANT = "HEAD_MODIFICANT"


class PatternError(ValueError):
    pass


@dataclass(frozen=True)
class ExpressionPattern:
    """A transfer pattern whose English side has one possessive slot.

    Verbal idioms match ``verb_lemma`` plus the direct object's head; NP
    idioms match ``head_lemma`` on an NP that modifies an NP headed by
    ``modificant_lemma``. The matched NP receives the possessive.
    """

    id: str
    template: str
    antecedent_selector: Selector
    verb_lemma: str | None = None
    object_lemma: str | None = None
    head_lemma: str | None = None
    modificant_lemma: str | None = None

    def __post_init__(self):
        if self.template.count(POSS_SLOT) != 1:
            raise PatternError(f"pattern {self.id!r}: template needs exactly one {POSS_SLOT}")
        verbal = (self.verb_lemma, self.object_lemma)
        nominal = (self.head_lemma, self.modificant_lemma)
        ok_verbal = None not in verbal and nominal == (None, None)
        ok_nominal = None not in nominal and verbal == (None, None)
        if not (ok_verbal or ok_nominal):
            raise PatternError(
                f"pattern {self.id!r}: match needs either verb_lemma+object_lemma "
                "or head_lemma+modificant_lemma"
            )

    @property
    def is_verbal(self) -> bool:
        return self.verb_lemma is not None

    def target(self, sentence: Sentence) -> NounPhrase | None:
        """The NP this pattern attaches its possessive to, if it matches."""
        if self.is_verbal:
            if sentence.verb_lemma != self.verb_lemma:
                return None
            for np in sentence.in_position_order():
                if np.role is GrammRole.DIRECT_OBJECT and np.head_lemma == self.object_lemma:
                    return np
            return None
        for np in sentence.in_position_order():
            if np.head_lemma == self.head_lemma and np.modifies is not None:
                if sentence.np(np.modifies).head_lemma == self.modificant_lemma:
                    return np
        return None

    def render(self, form: PossessiveForm) -> str:
        return self.template.replace(POSS_SLOT, str(form))


_PATTERN_KEYS = {"id", "match", "template", "antecedent_selector"}
_MATCH_KEYS = {"verb_lemma", "object_lemma", "head_lemma", "modificant_lemma"}


def patterns_from_list(data: Any) -> list[ExpressionPattern]:
    if not isinstance(data, list):
        raise PatternError("pattern file must hold a JSON array")
    out = []
    seen = set()
    for i, rec in enumerate(data):
        where = f"patterns[{i}]"
        if not isinstance(rec, dict) or set(rec) - _PATTERN_KEYS or not {"id", "match", "template"} <= set(rec):
            raise PatternError(f"{where}: expected keys {sorted(_PATTERN_KEYS)}")
        match = rec["match"]
        if not isinstance(match, dict) or set(match) - _MATCH_KEYS:
            raise PatternError(f"{where}.match: allowed keys {sorted(_MATCH_KEYS)}")
        try:
            selector = Selector(rec.get("antecedent_selector", "SUBJECT"))
        except ValueError:
            raise PatternError(f"{where}: unknown antecedent_selector") from None
        if rec["id"] in seen:
            raise PatternError(f"{where}: duplicate pattern id {rec['id']!r}")
        seen.add(rec["id"])
        out.append(ExpressionPattern(rec["id"], rec["template"], selector, **match))
    return out


def load_patterns(source_text: str) -> list[ExpressionPattern]:
    try:
        data = json.loads(source_text)
    except json.JSONDecodeError as exc:
        raise PatternError(f"parse error at line {exc.lineno}: {exc.msg}") from exc
    return patterns_from_list(data)


def patterns_to_list(patterns: Sequence[ExpressionPattern]) -> list[dict]:
    out = []
    for p in patterns:
        if p.is_verbal:
            match = {"verb_lemma": p.verb_lemma, "object_lemma": p.object_lemma}
        else:
            match = {"head_lemma": p.head_lemma, "modificant_lemma": p.modificant_lemma}
        out.append({"id": p.id, "match": match, "template": p.template,
                    "antecedent_selector": p.antecedent_selector.value})
    return out


def match_expression(
    sentence: Sentence,
    patterns: Sequence[ExpressionPattern],
    diagnostics: list[str] | None = None,
) -> list[tuple[str, Decision, ExpressionPattern]]:
    """Apply the pattern table to ``sentence``.

    Returns ``(np_id, decision, pattern)`` triples; the first pattern in
    table order wins when two would target the same NP. Patterns whose
    antecedent cannot be found are skipped and reported in ``diagnostics``.
    """
    results = []
    claimed: set[str] = set()
    for pat in patterns:
        target = pat.target(sentence)
        if target is None or target.id in claimed:
            continue
        if pat.antecedent_selector is Selector.SUBJECT:
            antecedent = sentence.subject
        else:
            antecedent = sentence.np(target.modifies) if target.modifies else None
        if antecedent is None:
            msg = (f"sentence {sentence.id!r}: pattern {pat.id!r} matched NP {target.id!r} "
                   f"but no {pat.antecedent_selector.value.lower()} antecedent; skipped")
            logger.warning(msg)
            if diagnostics is not None:
                diagnostics.append(msg)
            continue
        claimed.add(target.id)
        form = pronoun_for_antecedent(antecedent)
        results.append((target.id, Decision.possessive(form, antecedent.id, Source.PATTERN), pat))
    return results
