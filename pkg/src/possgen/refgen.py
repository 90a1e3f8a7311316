"""Default possessives for NPs headed by trigger-nouns.

Covers referentiality resolution, the two default rules (deictic for
kin/body-part subjects, subject-anchored elsewhere) with the
possession/acquisition block, the parents/children pairing pass, the
compound-subject override, and the optional some/any fallback.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, fields
from typing import Callable, Mapping

from .ir import GrammRole, Modality, NounPhrase, Number, Person, Referentiality, Sentence
from .lexicon import (ACQUISITION, COPULA, POSSESSION, KinFeature, Lexicon,
                      TriggerClass, is_a)
from .patterns import DEICTIC, Decision, Reason, Source
from .pronouns import Form, PossessiveForm, deictic_pronoun, pronoun_for_antecedent

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RefgenConfig:
    enable_some_any: bool = False
    enable_compound_subject_rule: bool = True
    enable_extension_constraints: bool = False


def load_config(source_text: str) -> RefgenConfig:
    data = json.loads(source_text)
    if not isinstance(data, dict):
        raise ValueError("config must be a JSON object")
    known = {f.name for f in fields(RefgenConfig)}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown config key(s) {sorted(unknown)}")
    for k, v in data.items():
        if not isinstance(v, bool):
            raise ValueError(f"config key {k!r} must be a boolean")
    return RefgenConfig(**data)


# Extra blocking constraints, consulted only when enable_extension_constraints
# is set. Each returns a reason to block or None. None ship by default.
ExtensionConstraint = Callable[[Sentence, NounPhrase, Lexicon], "Reason | None"]
EXTENSION_CONSTRAINTS: list[ExtensionConstraint] = []


def _copula_complement(sentence: Sentence) -> NounPhrase | None:
    for np in sentence.in_position_order():
        if np.role is GrammRole.DIRECT_OBJECT:
            return np
    return None


def determine_referentiality(sentence: Sentence, np: NounPhrase, lexicon: Lexicon) -> Referentiality:
    """Resolve an NP's referentiality.

    Annotated values pass through. Otherwise the subject of a copula whose
    semantic category lies strictly below the complement's category is
    generic ("noses are sensory organs"); everything else is referential.
    """
    noun = lexicon.noun(np.head_lemma)
    if np.referentiality is not Referentiality.UNSPECIFIED:
        return np.referentiality
    if np.role is GrammRole.SUBJECT and lexicon.verb(sentence.verb_lemma).has(COPULA):
        complement = _copula_complement(sentence)
        if complement is not None:
            target = lexicon.noun(complement.head_lemma)
            for sub_cat in sorted(noun.categories):
                for obj_cat in sorted(target.categories):
                    if is_a(lexicon.hierarchy, sub_cat, obj_cat):
                        return Referentiality.GENERIC
    return Referentiality.REFERENTIAL


def some_any(sentence: Sentence, np: NounPhrase, lexicon: Lexicon) -> str | None:
    """Determiner for a verb-blocked trigger NP, or None.

    Only plural or uncountable heads qualify; questions and negated clauses
    take "any", everything else "some".
    """
    if np.slot_filled:
        return None
    noun = lexicon.noun(np.head_lemma)
    if np.number is Number.SINGULAR and noun.countable:
        return None
    if sentence.modality is Modality.INTERROGATIVE or sentence.negated:
        return "any"
    return "some"


def decide_default_pronoun(
    sentence: Sentence,
    np: NounPhrase,
    lexicon: Lexicon,
    config: RefgenConfig = RefgenConfig(),
    diagnostics: list[str] | None = None,
) -> Decision:
    if np.slot_filled:
        return Decision.none(Reason.SLOT_FILLED)
    noun = lexicon.noun(np.head_lemma)
    if not noun.trigger:
        return Decision.none(Reason.NOT_TRIGGER)

    ref = determine_referentiality(sentence, np, lexicon)
    if ref is Referentiality.GENERIC:
        return Decision.none(Reason.GENERIC)
    if ref is Referentiality.ASCRIPTIVE:
        return Decision.none(Reason.ASCRIPTIVE)

    if config.enable_extension_constraints:
        for constraint in EXTENSION_CONSTRAINTS:
            reason = constraint(sentence, np, lexicon)
            if reason is not None:
                return Decision.none(reason)

    if np.role is GrammRole.SUBJECT:
        if noun.is_kin_or_body_part:
            return Decision.possessive(deictic_pronoun(sentence.modality), DEICTIC, Source.DEFAULT)
        return Decision.none(Reason.SUBJECT_NOT_KIN_BODY)

    if np.role is GrammRole.DIRECT_OBJECT:
        verb = lexicon.verb(sentence.verb_lemma)
        blocked = (Reason.POSSESSION_VERB if verb.has(POSSESSION)
                   else Reason.ACQUISITION_VERB if verb.has(ACQUISITION) else None)
        if blocked is not None:
            if config.enable_some_any:
                word = some_any(sentence, np, lexicon)
                if word is not None:
                    return Decision.some_any(word)
            return Decision.none(blocked)

    subject = sentence.subject
    if subject is None:
        msg = f"sentence {sentence.id!r}: NP {np.id!r} qualifies for a default possessive but has no subject"
        logger.warning(msg)
        if diagnostics is not None:
            diagnostics.append(msg)
        return Decision.none(Reason.NO_SUBJECT)
    return Decision.possessive(pronoun_for_antecedent(subject), subject.id, Source.DEFAULT)


def _pc_class(np: NounPhrase, lexicon: Lexicon) -> TriggerClass | None:
    noun = lexicon.nouns.get(np.head_lemma)
    if noun is None:
        return None
    if noun.has_class(TriggerClass.KIN_PARENT):
        return TriggerClass.KIN_PARENT
    if noun.has_class(TriggerClass.KIN_CHILD):
        return TriggerClass.KIN_CHILD
    return None


def _anchored_to_kin_compound(sentence: Sentence, decision: Decision) -> bool:
    subject = sentence.subject
    return (
        subject is not None
        and decision.antecedent == subject.id
        and any(el.kin_head_lemma is not None for el in subject.compound_elements)
    )


def apply_parents_children(
    sentence: Sentence,
    decisions: Mapping[str, Decision],
    lexicon: Lexicon,
) -> dict[str, Decision]:
    """Pair parent and child nouns within one sentence.

    A default possessive on a parent/child noun survives only if the
    sentence also holds a noun of the opposite class; the earlier of the
    pair then becomes the antecedent of the later one and loses its own
    possessive. Defaults anchored to a compound subject that names a
    relative are left alone, since the subject already fixes the relation.
    """
    out = dict(decisions)
    members = [(np, cls) for np in sentence.in_position_order()
               if (cls := _pc_class(np, lexicon)) is not None]
    present = {cls for _, cls in members}
    for np, cls in members:
        dec = out[np.id]
        if not (dec.is_possessive and dec.source is Source.DEFAULT):
            continue
        if _anchored_to_kin_compound(sentence, dec):
            continue
        if len(present) < 2:
            out[np.id] = Decision.none(Reason.PARENTS_CHILDREN_UNPAIRED)
            continue
        earlier = [x for x, c in members if c is not cls and x.position < np.position]
        if earlier:
            antecedent = earlier[0]
            out[np.id] = Decision.possessive(pronoun_for_antecedent(antecedent), antecedent.id, Source.DEFAULT)
        elif any(c is not cls and x.position > np.position for x, c in members):
            out[np.id] = Decision.none(Reason.PARENTS_CHILDREN_ANTECEDENT)
        else:
            out[np.id] = Decision.none(Reason.PARENTS_CHILDREN_UNPAIRED)
    return out


def compound_subject_form(subject: NounPhrase, np: NounPhrase, lexicon: Lexicon) -> PossessiveForm | None:
    """my/our override for a relative of a compound "I and my X" subject.

    With a spouse in the subject, only shared descendants are "our"; with a
    sibling, shared ancestors and siblings are "our" and descendants "my".
    Returns None when the rule does not apply.
    """
    elements = subject.compound_elements
    if not elements or not any(el.person is Person.FIRST for el in elements):
        return None
    partner_kin: set[KinFeature] = set()
    for el in elements:
        if el.kin_head_lemma is not None and el.kin_head_lemma in lexicon.nouns:
            partner_kin |= lexicon.nouns[el.kin_head_lemma].kin_features
    noun = lexicon.nouns.get(np.head_lemma)
    if noun is None or not noun.has_class(TriggerClass.KIN) or not noun.kin_features:
        return None
    kin = noun.kin_features
    if KinFeature.SPOUSE in partner_kin:
        return PossessiveForm(Form.OUR if KinFeature.DESCENDANT in kin else Form.MY)
    if KinFeature.SIBLING in partner_kin:
        if kin & {KinFeature.ANCESTOR, KinFeature.SIBLING}:
            return PossessiveForm(Form.OUR)
        return PossessiveForm(Form.MY)
    return None


def apply_compound_subject(
    sentence: Sentence,
    decisions: Mapping[str, Decision],
    lexicon: Lexicon,
) -> dict[str, Decision]:
    out = dict(decisions)
    subject = sentence.subject
    if subject is None or not subject.is_compound:
        return out
    for np in sentence.nps:
        dec = out[np.id]
        if not (dec.is_possessive and dec.source is Source.DEFAULT and dec.antecedent == subject.id):
            continue
        form = compound_subject_form(subject, np, lexicon)
        if form is not None:
            out[np.id] = Decision.possessive(form, subject.id, Source.DEFAULT)
    return out
