"""Antecedent-to-possessive mapping, deictic possessives and reflexive resolution."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from .ir import (CompoundElement, Features, Gender, GenitiveKind, Modality,
                 NounPhrase, Number, Person, Sentence)


class UnresolvedReflexive(ValueError):
    """A reflexive genitive appeared in a clause with no subject."""


class Form(str, enum.Enum):
    MY = "my"
    OUR = "our"
    YOUR = "your"
    HIS = "his"
    HER = "her"
    ITS = "its"
    THEIR = "their"
    ONES = "one's"


@dataclass(frozen=True)
class PossessiveForm:
    form: Form
    own: bool = False

    def __str__(self) -> str:
        return f"{self.form.value} own" if self.own else self.form.value


def _simple(f: Features) -> Form:
    if f.person is Person.FIRST:
        return Form.MY if f.number is Number.SINGULAR else Form.OUR
    if f.person is Person.SECOND:
        return Form.YOUR
    # anything else, including unmarked person, is treated as third person
    if f.number is Number.PLURAL:
        return Form.THEIR
    if f.generic_one:
        return Form.ONES
    if f.gender is Gender.MALE:
        return Form.HIS
    if f.gender is Gender.FEMALE:
        return Form.HER
    if f.human:
        return Form.THEIR
    return Form.ITS


def _compound(elements: Iterable[CompoundElement]) -> Form:
    persons = {el.person for el in elements}
    if Person.FIRST in persons:
        return Form.OUR
    if Person.SECOND in persons:
        return Form.YOUR
    return Form.THEIR


def pronoun_for_antecedent(
    features: Features | NounPhrase,
    compound_elements: Iterable[CompoundElement] = (),
) -> PossessiveForm:
    """Pick the possessive determiner for an antecedent.

    Accepts either a bare feature bundle (with optional compound elements)
    or a :class:`NounPhrase`, whose own compound elements are used. A
    non-empty element list selects the compound branch.
    """
    if isinstance(features, NounPhrase):
        compound_elements = features.compound_elements or compound_elements
        features = features.features
    elements = tuple(compound_elements)
    if elements:
        return PossessiveForm(_compound(elements))
    return PossessiveForm(_simple(features))


def deictic_pronoun(modality: Modality) -> PossessiveForm:
    # speaker for statements, hearer for commands and questions
    if modality is Modality.DECLARATIVE:
        return PossessiveForm(Form.MY)
    return PossessiveForm(Form.YOUR)


def resolve_reflexive(sentence: Sentence, np: NounPhrase) -> tuple[PossessiveForm, str]:
    """Resolve a reflexive genitive to ``<form> own`` and its antecedent.

    The antecedent is the clause subject. A reflexive inside the subject
    itself is deictic and follows the sentence modality; the returned
    antecedent is then ``"DEICTIC"``.
    """
    if np.genitive.kind is not GenitiveKind.REFLEXIVE:
        raise ValueError(f"NP {np.id!r} has no reflexive genitive")
    subject = sentence.subject
    if subject is None:
        raise UnresolvedReflexive(
            f"sentence {sentence.id!r}: reflexive on NP {np.id!r} but no subject"
        )
    if subject.id == np.id:
        return PossessiveForm(deictic_pronoun(sentence.modality).form, own=True), "DEICTIC"
    return PossessiveForm(pronoun_for_antecedent(subject).form, own=True), subject.id
