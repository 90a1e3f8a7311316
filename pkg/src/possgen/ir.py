"""Sentence intermediate representation consumed by the engine.

One record describes a single clause after analysis: its modality, main
verb, and ordered noun phrases with the features the possessive rules
consult. Records are JSON objects, one per line in a corpus file.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Any

from .lexicon import Lexicon


class RecordError(ValueError):
    """Raised when a corpus record is malformed or violates an invariant."""


class Modality(str, enum.Enum):
    DECLARATIVE = "DECLARATIVE"
    IMPERATIVE = "IMPERATIVE"
    INTERROGATIVE = "INTERROGATIVE"


class GrammRole(str, enum.Enum):
    SUBJECT = "SUBJECT"
    DIRECT_OBJECT = "DIRECT_OBJECT"
    OTHER = "OTHER"


class Person(str, enum.Enum):
    FIRST = "FIRST"
    SECOND = "SECOND"
    THIRD = "THIRD"
    UNMARKED = "UNMARKED"


class Number(str, enum.Enum):
    SINGULAR = "SINGULAR"
    PLURAL = "PLURAL"


class Gender(str, enum.Enum):
    MALE = "MALE"
    FEMALE = "FEMALE"
    UNKNOWN = "UNKNOWN"


class Referentiality(str, enum.Enum):
    REFERENTIAL = "REFERENTIAL"
    GENERIC = "GENERIC"
    ASCRIPTIVE = "ASCRIPTIVE"
    UNSPECIFIED = "UNSPECIFIED"


@dataclass(frozen=True)
class Features:
    """Person/number/gender/humanness of a (possible) antecedent."""

    person: Person = Person.THIRD
    number: Number = Number.SINGULAR
    gender: Gender = Gender.UNKNOWN
    human: bool = False
    generic_one: bool = False


@dataclass(frozen=True)
class CompoundElement:
    person: Person = Person.THIRD
    number: Number = Number.SINGULAR
    gender: Gender = Gender.UNKNOWN
    human: bool = True
    kin_head_lemma: str | None = None


class GenitiveKind(str, enum.Enum):
    NONE = "NONE"
    PRONOUN = "PRONOUN"
    REFLEXIVE = "REFLEXIVE"


@dataclass(frozen=True)
class GenitiveMarker:
    kind: GenitiveKind = GenitiveKind.NONE
    features: Features | None = None  # set iff kind is PRONOUN


NO_GENITIVE = GenitiveMarker()
REFLEXIVE = GenitiveMarker(GenitiveKind.REFLEXIVE)


@dataclass(frozen=True)
class NounPhrase:
    id: str
    head_lemma: str
    role: GrammRole
    position: int
    person: Person = Person.THIRD
    number: Number = Number.SINGULAR
    gender: Gender = Gender.UNKNOWN
    human: bool = False
    generic_one: bool = False
    referentiality: Referentiality = Referentiality.UNSPECIFIED
    determiner: str | None = None  # None is an empty determiner slot
    genitive: GenitiveMarker = NO_GENITIVE
    compound_elements: tuple[CompoundElement, ...] = ()
    modifies: str | None = None  # id of the NP this one modifies, if any

    @property
    def features(self) -> Features:
        return Features(self.person, self.number, self.gender, self.human, self.generic_one)

    @property
    def is_compound(self) -> bool:
        return bool(self.compound_elements)

    @property
    def slot_filled(self) -> bool:
        return self.determiner is not None


@dataclass(frozen=True)
class Sentence:
    id: str
    modality: Modality
    verb_lemma: str
    nps: tuple[NounPhrase, ...] = ()
    negated: bool = False

    @property
    def subject(self) -> NounPhrase | None:
        for np in self.nps:
            if np.role is GrammRole.SUBJECT:
                return np
        return None

    def np(self, np_id: str) -> NounPhrase:
        for np in self.nps:
            if np.id == np_id:
                return np
        raise KeyError(np_id)

    def in_position_order(self) -> list[NounPhrase]:
        return sorted(self.nps, key=lambda np: np.position)


# -- parsing -----------------------------------------------------------------

_SENTENCE_KEYS = {"id", "modality", "verb_lemma", "negated", "nps"}
_NP_KEYS = {"id", "head_lemma", "role", "position", "person", "number", "gender",
            "human", "generic_one", "referentiality", "determiner", "genitive",
            "compound_elements", "modifies"}
_FEATURE_KEYS = {"person", "number", "gender", "human", "generic_one"}
_ELEMENT_KEYS = {"person", "number", "gender", "human", "kin_head_lemma"}
# extra per-NP keys tolerated on input so that gold and annotated files parse
_NP_PASSTHROUGH = {"gold_possessive", "decision"}


def _enum(cls, value, where):
    try:
        return cls(value)
    except ValueError:
        raise RecordError(f"{where}: unknown {cls.__name__} token {value!r}") from None


def _obj(value, allowed, required, where):
    if not isinstance(value, dict):
        raise RecordError(f"{where}: expected an object")
    unknown = set(value) - allowed
    if unknown:
        raise RecordError(f"{where}: unknown field(s) {sorted(unknown)}")
    missing = required - set(value)
    if missing:
        raise RecordError(f"{where}: missing field(s) {sorted(missing)}")
    return value


def _bool(value, where):
    if not isinstance(value, bool):
        raise RecordError(f"{where}: expected a boolean")
    return value


def _features(d: dict, where: str) -> dict:
    out: dict[str, Any] = {}
    if "person" in d:
        out["person"] = _enum(Person, d["person"], where + ".person")
    if "number" in d:
        out["number"] = _enum(Number, d["number"], where + ".number")
    if "gender" in d:
        out["gender"] = _enum(Gender, d["gender"], where + ".gender")
    if "human" in d:
        out["human"] = _bool(d["human"], where + ".human")
    if "generic_one" in d:
        out["generic_one"] = _bool(d["generic_one"], where + ".generic_one")
    return out


def _genitive(value, where) -> GenitiveMarker:
    if value is None or value == "NONE":
        return NO_GENITIVE
    if value == "REFLEXIVE":
        return REFLEXIVE
    if isinstance(value, str):
        raise RecordError(f"{where}: unknown GenitiveMarker token {value!r}")
    d = _obj(value, _FEATURE_KEYS | {"kind"}, {"kind"}, where)
    kind = _enum(GenitiveKind, d["kind"], where + ".kind")
    if kind is not GenitiveKind.PRONOUN:
        if set(d) != {"kind"}:
            raise RecordError(f"{where}: features only allowed on PRONOUN markers")
        return NO_GENITIVE if kind is GenitiveKind.NONE else REFLEXIVE
    return GenitiveMarker(kind, Features(**_features(d, where)))


def _noun_phrase(d: Any, where: str) -> NounPhrase:
    d = _obj(d, _NP_KEYS | _NP_PASSTHROUGH, {"id", "head_lemma", "role", "position"}, where)
    if not isinstance(d["id"], str) or not isinstance(d["head_lemma"], str):
        raise RecordError(f"{where}: id and head_lemma must be strings")
    pos = d["position"]
    if not isinstance(pos, int) or isinstance(pos, bool):
        raise RecordError(f"{where}: position must be an integer")
    det = d.get("determiner")
    if det is not None and (not isinstance(det, str) or not det.strip()):
        raise RecordError(f"{where}: determiner must be null or a non-empty string")
    elements = d.get("compound_elements", [])
    if not isinstance(elements, list):
        raise RecordError(f"{where}.compound_elements: expected an array")
    compound = []
    for j, el in enumerate(elements):
        ew = f"{where}.compound_elements[{j}]"
        el = _obj(el, _ELEMENT_KEYS, set(), ew)
        kin = el.get("kin_head_lemma")
        if kin is not None and not isinstance(kin, str):
            raise RecordError(f"{ew}.kin_head_lemma: expected a string")
        feats = _features({k: v for k, v in el.items() if k != "kin_head_lemma"}, ew)
        compound.append(CompoundElement(kin_head_lemma=kin, **feats))
    modifies = d.get("modifies")
    if modifies is not None and not isinstance(modifies, str):
        raise RecordError(f"{where}.modifies: expected an NP id")
    return NounPhrase(
        id=d["id"],
        head_lemma=d["head_lemma"],
        role=_enum(GrammRole, d["role"], where + ".role"),
        position=pos,
        referentiality=_enum(Referentiality, d.get("referentiality", "UNSPECIFIED"),
                             where + ".referentiality"),
        determiner=det,
        genitive=_genitive(d.get("genitive"), where + ".genitive"),
        compound_elements=tuple(compound),
        modifies=modifies,
        **_features(d, where),
    )


def sentence_from_dict(d: Any) -> Sentence:
    d = _obj(d, _SENTENCE_KEYS | {"trace"}, {"id", "modality", "verb_lemma"}, "record")
    sid = d["id"]
    if not isinstance(sid, str) or not isinstance(d["verb_lemma"], str):
        raise RecordError("record: id and verb_lemma must be strings")
    where = f"record {sid!r}"
    raw_nps = d.get("nps", [])
    if not isinstance(raw_nps, list):
        raise RecordError(f"{where}: nps must be an array")
    nps = tuple(_noun_phrase(x, f"{where}.nps[{i}]") for i, x in enumerate(raw_nps))

    ids = [np.id for np in nps]
    if len(set(ids)) != len(ids):
        dup = sorted({i for i in ids if ids.count(i) > 1})
        raise RecordError(f"{where}: duplicate NP id(s) {dup}")
    if sum(np.role is GrammRole.SUBJECT for np in nps) > 1:
        raise RecordError(f"{where}: multiple subjects")
    if sorted(np.position for np in nps) != list(range(1, len(nps) + 1)):
        raise RecordError(f"{where}: NP positions must be unique and dense from 1")
    for np in nps:
        if np.modifies is not None and np.modifies not in ids:
            raise RecordError(f"{where}: NP {np.id!r} modifies unknown NP {np.modifies!r}")
    return Sentence(
        id=sid,
        modality=_enum(Modality, d["modality"], where + ".modality"),
        verb_lemma=d["verb_lemma"],
        nps=nps,
        negated=_bool(d.get("negated", False), where + ".negated"),
    )


def parse_record(line: str) -> Sentence:
    """Parse one JSON Lines corpus record into a :class:`Sentence`."""
    try:
        data = json.loads(line)
    except json.JSONDecodeError as exc:
        raise RecordError(f"malformed record: {exc.msg} at column {exc.colno}") from exc
    return sentence_from_dict(data)


# -- serialization -----------------------------------------------------------

def _features_to_dict(f: Features | CompoundElement) -> dict:
    return {
        "person": f.person.value,
        "number": f.number.value,
        "gender": f.gender.value,
        "human": f.human,
    }


def np_to_dict(np: NounPhrase) -> dict:
    if np.genitive.kind is GenitiveKind.PRONOUN:
        g = np.genitive.features
        genitive: Any = {"kind": "PRONOUN", **_features_to_dict(g), "generic_one": g.generic_one}
    else:
        genitive = np.genitive.kind.value
    return {
        "id": np.id,
        "head_lemma": np.head_lemma,
        "role": np.role.value,
        "position": np.position,
        **_features_to_dict(np.features),
        "generic_one": np.generic_one,
        "referentiality": np.referentiality.value,
        "determiner": np.determiner,
        "genitive": genitive,
        "compound_elements": [
            {**_features_to_dict(el), "kin_head_lemma": el.kin_head_lemma}
            for el in np.compound_elements
        ],
        "modifies": np.modifies,
    }


def sentence_to_dict(s: Sentence) -> dict:
    return {
        "id": s.id,
        "modality": s.modality.value,
        "verb_lemma": s.verb_lemma,
        "negated": s.negated,
        "nps": [np_to_dict(np) for np in s.nps],
    }


def serialize_record(s: Sentence) -> str:
    return json.dumps(sentence_to_dict(s), ensure_ascii=False)


def read_corpus(text: str) -> list[Sentence]:
    """Parse every non-blank line; errors carry the 1-based line number."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            out.append(parse_record(line))
        except RecordError as exc:
            raise RecordError(f"line {lineno}: {exc}") from exc
    return out


# -- lexicon cross-check -----------------------------------------------------

def validate_against_lexicon(sentence: Sentence, lexicon: Lexicon) -> list[str]:
    """List every lemma in ``sentence`` the lexicon cannot resolve.

    An empty list means the sentence is fully resolvable.
    """
    problems = []
    # an NP-less sentence yields no decisions, so its verb is never consulted
    if sentence.nps and sentence.verb_lemma not in lexicon.verbs:
        problems.append(f"unknown verb lemma {sentence.verb_lemma!r}")
    for np in sentence.nps:
        if np.head_lemma not in lexicon.nouns:
            problems.append(f"NP {np.id}: unknown noun lemma {np.head_lemma!r}")
        for el in np.compound_elements:
            if el.kin_head_lemma is not None and el.kin_head_lemma not in lexicon.nouns:
                problems.append(f"NP {np.id}: unknown kin lemma {el.kin_head_lemma!r}")
    return problems
