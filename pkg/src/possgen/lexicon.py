"""Noun/verb lexicon and the semantic is-a hierarchy.

The lexicon file is JSON with top-level arrays ``categories``, ``nouns`` and
``verbs``, plus an optional ``verb_attributes`` array declaring the closed set
of verbal semantic attribute tags (defaults to POSSESSION, ACQUISITION and
COPULA).
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Mapping


class LexiconError(ValueError):
    """Raised when a lexicon file is malformed or inconsistent."""


class TriggerClass(str, enum.Enum):
    KIN = "KIN"
    KIN_PARENT = "KIN_PARENT"
    KIN_CHILD = "KIN_CHILD"
    BODY_PART = "BODY_PART"
    WORK = "WORK"
    PERSONAL_POSSESSION = "PERSONAL_POSSESSION"
    ATTRIBUTE = "ATTRIBUTE"
    RELATIONAL_PERSON = "RELATIONAL_PERSON"


class KinFeature(str, enum.Enum):
    SPOUSE = "SPOUSE"
    SIBLING = "SIBLING"
    ANCESTOR = "ANCESTOR"
    DESCENDANT = "DESCENDANT"
    OTHER_KIN = "OTHER_KIN"


POSSESSION = "POSSESSION"
ACQUISITION = "ACQUISITION"
COPULA = "COPULA"
DEFAULT_VERB_ATTRIBUTES = frozenset({POSSESSION, ACQUISITION, COPULA})


@dataclass(frozen=True)
class SemanticCategory:
    id: str
    parent: str | None = None


class SemanticHierarchy:
    """A forest of semantic categories linked by parent pointers."""

    def __init__(self, categories: Mapping[str, SemanticCategory]):
        self.categories = MappingProxyType(dict(categories))
        for cat in self.categories.values():
            if cat.parent is not None and cat.parent not in self.categories:
                raise LexiconError(
                    f"unknown category reference: {cat.id!r} has parent {cat.parent!r}"
                )
        self._check_acyclic()

    def _check_acyclic(self) -> None:
        done: set[str] = set()
        for start in self.categories:
            path: list[str] = []
            seen: set[str] = set()
            node: str | None = start
            while node is not None and node not in done:
                if node in seen:
                    cycle = path[path.index(node):] + [node]
                    raise LexiconError("hierarchy cycle: " + " -> ".join(cycle))
                seen.add(node)
                path.append(node)
                node = self.categories[node].parent
            done.update(path)

    def __contains__(self, cat_id: object) -> bool:
        return cat_id in self.categories

    def __len__(self) -> int:
        return len(self.categories)

    def ancestors(self, cat_id: str) -> list[str]:
        """Proper ancestors of ``cat_id``, nearest first."""
        if cat_id not in self.categories:
            raise LexiconError(f"unknown category id: {cat_id!r}")
        out = []
        parent = self.categories[cat_id].parent
        while parent is not None:
            out.append(parent)
            parent = self.categories[parent].parent
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SemanticHierarchy):
            return NotImplemented
        return dict(self.categories) == dict(other.categories)


def is_a(hierarchy: SemanticHierarchy, child: str, ancestor: str) -> bool:
    """True iff ``child`` is a proper (transitive) descendant of ``ancestor``."""
    if ancestor not in hierarchy:
        raise LexiconError(f"unknown category id: {ancestor!r}")
    return ancestor in hierarchy.ancestors(child)


@dataclass(frozen=True)
class NounEntry:
    lemma: str
    english: str
    categories: frozenset[str]
    trigger: bool = False
    trigger_classes: frozenset[TriggerClass] = frozenset()
    kin_features: frozenset[KinFeature] = frozenset()
    countable: bool = True

    def has_class(self, cls: TriggerClass) -> bool:
        return cls in self.trigger_classes

    @property
    def is_kin_or_body_part(self) -> bool:
        return bool(self.trigger_classes & {TriggerClass.KIN, TriggerClass.BODY_PART})


@dataclass(frozen=True)
class VerbEntry:
    lemma: str
    english: str
    attributes: frozenset[str] = frozenset()

    def has(self, attribute: str) -> bool:
        return attribute in self.attributes


@dataclass(frozen=True)
class Lexicon:
    nouns: Mapping[str, NounEntry]
    verbs: Mapping[str, VerbEntry]
    hierarchy: SemanticHierarchy
    verb_attributes: frozenset[str] = field(default=DEFAULT_VERB_ATTRIBUTES)

    def noun(self, lemma: str) -> NounEntry:
        try:
            return self.nouns[lemma]
        except KeyError:
            raise LexiconError(f"unknown noun lemma: {lemma!r}") from None

    def verb(self, lemma: str) -> VerbEntry:
        try:
            return self.verbs[lemma]
        except KeyError:
            raise LexiconError(f"unknown verb lemma: {lemma!r}") from None


_CATEGORY_KEYS = {"id", "parent"}
_NOUN_KEYS = {"lemma", "english", "categories", "trigger", "trigger_classes",
              "kin_features", "countable"}
_VERB_KEYS = {"lemma", "english", "attributes"}
_TOP_KEYS = {"categories", "nouns", "verbs", "verb_attributes"}


def _check_keys(obj: Any, allowed: set[str], required: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise LexiconError(f"{where}: expected an object")
    unknown = set(obj) - allowed
    if unknown:
        raise LexiconError(f"{where}: unknown key(s) {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise LexiconError(f"{where}: missing key(s) {sorted(missing)}")


def _str_list(value: Any, where: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise LexiconError(f"{where}: expected a list of strings")
    return value


def _enum_set(enum_cls: type[enum.Enum], values: Any, where: str) -> frozenset:
    out = set()
    for v in _str_list(values, where):
        try:
            out.add(enum_cls(v))
        except ValueError:
            raise LexiconError(f"{where}: unknown {enum_cls.__name__} {v!r}") from None
    return frozenset(out)


def _parse_noun(rec: Any, where: str, hierarchy: SemanticHierarchy) -> NounEntry:
    _check_keys(rec, _NOUN_KEYS, {"lemma", "english", "categories"}, where)
    cats = frozenset(_str_list(rec["categories"], where + ".categories"))
    if not cats:
        raise LexiconError(f"{where}: noun without category")
    for c in sorted(cats):
        if c not in hierarchy:
            raise LexiconError(f"{where}: unknown category reference {c!r}")
    trigger = rec.get("trigger", False)
    countable = rec.get("countable", True)
    if not isinstance(trigger, bool) or not isinstance(countable, bool):
        raise LexiconError(f"{where}: trigger/countable must be booleans")
    classes = set(_enum_set(TriggerClass, rec.get("trigger_classes", []),
                            where + ".trigger_classes"))
    kin = _enum_set(KinFeature, rec.get("kin_features", []), where + ".kin_features")
    if trigger and not classes:
        raise LexiconError(f"{where}: trigger entry without trigger class")
    if classes and not trigger:
        raise LexiconError(f"{where}: trigger classes on a non-trigger entry")
    if classes & {TriggerClass.KIN_PARENT, TriggerClass.KIN_CHILD}:
        classes.add(TriggerClass.KIN)
    if kin and TriggerClass.KIN not in classes:
        raise LexiconError(f"{where}: kin features on a non-kin entry")
    return NounEntry(
        lemma=rec["lemma"], english=rec["english"], categories=cats, trigger=trigger,
        trigger_classes=frozenset(classes), kin_features=kin, countable=countable,
    )


def lexicon_from_dict(data: Any) -> Lexicon:
    _check_keys(data, _TOP_KEYS, {"categories", "nouns", "verbs"}, "lexicon")
    for key in ("categories", "nouns", "verbs"):
        if not isinstance(data[key], list):
            raise LexiconError(f"lexicon.{key}: expected an array")

    cats: dict[str, SemanticCategory] = {}
    for i, rec in enumerate(data["categories"]):
        where = f"categories[{i}]"
        _check_keys(rec, _CATEGORY_KEYS, {"id"}, where)
        cid, parent = rec["id"], rec.get("parent")
        if not isinstance(cid, str) or not (parent is None or isinstance(parent, str)):
            raise LexiconError(f"{where}: id/parent must be strings")
        if cid in cats:
            raise LexiconError(f"{where}: duplicate category {cid!r}")
        cats[cid] = SemanticCategory(cid, parent)
    hierarchy = SemanticHierarchy(cats)

    declared = DEFAULT_VERB_ATTRIBUTES
    if "verb_attributes" in data:
        declared = frozenset(_str_list(data["verb_attributes"], "verb_attributes"))

    nouns: dict[str, NounEntry] = {}
    for i, rec in enumerate(data["nouns"]):
        entry = _parse_noun(rec, f"nouns[{i}]", hierarchy)
        if entry.lemma in nouns:
            raise LexiconError(f"nouns[{i}]: duplicate lemma {entry.lemma!r}")
        nouns[entry.lemma] = entry

    verbs: dict[str, VerbEntry] = {}
    for i, rec in enumerate(data["verbs"]):
        where = f"verbs[{i}]"
        _check_keys(rec, _VERB_KEYS, {"lemma", "english"}, where)
        attrs = frozenset(_str_list(rec.get("attributes", []), where + ".attributes"))
        undeclared = attrs - declared
        if undeclared:
            raise LexiconError(f"{where}: undeclared verb attribute(s) {sorted(undeclared)}")
        if rec["lemma"] in verbs:
            raise LexiconError(f"{where}: duplicate lemma {rec['lemma']!r}")
        verbs[rec["lemma"]] = VerbEntry(rec["lemma"], rec["english"], attrs)

    return Lexicon(MappingProxyType(nouns), MappingProxyType(verbs), hierarchy, declared)


def load_lexicon(source_text: str) -> Lexicon:
    """Parse and validate lexicon JSON text."""
    try:
        data = json.loads(source_text)
    except json.JSONDecodeError as exc:
        raise LexiconError(f"parse error at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return lexicon_from_dict(data)


def lexicon_to_dict(lexicon: Lexicon) -> dict:
    cats = []
    for cat in lexicon.hierarchy.categories.values():
        rec: dict[str, Any] = {"id": cat.id}
        if cat.parent is not None:
            rec["parent"] = cat.parent
        cats.append(rec)
    nouns = [
        {
            "lemma": n.lemma,
            "english": n.english,
            "categories": sorted(n.categories),
            "trigger": n.trigger,
            "trigger_classes": sorted(c.value for c in n.trigger_classes),
            "kin_features": sorted(k.value for k in n.kin_features),
            "countable": n.countable,
        }
        for n in lexicon.nouns.values()
    ]
    verbs = [
        {"lemma": v.lemma, "english": v.english, "attributes": sorted(v.attributes)}
        for v in lexicon.verbs.values()
    ]
    return {
        "categories": cats,
        "nouns": nouns,
        "verbs": verbs,
        "verb_attributes": sorted(lexicon.verb_attributes),
    }


def dump_lexicon(lexicon: Lexicon) -> str:
    return json.dumps(lexicon_to_dict(lexicon), indent=2, ensure_ascii=False)
