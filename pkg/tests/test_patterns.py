import json

import pytest

from possgen.ir import GrammRole, Modality, NounPhrase, Sentence, Gender, REFLEXIVE
from possgen.patterns import (Decision, ExpressionPattern, Outcome, PatternError, Reason,
                              Selector, Source, explicit_genitive_decision, load_patterns,
                              match_expression, patterns_to_list)
from possgen.pronouns import UnresolvedReflexive
from conftest import DATA
from oracles import form_for_np
from possgen.ir import read_corpus


def test_explicit_pronoun_his(core_corpus):
    s = core_corpus[0]
    d = explicit_genitive_decision(s, s.np("n2"))
    assert d.outcome is Outcome.POSSESSIVE and str(d.form) == "his"
    assert d.source is Source.EXPLICIT and d.reliability.value == "RELIABLE"


def test_explicit_reflexive_her_own(core_corpus):
    s = core_corpus[1]
    d = explicit_genitive_decision(s, s.np("n2"))
    assert str(d.form) == "her own" and d.antecedent == "n1" and d.source is Source.EXPLICIT


def test_no_genitive_is_absent(core_corpus):
    s = core_corpus[6]
    assert explicit_genitive_decision(s, s.np("n2")) is None


def test_explicit_reflexive_without_subject_raises():
    np = NounPhrase("n1", "namae", GrammRole.DIRECT_OBJECT, 1, genitive=REFLEXIVE)
    with pytest.raises(UnresolvedReflexive):
        explicit_genitive_decision(Sentence("x", Modality.DECLARATIVE, "wasureru", (np,)), np)


def test_rack_brains(core_corpus, patterns):
    (np_id, d, pat), = match_expression(core_corpus[2], patterns)
    assert np_id == "n2" and str(d.form) == "her" and d.source is Source.PATTERN
    assert pat.render(d.form) == "rack her brains"


def test_wash_hands(core_corpus, patterns):
    (np_id, d, pat), = match_expression(core_corpus[8], patterns)
    assert np_id == "n3" and str(d.form) == "his"
    assert pat.render(d.form) == "wash his hands of"


def test_in_her_twenties(patterns):
    s, = read_corpus((DATA / "twenties.jsonl").read_text())
    (np_id, d, pat), = match_expression(s, patterns)
    assert np_id == "n2" and str(d.form) == "her" and d.antecedent == "n1"
    assert pat.render(d.form) == "in her twenties"


def test_subject_selector_without_subject_skips(patterns):
    s = Sentence("x", Modality.DECLARATIVE, "shiboru",
                 (NounPhrase("n1", "chie", GrammRole.DIRECT_OBJECT, 1),))
    diags = []
    assert match_expression(s, patterns, diags) == []
    assert len(diags) == 1 and "rack-brains" in diags[0]


def test_no_spurious_matches(core_corpus, kin_corpus, patterns):
    for s in core_corpus + kin_corpus:
        for np_id, d, pat in match_expression(s, patterns):
            target = s.np(np_id)
            if pat.is_verbal:
                assert s.verb_lemma == pat.verb_lemma and target.head_lemma == pat.object_lemma
            else:
                assert target.head_lemma == pat.head_lemma
            assert str(d.form) == form_for_np(s.np(d.antecedent))
    matched = {s.id for s in core_corpus if match_expression(s, patterns)}
    assert matched == {"ex3", "ex9"}


def test_first_pattern_wins():
    a = ExpressionPattern("a", "x {POSS}", Selector.SUBJECT, verb_lemma="v", object_lemma="o")
    b = ExpressionPattern("b", "y {POSS}", Selector.SUBJECT, verb_lemma="v", object_lemma="o")
    s = Sentence("x", Modality.DECLARATIVE, "v", (
        NounPhrase("n1", "kare", GrammRole.SUBJECT, 1, gender=Gender.MALE),
        NounPhrase("n2", "o", GrammRole.DIRECT_OBJECT, 2)))
    assert [p.id for _, _, p in match_expression(s, [a, b])] == ["a"]
    assert [p.id for _, _, p in match_expression(s, [b, a])] == ["b"]


@pytest.mark.parametrize("rec, message", [
    ({"id": "p", "match": {"verb_lemma": "v", "object_lemma": "o"}, "template": "no slot"}, "exactly one"),
    ({"id": "p", "match": {"verb_lemma": "v", "object_lemma": "o"}, "template": "{POSS} {POSS}"}, "exactly one"),
    ({"id": "p", "match": {"verb_lemma": "v"}, "template": "{POSS}"}, "match needs"),
    ({"id": "p", "match": {"verb_lemma": "v", "object_lemma": "o", "head_lemma": "h",
                           "modificant_lemma": "m"}, "template": "{POSS}"}, "match needs"),
    ({"id": "p", "match": {"verb": "v"}, "template": "{POSS}"}, "allowed keys"),
    ({"id": "p", "match": {"verb_lemma": "v", "object_lemma": "o"}, "template": "{POSS}",
      "antecedent_selector": "OBJECT"}, "antecedent_selector"),
])
def test_bad_pattern_records(rec, message):
    with pytest.raises(PatternError, match=message):
        load_patterns(json.dumps([rec]))


def test_pattern_file_round_trip(patterns):
    assert load_patterns(json.dumps(patterns_to_list(patterns))) == patterns


def test_decision_dict_round_trip():
    from possgen.pronouns import Form, PossessiveForm
    cases = [
        Decision.none(Reason.SLOT_FILLED),
        Decision.possessive(PossessiveForm(Form.HER, own=True), "n1", Source.EXPLICIT),
        Decision.possessive(PossessiveForm(Form.MY), "DEICTIC", Source.DEFAULT),
        Decision.some_any("any"),
    ]
    for d in cases:
        assert Decision.from_dict(d.to_dict()) == d
    bad = cases[2].to_dict() | {"reliability": "RELIABLE"}
    with pytest.raises(ValueError):
        Decision.from_dict(bad)
