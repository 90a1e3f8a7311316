"""Exit criteria. Each test records one PASS/FAIL line, printed after the run."""

import io
import itertools
import json
import random
import time
from fractions import Fraction

import pytest

from possgen.cli import run_cli
from possgen.engine import AnnotatedSentence, evaluate, generate
from possgen.ir import (CompoundElement, Features, Gender, Number, Person, Referentiality,
                        serialize_record)
from possgen.lexicon import ACQUISITION, POSSESSION
from possgen.patterns import Decision, Reason, Source
from possgen.pronouns import Form, PossessiveForm, pronoun_for_antecedent
from possgen.refgen import RefgenConfig, determine_referentiality
from conftest import ACCEPTANCE_RESULTS, DATA
from oracles import compound_form, form_for_np, percent, simple_form
from randgen import random_config, random_sentence


@pytest.fixture
def record(request):
    outcome = {"ok": False}
    yield outcome
    status = "PASS" if outcome["ok"] else "FAIL"
    ACCEPTANCE_RESULTS.append(f"{status}  {request.node.name}: {outcome.get('detail', '')}")


def cli(*argv):
    out = io.StringIO()
    return run_cli(list(argv), out), out.getvalue()


# Hand-traced expectations, one per core example: (sentence, NP, surface, source, reason)
CORE_EXPECTED = [
    ("ex1", "n2", "his", "EXPLICIT", None),
    ("ex2", "n2", "her own", "EXPLICIT", None),
    ("ex3", "n2", "her", "PATTERN", None),
    ("ex4", "n1", None, None, "generic"),
    ("ex5", "n1", "my", "DEFAULT", None),
    ("ex6", "n2", None, None, "slot_filled"),
    ("ex7", "n2", "my", "DEFAULT", None),
    ("ex8", "n2", None, None, "possession_verb"),
    ("ex9", "n3", "his", "PATTERN", None),
    ("socks", "n2", "your own", "EXPLICIT", None),
]


def test_criterion_1_core_examples(record):
    start = time.perf_counter()
    code, out = cli("generate", str(DATA / "core_examples.jsonl"))
    elapsed = time.perf_counter() - start
    assert code == 0
    assert out == (DATA / "core_examples.golden.jsonl").read_text()
    by_id = {json.loads(line)["id"]: json.loads(line) for line in out.splitlines()}
    for sid, np_id, surface, source, reason in CORE_EXPECTED:
        np_rec = next(n for n in by_id[sid]["nps"] if n["id"] == np_id)
        d = np_rec["decision"]
        got = d["form"] + (" own" if d["own"] else "") if d["form"] else None
        assert (got, d["source"], d["reason"]) == (surface, source, reason), sid
    assert by_id["ex5"]["nps"][0]["decision"]["antecedent"] == "DEICTIC"
    assert elapsed < 1.0
    record.update(ok=True, detail=f"10/10 core decisions match golden file, {elapsed * 1000:.0f} ms")


def test_criterion_2_reported_metrics(record, tmp_path):
    counts = {"good_not_generated": 346, "good_generated": 263, "bad_not_generated": 60, "bad_generated": 83}
    cells = ([("my", "my")] * counts["good_generated"] + [(None, None)] * counts["good_not_generated"]
             + [("my", None)] * counts["bad_generated"] + [(None, "my")] * counts["bad_not_generated"])
    annotated, gold = [], []
    for i, (produced, expected) in enumerate(cells):
        dec = (Decision.possessive(PossessiveForm(Form(produced)), "DEICTIC", Source.DEFAULT)
               if produced else Decision.none(Reason.NOT_TRIGGER))
        np = {"id": "n1", "head_lemma": "hana", "role": "SUBJECT", "position": 1}
        base = {"id": f"t{i}", "modality": "DECLARATIVE", "verb_lemma": "kayui"}
        annotated.append(json.dumps({**base, "nps": [{**np, "decision": dec.to_dict()}]}))
        gold.append(json.dumps({**base, "nps": [{**np, "gold_possessive": expected}]}))
    (tmp_path / "a.jsonl").write_text("\n".join(annotated) + "\n")
    (tmp_path / "g.jsonl").write_text("\n".join(gold) + "\n")
    code, out = cli("eval", "--gold", str(tmp_path / "g.jsonl"), str(tmp_path / "a.jsonl"))
    assert code == 0
    m = json.loads(out)
    assert {k: m[k] for k in counts} == counts
    assert m["accuracy"] == 609 / 752 and m["precision"] == 609 / 692

    outputs = [AnnotatedSentence.from_record(json.loads(line)) for line in annotated]
    from possgen.engine import read_gold
    metrics = evaluate(outputs, read_gold("\n".join(gold)))
    assert metrics.accuracy_fraction == Fraction(609, 752)
    assert metrics.precision_fraction == Fraction(609, 692)
    assert percent(609, 752) == 81 and percent(609, 692) == 88
    assert round(100 * metrics.accuracy) == 81 and round(100 * metrics.precision) == 88
    record.update(ok=True, detail="accuracy 609/752 (81%), precision 609/692 (88%)")


TREE_LEAVES = [
    (Features(Person.FIRST, Number.SINGULAR), (), "my"),
    (Features(Person.FIRST, Number.PLURAL), (), "our"),
    (Features(Person.SECOND, Number.SINGULAR), (), "your"),
    (Features(Person.THIRD, Number.SINGULAR, generic_one=True), (), "one's"),
    (Features(Person.THIRD, Number.SINGULAR, Gender.MALE, True), (), "his"),
    (Features(Person.THIRD, Number.SINGULAR, Gender.FEMALE, True), (), "her"),
    (Features(Person.THIRD, Number.SINGULAR, Gender.UNKNOWN, True), (), "their"),
    (Features(Person.THIRD, Number.SINGULAR, Gender.UNKNOWN, False), (), "its"),
    (Features(Person.THIRD, Number.PLURAL), (), "their"),
    (Features(), (CompoundElement(Person.THIRD), CompoundElement(Person.FIRST)), "our"),
    (Features(), (CompoundElement(Person.SECOND), CompoundElement(Person.THIRD)), "your"),
    (Features(), (CompoundElement(Person.THIRD), CompoundElement(Person.THIRD)), "their"),
]


def test_criterion_3_antecedent_tree_totality(record):
    n = 0
    for p, num, g, h, one in itertools.product(Person, Number, Gender, (False, True), (False, True)):
        got = {pronoun_for_antecedent(Features(p, num, g, h, one)).form.value}
        assert got == {simple_form(p.value, num.value, g.value, h, one)}
        n += 1
    for k in (1, 2, 3):
        for persons in itertools.product(Person, repeat=k):
            for base in (Features(), Features(Person.FIRST, Number.PLURAL)):
                got = pronoun_for_antecedent(base, [CompoundElement(p) for p in persons])
                assert got.form.value == compound_form([p.value for p in persons])
                n += 1
    assert len(TREE_LEAVES) == 12
    for features, elements, expected in TREE_LEAVES:
        assert str(pronoun_for_antecedent(features, elements)) == expected
    record.update(ok=True, detail=f"{n} combinations, one form each; 12/12 labelled leaves")


def test_criterion_4_property_suite(record, lexicon, patterns, tmp_path):
    rng = random.Random(20261015)
    n_sentences, n_nps, checked_rule2 = 1200, 0, 0
    violations = []
    records = []
    for i in range(n_sentences):
        s = random_sentence(rng, lexicon, f"p{i}")
        config = random_config(rng)
        ann = generate(s, lexicon, patterns, config)
        records.append((s, config))
        verb = lexicon.verb(s.verb_lemma) if s.nps else None
        last_rule = {t.np_id: t.rule for t in ann.trace}
        for np in s.nps:
            n_nps += 1
            d = ann.decisions[np.id]
            default_poss = d.is_possessive and d.source is Source.DEFAULT
            if (d.reliability.value == "DEFAULT_HEURISTIC") != (d.source is Source.DEFAULT):
                violations.append((s.id, np.id, "reliability"))
            if np.slot_filled and default_poss:
                violations.append((s.id, np.id, "slot_filled"))
            ref = determine_referentiality(s, np, lexicon)
            if default_poss and (ref in (Referentiality.GENERIC, Referentiality.ASCRIPTIVE)
                                 or np.referentiality in (Referentiality.GENERIC, Referentiality.ASCRIPTIVE)):
                violations.append((s.id, np.id, "referentiality"))
            if (default_poss and np.role.value == "DIRECT_OBJECT"
                    and (verb.has(POSSESSION) or verb.has(ACQUISITION))):
                violations.append((s.id, np.id, "verb_block"))
            if default_poss and d.antecedent != "DEICTIC" and last_rule[np.id] != "compound_subject":
                checked_rule2 += 1
                if str(d.form) != form_for_np(s.np(d.antecedent)):
                    violations.append((s.id, np.id, "rule2_form"))

    corpus = tmp_path / "random.jsonl"
    corpus.write_text("".join(serialize_record(s) + "\n" for s, _ in records))
    first = cli("generate", "--trace", str(corpus))
    second = cli("generate", "--trace", str(corpus))
    if first[0] != 0 or first[1].encode() != second[1].encode():
        violations.append(("*", "*", "determinism"))

    assert n_sentences >= 1000 and checked_rule2 > 100
    assert violations == []
    record.update(ok=True, detail=f"{n_sentences} sentences / {n_nps} NPs, {checked_rule2} "
                                  "anchored defaults recomputed, 0 violations, byte-identical rerun")


KIN_EXPECTED = {
    # sentence: (NP, form with compound rule on, form with it off)
    "wife-sister": ("n2", "my", "our"),
    "wife-child": ("n2", "our", "our"),
    "sister-mother": ("n2", "our", "our"),
    "sister-child": ("n2", "my", "our"),
}


def test_criterion_5_kin_rules(record, lexicon, patterns, kin_corpus):
    on = {s.id: generate(s, lexicon, patterns, RefgenConfig()) for s in kin_corpus}
    off = {s.id: generate(s, lexicon, patterns, RefgenConfig(enable_compound_subject_rule=False))
           for s in kin_corpus}
    for sid, (np_id, with_rule, without_rule) in KIN_EXPECTED.items():
        assert on[sid].decisions[np_id].surface == with_rule, sid
        assert off[sid].decisions[np_id].surface == without_rule, sid
        subject = on[sid].sentence.subject
        assert without_rule == pronoun_for_antecedent(subject).form.value

    mc = on["mother-child"].decisions
    assert mc["n2"].surface == "her" and mc["n2"].antecedent == "n1"
    assert mc["n1"] == Decision.none(Reason.PARENTS_CHILDREN_ANTECEDENT)
    assert on["child-only"].decisions["n2"] == Decision.none(Reason.PARENTS_CHILDREN_UNPAIRED)
    assert on["son-only"].decisions["n2"].surface == "my"

    untouched = [sid for sid in on if sid not in KIN_EXPECTED]
    for sid in untouched:
        assert on[sid].decisions == off[sid].decisions
    record.update(ok=True, detail="4 compound-subject cases, toggle-off reverts to 'our'; "
                                  "parents/children pairing and unpaired suppression hold")
