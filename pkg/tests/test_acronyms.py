import math
from collections import Counter

import pytest

from termweaver.acronyms import (
    AcronymEntry,
    align_long_form,
    cosine,
    disambiguate,
    expand_nested,
    find_explicit_acronyms,
    find_implicit_acronym_tokens,
    integrate_acronyms,
    is_short_form,
    match_initialisms,
    recognize,
    resolve_implicit,
    verb_context_vector,
)
from termweaver.concepts import ConceptEntry, ConceptKey
from termweaver.extract import compile_pattern, extract_corpus
from termweaver.normalize import Corpus, build_table, candidate_phrases, merge_tokenization_variants
from termweaver.preprocess import load_corpus, preprocess_document

ASPIRIN = ("Also known as Aspirin, acetylsalicylic acid (ASA) is a commonly used drug for the "
           "treatment of pain and fever due to various causes.")
NFAT = ("Nuclear factor of activated T-cells (NFAT) is a transcription factor which is "
        "considered to be an important regulator in early T-cell activation.")


def key(*stems):
    return ConceptKey.of(stems)


def pipeline_table(docs):
    corpus = Corpus(docs)
    occs = extract_corpus(corpus, compile_pattern())
    retok = merge_tokenization_variants(candidate_phrases(occs, corpus))
    return corpus, build_table(occs, corpus, retok), retok


@pytest.mark.parametrize("text,expected", [
    (ASPIRIN, [("ASA", "acetylsalicylic acid")]),
    (NFAT, [("NFAT", "Nuclear factor of activated T-cells")]),
    ("The results (see Table 2) were clear.", []),
    ("We gave ASA (acetylsalicylic acid) daily.", [("ASA", "acetylsalicylic acid")]),
    ("Cells (n) grew. Protein kinase C (PKC) and PKC (protein kinase C) again.", [("PKC", "Protein kinase C")]),
])
def test_find_explicit(text, expected):
    doc = preprocess_document("d", text)
    assert [(d.short_form, d.long_form) for d in find_explicit_acronyms(doc)] == expected


def test_short_form_shape():
    assert is_short_form("NFAT") and is_short_form("mRNA") and is_short_form("IL2")
    assert not is_short_form("Table") and not is_short_form("n") and not is_short_form("(x)")


def test_alignment_needs_word_start():
    assert align_long_form("ASA", ["acetylsalicylic", "acid"]) == 0
    assert align_long_form("NFAT", ["Nuclear", "factor", "of", "activated", "T", "cells"]) == 0
    assert align_long_form("XYZ", ["serum", "response"]) is None
    # "b" inside "abc" is not a word start
    assert align_long_form("BC", ["abc", "cat"]) is None


def test_implicit_shape():
    doc = preprocess_document("d", "Patient was kept on her home regimen of ASA, toprol, lisinopril, HCTZ. "
                                   "The DNA-binding domain was seen by Dr Smith.")
    found = [doc.sentences[s].tokens[k].surface for _, s, k in find_implicit_acronym_tokens([doc])]
    assert found == ["ASA", "HCTZ", "DNA"]
    assert find_implicit_acronym_tokens([doc], bound={("d", "ASA")})[0] != (doc.id, 0, 8)


def test_verb_context_vector():
    assert verb_context_vector([]) == Counter()
    doc = preprocess_document("d", "The patient was given acetyl salicylic acid and nitroglycerin.")
    assert verb_context_vector(doc.sentences) == Counter({"be": 1, "give": 1})
    assert verb_context_vector(list(doc.sentences) * 2) == Counter({"be": 2, "give": 2})


def test_cosine():
    x = Counter({"a": 2, "b": 1})
    assert cosine(x, x) == pytest.approx(1.0)
    assert cosine(Counter({"a": 1}), Counter({"b": 1})) == 0.0
    assert cosine(Counter({"a": 1, "b": 1}), Counter({"a": 1})) == pytest.approx(1 / math.sqrt(2))
    assert cosine(Counter(), x) == 0.0


def test_match_initialisms():
    docs = [preprocess_document("d", "The patient was given acetyl salicylic acid and nitroglycerin. "
                                     "Aspiration pneumonia developed.")]
    _, table, _ = pipeline_table(docs)
    assert match_initialisms("ASA", table) == [key("acetyl", "salicyl", "acid")]


def test_pkc_candidates_and_resolution(fixtures_dir):
    docs = load_corpus(fixtures_dir / "pkc_implicit")
    corpus, table, _ = pipeline_table(docs)
    cands = match_initialisms("PKC", table)
    labels = sorted(table[k].label for k in cands)
    assert labels == ["parental k562 cells", "protein kinase c", "protein kinase cascades"]
    (entry,) = resolve_implicit(corpus, table)
    assert entry.short_form == "PKC" and entry.long_form_key == key("protein", "kinas", "c")
    assert entry.mode == "implicit" and len(entry.occurrences) == 2


def test_context_beats_frequency(fixtures_dir):
    docs = load_corpus(fixtures_dir / "context_vs_frequency")
    corpus, table, _ = pipeline_table(docs)
    cands = match_initialisms("ABC", table)
    frequent = max(cands, key=lambda k: table[k].f)
    assert table[frequent].label == "acute bowel colitis"
    (entry,) = resolve_implicit(corpus, table)
    assert table[entry.long_form_key].label == "alpha beta chain"
    assert table[entry.long_form_key].f < table[frequent].f


def test_disambiguate_ties_and_single():
    docs = [preprocess_document("d", "Alpha beta chain grew. Amber bright chain grew. Amber bright chain grew.")]
    corpus, table, _ = pipeline_table(docs)
    only = [key("alpha", "beta", "chain")]
    assert disambiguate("ABC", only, table, corpus, Counter()) == only[0]
    cands = match_initialisms("ABC", table)
    # zero context everywhere: higher frequency wins
    assert table[disambiguate("ABC", cands, table, corpus, Counter())].label == "amber bright chain"
    with pytest.raises(ValueError):
        disambiguate("ABC", [], table, corpus, Counter())


def test_mode_gate():
    docs = [preprocess_document("d", ASPIRIN + " The patient was given acetyl salicylic acid. ASA helped.")]
    corpus, table, retok = pipeline_table(docs)
    explicit = recognize("explicit", corpus, table, retok)
    assert {e.mode for e in explicit} == {"explicit"}
    assert recognize("off", corpus, table, retok) == []
    assert {e.mode for e in recognize("implicit", corpus, table, retok)} == {"implicit"}
    with pytest.raises(ValueError):
        recognize("mixed", corpus, table, retok)


def test_integrate_unseen_long_form():
    docs = [preprocess_document("d", NFAT + " NFAT binds DNA.")]
    corpus, table, retok = pipeline_table(docs)
    long_key = key("nuclear", "factor", "activ", "t", "cell")
    assert long_key not in table
    entries = recognize("explicit", corpus, table, retok)
    table = integrate_acronyms(table, entries, corpus, retok)
    e = table[long_key]
    assert e.variants == {"nfat", "nuclear factor of activated t cells"}
    assert e.f == 3  # long form + two mentions


def test_integrate_existing_long_form_adds_frequency():
    docs = [preprocess_document("d", "Protein kinase C (PKC) was active. Protein kinase C was inhibited.")]
    corpus, table, retok = pipeline_table(docs)
    before = table[key("protein", "kinas", "c")].f
    n_keys = len(table)
    entries = recognize("explicit", corpus, table, retok)
    table = integrate_acronyms(table, entries, corpus, retok)
    assert len(table) == n_keys
    assert table[key("protein", "kinas", "c")].f == before + 1


def make_entry(sf, long_key):
    return AcronymEntry(sf, long_key, " ".join(long_key), "explicit", [("d", 0, 0)])


def test_expand_nested():
    pkc = make_entry("PKC", key("protein", "kinas", "c"))
    k = key("pkc", "inhibitor", "staurosporin")
    table = {k: ConceptEntry(k, {"pkc inhibitor staurosporine"})}
    out = expand_nested(table, [pkc])
    assert list(out) == [key("protein", "kinas", "c", "inhibitor", "staurosporin")]
    assert expand_nested({key("a", "b"): ConceptEntry(key("a", "b"))}, [pkc]).keys() == {key("a", "b")}


def test_expand_two_acronyms_order_independent():
    pkc = make_entry("PKC", key("protein", "kinas", "c"))
    tnf = make_entry("TNF", key("tumor", "necrosi", "factor"))
    k = key("pkc", "tnf", "crosstalk")

    def fresh():
        return {k: ConceptEntry(k, {"pkc tnf crosstalk"})}

    a = expand_nested(fresh(), [pkc, tnf])
    b = expand_nested(fresh(), [tnf, pkc])
    assert a.keys() == b.keys() == {key("protein", "kinas", "c", "tumor", "necrosi", "factor", "crosstalk")}


def test_nesting_recovery_property(golden_dir):
    docs = load_corpus(golden_dir, format="pretagged")
    corpus, table, retok = pipeline_table(docs)
    entries = recognize("explicit", corpus, table, retok)
    before = {k: set(k) for k in table}
    table = integrate_acronyms(table, entries, corpus, retok)
    table = expand_nested(table, entries)
    for e in entries:
        for k, elements in before.items():
            if e.stem in elements:
                assert any(e.long_form_key.as_set() <= nk.as_set() and (elements - {e.stem}) <= nk.as_set()
                           for nk in table)
