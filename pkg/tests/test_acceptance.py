"""End-to-end acceptance checks, one group per criterion.

A PASS/FAIL line per criterion is printed in the terminal summary.
"""

import json
import math
import random
import time
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from termweaver.acronyms import find_explicit_acronyms, match_initialisms, resolve_implicit
from termweaver.cli import main
from termweaver.concepts import ConceptEntry, ConceptKey
from termweaver.extract import DEFAULT_PATTERN, CandidateOccurrence, compile_pattern, extract_corpus
from termweaver.normalize import Corpus, _UnionFind, build_table, candidate_phrases, token_groups
from termweaver.normalize import merge_tokenization_variants
from termweaver.pipeline import PipelineConfig, run_pipeline
from termweaver.preprocess import COARSE_TAGS, load_corpus, preprocess_document, tokenize
from termweaver.scaling import fit_quadratic, totals_by_docs
from termweaver.score import score_table
from termweaver.similarity import SimilarityParams, jaro, jaro_winkler, similar_pairs
from termweaver.synth import write_corpus

from oracles import c_value_reference, jaro_reference, jaro_winkler_reference, reference_scan


def key(*stems):
    return ConceptKey.of(stems)


def marks_in(html):
    """(start, length, id) for each mark, with offsets into the unescaped document text."""
    root = ET.fromstring(html.split("\n", 1)[1])
    body = root.find(".//p[@class='doc']")
    found = []
    pos = 0

    def walk(el):
        nonlocal pos
        start = pos
        pos += len(el.text or "")
        for child in el:
            walk(child)
            pos += len(child.tail or "")
        if el.tag == "mark":
            sup = el.find("sup")
            found.append((start, pos - start, int(sup.get("data-id"))))

    pos += len(body.text or "")
    for child in body:
        walk(child)
        pos += len(child.tail or "")
    return sorted(found)


@pytest.fixture(scope="module")
def golden(golden_dir, tmp_path_factory):
    out = tmp_path_factory.mktemp("golden")
    t0 = time.perf_counter()
    result = run_pipeline(PipelineConfig(input=golden_dir, format="pretagged", out=out))
    return result, time.perf_counter() - t0, out


# ---------------------------------------------------------------- 1

TAGGED_ROWS = [
    ("Nuclear", "JJ", "nuclear", "nuclear"), ("factor", "NN", "factor", "factor"),
    ("of", "IN", "of", "of"), ("activated", "VB", "activate", "activ"),
    ("T", "NN", "t", "t"), ("cells", "NN", "cell", "cell"), ("(", "-LRB-", "(", "("),
    ("NFAT", "NN", "nfat", "nfat"), (")", "-RRB-", ")", ")"), ("is", "VB", "be", "be"),
    ("a", "DT", "a", "a"), ("transcription", "NN", "transcription", "transcript"),
    ("factor", "NN", "factor", "factor"), ("which", "WDT", "which", "which"),
    ("is", "VB", "be", "be"), ("considered", "VB", "consider", "consid"), ("to", "TO", "to", "to"),
    ("be", "VB", "be", "be"), ("an", "DT", "an", "an"), ("important", "JJ", "important", "import"),
    ("regulator", "NN", "regulator", "regul"), ("in", "IN", "in", "in"),
    ("early", "JJ", "early", "earli"), ("T", "NN", "t", "t"), ("cell", "NN", "cell", "cell"),
    ("activation", "NN", "activation", "activ"), (".", ".", ".", "."),
]

KEY_GROUPS = {
    key("hodgkin", "lymphoma"): {"hodgkin 's lymphoma", "hodgkin lymphomas"},
    key("transcript", "gene"): {"gene transcription", "transcription of different genes"},
    key("retino", "acid", "receptor", "alpha"): {"retinoic acid alpha receptor", "retinoic acid receptor type alpha"},
    key("acetyl", "salicyl", "acid"): {"acetyl salicylic acid", "acetylsalicylic acid"},
    key("serum", "respons"): {"serum response", "sera responses", "serums responses"},
}

INLINE_SPANS = [(242, 35, 384), (279, 4, 384), (290, 20, 4563), (369, 17, 406)]


@pytest.mark.criterion(1, "golden worked-example run")
def test_c1_tagged_rows(golden):
    result, _, _ = golden
    doc = next(d for d in result.docs if d.id == "90368794")
    sent = next(s for s in doc.sentences if s.tokens[0].surface == "Nuclear")
    assert [(t.surface, t.tag.full, t.lemma, t.stem) for t in sent.tokens] == TAGGED_ROWS


@pytest.mark.criterion(1, "golden worked-example run")
def test_c1_concept_keys(golden):
    snap = golden[0].snapshots["normalize"]
    for k, variants in KEY_GROUPS.items():
        assert set(snap[k]) == variants, k


@pytest.mark.criterion(1, "golden worked-example run")
def test_c1_variant_groups(golden):
    groups = {frozenset(t.variants) for t in golden[0].dictionary}
    assert frozenset({"nfat", "nuclear factor of activated t cells"}) in groups
    assert frozenset({"transcription factor", "transcriptional factor"}) in groups


@pytest.mark.criterion(1, "golden worked-example run")
def test_c1_acronym_expansion(golden):
    before, after = golden[0].snapshots["normalize"], golden[0].snapshots["acronym_integration"]
    nested, expanded = key("pkc", "inhibitor", "staurosporin"), key("protein", "kinas", "c", "inhibitor", "staurosporin")
    assert nested in before and nested not in after
    assert "pkc inhibitor staurosporine" in after[expanded]


@pytest.mark.criterion(1, "golden worked-example run")
def test_c1_inline_and_runtime(golden):
    result, seconds, out = golden
    html = (out / "html" / "90368794.html").read_text("utf-8")
    marks = [m for m in marks_in(html) if 242 <= m[0] < 400]
    assert [(s, n) for s, n, _ in marks] == [(s, n) for s, n, _ in INLINE_SPANS]
    renumber = {}
    for (_, _, ours), (_, _, theirs) in zip(marks, INLINE_SPANS):
        assert renumber.setdefault(ours, theirs) == theirs
    assert len(set(renumber.values())) == len(renumber)
    assert seconds < 5.0


# ---------------------------------------------------------------- 2


def _random_pairs(n, seed):
    rng = random.Random(seed)
    pairs = []
    for i in range(n):
        alphabet = "abcde" if i % 2 else "abcdefghijklmnopqrstuvwxyz"
        pairs.append(tuple("".join(rng.choice(alphabet) for _ in range(rng.randint(1, 20))) for _ in range(2)))
    return pairs


@pytest.mark.criterion(2, "similarity oracle")
def test_c2_random_pairs(backend):
    worst = 0.0
    for a, b in _random_pairs(10_000, 2):
        worst = max(worst, abs(backend.jaro(a, b) - jaro_reference(a, b)),
                    abs(backend.jaro_winkler(a, b, 0.1, 4) - jaro_winkler_reference(a, b)))
    assert worst <= 1e-12


@pytest.mark.criterion(2, "similarity oracle")
def test_c2_identity_and_disjoint():
    rng = random.Random(3)
    for _ in range(500):
        s = "".join(rng.choice("abcdefghijklm") for _ in range(rng.randint(1, 20)))
        t = "".join(rng.choice("nopqrstuvwxyz") for _ in range(rng.randint(1, 20)))
        assert jaro(s, s) == 1.0 and jaro_winkler(s, s) == 1.0
        assert jaro(s, t) == 0.0 and jaro_winkler(s, t) == 0.0


# ---------------------------------------------------------------- 3


LIGATURES = ("ae", "oe")


def _scope_matrix(words):
    """Filter scope for all pairs, computed directly with numpy."""
    first = np.array([w[0] for w in words])
    lig = np.array([w[:2] in LIGATURES for w in words])
    lengths = np.array([len(w) for w in words])
    same = first[:, None] == first[None, :]
    e = first == "e"
    ligature = (e[:, None] & lig[None, :]) | (lig[:, None] & e[None, :])
    close = np.abs(lengths[:, None] - lengths[None, :]) <= 1
    return np.triu((same | ligature) & close, k=1)


@pytest.mark.criterion(3, "filter exactness")
def test_c3_filters_equal_all_pairs(fixtures_dir):
    words = (fixtures_dir / "vocab5000.txt").read_text("utf-8").split()
    assert len(words) == len(set(words)) == 5000
    params = SimilarityParams()
    i, j = np.nonzero(_scope_matrix(words))
    brute = {tuple(sorted((words[a], words[b]))) for a, b in zip(i, j)
             if jaro_winkler(words[a], words[b], params) >= params.token_threshold}
    assert similar_pairs(words, params.token_threshold, params) == brute
    uf = _UnionFind()
    for a, b in brute:
        uf.union(a, b)
    expected = {}
    for members in uf.groups().values():
        rep = min(members, key=lambda s: (len(s), s))
        expected.update({m: rep for m in members if m != rep})
    replace = token_groups(words, params)
    assert replace == expected
    rep = lambda w: replace.get(w, w)
    assert rep("tumour") == rep("tumor")
    assert rep("pulmanary") != rep("pulmonary")


@pytest.mark.criterion(3, "filter exactness")
def test_c3_reported_pairs():
    replace = token_groups(["tumor", "tumour", "pulmonary", "pulmanary"])
    assert replace == {"tumour": "tumor"}


# ---------------------------------------------------------------- 4


def _table(freqs):
    table = {}
    for stems, f in freqs.items():
        k = ConceptKey.of(stems)
        occs = [CandidateOccurrence("d", n, (0, 1), "x y", (0, 3)) for n in range(f)]
        table[k] = ConceptEntry(k, {" ".join(k)}, occs)
    return table


@pytest.mark.criterion(4, "C-value oracle")
def test_c4_random_tables():
    rng = random.Random(4)
    stems = list("abcdefgh")
    for _ in range(200):
        freqs = {}
        for _ in range(rng.randint(1, 50)):
            freqs[tuple(sorted(rng.sample(stems, rng.randint(1, 8))))] = rng.randint(1, 20)
        table = _table(freqs)
        score_table(table)
        parents, scores = c_value_reference({frozenset(s): f for s, f in freqs.items()})
        for k, e in table.items():
            assert {p.as_set() for p in e.nest_parents} == parents[k.as_set()]
            assert abs(e.c_value - scores[k.as_set()]) <= 1e-12


@pytest.mark.criterion(4, "C-value oracle")
def test_c4_edge_cases():
    table = _table({("a",): 7, ("a", "b"): 3, ("c", "d", "e"): 5})
    score_table(table)
    assert table[key("a")].c_value == 0.0
    assert table[key("a", "b")].c_value == math.log(2) * 3
    assert table[key("c", "d", "e")].c_value == math.log(3) * 5


# ---------------------------------------------------------------- 5

PATTERN = compile_pattern()


def _scan_time(k):
    tags = ["NN"] * k
    best = float("inf")
    for _ in range(3):
        t0 = time.perf_counter()
        PATTERN.scan(tags)
        best = min(best, time.perf_counter() - t0)
    return best


@pytest.mark.criterion(5, "matcher linearity")
def test_c5_linear_time():
    assert _scan_time(100_000) < 20 * _scan_time(10_000)


@pytest.mark.criterion(5, "matcher linearity")
def test_c5_random_strings():
    rng = random.Random(5)
    alphabet = list(COARSE_TAGS)
    for _ in range(1000):
        tags = rng.choices(alphabet, [5, 3, 2, 1, 1, 1, 1], k=rng.randint(0, 12))
        assert PATTERN.scan(tags) == reference_scan(DEFAULT_PATTERN, tags), tags


# ---------------------------------------------------------------- 6


def _implicit(directory):
    corpus = Corpus(load_corpus(directory))
    occs = extract_corpus(corpus, PATTERN)
    table = build_table(occs, corpus, merge_tokenization_variants(candidate_phrases(occs, corpus)))
    return table, resolve_implicit(corpus, table)


@pytest.mark.criterion(6, "acronym disambiguation")
def test_c6_pkc(fixtures_dir):
    table, entries = _implicit(fixtures_dir / "pkc_implicit")
    labels = sorted(table[k].label for k in match_initialisms("PKC", table))
    assert labels == ["parental k562 cells", "protein kinase c", "protein kinase cascades"]
    (entry,) = entries
    assert table[entry.long_form_key].label == "protein kinase c"


@pytest.mark.criterion(6, "acronym disambiguation")
def test_c6_cosine_beats_frequency(fixtures_dir):
    table, (entry,) = _implicit(fixtures_dir / "context_vs_frequency")
    most_frequent = max(match_initialisms("ABC", table), key=lambda k: table[k].f)
    assert entry.long_form_key != most_frequent
    assert table[entry.long_form_key].label == "alpha beta chain"


@pytest.mark.criterion(6, "acronym disambiguation")
def test_c6_explicit():
    text = ("Nuclear factor of activated T-cells (NFAT) is a transcription factor which is considered "
            "to be an important regulator in early T-cell activation. Also known as Aspirin, "
            "acetylsalicylic acid (ASA) is a commonly used drug for the treatment of pain and fever "
            "due to various causes.")
    found = [(d.short_form, d.long_form) for d in find_explicit_acronyms(preprocess_document("d", text))]
    assert found == [("NFAT", "Nuclear factor of activated T-cells"), ("ASA", "acetylsalicylic acid")]


# ---------------------------------------------------------------- 7


@pytest.fixture(scope="module")
def contract_run(golden_dir, tmp_path_factory):
    base = tmp_path_factory.mktemp("contract")
    write_corpus(base / "synth", 30, seed=7)
    runs = []
    for name, source, fmt in [("t1", golden_dir, "pretagged"), ("sy", base / "synth", "raw")]:
        runs.append(run_pipeline(PipelineConfig(input=source, format=fmt, out=base / name, seed=11)))
    return runs


@pytest.mark.criterion(7, "standoff/inline contract")
def test_c7_inline_subset_and_wellformed(contract_run):
    for result in contract_run:
        standoff = {(a.doc_id, a.start, a.length, a.term_id) for a in result.annotations}
        assert standoff
        for doc in result.docs:
            for start, length, tid in marks_in(result.html[doc.id]):
                assert (doc.id, start, length, tid) in standoff
        for page in result.html.values():
            ET.fromstring(page.split("\n", 1)[1])


@pytest.mark.criterion(7, "standoff/inline contract")
def test_c7_offset_fidelity(contract_run):
    for result in contract_run:
        texts = {d.id: d.text for d in result.docs}
        for a in result.annotations:
            piece = texts[a.doc_id][a.start:a.start + a.length]
            assert " ".join(s.lower() for s, _ in tokenize(piece)) in result.dictionary[a.term_id].variants


@pytest.mark.criterion(7, "standoff/inline contract")
def test_c7_byte_stable_html(golden_dir, tmp_path):
    pages = []
    for name in ("a", "b"):
        run_pipeline(PipelineConfig(input=golden_dir, format="pretagged", out=tmp_path / name, seed=3))
        pages.append({p.name: p.read_bytes() for p in sorted((tmp_path / name / "html").iterdir())})
    assert pages[0] == pages[1] and len(pages[0]) > 1


# ---------------------------------------------------------------- 8


@pytest.mark.criterion(8, "scaling harness")
def test_c8_bench_records(tmp_path):
    write_corpus(tmp_path / "c", 100, seed=8)
    assert main(["bench", "--input", str(tmp_path / "c"), "--steps", "10", "--out", str(tmp_path / "b")]) == 0
    records = json.loads((tmp_path / "b" / "timings.json").read_text())
    assert len(records) == 10 * 9
    assert sorted({r["docs"] for r in records}) == list(range(10, 101, 10))


@pytest.mark.criterion(8, "scaling harness")
def test_c8_extrapolate_recovers_generator(tmp_path, capsys):
    a, b, c = 2.5e-4, 3.1e-2, 0.7
    records = [{"module": m, "docs": n, "seconds": (a * n * n + b * n + c) / 9}
               for n in range(10, 101, 10) for m in range(9)]
    path = tmp_path / "t.json"
    path.write_text(json.dumps(records))
    from termweaver.pipeline import read_timings
    fit = fit_quadratic(totals_by_docs(read_timings(path)))
    for got, want in zip(fit.coefficients, (a, b, c)):
        assert abs(got - want) <= 1e-6 * abs(want)
    assert fit.rss <= 1e-20
    assert main(["extrapolate", "--timings", str(path), "--predict", "1000"]) == 0
    predicted = float(capsys.readouterr().out.splitlines()[1].split("\t")[1])
    assert predicted == pytest.approx(a * 1e6 + b * 1e3 + c, rel=1e-6)


# ---------------------------------------------------------------- 9


@pytest.mark.criterion(9, "determinism")
def test_c9_identical_runs(golden_dir, tmp_path):
    write_corpus(tmp_path / "synth", 20, seed=9)
    for source, fmt in [(golden_dir, "pretagged"), (tmp_path / "synth", "raw")]:
        outputs = []
        for run in ("one", "two"):
            out = tmp_path / fmt / run
            run_pipeline(PipelineConfig(input=source, format=fmt, out=out, seed=5))
            outputs.append({str(p.relative_to(out)): p.read_bytes() for p in sorted(out.rglob("*")) if p.is_file()})
        assert outputs[0] == outputs[1]
        assert {"terms.tsv", "annotations.tsv", "concordances.tsv", "html/index.html"} <= set(outputs[0])
