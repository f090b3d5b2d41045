"""End-to-end run: nine timed steps from raw text to dictionary, markup and pages."""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import acronyms as acr
from . import markup
from .concepts import ConceptKey
from .extract import DEFAULT_PATTERN, compile_pattern, extract_corpus
from .normalize import (
    Corpus,
    build_table,
    candidate_phrases,
    merge_tokenization_variants,
    normalize_tokens,
    snapshot,
)
from .preprocess import CorpusError, Document, load_corpus, load_stopwords
from .score import DEFAULT_THRESHOLD, TermDictionary, classify, score_table
from .similarity import SimilarityParams

log = logging.getLogger(__name__)

STEPS = (
    "preprocess",
    "extract",
    "normalize",
    "acronym_recognition",
    "acronym_integration",
    "token_normalization",
    "classification",
    "markup",
    "visualisation",
)


class PipelineError(RuntimeError):
    def __init__(self, step: str, cause: BaseException):
        super().__init__(f"step {step!r} failed: {cause}")
        self.step = step
        self.cause = cause


@dataclass(frozen=True)
class PipelineConfig:
    input: Path | None = None
    format: str = "raw"
    pattern: str = DEFAULT_PATTERN
    acronyms: str = "explicit"
    similarity: SimilarityParams = field(default_factory=SimilarityParams)
    threshold: float = DEFAULT_THRESHOLD
    idf: bool = False
    stopwords: Path | None = None
    out: Path | None = None
    seed: int = 0
    bench: bool = False
    window: int = markup.DEFAULT_WINDOW
    plot: bool = False

    def __post_init__(self):
        if self.format not in ("raw", "pretagged"):
            raise ValueError(f"format must be raw or pretagged, got {self.format!r}")
        if self.acronyms not in acr.MODES:
            raise ValueError(f"acronym mode must be one of {acr.MODES}, got {self.acronyms!r}")
        if self.window < 0:
            raise ValueError("window must be non-negative")


@dataclass(frozen=True)
class TimingRecord:
    module: str
    docs: int
    seconds: float

    def as_json(self):
        return {"module": self.module, "docs": self.docs, "seconds": self.seconds}


@dataclass
class PipelineResult:
    docs: list[Document]
    dictionary: TermDictionary
    annotations: list[markup.Annotation]
    html: dict[str, str]
    concordances: list[markup.ConcordanceLine]
    timings: list[TimingRecord]
    trace: list[str]
    table: dict
    acronyms: list[acr.AcronymEntry]
    snapshots: dict[str, dict[ConceptKey, frozenset[str]]]
    files: dict[str, str] = field(default_factory=dict)

    def terms_tsv(self) -> str:
        return self.dictionary.to_tsv()

    def annotations_tsv(self) -> str:
        return markup.emit_standoff(self.annotations)

    def concordances_tsv(self) -> str:
        return markup.emit_concordances_tsv(self.concordances)


class _Clock:
    def __init__(self):
        self.records: list[tuple[str, float]] = []
        self.trace: list[str] = []

    def run(self, step, fn, *args):
        self.trace.append(step)
        t0 = time.perf_counter()
        try:
            value = fn(*args)
        except PipelineError:
            raise
        except Exception as exc:
            raise PipelineError(step, exc) from exc
        self.records.append((step, time.perf_counter() - t0))
        return value


def _load(config: PipelineConfig, paths):
    stopwords = load_stopwords(config.stopwords)
    if paths is None:
        if config.input is None:
            raise CorpusError("no input given")
        return load_corpus(config.input, config.format, stopwords=stopwords)
    docs = []
    for p in paths:
        docs.extend(load_corpus(p, config.format, stopwords=stopwords))
    if len({d.id for d in docs}) != len(docs):
        raise CorpusError("duplicate document ids in corpus")
    return docs


def run_pipeline(config: PipelineConfig, paths: Sequence[Path] | None = None,
                 docs: Sequence[Document] | None = None) -> PipelineResult:
    """Run all nine steps; writes output files when ``config.out`` is set.

    ``paths`` restricts input to specific files; ``docs`` skips loading and
    uses already preprocessed documents (the preprocess step is then a no-op).
    """
    clock = _Clock()
    params = config.similarity
    snaps = {}
    out = Path(config.out) if config.out is not None else None
    files: dict[str, str] = {}

    if docs is None:
        docs = clock.run("preprocess", _load, config, paths)
    else:
        docs = clock.run("preprocess", list, docs)
    corpus = Corpus(docs)

    def extract():
        return extract_corpus(corpus, compile_pattern(config.pattern))

    occurrences = clock.run("extract", extract)

    def phrase_and_set():
        retok = merge_tokenization_variants(candidate_phrases(occurrences, corpus), params)
        return retok, build_table(occurrences, corpus, retok)

    retok, table = clock.run("normalize", phrase_and_set)
    snaps["normalize"] = snapshot(table)

    entries = clock.run("acronym_recognition", acr.recognize, config.acronyms, corpus, table, retok)

    def integrate():
        t = acr.integrate_acronyms(table, entries, corpus, retok)
        return acr.expand_nested(t, entries)

    table = clock.run("acronym_integration", integrate)
    snaps["acronym_integration"] = snapshot(table)

    table, _ = clock.run("token_normalization", normalize_tokens, table, params)
    snaps["token_normalization"] = snapshot(table)

    def score_and_classify():
        score_table(table, config.idf, len(docs))
        dictionary = classify(table, config.threshold)
        if out is not None:
            out.mkdir(parents=True, exist_ok=True)
            _write(out / "terms.tsv", dictionary.to_tsv(), files)
        return dictionary

    dictionary = clock.run("classification", score_and_classify)

    def mark():
        matcher = markup.PhraseMatcher(dictionary)
        anns = [a for d in docs for a in matcher.match(d)]
        if out is not None:
            _write(out / "annotations.tsv", markup.emit_standoff(anns), files)
        return anns

    annotations = clock.run("markup", mark)

    def visualise():
        colors = markup.term_colors((t.term_id for t in dictionary), config.seed)
        by_doc: dict[str, list[markup.Annotation]] = {}
        for a in annotations:
            by_doc.setdefault(a.doc_id, []).append(a)
        pages = {d.id: markup.emit_inline_html(d, by_doc.get(d.id, []), colors) for d in docs}
        by_term: dict[int, list[markup.Annotation]] = {t.term_id: [] for t in dictionary}
        for a in annotations:
            by_term[a.term_id].append(a)
        lines_by_term = {tid: markup.concordances(tid, corpus.by_id, anns, config.window)
                         for tid, anns in by_term.items()}
        index = markup.emit_index_html(dictionary, lines_by_term, colors)
        lines = [c for tid in lines_by_term for c in lines_by_term[tid]]
        if out is not None:
            html_dir = out / "html"
            html_dir.mkdir(parents=True, exist_ok=True)
            for doc_id, page in pages.items():
                _write(html_dir / markup.doc_filename(doc_id), page, files)
            _write(html_dir / "index.html", index, files)
            _write(out / "concordances.tsv", markup.emit_concordances_tsv(lines), files)
        return pages, index, lines

    pages, index, lines = clock.run("visualisation", visualise)
    pages = dict(pages)
    pages["index"] = index

    timings = [TimingRecord(step, len(docs), secs) for step, secs in clock.records]
    if out is not None and config.bench:
        write_timings(out / "timings.json", timings)
    if out is not None and config.plot:
        _write(out / "timings.tsv", timings_tsv(timings), files)

    return PipelineResult(list(docs), dictionary, annotations, pages, lines, timings, clock.trace, table,
                          entries, snaps, files)


def _write(path: Path, text: str, files: dict[str, str]) -> None:
    path.write_text(text, "utf-8")
    files[str(path)] = text


def write_timings(path: Path, records: Sequence[TimingRecord]) -> None:
    Path(path).write_text(json.dumps([r.as_json() for r in records], indent=1) + "\n", "utf-8")


def read_timings(path: Path) -> list[TimingRecord]:
    raw = json.loads(Path(path).read_text("utf-8"))
    return [TimingRecord(r["module"], int(r["docs"]), float(r["seconds"])) for r in raw]


def timings_tsv(records: Sequence[TimingRecord]) -> str:
    return "docs\tmodule\tseconds\n" + "".join(f"{r.docs}\t{r.module}\t{r.seconds:.6f}\n" for r in records)
