"""Linguistic pre-processing: sentences, tokens, tags, lemmas and stems."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Sequence

from nltk.stem.porter import PorterStemmer

from . import tagger as _tagger

log = logging.getLogger(__name__)

COARSE_TAGS = ("NN", "JJ", "IN", "POS", "VB", "DT", "OTHER")


class CorpusError(Exception):
    """Raised when an input file cannot be read or parsed."""


@dataclass(frozen=True)
class PosTag:
    full: str
    coarse: str

    @classmethod
    def of(cls, full: str) -> "PosTag":
        return cls(full, coarse_tag(full))


def coarse_tag(full: str) -> str:
    if full.startswith("NN"):
        return "NN"
    if full.startswith("JJ"):
        return "JJ"
    if full.startswith("VB"):
        return "VB"
    if full in ("IN", "POS"):
        return full
    if full in ("DT", "PDT"):
        return "DT"
    return "OTHER"


@dataclass(frozen=True)
class Token:
    surface: str
    char_span: tuple[int, int]
    tag: PosTag
    lemma: str
    stem: str
    is_stopword: bool = False

    @property
    def lower(self) -> str:
        return self.surface.lower()

    @property
    def is_punct(self) -> bool:
        return not any(ch.isalnum() for ch in self.surface)


@dataclass(frozen=True)
class Sentence:
    index: int
    char_span: tuple[int, int]
    tokens: tuple[Token, ...]


@dataclass(frozen=True)
class Document:
    id: str
    text: str
    sentences: tuple[Sentence, ...] = field(default=())

    def sentence(self, index: int) -> Sentence:
        return self.sentences[index]


# ---------------------------------------------------------------- resources


def _data_text(name: str) -> str:
    return resources.files("termweaver").joinpath(f"data/{name}").read_text("utf-8")


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """Read a one-word-per-line stopword list; the bundled list by default."""
    if path is None:
        text = _data_text("stopwords.txt")
    else:
        try:
            text = Path(path).read_text("utf-8")
        except OSError as exc:
            raise CorpusError(f"cannot read stopword file {path}: {exc}") from exc
    return frozenset(w.strip().lower() for w in text.splitlines() if w.strip() and not w.startswith("#"))


@lru_cache(maxsize=1)
def _lemma_exceptions() -> dict[tuple[str, str], str]:
    table = {}
    for line in _data_text("lemma_exceptions.tsv").splitlines():
        if not line or line.startswith("#"):
            continue
        form, lemma, cls = line.split("\t")
        table[(form, cls)] = lemma
    return table


# ---------------------------------------------------------------- splitting

ABBREVIATIONS = frozenset(
    """
    dr. mr. mrs. ms. prof. e.g. i.e. vs. etc. al. fig. figs. no. nos. st.
    approx. ca. cf. resp. jr. sr. inc. ltd. co. dept. eq. vol. pp. ref. refs.
    """.split()
)

_BOUNDARY = re.compile(r"[.!?]+[\"')\]]*(?=\s)")
_PARAGRAPH = re.compile(r"\n[ \t]*\n")


def _is_boundary(text: str, end: int) -> bool:
    # end points just past the punctuation run
    rest = text[end:]
    stripped = rest.lstrip()
    if not stripped:
        return False
    nxt = stripped[0]
    if not (nxt.isupper() or nxt.isdigit()):
        return False
    start = end
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    raw = text[start:end].rstrip("\"')]")
    if raw.lower() in ABBREVIATIONS:
        return False
    if len(raw) == 2 and raw[0].isupper() and raw[1] == ".":
        return False  # initials
    return True


def split_sentences(text: str) -> list[tuple[int, int]]:
    """Character spans of sentences, trimmed of surrounding whitespace."""
    cuts = set()
    for m in _BOUNDARY.finditer(text):
        if _is_boundary(text, m.end()):
            cuts.add(m.end())
    for m in _PARAGRAPH.finditer(text):
        cuts.add(m.start())
    spans = []
    prev = 0
    for cut in sorted(cuts) + [len(text)]:
        seg_start, seg_end = prev, cut
        while seg_start < seg_end and text[seg_start].isspace():
            seg_start += 1
        while seg_end > seg_start and text[seg_end - 1].isspace():
            seg_end -= 1
        if seg_end > seg_start:
            spans.append((seg_start, seg_end))
        prev = cut
    return spans


# ---------------------------------------------------------------- tokenizing

_DASHES = "-‐‑‒–—"
_TOKEN = re.compile(
    r"(?P<poss>['’]s(?![^\W_]))"
    r"|(?P<num>\d+(?:[.,]\d+)+)"
    r"|(?P<word>[^\W_]+)"
    rf"|(?P<dash>[{_DASHES}])"
    r"|(?P<punct>\S)"
)


def tokenize(sentence_text: str) -> list[tuple[str, tuple[int, int]]]:
    """Split text on whitespace and punctuation; hyphens separate words and vanish."""
    out = []
    for m in _TOKEN.finditer(sentence_text):
        if m.lastgroup == "dash":
            continue
        out.append((m.group(), m.span()))
    return out


# ---------------------------------------------------------------- tagging

Tagger = Callable[[Sequence[str]], Sequence[str]]


def pos_tag(tokens: Sequence[str], tagger: Tagger | None = None) -> list[PosTag]:
    tags = (tagger or _tagger.tag_tokens)(list(tokens))
    if len(tags) != len(tokens):
        raise ValueError(f"tagger returned {len(tags)} tags for {len(tokens)} tokens")
    return [t if isinstance(t, PosTag) else PosTag.of(t) for t in tags]


# ---------------------------------------------------------------- lemmas & stems


def _noun_lemma(w: str) -> str:
    if len(w) <= 3 or w.endswith(("ss", "us", "is", "ys")):
        return w
    if w.endswith("ies") and len(w) > 4:
        return w[:-3] + "y"
    if w.endswith(("sses", "shes", "ches", "xes", "zes")):
        return w[:-2]
    if w.endswith("s"):
        return w[:-1]
    return w


_E_ENDINGS = ("at", "iz", "yz", "v", "bl", "pl", "dl", "tl", "ur", "rc", "uc", "ng")


def _verb_root(base: str) -> str:
    for cand in (base, base + "e"):
        if cand in _tagger.VERBS:
            return cand
    if len(base) > 3 and base[-1] == base[-2] and base[-1] not in "lsz":
        return base[:-1]
    if base.endswith(_E_ENDINGS):
        return base + "e"
    return base


def _verb_lemma(w: str) -> str:
    base = _tagger.verb_base(w)
    if base is not None:
        return base
    if w.endswith("ied") and len(w) > 4:
        return w[:-3] + "y"
    if w.endswith("ies") and len(w) > 4:
        return w[:-3] + "y"
    if w.endswith("ing") and len(w) > 5:
        return _verb_root(w[:-3])
    if w.endswith("ed") and len(w) > 4:
        return _verb_root(w[:-2])
    if w.endswith(("sses", "shes", "ches", "xes", "zes")):
        return w[:-2]
    if w.endswith("s") and not w.endswith(("ss", "us", "is")) and len(w) > 3:
        return w[:-1]
    return w


def lemmatize(surface: str, tag: PosTag | str) -> str:
    """Lowercase base form. Irregulars come from the bundled exception list."""
    coarse = tag.coarse if isinstance(tag, PosTag) else coarse_tag(tag)
    w = surface.lower()
    if coarse == "POS":
        return w
    table = _lemma_exceptions()
    if coarse == "NN":
        if (w, "N") in table:
            return table[(w, "N")]
        if surface.isupper() and len(surface) > 1:
            return w
        return _noun_lemma(w)
    if coarse == "VB":
        if (w, "V") in table:
            return table[(w, "V")]
        return _verb_lemma(w)
    return table.get((w, "*"), w)


_porter = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)


@lru_cache(maxsize=65536)
def stem(lemma: str) -> str:
    """Porter (1980) stem of an already-lemmatized, lowercase word."""
    return _porter.stem(lemma)


# ---------------------------------------------------------------- documents


def make_token(surface, span, tag, stopwords, lemma=None, stem_=None) -> Token:
    tag = tag if isinstance(tag, PosTag) else PosTag.of(tag)
    lemma = lemmatize(surface, tag) if lemma is None else lemma
    stem_ = stem(lemma) if stem_ is None else stem_
    lower = surface.lower()
    return Token(surface, span, tag, lemma, stem_, lower in stopwords or lemma in stopwords)


def preprocess_document(doc_id: str, text: str, tagger: Tagger | None = None,
                        stopwords: frozenset[str] | None = None) -> Document:
    """Split, tokenize, tag, lemmatize and stem raw text."""
    if stopwords is None:
        stopwords = load_stopwords()
    sentences = []
    for start, end in split_sentences(text):
        pieces = tokenize(text[start:end])
        if not pieces:
            continue
        tags = pos_tag([s for s, _ in pieces], tagger)
        tokens = tuple(
            make_token(s, (start + a, start + b), t, stopwords)
            for (s, (a, b)), t in zip(pieces, tags)
        )
        sentences.append(Sentence(len(sentences), (start, end), tokens))
    return Document(doc_id, text, tuple(sentences))


def _align(text: str, surfaces: list[str], offset: int, where: str) -> list[tuple[int, int]]:
    spans = []
    pos = 0
    for s in surfaces:
        while pos < len(text) and (text[pos].isspace() or text[pos] in _DASHES):
            pos += 1
        if not text.startswith(s, pos):
            raise CorpusError(f"{where}: token {s!r} not found in sentence text at offset {pos}")
        spans.append((offset + pos, offset + pos + len(s)))
        pos += len(s)
    return spans


def read_pretagged(path: str | Path, stopwords: frozenset[str] | None = None) -> list[Document]:
    """Parse the vertical ``surface<TAB>tag<TAB>lemma<TAB>stem`` format.

    ``#doc <id>`` starts a document (default id: the file stem). A
    ``#text <raw sentence>`` line before a sentence's tokens gives its raw
    text so offsets are faithful; without it tokens are joined by spaces.
    Sentences of a document are joined by single spaces.
    """
    path = Path(path)
    if stopwords is None:
        stopwords = load_stopwords()
    try:
        lines = path.read_text("utf-8").splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise CorpusError(f"cannot read {path}: {exc}") from exc

    docs = []
    state = {"id": None, "text": "", "sentences": [], "raw": None, "rows": [], "first": 0}

    def flush_sentence():
        rows = state["rows"]
        if not rows:
            state["raw"] = None
            return
        surfaces = [r[0] for r in rows]
        raw = state["raw"] if state["raw"] is not None else " ".join(surfaces)
        offset = len(state["text"]) + (1 if state["text"] else 0)
        spans = _align(raw, surfaces, offset, f"{path}:{state['first']}")
        tokens = tuple(
            make_token(s, span, tag, stopwords, lemma, st)
            for (s, tag, lemma, st), span in zip(rows, spans)
        )
        if state["text"]:
            state["text"] += " "
        state["text"] += raw
        state["sentences"].append(Sentence(len(state["sentences"]), (offset, offset + len(raw)), tokens))
        state["rows"] = []
        state["raw"] = None

    def flush_doc():
        flush_sentence()
        if state["id"] is not None or state["sentences"]:
            docs.append(Document(state["id"] or path.stem, state["text"], tuple(state["sentences"])))
        state.update(text="", sentences=[])

    for lineno, line in enumerate(lines, 1):
        if line.startswith("#doc"):
            flush_doc()
            doc_id = line[4:].strip()
            if not doc_id:
                raise CorpusError(f"{path}:{lineno}: #doc line without an id")
            state["id"] = doc_id
        elif line.startswith("#text"):
            flush_sentence()
            state["raw"] = line[6:] if line.startswith("#text ") else ""
            state["first"] = lineno
        elif line.startswith("#"):
            continue
        elif not line.strip():
            flush_sentence()
        else:
            fields = line.split("\t")
            if len(fields) != 4 or not all(fields):
                raise CorpusError(f"{path}:{lineno}: expected 4 TAB-separated fields, got {line!r}")
            if not state["rows"] and state["raw"] is None:
                state["first"] = lineno
            state["rows"].append(tuple(fields))
    flush_doc()
    return docs


def _input_files(source: Path) -> list[Path]:
    if source.is_dir():
        return sorted(p for p in source.iterdir() if p.is_file() and not p.name.startswith("."))
    if source.is_file():
        return [source]
    raise CorpusError(f"input not found: {source}")


def load_corpus(source: str | Path, format: str = "raw", tagger: Tagger | None = None,
                stopwords: frozenset[str] | None = None) -> list[Document]:
    """Load every file under ``source`` as documents, in file-name order."""
    if format not in ("raw", "pretagged"):
        raise ValueError(f"unknown input format {format!r}")
    if stopwords is None:
        stopwords = load_stopwords()
    docs = []
    for path in _input_files(Path(source)):
        if format == "pretagged":
            docs.extend(read_pretagged(path, stopwords))
            continue
        try:
            text = path.read_text("utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise CorpusError(f"cannot read {path}: {exc}") from exc
        docs.append(preprocess_document(path.stem, text, tagger, stopwords))
    ids = [d.id for d in docs]
    if len(set(ids)) != len(ids):
        raise CorpusError("duplicate document ids in corpus")
    return docs


def iter_tokens(docs: Iterable[Document]):
    for doc in docs:
        for sent in doc.sentences:
            for k, tok in enumerate(sent.tokens):
                yield doc, sent, k, tok
