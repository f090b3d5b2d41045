"""Acronym recognition, disambiguation and integration into the concept table.

Explicit acronyms are bracketed definitions aligned with the Schwartz-Hearst
heuristic. Implicit ones are bare uppercase tokens resolved against
initialisms already in the candidate table, picking the full form whose verb
context looks most like the acronym's.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .concepts import ConceptKey, ConceptTable, add_occurrence, rekey
from .extract import CandidateOccurrence, occurrence_from_tokens
from .normalize import Corpus, apply_retokenization, phrase_of, to_concept_key
from .preprocess import Document, Sentence, Token, stem

MODES = ("explicit", "implicit", "off")

Mention = tuple[str, int, int]  # doc_id, sentence_index, token_index


@dataclass(frozen=True)
class AcronymDefinition:
    short_form: str
    doc_id: str
    sentence_index: int
    short_index: int
    long_range: tuple[int, int]
    long_form: str


@dataclass
class AcronymEntry:
    short_form: str
    long_form_key: ConceptKey
    long_form_surface: str
    mode: str
    occurrences: list[Mention] = field(default_factory=list)
    definitions: list[AcronymDefinition] = field(default_factory=list)

    @property
    def stem(self) -> str:
        return stem(self.short_form.lower())


# ---------------------------------------------------------------- explicit


def is_short_form(s: str) -> bool:
    if not 2 <= len(s) <= 10 or not s[0].isalnum():
        return False
    upper = sum(ch.isupper() for ch in s)
    lower = sum(ch.islower() for ch in s)
    return upper > 0 and lower <= upper


def max_long_words(short_form: str) -> int:
    n = len(short_form)
    return min(n + 5, 2 * n)


def align_long_form(short_form: str, words: Sequence[str]) -> int | None:
    """Index of the first word of the shortest aligned long form, or None.

    Characters of the short form are matched right to left against the
    lowercased words; the first one must land on a word start.
    """
    text = " ".join(w.lower() for w in words)
    sf = short_form.lower()
    s = len(sf) - 1
    t = len(text) - 1
    while s >= 0:
        c = sf[s]
        if not c.isalnum():
            s -= 1
            continue
        while t >= 0 and (text[t] != c or (s == 0 and t > 0 and text[t - 1].isalnum())):
            t -= 1
        if t < 0:
            return None
        t -= 1
        s -= 1
    start = t + 1
    return text.count(" ", 0, start)


def _bracket_pairs(tokens: Sequence[Token]):
    """(open, close) indices of non-nested round-bracket pairs."""
    out = []
    opened = None
    for i, tok in enumerate(tokens):
        if tok.surface == "(":
            opened = i
        elif tok.surface == ")" and opened is not None:
            out.append((opened, i))
            opened = None
    return out


def _definition_in(doc: Document, sentence: Sentence, open_: int, close: int) -> AcronymDefinition | None:
    toks = sentence.tokens
    doc_id = doc.id

    def raw(a, b):
        return doc.text[toks[a].char_span[0] : toks[b].char_span[1]]

    inner = toks[open_ + 1 : close]
    if len(inner) == 1 and is_short_form(inner[0].surface):
        sf = inner[0].surface
        # words left of the bracket, stopping at clause punctuation
        lo = open_
        while lo > 0 and not toks[lo - 1].is_punct and open_ - lo < max_long_words(sf):
            lo -= 1
        window = toks[lo:open_]
        first = align_long_form(sf, [t.surface for t in window])
        if first is None or not window:
            return None
        a, b = lo + first, open_ - 1
        return AcronymDefinition(sf, doc_id, sentence.index, open_ + 1, (a, b), raw(a, b))
    if len(inner) >= 2 and open_ > 0 and is_short_form(toks[open_ - 1].surface):
        sf = toks[open_ - 1].surface
        if len(inner) > max_long_words(sf) or any(t.is_punct for t in inner):
            return None
        first = align_long_form(sf, [t.surface for t in inner])
        if first is None:
            return None
        a, b = open_ + 1 + first, close - 1
        return AcronymDefinition(sf, doc_id, sentence.index, open_ - 1, (a, b), raw(a, b))
    return None


def find_explicit_acronyms(doc: Document) -> list[AcronymDefinition]:
    """Bracketed definitions in ``doc``, first definition of each short form only."""
    seen = set()
    out = []
    for sent in doc.sentences:
        for open_, close in _bracket_pairs(sent.tokens):
            d = _definition_in(doc, sent, open_, close)
            if d is None or d.short_form in seen:
                continue
            if d.short_form.lower() == d.long_form.lower():
                continue
            seen.add(d.short_form)
            out.append(d)
    return out


# ---------------------------------------------------------------- implicit


def is_implicit_shape(surface: str) -> bool:
    return len(surface) >= 3 and surface.isalpha() and surface.isupper()


def find_implicit_acronym_tokens(corpus: Iterable[Document], bound: set[tuple[str, str]] | None = None) -> list[Mention]:
    """All tokens made only of three or more uppercase letters.

    ``bound`` holds (doc_id, short_form) pairs already covered by an explicit
    definition; those mentions are skipped.
    """
    bound = bound or set()
    out = []
    for doc in corpus:
        for sent in doc.sentences:
            for k, tok in enumerate(sent.tokens):
                if is_implicit_shape(tok.surface) and (doc.id, tok.surface) not in bound:
                    out.append((doc.id, sent.index, k))
    return out


def match_initialisms(short_form: str, table: ConceptTable) -> list[ConceptKey]:
    """Keys with a form of exactly one word per letter whose initials spell the short form."""
    sf = short_form.lower()
    hits = []
    for key, entry in table.items():
        for form in entry.forms:
            if len(form) == len(sf) and all(w[:1] == c for w, c in zip(form, sf)):
                hits.append(key)
                break
    return sorted(hits)


def verb_context_vector(sentences: Iterable[Sentence]) -> Counter:
    counts: Counter = Counter()
    for sent in sentences:
        for tok in sent.tokens:
            if tok.tag.coarse == "VB":
                counts[tok.lemma] += 1
    return counts


def cosine(u: Counter, v: Counter) -> float:
    if not u or not v:
        return 0.0
    dot = sum(c * v[k] for k, c in u.items() if k in v)
    norm = math.sqrt(sum(c * c for c in u.values())) * math.sqrt(sum(c * c for c in v.values()))
    return 0.0 if norm == 0 else min(1.0, dot / norm)


def _sentences_of(refs: Iterable[tuple[str, int]], corpus: Corpus) -> list[Sentence]:
    return [corpus.sentence(d, s) for d, s in sorted(set(refs))]


def disambiguate(short_form: str, candidates: Sequence[ConceptKey], table: ConceptTable,
                 corpus: Corpus, acronym_vector: Counter) -> ConceptKey:
    """Full form with the most similar verb context; frequency then surface break ties."""
    if not candidates:
        raise ValueError(f"no full-form candidates for {short_form!r}")

    def rank(key):
        entry = table[key]
        vec = verb_context_vector(_sentences_of(((o.doc_id, o.sentence_index) for o in entry.occurrences), corpus))
        return (-round(cosine(acronym_vector, vec), 12), -entry.f, entry.label)

    return min(candidates, key=rank)


# ---------------------------------------------------------------- resolution


def _mentions_of(corpus: Corpus, short_forms: set[str]) -> dict[str, list[Mention]]:
    out: dict[str, list[Mention]] = {}
    for doc in corpus:
        for sent in doc.sentences:
            for k, tok in enumerate(sent.tokens):
                if tok.surface in short_forms:
                    out.setdefault(tok.surface, []).append((doc.id, sent.index, k))
    return out


def resolve_explicit(corpus: Corpus, retok_map=None) -> list[AcronymEntry]:
    """Bind every mention of a defined short form to a long form.

    A document's own definition wins; elsewhere the long form defined most
    often across the corpus is used.
    """
    per_doc: dict[str, dict[str, tuple[AcronymDefinition, ConceptKey]]] = {}
    for doc in corpus:
        for d in find_explicit_acronyms(doc):
            sent = doc.sentences[d.sentence_index]
            a, b = d.long_range
            key = to_concept_key(sent.tokens[a : b + 1], retok_map)
            if key is not None:
                per_doc.setdefault(doc.id, {})[d.short_form] = (d, key)

    votes: dict[str, Counter] = {}
    first_def: dict[tuple[str, ConceptKey], AcronymDefinition] = {}
    for doc in corpus:
        for sf, (d, key) in per_doc.get(doc.id, {}).items():
            votes.setdefault(sf, Counter())[key] += 1
            first_def.setdefault((sf, key), d)
    corpus_key = {}
    for sf, counter in votes.items():
        best = max(counter.values())
        tied = [k for k, c in counter.items() if c == best]
        corpus_key[sf] = min(tied, key=lambda k: first_order(first_def[(sf, k)], corpus))

    entries: dict[tuple[str, ConceptKey], AcronymEntry] = {}
    for sf, mentions in _mentions_of(corpus, set(votes)).items():
        for m in mentions:
            local = per_doc.get(m[0], {}).get(sf)
            key = local[1] if local else corpus_key[sf]
            d = first_def[(sf, key)]
            entry = entries.get((sf, key))
            if entry is None:
                entry = entries[(sf, key)] = AcronymEntry(sf, key, d.long_form, "explicit")
            entry.occurrences.append(m)
    for doc_defs in per_doc.values():
        for sf, (d, key) in doc_defs.items():
            entry = entries.get((sf, key))
            if entry is None:
                entry = entries[(sf, key)] = AcronymEntry(sf, key, d.long_form, "explicit")
            entry.definitions.append(d)
    return [entries[k] for k in sorted(entries)]


def first_order(d: AcronymDefinition, corpus: Corpus):
    return (corpus.docs.index(corpus.by_id[d.doc_id]), d.sentence_index, d.short_index)


def resolve_implicit(corpus: Corpus, table: ConceptTable, bound: set[tuple[str, str]] | None = None) -> list[AcronymEntry]:
    grouped: dict[str, list[Mention]] = {}
    for m in find_implicit_acronym_tokens(corpus, bound):
        doc_id, s, k = m
        surface = corpus.sentence(doc_id, s).tokens[k].surface
        grouped.setdefault(surface, []).append(m)
    entries = []
    for sf in sorted(grouped):
        candidates = match_initialisms(sf, table)
        if not candidates:
            continue
        mentions = grouped[sf]
        vec = verb_context_vector(_sentences_of(((d, s) for d, s, _ in mentions), corpus))
        key = disambiguate(sf, candidates, table, corpus, vec)
        entries.append(AcronymEntry(sf, key, table[key].label, "implicit", list(mentions)))
    return entries


def recognize(mode: str, corpus: Corpus, table: ConceptTable, retok_map=None) -> list[AcronymEntry]:
    if mode not in MODES:
        raise ValueError(f"acronym mode must be one of {MODES}, got {mode!r}")
    if mode == "explicit":
        return resolve_explicit(corpus, retok_map)
    if mode == "implicit":
        return resolve_implicit(corpus, table)
    return []


# ---------------------------------------------------------------- integration


def integrate_acronyms(table: ConceptTable, entries: Iterable[AcronymEntry], corpus: Corpus,
                       retok_map=None) -> ConceptTable:
    """Count acronym mentions, and in-text definitions, as occurrences of the long form."""
    retok_map = retok_map or {}
    for entry in entries:
        key = entry.long_form_key
        for d in entry.definitions:
            sent = corpus.sentence(d.doc_id, d.sentence_index)
            a, b = d.long_range
            toks = sent.tokens[a : b + 1]
            occ = occurrence_from_tokens(d.doc_id, sent, a, b)
            form = tuple(t.lower for t in apply_retokenization(toks, retok_map))
            # no-op when the long form was already extracted as a candidate
            add_occurrence(table, key, occ, phrase_of(toks), form)
        for doc_id, s, k in entry.occurrences:
            sent = corpus.sentence(doc_id, s)
            occ: CandidateOccurrence = occurrence_from_tokens(doc_id, sent, k, k)
            add_occurrence(table, key, occ, entry.short_form.lower())
    return table


def expand_nested(table: ConceptTable, entries: Iterable[AcronymEntry]) -> ConceptTable:
    """Replace acronym stems inside keys by the elements of their long forms."""
    chosen: dict[str, AcronymEntry] = {}
    for entry in sorted(entries, key=lambda e: (-len(e.occurrences), e.long_form_key)):
        chosen.setdefault(entry.stem, entry)
    expansions = {s: e.long_form_key.as_set() for s, e in chosen.items()}
    if not expansions:
        return table

    def expand(key: ConceptKey) -> ConceptKey:
        hit = [e for e in key if e in expansions]
        if not hit:
            return key
        elements = set(key) - set(hit)
        for e in hit:
            elements |= expansions[e]
        return ConceptKey.of(elements)

    return rekey(table, expand)
