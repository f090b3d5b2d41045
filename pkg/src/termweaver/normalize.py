"""Tokenization-variant merging, set-based concept keys and token normalization."""

from __future__ import annotations

import logging
from typing import Iterable, Mapping, Sequence

from .concepts import ConceptKey, ConceptTable, add_occurrence, rekey
from .extract import CandidateOccurrence
from .preprocess import Document, Token
from .similarity import (
    DEFAULT_PARAMS,
    SimilarityParams,
    jaro,
    jaro_winkler,
    jw_upper_bound,
    similar_candidates,
    similar_pairs,
    SimilarityIndex,
)

log = logging.getLogger(__name__)

__all__ = [
    "Corpus",
    "jaro",
    "jaro_winkler",
    "similar_candidates",
    "SimilarityIndex",
    "SimilarityParams",
    "candidate_phrases",
    "merge_tokenization_variants",
    "apply_retokenization",
    "to_concept_key",
    "build_table",
    "normalize_tokens",
    "snapshot",
    "token_groups",
]

RetokMap = Mapping[str, tuple[Token, ...]]


class Corpus:
    """Documents addressable by id, with token lookup for occurrences."""

    def __init__(self, docs: Iterable[Document]):
        self.docs = list(docs)
        self.by_id = {d.id: d for d in self.docs}

    def __len__(self):
        return len(self.docs)

    def __iter__(self):
        return iter(self.docs)

    def sentence(self, doc_id: str, index: int):
        return self.by_id[doc_id].sentences[index]

    def tokens(self, occ: CandidateOccurrence) -> tuple[Token, ...]:
        first, last = occ.token_range
        return self.sentence(occ.doc_id, occ.sentence_index).tokens[first : last + 1]


def phrase_of(tokens: Sequence[Token]) -> str:
    return " ".join(t.lower for t in tokens)


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def groups(self):
        out = {}
        for x in list(self.parent):
            out.setdefault(self.find(x), []).append(x)
        return out


def _is_nested(short: tuple[str, ...], long: tuple[str, ...]) -> bool:
    # every word of the shorter phrase also occurs in the longer one:
    # they differ by whole words, not by where the words were split
    return set(short) <= set(long)


def merge_tokenization_variants(phrases: Mapping[str, Sequence[Token]],
                                params: SimilarityParams = DEFAULT_PARAMS) -> dict[str, tuple[Token, ...]]:
    """Map each phrase to the tokens of a more finely tokenized near-identical phrase.

    ``phrases`` maps a lowercased, space-joined phrase to one representative
    token sequence. Only pairs with different token counts are compared,
    pairs where one phrase's words are all contained in the other are
    skipped, and groups are closed transitively.
    """
    threshold = params.phrase_threshold
    items = []
    for phrase, toks in phrases.items():
        words = tuple(phrase.split(" "))
        items.append((len(phrase) - len(words) + 1, phrase, words))
    items.sort()
    uf = _UnionFind()
    flat = {phrase: "".join(words) for _, phrase, words in items}
    for i, (n_i, a, wa) in enumerate(items):
        for n_j, b, wb in items[i + 1 :]:
            if jw_upper_bound(n_i, n_j, params) < threshold:
                break
            if len(wa) == len(wb):
                continue
            short, long_ = (wa, wb) if len(wa) < len(wb) else (wb, wa)
            if _is_nested(short, long_):
                continue
            if jaro_winkler(flat[a], flat[b], params) >= threshold:
                uf.union(a, b)
    mapping = {}
    for members in uf.groups().values():
        if len(members) < 2:
            continue
        target = min(members, key=lambda ph: (-len(ph.split(" ")), ph))
        n_target = len(target.split(" "))
        for ph in members:
            if len(ph.split(" ")) < n_target:
                mapping[ph] = tuple(phrases[target])
    return mapping


def candidate_phrases(occurrences: Iterable[CandidateOccurrence], corpus: Corpus) -> dict[str, tuple[Token, ...]]:
    """First token sequence seen for each distinct lowercased phrase."""
    out: dict[str, tuple[Token, ...]] = {}
    for occ in occurrences:
        toks = corpus.tokens(occ)
        out.setdefault(phrase_of(toks), toks)
    return out


def apply_retokenization(tokens: Sequence[Token], retok_map: RetokMap) -> tuple[Token, ...]:
    return tuple(retok_map.get(phrase_of(tokens), tokens))


def _keeps(tok: Token) -> bool:
    return not (tok.is_stopword or tok.is_punct or tok.tag.coarse == "POS")


def to_concept_key(tokens: Sequence[Token], retok_map: RetokMap | None = None) -> ConceptKey | None:
    """Set of stems of the content words; None when nothing survives."""
    toks = apply_retokenization(tokens, retok_map or {})
    stems = [t.stem.lower() for t in toks if _keeps(t)]
    if not stems:
        log.warning("candidate %r has no content words; discarded", phrase_of(tokens))
        return None
    return ConceptKey.of(stems)


def build_table(occurrences: Iterable[CandidateOccurrence], corpus: Corpus,
                retok_map: RetokMap | None = None) -> ConceptTable:
    retok_map = retok_map or {}
    table: ConceptTable = {}
    for occ in occurrences:
        toks = corpus.tokens(occ)
        key = to_concept_key(toks, retok_map)
        if key is None:
            continue
        form = tuple(t.lower for t in apply_retokenization(toks, retok_map))
        add_occurrence(table, key, occ, phrase_of(toks), form)
    return table


def token_groups(vocabulary: Iterable[str], params: SimilarityParams = DEFAULT_PARAMS) -> dict[str, str]:
    """Replacement map element -> shortest member of its similarity group."""
    uf = _UnionFind()
    for a, b in similar_pairs(vocabulary, params.token_threshold, params):
        uf.union(a, b)
    replace = {}
    for members in uf.groups().values():
        rep = min(members, key=lambda s: (len(s), s))
        for m in members:
            if m != rep:
                replace[m] = rep
    return replace


def normalize_tokens(table: ConceptTable, params: SimilarityParams = DEFAULT_PARAMS
                     ) -> tuple[ConceptTable, dict[str, str]]:
    vocabulary = {e for key in table for e in key}
    replace = token_groups(vocabulary, params)
    if not replace:
        return table, {}
    out = rekey(table, lambda k: ConceptKey.of(replace.get(e, e) for e in k))
    return out, replace


def snapshot(table: ConceptTable) -> dict[ConceptKey, frozenset[str]]:
    return {k: frozenset(e.variants) for k, e in table.items()}

