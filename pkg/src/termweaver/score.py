"""Nested-occurrence sets, C-value scoring and the term dictionary."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .concepts import ConceptEntry, ConceptKey, ConceptTable

DEFAULT_THRESHOLD = 2.0


def build_nest_sets(table: ConceptTable) -> ConceptTable:
    """Fill ``nest_parents`` with every key that is a proper superset."""
    postings: dict[str, set[ConceptKey]] = {}
    for key in table:
        for e in key:
            postings.setdefault(e, set()).add(key)
    for key, entry in table.items():
        lists = sorted((postings[e] for e in key), key=len)
        common = set(lists[0])
        for other in lists[1:]:
            common &= other
            if len(common) <= 1:
                break
        entry.nest_parents = {k for k in common if len(k) > len(key)}
    return table


def c_value(entry: ConceptEntry, table: ConceptTable) -> float:
    n = len(entry.key)
    f = entry.f
    if entry.nest_parents:
        f -= sum(table[b].f for b in entry.nest_parents) / len(entry.nest_parents)
    return math.log(n) * f


def document_frequencies(table: ConceptTable) -> dict[str, int]:
    docs: dict[str, set[str]] = {}
    for key, entry in table.items():
        ids = {o.doc_id for o in entry.occurrences}
        for e in key:
            docs.setdefault(e, set()).update(ids)
    return {e: len(d) for e, d in docs.items()}


def idf_factor(key: ConceptKey, df: dict[str, int], n_docs: int) -> float:
    return sum(math.log(n_docs / df[e]) for e in key) / len(key)


def idf_scale(entry: ConceptEntry, df: dict[str, int], n_docs: int) -> float:
    return entry.c_value * idf_factor(entry.key, df, n_docs)


def score_table(table: ConceptTable, idf: bool = False, n_docs: int | None = None) -> ConceptTable:
    build_nest_sets(table)
    for entry in table.values():
        entry.c_value = c_value(entry, table)
        entry.score = entry.c_value
    if idf and table:
        df = document_frequencies(table)
        n = n_docs if n_docs is not None else len({o.doc_id for e in table.values() for o in e.occurrences})
        for entry in table.values():
            entry.score = idf_scale(entry, df, n)
    return table


@dataclass(frozen=True)
class TermEntry:
    term_id: int
    key: ConceptKey
    variants: tuple[str, ...]
    score: float


@dataclass
class TermDictionary:
    entries: dict[int, TermEntry] = field(default_factory=dict)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries.values())

    def __getitem__(self, term_id: int) -> TermEntry:
        return self.entries[term_id]

    def variant_ids(self) -> dict[str, int]:
        return {v: t.term_id for t in self for v in t.variants}

    def id_of(self, key: ConceptKey) -> int | None:
        for t in self:
            if t.key == key:
                return t.term_id
        return None

    def to_tsv(self) -> str:
        return "".join(f"{t.term_id}\t{t.score:.4f}\t{v}\n" for t in self for v in t.variants)


def classify(table: ConceptTable, threshold: float = DEFAULT_THRESHOLD) -> TermDictionary:
    """Number entries scoring strictly above ``threshold``, best first."""
    ranked = sorted((e for e in table.values() if e.score > threshold), key=lambda e: (-e.score, e.label))
    out = TermDictionary()
    taken: set[str] = set()
    for entry in table.values():
        entry.term_id = None
    for entry in ranked:
        variants = tuple(sorted(v for v in entry.variants if v not in taken))
        if not variants:
            continue
        term_id = len(out) + 1
        taken.update(variants)
        entry.term_id = term_id
        out.entries[term_id] = TermEntry(term_id, entry.key, variants, entry.score)
    return out
