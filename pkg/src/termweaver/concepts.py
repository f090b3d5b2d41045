"""Concept keys and the candidate table shared by normalization, acronyms and scoring."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .extract import CandidateOccurrence


@dataclass(frozen=True, order=True)
class ConceptKey:
    """Sorted, duplicate-free tuple of stems; equality is set equality."""

    elements: tuple[str, ...]

    def __post_init__(self):
        if not self.elements:
            raise ValueError("concept key needs at least one element")
        if list(self.elements) != sorted(set(self.elements)):
            raise ValueError(f"elements must be sorted and unique: {self.elements}")

    @classmethod
    def of(cls, stems: Iterable[str]) -> "ConceptKey":
        return cls(tuple(sorted(set(stems))))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, stem):
        return stem in self.elements

    def as_set(self) -> frozenset[str]:
        return frozenset(self.elements)

    def proper_subset_of(self, other: "ConceptKey") -> bool:
        return len(self) < len(other) and self.as_set() < other.as_set()

    def __str__(self):
        return "{" + ", ".join(self.elements) + "}"


def _occ_order(occ: CandidateOccurrence):
    return (occ.doc_id, occ.sentence_index, occ.token_range)


@dataclass
class ConceptEntry:
    key: ConceptKey
    variants: set[str] = field(default_factory=set)
    occurrences: list[CandidateOccurrence] = field(default_factory=list)
    # lowercased token sequences after re-tokenization, stopwords kept
    forms: set[tuple[str, ...]] = field(default_factory=set)
    nest_parents: set[ConceptKey] = field(default_factory=set)
    c_value: float = 0.0
    score: float = 0.0
    term_id: Optional[int] = None

    @property
    def f(self) -> int:
        return len(self.occurrences)

    @property
    def label(self) -> str:
        """Lexicographically least variant; the entry's display name."""
        return min(self.variants) if self.variants else str(self.key)

    def absorb(self, other: "ConceptEntry") -> None:
        self.variants |= other.variants
        self.forms |= other.forms
        seen = {_occ_order(o) for o in self.occurrences}
        for occ in other.occurrences:
            if _occ_order(occ) not in seen:
                seen.add(_occ_order(occ))
                self.occurrences.append(occ)
        self.occurrences.sort(key=_occ_order)


ConceptTable = dict  # ConceptKey -> ConceptEntry


def rekey(table: ConceptTable, mapping) -> ConceptTable:
    """Rebuild ``table`` under ``mapping(key) -> key``, merging entries that collide."""
    out: ConceptTable = {}
    for key in sorted(table):
        entry = table[key]
        new_key = mapping(key)
        if new_key in out:
            out[new_key].absorb(entry)
        else:
            moved = ConceptEntry(new_key, set(entry.variants), sorted(entry.occurrences, key=_occ_order),
                                 set(entry.forms))
            out[new_key] = moved
    return out


def add_occurrence(table: ConceptTable, key: ConceptKey, occ: CandidateOccurrence,
                   variant: str, form: tuple[str, ...] | None = None) -> bool:
    """Insert one occurrence; returns False if that exact span was already recorded."""
    entry = table.get(key)
    if entry is None:
        entry = table[key] = ConceptEntry(key)
    marker = _occ_order(occ)
    if any(_occ_order(o) == marker for o in entry.occurrences):
        return False
    entry.occurrences.append(occ)
    entry.variants.add(variant)
    if form is not None:
        entry.forms.add(form)
    return True
