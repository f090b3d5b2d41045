"""Jaro / Jaro-Winkler similarity and the prefix + length filtered index."""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable

from . import kernels


@dataclass(frozen=True)
class SimilarityParams:
    p: float = 0.1
    l_max: int = 4
    token_threshold: float = 0.94
    phrase_threshold: float = 0.95

    def __post_init__(self):
        if not 0.0 <= self.p <= 0.25:
            raise ValueError(f"prefix scale p must be in [0, 0.25], got {self.p}")
        if self.l_max < 0 or self.p * self.l_max > 1.0:
            raise ValueError("p * l_max must not exceed 1")
        for name in ("token_threshold", "phrase_threshold"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")


DEFAULT_PARAMS = SimilarityParams()


def jaro(s1: str, s2: str) -> float:
    """Jaro similarity with matching window ``min(|s1|, |s2|) // 2``."""
    return kernels.jaro(s1, s2)


def jaro_winkler(s1: str, s2: str, params: SimilarityParams = DEFAULT_PARAMS) -> float:
    return kernels.jaro_winkler(s1, s2, params.p, params.l_max)


def jw_upper_bound(n1: int, n2: int, params: SimilarityParams = DEFAULT_PARAMS) -> float:
    """Largest JW any pair of strings with these lengths can reach."""
    if n1 == 0 or n2 == 0:
        return 0.0
    lo, hi = min(n1, n2), max(n1, n2)
    j = (1.0 + lo / hi + 1.0) / 3.0
    return j + params.l_max * params.p * (1.0 - j)


_LIGATURE_PREFIXES = ("ae", "oe")


class SimilarityIndex:
    """Sorted vocabulary; prefix lookups are binary searches."""

    def __init__(self, strings: Iterable[str]):
        self.entries = sorted(set(strings))
        self.lengths = [len(s) for s in self.entries]

    def __len__(self):
        return len(self.entries)

    def __contains__(self, s):
        i = bisect_left(self.entries, s)
        return i < len(self.entries) and self.entries[i] == s

    def prefix_range(self, prefix: str) -> range:
        lo = bisect_left(self.entries, prefix)
        hi = bisect_left(self.entries, prefix + "\U0010ffff")
        return range(lo, hi)


def _query_prefixes(s: str) -> list[str]:
    prefixes = [s[0]]
    if s[0] == "e":
        prefixes.extend(_LIGATURE_PREFIXES)
    elif s[:2] in _LIGATURE_PREFIXES:
        prefixes.append("e")
    return prefixes


def similar_candidates(index: SimilarityIndex, s: str) -> list[str]:
    """Strings sharing the first letter (or an ae/oe ligature) within one character of length."""
    if not s:
        return []
    n = len(s)
    out = []
    seen = set()
    for prefix in _query_prefixes(s):
        for i in index.prefix_range(prefix):
            c = index.entries[i]
            if c == s or c in seen or abs(index.lengths[i] - n) > 1:
                continue
            seen.add(c)
            out.append(c)
    return out


def in_filter_scope(a: str, b: str) -> bool:
    """The pair predicate ``similar_candidates`` implements, stated directly."""
    if not a or not b or a == b or abs(len(a) - len(b)) > 1:
        return False
    if a[0] == b[0]:
        return True
    return (a[0] == "e" and b[:2] in _LIGATURE_PREFIXES) or (b[0] == "e" and a[:2] in _LIGATURE_PREFIXES)


def similar_pairs(vocabulary: Iterable[str], threshold: float,
                  params: SimilarityParams = DEFAULT_PARAMS) -> set[tuple[str, str]]:
    """All unordered pairs from the vocabulary, within filter scope, with JW >= threshold."""
    index = SimilarityIndex(vocabulary)
    pairs = set()
    for s in index.entries:
        for c in similar_candidates(index, s):
            if s < c and jaro_winkler(s, c, params) >= threshold:
                pairs.add((s, c))
    return pairs
