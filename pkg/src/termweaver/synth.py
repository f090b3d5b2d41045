"""Deterministic synthetic biomedical-ish abstracts for benchmarking."""

from __future__ import annotations

import random
from pathlib import Path

_MODIFIERS = "nuclear early human chronic acute severe primary clinical novel specific".split()
_NOUNS = (
    "cell factor receptor protein kinase gene transcription activation response serum "
    "binding domain pathway signal expression inhibitor tumor necrosis lymphoma patient "
    "therapy dose marker membrane complex enzyme antibody"
).split()
_VERBS = "activates inhibits regulates induces binds blocks enhances reduces modulates".split()
_ACRONYMS = [
    ("tumor necrosis factor", "TNF"),
    ("protein kinase C", "PKC"),
    ("nuclear factor kappa", "NFK"),
    ("serum response factor", "SRF"),
    ("epidermal growth factor receptor", "EGFR"),
]


def _phrase(rng: random.Random) -> str:
    words = [rng.choice(_NOUNS) for _ in range(rng.randint(1, 3))]
    if rng.random() < 0.4:
        words.insert(0, rng.choice(_MODIFIERS))
    if rng.random() < 0.2:
        words += ["of", rng.choice(_NOUNS), rng.choice(_NOUNS)]
    return " ".join(words)


def _sentence(rng: random.Random, defined: set[str]) -> str:
    roll = rng.random()
    if roll < 0.15:
        long_form, short = rng.choice(_ACRONYMS)
        if short in defined:
            subject = short
        else:
            defined.add(short)
            subject = f"{long_form} ({short})"
    else:
        subject = _phrase(rng)
    s = f"The {subject} {rng.choice(_VERBS)} the {_phrase(rng)}"
    if rng.random() < 0.3:
        s += f" in {_phrase(rng)}"
    return s[0].upper() + s[1:] + "."


def generate_corpus(n_docs: int, seed: int = 0, sentences: tuple[int, int] = (4, 8)) -> list[tuple[str, str]]:
    rng = random.Random(seed)
    out = []
    for i in range(n_docs):
        defined: set[str] = set()
        n = rng.randint(*sentences)
        out.append((f"doc{i:04d}", " ".join(_sentence(rng, defined) for _ in range(n)) + "\n"))
    return out


def write_corpus(directory: str | Path, n_docs: int, seed: int = 0) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for doc_id, text in generate_corpus(n_docs, seed):
        p = directory / f"{doc_id}.txt"
        p.write_text(text, "utf-8")
        paths.append(p)
    return paths
