"""Regenerate tests/fixtures/vocab5000.txt: pseudo-medical stems plus spelling variants."""

import random
from pathlib import Path

ONSETS = "b c d f g h k l m n p r s t v pl pr tr cr st sp br gl ph th".split()
VOWELS = "a e i o u y ae oe io ia".split()
CODAS = ["", "", "n", "r", "s", "l", "m", "x", "ct", "nt"]
ENDINGS = ["", "", "ic", "al", "ar", "ary", "oma", "itis", "osis", "in", "ase", "ene", "or", "ous"]
SEEDED = ["tumor", "tumour", "pulmonary", "pulmanary", "edema", "oedema", "anemia", "anaemia",
          "estrogen", "oestrogen", "retina", "retino", "hemoglobin", "haemoglobin"]


def pseudo_word(rng):
    w = "".join(rng.choice(ONSETS) + rng.choice(VOWELS) + rng.choice(CODAS) for _ in range(rng.randint(1, 3)))
    return w + rng.choice(ENDINGS)


def variant(rng, w):
    i = rng.randrange(len(w))
    op = rng.choice(["sub", "ins", "del", "swap", "lig"])
    if op == "sub":
        return w[:i] + rng.choice("aeiou") + w[i + 1:]
    if op == "ins":
        return w[:i] + rng.choice("aeiou") + w[i:]
    if op == "del" and len(w) > 3:
        return w[:i] + w[i + 1:]
    if op == "swap" and i + 1 < len(w):
        return w[:i] + w[i + 1] + w[i] + w[i + 2:]
    if w[0] == "e":
        return rng.choice(["ae", "oe"]) + w[1:]
    return w


def main():
    rng = random.Random(2024)
    vocab = set(SEEDED)
    while len(vocab) < 5000:
        w = pseudo_word(rng)
        if rng.random() < 0.05:
            w = "e" + w[1:]
        if len(w) < 3:
            continue
        vocab.add(w)
        if rng.random() < 0.3 and len(vocab) < 5000:
            vocab.add(variant(rng, w))
    out = Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "vocab5000.txt"
    out.write_text("\n".join(sorted(vocab)) + "\n", "utf-8")


if __name__ == "__main__":
    main()
