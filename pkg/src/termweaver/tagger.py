"""Deterministic lexicon-plus-suffix POS tagger.

Good enough to feed the tag-pattern matcher on well-formed English prose.
Anything smarter can be injected through :func:`termweaver.preprocess.preprocess_document`.
"""

import re
from importlib import resources

PUNCT_TAGS = {
    "(": "-LRB-", "[": "-LRB-", "{": "-LRB-",
    ")": "-RRB-", "]": "-RRB-", "}": "-RRB-",
    ".": ".", "!": ".", "?": ".",
    ",": ",", ";": ":", ":": ":",
    '"': "''", "'": "''", "`": "``",
}

DETERMINERS = set(
    "a an the this that these those some any each every no all both either "
    "neither another such".split()
)
PREPOSITIONS = set(
    "of in on at by for with from into onto upon about above below over under "
    "between among through during before after since until within without "
    "against towards toward via per across along around behind beyond near "
    "than like despite throughout whereas whether although though because "
    "while if unless as".split()
)
CONJUNCTIONS = {"and", "or", "but", "nor", "yet"}
PRONOUNS = set("i you he she it we they me him her us them one".split())
POSSESSIVE_PRONOUNS = set("my your his its our their".split())
WH_WORDS = set("which who whom whose what where when how why".split())
MODALS = set("can could may might must shall should will would".split())
ADVERBS = set(
    "not also very more most less least only just even still already often "
    "always never then there here however thus therefore rather quite too "
    "again further moreover so now usually generally".split()
)

AUXILIARIES = set(
    "be am is are was were been being have has had having do does did done "
    "doing".split()
)

# base forms; inflected forms are resolved through -s/-ed/-ing stripping
VERBS = set(
    """
    activate inhibit induce regulate express bind give keep consider show
    suggest demonstrate increase decrease reduce treat use find report observe
    mediate require cause contain produce play include involve identify
    associate know enhance block stimulate promote prevent suppress affect
    lead make take develop determine examine investigate analyze analyse admit
    describe compare measure detect encode control depend appear remain
    become seem occur exhibit lack form transfect phosphorylate respond enter
    translocate interact modulate trigger facilitate accumulate confirm reveal
    provide allow compose consist represent result vary record receive present
    deny complain prescribe administer diagnose amplify culture grow propose
    evaluate assess perform obtain apply contribute correlate link target
    impair elevate decline improve worsen relieve recover undergo discharge
    follow monitor continue stop start begin need want think feel say tell
    see get go come help try call work
    """.split()
)

ADJECTIVES = set(
    """
    nuclear early important due various different new high low large small
    significant several many other same common human normal chronic acute
    severe mild clinical primary positive negative pulmonary parental late
    major minor total specific potential novel recent previous initial
    similar distinct free likely possible present key main general local
    certain whole full open short long strong weak rapid slow great little
    """.split()
)

NOUN_EXCEPTIONS = set(
    """
    signal hospital animal interval trial journal material arrival approval
    patient agent component proportion function ratio area idea
    """.split()
)


def _irregular_verb_forms():
    forms = {}
    text = resources.files("termweaver").joinpath("data/lemma_exceptions.tsv").read_text("utf-8")
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        form, lemma, cls = line.split("\t")
        if cls == "V" and form not in AUXILIARIES:
            forms[form] = lemma
    return forms


IRREGULAR_VERBS = _irregular_verb_forms()

_NOUN_SUFFIXES = ("tion", "sion", "ment", "ness", "ity", "ism", "ist", "ance", "ence", "ship", "ogy")
_ADJ_SUFFIXES = ("al", "ous", "ic", "ive", "able", "ible", "ful", "less", "ular")
_NUMERAL = re.compile(r"^[+-]?\d+(?:[.,]\d+)*%?$")
_HAS_LETTER = re.compile(r"[^\W\d_]")


def verb_base(word):
    """Return the known base verb behind an inflected form, or None."""
    if word in VERBS:
        return word
    for suffix in ("ing", "ed", "es", "s"):
        if word.endswith(suffix) and len(word) > len(suffix) + 1:
            base = word[: -len(suffix)]
            for cand in (base, base + "e", base[:-1] if len(base) > 2 and base[-1] == base[-2] else None):
                if cand and cand in VERBS:
                    return cand
            if suffix in ("ed", "es", "s") and base.endswith("i") and base[:-1] + "y" in VERBS:
                return base[:-1] + "y"
    return None


def _tag_word(word, lower, prev):
    if lower in AUXILIARIES:
        return "VB"
    if lower in MODALS:
        return "MD"
    if lower == "to":
        return "TO"
    if lower in DETERMINERS:
        return "DT"
    if lower in PREPOSITIONS:
        return "IN"
    if lower in CONJUNCTIONS:
        return "CC"
    if lower in PRONOUNS:
        return "PRP"
    if lower in POSSESSIVE_PRONOUNS:
        return "PRP$"
    if lower in WH_WORDS:
        return "WDT"
    if lower in ADVERBS:
        return "RB"
    if lower in ADJECTIVES:
        return "JJ"
    if lower in NOUN_EXCEPTIONS:
        return "NN"
    if lower in IRREGULAR_VERBS:
        return "VBN"
    if len(word) >= 2 and word.isupper():
        return "NNP"
    if any(ch.isdigit() for ch in word):
        return "NN"
    base = verb_base(lower)
    if base is not None:
        if lower.endswith("ed"):
            return "VBN"
        if lower.endswith("ing"):
            return "VBG"
        if lower == base:
            return "VB" if prev in ("MD", "TO", "PRP", "NNS", "RB") else "NN"
        return "VBZ" if prev in ("NN", "NNS", "NNP", "PRP", "-RRB-") else "NNS"
    if lower.endswith(_NOUN_SUFFIXES):
        return "NNS" if lower.endswith("s") else "NN"
    if lower.endswith("ly") and len(lower) > 4:
        return "RB"
    if lower.endswith("ed") and len(lower) > 4:
        return "VBN"
    if lower.endswith(_ADJ_SUFFIXES) and len(lower) > 4:
        return "JJ"
    if lower.endswith("s") and not lower.endswith(("ss", "us", "is")) and len(lower) > 3:
        return "NNS"
    return "NN"


def tag_tokens(tokens):
    """Tag a token sequence, returning fine-grained tag strings."""
    tags = []
    prev = None
    for i, word in enumerate(tokens):
        lower = word.lower()
        if word in ("'s", "’s"):
            tag = "POS"
        elif word in ("'", "’") and i > 0 and tokens[i - 1].lower().endswith("s"):
            tag = "POS"
        elif word in PUNCT_TAGS:
            tag = PUNCT_TAGS[word]
        elif _NUMERAL.match(word):
            tag = "CD"
        elif not _HAS_LETTER.search(word):
            tag = "SYM"
        else:
            tag = _tag_word(word, lower, prev)
        tags.append(tag)
        prev = tag
    return tags
