"""Dictionary lookup over the corpus, standoff and inline HTML output, concordances."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from html import escape
from typing import Iterable, Sequence

from .preprocess import Document
from .score import TermDictionary

DEFAULT_WINDOW = 40

PALETTE = (
    "#ffb3ba", "#ffdfba", "#ffffba", "#baffc9", "#bae1ff", "#e0bbe4", "#957dad", "#d291bc",
    "#fec8d8", "#ffdfd3", "#b5ead7", "#c7ceea", "#e2f0cb", "#ffdac1", "#ff9aa2", "#a0ced9",
    "#adf7b6", "#fcf5c7", "#ffc09f", "#ffee93", "#79addc", "#cdb4db", "#ffc8dd", "#bde0fe",
    "#a2d2ff", "#caffbf", "#fdffb6", "#ffd6a5", "#9bf6ff", "#d0f4de", "#e4c1f9", "#f1c0e8",
)


@dataclass(frozen=True, order=True)
class Annotation:
    doc_id: str
    start: int
    length: int
    term_id: int

    @property
    def end(self) -> int:
        return self.start + self.length


@dataclass(frozen=True)
class ConcordanceLine:
    term_id: int
    doc_id: str
    left: str
    match: str
    right: str
    start: int = 0


# ---------------------------------------------------------------- matching

_END = object()


class PhraseMatcher:
    """Token trie over the dictionary's lowercased variants."""

    def __init__(self, dictionary: TermDictionary):
        self.root: dict = {}
        for term in dictionary:
            for variant in term.variants:
                node = self.root
                for word in variant.split(" "):
                    node = node.setdefault(word, {})
                node.setdefault(_END, term.term_id)

    def match(self, doc: Document) -> list[Annotation]:
        out = []
        for sent in doc.sentences:
            words = [t.lower for t in sent.tokens]
            for i in range(len(words)):
                node = self.root
                j = i
                while j < len(words) and words[j] in node:
                    node = node[words[j]]
                    if _END in node:
                        start = sent.tokens[i].char_span[0]
                        end = sent.tokens[j].char_span[1]
                        out.append(Annotation(doc.id, start, end - start, node[_END]))
                    j += 1
        return sorted(out, key=standoff_order)


def match_phrases(doc: Document, dictionary: TermDictionary, matcher: PhraseMatcher | None = None) -> list[Annotation]:
    """Every occurrence of every variant, nested and overlapping ones included."""
    return (matcher or PhraseMatcher(dictionary)).match(doc)


def standoff_order(a: Annotation):
    return (a.doc_id, a.start, -a.length, a.term_id)


def emit_standoff(annotations: Iterable[Annotation]) -> str:
    return "".join(f"{a.doc_id}\t{a.start}\t{a.length}\t{a.term_id}\n" for a in sorted(annotations, key=standoff_order))


# ---------------------------------------------------------------- inline HTML


def term_colors(term_ids: Iterable[int], seed: int = 0) -> dict[int, str]:
    """Same id, same colour; distinct colours for the first len(PALETTE) ranks."""
    shuffled = list(PALETTE)
    random.Random(seed).shuffle(shuffled)
    return {tid: shuffled[rank % len(shuffled)] for rank, tid in enumerate(sorted(set(term_ids)))}


def resolve_longest(annotations: Iterable[Annotation]) -> list[Annotation]:
    """Greedy non-overlapping selection: longer first, then earlier."""
    kept: list[Annotation] = []
    for a in sorted(annotations, key=lambda a: (-a.length, a.start, a.term_id)):
        if all(a.end <= k.start or a.start >= k.end for k in kept):
            kept.append(a)
    return sorted(kept, key=lambda a: a.start)


def render_inline(text: str, annotations: Sequence[Annotation], colors: dict[int, str]) -> str:
    """Escaped ``text`` with the longest non-overlapping annotations wrapped in marks."""
    kept = resolve_longest(annotations)
    anchors = sorted({a.start for a in annotations})
    opens = {a.start: a for a in kept}
    closes = {a.end: a for a in kept}
    events = sorted(set(anchors) | set(opens) | set(closes))
    out = []
    pos = 0
    for at in events:
        out.append(escape(text[pos:at], quote=False))
        pos = at
        if at in closes:
            tid = closes[at].term_id
            out.append(f'<sup class="tid" data-id="{tid}"></sup></mark>')
        if at in anchors:
            out.append(f'<a id="pos-{at}"></a>')
        if at in opens:
            a = opens[at]
            color = colors.get(a.term_id, PALETTE[0])
            out.append(f'<mark id="{a.term_id}" class="entity" style="background: {color};">')
    out.append(escape(text[pos:], quote=False))
    return "".join(out)


_STYLE = """
body { font-family: sans-serif; line-height: 1.6; max-width: 60em; margin: 2em auto; }
mark.entity { padding: 0 0.15em; border-radius: 0.2em; }
sup.tid::after { content: attr(data-id); font-size: 0.7em; margin-left: 0.15em; }
td, th { padding: 0.1em 0.6em; text-align: left; vertical-align: top; }
.left { text-align: right; }
"""


def _page(title: str, body: str) -> str:
    return (
        "<!DOCTYPE html>\n"
        '<html lang="en">\n'
        f'<head><meta charset="utf-8"/><title>{escape(title)}</title><style>{_STYLE}</style></head>\n'
        f"<body>\n{body}\n</body>\n</html>\n"
    )


def emit_inline_html(doc: Document, annotations: Sequence[Annotation], colors: dict[int, str] | None = None,
                     seed: int = 0) -> str:
    if colors is None:
        colors = term_colors((a.term_id for a in annotations), seed)
    mine = [a for a in annotations if a.doc_id == doc.id]
    body = f"<h1>{escape(doc.id)}</h1>\n<p class=\"doc\">{render_inline(doc.text, mine, colors)}</p>"
    return _page(doc.id, body)


_SAFE = re.compile(r"[^A-Za-z0-9._-]")


def doc_filename(doc_id: str) -> str:
    return _SAFE.sub("_", doc_id) + ".html"


# ---------------------------------------------------------------- concordances


def _flat(s: str) -> str:
    return re.sub(r"[\t\r\n]+", " ", s)


def concordances(term_id: int, corpus: dict[str, Document] | Iterable[Document], annotations: Iterable[Annotation],
                 window: int = DEFAULT_WINDOW) -> list[ConcordanceLine]:
    if window < 0:
        raise ValueError("window must be non-negative")
    by_id = corpus if isinstance(corpus, dict) else {d.id: d for d in corpus}
    out = []
    for a in sorted(annotations, key=standoff_order):
        if a.term_id != term_id or a.doc_id not in by_id:
            continue
        text = by_id[a.doc_id].text
        left = text[max(0, a.start - window) : a.start] if window else ""
        right = text[a.end : a.end + window]
        out.append(ConcordanceLine(term_id, a.doc_id, _flat(left), _flat(text[a.start : a.end]), _flat(right), a.start))
    return out


def emit_concordances_tsv(lines: Iterable[ConcordanceLine]) -> str:
    return "".join(f"{c.term_id}\t{c.doc_id}\t{c.left}\t{c.match}\t{c.right}\n" for c in lines)


def emit_index_html(dictionary: TermDictionary, lines_by_term: dict[int, list[ConcordanceLine]],
                    colors: dict[int, str]) -> str:
    rows = []
    sections = []
    for term in dictionary:
        tid = term.term_id
        lines = lines_by_term.get(tid, [])
        color = colors.get(tid, PALETTE[0])
        names = ", ".join(escape(v) for v in term.variants)
        rows.append(
            f'<tr><td>{tid}</td><td>{term.score:.4f}</td><td>{len(lines)}</td>'
            f'<td><a href="#term-{tid}">{names}</a></td></tr>'
        )
        items = []
        for c in lines:
            href = escape(f"{doc_filename(c.doc_id)}#pos-{c.start}")
            items.append(
                f'<tr><td class="left">{escape(c.left)}</td>'
                f'<td><a href="{href}"><mark class="entity" style="background: {color};">{escape(c.match)}</mark></a></td>'
                f"<td>{escape(c.right)}</td><td>{escape(c.doc_id)}</td></tr>"
            )
        sections.append(
            f'<h2 id="term-{tid}">{tid}: {names}</h2>\n<table>\n' + "\n".join(items) + "\n</table>"
        )
    body = (
        "<h1>Terms</h1>\n<table>\n<tr><th>id</th><th>score</th><th>hits</th><th>variants</th></tr>\n"
        + "\n".join(rows)
        + "\n</table>\n"
        + "\n".join(sections)
    )
    return _page("Terms", body)
