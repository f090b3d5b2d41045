"""Candidate extraction by matching a regular expression over coarse POS tags.

The expression is compiled once to a DFA (Thompson construction followed by
subset construction), so matching never backtracks.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .preprocess import COARSE_TAGS, Sentence

DEFAULT_PATTERN = (
    "(((NN|JJ)* NN) IN ((NN|JJ)* NN)) | ((NN|JJ)* NN POS (NN|JJ)* NN) | ((NN|JJ)+ NN)"
)

SYMBOLS = {tag: code for code, tag in enumerate(COARSE_TAGS)}


class PatternError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


# ---------------------------------------------------------------- parsing


def _lex(source):
    tokens = []
    i = 0
    while i < len(source):
        c = source[i]
        if c.isspace():
            i += 1
        elif c in "()|*+?":
            tokens.append((c, i))
            i += 1
        elif c.isalpha():
            j = i
            while j < len(source) and source[j].isalpha():
                j += 1
            word = source[i:j]
            if word not in SYMBOLS:
                raise PatternError(f"unknown tag {word!r}", i)
            tokens.append(("SYM", i, SYMBOLS[word]))
            i = j
        else:
            raise PatternError(f"unexpected character {c!r}", i)
    tokens.append(("END", len(source)))
    return tokens


class _Parser:
    # alt    := concat ('|' concat)*
    # concat := repeat+
    # repeat := atom ('*' | '+' | '?')*
    # atom   := SYM | '(' alt ')'

    def __init__(self, source):
        self.tokens = _lex(source)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self):
        node = self.alt()
        tok = self.peek()
        if tok[0] != "END":
            raise PatternError(f"unexpected {tok[0]!r}", tok[1])
        return node

    def alt(self):
        branches = [self.concat()]
        while self.peek()[0] == "|":
            self.take()
            branches.append(self.concat())
        return branches[0] if len(branches) == 1 else ("alt", branches)

    def concat(self):
        items = []
        while self.peek()[0] in ("SYM", "("):
            items.append(self.repeat())
        if not items:
            tok = self.peek()
            raise PatternError("expected a tag or '('", tok[1])
        return items[0] if len(items) == 1 else ("cat", items)

    def repeat(self):
        node = self.atom()
        while self.peek()[0] in ("*", "+", "?"):
            op = self.take()[0]
            node = ({"*": "star", "+": "plus", "?": "opt"}[op], node)
        return node

    def atom(self):
        tok = self.take()
        if tok[0] == "SYM":
            return ("sym", tok[2])
        if tok[0] == "(":
            node = self.alt()
            close = self.take()
            if close[0] != ")":
                raise PatternError("missing ')'", close[1])
            return node
        raise PatternError(f"unexpected {tok[0]!r}", tok[1])


# ---------------------------------------------------------------- NFA -> DFA


class _NFA:
    def __init__(self):
        self.eps = []  # state -> list of states
        self.edges = []  # state -> list of (symbol, state)

    def state(self):
        self.eps.append([])
        self.edges.append([])
        return len(self.eps) - 1

    def build(self, node):
        """Thompson fragment for ``node``: returns (entry, exit)."""
        kind = node[0]
        if kind == "sym":
            a, b = self.state(), self.state()
            self.edges[a].append((node[1], b))
            return a, b
        if kind == "cat":
            entry, exit_ = self.build(node[1][0])
            for child in node[1][1:]:
                e, x = self.build(child)
                self.eps[exit_].append(e)
                exit_ = x
            return entry, exit_
        if kind == "alt":
            a, b = self.state(), self.state()
            for child in node[1]:
                e, x = self.build(child)
                self.eps[a].append(e)
                self.eps[x].append(b)
            return a, b
        e, x = self.build(node[1])
        a, b = self.state(), self.state()
        self.eps[a].append(e)
        self.eps[x].append(b)
        if kind in ("star", "opt"):
            self.eps[a].append(b)
        if kind in ("star", "plus"):
            self.eps[x].append(e)
        return a, b

    def closure(self, states):
        seen = set(states)
        stack = list(states)
        while stack:
            s = stack.pop()
            for t in self.eps[s]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)


def _determinize(tree, n_symbols):
    nfa = _NFA()
    entry, final = nfa.build(tree)
    start = nfa.closure([entry])
    # state 0 is dead, 1 is start
    index = {frozenset(): 0, start: 1}
    order = [frozenset(), start]
    table = [[0] * n_symbols, None]
    pending = [start]
    while pending:
        current = pending.pop()
        row = [0] * n_symbols
        for sym in range(n_symbols):
            moved = [t for s in current for (a, t) in nfa.edges[s] if a == sym]
            if not moved:
                continue
            target = nfa.closure(moved)
            if target not in index:
                index[target] = len(order)
                order.append(target)
                table.append(None)
                pending.append(target)
            row[sym] = index[target]
        table[index[current]] = row
    accept = bytes(1 if final in s else 0 for s in order)
    return table, accept


# ---------------------------------------------------------------- public API


@dataclass(frozen=True)
class TagPattern:
    source: str
    table: tuple[int, ...]
    accept: bytes
    n_symbols: int = len(COARSE_TAGS)

    @property
    def n_states(self):
        return len(self.accept)

    def matches(self, tags) -> bool:
        """Whole-sequence membership test for a list of coarse tags."""
        q = 1
        for tag in tags:
            q = self.table[q * self.n_symbols + SYMBOLS[tag]]
            if q == 0:
                return False
        return bool(self.accept[q])

    def scan(self, tags) -> list[tuple[int, int]]:
        """Leftmost-longest, non-overlapping matches as inclusive index pairs."""
        codes = bytes(SYMBOLS[t] for t in tags)
        return kernels.dfa_scan(codes, self.table, self.accept, self.n_symbols)


def compile_pattern(source: str = DEFAULT_PATTERN) -> TagPattern:
    tree = _Parser(source).parse()
    rows, accept = _determinize(tree, len(COARSE_TAGS))
    flat = tuple(t for row in rows for t in row)
    return TagPattern(source, flat, accept)


@dataclass(frozen=True)
class CandidateOccurrence:
    doc_id: str
    sentence_index: int
    token_range: tuple[int, int]
    surface: str
    char_span: tuple[int, int]

    @property
    def length(self):
        return self.token_range[1] - self.token_range[0] + 1


def occurrence_from_tokens(doc_id, sentence, first, last):
    toks = sentence.tokens[first : last + 1]
    return CandidateOccurrence(
        doc_id,
        sentence.index,
        (first, last),
        " ".join(t.surface for t in toks),
        (toks[0].char_span[0], toks[-1].char_span[1]),
    )


def extract_candidates(sentence: Sentence, pattern: TagPattern, doc_id: str = "") -> list[CandidateOccurrence]:
    tags = [t.tag.coarse for t in sentence.tokens]
    return [occurrence_from_tokens(doc_id, sentence, a, b) for a, b in pattern.scan(tags)]


def extract_corpus(docs, pattern: TagPattern) -> list[CandidateOccurrence]:
    out = []
    for doc in docs:
        for sent in doc.sentences:
            out.extend(extract_candidates(sent, pattern, doc.id))
    return out
