"""Contextual grammars: axioms, contexts ``(u, v)`` and a choice function.

External derivation wraps the whole word, ``w -> u w v`` when ``(u, v)``
is chosen for ``w``.  Internal derivation wraps a factor,
``w1 w2 w3 -> w1 u w2 v w3`` when ``(u, v)`` is chosen for ``w2``.

Grammar file format::

    alphabet: a b            # optional, otherwise inferred
    axioms: - ab             # '-' is the empty word
    contexts:
      - , -                  # index 0
      a , b                  # index 1
    choice: table
      - -> {0}
      ab -> {1}
      *a -> {2}              # any word ending in 'a' (longest suffix wins)
      default -> {}

or ``choice: builtin primitive-preserving``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .words import Alphabet, Word, is_primitive

Context = tuple  # (left, right)


class GrammarParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class TableChoice:
    """Exact-word entries, then ``*suffix`` entries, then a default."""

    exact: dict = field(default_factory=dict)
    suffixes: tuple = ()
    default: frozenset = frozenset()

    def __call__(self, w: Word, contexts: tuple) -> frozenset:
        idx = self.exact.get(w)
        if idx is None:
            best = None
            for suf, ix in self.suffixes:
                if len(suf) <= len(w) and w[len(w) - len(suf):] == suf:
                    if best is None or len(suf) > len(best[0]):
                        best = (suf, ix)
            idx = best[1] if best else self.default
        return frozenset(contexts[i] for i in idx)

    def indices(self) -> set:
        out = set(self.default)
        for ix in self.exact.values():
            out |= set(ix)
        for _, ix in self.suffixes:
            out |= set(ix)
        return out


@dataclass(frozen=True)
class PredicateChoice:
    """Context ``(u, v)`` is chosen for ``w`` iff ``test(w, u, v)``."""

    name: str
    test: Callable = field(compare=False)

    def __call__(self, w: Word, contexts: tuple) -> frozenset:
        return frozenset(c for c in contexts if self.test(w, c[0], c[1]))


def _keeps_primitive(w, u, v) -> bool:
    x = u + w + v
    return len(x) > 0 and is_primitive(x)


BUILTIN_CHOICES = {
    "primitive-preserving": PredicateChoice("primitive-preserving", _keeps_primitive),
}


@dataclass(frozen=True)
class ContextualGrammar:
    alphabet: Alphabet
    axioms: frozenset
    contexts: tuple
    choice: object

    def __post_init__(self):
        object.__setattr__(self, "axioms", frozenset(self.axioms))
        object.__setattr__(self, "contexts", tuple(tuple(c) for c in self.contexts))
        for w in self.axioms:
            self.alphabet.validate(w)
        for c in self.contexts:
            if len(c) != 2:
                raise ValueError(f"context {c!r} is not a pair")
            self.alphabet.validate(c[0])
            self.alphabet.validate(c[1])
        if isinstance(self.choice, TableChoice):
            bad = [i for i in self.choice.indices() if not 0 <= i < len(self.contexts)]
            if bad:
                raise ValueError(f"choice refers to unknown context indices {sorted(bad)}")

    def chosen(self, w: Word) -> frozenset:
        return self.choice(w, self.contexts)


def derive_ex_step(w: Word, G: ContextualGrammar) -> frozenset:
    return frozenset(u + w + v for u, v in G.chosen(w))


def derive_in_step(w: Word, G: ContextualGrammar) -> frozenset:
    out = set()
    n = len(w)
    for i in range(n + 1):
        for j in range(i, n + 1):
            w2 = w[i:j]
            for u, v in G.chosen(w2):
                out.add(w[:i] + u + w2 + v + w[j:])
    return frozenset(out)


def language_up_to(G: ContextualGrammar, mode: str, maxlen: int) -> frozenset:
    """All words of length ``<= maxlen`` derivable from an axiom.

    Contexts never shorten a word, so words beyond the bound are dropped
    without losing anything; the visited set absorbs ``(eps, eps)`` loops.
    """
    if maxlen < 0:
        raise ValueError("maxlen must be >= 0")
    try:
        step = {"ex": derive_ex_step, "in": derive_in_step}[mode]
    except KeyError:
        raise ValueError(f"mode must be 'ex' or 'in', not {mode!r}") from None
    seen = {w for w in G.axioms if len(w) <= maxlen}
    frontier = list(seen)
    while frontier:
        nxt = []
        for w in frontier:
            for x in step(w, G):
                if len(x) <= maxlen and x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    return frozenset(seen)


def q_grammar(alphabet: Alphabet) -> ContextualGrammar:
    """External grammar whose language is exactly the primitive words."""
    if len(alphabet) < 2:
        raise ValueError("needs an alphabet with at least two symbols")
    e = alphabet.empty()
    syms = [(s,) for s in alphabet.symbols] if alphabet.multichar else list(alphabet.symbols)
    short = [e] + syms + [a + b for a in syms for b in syms]
    contexts = [(u, v) for u in short for v in short if len(u) + len(v) <= 2]
    return ContextualGrammar(alphabet, frozenset(syms), tuple(contexts),
                             BUILTIN_CHOICES["primitive-preserving"])


# -- file format ------------------------------------------------------------------


def _word(tok: str, alphabet: Alphabet) -> Word:
    if tok == "-":
        return alphabet.empty()
    return alphabet.parse(tok)


def _indices(text: str, no: int) -> frozenset:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise GrammarParseError(f"expected '{{i, j, ...}}', got {text!r}", no)
    body = text[1:-1].strip()
    if not body:
        return frozenset()
    try:
        return frozenset(int(t) for t in body.split(","))
    except ValueError:
        raise GrammarParseError(f"bad index list {text!r}", no) from None


def parse_contextual(text: str) -> ContextualGrammar:
    alphabet = None
    axiom_toks = None
    ctx_rows = []
    table_rows = []
    builtin = None
    section = None
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        key = head.strip()
        if sep and key in ("alphabet", "axioms", "contexts", "choice"):
            section = key
            rest = rest.strip()
            if key == "alphabet":
                if not rest:
                    raise GrammarParseError("empty alphabet", no)
                alphabet = Alphabet.from_string(rest)
            elif key == "axioms":
                axiom_toks = (no, rest.split())
            elif key == "choice":
                if rest == "table":
                    section = "table"
                elif rest.startswith("builtin"):
                    name = rest[len("builtin"):].strip()
                    if name not in BUILTIN_CHOICES:
                        raise GrammarParseError(f"unknown builtin choice {name!r}", no)
                    builtin = name
                    section = None
                else:
                    raise GrammarParseError("choice must be 'table' or 'builtin <name>'", no)
            elif rest:
                raise GrammarParseError("contexts are listed on the following lines", no)
            continue
        if section == "contexts":
            left, comma, right = line.partition(",")
            if not comma or not left.strip() or not right.strip():
                raise GrammarParseError(f"expected context 'u , v', got {line!r}", no)
            ctx_rows.append((no, left.strip(), right.strip()))
        elif section == "table":
            lhs, arrow, rhs = line.partition("->")
            if not arrow or not lhs.strip():
                raise GrammarParseError(f"expected 'w -> {{indices}}', got {line!r}", no)
            table_rows.append((no, lhs.strip(), _indices(rhs, no)))
        elif section == "axioms":
            axiom_toks = (axiom_toks[0], axiom_toks[1] + line.split())
        else:
            raise GrammarParseError(f"unexpected line {line!r}", no)
    if axiom_toks is None:
        raise GrammarParseError("missing 'axioms:' section")
    if builtin is None and not table_rows:
        raise GrammarParseError("missing 'choice:' section")
    if alphabet is None:
        syms = set()
        toks = list(axiom_toks[1]) + [t for _, l, r in ctx_rows for t in (l, r)]
        toks += [k.lstrip("*") for _, k, _ in table_rows if k != "default"]
        for t in toks:
            if t != "-":
                syms |= set(t)
        if not syms:
            raise GrammarParseError("cannot infer a nonempty alphabet; add 'alphabet:'")
        alphabet = Alphabet(tuple(sorted(syms)))
    try:
        axioms = [_word(t, alphabet) for t in axiom_toks[1]]
    except ValueError as exc:
        raise GrammarParseError(str(exc), axiom_toks[0]) from None
    contexts = []
    for no, left, right in ctx_rows:
        try:
            contexts.append((_word(left, alphabet), _word(right, alphabet)))
        except ValueError as exc:
            raise GrammarParseError(str(exc), no) from None
    if builtin is not None:
        choice = BUILTIN_CHOICES[builtin]
    else:
        exact, suffixes, default = {}, [], frozenset()
        for no, key, idx in table_rows:
            bad = [i for i in idx if not 0 <= i < len(contexts)]
            if bad:
                raise GrammarParseError(f"unknown context index {bad[0]}", no)
            try:
                if key == "default":
                    default = idx
                elif key.startswith("*"):
                    suffixes.append((_word(key[1:] or "-", alphabet), idx))
                else:
                    exact[_word(key, alphabet)] = idx
            except ValueError as exc:
                raise GrammarParseError(str(exc), no) from None
        choice = TableChoice(exact, tuple(suffixes), default)
    return ContextualGrammar(alphabet, frozenset(axioms), tuple(contexts), choice)
