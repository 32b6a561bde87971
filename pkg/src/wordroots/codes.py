"""Codes, n-codes and intercodes over finite word sets.

``is_code`` runs the dangling-suffix fixpoint (Sardinas-Patterson) and can
reconstruct an explicit doubly factorized word when the set is not a code.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from . import automata as fa
from .words import Alphabet, Word

DEFAULT_INTERCODE_CAP = 4


class EmptyWordInCode(ValueError):
    pass


@dataclass(frozen=True)
class CodeWitness:
    """A word with two different factorizations over the candidate set."""

    word: Word
    top: tuple
    bottom: tuple


def _candidate(C: Iterable[Word]) -> list:
    words = list(C)
    if not words:
        raise ValueError("code candidates must be nonempty")
    if len(set(words)) != len(words):
        raise ValueError("code candidates contain duplicates")
    if any(len(w) == 0 for w in words):
        raise EmptyWordInCode("the empty word makes any set a non-code")
    return words


def code_witness(C: Iterable[Word]) -> Optional[CodeWitness]:
    """A doubly factorized word over ``C``, or ``None`` if ``C`` is a code.

    Each search node is a dangling suffix ``x``: one factorization is ahead
    of the other by exactly ``x``.  A node whose suffix is itself in ``C``
    closes the gap.
    """
    words = _candidate(C)
    cset = set(words)
    # parent[x] = (previous x or None, word appended, side it went to, ahead side after)
    parent = {}
    todo = deque()
    for c1 in words:
        for c2 in words:
            if c1 != c2 and len(c2) > len(c1) and c2[:len(c1)] == c1:
                x = c2[len(c1):]
                if x not in parent:
                    parent[x] = (None, (c2,), (c1,))
                    todo.append(x)

    def trace(x):
        chain = []
        while x is not None:
            chain.append(x)
            x = parent[x][0]
        return chain[::-1]

    while todo:
        x = todo.popleft()
        if x in cset:
            return _rebuild(trace(x), parent, x)
        for c in words:
            if len(c) < len(x) and x[:len(c)] == c:
                y = x[len(c):]
            elif len(c) > len(x) and c[:len(x)] == x:
                y = c[len(x):]
            else:
                continue
            if y not in parent:
                parent[y] = (x, c, None)
                todo.append(y)
    return None


def _rebuild(chain, parent, last) -> CodeWitness:
    _, top, bottom = parent[chain[0]]
    ahead, behind = list(top), list(bottom)
    for x, y in zip(chain, chain[1:]):
        c = parent[y][1]
        behind.append(c)
        if len(c) > len(x):
            ahead, behind = behind, ahead
    behind.append(last)
    word = sum_words(ahead)
    assert word == sum_words(behind) and ahead != behind
    top, bottom = sorted((tuple(ahead), tuple(behind)))
    return CodeWitness(word, top, bottom)


def sum_words(parts):
    out = parts[0][:0]
    for p in parts:
        out = out + p
    return out


def is_code(C: Iterable[Word]) -> bool:
    return code_witness(C) is None


def is_n_code(C: Iterable[Word], n: int) -> bool:
    """Every nonempty subset with at most ``n`` elements is a code."""
    words = _candidate(C)
    if n < 1:
        raise ValueError("n must be >= 1")
    for size in range(1, min(n, len(words)) + 1):
        for sub in combinations(words, size):
            if not is_code(sub):
                return False
    return True


def _alphabet_of(words, alphabet):
    if alphabet is not None:
        return alphabet
    return Alphabet(tuple(sorted({s for w in words for s in w})))


def is_intercode_for(C: Iterable[Word], m: int, alphabet: Optional[Alphabet] = None,
                     max_m: int = DEFAULT_INTERCODE_CAP) -> bool:
    """``C^(m+1)`` and ``S+ C^m S+`` are disjoint (``S`` the alphabet)."""
    words = _candidate(C)
    if m < 1:
        raise ValueError("m must be >= 1")
    if m > max_m:
        raise ValueError(f"m={m} exceeds the cap {max_m}")
    alphabet = _alphabet_of(words, alphabet)
    c = fa.nfa_trie(words, alphabet)
    lhs = fa.determinize(fa.nfa_concat(*([c] * (m + 1))))
    sp = fa.nfa_sigma_plus(alphabet)
    rhs = fa.determinize(fa.nfa_concat(sp, *([c] * m), sp))
    return fa.is_empty(fa.intersect(lhs, rhs))


def intercode_index(C: Iterable[Word], alphabet: Optional[Alphabet] = None,
                    max_m: int = DEFAULT_INTERCODE_CAP) -> Optional[int]:
    """Smallest ``m <= max_m`` for which ``C`` is an intercode, else ``None``."""
    words = _candidate(C)
    for m in range(1, max_m + 1):
        if is_intercode_for(words, m, alphabet, max_m):
            return m
    return None


def parse_word_list(text: str, alphabet: Optional[Alphabet] = None) -> list:
    """One word per line; ``-`` (or an empty quoted line ``""``) is the empty word."""
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line in ("-", '""'):
            out.append(alphabet.empty() if alphabet else "")
        else:
            out.append(alphabet.parse(line) if alphabet else line)
    return out
