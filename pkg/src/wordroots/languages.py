"""Powers and roots of regular languages.

``pow_H(L) = {p^k : p in L, k in H}``.  The procedures here decide
membership in such powers, build automata for finite-``H`` powers of
languages with a finite root, decide whether the root of a regular
language is finite, and classify the square ``pow_{2}(L)`` as regular,
context-free but not regular, or not context-free.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Callable, Iterable, Iterator, Optional, Union

from . import automata as fa
from .automata import Dfa, RightLinearGrammar
from .words import Alphabet, Word, is_primitive, root_and_degree, smallest_period

log = logging.getLogger(__name__)

DEFAULT_FIP_CAP = 6


class NotFiniteRoot(ValueError):
    """The operation needs a language whose root is finite."""


class FipCapExceeded(ValueError):
    pass


# -- exponent sets ------------------------------------------------------------


@dataclass(frozen=True)
class ExponentSet:
    """A set of natural numbers (0 included in the naturals).

    Either an explicit finite set, all naturals, or a total membership
    predicate.  ``probe`` bounds the search used when a predicate set is
    asked whether it has a positive element.
    """

    kind: str
    values: frozenset = frozenset()
    predicate: Optional[Callable[[int], bool]] = field(default=None, compare=False)
    description: str = ""
    probe: int = 64

    @classmethod
    def finite(cls, values: Iterable[int]) -> "ExponentSet":
        vals = frozenset(int(v) for v in values)
        if any(v < 0 for v in vals):
            raise ValueError("exponents must be natural numbers")
        return cls("finite", vals)

    @classmethod
    def naturals(cls) -> "ExponentSet":
        return cls("naturals", description="N")

    @classmethod
    def decidable(cls, predicate: Callable[[int], bool], description: str = "",
                  probe: int = 64) -> "ExponentSet":
        return cls("predicate", predicate=predicate, description=description, probe=probe)

    @classmethod
    def parse(cls, text: str) -> "ExponentSet":
        """``"N"`` for all naturals, otherwise a comma-separated list."""
        text = text.strip()
        if text in ("N", "naturals"):
            return cls.naturals()
        if not text:
            return cls.finite(())
        try:
            return cls.finite(int(t) for t in text.split(","))
        except ValueError:
            raise ValueError(f"bad exponent set {text!r}: use 'N' or e.g. '0,2,3'") from None

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def __contains__(self, k: int) -> bool:
        if k < 0:
            return False
        if self.kind == "finite":
            return k in self.values
        if self.kind == "naturals":
            return True
        return bool(self.predicate(k))

    def upto(self, limit: int) -> Iterator[int]:
        if self.kind == "finite":
            yield from sorted(v for v in self.values if v <= limit)
        else:
            yield from (k for k in range(limit + 1) if k in self)

    def has_positive(self) -> bool:
        if self.kind == "finite":
            return any(v > 0 for v in self.values)
        if self.kind == "naturals":
            return True
        return any(k in self for k in range(1, self.probe + 1))

    def __str__(self):
        if self.kind == "finite":
            return "{" + ", ".join(map(str, sorted(self.values))) + "}"
        return self.description or self.kind


def _member(L, w) -> bool:
    if callable(L) and not isinstance(L, (Dfa, set, frozenset)):
        return bool(L(w))
    return w in L


def power_membership(u: Word, L, H: ExponentSet) -> bool:
    """Is ``u`` in ``pow_H(L)``?

    ``L`` is anything supporting ``in`` (set, :class:`Dfa`) or a predicate.
    Only the root of ``u`` and its prefix powers are ever tested against
    ``L``.
    """
    if (_member(L, u) and 1 in H) or (len(u) == 0 and 0 in H):
        return True
    if len(u) == 0:
        # eps = eps^k for every k
        return _member(L, u) and H.has_positive()
    p, d = root_and_degree(u)
    for i in range(1, d // 2 + 1):
        if d % i:
            continue
        if _member(L, p * i) and d // i in H:
            return True
    return False


# -- semilinear sets ------------------------------------------------------------


@dataclass(frozen=True)
class SemilinearSet:
    """``offsets`` united with arithmetic progressions ``{o + j*c : j >= 0}``."""

    offsets: frozenset = frozenset()
    progressions: frozenset = frozenset()

    def __post_init__(self):
        offs = frozenset(self.offsets)
        progs = frozenset((int(o), int(c)) for o, c in self.progressions)
        if any(c < 1 for _, c in progs):
            raise ValueError("progression periods must be >= 1")
        if any(o < 0 for o in offs) or any(o < 0 for o, _ in progs):
            raise ValueError("natural numbers only")
        offs = frozenset(o for o in offs if not any(o >= s and (o - s) % c == 0 for s, c in progs))
        object.__setattr__(self, "offsets", offs)
        object.__setattr__(self, "progressions", progs)

    def __contains__(self, k: int) -> bool:
        return k in self.offsets or any(k >= o and (k - o) % c == 0 for o, c in self.progressions)

    def is_empty(self) -> bool:
        return not self.offsets and not self.progressions

    def upto(self, limit: int) -> list[int]:
        return [k for k in range(limit + 1) if k in self]

    def scaled(self, n: int) -> "SemilinearSet":
        """``{m*n : m in self}``."""
        if n == 0:
            return SemilinearSet({0} if not self.is_empty() else set())
        return SemilinearSet({o * n for o in self.offsets},
                             {(o * n, c * n) for o, c in self.progressions})

    def union(self, other: "SemilinearSet") -> "SemilinearSet":
        return SemilinearSet(self.offsets | other.offsets, self.progressions | other.progressions)


def degree_set(L: Dfa, p: Word) -> SemilinearSet:
    """``{k >= 1 : p^k in L}``, read off the eventually periodic run on ``p, p, ...``."""
    seen = {}
    states = []
    q = L.start
    k = 0
    while q not in seen:
        seen[q] = k
        states.append(q)
        q = L.run(p, q)
        k += 1
    tail = seen[q]
    cycle = k - tail
    offsets = {j for j in range(1, tail) if states[j] in L.accepting}
    progs = set()
    for j in range(tail, k):
        if states[j] in L.accepting:
            start = j if j > 0 else j + cycle
            progs.add((start, cycle))
    return SemilinearSet(offsets, progs)


def _semilinear_power_dfa(p: Word, m: SemilinearSet, alphabet: Alphabet) -> fa.Nfa:
    parts = []
    for o in sorted(m.offsets):
        parts.append(fa.nfa_word(p * o, alphabet))
    for o, c in sorted(m.progressions):
        parts.append(fa.nfa_concat(fa.nfa_word(p * o, alphabet), fa.nfa_star(fa.nfa_word(p * c, alphabet))))
    return fa.nfa_words((), alphabet) if not parts else fa.nfa_union(*parts)


# -- root finiteness ------------------------------------------------------------------


def root_bound(L: Dfa) -> int:
    """Default root-length bound: state count of the minimal complete DFA."""
    return len(fa.minimize(L))


def root_finite(L: Dfa, bound: Optional[int] = None) -> Optional[frozenset]:
    """The finite root set of ``L``, or ``None`` if the root is infinite.

    Decides whether every nonempty word of ``L`` is a power of a word of
    length at most ``bound``.  A live prefix with no period ``<= bound``
    already refutes this.  The search walks ``L``'s automaton while
    tracking the periods ``<= bound`` of the prefix read so far.  Up to length
    ``2*bound`` the prefix is kept explicitly; after that the periods have
    collapsed onto the smallest one ``d`` and the configuration is
    ``(state, u[:d], position mod d)``, so the search is finite.
    """
    d = fa.minimize(L)
    alphabet = d.alphabet
    as_str = not alphabet.multichar
    if len(alphabet) == 1:
        nonempty = not fa.is_empty(fa.difference(d, Dfa.from_words([alphabet.empty()], alphabet)))
        return frozenset({alphabet.parse(alphabet.symbols[0])}) if nonempty else frozenset()
    n = root_bound(d) if bound is None else bound
    if n < 1:
        raise ValueError("bound must be >= 1")
    live = d.live_states()
    roots = set()

    def mk(t):
        return "".join(t) if as_str else t

    # explicit phase: (state, prefix) with at least one period <= n
    layer = {(d.start, ())} if d.start in live else set()
    length = 0
    canon = set()
    while layer and length < 2 * n:
        nxt = set()
        for q, u in layer:
            for a in alphabet:
                t = d.delta[(q, a)]
                if t not in live:
                    continue
                w = u + (a,)
                i = len(w)
                periods = [p for p in range(1, min(n, i) + 1) if all(w[j] == w[j - p] for j in range(p, i))]
                if not periods:
                    # every accepted extension keeps a root longer than n
                    log.debug("no period <= %d on live prefix %s", n, mk(w))
                    return None
                if t in d.accepting:
                    divs = [p for p in periods if i % p == 0]
                    if not divs:
                        log.debug("root longer than %d: %s", n, mk(w))
                        return None
                    roots.add(mk(w[:divs[0]]))
                nxt.add((t, w))
        layer = nxt
        length += 1
    for q, w in layer:
        p = smallest_period(w)
        canon.add((q, w[:p], len(w) % p))
    # periodic phase: the continuation is forced
    todo = list(canon)
    while todo:
        q, p, off = todo.pop()
        a = p[off]
        for b in alphabet:
            # leaving the period: no period <= n can come back
            if b != a and d.delta[(q, b)] in live:
                return None
        t = d.delta[(q, a)]
        if t not in live:
            continue
        off2 = (off + 1) % len(p)
        if t in d.accepting:
            if off2:
                return None
            roots.add(mk(p))
        key = (t, p, off2)
        if key not in canon:
            canon.add(key)
            todo.append(key)
    return frozenset(roots)


# -- finite powers ---------------------------------------------------------


def pow_finite_H(L: Dfa, H: Iterable[int]) -> Dfa:
    """Automaton for ``pow_H(L)``, ``H`` finite, ``L`` with a finite root."""
    H = sorted(set(H))
    alphabet = L.alphabet
    roots = root_finite(L)
    if roots is None:
        raise NotFiniteRoot("language has an infinite root; use power_membership for word-level queries")
    parts = []
    for p in sorted(roots, key=lambda w: (len(w), w)):
        m = degree_set(L, p)
        if m.is_empty():
            continue
        for n in H:
            parts.append(_semilinear_power_dfa(p, m.scaled(n), alphabet))
    eps = alphabet.empty()
    if eps in L and H:
        parts.append(fa.nfa_word(eps, alphabet))
    if not parts:
        return fa.minimize(Dfa.empty(alphabet))
    return fa.minimize(fa.determinize(fa.nfa_union(*parts)))


# -- FIP sets ---------------------------------------------------------------


class FipKind(enum.Enum):
    WPW = "wp*w'"
    PWP = "p*wp*"


@dataclass(frozen=True)
class FipComponent:
    """An inserted iteration ``w p* w2`` (WPW) or ``p* w p*`` (PWP)."""

    kind: FipKind
    p: Word
    w: Word
    w2: Optional[Word] = None

    def __post_init__(self):
        if not self.p or not is_primitive(self.p):
            raise ValueError(f"{self.p!r} is not primitive")
        if len(self.w) >= len(self.p) and self.w[len(self.w) - len(self.p):] == self.p:
            raise ValueError(f"{self.p!r} is a suffix of {self.w!r}")
        if self.kind is FipKind.WPW:
            if self.w2 is None:
                raise ValueError("wp*w' needs w2")
            if _in_plus(self.w2 + self.w, self.p):
                raise ValueError(f"{self.w2 + self.w!r} is a power of {self.p!r}")
        elif self.w2 is not None:
            raise ValueError("p*wp* takes no w2")

    def to_nfa(self, alphabet: Alphabet) -> fa.Nfa:
        star = fa.nfa_star(fa.nfa_word(self.p, alphabet))
        if self.kind is FipKind.WPW:
            return fa.nfa_concat(fa.nfa_word(self.w, alphabet), star, fa.nfa_word(self.w2, alphabet))
        star2 = fa.nfa_star(fa.nfa_word(self.p, alphabet))
        return fa.nfa_concat(star, fa.nfa_word(self.w, alphabet), star2)

    def to_dfa(self, alphabet: Alphabet) -> Dfa:
        return fa.minimize(fa.determinize(self.to_nfa(alphabet)))

    def __contains__(self, u: Word) -> bool:
        lp = len(self.p)
        if self.kind is FipKind.WPW:
            lw, l2 = len(self.w), len(self.w2)
            mid = len(u) - lw - l2
            return (mid >= 0 and mid % lp == 0 and u[:lw] == self.w
                    and u[len(u) - l2:] == self.w2 and u[lw:lw + mid] == self.p * (mid // lp))
        for i in range(0, len(u) - len(self.w) + 1, lp):
            rest = len(u) - i - len(self.w)
            if (rest % lp == 0 and u[:i] == self.p * (i // lp) and u[i:i + len(self.w)] == self.w
                    and u[i + len(self.w):] == self.p * (rest // lp)):
                return True
        return False

    def __str__(self):
        def s(x):
            return "".join(x) if x else "ε"
        if self.kind is FipKind.WPW:
            return f"{s(self.w)}({s(self.p)})*{s(self.w2)}"
        return f"({s(self.p)})*{s(self.w)}({s(self.p)})*"


def _in_plus(x: Word, p: Word) -> bool:
    return len(x) > 0 and len(x) % len(p) == 0 and x == p * (len(x) // len(p))


def _words_below(alphabet: Alphabet, m: int):
    as_str = not alphabet.multichar
    for n in range(m):
        for t in iproduct(alphabet.symbols, repeat=n):
            yield "".join(t) if as_str else t


def fip_candidates(alphabet: Alphabet, m: int) -> list[FipComponent]:
    """Every inserted iteration whose modules are all shorter than ``m``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    words = list(_words_below(alphabet, m))
    out = []
    for p in words:
        if not p or not is_primitive(p):
            continue
        lp = len(p)
        ws = [w for w in words if not (len(w) >= lp and w[len(w) - lp:] == p)]
        for w in ws:
            out.append(FipComponent(FipKind.PWP, p, w))
        for w in ws:
            for w2 in words:
                if not _in_plus(w2 + w, p):
                    out.append(FipComponent(FipKind.WPW, p, w, w2))
    return out


# -- square classification ------------------------------------------------------


class Verdict(enum.Enum):
    REGULAR = "Regular"
    CONTEXT_FREE_NOT_REGULAR = "ContextFreeNotRegular"
    NOT_CONTEXT_FREE = "NotContextFree"

    @property
    def exit_code(self) -> int:
        return {"Regular": 0, "ContextFreeNotRegular": 1, "NotContextFree": 2}[self.value]


@dataclass(frozen=True)
class SquareClass:
    verdict: Verdict
    evidence: Optional[Union[frozenset, tuple]] = None
    m: Optional[int] = None

    def __post_init__(self):
        if self.verdict is Verdict.REGULAR and not isinstance(self.evidence, frozenset):
            raise ValueError("Regular verdict carries the finite root set")
        if self.verdict is Verdict.CONTEXT_FREE_NOT_REGULAR and not isinstance(self.evidence, tuple):
            raise ValueError("ContextFreeNotRegular verdict carries a FIP cover")


def _union_dfa(components, alphabet):
    if not components:
        return Dfa.empty(alphabet)
    return fa.minimize(fa.determinize(fa.nfa_union(*(c.to_nfa(alphabet) for c in components))))


def _prune_cover(L: Dfa, cover: list) -> tuple:
    """Drop components the rest of the cover makes redundant."""
    kept = list(cover)
    for c in list(reversed(cover)):
        rest = [x for x in kept if x is not c]
        if fa.includes(L, _union_dfa(rest, L.alphabet)):
            kept = rest
    return tuple(kept)


def _group_nfa(p: Word, components: list, alphabet: Alphabet) -> fa.Nfa:
    """Exact union of components sharing ``p``, built from shared tries."""
    pwp = [c.w for c in components if c.kind is FipKind.PWP]
    tails = {}
    for c in components:
        if c.kind is FipKind.WPW:
            tails.setdefault(c.w, set()).add(c.w2)
    by_tails = {}
    for w, ts in tails.items():
        by_tails.setdefault(frozenset(ts), []).append(w)
    star = lambda: fa.nfa_star(fa.nfa_word(p, alphabet))
    parts = []
    if pwp:
        parts.append(fa.nfa_concat(star(), fa.nfa_trie(pwp, alphabet), star()))
    for ts, ws in by_tails.items():
        parts.append(fa.nfa_concat(fa.nfa_trie(ws, alphabet), star(), fa.nfa_trie(ts, alphabet)))
    return fa.nfa_union(*parts)


def _subtract_all(remaining: Dfa, pieces, alphabet: Alphabet):
    """Subtract pieces in order; returns (used pieces, leftover language)."""
    used = []
    for piece, nfa in pieces:
        pd = fa.minimize(fa.determinize(nfa))
        if fa.is_empty(fa.intersect(remaining, pd)):
            continue
        used.append(piece)
        remaining = fa.minimize(fa.difference(remaining, pd))
        if fa.is_empty(remaining):
            break
    return used, remaining


def square_classification(L: Union[Dfa, RightLinearGrammar], max_m: int = DEFAULT_FIP_CAP,
                          prune_limit: int = 64) -> SquareClass:
    """Classify ``pow_{2}(L)`` for a regular ``L``.

    ``m`` is one more than the number of nonterminals of the grammar (a
    DFA is first turned into the grammar of its minimal automaton).  The
    cover search subtracts candidate components from ``L``, grouped by
    their primitive word, and stops as soon as nothing is left.  The groups
    that were needed are then expanded into single components, and covers
    of at most ``prune_limit`` components are pruned to an irredundant one.
    """
    if isinstance(L, RightLinearGrammar):
        g = L
        d = fa.grammar_to_dfa(g)
    else:
        d = fa.minimize(L)
        g = fa.dfa_to_grammar(d)
    roots = root_finite(d)
    if roots is not None:
        return SquareClass(Verdict.REGULAR, roots)
    m = len(g.nonterminals) + 1
    if m > max_m:
        raise FipCapExceeded(f"module bound m={m} exceeds the cap {max_m}")
    alphabet = d.alphabet
    groups = {}
    for c in fip_candidates(alphabet, m):
        groups.setdefault(c.p, []).append(c)
    used, left = _subtract_all(d, ((p, _group_nfa(p, cs, alphabet)) for p, cs in groups.items()), alphabet)
    if not fa.is_empty(left):
        return SquareClass(Verdict.NOT_CONTEXT_FREE, None, m)
    singles = ((c, c.to_nfa(alphabet)) for p in used for c in groups[p])
    cover, left = _subtract_all(d, singles, alphabet)
    assert fa.is_empty(left)
    if len(cover) <= prune_limit:
        cover = _prune_cover(d, cover)
    log.info("square class: m=%d, %d groups used, cover of %d", m, len(used), len(cover))
    return SquareClass(Verdict.CONTEXT_FREE_NOT_REGULAR, tuple(cover), m)
