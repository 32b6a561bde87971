"""A small finite-automata engine.

DFAs are always complete (a dead state is materialized when needed) and are
treated as immutable.  States are arbitrary hashable values; most
constructions renumber them to ``0..n-1``.

Text format for automata::

    alphabet: a b
    start: q0
    accept: q1 q2
    q0 a -> q1
    q1 b -> q1

Missing transitions go to a dead state; repeated ``(state, symbol)`` pairs
make the automaton nondeterministic and it is determinized on load.

Grammar format, one production group per line, start symbol first::

    S -> a A | a | EPSILON
    A -> b A | b
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .words import Alphabet, Word


class AlphabetMismatch(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _letters(w, alphabet: Alphabet):
    return w


class Dfa:
    """Complete deterministic automaton."""

    __slots__ = ("states", "alphabet", "delta", "start", "accepting")

    def __init__(self, states, alphabet: Alphabet, delta: dict, start, accepting):
        self.states = frozenset(states)
        self.alphabet = alphabet
        self.delta = dict(delta)
        self.start = start
        self.accepting = frozenset(accepting)
        if start not in self.states:
            raise ValueError(f"start state {start!r} not declared")
        if not self.accepting <= self.states:
            raise ValueError("accepting states must be declared states")
        for q in self.states:
            for a in alphabet:
                t = self.delta.get((q, a))
                if t is None:
                    raise ValueError(f"transition from {q!r} on {a!r} missing")
                if t not in self.states:
                    raise ValueError(f"transition target {t!r} not declared")

    def __repr__(self):
        return f"Dfa({len(self.states)} states, alphabet={self.alphabet.symbols})"

    def run(self, w: Word, q=None):
        q = self.start if q is None else q
        delta = self.delta
        for s in w:
            q = delta[(q, s)]
        return q

    def accepts(self, w: Word) -> bool:
        try:
            return self.run(w) in self.accepting
        except KeyError:
            return False

    __contains__ = accepts

    def __len__(self):
        return len(self.states)

    def reachable(self) -> set:
        seen = {self.start}
        todo = [self.start]
        while todo:
            q = todo.pop()
            for a in self.alphabet:
                t = self.delta[(q, a)]
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
        return seen

    def coreachable(self) -> set:
        rev = {}
        for (q, a), t in self.delta.items():
            rev.setdefault(t, set()).add(q)
        seen = set(self.accepting)
        todo = list(seen)
        while todo:
            t = todo.pop()
            for q in rev.get(t, ()):
                if q not in seen:
                    seen.add(q)
                    todo.append(q)
        return seen

    def live_states(self) -> set:
        return self.reachable() & self.coreachable()

    def renumbered(self) -> "Dfa":
        order = {}
        todo = deque([self.start])
        order[self.start] = 0
        while todo:
            q = todo.popleft()
            for a in self.alphabet:
                t = self.delta[(q, a)]
                if t not in order:
                    order[t] = len(order)
                    todo.append(t)
        delta = {(order[q], a): order[self.delta[(q, a)]] for q in order for a in self.alphabet}
        return Dfa(range(len(order)), self.alphabet, delta, 0,
                   {order[q] for q in self.accepting if q in order})

    def to_text(self) -> str:
        fmt = " ".join(self.alphabet.symbols)
        lines = [f"alphabet: {fmt}", f"start: {self.start}",
                 "accept: " + " ".join(str(q) for q in sorted(self.accepting, key=str))]
        for q in sorted(self.states, key=str):
            for a in self.alphabet:
                lines.append(f"{q} {a} -> {self.delta[(q, a)]}")
        return "\n".join(lines) + "\n"

    # convenience constructors

    @classmethod
    def from_words(cls, words: Iterable[Word], alphabet: Alphabet) -> "Dfa":
        """Trie automaton for a finite language."""
        words = list(words)
        delta = {}
        accepting = set()
        states = {(): None}
        for w in words:
            alphabet.validate(w)
            node = ()
            for s in w:
                child = node + (s,)
                states[child] = None
                delta[(node, s)] = child
                node = child
            accepting.add(node)
        dead = "dead"
        full = {}
        for q in states:
            for a in alphabet:
                full[(q, a)] = delta.get((q, a), dead)
        for a in alphabet:
            full[(dead, a)] = dead
        return cls(list(states) + [dead], alphabet, full, (), accepting).renumbered()

    @classmethod
    def universal(cls, alphabet: Alphabet) -> "Dfa":
        return cls([0], alphabet, {(0, a): 0 for a in alphabet}, 0, [0])

    @classmethod
    def empty(cls, alphabet: Alphabet) -> "Dfa":
        return cls([0], alphabet, {(0, a): 0 for a in alphabet}, 0, [])


@dataclass(frozen=True)
class Nfa:
    """Automaton with a transition relation, epsilon moves and several start states.

    ``delta`` maps ``(state, symbol)`` to a set of states; the symbol ``None``
    marks epsilon moves.
    """

    states: frozenset
    alphabet: Alphabet
    delta: dict
    starts: frozenset
    accepting: frozenset

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "starts", frozenset(self.starts))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        d = {k: frozenset(v) for k, v in self.delta.items()}
        object.__setattr__(self, "delta", d)
        for (q, a), ts in d.items():
            if q not in self.states or not ts <= self.states:
                raise ValueError(f"transition {q!r} --{a!r}--> {set(ts)!r} uses undeclared states")
            if a is not None and a not in self.alphabet:
                raise ValueError(f"symbol {a!r} not in alphabet")
        if not self.starts <= self.states or not self.accepting <= self.states:
            raise ValueError("start/accepting states must be declared")

    def closure(self, qs) -> frozenset:
        seen = set(qs)
        todo = list(seen)
        while todo:
            q = todo.pop()
            for t in self.delta.get((q, None), ()):
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
        return frozenset(seen)

    def step(self, qs, a) -> frozenset:
        out = set()
        for q in qs:
            out |= self.delta.get((q, a), frozenset())
        return self.closure(out)

    def accepts(self, w: Word) -> bool:
        qs = self.closure(self.starts)
        for s in w:
            qs = self.step(qs, s)
            if not qs:
                return False
        return bool(qs & self.accepting)

    __contains__ = accepts

    @classmethod
    def from_dfa(cls, d: Dfa) -> "Nfa":
        return cls(d.states, d.alphabet, {k: {v} for k, v in d.delta.items()},
                   {d.start}, d.accepting)


@dataclass(frozen=True)
class RightLinearGrammar:
    """Productions ``A -> a B``, ``A -> a`` and optionally ``S -> EPSILON``.

    ``productions`` is a tuple of ``(lhs, symbol, rhs_nonterminal_or_None)``;
    the empty production is ``(start, None, None)``.
    """

    nonterminals: frozenset
    alphabet: Alphabet
    start: str
    productions: tuple

    def __post_init__(self):
        object.__setattr__(self, "nonterminals", frozenset(self.nonterminals))
        object.__setattr__(self, "productions", tuple(self.productions))
        if self.start not in self.nonterminals:
            raise ValueError(f"start symbol {self.start!r} is not a nonterminal")
        has_eps = False
        on_rhs = set()
        for lhs, a, rhs in self.productions:
            if lhs not in self.nonterminals:
                raise ValueError(f"unknown nonterminal {lhs!r}")
            if a is None:
                if rhs is not None or lhs != self.start:
                    raise ValueError("EPSILON is only allowed as S -> EPSILON")
                has_eps = True
                continue
            if a not in self.alphabet:
                raise ValueError(f"terminal {a!r} not in alphabet")
            if rhs is not None:
                if rhs not in self.nonterminals:
                    raise ValueError(f"unknown nonterminal {rhs!r}")
                on_rhs.add(rhs)
        if has_eps and self.start in on_rhs:
            raise ValueError("S -> EPSILON requires S absent from right-hand sides")

    def to_text(self) -> str:
        groups = {}
        for lhs, a, rhs in self.productions:
            alt = "EPSILON" if a is None else (a if rhs is None else f"{a} {rhs}")
            groups.setdefault(lhs, []).append(alt)
        order = [self.start] + sorted(n for n in groups if n != self.start)
        return "\n".join(f"{n} -> {' | '.join(groups[n])}" for n in order if n in groups) + "\n"


# -- constructions ---------------------------------------------------------


def determinize(n: Nfa) -> Dfa:
    start = n.closure(n.starts)
    index = {start: 0}
    todo = deque([start])
    delta = {}
    while todo:
        qs = todo.popleft()
        for a in n.alphabet:
            ts = n.step(qs, a)
            if ts not in index:
                index[ts] = len(index)
                todo.append(ts)
            delta[(index[qs], a)] = index[ts]
    accepting = {i for qs, i in index.items() if qs & n.accepting}
    return Dfa(range(len(index)), n.alphabet, delta, 0, accepting)


def complement(d: Dfa) -> Dfa:
    return Dfa(d.states, d.alphabet, d.delta, d.start, d.states - d.accepting)


def _check_alphabets(d1, d2):
    if tuple(d1.alphabet.symbols) != tuple(d2.alphabet.symbols):
        raise AlphabetMismatch(f"alphabets differ: {d1.alphabet.symbols} vs {d2.alphabet.symbols}")


_MODES = {
    "intersect": lambda x, y: x and y,
    "union": lambda x, y: x or y,
    "difference": lambda x, y: x and not y,
}


def product(d1: Dfa, d2: Dfa, mode: str = "intersect") -> Dfa:
    """Reachable product automaton combining acceptance by ``mode``."""
    _check_alphabets(d1, d2)
    try:
        combine = _MODES[mode]
    except KeyError:
        raise ValueError(f"unknown product mode {mode!r}") from None
    start = (d1.start, d2.start)
    index = {start: 0}
    todo = deque([start])
    delta = {}
    syms = d1.alphabet.symbols
    while todo:
        pq = todo.popleft()
        p, q = pq
        i = index[pq]
        for a in syms:
            t = (d1.delta[(p, a)], d2.delta[(q, a)])
            j = index.get(t)
            if j is None:
                j = index[t] = len(index)
                todo.append(t)
            delta[(i, a)] = j
    accepting = {i for (p, q), i in index.items()
                 if combine(p in d1.accepting, q in d2.accepting)}
    return Dfa(range(len(index)), d1.alphabet, delta, 0, accepting)


def intersect(d1, d2):
    return product(d1, d2, "intersect")


def union(d1, d2):
    return product(d1, d2, "union")


def difference(d1, d2):
    return product(d1, d2, "difference")


def is_empty(d: Dfa) -> bool:
    return not (d.reachable() & d.accepting)


def shortest_word(d: Dfa):
    """A shortest accepted word, or ``None`` for the empty language."""
    parent = {d.start: None}
    todo = deque([d.start])
    while todo:
        q = todo.popleft()
        if q in d.accepting:
            out = []
            while parent[q] is not None:
                q, a = parent[q]
                out.append(a)
            out.reverse()
            return tuple(out) if d.alphabet.multichar else "".join(out)
        for a in d.alphabet:
            t = d.delta[(q, a)]
            if t not in parent:
                parent[t] = (q, a)
                todo.append(t)
    return None


def is_finite(d: Dfa) -> bool:
    """No cycle among live states."""
    live = d.live_states()
    color = {}
    for root in live:
        if root in color:
            continue
        stack = [(root, iter(d.alphabet.symbols))]
        color[root] = 1
        while stack:
            q, it = stack[-1]
            advanced = False
            for a in it:
                t = d.delta[(q, a)]
                if t not in live:
                    continue
                c = color.get(t)
                if c == 1:
                    return False
                if c is None:
                    color[t] = 1
                    stack.append((t, iter(d.alphabet.symbols)))
                    advanced = True
                    break
            if not advanced:
                color[q] = 2
                stack.pop()
    return True


def includes(d1: Dfa, d2: Dfa) -> bool:
    """``L(d1)`` is a subset of ``L(d2)``."""
    return is_empty(difference(d1, d2))


def equivalent(d1: Dfa, d2: Dfa) -> bool:
    return includes(d1, d2) and includes(d2, d1)


def enumerate_language(d: Dfa, maxlen: int) -> frozenset:
    """All accepted words of length at most ``maxlen``."""
    live = d.live_states()
    out = set()
    as_str = not d.alphabet.multichar
    layer = {(d.start, ())} if d.start in live else set()
    for n in range(maxlen + 1):
        nxt = set()
        for q, w in layer:
            if q in d.accepting:
                out.add("".join(w) if as_str else w)
            if n < maxlen:
                for a in d.alphabet:
                    t = d.delta[(q, a)]
                    if t in live:
                        nxt.add((t, w + (a,)))
        layer = nxt
    return frozenset(out)


def minimize(d: Dfa) -> Dfa:
    """Minimal complete DFA by partition refinement (Moore)."""
    d = d.renumbered()
    syms = d.alphabet.symbols
    block = {q: int(q in d.accepting) for q in d.states}
    while True:
        sig = {q: (block[q],) + tuple(block[d.delta[(q, a)]] for a in syms) for q in d.states}
        ids = {}
        new = {}
        for q in sorted(d.states):
            new[q] = ids.setdefault(sig[q], len(ids))
        if len(ids) == len(set(block.values())):
            block = new
            break
        block = new
    delta = {(block[q], a): block[d.delta[(q, a)]] for q in d.states for a in syms}
    out = Dfa(set(block.values()), d.alphabet, delta, block[d.start],
              {block[q] for q in d.accepting})
    return out.renumbered()


def live_state_count(d: Dfa) -> int:
    return len(minimize(d).live_states())


# -- NFA building blocks ------------------------------------------------------


def _shift(n: Nfa, tag):
    f = lambda q: (tag, q)
    delta = {(f(q), a): {f(t) for t in ts} for (q, a), ts in n.delta.items()}
    return ({f(q) for q in n.states}, delta, {f(q) for q in n.starts}, {f(q) for q in n.accepting})


def nfa_word(w: Word, alphabet: Alphabet) -> Nfa:
    alphabet.validate(w)
    states = range(len(w) + 1)
    delta = {(i, s): {i + 1} for i, s in enumerate(w)}
    return Nfa(states, alphabet, delta, {0}, {len(w)})


def nfa_union(*parts: Nfa) -> Nfa:
    alphabet = parts[0].alphabet
    states, delta, starts, acc = set(), {}, set(), set()
    for i, n in enumerate(parts):
        s, d, st, a = _shift(n, i)
        states |= s
        delta.update(d)
        starts |= st
        acc |= a
    return Nfa(states, alphabet, delta, starts, acc)


def nfa_concat(*parts: Nfa) -> Nfa:
    alphabet = parts[0].alphabet
    states, delta = set(), {}
    shifted = [_shift(n, i) for i, n in enumerate(parts)]
    for s, d, _, _ in shifted:
        states |= s
        delta.update(d)
    for (_, _, _, acc), (_, _, nxt_starts, _) in zip(shifted, shifted[1:]):
        for q in acc:
            delta.setdefault((q, None), set())
            delta[(q, None)] = set(delta[(q, None)]) | nxt_starts
    return Nfa(states, alphabet, delta, shifted[0][2], shifted[-1][3])


def nfa_star(n: Nfa) -> Nfa:
    s, d, st, acc = _shift(n, 0)
    hub = "hub"
    delta = {k: set(v) for k, v in d.items()}
    delta[(hub, None)] = set(st)
    for q in acc:
        delta[(q, None)] = delta.get((q, None), set()) | {hub}
    return Nfa(s | {hub}, n.alphabet, delta, {hub}, {hub})


def nfa_words(words: Iterable[Word], alphabet: Alphabet) -> Nfa:
    words = list(words)
    if not words:
        return Nfa({0}, alphabet, {}, {0}, set())
    return nfa_union(*(nfa_word(w, alphabet) for w in words))


def nfa_trie(words: Iterable[Word], alphabet: Alphabet) -> Nfa:
    """Deterministic tree automaton for a finite set, sharing prefixes."""
    delta = {}
    accepting = set()
    states = {()}
    for w in words:
        alphabet.validate(w)
        node = ()
        for s in w:
            child = node + (s,)
            delta[(node, s)] = {child}
            states.add(child)
            node = child
        accepting.add(node)
    return Nfa(states, alphabet, delta, {()}, accepting)


def nfa_sigma_plus(alphabet: Alphabet) -> Nfa:
    delta = {(0, a): {1} for a in alphabet}
    delta.update({(1, a): {1} for a in alphabet})
    return Nfa({0, 1}, alphabet, delta, {0}, {1})


def power_word_dfa(p: Word, alphabet: Alphabet, plus: bool = False) -> Dfa:
    """DFA for ``p*`` (or ``p+``)."""
    if not p:
        raise ValueError("power_word_dfa needs a nonempty word")
    n = nfa_star(nfa_word(p, alphabet))
    if plus:
        n = nfa_concat(nfa_word(p, alphabet), n)
    return minimize(determinize(n))


# -- grammars -----------------------------------------------------------------


def grammar_to_nfa(g: RightLinearGrammar) -> Nfa:
    final = ("final",)
    states = set(g.nonterminals) | {final}
    delta = {}
    accepting = {final}
    for lhs, a, rhs in g.productions:
        if a is None:
            accepting.add(lhs)
            continue
        target = final if rhs is None else rhs
        delta.setdefault((lhs, a), set()).add(target)
    return Nfa(states, g.alphabet, delta, {g.start}, accepting)


def dfa_to_grammar(d: Dfa) -> RightLinearGrammar:
    """Right-linear grammar whose nonterminals are the live states of ``minimize(d)``.

    A fresh start symbol is added when the start state accepts and is
    re-entered, so that ``S -> EPSILON`` stays legal.
    """
    m = minimize(d)
    live = m.live_states()
    # a live state without live successors only ends words; it gets no nonterminal
    extends = {q for q in live if any(m.delta[(q, a)] in live for a in m.alphabet)}
    name = {q: f"Q{q}" for q in sorted(extends | {m.start})}
    prods = []
    for q in sorted(extends):
        for a in m.alphabet:
            t = m.delta[(q, a)]
            if t in extends:
                prods.append((name[q], a, name[t]))
            if t in live and t in m.accepting:
                prods.append((name[q], a, None))
    nonterminals = set(name.values())
    if m.start not in live:
        # empty language: a lone start symbol with no productions
        return RightLinearGrammar({"S"}, m.alphabet, "S", ())
    start = name[m.start]
    if m.start in m.accepting:
        reentered = any(rhs == start for _, _, rhs in prods)
        if reentered:
            fresh = "S"
            while fresh in nonterminals:
                fresh += "'"
            nonterminals.add(fresh)
            prods += [(fresh, a, rhs) for lhs, a, rhs in prods if lhs == start]
            start = fresh
        prods.append((start, None, None))
    return RightLinearGrammar(nonterminals, m.alphabet, start, prods)


def grammar_to_dfa(g: RightLinearGrammar) -> Dfa:
    return minimize(determinize(grammar_to_nfa(g)))


def grammar_language(g: RightLinearGrammar, maxlen: int) -> frozenset:
    """Words derivable from ``g`` with at most ``maxlen`` terminals, by derivation."""
    as_str = not g.alphabet.multichar
    out = set()
    frontier = {((), g.start)}
    for lhs, a, rhs in g.productions:
        if a is None:
            out.add("" if as_str else ())
    for _ in range(maxlen):
        nxt = set()
        for w, nt in frontier:
            for lhs, a, rhs in g.productions:
                if lhs != nt or a is None:
                    continue
                w2 = w + (a,)
                if rhs is None:
                    out.add("".join(w2) if as_str else w2)
                else:
                    nxt.add((w2, rhs))
        frontier = nxt
    return frozenset(out)


# -- text formats ---------------------------------------------------------------


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_automaton(text: str) -> Dfa:
    alphabet = None
    start = None
    accept = set()
    transitions = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        head, sep, rest = line.partition(":")
        if sep and "->" not in line:
            key = head.strip()
            if key == "alphabet":
                alphabet = Alphabet.from_string(rest) if rest.strip() else None
                if alphabet is None:
                    raise ParseError("empty alphabet", no)
            elif key == "start":
                start = rest.strip()
                if not start or len(start.split()) != 1:
                    raise ParseError("start needs exactly one state", no)
            elif key == "accept":
                accept = set(rest.split())
            else:
                raise ParseError(f"unknown header {key!r}", no)
            continue
        left, arrow, right = line.partition("->")
        parts = left.split()
        if not arrow or len(parts) != 2 or len(right.split()) != 1:
            raise ParseError(f"expected 'q a -> q2', got {raw.strip()!r}", no)
        transitions.append((no, parts[0], parts[1], right.strip()))
    if alphabet is None:
        raise ParseError("missing 'alphabet:' header")
    if start is None:
        raise ParseError("missing 'start:' header")
    states = {start} | accept
    delta = {}
    for no, q, a, t in transitions:
        if a not in alphabet:
            raise ParseError(f"symbol {a!r} not in alphabet", no)
        states |= {q, t}
        delta.setdefault((q, a), set()).add(t)
    if all(len(ts) == 1 for ts in delta.values()):
        dead = "__dead__"
        full = {}
        for q in states | {dead}:
            for a in alphabet:
                ts = delta.get((q, a))
                full[(q, a)] = next(iter(ts)) if ts else dead
        return Dfa(states | {dead}, alphabet, full, start, accept)
    return determinize(Nfa(states, alphabet, delta, {start}, accept))


def parse_grammar(text: str, alphabet: Alphabet | None = None) -> RightLinearGrammar:
    rows = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        lhs, arrow, rhs = line.partition("->")
        lhs = lhs.strip()
        if not arrow or not lhs or len(lhs.split()) != 1:
            raise ParseError(f"expected 'A -> ...', got {raw.strip()!r}", no)
        rows.append((no, lhs, [alt.split() for alt in rhs.split("|")]))
    if not rows:
        raise ParseError("grammar has no productions")
    nonterminals = {lhs for _, lhs, _ in rows}
    terminals = []
    prods = []
    for no, lhs, alts in rows:
        for alt in alts:
            if alt == ["EPSILON"]:
                prods.append((lhs, None, None))
            elif len(alt) == 1:
                prods.append((lhs, alt[0], None))
            elif len(alt) == 2 and alt[1] in nonterminals:
                prods.append((lhs, alt[0], alt[1]))
            else:
                raise ParseError(f"production {lhs} -> {' '.join(alt)} is not right-linear", no)
            if alt != ["EPSILON"] and alt[0] not in terminals:
                if alt[0] in nonterminals:
                    raise ParseError(f"{alt[0]!r} is used both as terminal and nonterminal", no)
                terminals.append(alt[0])
    if alphabet is None:
        alphabet = Alphabet(tuple(sorted(terminals)))
    try:
        return RightLinearGrammar(nonterminals, alphabet, rows[0][1], prods)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def load_language(text: str) -> tuple[Dfa, RightLinearGrammar | None]:
    """Parse either format; grammars are returned alongside their DFA."""
    for raw in text.splitlines():
        line = _strip(raw)
        if not line:
            continue
        if line.startswith(("alphabet:", "start:", "accept:")):
            return parse_automaton(text), None
        break
    g = parse_grammar(text)
    return grammar_to_dfa(g), g
