"""Brute-force reference implementations.

Everything here is a direct transcription of a set-theoretic definition and
shares no code with the optimized modules.  Used by the test suite and by
the CLI's hidden ``--oracle`` flag.
"""

from itertools import product

from .periodicity import PeriodicityClass, RootKind
from .words import Alphabet, BINARY


def _prefixes_strict(v):
    return [v[:i] for i in range(len(v))]


def naive_is_primitive(w) -> bool:
    if not w:
        raise ValueError("primitivity undefined for empty word")
    n = len(w)
    for d in range(1, n):
        if n % d == 0 and w[:d] * (n // d) == w:
            return False
    return True


def naive_root(w):
    """Shortest ``v`` with ``w = v^n`` for some ``n``."""
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w[:d] * (n // d) == w:
            return w[:d]


def naive_overlap(p, q):
    """``p (x) q`` by enumerating every split ``w1 w2 = p``."""
    out = set()
    for i in range(len(p) + 1):
        w1, w2 = p[:i], p[i:]
        if q[:len(w2)] != w2:
            continue
        w3 = q[len(w2):]
        if len(w1) + len(w3) == 0:
            continue
        out.add(w1 + w2 + w3)
    return out


def _overlap_sets(a, b):
    out = set()
    for p in a:
        for q in b:
            out |= naive_overlap(p, q)
    return out


def _concat_sets(a, b):
    return {p + q for p in a for q in b}


def _power_families(v, u, min_power):
    """``(n, v^n-family, v^(x)n-family)`` for ``n >= min_power``.

    Families are pruned to prefixes of ``u``; every set expression below only
    needs a word from these families as a prefix of ``u``.
    """
    if not v:
        return
    prefixes = {u[:i] for i in range(len(u) + 1)}
    ov = {v[:0]}
    n = 0
    while True:
        n += 1
        ov = {w for w in _overlap_sets(ov, [v]) if w in prefixes}
        plain = v * n
        plain_set = {plain} if plain in prefixes else set()
        if not ov and not plain_set:
            return
        if n >= min_power:
            yield n, plain_set, ov
        if n > len(u) + 1:
            return


def _classes_in(u, v, min_power):
    """Classes whose set expression for ``v`` (some ``n >= min_power``) contains ``u``."""
    strict = _prefixes_strict(v)
    hit = set()
    for _, plain, ov in _power_families(v, u, min_power):
        fams = {
            PeriodicityClass.PER: plain,
            PeriodicityClass.SPER: _concat_sets(plain, strict),
            PeriodicityClass.QPER: ov,
            PeriodicityClass.PSPER: _overlap_sets(plain, strict),
            PeriodicityClass.SQPER: _concat_sets(ov, strict),
            PeriodicityClass.QQPER: _overlap_sets(ov, strict),
        }
        hit |= {c for c, fam in fams.items() if u in fam}
    return hit


def naive_memberships(w) -> dict:
    """Literal expansion: some ``v`` strictly prefixing ``w`` and ``n >= 2``."""
    if not w:
        raise ValueError("class membership undefined for empty word")
    hit = set()
    for d in range(len(w)):
        hit |= _classes_in(w, w[:d], 2)
    return {c: c in hit for c in PeriodicityClass}


def naive_class_membership(w, c: PeriodicityClass) -> bool:
    return naive_memberships(w)[c]


def naive_roots(w) -> dict:
    """Per kind, the shortest prefix ``v`` whose expression holds for some ``n >= 1``."""
    if not w:
        raise ValueError("root undefined for empty word")
    out = {}
    for d in range(1, len(w) + 1):
        for c in _classes_in(w, w[:d], 1):
            out.setdefault(c.kind, w[:d])
        if len(out) == len(RootKind):
            return out
    raise AssertionError("w itself always qualifies")


def naive_generalized_root(w, kind: RootKind):
    return naive_roots(w)[kind]


def naive_k_root_count(w) -> int:
    return len(set(naive_roots(w).values()))


def enumerate_words(alphabet: Alphabet = BINARY, maxlen: int = 0, order: str = "shortlex"):
    """Yield all words up to ``maxlen`` in shortlex order."""
    if order != "shortlex":
        raise ValueError(f"unsupported order {order!r}")
    syms = alphabet.symbols
    as_str = not alphabet.multichar
    for n in range(maxlen + 1):
        for t in product(syms, repeat=n):
            yield "".join(t) if as_str else t


def naive_pow(L, H, maxlen=None):
    """``{p^k : p in L, k in H}``, optionally truncated to length ``maxlen``."""
    out = set()
    for p in L:
        for k in H:
            w = p * k
            if maxlen is None or len(w) <= maxlen:
                out.add(w)
    return out


def naive_is_code(C, maxlen: int) -> bool:
    """Search all products of ``C`` up to ``maxlen`` for a doubly factorized word."""
    words = list(C)
    counts = {}

    def count(w):
        if not w:
            return 1
        if w not in counts:
            counts[w] = sum(count(w[len(c):]) for c in words if w[:len(c)] == c)
        return counts[w]

    frontier = set(words)
    seen = set(frontier)
    while frontier:
        nxt = set()
        for w in frontier:
            if count(w) > 1:
                return False
            for c in words:
                x = w + c
                if len(x) <= maxlen and x not in seen:
                    seen.add(x)
                    nxt.add(x)
        frontier = nxt
    return True


def naive_language_roots(accepts, alphabet: Alphabet = BINARY, maxlen: int = 0):
    """Roots of all nonempty words of length ``<= maxlen`` accepted by ``accepts``."""
    return {naive_root(w) for w in enumerate_words(alphabet, maxlen) if w and accepts(w)}


def _factor_count(w, words, k):
    """Does ``w`` split into exactly ``k`` words of ``words``?"""
    if k == 0:
        return len(w) == 0
    return any(w[:len(c)] == c and _factor_count(w[len(c):], words, k - 1) for c in words)


def naive_is_intercode_for(C, m) -> bool:
    """No word of ``C^(m+1)`` has a factor in ``C^m`` strictly inside it."""
    words = list(C)
    left = {words[0][:0]}
    for _ in range(m + 1):
        left = {x + c for x in left for c in words}
    for x in left:
        n = len(x)
        for i in range(1, n):
            for j in range(i + 1, n):
                if _factor_count(x[i:j], words, m):
                    return False
    return True
