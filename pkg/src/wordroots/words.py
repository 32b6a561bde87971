"""Words over a finite alphabet: primitivity, roots, conjugates, borders.

A word is any immutable sequence of symbols that supports slicing and
concatenation.  Plain ``str`` is the usual choice; tuples are used when the
alphabet has multi-character symbols (see :class:`Alphabet`).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from pathlib import Path
from typing import NamedTuple, Sequence, Union

Word = Union[str, tuple]


class EmptyWordError(ValueError):
    """Raised by operations that are only defined on nonempty words."""


def require_nonempty(w: Word, what: str = "operation") -> None:
    if len(w) == 0:
        raise EmptyWordError(f"{what} undefined for empty word")


@dataclass(frozen=True)
class Alphabet:
    """An ordered finite set of symbols.

    The order is used for shortlex enumeration; the first symbol is the
    smallest.
    """

    symbols: tuple

    def __post_init__(self):
        syms = tuple(self.symbols)
        object.__setattr__(self, "symbols", syms)
        if not syms:
            raise ValueError("alphabet must contain at least one symbol")
        if len(set(syms)) != len(syms):
            raise ValueError(f"duplicate symbols in alphabet {syms!r}")
        for s in syms:
            if not isinstance(s, str) or not s or any(c.isspace() for c in s):
                raise ValueError(f"invalid symbol {s!r}")

    @classmethod
    def from_string(cls, text: str) -> "Alphabet":
        """``"ab"`` -> {a, b};  ``"x1 x2"`` -> {x1, x2}."""
        parts = text.split()
        if len(parts) == 1:
            return cls(tuple(parts[0]))
        return cls(tuple(parts))

    @classmethod
    def from_file(cls, path) -> "Alphabet":
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        return cls(tuple(line.strip() for line in lines if line.strip()))

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, symbol):
        return symbol in self.symbols

    @property
    def multichar(self) -> bool:
        return any(len(s) > 1 for s in self.symbols)

    def index(self, symbol) -> int:
        return self.symbols.index(symbol)

    def empty(self) -> Word:
        return () if self.multichar else ""

    def validate(self, w: Word) -> Word:
        for s in w:
            if s not in self.symbols:
                raise ValueError(f"symbol {s!r} not in alphabet {self.symbols!r}")
        return w

    def parse(self, text: str) -> Word:
        """Parse the textual form of a word.

        Single-character alphabets read ``"abba"`` symbol by symbol;
        multi-character alphabets use the space-separated form ``"x1 x2"``.
        """
        if self.multichar:
            return self.validate(tuple(text.split()))
        return self.validate("".join(text.split()))

    def format(self, w: Word) -> str:
        if isinstance(w, str):
            return w
        return " ".join(w) if self.multichar else "".join(w)


BINARY = Alphabet(("a", "b"))


class RootResult(NamedTuple):
    root: Word
    degree: int


def border_array(w: Word) -> list[int]:
    """Entry ``i`` is the length of the longest proper border of ``w[:i+1]``."""
    n = len(w)
    b = [0] * n
    k = 0
    for i in range(1, n):
        while k and w[i] != w[k]:
            k = b[k - 1]
        if w[i] == w[k]:
            k += 1
        b[i] = k
    return b


def z_array(w: Word) -> list[int]:
    """``z[i]`` is the length of the longest common prefix of ``w`` and ``w[i:]``.

    ``z[0]`` is ``len(w)`` by convention.
    """
    n = len(w)
    z = [0] * n
    if n == 0:
        return z
    z[0] = n
    lo = hi = 0
    for i in range(1, n):
        if i < hi:
            z[i] = min(hi - i, z[i - lo])
        while i + z[i] < n and w[z[i]] == w[i + z[i]]:
            z[i] += 1
        if i + z[i] > hi:
            lo, hi = i, i + z[i]
    return z


def borders(w: Word) -> list[int]:
    """Lengths of all proper borders of ``w`` in decreasing order, ``0`` last."""
    if not w:
        return [0]
    b = border_array(w)
    out = []
    k = b[-1]
    while k:
        out.append(k)
        k = b[k - 1]
    out.append(0)
    return out


def smallest_period(w: Word) -> int:
    require_nonempty(w, "period")
    return len(w) - border_array(w)[-1]


def is_primitive(w: Word) -> bool:
    """True iff ``w`` is not ``v**n`` for any word ``v`` and ``n >= 2``."""
    require_nonempty(w, "primitivity")
    n = len(w)
    p = n - border_array(w)[-1]
    return p == n or n % p != 0


def root_and_degree(w: Word) -> RootResult:
    require_nonempty(w, "root")
    n = len(w)
    p = n - border_array(w)[-1]
    if n % p:
        return RootResult(w, 1)
    return RootResult(w[:p], n // p)


def root(w: Word) -> Word:
    return root_and_degree(w).root


def degree(w: Word) -> int:
    return root_and_degree(w).degree


def commutes(p: Word, q: Word) -> bool:
    return p + q == q + p


def conjugate(w: Word, i: int) -> Word:
    """Cyclic rotation moving the first ``i`` symbols to the end."""
    if not 0 <= i <= len(w):
        raise ValueError(f"offset {i} out of range 0..{len(w)}")
    return w[i:] + w[:i]


def _power_prefix(p: Word, length: int) -> Word:
    reps = -(-length // len(p)) if length else 0
    return (p * reps)[:length]


def fine_wilf_check(p: Word, q: Word, prefix_len: int) -> bool:
    """True iff some powers of ``p`` and ``q`` share a common prefix of ``prefix_len``.

    If ``prefix_len >= len(p) + len(q) - gcd(len(p), len(q))`` and this holds,
    then ``p`` and ``q`` have the same root.
    """
    require_nonempty(p, "fine_wilf_check")
    require_nonempty(q, "fine_wilf_check")
    return _power_prefix(p, prefix_len) == _power_prefix(q, prefix_len)


def fine_wilf_bound(p: Word, q: Word) -> int:
    return len(p) + len(q) - gcd(len(p), len(q))


def borwein_witness(w: Word, a) -> bool:
    """Evaluate the implication  (w, wa both nonprimitive)  =>  w in a+ ."""
    require_nonempty(w, "borwein_witness")
    wa = w + (a if isinstance(w, str) else (a,))
    if is_primitive(w) or is_primitive(wa):
        return True
    return all(s == a for s in w)


def shortlex_key(w: Sequence, alphabet: Alphabet = BINARY):
    return (len(w), tuple(alphabet.index(s) for s in w))
