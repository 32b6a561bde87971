"""Generalized periodicity: overlap concatenation, six periodicity classes, six roots.

For a candidate prefix ``v = u[:d]`` every class reduces to a statement about
the Z-array of ``u`` (where copies of ``v`` occur) and the border lengths of
``u`` (which proper prefixes of ``v`` can close the word at its right end):

* ``u = v^n``                 -- ``d`` is a period of ``u`` and divides ``|u|``
* ``u in v^n Pr(v)``          -- ``d`` is a period of ``u``
* ``u in v^(x)n``             -- copies of ``v`` chain from 0 to ``|u|-d``
  with gaps of at most ``d`` (``v`` covers ``u``)
* ``u in {v^n} (x) Pr(v)``    -- ``u`` starts with ``v^n``, ``n = |u| // d``,
  and a border of ``u`` shorter than ``d`` reaches back into ``v^n``
* ``u in v^(x)n Pr(v)``       -- a covered prefix is followed directly by a
  proper prefix of ``v``
* ``u in v^(x)n (x) Pr(v)``   -- as above but the closing prefix may overlap

Class membership uses ``n >= 2`` with ``v`` a strict prefix; the root
functions take the shortest ``v`` for any ``n >= 1``, so ``u`` itself is
always a candidate.  ``Pr(v)`` contains ``eps``, and ``{v^n} (x) eps`` is
``{v^n}``, so the overlap classes contain ``Per`` by the literal set reading.
``naive_*`` functions in :mod:`wordroots.oracle` expand
the set expressions literally and are used to check all of this.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

from .words import Word, borders, require_nonempty, root_and_degree, z_array


class PeriodicityClass(enum.Enum):
    PER = "Per"
    SPER = "SPer"
    QPER = "QPer"
    PSPER = "PSPer"
    SQPER = "SQPer"
    QQPER = "QQPer"

    @property
    def kind(self) -> "RootKind":
        return _CLASS_TO_KIND[self]

    @property
    def complement_name(self) -> str:
        return _COMPLEMENTS[self]


class RootKind(enum.Enum):
    ROOT = "root"
    SROOT = "sroot"
    HROOT = "hroot"
    SSROOT = "ssroot"
    SHROOT = "shroot"
    HHROOT = "hhroot"

    @property
    def periodicity_class(self) -> PeriodicityClass:
        return _KIND_TO_CLASS[self]


_CLASS_TO_KIND = {
    PeriodicityClass.PER: RootKind.ROOT,
    PeriodicityClass.SPER: RootKind.SROOT,
    PeriodicityClass.QPER: RootKind.HROOT,
    PeriodicityClass.PSPER: RootKind.SSROOT,
    PeriodicityClass.SQPER: RootKind.SHROOT,
    PeriodicityClass.QQPER: RootKind.HHROOT,
}
_KIND_TO_CLASS = {k: c for c, k in _CLASS_TO_KIND.items()}
_COMPLEMENTS = {
    PeriodicityClass.PER: "Q",
    PeriodicityClass.SPER: "SQ",
    PeriodicityClass.QPER: "HQ",
    PeriodicityClass.PSPER: "SSQ",
    PeriodicityClass.SQPER: "SHQ",
    PeriodicityClass.QQPER: "HHQ",
}

ALL_KINDS = tuple(RootKind)
ALL_CLASSES = tuple(PeriodicityClass)

# Universally valid prefix relations between root functions: (shorter, longer).
ROOT_ORDER = (
    (RootKind.HHROOT, RootKind.SHROOT),
    (RootKind.HHROOT, RootKind.SSROOT),
    (RootKind.SHROOT, RootKind.HROOT),
    (RootKind.SHROOT, RootKind.SROOT),
    (RootKind.SSROOT, RootKind.SROOT),
    (RootKind.HROOT, RootKind.ROOT),
    (RootKind.SROOT, RootKind.ROOT),
)

# Class inclusions: (subset, superset).
CLASS_INCLUSIONS = (
    (PeriodicityClass.PER, PeriodicityClass.SPER),
    (PeriodicityClass.SPER, PeriodicityClass.QPER),
    (PeriodicityClass.SPER, PeriodicityClass.PSPER),
    (PeriodicityClass.QPER, PeriodicityClass.SQPER),
    (PeriodicityClass.SQPER, PeriodicityClass.QQPER),
    (PeriodicityClass.PSPER, PeriodicityClass.QQPER),
)


def overlap_concat(p: Word, q: Word) -> frozenset:
    """All ``w1 w2 w3`` with ``w1 w2 = p``, ``w2 w3 = q`` and ``w1 w3`` nonempty."""
    lp, lq = len(p), len(q)
    out = set()
    for k in range(min(lp, lq) + 1):
        if k == lp == lq:
            continue
        if p[lp - k:] == q[:k]:
            out.add(p + q[k:])
    return frozenset(out)


def overlap_sets(a, b) -> frozenset:
    out = set()
    for p in a:
        for q in b:
            out |= overlap_concat(p, q)
    return frozenset(out)


def overlap_power(p: Word, k: int) -> frozenset:
    if k < 0:
        raise ValueError("overlap power needs k >= 0")
    current = frozenset([p[:0]])
    for _ in range(k):
        current = overlap_sets(current, (p,))
    return current


class _Scanner:
    """Precomputed Z-array and border lookup for one word."""

    __slots__ = ("u", "n", "z", "nb", "period")

    def __init__(self, u: Word):
        n = len(u)
        self.u = u
        self.n = n
        self.z = z_array(u)
        bl = borders(u)
        self.period = n - bl[0]
        # nb[r]: smallest border length >= r (n + 1 if none)
        nb = [n + 1] * (n + 2)
        for b in bl:
            nb[b] = b
        for r in range(n - 1, -1, -1):
            if nb[r + 1] < nb[r]:
                nb[r] = nb[r + 1]
        self.nb = nb

    def chain(self, d: int) -> list[int]:
        """Occurrences of ``u[:d]`` reachable from position 0 with gaps <= d."""
        z, n = self.z, self.n
        reach = [0]
        last = 0
        for p in range(1, n - d + 1):
            if p - last > d:
                break
            if z[p] >= d:
                reach.append(p)
                last = p
        return reach

    def per(self, d: int, mp: int) -> bool:
        n = self.n
        return n % d == 0 and n // d >= mp and (d == n or self.z[d] >= n - d)

    def sper(self, d: int, mp: int) -> bool:
        n = self.n
        return n // d >= mp and (d == n or self.z[d] >= n - d)

    def psper(self, d: int, mp: int) -> bool:
        n = self.n
        k = n // d
        if k < mp:
            return False
        if k > 1 and self.z[d] < (k - 1) * d:
            return False
        return self.nb[n - k * d] < d

    def qper(self, d: int, mp: int, reach: list[int]) -> bool:
        return reach[-1] == self.n - d and len(reach) >= mp

    def sqper(self, d: int, mp: int, reach: list[int]) -> bool:
        n, z = self.n, self.z
        lo = 1 if mp >= 2 else 0
        for p in reversed(reach):
            if p < lo or p + 2 * d <= n:
                break
            end = p + d
            if end == n or z[end] >= n - end:
                return True
        return False

    def qqper(self, d: int, mp: int, reach: list[int]) -> bool:
        p = reach[-1]
        if mp >= 2 and p == 0:
            return False
        return self.nb[self.n - p - d] < d

    def shortest(self, kinds, mp: int) -> dict:
        """Smallest witness length per kind (``None`` if no candidate works)."""
        n = self.n
        found = {}
        todo = set(kinds)
        # Per and SPer are settled by the smallest period alone.
        p0 = self.period
        if RootKind.ROOT in todo:
            todo.discard(RootKind.ROOT)
            if n % p0 == 0 and n // p0 >= mp:
                found[RootKind.ROOT] = p0
            else:
                found[RootKind.ROOT] = n if mp == 1 else None
        if RootKind.SROOT in todo:
            todo.discard(RootKind.SROOT)
            found[RootKind.SROOT] = p0 if n // p0 >= mp else None
        last_d = n if mp == 1 else n - 1
        chained = {RootKind.HROOT, RootKind.SHROOT, RootKind.HHROOT}
        for d in range(1, last_d + 1):
            if not todo:
                break
            if RootKind.SSROOT in todo and self.psper(d, mp):
                found[RootKind.SSROOT] = d
                todo.discard(RootKind.SSROOT)
            if not todo & chained:
                continue
            reach = self.chain(d)
            if RootKind.HROOT in todo and self.qper(d, mp, reach):
                found[RootKind.HROOT] = d
                todo.discard(RootKind.HROOT)
            if RootKind.SHROOT in todo and self.sqper(d, mp, reach):
                found[RootKind.SHROOT] = d
                todo.discard(RootKind.SHROOT)
            if RootKind.HHROOT in todo and self.qqper(d, mp, reach):
                found[RootKind.HHROOT] = d
                todo.discard(RootKind.HHROOT)
        for k in todo:
            found[k] = None
        return found


def _check_power(min_power: int) -> None:
    if min_power not in (1, 2):
        raise ValueError("min_power must be 1 (root functions) or 2 (class membership)")


def class_membership(w: Word, c: PeriodicityClass) -> bool:
    """True iff ``w`` lies in class ``c`` (some strict prefix ``v``, ``n >= 2``)."""
    require_nonempty(w, "class membership")
    return _Scanner(w).shortest((c.kind,), 2)[c.kind] is not None


def memberships(w: Word) -> dict:
    require_nonempty(w, "class membership")
    found = _Scanner(w).shortest(ALL_KINDS, 2)
    return {k.periodicity_class: found[k] is not None for k in ALL_KINDS}


def generalized_root(w: Word, kind: RootKind, min_power: int = 1) -> Word:
    """Shortest ``v`` with ``w`` in the kind's set expression for some ``n >= min_power``.

    With the default ``min_power=1`` this is the root function proper.  With
    ``min_power=2`` only strict prefixes qualify and ``w`` itself is returned
    when none does, so the result differs from ``w`` exactly when ``w`` belongs
    to the corresponding periodicity class.
    """
    require_nonempty(w, "generalized root")
    _check_power(min_power)
    d = _Scanner(w).shortest((kind,), min_power)[kind]
    return w if d is None else w[:d]


def root_lengths(w: Word) -> dict:
    """Lengths of the six roots of ``w`` keyed by :class:`RootKind`."""
    require_nonempty(w, "generalized root")
    return _Scanner(w).shortest(ALL_KINDS, 1)


def all_roots(w: Word) -> dict:
    return {k: w[:d] for k, d in root_lengths(w).items()}


def sper_fast(w: Word) -> bool:
    """SPer test via the longest border: nonempty and at least half the length."""
    require_nonempty(w, "sper_fast")
    b = borders(w)[0]
    return b > 0 and 2 * b >= len(w)


@dataclass(frozen=True)
class PeriodicityProfile:
    word: Word
    membership: dict = field(compare=True)
    roots: dict = field(compare=True)
    degree: int
    k: int

    def to_record(self, fmt=str) -> str:
        """Line-oriented ``key: value`` form; :meth:`from_record` inverts it."""
        lines = [f"word: {fmt(self.word)}"]
        for c in ALL_CLASSES:
            lines.append(f"{c.value}: {'yes' if self.membership[c] else 'no'}")
        for kind in ALL_KINDS:
            lines.append(f"{kind.value}: {fmt(self.roots[kind])}")
        lines.append(f"degree: {self.degree}")
        lines.append(f"k: {self.k}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_record(cls, text: str, parse=str) -> "PeriodicityProfile":
        fields = {}
        for line in text.splitlines():
            if not line.strip():
                continue
            key, _, value = line.partition(":")
            fields[key.strip()] = value.strip()
        return cls(
            word=parse(fields["word"]),
            membership={c: fields[c.value] == "yes" for c in ALL_CLASSES},
            roots={k: parse(fields[k.value]) for k in ALL_KINDS},
            degree=int(fields["degree"]),
            k=int(fields["k"]),
        )

    def to_dict(self, fmt=str) -> dict:
        return {
            "word": fmt(self.word),
            "membership": {c.value: self.membership[c] for c in ALL_CLASSES},
            "roots": {k.value: fmt(self.roots[k]) for k in ALL_KINDS},
            "degree": self.degree,
            "k": self.k,
        }

    def to_json(self, fmt=str) -> str:
        return json.dumps(self.to_dict(fmt), indent=2)


def profile(w: Word) -> PeriodicityProfile:
    require_nonempty(w, "profile")
    scanner = _Scanner(w)
    lengths = scanner.shortest(ALL_KINDS, 1)
    member = scanner.shortest(ALL_KINDS, 2)
    roots = {k: w[:d] for k, d in lengths.items()}
    return PeriodicityProfile(
        word=w,
        membership={k.periodicity_class: member[k] is not None for k in ALL_KINDS},
        roots=roots,
        degree=root_and_degree(w).degree,
        k=len(set(lengths.values())),
    )
