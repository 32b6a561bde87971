"""k-root words: counting distinct roots, shortlex searches, Lohmann words.

All six roots of a word are prefixes of it, so two roots are equal exactly
when their lengths are; ``k_root_count`` just counts distinct lengths.

Searches walk binary words in shortlex order (length first, then
lexicographic with ``a < b``) and only visit words starting with the first
symbol: renaming letters preserves every root length, so the shortlex-first
witness of any length starts with ``a``.  Strong searches enumerate only
periodic words ``v^n``.
"""

from __future__ import annotations

import logging
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import islice
from typing import Iterator, Optional

from .periodicity import _Scanner, ALL_KINDS
from .words import BINARY, Alphabet, Word, is_primitive, require_nonempty, smallest_period

log = logging.getLogger(__name__)


class LohmannError(ValueError):
    """Bad parameters for, or unverifiable output of, :func:`lohmann_construct`."""


@dataclass(frozen=True)
class SearchReport:
    k: int
    strong: bool
    witness: Optional[Word]
    length_bound: int
    exhausted: bool
    words_examined: int
    elapsed: float = field(compare=False, default=0.0)

    def to_record(self) -> str:
        lines = [
            f"k: {self.k}",
            f"strong: {'yes' if self.strong else 'no'}",
            f"witness: {'-' if self.witness is None else self.witness}",
            f"length_bound: {self.length_bound}",
            f"exhausted: {'yes' if self.exhausted else 'no'}",
            f"words_examined: {self.words_examined}",
            f"elapsed: {self.elapsed:.3f}",
        ]
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "strong": self.strong,
            "witness": self.witness,
            "length_bound": self.length_bound,
            "exhausted": self.exhausted,
            "words_examined": self.words_examined,
            "elapsed": self.elapsed,
        }


def k_root_count(w: Word) -> int:
    require_nonempty(w, "k_root_count")
    return len(set(_Scanner(w).shortest(ALL_KINDS, 1).values()))


def is_strong_k_root(w: Word, k: int) -> bool:
    require_nonempty(w, "is_strong_k_root")
    return not is_primitive(w) and k_root_count(w) == k


def words_of_length(n: int, alphabet: Alphabet = BINARY, first_only: bool = True) -> Iterator[str]:
    """Binary words of length ``n`` in lexicographic order.

    With ``first_only`` only words starting with the first symbol are produced.
    """
    if len(alphabet) != 2 or alphabet.multichar:
        raise ValueError("search enumeration supports binary single-character alphabets")
    a, b = alphabet.symbols
    table = str.maketrans("01", a + b)
    if n == 0:
        yield ""
        return
    free = n - 1 if first_only else n
    head = a if first_only else ""
    if free == 0:
        yield head
        return
    fmt = f"0{free}b"
    for i in range(1 << free):
        yield head + format(i, fmt).translate(table)


def periodic_words_of_length(n: int, alphabet: Alphabet = BINARY, first_only: bool = True) -> list[str]:
    """Sorted periodic binary words of length ``n``."""
    out = set()
    for d in range(1, n // 2 + 1):
        if n % d == 0:
            for v in words_of_length(d, alphabet, first_only):
                out.add(v * (n // d))
    return sorted(out)


def _block_scan(words, k: int, strong: bool):
    """Index of the first word in ``words`` with ``k`` distinct roots, else ``None``."""
    for i, w in enumerate(words):
        lengths = _Scanner(w).shortest(ALL_KINDS, 1)
        if len(set(lengths.values())) != k:
            continue
        if strong and lengths[ALL_KINDS[0]] == len(w):
            continue
        return i
    return None


def _blocks(words, size):
    it = iter(words)
    while block := list(islice(it, size)):
        yield block


def _scan_in_pool(pool, blocks, k, strong, window):
    """Yield ``(block, hit)`` in order, keeping at most ``window`` blocks in flight."""
    pending = deque()
    for block in blocks:
        pending.append((block, pool.submit(_block_scan, block, k, strong)))
        if len(pending) >= window:
            b, fut = pending.popleft()
            yield b, fut.result()
    while pending:
        b, fut = pending.popleft()
        yield b, fut.result()


def smallest_k_root(
    k: int,
    length_bound: int,
    strong: bool = False,
    alphabet: Alphabet = BINARY,
    min_length: int = 1,
    workers: int = 1,
    block_size: int = 1 << 14,
) -> SearchReport:
    """Shortlex-first (strong) ``k``-root word of length at most ``length_bound``.

    ``min_length`` skips shorter lengths (the report then only claims
    exhaustion from ``min_length`` on).  With ``workers > 1`` each length is
    split into blocks scanned in a process pool; blocks are merged in order so
    the witness and the count are identical to a sequential run.
    """
    if not 1 <= k <= 6:
        raise ValueError("k must be in 1..6")
    if length_bound < 1:
        raise ValueError("length_bound must be >= 1")
    started = time.perf_counter()
    examined = 0
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        for n in range(max(1, min_length), length_bound + 1):
            # streamed: a full length-30 layer would not fit in memory
            words = periodic_words_of_length(n, alphabet) if strong else words_of_length(n, alphabet)
            blocks = _blocks(words, block_size)
            if pool is None:
                results = ((b, _block_scan(b, k, strong)) for b in blocks)
            else:
                results = _scan_in_pool(pool, blocks, k, strong, 2 * workers)
            for block, hit in results:
                if hit is not None:
                    examined += hit + 1
                    return SearchReport(k, strong, block[hit], length_bound, True, examined,
                                        time.perf_counter() - started)
                examined += len(block)
            log.info("length %d done: k=%d strong=%s examined=%d", n, k, strong, examined)
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)
    return SearchReport(k, strong, None, length_bound, True, examined, time.perf_counter() - started)


def lohmann_side_conditions(w: Word, v: Word) -> dict:
    """Which readings of the ``wv`` side condition the inputs satisfy.

    ``existential``: some strict prefix ``p`` of ``w`` and ``l > 1`` have
    ``wv`` not a prefix of ``p^l`` (holds trivially via ``p`` empty).
    ``universal``: no strict prefix ``p`` of ``w`` has ``wv`` as a prefix of
    a power, i.e. the smallest period of ``wv`` is ``|w|``.
    """
    wv = w + v
    return {
        "existential": len(wv) > 0,
        "universal": smallest_period(wv) >= len(w),
    }


def lohmann_construct(w: Word, v: Word, k1: int, k2: int, k3: int) -> Word:
    """``w^k1 v w^k2 v w^k1 v w^k3 v w^(k3-k1)``, verified to have six distinct roots."""
    problems = []
    if len(v) == 0:
        problems.append("empty v: need v nonempty")
    if not (len(v) < len(w) and w[:len(v)] == v):
        problems.append("v must be a strict prefix of w")
    if not 2 <= k1:
        problems.append("2 <= k1 violated")
    if not k1 < k2:
        problems.append("k1 < k2 violated")
    if not k2 < k3:
        problems.append("k2 < k3 violated")
    if not k3 <= 2 * k1:
        problems.append("k3 <= 2*k1 violated")
    if problems:
        raise LohmannError("; ".join(problems))
    u = w * k1 + v + w * k2 + v + w * k1 + v + w * k3 + v + w * (k3 - k1)
    count = k_root_count(u)
    if count != 6:
        readings = lohmann_side_conditions(w, v)
        raise LohmannError(
            f"constructed word has {count} distinct roots, not 6 "
            f"(side-condition readings satisfied: {readings})"
        )
    return u
