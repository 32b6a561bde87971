import os
import random
from itertools import product
from pathlib import Path

import pytest

from wordroots import automata as fa
from wordroots import oracle
from wordroots.words import BINARY

DATA_DIR = Path(__file__).resolve().parent.parent / "demos" / "data"


def binary_words(maxlen, minlen=1):
    for n in range(minlen, maxlen + 1):
        for t in product("ab", repeat=n):
            yield "".join(t)


def random_word(rng, lo, hi, syms="ab"):
    return "".join(rng.choice(syms) for _ in range(rng.randint(lo, hi)))


def random_dfa(rng, n_states, alphabet=BINARY, p_accept=0.4):
    states = range(n_states)
    delta = {(q, a): rng.randrange(n_states) for q in states for a in alphabet}
    accepting = {q for q in states if rng.random() < p_accept}
    return fa.Dfa(states, alphabet, delta, 0, accepting)


def random_nfa(rng, n_states, alphabet=BINARY, density=0.3, p_eps=0.1):
    delta = {}
    for q in range(n_states):
        for a in list(alphabet) + [None]:
            p = p_eps if a is None else density
            ts = {t for t in range(n_states) if rng.random() < p}
            if ts:
                delta[(q, a)] = ts
    starts = {0} | {q for q in range(n_states) if rng.random() < 0.15}
    accepting = {q for q in range(n_states) if rng.random() < 0.35}
    return fa.Nfa(range(n_states), alphabet, delta, starts, accepting)


PROFILE_ORACLE_MAXLEN = 14


@pytest.fixture(scope="session")
def oracle_profiles():
    """Brute-force roots and memberships of every binary word up to length 14.

    Takes a few minutes; shared by every test that needs it.
    """
    return {w: (oracle.naive_roots(w), oracle.naive_memberships(w))
            for w in binary_words(PROFILE_ORACLE_MAXLEN)}


@pytest.fixture
def rng():
    return random.Random(20261014)


def pytest_collection_modifyitems(config, items):
    if os.environ.get("WORDROOTS_LONG") == "1":
        return
    skip = pytest.mark.skip(reason="long tier: set WORDROOTS_LONG=1")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


# -- acceptance reporting --------------------------------------------------------

ACCEPTANCE = {}  # criterion id -> (title, [(check, ok, detail)])


def record(cid, title, check, ok, detail=""):
    """Register one acceptance sub-check; returns ``ok`` for use in asserts."""
    ACCEPTANCE.setdefault(cid, (title, []))[1].append((check, bool(ok), detail))
    print(f"{cid} {'PASS' if ok else 'FAIL'} {check} {detail}".rstrip())
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for cid in sorted(ACCEPTANCE, key=lambda c: int(c[1:])):
        title, checks = ACCEPTANCE[cid]
        failed = [c for c in checks if not c[1]]
        status = "FAIL" if failed else "PASS"
        tr.write_line(f"{cid:>4} {status}  {title}  ({len(checks) - len(failed)}/{len(checks)} checks)")
        for check, _, detail in failed:
            tr.write_line(f"         failed: {check} {detail}".rstrip())
