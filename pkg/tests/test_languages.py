import random

import pytest

from wordroots import automata as fa
from wordroots import oracle
from wordroots.automata import Dfa, Nfa
from wordroots.languages import (
    ExponentSet,
    FipCapExceeded,
    FipComponent,
    FipKind,
    NotFiniteRoot,
    SemilinearSet,
    SquareClass,
    Verdict,
    degree_set,
    fip_candidates,
    pow_finite_H,
    power_membership,
    root_bound,
    root_finite,
    square_classification,
)
from wordroots.words import BINARY, Alphabet, is_primitive, root

from conftest import binary_words, random_dfa, random_word

UNARY = Alphabet(("a",))


def dfa(text):
    return fa.parse_automaton(text)


def from_nfa(n):
    return fa.minimize(fa.determinize(n))


def words_dfa(words, alphabet=BINARY):
    return Dfa.from_words(words, alphabet)


def plus(p, alphabet=BINARY):
    return fa.power_word_dfa(p, alphabet, plus=True)


def star_of(p, alphabet=BINARY):
    return fa.power_word_dfa(p, alphabet)


A_BSTAR = from_nfa(fa.nfa_concat(fa.nfa_word("a", BINARY), fa.nfa_star(fa.nfa_word("b", BINARY))))
SIGMA_STAR = Dfa.universal(BINARY)
AB_STAR = star_of("ab")


def brute_roots(d, maxlen):
    return oracle.naive_language_roots(d.accepts, d.alphabet, maxlen)


class TestExponentSet:
    def test_parse(self):
        assert 5 in ExponentSet.parse("N")
        h = ExponentSet.parse("0,2,3")
        assert h.is_finite and 2 in h and 1 not in h
        assert list(h.upto(2)) == [0, 2]
        with pytest.raises(ValueError):
            ExponentSet.parse("x")
        with pytest.raises(ValueError):
            ExponentSet.finite([-1])

    def test_predicate(self):
        even = ExponentSet.decidable(lambda k: k % 2 == 0, "even")
        assert 4 in even and 3 not in even and even.has_positive()
        assert not ExponentSet.finite([0]).has_positive()


class TestPowerMembership:
    def test_examples(self):
        assert power_membership("aaa", {"a", "b"}, ExponentSet.naturals())
        assert not power_membership("ab", {"a", "b"}, ExponentSet.finite([2]))
        assert power_membership("", set(), ExponentSet.finite([0]))

    def test_empty_word_needs_eps_in_L_or_zero(self):
        h = ExponentSet.finite([2])
        assert power_membership("", {""}, h)
        assert not power_membership("", {"a"}, h)
        assert not power_membership("", {""}, ExponentSet.finite([]))

    def test_accepts_dfa_and_predicate(self):
        assert power_membership("abab", AB_STAR, ExponentSet.finite([1]))
        assert power_membership("aaaa", lambda w: w == "aa", ExponentSet.finite([2]))

    @staticmethod
    def _random_instance(rng):
        base = [random_word(rng, 1, 3) for _ in range(rng.randint(1, 3))]
        L = {b * rng.randint(1, 4) for b in base}
        L |= {random_word(rng, 0, 6) for _ in range(rng.randint(0, 4))}
        H = set(rng.sample(range(0, 11), rng.randint(0, 5)))
        return L, H

    def test_random_instances(self, rng):
        mismatches = []
        for _ in range(1000):
            L, H = self._random_instance(rng)
            u = random_word(rng, 0, 10)
            if rng.random() < 0.5 and L:
                u = rng.choice(sorted(L)) * rng.randint(0, 5)
                u = u[:10] if len(u) > 10 else u
            got = power_membership(u, L, ExponentSet.finite(H))
            want = u in oracle.naive_pow(L, H, len(u))
            if got != want:
                mismatches.append((u, L, H))
        assert mismatches == []

    def test_all_short_words(self, rng):
        for _ in range(15):
            L, H = self._random_instance(rng)
            expected = oracle.naive_pow(L, H, 10)
            hs = ExponentSet.finite(H)
            for u in ["", *binary_words(10)]:
                assert power_membership(u, L, hs) == (u in expected), (u, L, H)


class TestSemilinear:
    def test_basics(self):
        s = SemilinearSet({1}, {(2, 3)})
        assert s.upto(10) == [1, 2, 5, 8]
        assert s.scaled(2).upto(20) == [2, 4, 10, 16]
        assert SemilinearSet().is_empty()
        with pytest.raises(ValueError):
            SemilinearSet(set(), {(0, 0)})

    def test_degree_set(self):
        d = degree_set(fa.union(plus("aa"), words_dfa(["a"])), "a")
        assert d.upto(8) == [1, 2, 4, 6, 8]


class TestRootFinite:
    CORPUS = [
        ("(ab)*", AB_STAR, {"ab"}),
        ("a b*", A_BSTAR, None),
        ("{a,b}*", SIGMA_STAR, None),
        ("empty", Dfa.empty(BINARY), set()),
        ("{eps}", words_dfa([""]), set()),
        ("a* + b*", fa.union(star_of("a"), star_of("b")), {"a", "b"}),
        ("finite", words_dfa(["ab", "ba", "aa"]), {"ab", "ba", "a"}),
        ("(abab)* + b", fa.union(star_of("abab"), words_dfa(["b"])), {"ab", "b"}),
        ("(aab)+ + (ab)^3", fa.union(plus("aab"), words_dfa(["ababab"])), {"aab", "ab"}),
        ("a b* a", from_nfa(fa.nfa_concat(fa.nfa_word("a", BINARY),
                                          fa.nfa_star(fa.nfa_word("b", BINARY)),
                                          fa.nfa_word("a", BINARY))), None),
        ("(abb)* (ab)*", from_nfa(fa.nfa_concat(fa.nfa_star(fa.nfa_word("abb", BINARY)),
                                                fa.nfa_star(fa.nfa_word("ab", BINARY)))), None),
        ("(aabb)^3 + (ba)^5", words_dfa(["aabb" * 3, "ba" * 5]), {"aabb", "ba"}),
    ]

    @pytest.mark.parametrize("name,d,expected", CORPUS, ids=[c[0] for c in CORPUS])
    def test_corpus(self, name, d, expected):
        got = root_finite(d)
        if expected is None:
            assert got is None
        else:
            assert got == expected
            assert brute_roots(d, 12) <= got

    def test_unary(self):
        assert root_finite(Dfa.universal(UNARY)) == {"a"}
        assert root_finite(Dfa.empty(UNARY)) == set()
        assert root_finite(Dfa.from_words([""], UNARY)) == set()

    def test_random_dfas_against_brute_force(self, rng):
        for _ in range(400):
            d = random_dfa(rng, rng.randint(1, 4))
            n = root_bound(d)
            got = root_finite(d)
            if got is None:
                # the root set is infinite, so some word has a root longer than n
                assert any(d.accepts(w) and len(root(w)) > n for w in binary_words(3 * n)), d
                continue
            assert all(is_primitive(p) and len(p) <= n for p in got)
            # every reported root is witnessed by a power p^k with k <= n + 1
            for p in got:
                assert any(d.accepts(p * k) for k in range(1, n + 2)), (d, p)
            # and no accepted word escapes the powers of the reported roots
            cover = Dfa.from_words([""], BINARY)
            for p in got:
                cover = fa.union(cover, star_of(p))
            assert fa.includes(d, cover)
            assert brute_roots(d, 12) == got

    def test_bound_parameter(self):
        # with too small a bound the long root is not admissible
        d = words_dfa(["aab"])
        assert root_finite(d) == {"aab"}
        assert root_finite(d, bound=2) is None


class TestPowFiniteH:
    def test_examples(self):
        d = pow_finite_H(words_dfa(["a"], UNARY), [0, 1, 2])
        assert fa.enumerate_language(d, 6) == {"", "a", "aa"}
        aa_plus = fa.power_word_dfa("aa", UNARY, plus=True)
        d = pow_finite_H(aa_plus, [3])
        assert fa.equivalent(d, fa.power_word_dfa("a" * 6, UNARY, plus=True))
        d = pow_finite_H(words_dfa(["ab", "abab"]), [2])
        assert fa.enumerate_language(d, 16) == {"abab", "abababab"}

    def test_infinite_root_rejected(self):
        with pytest.raises(NotFiniteRoot):
            pow_finite_H(A_BSTAR, [2])

    def test_eps_handling(self):
        d = pow_finite_H(fa.union(words_dfa([""]), plus("ab")), [2])
        assert "" in fa.enumerate_language(d, 0)
        assert "" not in fa.enumerate_language(pow_finite_H(plus("ab"), [2]), 0)
        assert fa.is_empty(pow_finite_H(words_dfa([""]), []))

    @staticmethod
    def _random_fr(rng):
        """A random language with a finite root: unions of ``p^S`` for semilinear ``S``."""
        parts = []
        for _ in range(rng.randint(1, 3)):
            while True:
                p = random_word(rng, 1, 3)
                if is_primitive(p):
                    break
            if rng.random() < 0.5:
                ks = rng.sample(range(0, 6), rng.randint(1, 3))
                parts.append(fa.nfa_words([p * k for k in ks], BINARY))
            else:
                a = rng.randint(0, 3)
                b = rng.randint(1, 3)
                parts.append(fa.nfa_concat(fa.nfa_word(p * a, BINARY),
                                           fa.nfa_star(fa.nfa_word(p * b, BINARY))))
        return from_nfa(fa.nfa_union(*parts))

    def test_random_against_brute_force(self, rng):
        for _ in range(150):
            L = self._random_fr(rng)
            H = set(rng.sample(range(0, 5), rng.randint(1, 3)))
            got = fa.enumerate_language(pow_finite_H(L, H), 16)
            want = oracle.naive_pow(fa.enumerate_language(L, 16), H, 16)
            assert got == want, (L, H)


class TestFip:
    def test_candidate_counts(self):
        assert fip_candidates(BINARY, 1) == []
        assert len(fip_candidates(BINARY, 2)) == 14

    def test_m2_by_hand(self):
        short = ["", "a", "b"]
        expected = set()
        for p in "ab":
            for w in short:
                if w.endswith(p):
                    continue
                expected.add((FipKind.PWP, p, w, None))
                for w2 in short:
                    x = w2 + w
                    if not (x and set(x) == {p}):
                        expected.add((FipKind.WPW, p, w, w2))
        got = {(c.kind, c.p, c.w, c.w2) for c in fip_candidates(BINARY, 2)}
        assert got == expected

    def test_constraints_on_m4(self):
        for c in fip_candidates(BINARY, 4):
            assert is_primitive(c.p)
            assert not c.w.endswith(c.p)
            if c.kind is FipKind.WPW:
                x = c.w2 + c.w
                assert not (x and x == c.p * (len(x) // len(c.p)))

    def test_component_validation(self):
        with pytest.raises(ValueError):
            FipComponent(FipKind.PWP, "abab", "")
        with pytest.raises(ValueError):
            FipComponent(FipKind.PWP, "b", "ab")
        with pytest.raises(ValueError):
            FipComponent(FipKind.WPW, "ab", "", "ab")

    def test_membership_matches_automaton(self):
        rng = random.Random(3)
        cands = fip_candidates(BINARY, 3)
        for c in rng.sample(cands, 40):
            d = c.to_dfa(BINARY)
            for w in ["", *binary_words(9)]:
                assert (w in c) == d.accepts(w), (str(c), w)

    def test_str(self):
        assert str(FipComponent(FipKind.PWP, "b", "a")) == "(b)*a(b)*"
        assert str(FipComponent(FipKind.WPW, "b", "a", "")) == "a(b)*ε"


class TestSquareClassification:
    def test_examples(self):
        r = square_classification(A_BSTAR)
        assert r.verdict is Verdict.CONTEXT_FREE_NOT_REGULAR
        assert fa.includes(A_BSTAR, fa.minimize(fa.determinize(
            fa.nfa_union(*(c.to_nfa(BINARY) for c in r.evidence)))))
        assert square_classification(SIGMA_STAR).verdict is Verdict.NOT_CONTEXT_FREE
        r = square_classification(AB_STAR)
        assert r.verdict is Verdict.REGULAR and r.evidence == {"ab"}

    def test_grammar_input(self):
        g = fa.parse_grammar("S -> a B | a\nB -> b B | b\n")
        r = square_classification(g)
        assert r.verdict is Verdict.CONTEXT_FREE_NOT_REGULAR and r.m == 3

    def test_cap(self):
        with pytest.raises(FipCapExceeded):
            square_classification(SIGMA_STAR, max_m=2)

    def test_verdict_evidence_types(self):
        with pytest.raises(ValueError):
            SquareClass(Verdict.REGULAR, None)
        with pytest.raises(ValueError):
            SquareClass(Verdict.CONTEXT_FREE_NOT_REGULAR, frozenset())
        assert [v.exit_code for v in Verdict] == [0, 1, 2]

    def test_regular_iff_finite_root_and_cover_sound(self, rng):
        seen = set()
        tried = 0
        while tried < 25:
            d = fa.minimize(random_dfa(rng, rng.randint(1, 3)))
            if len(fa.dfa_to_grammar(d).nonterminals) + 1 > 4:
                continue
            tried += 1
            r = square_classification(d)
            seen.add(r.verdict)
            assert (r.verdict is Verdict.REGULAR) == (root_finite(d) is not None)
            if r.verdict is Verdict.CONTEXT_FREE_NOT_REGULAR:
                cover = fa.minimize(fa.determinize(
                    fa.nfa_union(*(c.to_nfa(BINARY) for c in r.evidence))))
                assert fa.includes(d, cover)
        assert len(seen) >= 2

    def test_infinite_root_inside_fip(self):
        # a b* + b a*: two inserted iterations cover it
        d = fa.union(A_BSTAR, from_nfa(fa.nfa_concat(fa.nfa_word("b", BINARY),
                                                     fa.nfa_star(fa.nfa_word("a", BINARY)))))
        r = square_classification(d)
        assert r.verdict is Verdict.CONTEXT_FREE_NOT_REGULAR
        assert len(r.evidence) == 2
