import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wordroots import oracle
from wordroots.codes import (
    CodeWitness,
    EmptyWordInCode,
    code_witness,
    intercode_index,
    is_code,
    is_intercode_for,
    is_n_code,
    parse_word_list,
    sum_words,
)
from wordroots.words import Alphabet, commutes, is_primitive

from conftest import binary_words, random_word

word_sets = st.sets(st.text("ab", min_size=1, max_size=5), min_size=1, max_size=4)


class TestExamples:
    def test_aba_b(self):
        assert is_code(["aba", "b"])
        assert is_n_code(["aba", "b"], 2)

    def test_two_code_with_periodic_product(self):
        # primitive pairwise products are sufficient for a 2-code, not necessary
        assert is_n_code(["aba", "b"], 2)
        assert not is_primitive("aba" + "b")

    def test_witness(self):
        w = code_witness(["a", "ab", "ba"])
        assert isinstance(w, CodeWitness)
        assert w.word == "aba"
        assert {w.top, w.bottom} == {("a", "ba"), ("ab", "a")}

    def test_empty_word(self):
        with pytest.raises(EmptyWordInCode):
            is_code(["a", ""])

    def test_bad_candidates(self):
        with pytest.raises(ValueError):
            is_code([])
        with pytest.raises(ValueError):
            is_code(["a", "a"])
        with pytest.raises(ValueError):
            is_n_code(["a"], 0)

    def test_intercode(self):
        assert is_intercode_for(["ab"], 1)
        assert not is_intercode_for(["aa"], 1)
        assert intercode_index(["ab"]) == 1
        assert intercode_index(["aa"]) is None
        with pytest.raises(ValueError):
            is_intercode_for(["ab"], 5)
        with pytest.raises(ValueError):
            is_intercode_for(["ab"], 0)

    def test_parse_word_list(self):
        assert parse_word_list("aba\n# note\nb\n\n") == ["aba", "b"]
        assert parse_word_list("-\na\n") == ["", "a"]
        assert parse_word_list("x y\ny\n", Alphabet.from_string("x y")) == ["xy", "y"]
        alpha = Alphabet.from_string("x1 x2")
        assert parse_word_list("x1 x2\nx2\n", alpha) == [("x1", "x2"), ("x2",)]

    def test_multichar_witness(self):
        w = code_witness([("x",), ("x", "y"), ("y", "x")])
        assert w.word == ("x", "y", "x")


class TestProperties:
    def test_two_words_code_iff_noncommuting_12(self):
        for n in range(2, 13):
            for pq in binary_words(n, n):
                for i in range(1, n):
                    p, q = pq[:i], pq[i:]
                    if p == q:
                        continue
                    assert is_code([p, q]) == (not commutes(p, q)), (p, q)

    def test_primitive_products_give_2_codes(self, rng):
        checked = 0
        while checked < 1500:
            C = list({random_word(rng, 1, 4) for _ in range(rng.randint(2, 5))})
            if len(C) < 2:
                continue
            if all(is_primitive(p + q) for p in C for q in C if p != q):
                checked += 1
                assert is_n_code(C, 2), C

    def test_intercodes_consist_of_primitive_words(self, rng):
        hits = 0
        for _ in range(1500):
            C = list({random_word(rng, 1, 4) for _ in range(rng.randint(1, 3))})
            for m in (1, 2, 3):
                if is_intercode_for(C, m):
                    hits += 1
                    assert all(is_primitive(c) for c in C), C
                    break
        assert hits > 50

    def test_witness_is_valid(self, rng):
        for _ in range(2000):
            C = list({random_word(rng, 1, 4) for _ in range(rng.randint(2, 4))})
            w = code_witness(C)
            if w is None:
                continue
            assert w.top != w.bottom
            assert sum_words(w.top) == w.word == sum_words(w.bottom)
            assert all(x in C for x in w.top + w.bottom)

    @settings(max_examples=300, deadline=None)
    @given(word_sets)
    def test_code_matches_oracle(self, C):
        C = sorted(C)
        w = code_witness(C)
        if w is None:
            assert oracle.naive_is_code(C, 14)
        else:
            assert not oracle.naive_is_code(C, len(w.word))

    @settings(max_examples=150, deadline=None)
    @given(st.sets(st.text("ab", min_size=1, max_size=3), min_size=1, max_size=3),
           st.integers(1, 2))
    def test_intercode_matches_oracle(self, C, m):
        C = sorted(C)
        assert is_intercode_for(C, m) == oracle.naive_is_intercode_for(C, m)

    def test_n_code_monotone(self, rng):
        for _ in range(300):
            C = list({random_word(rng, 1, 4) for _ in range(rng.randint(1, 5))})
            flags = [is_n_code(C, n) for n in range(1, len(C) + 1)]
            assert flags == sorted(flags, reverse=True)
            assert flags[-1] == is_code(C)
