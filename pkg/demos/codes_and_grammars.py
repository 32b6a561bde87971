"""Codes built from primitive words, and a contextual grammar for them.

    python3 demos/codes_and_grammars.py
"""

from wordroots.codes import code_witness, is_code, is_n_code
from wordroots.contextual import language_up_to, q_grammar
from wordroots.words import BINARY, commutes, is_primitive

print("Two distinct words form a code exactly when they do not commute:")
for p, q in [("ab", "ba"), ("ab", "abab"), ("aab", "ab")]:
    print(f"  {{{p}, {q}}}  commute={commutes(p, q)!s:5}  code={is_code([p, q])}")

w = code_witness(["a", "ab", "ba"])
print(f"\n{{a, ab, ba}} is not a code: {w.word} = {'.'.join(w.top)} = {'.'.join(w.bottom)}")
print(f"{{aba, b}} is a code: {is_code(['aba', 'b'])}, and a 2-code: {is_n_code(['aba', 'b'], 2)}")

g = q_grammar(BINARY)
words = language_up_to(g, "ex", 7)
print(f"\nThe grammar for primitive words, externally, up to length 7: {len(words)} words")
print("  every one primitive:", all(map(is_primitive, words)))
print("  length 4:", sorted(x for x in words if len(x) == 4))
