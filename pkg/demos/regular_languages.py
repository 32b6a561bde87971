"""Roots, powers and squares of regular languages.

    python3 demos/regular_languages.py
"""

from pathlib import Path

from wordroots import automata as fa
from wordroots.automata import Dfa
from wordroots.languages import pow_finite_H, root_finite, square_classification
from wordroots.words import BINARY

DATA = Path(__file__).resolve().parent / "data"
langs = {
    "(ab)*": fa.power_word_dfa("ab", BINARY),
    "a b*": fa.parse_automaton((DATA / "a_bstar.dfa").read_text()),
    "{a,b}*": Dfa.universal(BINARY),
}

print("Does the language have finitely many primitive roots?")
for name, d in langs.items():
    roots = root_finite(d)
    print(f"  {name:7} {'yes: ' + str(sorted(roots)) if roots is not None else 'no'}")

print("\nWith finitely many roots, the powers for a finite exponent set stay regular.")
sq = pow_finite_H(langs["(ab)*"], {2, 3})
print(f"  pow_{{2,3}}((ab)*) up to length 12: {sorted(fa.enumerate_language(sq, 12), key=len)}")

print("\nThe set of squares of each language:")
for name, d in langs.items():
    res = square_classification(d)
    print(f"  {name:7} {res.verdict.value}")
    if isinstance(res.evidence, tuple):
        for comp in res.evidence:
            print(f"           covered by {comp}")
