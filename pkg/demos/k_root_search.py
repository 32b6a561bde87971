"""Find the shortlex-first k-root words and build a six-root word directly.

    python3 demos/k_root_search.py

The searches run in a few seconds.  A six-root word needs length 30, far out
of reach for plain enumeration, so it is built by the Lohmann construction.
"""

from wordroots import k_root_count, lohmann_construct, smallest_k_root

print("Shortlex-first k-root words (length first, then a < b):")
for k, bound in [(1, 1), (2, 3), (3, 5), (4, 10), (5, 18)]:
    rep = smallest_k_root(k, bound)
    print(f"  k={k}  {rep.witness:<20} after {rep.words_examined} words")

print("\nStrong variants (the word must also be a proper power):")
for k, bound in [(1, 2), (2, 10), (3, 16)]:
    rep = smallest_k_root(k, bound, strong=True)
    print(f"  k={k}  {rep.witness}")

rep = smallest_k_root(5, 16, strong=True)
print(f"  k=5  nothing up to length 16 ({rep.words_examined} periodic words checked)")

w = lohmann_construct("ab", "a", 2, 3, 4)
print(f"\nLohmann word from w=ab, v=a, exponents 2,3,4:\n  {w}")
print(f"  length {len(w)}, {k_root_count(w)} distinct roots")

try:
    lohmann_construct("aba", "ab", 2, 3, 4)
except ValueError as exc:
    print(f"\nNot every (w, v) works, and the constructor says so:\n  {exc}")
