"""Walk through the six roots of one word and the classes they witness.

    python3 demos/roots_of_a_word.py [word]
"""

import sys

from wordroots import RootKind, overlap_concat, profile

word = sys.argv[1] if len(sys.argv) > 1 else "abaabaababaabaabab"
prof = profile(word)

print(f"word {word} (length {len(word)})")
print("\nEach root is the shortest prefix that rebuilds the word under one rule:")
rules = {
    RootKind.ROOT: "plain powers v^n",
    RootKind.SROOT: "powers followed by a prefix of v",
    RootKind.HROOT: "overlapping copies of v (a cover)",
    RootKind.SSROOT: "powers overlapped with a prefix of v",
    RootKind.SHROOT: "a cover followed by a prefix of v",
    RootKind.HHROOT: "a cover overlapped with a prefix of v",
}
for kind, rule in rules.items():
    print(f"  {kind.value:7} {prof.roots[kind]:<20} {rule}")
print(f"\n{prof.k} distinct roots, so this is a {prof.k}-root word.")

print("\nClass memberships (v a strict prefix, at least two copies):")
for c, member in prof.membership.items():
    print(f"  {c.value:6} {'yes' if member else 'no'}")

print("\nOverlap concatenation glues two words along every shared border:")
for p in ("aabaa", "ab"):
    print(f"  {p} (x) {p} = {sorted(overlap_concat(p, p), key=len)}")
