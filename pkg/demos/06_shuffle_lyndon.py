"""Shuffles, Lyndon words and the Radford basis."""

from math import factorial, prod

from qcrewrite import ShufflePoly, duval_factorize, enumerate_lyndon, from_radford, parse_poly
from qcrewrite import shuffle, to_radford
from qcrewrite.shuffle import factorization_monomial, format_factorization

ab = {"a": 0, "b": 1}

print("a ⧢ b   =", shuffle(("a",), ("b",)))
print("ab ⧢ a  =", shuffle(("a", "b"), ("a",)))
print("a ⧢ a   =", shuffle(("a",), ("a",)))

print("\nLyndon words over a < b up to length 4:")
print("  " + ", ".join("".join(w) for w in enumerate_lyndon(["a", "b"], 4)))

for word in ["bab", "aab", "abaab", "bbaba"]:
    w = tuple(word)
    print(f"factorize {word:6} -> {format_factorization(duval_factorize(w, ab))}")

# Expanding the monomial of a word's factorization gives the word times a
# factorial, plus smaller words with natural coefficients.
w = tuple("abab")
m = factorization_monomial(w, ab)
expanded = from_radford(ShufflePoly.monomial(m))
print(f"\nfactor monomial of abab: {ShufflePoly.monomial(m)}")
print(f"expanded: {expanded}")
print(f"coefficient of abab: {expanded.coeff(w)} = {prod(factorial(e) for _, e in m)}")

p = parse_poly("a b a - 2*b b + 1/3*eps")
coords = to_radford(p, ab)
print(f"\n{p}  in Lyndon coordinates:  {coords}")
print("back again:", from_radford(coords))
