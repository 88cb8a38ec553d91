"""Completion over the shuffle algebra, next to Knuth-Bendix.

Both routes start from (s23 s12)^3 = 1 and s12 s12 = 1. Concatenation
completion finds s23 s12 s23 s12 s23 -> s12 in one step. In Lyndon
coordinates the two generators have coprime leading monomials, so Buchberger
has nothing to add and extraction returns the inputs.
"""

from qcrewrite import extract_rules, knuth_bendix, parse_poly, shuffle_buchberger, to_radford
from qcrewrite.hardware import load_spec
from qcrewrite.shuffle import reduce_shuffle

from _chips import chip

order = load_spec(chip("rigetti_swaps")).order
gens = [parse_poly("s23 s12 s23 s12 s23 s12 - eps"), parse_poly("s12 s12 - eps")]

kb = knuth_bendix(gens, order)
print("Knuth-Bendix:")
for r in kb.rules:
    print("  " + r.text(order))

images = [to_radford(g, order.rank) for g in gens]
print("\nLyndon coordinates of the generators:")
for g in images:
    print("  " + g.text(order))
basis = shuffle_buchberger(images, order)
print(f"\nGroebner basis over Q[L] ({len(basis.basis)} elements, complete={basis.complete})")
print("extracted rules:")
for r in extract_rules(basis, order):
    print("  " + r.text(order))

target = to_radford(parse_poly("s23 s12 s23 s12 s23 - s12"), order.rank)
rem = reduce_shuffle(target, basis.basis, order)
print(f"\ns23 s12 s23 s12 s23 - s12 in the shuffle ideal? {not rem}")
