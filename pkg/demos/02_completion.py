"""Knuth-Bendix completion of the swap relations.

Three facts about two adjacent swaps are given: each one undoes itself, and
alternating them six times is the identity. Completion turns these into a
confluent system, in which the braid rule appears.
"""

from qcrewrite import check_confluence, critical_pairs, knuth_bendix, parse_poly, s_polynomial
from qcrewrite.hardware import generate_rules, load_spec
from qcrewrite.rewrite import RewritingSystem, orient

from _chips import chip

spec = load_spec(chip("rigetti_swaps"))
order = spec.order
seeds = generate_rules(spec)

seed_system = RewritingSystem(tuple(orient(g, order, i) for i, g in enumerate(seeds)), order)
print("seed rules:")
for r in seed_system.rules:
    print("  " + r.text(order))

ok, bad = check_confluence(seed_system)
print(f"\nseed rules confluent? {ok}")
for sp, residue in bad[:3]:
    print(f"  {' '.join(sp.word)} splits; residue {residue}")

# The overlap of s12 s12 with the cycle on one s12.
cycle, inv = seed_system.rules[0], seed_system.rules[1]
(sp,) = critical_pairs(inv, cycle)
print(f"\noverlap word {' '.join(sp.word)}")
print(f"S-polynomial {s_polynomial(sp)}")

system = knuth_bendix(seeds, order, alphabet=spec.alphabet)
print("\nrules found along the way:")
for r in system.history:
    print("  " + r.text(order))
print("\ncompleted system:")
for r in system.rules:
    print(f"  [{r.id}] {r.text(order)}")
print(f"complete={system.complete} capped={system.capped}")

for text in ["s23 s12 s23 s12 s23", "s23 s12 s23 s12", "s12 s23 s12"]:
    print(f"NF({text}) = {system.nf(parse_poly(text))}")
