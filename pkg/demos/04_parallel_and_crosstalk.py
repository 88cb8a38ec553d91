"""Parallel letters and cross-talk.

Two gates on disjoint qubits may run at once; that is a new letter lasting as
long as the slower one. A cross-talking pair gets no such letter, so neither
order of the pair can be rewritten.
"""

from qcrewrite import format_word, knuth_bendix, parse_word
from qcrewrite.hardware import generate_rules, load_spec
from qcrewrite.rewrite import orient

from _chips import chip

spec = load_spec(chip("crosstalk_demo"))
order = spec.order
for comp in spec.composites:
    members = ", ".join(f"{m}={spec.gate(m).duration}" for m in sorted(comp.members))
    print(f"parallel letter {comp.name}: members {members}, duration {comp.duration}")

print("\ngenerated rules:")
for g in generate_rules(spec):
    print("  " + orient(g, order).text(order))

system = knuth_bendix(generate_rules(spec), order, alphabet=spec.alphabet)
for text in ["b12 b58", "b58 b12", "b12 r35", "r35 b12"]:
    w = parse_word(text)
    print(f"{text:8} -> {system.nf(w)}")
print("cross-talking pairs:", [format_word(tuple(sorted(p))) for p in spec.crosstalk])
