"""Compiling a gate word: its normal form is the cheapest equivalent circuit."""

from qcrewrite import format_word, knuth_bendix, parse_word
from qcrewrite.cli import compile_word
from qcrewrite.hardware import generate_rules, load_spec

from _chips import chip

spec = load_spec(chip("rigetti_fragment"))
system = knuth_bendix(generate_rules(spec), spec.order, alphabet=spec.alphabet)

w1 = parse_word("s14 s12 s23 s12 r23")
result = compile_word(w1, system, spec)
print(f"input   {format_word(w1)}  ({result.input_makespan_cycles} cycles)")
for step in result.trace:
    rule = system.rule(step.rule)
    print(f"  rewrite {' '.join(rule.lhs)} at position {step.position} of {format_word(step.word)}")
print(f"output  {format_word(result.normal_form)}  ({result.makespan_cycles} cycles)")

# With parallel swaps the two words below describe the same operation.
spec = load_spec(chip("rigetti_parallel"))
system = knuth_bendix(generate_rules(spec), spec.order, alphabet=spec.alphabet)
print(f"\nparallel letters: {[c.name for c in spec.composites]}, {len(system.rules)} rules")
for text in ["s14;23 s12 s14;23 r23 b12", "b12 s14;23 s12 r23"]:
    r = compile_word(parse_word(text), system, spec)
    print(f"{text:28} {str(r.input_makespan_cycles):>3} cycles -> {format_word(r.normal_form)} "
          f"{r.makespan_cycles} cycles")
