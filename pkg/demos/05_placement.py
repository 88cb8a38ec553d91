"""Reading the initial qubit placement off a compiled word.

The logical circuit is three cnots out of logical qubit 0. The hardware only
offers cnots out of qubit 1, plus a swap of qubits 0 and 1.
"""

from qcrewrite import LogicalGate, format_word, knuth_bendix, parse_word
from qcrewrite.cli import compile_word
from qcrewrite.hardware import generate_rules, load_spec, placed_hardware_gates

from _chips import chip

spec = load_spec(chip("cnot_placement"))
system = knuth_bendix(generate_rules(spec), spec.order, alphabet=spec.alphabet)

circuit = [LogicalGate("cnot", (0, 1)), LogicalGate("cnot", (0, 2)), LogicalGate("cnot", (0, 3))]
naive = parse_word("cnot01 s01 cnot12 cnot13")
result = compile_word(naive, system, spec, circuit)

print(f"naive embedding  {format_word(naive)}  ({result.input_makespan_cycles} cycles)")
print(f"compiled         {format_word(result.normal_form)}  ({result.makespan_cycles} cycles)")
print("placement (logical -> hardware):")
for logical, hw in result.placement.mapping.items():
    print(f"  {logical} -> {hw}")

hw = placed_hardware_gates(result.placement, circuit, result.normal_form, spec)
print("hardware qubits per logical gate:", hw)
