import copy
import itertools
import random
from fractions import Fraction

import pytest

from conftest import chip, complete
from qcrewrite.hardware import (CircuitMismatch, LogicalGate, ParseError, PlacementConflict,
                                ValidationError, generate_rules, load_spec, parse_circuit,
                                placed_hardware_gates, read_placement, spec_from_dict)
from qcrewrite.ncpoly import NCPoly
from qcrewrite.rewrite import OrientationFailure, orient
from qcrewrite.words import parse_word

F = Fraction
W = parse_word

BASE = {
    "qubits": [1, 2, 3],
    "gates": [
        {"name": "s12", "qubits": [1, 2], "duration": 2, "directed": False},
        {"name": "b23", "qubits": [2, 3], "duration": "5/2", "directed": False},
    ],
    "relations": ["s12 s12 -> eps"],
    "crosstalk": [],
    "parallel": {"policy": "off"},
}


def variant(**changes):
    d = copy.deepcopy(BASE)
    d.update(changes)
    return d


def test_rigetti_weight_row(fragment):
    w = fragment.order.weights
    assert [w[n] for n in ("s12", "b12", "r23")] == [F(1, 2), F(3, 4), F(1)]
    assert fragment.tau_max == 4


def test_ibmqx2_alphabet():
    spec = load_spec(chip("ibmqx2"))
    names = spec.alphabet.names
    assert {"cnot01", "cnot02", "cnot12", "cnot32", "cnot34", "cnot42"} <= set(names)
    assert spec.gate("cnot01").directed and spec.gate("cnot01").qubits == (0, 1)
    s = complete(spec)
    assert s.complete


def test_rational_durations():
    spec = spec_from_dict(variant())
    assert spec.gate("b23").duration == F(5, 2)


@pytest.mark.parametrize("data, path", [
    (variant(gates=[{"name": "s14", "qubits": [1, 4], "duration": 2}]), "gates[0].qubits"),
    (variant(gates=[{"name": "s12", "qubits": [1, 2], "duration": 0.5}]), "gates[0].duration"),
    (variant(gates=[{"name": "s12", "qubits": [1, 2], "duration": 0}]), "gates[0]"),
    (variant(gates=[{"name": "s12", "qubits": [1, 2], "duration": 2, "directed": "yes"}]), "gates[0].directed"),
    (variant(crosstalk=[["s12", "zz"]]), "crosstalk[0]"),
    (variant(relations=["s12 zz -> eps"]), "relations[0]"),
    (variant(relations=["s12 s12"]), "relations[0]"),
    (variant(parallel={"policy": "sometimes"}), "parallel.policy"),
    (variant(parallel={"policy": "auto", "max_group": 3}), "parallel.max_group"),
    (variant(parallel={"policy": "off", "explicit": [["s12", "b23"]]}), "parallel.explicit[0]"),
    (variant(qubits=[1, 1, 2]), "qubits"),
])
def test_validation_errors_carry_paths(data, path):
    with pytest.raises(ValidationError) as exc:
        spec_from_dict(data)
    assert exc.value.path == path


def test_parse_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    with pytest.raises(ParseError):
        load_spec(bad)


def test_misoriented_relation():
    spec = spec_from_dict(variant(relations=["s12 -> b23"]))
    with pytest.raises(OrientationFailure):
        generate_rules(spec)


def test_seed_relation_generator(swaps):
    gens = generate_rules(swaps)
    assert gens[0] == NCPoly.word(W("( s12 s23 )^3")) - NCPoly.one()


def test_parallel_composites():
    spec = load_spec(chip("crosstalk_demo"))
    (comp,) = spec.composites
    assert comp.name == "b12;58" and comp.members == {"b12", "b58"}
    assert comp.duration == max(spec.gate("b12").duration, spec.gate("b58").duration) == 3
    gens = generate_rules(spec)
    order = spec.order
    rules = {orient(g, order).text(order) for g in gens}
    assert rules == {"b12 b58 -> b12;58", "b58 b12 -> b12;58"}


def test_crosstalk_pairs_stay_irreducible():
    spec = load_spec(chip("crosstalk_demo"))
    s = complete(spec)
    for pair in spec.crosstalk:
        x, y = sorted(pair)
        assert s.is_reduced((x, y)) and s.is_reduced((y, x))
    assert s.is_reduced(W("r35 b12"))


def test_crosstalk_forbids_relations_on_the_pair():
    d = variant(relations=["b23 s12 -> s12 b23"], crosstalk=[["s12", "b23"]])
    with pytest.raises(ValidationError):
        generate_rules(spec_from_dict(d))


def test_every_generated_rule_orients(parallel, cnot, fragment):
    for spec in (parallel, cnot, fragment, load_spec(chip("ibmqx2"))):
        order = spec.order
        for g in generate_rules(spec):
            r = orient(g, order)
            assert all(order.greater(r.lhs, w) for w in r.rhs.words())


def test_composite_duration_law(parallel):
    for comp in parallel.composites:
        assert comp.duration == max(parallel.gate(n).duration for n in comp.members)
        assert comp.duration == 2 and comp.name == "s14;23"


def test_parallel_letter_ranks_below_base_gates(parallel):
    rank = parallel.order.rank
    assert rank["s14;23"] < min(rank[g.name] for g in parallel.gates)


# -- placement ------------------------------------------------------------------------

STAR = [LogicalGate("cnot", (0, 1)), LogicalGate("cnot", (0, 2)), LogicalGate("cnot", (0, 3))]


def test_cnot_placement_golden(cnot, cnot_system):
    nf = cnot_system.nf(W("cnot01 s01 cnot12 cnot13"))
    assert nf == NCPoly.word(W("cnot10 cnot12 cnot13"))
    placement = read_placement(W("cnot10 cnot12 cnot13"), STAR, cnot, logical_qubits=range(4))
    assert placement.mapping == {0: 1, 1: 0, 2: 2, 3: 3}
    assert placement.as_json() == {"0": 1, "1": 0, "2": 2, "3": 3}
    assert placement.warnings == ()


def test_identity_placement(cnot):
    circuit = [LogicalGate("cnot", (1, 2)), LogicalGate("cnot", (1, 3))]
    placement = read_placement(W("cnot12 cnot13"), circuit, cnot)
    assert placement.mapping == {1: 1, 2: 2, 3: 3}


def test_swap_moves_content(cnot):
    # After s01 hardware qubit 1 holds logical 0, so cnot12 acts on (0, 2).
    circuit = [LogicalGate("cnot", (0, 1)), LogicalGate("cnot", (0, 2))]
    placement = read_placement(W("cnot01 s01 cnot12"), circuit, cnot)
    assert placement.mapping == {0: 0, 1: 1, 2: 2}
    circuit = [LogicalGate("cnot", (0, 1)), LogicalGate("cnot", (1, 2))]
    with pytest.raises(PlacementConflict):
        read_placement(W("cnot01 s01 cnot12"), circuit, cnot)


def test_placement_conflict(cnot):
    circuit = [LogicalGate("cnot", (0, 1)), LogicalGate("cnot", (2, 3))]
    with pytest.raises(PlacementConflict):
        read_placement(W("cnot12 cnot13"), circuit, cnot)


def test_circuit_mismatch(cnot):
    with pytest.raises(CircuitMismatch):
        read_placement(W("cnot12"), STAR, cnot)
    with pytest.raises(CircuitMismatch):
        read_placement(W("cnot12 cnot13"), STAR[:1], cnot)


def test_unbound_qubit_gets_lowest_free(cnot):
    placement = read_placement(W("cnot12"), [LogicalGate("cnot", (0, 1))], cnot, logical_qubits=[0, 1, 5])
    assert placement.mapping == {0: 1, 1: 2, 5: 0}
    assert any("UnboundQubit" in w for w in placement.warnings)


def test_placement_soundness_golden(cnot):
    nf = W("cnot10 cnot12 cnot13")
    placement = read_placement(nf, STAR, cnot)
    hw = [cnot.gate(x).qubits for x in nf]
    assert placed_hardware_gates(placement, STAR, nf, cnot) == hw


def _random_chip(rng):
    qubits = list(range(4))
    gates = []
    for a, b in itertools.combinations(qubits, 2):
        gates.append({"name": f"s{a}{b}", "qubits": [a, b], "duration": 2})
        gates.append({"name": f"cx{a}{b}", "qubits": [a, b], "duration": 3, "directed": True})
        gates.append({"name": f"cx{b}{a}", "qubits": [b, a], "duration": 3, "directed": True})
    return spec_from_dict({"qubits": qubits, "gates": gates, "relations": [], "crosstalk": [],
                           "parallel": {"policy": "off"}})


def test_placement_soundness_random():
    rng = random.Random(51)
    spec = _random_chip(rng)
    letters = list(spec.gates)
    checked = 0
    for _ in range(400):
        nf = tuple(rng.choice(letters).name for _ in range(rng.randint(1, 7)))
        # Build the logical circuit by tracking a random initial placement forward.
        init = list(range(4))
        rng.shuffle(init)
        at = {h: init[h] for h in range(4)}  # hardware -> logical
        circuit = []
        for x in nf:
            g = spec.gate(x)
            if g.swap:
                i, j = g.qubits
                at[i], at[j] = at[j], at[i]
            else:
                circuit.append(LogicalGate("cx", tuple(at[h] for h in g.qubits)))
        if not circuit:
            continue
        placement = read_placement(nf, circuit, spec)
        hw = [spec.gate(x).qubits for x in nf if not spec.gate(x).swap]
        assert placed_hardware_gates(placement, circuit, nf, spec) == hw
        for l, h in placement.mapping.items():
            assert init[h] == l
        checked += 1
    assert checked > 300


def test_parse_circuit(cnot):
    word, gates = parse_circuit("cnot01 s01  # compiled input\ncnot12 cnot13\ngate cnot 0 1\n", cnot.alphabet)
    assert word == W("cnot01 s01 cnot12 cnot13")
    assert gates == [LogicalGate("cnot", (0, 1))]
    with pytest.raises(ParseError):
        parse_circuit("gate cnot a b")
