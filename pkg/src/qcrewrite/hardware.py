"""Chip descriptions: alphabet, base relations, parallel letters and placement."""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .ncpoly import NCPoly, parse_poly
from .order import WeightOrder
from .rewrite import OrientationFailure
from .words import Alphabet, Letter, Word, WordError, as_fraction, format_word, is_factor, parse_word


class HardwareError(ValueError):
    pass


class ParseError(HardwareError):
    pass


class ValidationError(HardwareError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class PlacementConflict(HardwareError):
    pass


class CircuitMismatch(HardwareError):
    pass


_SWAP_NAME = re.compile(r"s\d+")


@dataclass(frozen=True)
class HardwareSpec:
    qubits: tuple
    gates: tuple  # base letters, ascending precedence
    relations: tuple = ()
    crosstalk: frozenset = frozenset()
    parallel_policy: str = "off"
    max_group: int = 2
    explicit_parallel: tuple = ()
    description: str = ""
    composites: tuple = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "composites", tuple(self._make_composites()))

    def gate(self, name: str) -> Letter:
        for g in self.gates:
            if g.name == name:
                return g
        raise KeyError(name)

    def crosstalks(self, x: str, y: str) -> bool:
        return frozenset((x, y)) in self.crosstalk

    def _make_composites(self) -> list:
        groups: list = [tuple(g) for g in self.explicit_parallel]
        if self.parallel_policy == "auto":
            for x, y in itertools.combinations(self.gates, 2):
                if set(x.qubits) & set(y.qubits) or self.crosstalks(x.name, y.name):
                    continue
                pair = (x.name, y.name)
                if not any(set(pair) == set(g) for g in groups):
                    groups.append(pair)
        out = []
        for group in groups:
            out.append(Letter.composite([self.gate(n) for n in group]))
        return out

    @property
    def alphabet(self) -> Alphabet:
        # Parallel letters rank below every base gate.
        return Alphabet(self.composites + self.gates)

    @property
    def order(self) -> WeightOrder:
        return WeightOrder.from_alphabet(self.alphabet)

    @property
    def tau_max(self) -> Fraction:
        return max(g.duration for g in self.gates)


def _fail(path, msg):
    raise ValidationError(path, msg)


def spec_from_dict(data: dict) -> HardwareSpec:
    """Validate a decoded chip description."""
    if not isinstance(data, dict):
        _fail("$", "top level must be an object")
    qubits = data.get("qubits")
    if not isinstance(qubits, list) or not all(isinstance(q, int) and not isinstance(q, bool) for q in qubits):
        _fail("qubits", "must be a list of integers")
    if len(set(qubits)) != len(qubits):
        _fail("qubits", "duplicate qubit index")
    gates_data = data.get("gates")
    if not isinstance(gates_data, list) or not gates_data:
        _fail("gates", "must be a non-empty list")
    gates = []
    names = set()
    for i, g in enumerate(gates_data):
        p = f"gates[{i}]"
        if not isinstance(g, dict):
            _fail(p, "must be an object")
        name = g.get("name")
        if not isinstance(name, str):
            _fail(f"{p}.name", "must be a string")
        if name in names:
            _fail(f"{p}.name", f"duplicate gate {name!r}")
        names.add(name)
        gq = g.get("qubits")
        if not isinstance(gq, list) or not gq:
            _fail(f"{p}.qubits", "must be a non-empty list")
        for q in gq:
            if q not in qubits:
                _fail(f"{p}.qubits", f"qubit {q!r} is not declared")
        if len(set(gq)) != len(gq):
            _fail(f"{p}.qubits", "repeated qubit")
        try:
            duration = as_fraction(g.get("duration"))
        except (TypeError, ValueError, ZeroDivisionError):
            _fail(f"{p}.duration", f"not an exact rational: {g.get('duration')!r}")
        directed = g.get("directed", False)
        if not isinstance(directed, bool):
            _fail(f"{p}.directed", "must be a boolean")
        swap = g.get("swap", bool(_SWAP_NAME.fullmatch(name)))
        if not isinstance(swap, bool):
            _fail(f"{p}.swap", "must be a boolean")
        if swap and len(gq) != 2:
            _fail(f"{p}.qubits", "a swap acts on exactly two qubits")
        try:
            gates.append(Letter(name, duration, tuple(gq), directed, swap=swap))
        except WordError as exc:
            _fail(p, str(exc))

    relations = data.get("relations", [])
    if not isinstance(relations, list) or not all(isinstance(r, str) for r in relations):
        _fail("relations", "must be a list of strings")

    crosstalk = set()
    for i, pair in enumerate(data.get("crosstalk", [])):
        if not isinstance(pair, list) or len(pair) != 2:
            _fail(f"crosstalk[{i}]", "must be a pair of gate names")
        for n in pair:
            if n not in names:
                _fail(f"crosstalk[{i}]", f"unknown gate {n!r}")
        crosstalk.add(frozenset(pair))

    par = data.get("parallel", {}) or {}
    policy = par.get("policy", "off")
    if policy not in ("off", "auto"):
        _fail("parallel.policy", f"must be 'off' or 'auto', got {policy!r}")
    max_group = par.get("max_group", 2)
    if policy == "auto" and max_group != 2:
        _fail("parallel.max_group", "automatic grouping only builds pairs; list larger groups explicitly")
    explicit = []
    by_name = {g.name: g for g in gates}
    for i, group in enumerate(par.get("explicit", [])):
        p = f"parallel.explicit[{i}]"
        if not isinstance(group, list) or len(group) < 2:
            _fail(p, "must list at least two gates")
        for n in group:
            if n not in by_name:
                _fail(p, f"unknown gate {n!r}")
        for x, y in itertools.combinations(group, 2):
            if set(by_name[x].qubits) & set(by_name[y].qubits):
                _fail(p, f"{x} and {y} share qubits")
            if frozenset((x, y)) in crosstalk:
                _fail(p, f"{x} and {y} are declared cross-talking")
        explicit.append(tuple(group))

    spec = HardwareSpec(
        qubits=tuple(qubits),
        gates=tuple(gates),
        relations=tuple(relations),
        crosstalk=frozenset(crosstalk),
        parallel_policy=policy,
        max_group=max_group,
        explicit_parallel=tuple(explicit),
        description=data.get("description", ""),
    )
    alphabet = spec.alphabet
    for i, rel in enumerate(spec.relations):
        try:
            parse_relation(rel, alphabet)
        except (WordError, ValueError) as exc:
            _fail(f"relations[{i}]", str(exc))
    return spec


def load_spec(path) -> HardwareSpec:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None
    return spec_from_dict(data)


def parse_relation(text: str, alphabet: Alphabet) -> tuple:
    """``"lhs -> rhs"`` as ``(word, polynomial)``."""
    if text.count("->") != 1:
        raise ValueError(f"relation must contain one '->': {text!r}")
    left, right = text.split("->")
    return parse_word(left, alphabet), parse_poly(right, alphabet)


def generate_rules(spec: HardwareSpec) -> list:
    """Generator polynomials for ``spec``: relations plus parallel-letter rules."""
    alphabet = spec.alphabet
    order = spec.order
    gens = []
    for rel in spec.relations:
        lhs, rhs = parse_relation(rel, alphabet)
        if not lhs:
            raise OrientationFailure(f"empty left side in {rel!r}")
        lk = order.key(lhs)
        for w in rhs.words():
            if order.key(w) >= lk:
                raise OrientationFailure(
                    f"in {rel!r}: {format_word(w)} is not smaller than {format_word(lhs)}"
                )
        for pair in spec.crosstalk:
            x, y = sorted(pair)
            if is_factor(lhs, (x, y)) or is_factor(lhs, (y, x)):
                raise ValidationError("relations", f"{rel!r} rewrites the cross-talking pair {x}, {y}")
        gens.append(NCPoly.word(lhs) - rhs)
    for comp in spec.composites:
        members = [g.name for g in spec.gates if g.name in comp.members]
        for perm in itertools.permutations(members):
            gens.append(NCPoly.word(perm) - NCPoly.word((comp.name,)))
    return gens


# -- placement ----------------------------------------------------------------------

@dataclass(frozen=True)
class LogicalGate:
    name: str
    qubits: tuple


@dataclass(frozen=True)
class Placement:
    mapping: dict  # logical qubit -> hardware qubit
    warnings: tuple = ()

    def __getitem__(self, logical):
        return self.mapping[logical]

    def as_json(self) -> dict:
        return {str(k): v for k, v in sorted(self.mapping.items())}


def _parts(letter: Letter, alphabet: Alphabet) -> list:
    if not letter.is_composite:
        return [letter]
    return [l for l in alphabet if l.name in letter.members]


def read_placement(nf: Word, circuit: Sequence[LogicalGate], spec: HardwareSpec,
                   logical_qubits: Iterable[int] | None = None) -> Placement:
    """Initial placement implied by reading ``nf`` left to right.

    Swap letters permute which initial location each hardware qubit holds;
    every other letter is matched with the next logical gate of ``circuit``.
    """
    alphabet = spec.alphabet
    holds = {h: h for h in spec.qubits}  # hardware qubit -> initial location of its content
    placed: dict = {}
    owner: dict = {}
    gates = list(circuit)
    k = 0
    for name in nf:
        for part in _parts(alphabet[name], alphabet):
            if part.swap:
                i, j = part.qubits
                holds[i], holds[j] = holds[j], holds[i]
                continue
            if k >= len(gates):
                raise CircuitMismatch(f"letter {part.name} has no logical gate left to implement")
            g = gates[k]
            k += 1
            if len(g.qubits) != len(part.qubits):
                raise CircuitMismatch(f"{part.name} acts on {len(part.qubits)} qubits, {g.name} on {len(g.qubits)}")
            options = [part.qubits] if part.directed else [part.qubits, part.qubits[::-1]]
            chosen = None
            for hw in options:
                if all(_compatible(l, holds[h], placed, owner) for l, h in zip(g.qubits, hw)):
                    chosen = hw
                    break
            if chosen is None:
                raise PlacementConflict(
                    f"{part.name} cannot implement {g.name}{tuple(g.qubits)} under the placement so far {placed}"
                )
            for l, h in zip(g.qubits, chosen):
                placed[l] = holds[h]
                owner[holds[h]] = l
    if k != len(gates):
        raise CircuitMismatch(f"{len(gates) - k} logical gates left unimplemented")
    warnings = []
    wanted = set(logical_qubits) if logical_qubits is not None else set()
    for l in sorted(wanted - set(placed)):
        free = min(h for h in spec.qubits if h not in owner)
        placed[l] = free
        owner[free] = l
        warnings.append(f"UnboundQubit: logical qubit {l} unconstrained, placed on hardware qubit {free}")
    return Placement(dict(sorted(placed.items())), tuple(warnings))


def _compatible(logical, location, placed, owner) -> bool:
    if logical in placed and placed[logical] != location:
        return False
    if location in owner and owner[location] != logical:
        return False
    return True


def placed_hardware_gates(placement: Placement, circuit: Sequence[LogicalGate], nf: Word,
                          spec: HardwareSpec) -> list:
    """Replay ``nf``'s swaps from ``placement`` and return the hardware qubits of each gate."""
    alphabet = spec.alphabet
    where = dict(placement.mapping)  # logical -> current hardware qubit
    at = {h: l for l, h in where.items()}
    gates = iter(circuit)
    out = []
    for name in nf:
        for part in _parts(alphabet[name], alphabet):
            if part.swap:
                i, j = part.qubits
                li, lj = at.pop(i, None), at.pop(j, None)
                if li is not None:
                    where[li] = j
                    at[j] = li
                if lj is not None:
                    where[lj] = i
                    at[i] = lj
                continue
            g = next(gates)
            out.append(tuple(where[l] for l in g.qubits))
    return out


def parse_circuit(text: str, alphabet: Alphabet | None = None) -> tuple:
    """Circuit file: word lines, plus optional ``gate NAME q...`` lines.

    Returns ``(word, logical gates)``.
    """
    word: list = []
    gates = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("gate "):
            parts = line.split()
            if len(parts) < 3:
                raise ParseError(f"line {lineno}: expected 'gate NAME q...'")
            try:
                gates.append(LogicalGate(parts[1], tuple(int(q) for q in parts[2:])))
            except ValueError:
                raise ParseError(f"line {lineno}: logical qubits must be integers") from None
        else:
            word.extend(parse_word(line, alphabet))
    return tuple(word), gates
