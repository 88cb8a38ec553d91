"""Command line: complete a chip once, then compile circuits against it.

Exit status is 0 on success (possibly with warnings), 1 for user errors and
2 when an internal invariant is violated.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import rsys
from .hardware import (HardwareError, HardwareSpec, Placement, generate_rules,
                       load_spec, parse_circuit, read_placement)
from .ncpoly import NCPoly, format_poly
from .order import WeightOrder
from .rewrite import (Caps, InconsistentRelations, RewriteError, RewritingSystem,
                      check_confluence, interreduce, knuth_bendix, replay)
from .shuffle import (EmptyWord, duval_factorize, enumerate_lyndon, extract_rules,
                      format_factorization, shuffle, shuffle_buchberger)
from .words import Alphabet, WordError, format_word, parse_word


class UserError(Exception):
    pass


class NonCircuitNormalForm(UserError):
    def __init__(self, nf: NCPoly, text: str):
        super().__init__(f"normal form is not a single gate word: {text}")
        self.nf = nf


@dataclass
class CompileResult:
    normal_form: tuple
    makespan_cycles: Fraction
    input_makespan_cycles: Fraction
    placement: Placement | None = None
    trace: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def as_json(self) -> dict:
        return {
            "normal_form": list(self.normal_form),
            "makespan_cycles": str(self.makespan_cycles),
            "input_makespan_cycles": str(self.input_makespan_cycles),
            "placement": self.placement.as_json() if self.placement else {},
            "trace": [s.as_dict() for s in self.trace],
            "warnings": list(self.warnings),
        }


def makespan(word, alphabet: Alphabet) -> Fraction:
    return sum((alphabet[x].duration for x in word), Fraction(0))


def compile_word(word, system: RewritingSystem, spec: HardwareSpec | None = None,
                 circuit: list | None = None) -> CompileResult:
    """Normal form of ``word`` as a circuit, with makespan and optional placement."""
    alphabet = spec.alphabet if spec is not None else system.alphabet
    word = tuple(word)
    nf, trace = system.normal_form(word)
    if not (nf.is_monomial and next(iter(nf.items()))[1] == 1):
        raise NonCircuitNormalForm(nf, format_poly(nf, system.order))
    out = next(iter(nf.words()))
    if replay(word, trace, system) != nf:
        raise RewriteError("trace does not replay to the normal form")
    warnings = []
    if system.capped:
        warnings.append("system is capped: normal forms may not be minimal")
    elif not system.complete:
        warnings.append("system is not marked complete: normal forms may not be unique")
    placement = None
    if circuit:
        if spec is None:
            raise UserError("placement needs the chip description")
        qubits = sorted({q for g in circuit for q in g.qubits})
        placement = read_placement(out, circuit, spec, logical_qubits=qubits)
        warnings.extend(placement.warnings)
    return CompileResult(out, makespan(out, alphabet), makespan(word, alphabet),
                         placement, trace, warnings)


def complete_spec(spec: HardwareSpec, method: str = "kb", caps: Caps = Caps()) -> tuple:
    """Rewriting system for a chip, plus warnings."""
    gens = generate_rules(spec)
    order, alphabet = spec.order, spec.alphabet
    warnings = []
    if method == "kb":
        system = knuth_bendix(gens, order, caps, alphabet=alphabet)
    elif method == "shuffle":
        basis = shuffle_buchberger(gens, order, caps)
        rules = extract_rules(basis, order)
        system = RewritingSystem(tuple(rules), order, alphabet, capped=basis.capped)
        try:
            system = interreduce(system)
        except InconsistentRelations as exc:
            raise UserError(
                "the shuffle-route rules are inconsistent as concatenation rules "
                f"({exc}); use --method kb") from None
        confluent, bad = check_confluence(system)
        system = system.with_rules(system.rules, complete=confluent and not basis.capped)
        if not confluent:
            warnings.append(
                f"shuffle-route rules are not confluent under concatenation "
                f"({len(bad)} unjoined critical pairs)")
    else:
        raise UserError(f"unknown method {method!r}")
    if system.capped:
        warnings.append("completion hit a cap: the system is usable but may not be confluent")
    return system, warnings


# -- commands --------------------------------------------------------------------------

def _load_alphabet(path) -> Alphabet:
    path = Path(path)
    if path.suffix == ".json":
        return load_spec(path).alphabet
    return rsys.load(path).alphabet


def cmd_complete(args, out) -> int:
    spec = load_spec(args.chip)
    caps = Caps(args.max_rules, args.max_lhs_len, args.max_seconds)
    system, warnings = complete_spec(spec, args.method, caps)
    rsys.save(system, args.out)
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    print(f"{len(system.rules)} rules complete={str(system.complete).lower()} "
          f"capped={str(system.capped).lower()}", file=out)
    return 0


def cmd_compile(args, out) -> int:
    system = rsys.load(args.system)
    spec = load_spec(args.chip)
    word, circuit = parse_circuit(Path(args.circuit).read_text(encoding="utf-8"), system.alphabet)
    spec.alphabet.check(word)
    result = compile_word(word, system, spec, circuit or None)
    if args.json:
        print(json.dumps(result.as_json(), sort_keys=False), file=out)
        return 0
    print(f"normal_form: {format_word(result.normal_form)}", file=out)
    print(f"makespan_cycles: {result.makespan_cycles} (input {result.input_makespan_cycles})", file=out)
    if result.placement is not None:
        print("placement: " + " ".join(f"{k}->{v}" for k, v in result.placement.mapping.items()), file=out)
    if args.trace:
        for s in result.trace:
            print(f"  rule {s.rule} at {s.position} in {format_word(s.word)}", file=out)
    for w in result.warnings:
        print(f"warning: {w}", file=out)
    return 0


def cmd_nf(args, out) -> int:
    system = rsys.load(args.system)
    word = parse_word(args.word, system.alphabet)
    nf, trace = system.normal_form(word)
    print(format_poly(nf, system.order) if nf else "0", file=out)
    if args.trace:
        for s in trace:
            print(f"  rule {s.rule} ({system.rule(s.rule)}) at {s.position} in {format_word(s.word)}",
                  file=out)
    return 0


def cmd_shuffle(args, out) -> int:
    alphabet = _load_alphabet(args.alphabet) if args.alphabet else None
    u, v = parse_word(args.u, alphabet), parse_word(args.v, alphabet)
    order = None
    if alphabet is not None:
        order = WeightOrder.from_alphabet(alphabet)
    print(format_poly(shuffle(u, v), order), file=out)
    return 0


def cmd_lyndon(args, out) -> int:
    if args.alphabet:
        alphabet = _load_alphabet(args.alphabet)
        names = alphabet.names
        precedence = alphabet.precedence
    elif args.letters:
        names = tuple(args.letters.replace(",", " ").split())
        alphabet = Alphabet.from_names(names)
        precedence = alphabet.precedence
    else:
        alphabet, names, precedence = None, None, None
    if args.enumerate is not None:
        if names is None:
            raise UserError("--enumerate needs --alphabet or --letters")
        print(", ".join(format_word(w) for w in enumerate_lyndon(names, args.enumerate)), file=out)
        return 0
    word = parse_word(args.word, alphabet)
    print(format_factorization(duval_factorize(word, precedence)), file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qcrewrite", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("complete", help="build a confluent rewriting system for a chip")
    c.add_argument("--chip", required=True)
    c.add_argument("--out", required=True)
    c.add_argument("--method", choices=("kb", "shuffle"), default="kb")
    c.add_argument("--max-rules", type=int, default=5000)
    c.add_argument("--max-lhs-len", type=int, default=16)
    c.add_argument("--max-seconds", type=float, default=60.0)
    c.set_defaults(func=cmd_complete)

    c = sub.add_parser("compile", help="compile a circuit word against a stored system")
    c.add_argument("--system", required=True)
    c.add_argument("--chip", required=True)
    c.add_argument("--circuit", required=True)
    c.add_argument("--json", action="store_true")
    c.add_argument("--trace", action="store_true")
    c.set_defaults(func=cmd_compile)

    c = sub.add_parser("nf", help="normal form of a word")
    c.add_argument("--system", required=True)
    c.add_argument("--word", required=True)
    c.add_argument("--trace", action="store_true")
    c.set_defaults(func=cmd_nf)

    c = sub.add_parser("shuffle", help="shuffle product of two words")
    c.add_argument("u")
    c.add_argument("v")
    c.add_argument("--alphabet")
    c.set_defaults(func=cmd_shuffle)

    c = sub.add_parser("lyndon", help="Lyndon factorization or enumeration")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--word")
    g.add_argument("--enumerate", type=int, metavar="N")
    c.add_argument("--alphabet")
    c.add_argument("--letters", help="letters in ascending order, e.g. 'a,b'")
    c.set_defaults(func=cmd_lyndon)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (UserError, HardwareError, WordError, EmptyWord, rsys.RsysError,
            InconsistentRelations, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (RewriteError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
