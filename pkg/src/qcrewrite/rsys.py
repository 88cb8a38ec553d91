"""Line-oriented ``.rsys`` persistence for rewriting systems.

::

    alphabet: s12=2,qubits=1|2,swap
    alphabet: b12=3,qubits=1|2
    order: weight s12=1/2 b12=3/4
    flags: complete=true capped=false
    s12 s12 -> eps

Alphabet lines are in ascending precedence. Rules follow one per line; the
rule id is its position in the file.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .ncpoly import NCPoly, format_poly, parse_poly
from .order import WeightOrder
from .rewrite import Rule, RewritingSystem, orient
from .words import Alphabet, Letter, format_word, parse_word


class RsysError(ValueError):
    pass


def _frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _letter_line(letter: Letter, alphabet: Alphabet) -> str:
    fields = [f"{letter.name}={_frac(letter.duration)}"]
    if letter.directed:
        fields.append("directed")
    if letter.qubits:
        fields.append("qubits=" + "|".join(str(q) for q in letter.qubits))
    if letter.members:
        rank = alphabet.precedence
        fields.append("members=" + "|".join(sorted(letter.members, key=lambda n: rank.get(n, -1))))
    if letter.swap:
        fields.append("swap")
    return "alphabet: " + ",".join(fields)


def dumps(system: RewritingSystem) -> str:
    order = system.order
    alphabet = system.alphabet
    if alphabet is None:
        alphabet = Alphabet(tuple(Letter(n, order.weights[n]) for n in order.precedence))
    lines = [_letter_line(l, alphabet) for l in alphabet]
    lines.append("order: weight " + " ".join(
        f"{n}={_frac(order.weights[n])}" for n in order.precedence))
    lines.append(f"flags: complete={str(system.complete).lower()} capped={str(system.capped).lower()}")
    for r in system.rules:
        lines.append(f"{format_word(r.lhs)} -> {format_poly(r.rhs, order)}")
    return "\n".join(lines) + "\n"


def _bool(text: str, lineno: int) -> bool:
    if text not in ("true", "false"):
        raise RsysError(f"line {lineno}: expected true/false, got {text!r}")
    return text == "true"


def loads(text: str) -> RewritingSystem:
    letters = []
    weights = None
    precedence = None
    flags = {"complete": False, "capped": False}
    rule_lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("alphabet:"):
            body = line[len("alphabet:"):].strip()
            head, *opts = body.split(",")
            name, _, dur = head.partition("=")
            kw = {"directed": False, "qubits": (), "members": (), "swap": False}
            for opt in opts:
                key, _, val = opt.partition("=")
                if key in ("directed", "swap") and not val:
                    kw[key] = True
                elif key == "qubits":
                    kw["qubits"] = tuple(int(q) for q in val.split("|"))
                elif key == "members":
                    kw["members"] = tuple(val.split("|"))
                else:
                    raise RsysError(f"line {lineno}: unknown letter field {opt!r}")
            try:
                letters.append(Letter(name.strip(), Fraction(dur), **kw))
            except (ValueError, ZeroDivisionError) as exc:
                raise RsysError(f"line {lineno}: {exc}") from None
        elif line.startswith("order:"):
            body = line[len("order:"):].split()
            if not body or body[0] != "weight":
                raise RsysError(f"line {lineno}: only 'order: weight ...' is supported")
            weights, precedence = {}, []
            for item in body[1:]:
                n, _, v = item.partition("=")
                weights[n] = Fraction(v)
                precedence.append(n)
        elif line.startswith("flags:"):
            for item in line[len("flags:"):].split():
                key, _, val = item.partition("=")
                if key not in flags:
                    raise RsysError(f"line {lineno}: unknown flag {key!r}")
                flags[key] = _bool(val, lineno)
        else:
            if "->" not in line:
                raise RsysError(f"line {lineno}: expected 'lhs -> rhs'")
            rule_lines.append((lineno, line))

    alphabet = Alphabet(tuple(letters))
    if weights is None:
        order = WeightOrder.from_alphabet(alphabet)
    else:
        order = WeightOrder(weights, precedence)
    rules = []
    for lineno, line in rule_lines:
        left, right = line.split("->", 1)
        try:
            lhs = parse_word(left, alphabet)
            rhs = parse_poly(right, alphabet)
        except ValueError as exc:
            raise RsysError(f"line {lineno}: {exc}") from None
        rule = orient(NCPoly.word(lhs) - rhs, order, id=len(rules))
        if rule.lhs != lhs:
            raise RsysError(f"line {lineno}: rule is not oriented by the stored order")
        rules.append(Rule(lhs, rhs, len(rules)))
    return RewritingSystem(tuple(rules), order, alphabet, **flags)


def save(system: RewritingSystem, path) -> None:
    Path(path).write_text(dumps(system), encoding="utf-8")


def load(path) -> RewritingSystem:
    return loads(Path(path).read_text(encoding="utf-8"))
