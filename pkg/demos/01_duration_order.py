"""Comparing gate sequences by how long they take.

Words are ranked by total weight first, where each gate weighs its duration
divided by the slowest gate. Equal weights fall back to length, then to the
letters from the left.
"""

from qcrewrite import Cmp, format_word, load_spec, parse_word
from qcrewrite.cli import makespan

from _chips import chip

spec = load_spec(chip("rigetti_parallel"))
order = spec.order

print("weight row:")
for name in order.precedence:
    print(f"  {name:7} duration {spec.alphabet[name].duration}  weight {order.weights[name]}")

pairs = [
    ("s12", "b12"),
    ("s12 s23", "b12"),
    ("b12 s14;23 s12 r23", "s14;23 s12 s14;23 r23 b12"),
]
symbol = {Cmp.LT: "<", Cmp.EQ: "=", Cmp.GT: ">"}
print()
for u, v in pairs:
    wu, wv = parse_word(u), parse_word(v)
    print(f"{u}  {symbol[order.compare(wu, wv)]}  {v}"
          f"    (weights {order.weight(wu)} vs {order.weight(wv)})")

w4 = parse_word("s14;23 s12 s14;23 r23 b12")
print()
print(f"{format_word(w4)} runs for {makespan(w4, spec.alphabet)} cycles")
