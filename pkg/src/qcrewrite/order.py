"""Duration-weighted monomial order on words.

Words are compared by total weight (dot product of the exponent vector with
the weight row), then by length, then letter by letter from the left using
the alphabet precedence. Each stage is invariant under concatenation, so the
chain is a total, multiplication-compatible well-order whenever all weights
are positive.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .words import Alphabet, UnknownLetter, Word, as_fraction


class Cmp(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


class OrderError(ValueError):
    pass


class NonPositiveWeight(OrderError):
    def __init__(self, letter: str, weight):
        super().__init__(f"letter {letter!r} has non-positive weight {weight}")
        self.letter = letter


class MissingWeight(OrderError):
    def __init__(self, letter: str):
        super().__init__(f"letter {letter!r} has no weight")
        self.letter = letter


class BadPrecedence(OrderError):
    pass


@dataclass(frozen=True)
class WeightOrder:
    """Weight row plus a letter precedence (ascending, first is smallest)."""

    weights: Mapping[str, Fraction]
    precedence: tuple
    _int_weights: dict = field(init=False, repr=False, compare=False)
    _rank: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        weights = {k: as_fraction(v) for k, v in dict(self.weights).items()}
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "precedence", tuple(self.precedence))
        # Integer-scaled weights keep comparisons exact and cheap.
        den = math.lcm(*(w.denominator for w in weights.values())) if weights else 1
        object.__setattr__(
            self, "_int_weights", {k: int(w * den) for k, w in weights.items()}
        )
        object.__setattr__(self, "_rank", {n: i for i, n in enumerate(self.precedence)})

    @classmethod
    def from_alphabet(cls, alphabet: Alphabet, weights: Mapping | None = None) -> "WeightOrder":
        """Order for ``alphabet``; default weights are duration / longest duration."""
        if weights is None:
            tau = max((l.duration for l in alphabet), default=Fraction(1))
            weights = {l.name: l.duration / tau for l in alphabet}
        return cls(weights, alphabet.names)

    @property
    def rank(self) -> dict:
        return dict(self._rank)

    def key(self, w: Word) -> tuple:
        """Sort key realising the order: ``u < v`` iff ``key(u) < key(v)``."""
        try:
            iw = self._int_weights
            rank = self._rank
            return (sum(iw[x] for x in w), len(w), tuple(rank[x] for x in w))
        except KeyError as exc:
            raise UnknownLetter(exc.args[0]) from None

    def weight(self, w: Word) -> Fraction:
        try:
            return sum((self.weights[x] for x in w), Fraction(0))
        except KeyError as exc:
            raise UnknownLetter(exc.args[0]) from None

    def compare(self, u: Word, v: Word) -> Cmp:
        ku, kv = self.key(u), self.key(v)
        return Cmp.LT if ku < kv else Cmp.GT if ku > kv else Cmp.EQ

    def greater(self, u: Word, v: Word) -> bool:
        return self.key(u) > self.key(v)

    def max(self, words):
        return max(words, key=self.key)

    def min(self, words):
        return min(words, key=self.key)

    def restrict(self, names: Sequence[str]) -> "WeightOrder":
        keep = set(names)
        return WeightOrder(
            {k: v for k, v in self.weights.items() if k in keep},
            [n for n in self.precedence if n in keep],
        )


def weight(order: WeightOrder, w: Word) -> Fraction:
    return order.weight(w)


def compare(order: WeightOrder, u: Word, v: Word) -> Cmp:
    return order.compare(u, v)


def validate(order: WeightOrder, alphabet: Alphabet | None = None) -> list[OrderError]:
    """Diagnostics for ``order`` against ``alphabet``; an empty list means ok."""
    problems: list[OrderError] = []
    names = alphabet.names if alphabet is not None else tuple(order.weights)
    for name in names:
        if name not in order.weights:
            problems.append(MissingWeight(name))
        elif order.weights[name] <= 0:
            problems.append(NonPositiveWeight(name, order.weights[name]))
    if len(set(order.precedence)) != len(order.precedence):
        problems.append(BadPrecedence("precedence lists a letter twice"))
    missing = [n for n in names if n not in order._rank]
    if missing:
        problems.append(BadPrecedence(f"precedence omits {missing}"))
    return problems
