"""Letters, alphabets and words of the free monoid over hardware gates.

A word is a plain tuple of letter names; the empty tuple is the empty word.
Letters carry the hardware data (duration, qubit footprint) used by the
ordering and placement layers, but names themselves are opaque.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Word = tuple  # tuple[str, ...]

EMPTY: Word = ()
EPS = "eps"

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9;_]*")


class WordError(ValueError):
    pass


class UnknownLetter(WordError, KeyError):
    def __init__(self, name: str):
        super().__init__(f"unknown letter {name!r}")
        self.name = name

    def __str__(self) -> str:
        return self.args[0]


class MalformedPower(WordError):
    pass


def as_fraction(value) -> Fraction:
    """Exact rational from an int, a Fraction or a ``"p/q"`` string."""
    if isinstance(value, bool):
        raise TypeError("boolean is not a rational")
    if isinstance(value, float):
        raise TypeError("floats are not accepted; use an int or a 'p/q' string")
    return Fraction(value)


@dataclass(frozen=True)
class Letter:
    name: str
    duration: Fraction
    qubits: tuple = ()
    directed: bool = False
    members: frozenset = frozenset()
    swap: bool = False

    def __post_init__(self):
        if not NAME_RE.fullmatch(self.name) or self.name == EPS:
            raise WordError(f"invalid letter name {self.name!r}")
        object.__setattr__(self, "duration", as_fraction(self.duration))
        object.__setattr__(self, "qubits", tuple(self.qubits))
        object.__setattr__(self, "members", frozenset(self.members))
        if self.duration <= 0:
            raise WordError(f"letter {self.name!r} must have a positive duration")

    @property
    def is_composite(self) -> bool:
        return bool(self.members)

    @classmethod
    def composite(cls, members: Sequence["Letter"], name: str | None = None) -> "Letter":
        """A parallel letter running ``members`` at once.

        Its duration is the longest member duration. Member qubit sets must
        be pairwise disjoint.
        """
        if len(members) < 2:
            raise WordError("a parallel letter needs at least two members")
        seen: set = set()
        for m in members:
            if seen & set(m.qubits):
                raise WordError(
                    f"parallel members overlap on qubits {sorted(seen & set(m.qubits))}"
                )
            seen |= set(m.qubits)
        return cls(
            name=name or composite_name([m.name for m in members]),
            duration=max(m.duration for m in members),
            qubits=tuple(q for m in members for q in m.qubits),
            directed=any(m.directed for m in members),
            members=frozenset(m.name for m in members),
            swap=all(m.swap for m in members),
        )


def composite_name(names: Sequence[str]) -> str:
    """Join member names with ``;`` after stripping their shared prefix.

    >>> composite_name(["s14", "s23"])
    's14;23'
    >>> composite_name(["r35", "b12"])
    'r35;b12'
    """
    prefix = re.match(r"[A-Za-z_]*", names[0]).group()
    while prefix and not all(n.startswith(prefix) for n in names):
        prefix = prefix[:-1]
    if prefix and all(len(n) > len(prefix) for n in names):
        return prefix + ";".join(n[len(prefix):] for n in names)
    return ";".join(names)


@dataclass(frozen=True)
class Alphabet:
    """Letters in ascending precedence: ``letters[0]`` is the smallest."""

    letters: tuple
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        index = {}
        for i, letter in enumerate(self.letters):
            if letter.name in index:
                raise WordError(f"duplicate letter name {letter.name!r}")
            index[letter.name] = i
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_names(cls, names: Iterable[str], duration=1) -> "Alphabet":
        return cls(tuple(Letter(n, duration) for n in names))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __contains__(self, name) -> bool:
        return name in self._index

    def __getitem__(self, name: str) -> Letter:
        try:
            return self.letters[self._index[name]]
        except KeyError:
            raise UnknownLetter(name) from None

    @property
    def names(self) -> tuple:
        return tuple(l.name for l in self.letters)

    @property
    def precedence(self) -> dict:
        """Letter name -> rank; a larger rank is a larger letter."""
        return dict(self._index)

    def check(self, word: Word) -> Word:
        for name in word:
            if name not in self._index:
                raise UnknownLetter(name)
        return word

    def extend(self, letters: Iterable[Letter], *, front: bool = False) -> "Alphabet":
        letters = tuple(letters)
        return Alphabet(letters + self.letters if front else self.letters + letters)


_TOKEN_RE = re.compile(r"\(|\)\^(\d+)|\)|[^\s()]+")


def parse_word(text: str, alphabet: Alphabet | None = None) -> Word:
    """Parse ``word := "eps" | term+``, ``term := NAME | "(" word ")^" INT``.

    >>> parse_word("( s12 s23 )^2")
    ('s12', 's23', 's12', 's23')
    """
    tokens = []
    pos = 0
    for m in _TOKEN_RE.finditer(text):
        if text[pos:m.start()].strip():
            raise MalformedPower(f"cannot parse {text!r}")
        tokens.append(m)
        pos = m.end()
    if text[pos:].strip():
        raise MalformedPower(f"cannot parse {text!r}")

    stack: list[list[str]] = [[]]
    for m in tokens:
        tok = m.group()
        if tok == "(":
            stack.append([])
        elif tok.startswith(")"):
            if len(stack) == 1:
                raise MalformedPower(f"unbalanced ')' in {text!r}")
            if m.group(1) is None:
                raise MalformedPower(f"group without exponent in {text!r}")
            k = int(m.group(1))
            if k < 1:
                raise MalformedPower(f"exponent must be >= 1 in {text!r}")
            inner = stack.pop()
            stack[-1].extend(inner * k)
        elif tok == EPS:
            continue
        else:
            if not NAME_RE.fullmatch(tok):
                raise MalformedPower(f"bad token {tok!r} in {text!r}")
            if alphabet is not None and tok not in alphabet:
                raise UnknownLetter(tok)
            stack[-1].append(tok)
    if len(stack) != 1:
        raise MalformedPower(f"unclosed '(' in {text!r}")
    return tuple(stack[0])


def format_word(w: Word) -> str:
    return " ".join(w) if w else EPS


def concat(u: Word, v: Word) -> Word:
    return tuple(u) + tuple(v)


def commutative_image(w: Word) -> Counter:
    """Exponent vector of ``w``: letter name -> number of occurrences."""
    return Counter(w)


def is_factor(small: Word, big: Word) -> bool:
    n = len(small)
    return any(big[i:i + n] == small for i in range(len(big) - n + 1))


def all_words(names: Sequence[str], max_len: int, min_len: int = 0):
    """Every word over ``names`` with length in ``[min_len, max_len]``, shortest first."""
    layer = [()]
    for n in range(max_len + 1):
        if n >= min_len:
            yield from layer
        layer = [w + (x,) for w in layer for x in names]


def image_vector(w: Word, names: Sequence[str]) -> tuple:
    counts = Counter(w)
    return tuple(counts.get(n, 0) for n in names)


def precedence_key(precedence: Mapping[str, int] | Alphabet | None):
    """Map a letter name to a sortable key under an alphabet precedence."""
    if precedence is None:
        return lambda name: name
    if isinstance(precedence, Alphabet):
        precedence = precedence.precedence
    ranks = dict(precedence)

    def key(name):
        try:
            return ranks[name]
        except KeyError:
            raise UnknownLetter(name) from None

    return key
