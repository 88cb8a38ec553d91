"""Noncommutative polynomials with exact rational coefficients.

An :class:`NCPoly` is an immutable map from words to nonzero ``Fraction``
coefficients, multiplied by concatenation.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

from .order import WeightOrder
from .words import EPS, Alphabet, Word, as_fraction, format_word, parse_word, precedence_key


class ZeroPolynomial(ValueError):
    pass


class NCPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Word, object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for w, c in items:
            c = as_fraction(c)
            if c:
                w = tuple(w)
                s = acc.get(w, 0) + c
                if s:
                    acc[w] = s
                else:
                    acc.pop(w, None)
        self._terms = acc
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "NCPoly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def word(cls, w: Word, coeff=1) -> "NCPoly":
        return cls({tuple(w): coeff})

    @classmethod
    def one(cls) -> "NCPoly":
        return cls({(): 1})

    @classmethod
    def zero(cls) -> "NCPoly":
        return cls._raw({})

    # -- mapping protocol ---------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def words(self):
        return self._terms.keys()

    def coeff(self, w: Word) -> Fraction:
        return self._terms.get(tuple(w), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == NCPoly({(): other})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"NCPoly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    @property
    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for w, c in other._terms.items():
            s = acc.get(w, 0) + c
            if s:
                acc[w] = s
            else:
                acc.pop(w, None)
        return NCPoly._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._raw({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "NCPoly":
        c = as_fraction(c)
        if not c:
            return NCPoly.zero()
        return NCPoly._raw({w: c * v for w, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        acc: dict = {}
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                w = u + v
                s = acc.get(w, 0) + a * b
                if s:
                    acc[w] = s
                else:
                    acc.pop(w, None)
        return NCPoly._raw(acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def lmul(self, u: Word) -> "NCPoly":
        """``u * self`` for a word ``u``."""
        u = tuple(u)
        return NCPoly._raw({u + w: c for w, c in self._terms.items()})

    def rmul(self, v: Word) -> "NCPoly":
        v = tuple(v)
        return NCPoly._raw({w + v: c for w, c in self._terms.items()})

    def sandwich(self, u: Word, v: Word) -> "NCPoly":
        u, v = tuple(u), tuple(v)
        return NCPoly._raw({u + w + v: c for w, c in self._terms.items()})

    # -- ordering -----------------------------------------------------------
    def sorted_words(self, order: WeightOrder, reverse: bool = True) -> list:
        return sorted(self._terms, key=order.key, reverse=reverse)

    def leading_term(self, order: WeightOrder) -> tuple:
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        w = max(self._terms, key=order.key)
        return w, self._terms[w]

    def rest(self, order: WeightOrder) -> "NCPoly":
        w, _ = self.leading_term(order)
        acc = dict(self._terms)
        del acc[w]
        return NCPoly._raw(acc)

    def monic(self, order: WeightOrder) -> "NCPoly":
        _, c = self.leading_term(order)
        return self.scale(1 / c) if c != 1 else self


def _coerce(other):
    if isinstance(other, NCPoly):
        return other
    if isinstance(other, (int, Fraction)):
        return NCPoly({(): other})
    return NotImplemented


def add(p: NCPoly, q: NCPoly) -> NCPoly:
    return p + q


def scale(c, p: NCPoly) -> NCPoly:
    return p.scale(c)


def multiply(p: NCPoly, q: NCPoly) -> NCPoly:
    return p * q


def leading_term(p: NCPoly, order: WeightOrder) -> tuple:
    return p.leading_term(order)


def rest(p: NCPoly, order: WeightOrder) -> NCPoly:
    return p.rest(order)


def normalize_monic(p: NCPoly, order: WeightOrder) -> NCPoly:
    return p.monic(order)


# -- text form ----------------------------------------------------------------

def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: NCPoly, order: WeightOrder | None = None) -> str:
    """Render ``p`` as ``[coeff*]word`` terms, largest word first.

    Without an order, terms go longest first, then lexicographically by name.
    """
    if not p:
        return "0"
    if order is not None:
        words = p.sorted_words(order)
    else:
        words = sorted(p.words(), key=lambda w: (-len(w), w))
    parts = []
    for i, w in enumerate(words):
        c = p.coeff(w)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        body = format_word(w) if a == 1 else f"{_format_coeff(a)}*{format_word(w)}"
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


_SPLIT_RE = re.compile(r"\s+([+\-−])\s+")
_COEFF_RE = re.compile(r"^([+\-−]?)\s*(\d+(?:/\d+)?)?\s*(\*)?\s*(.*)$", re.S)


def parse_poly(text: str, alphabet: Alphabet | None = None) -> NCPoly:
    """Parse the polynomial text form, e.g. ``"s23 s12 - 2*eps"``."""
    text = text.strip()
    if text == "0":
        return NCPoly.zero()
    pieces = _SPLIT_RE.split(text)
    signs = ["+"] + pieces[1::2]
    bodies = pieces[0::2]
    acc = NCPoly.zero()
    for sign, body in zip(signs, bodies):
        m = _COEFF_RE.match(body.strip())
        lead, num, star, rest_text = m.groups()
        c = Fraction(num) if num else Fraction(1)
        if lead in ("-", "−"):
            c = -c
        if sign in ("-", "−"):
            c = -c
        rest_text = rest_text.strip()
        if num and not star:
            if rest_text:
                raise ValueError(f"missing '*' between coefficient and word in {body!r}")
            w = ()
        else:
            if not rest_text:
                raise ValueError(f"empty term in {text!r}")
            w = parse_word(rest_text, alphabet)
        acc = acc + NCPoly.word(w, c)
    return acc


def word_key_lex(precedence=None):
    """Sort key for words: length, then letters by precedence."""
    key = precedence_key(precedence)
    return lambda w: (len(w), tuple(key(x) for x in w))


__all__ = [
    "EPS",
    "NCPoly",
    "ZeroPolynomial",
    "add",
    "format_poly",
    "leading_term",
    "multiply",
    "normalize_monic",
    "parse_poly",
    "rest",
    "scale",
]
