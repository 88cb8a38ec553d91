"""Shuffle algebra, Lyndon words and the Radford basis.

Lyndon machinery always uses plain lexicographic order on the alphabet
precedence (a proper prefix is smaller). The shuffle algebra is handled in
Radford coordinates: a :class:`ShufflePoly` is a commutative polynomial whose
variables are Lyndon words, multiplication being the shuffle product.
"""

from __future__ import annotations

import heapq
import itertools
import math
import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .ncpoly import NCPoly
from .order import WeightOrder
from .rewrite import Caps, _Desc, orient
from .words import Alphabet, Word, as_fraction, format_word, precedence_key


class EmptyWord(ValueError):
    pass


# -- shuffle product ----------------------------------------------------------

@lru_cache(maxsize=65536)
def _shuffle_words(u: Word, v: Word) -> tuple:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc: Counter = Counter()
    x, y = u[:1], v[:1]
    for w, c in _shuffle_words(u[1:], v):
        acc[x + w] += c
    for w, c in _shuffle_words(u, v[1:]):
        acc[y + w] += c
    return tuple(acc.items())


def shuffle(u: Word, v: Word) -> NCPoly:
    """``xu ⧢ yv = x(u ⧢ yv) + y(xu ⧢ v)`` with ε as unit."""
    return NCPoly(_shuffle_words(tuple(u), tuple(v)))


def _shuffle_terms(p, q) -> Counter:
    acc: Counter = Counter()
    for u, a in p:
        for v, b in q:
            ab = a * b
            for w, c in _shuffle_words(u, v):
                acc[w] += ab * c
    return acc


def shuffle_poly(p: NCPoly, q: NCPoly) -> NCPoly:
    return NCPoly(_shuffle_terms(p.items(), q.items()))


def shuffle_power(p: NCPoly, k: int) -> NCPoly:
    out = NCPoly.one()
    for _ in range(k):
        out = shuffle_poly(out, p)
    return out


# -- Lyndon words ---------------------------------------------------------------

def _ranks(w: Word, precedence) -> tuple:
    key = precedence_key(precedence)
    return tuple(key(x) for x in w)


def is_lyndon(w: Word, precedence=None) -> bool:
    """True iff ``w`` is strictly smaller than each of its proper rotations."""
    if not w:
        raise EmptyWord("the empty word is not a Lyndon word")
    r = _ranks(w, precedence)
    return all(r < r[i:] + r[:i] for i in range(1, len(r)))


def is_lyndon_by_suffixes(w: Word, precedence=None) -> bool:
    """True iff ``w`` is strictly smaller than each of its proper right factors."""
    if not w:
        raise EmptyWord("the empty word is not a Lyndon word")
    r = _ranks(w, precedence)
    return all(r < r[i:] for i in range(1, len(r)))


def duval_factorize(w: Word, precedence=None) -> list:
    """Nonincreasing Lyndon factorization of ``w`` (Duval's algorithm)."""
    if not w:
        raise EmptyWord("cannot factorize the empty word")
    w = tuple(w)
    s = _ranks(w, precedence)
    n = len(s)
    out = []
    k = 0
    while k < n:
        i, j = k, k + 1
        while j < n and s[i] <= s[j]:
            i = k if s[i] < s[j] else i + 1
            j += 1
        while k <= i:
            out.append(w[k:k + j - i])
            k += j - i
    return out


def enumerate_lyndon(letters: Alphabet | Sequence[str], max_len: int) -> list:
    """All Lyndon words of length <= ``max_len`` in lexicographic order.

    ``letters`` are given in ascending precedence.
    """
    names = letters.names if isinstance(letters, Alphabet) else tuple(letters)
    k = len(names)
    if max_len < 1 or k == 0:
        return []
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        out.append(tuple(names[i] for i in w))
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
    return out


def format_factorization(factors: Iterable[Word]) -> str:
    return "".join(f"[{format_word(f)}]" for f in factors)


# -- commutative monomials in Lyndon variables ---------------------------------------
# A monomial is a tuple of (lyndon word, exponent) pairs sorted by word, so it is
# canonical and hashable; the empty tuple is the unit.

def mono(pairs: Mapping[Word, int] | Iterable) -> tuple:
    items = pairs.items() if isinstance(pairs, Mapping) else pairs
    acc: Counter = Counter()
    for l, e in items:
        acc[tuple(l)] += e
    return tuple(sorted((l, e) for l, e in acc.items() if e))


def mono_mul(a: tuple, b: tuple) -> tuple:
    acc = Counter(dict(a))
    acc.update(dict(b))
    return tuple(sorted(acc.items()))


def mono_divides(a: tuple, b: tuple) -> bool:
    db = dict(b)
    return all(db.get(l, 0) >= e for l, e in a)


def mono_div(b: tuple, a: tuple) -> tuple:
    acc = Counter(dict(b))
    acc.subtract(dict(a))
    return tuple(sorted((l, e) for l, e in acc.items() if e))


def mono_lcm(a: tuple, b: tuple) -> tuple:
    da, db = dict(a), dict(b)
    return tuple(sorted((l, max(da.get(l, 0), db.get(l, 0))) for l in set(da) | set(db)))


def mono_coprime(a: tuple, b: tuple) -> bool:
    return not (set(dict(a)) & set(dict(b)))


def mono_word(m: tuple, precedence=None) -> Word:
    """The word ``l1^i1 ... lk^ik`` with factors in nonincreasing order."""
    key = precedence_key(precedence)
    factors = sorted(m, key=lambda le: tuple(key(x) for x in le[0]), reverse=True)
    return tuple(x for l, e in factors for _ in range(e) for x in l)


def mono_factorial(m: tuple) -> int:
    return math.prod(math.factorial(e) for _, e in m)


def format_monomial(m: tuple) -> str:
    if not m:
        return "1"
    return " ".join(f"[{format_word(l)}]" + (f"^{e}" if e > 1 else "") for l, e in m)


def factorization_monomial(w: Word, precedence=None) -> tuple:
    return mono(Counter(duval_factorize(w, precedence)))


class ShufflePoly:
    """Immutable polynomial over Q in Lyndon-word variables."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple, object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for m, c in items:
            c = as_fraction(c)
            if c:
                s = acc.get(m, 0) + c
                if s:
                    acc[m] = s
                else:
                    acc.pop(m, None)
        self._terms = acc

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p._terms = terms
        return p

    @classmethod
    def var(cls, lyndon: Word, exp: int = 1, coeff=1) -> "ShufflePoly":
        return cls({mono({tuple(lyndon): exp}): coeff})

    @classmethod
    def monomial(cls, m: tuple, coeff=1) -> "ShufflePoly":
        return cls({m: coeff})

    @classmethod
    def one(cls) -> "ShufflePoly":
        return cls({(): 1})

    def items(self):
        return self._terms.items()

    def monomials(self):
        return self._terms.keys()

    def coeff(self, m: tuple) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def variables(self) -> set:
        return {l for m in self._terms for l, _ in m}

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, ShufflePoly):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"ShufflePoly({self.text()!r})"

    def text(self, order: WeightOrder | None = None) -> str:
        if not self._terms:
            return "0"
        if order is not None:
            ms = sorted(self._terms, key=lambda m: induced_key(m, order), reverse=True)
        else:
            ms = sorted(self._terms, key=lambda m: (-sum(e * len(l) for l, e in m), m))
        parts = []
        for i, m in enumerate(ms):
            c = self._terms[m]
            a = abs(c)
            body = format_monomial(m) if a == 1 else f"{a}*{format_monomial(m)}"
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(f" {'-' if c < 0 else '+'} {body}")
        return "".join(parts)

    __str__ = text

    def __add__(self, other: "ShufflePoly") -> "ShufflePoly":
        acc = dict(self._terms)
        for m, c in other._terms.items():
            s = acc.get(m, 0) + c
            if s:
                acc[m] = s
            else:
                acc.pop(m, None)
        return ShufflePoly._raw(acc)

    def __neg__(self):
        return ShufflePoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ShufflePoly":
        c = as_fraction(c)
        if not c:
            return ShufflePoly()
        return ShufflePoly._raw({m: c * v for m, v in self._terms.items()})

    def mul_monomial(self, m: tuple, c=1) -> "ShufflePoly":
        c = as_fraction(c)
        return ShufflePoly._raw({mono_mul(m, k): c * v for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        acc: dict = {}
        for m1, a in self._terms.items():
            for m2, b in other._terms.items():
                m = mono_mul(m1, m2)
                s = acc.get(m, 0) + a * b
                if s:
                    acc[m] = s
                else:
                    acc.pop(m, None)
        return ShufflePoly._raw(acc)

    def leading(self, order: WeightOrder) -> tuple:
        """``(monomial, coefficient)`` of the largest term under the induced order."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms, key=lambda k: induced_key(k, order))
        return m, self._terms[m]

    def monic(self, order: WeightOrder) -> "ShufflePoly":
        _, c = self.leading(order)
        return self if c == 1 else self.scale(1 / c)


def induced_key(m: tuple, order: WeightOrder) -> tuple:
    """Order on L-monomials: compare their nonincreasing concatenations as words."""
    return order.key(mono_word(m, order.rank))


# -- Radford conversion ----------------------------------------------------------------

@lru_cache(maxsize=16384)
def _expand_monomial(m: tuple) -> NCPoly:
    # Integer coefficients throughout; Fractions only at the end.
    out: Counter = Counter({(): 1})
    for l, e in m:
        for _ in range(e):
            out = _shuffle_terms(out.items(), ((l, 1),))
    return NCPoly(out)


def from_radford(sp: ShufflePoly) -> NCPoly:
    """Expand L-monomials as shuffle products of their Lyndon variables."""
    acc = NCPoly.zero()
    for m, c in sp.items():
        acc = acc + _expand_monomial(m).scale(c)
    return acc


def to_radford(p: NCPoly, precedence=None) -> ShufflePoly:
    """Coordinates of ``p`` in the Radford basis, by triangular elimination.

    Each step removes the lexicographically largest remaining word ``w`` using
    the monomial of its Lyndon factorization, whose shuffle expansion is
    ``w`` times a factorial plus strictly smaller words of the same length.
    """
    key = precedence_key(precedence)

    def wkey(w):
        return (len(w), tuple(key(x) for x in w))

    work = dict(p.items())
    out: dict = {}
    while work:
        w = max(work, key=wkey)
        c = work[w]
        if not w:
            m = ()
        else:
            m = factorization_monomial(w, precedence)
        coeff = c / mono_factorial(m)
        out[m] = out.get(m, 0) + coeff
        for u, a in _expand_monomial(m).items():
            s = work.get(u, 0) - coeff * a
            if s:
                work[u] = s
            else:
                work.pop(u, None)
        if w in work:
            raise AssertionError(f"triangular elimination stalled on {format_word(w)}")
    return ShufflePoly(out)


# -- Buchberger over Q[L] ------------------------------------------------------------

def lcm_s_polynomial(p: ShufflePoly, q: ShufflePoly, order: WeightOrder) -> ShufflePoly:
    mp, cp = p.leading(order)
    mq, cq = q.leading(order)
    l = mono_lcm(mp, mq)
    return p.mul_monomial(mono_div(l, mp), 1 / cp) - q.mul_monomial(mono_div(l, mq), 1 / cq)


def product_s_polynomial(p: ShufflePoly, q: ShufflePoly, order: WeightOrder) -> ShufflePoly:
    """``lt(p) ⧢ q - p ⧢ lt(q)``; kept as a diagnostic, Buchberger uses the lcm form."""
    mp, cp = p.leading(order)
    mq, cq = q.leading(order)
    return q.mul_monomial(mp, cp) - p.mul_monomial(mq, cq)


def reduce_shuffle(p: ShufflePoly, basis: Sequence[ShufflePoly], order: WeightOrder) -> ShufflePoly:
    """Full multivariate division remainder of ``p`` by ``basis``."""
    keys: dict = {}

    def key(m):
        k = keys.get(m)
        if k is None:
            k = keys[m] = induced_key(m, order)
        return k

    leads = [(g.leading(order), g) for g in basis]
    work = dict(p.items())
    heap = [_Desc(key(m), m) for m in work]
    heapq.heapify(heap)
    done: dict = {}
    while heap:
        m = heapq.heappop(heap).word
        c = work.pop(m, None)
        if c is None:
            continue
        for (gm, gc), g in leads:
            if mono_divides(gm, m):
                f = c / gc
                q = mono_div(m, gm)
                for k, v in g.items():
                    if k == gm:
                        continue
                    nk = mono_mul(k, q)
                    s = work.get(nk, 0) - f * v
                    if s:
                        if nk not in work:
                            heapq.heappush(heap, _Desc(key(nk), nk))
                        work[nk] = s
                    else:
                        work.pop(nk, None)
                break
        else:
            done[m] = c
    return ShufflePoly._raw(done)


@dataclass(frozen=True)
class ShuffleBasis:
    basis: tuple
    order: WeightOrder
    complete: bool
    capped: bool


def _reduced_basis(basis: list, order: WeightOrder) -> list:
    basis = [g.monic(order) for g in basis if g]
    minimal = []
    for i, g in enumerate(basis):
        gm = g.leading(order)[0]
        dominated = False
        for j, h in enumerate(basis):
            if i == j:
                continue
            hm = h.leading(order)[0]
            if mono_divides(hm, gm) and (hm != gm or j < i):
                dominated = True
                break
        if not dominated:
            minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        gm, _ = g.leading(order)
        tail = reduce_shuffle(g - ShufflePoly.monomial(gm), others, order)
        out.append(ShufflePoly.monomial(gm) + tail)
    return sorted(out, key=lambda g: induced_key(g.leading(order)[0], order))


def shuffle_buchberger(generators: Iterable, order: WeightOrder, caps: Caps = Caps()) -> ShuffleBasis:
    """Reduced Gröbner basis over Q[L] of the given generators.

    Word polynomials are first converted with :func:`to_radford`;
    :class:`ShufflePoly` generators are used as they are.
    """
    start = time.monotonic()
    basis: list = []
    for g in generators:
        g = g if isinstance(g, ShufflePoly) else to_radford(g, order.rank)
        r = reduce_shuffle(g, basis, order)
        if r:
            basis.append(r.monic(order))
    pairs: list = []
    seq = itertools.count()

    def push(i, j):
        mi, mj = basis[i].leading(order)[0], basis[j].leading(order)[0]
        if mono_coprime(mi, mj):
            return
        l = mono_lcm(mi, mj)
        heapq.heappush(pairs, (induced_key(l, order), next(seq), i, j))

    for j in range(len(basis)):
        for i in range(j):
            push(i, j)
    capped = False
    while pairs:
        if caps.max_seconds is not None and time.monotonic() - start > caps.max_seconds:
            capped = True
            break
        _, _, i, j = heapq.heappop(pairs)
        r = reduce_shuffle(lcm_s_polynomial(basis[i], basis[j], order), basis, order)
        if not r:
            continue
        r = r.monic(order)
        lm = r.leading(order)[0]
        if caps.max_lhs_len is not None and len(mono_word(lm, order.rank)) > caps.max_lhs_len:
            capped = True
            continue
        if caps.max_rules is not None and len(basis) >= caps.max_rules:
            capped = True
            break
        basis.append(r)
        for i in range(len(basis) - 1):
            push(i, len(basis) - 1)
    return ShuffleBasis(tuple(_reduced_basis(basis, order)), order, not capped, capped)


def extract_rules(basis: ShuffleBasis | Iterable[ShufflePoly], order: WeightOrder) -> list:
    """Expand basis elements back to words and orient them as rules."""
    polys = basis.basis if isinstance(basis, ShuffleBasis) else tuple(basis)
    rules = []
    for i, g in enumerate(polys):
        p = from_radford(g)
        rule = orient(p, order, id=i)
        lm = g.leading(order)[0]
        if rule.lhs != mono_word(lm, order.rank):
            raise AssertionError(
                f"leading word {format_word(rule.lhs)} is not the factor word of {format_monomial(lm)}"
            )
        rules.append(rule)
    return rules
