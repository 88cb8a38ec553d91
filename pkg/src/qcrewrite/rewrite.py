"""Word rewriting over Q<X>: reduction, critical pairs and Knuth-Bendix completion."""

from __future__ import annotations

import heapq
import itertools
import logging
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .ncpoly import NCPoly, format_poly
from .order import WeightOrder
from .words import Alphabet, Word, format_word, is_factor

log = logging.getLogger(__name__)


class RewriteError(RuntimeError):
    pass


class OrientationFailure(RewriteError):
    pass


class InconsistentRelations(OrientationFailure):
    """The relations force a nonzero constant to vanish."""


class StepLimitExceeded(RewriteError):
    pass


DEFAULT_MAX_STEPS = 10**6


@dataclass(frozen=True)
class Rule:
    lhs: Word
    rhs: NCPoly
    id: int = 0

    @property
    def poly(self) -> NCPoly:
        return NCPoly.word(self.lhs) - self.rhs

    def __str__(self):
        return f"{format_word(self.lhs)} -> {format_poly(self.rhs)}"

    def text(self, order: WeightOrder | None = None) -> str:
        return f"{format_word(self.lhs)} -> {format_poly(self.rhs, order)}"


def orient(p: NCPoly, order: WeightOrder, id: int = 0) -> Rule:
    """Turn a nonzero polynomial into the rule ``lt(p) -> -rest(p)/lc(p)``."""
    if not p:
        raise OrientationFailure("cannot orient the zero polynomial")
    p = p.monic(order)
    lhs, _ = p.leading_term(order)
    if lhs == ():
        raise InconsistentRelations(f"relation reduces to a nonzero constant: {p}")
    rhs = NCPoly.word(lhs) - p
    lk = order.key(lhs)
    for w in rhs.words():
        if order.key(w) >= lk:
            raise OrientationFailure(f"{format_word(w)} is not smaller than {format_word(lhs)}")
    return Rule(lhs, rhs, id)


@dataclass(frozen=True)
class Step:
    rule: int
    word: Word
    position: int
    coeff: Fraction = Fraction(1)

    def as_dict(self) -> dict:
        return {"rule": self.rule, "position": self.position}


class _Index:
    """Lookup structure for finding rule left-hand sides inside words."""

    def __init__(self, rules: Sequence[Rule]):
        self.rules = list(rules)
        self.by_lhs: dict = {}
        self.rank: dict = {}
        for i, r in enumerate(self.rules):
            if r.lhs not in self.by_lhs:
                self.by_lhs[r.lhs] = r
                self.rank[r.lhs] = i
        self.lengths = sorted({len(l) for l in self.by_lhs})

    def find(self, w: Word, rightmost: bool = False):
        """First (position, rule) occurrence in ``w``; rules in list order break ties."""
        n = len(w)
        positions = range(n - 1, -1, -1) if rightmost else range(n)
        by_lhs, rank = self.by_lhs, self.rank
        for i in positions:
            best = None
            for L in self.lengths:
                if i + L > n:
                    break
                f = w[i:i + L]
                r = by_lhs.get(f)
                if r is not None and (best is None or rank[f] < rank[best.lhs]):
                    best = r
            if best is not None:
                return i, best
        return None


class _Desc:
    __slots__ = ("key", "word")

    def __init__(self, key, word):
        self.key = key
        self.word = word

    def __lt__(self, other):
        return self.key > other.key


def _reduce(p: NCPoly, index: _Index, order: WeightOrder, *, rightmost=False,
            max_steps=DEFAULT_MAX_STEPS, trace: list | None = None,
            check_descent=False) -> NCPoly:
    """Normal form by repeatedly rewriting the largest reducible term."""
    work = dict(p.items())
    heap = [_Desc(order.key(w), w) for w in work]
    heapq.heapify(heap)
    queued = set(work)
    done: dict = {}
    steps = 0
    while heap:
        item = heapq.heappop(heap)
        w = item.word
        queued.discard(w)
        c = work.pop(w, None)
        if c is None:
            continue
        hit = index.find(w, rightmost)
        if hit is None:
            done[w] = c
            continue
        steps += 1
        if steps > max_steps:
            raise StepLimitExceeded(f"normal form exceeded {max_steps} steps")
        pos, rule = hit
        u, v = w[:pos], w[pos + len(rule.lhs):]
        if trace is not None:
            trace.append(Step(rule.id, w, pos, c))
        for x, a in rule.rhs.items():
            nw = u + x + v
            if check_descent and not order.key(nw) < item.key:
                raise RewriteError(f"rule {rule} did not decrease {format_word(w)}")
            s = work.get(nw, 0) + c * a
            if s:
                work[nw] = s
                if nw not in queued:
                    queued.add(nw)
                    heapq.heappush(heap, _Desc(order.key(nw), nw))
            else:
                work.pop(nw, None)
    return NCPoly._raw(done)


def _as_poly(p) -> NCPoly:
    return p if isinstance(p, NCPoly) else NCPoly.word(tuple(p))


@dataclass(frozen=True)
class RewritingSystem:
    rules: tuple
    order: WeightOrder
    alphabet: Alphabet | None = None
    complete: bool = False
    capped: bool = False
    history: tuple = field(default=(), compare=False)
    _index: _Index = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "_index", _Index(self.rules))

    def __len__(self):
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)

    def rule(self, id: int) -> Rule:
        for r in self.rules:
            if r.id == id:
                return r
        raise KeyError(id)

    def find(self, w: Word, rightmost=False):
        return self._index.find(tuple(w), rightmost)

    def is_reduced(self, p) -> bool:
        return all(self._index.find(w) is None for w in _as_poly(p).words())

    def reduce_once(self, p, *, rightmost=False):
        """One rewrite of the largest reducible term, or ``None`` if ``p`` is reduced."""
        p = _as_poly(p)
        for w in p.sorted_words(self.order):
            hit = self._index.find(w, rightmost)
            if hit is None:
                continue
            pos, rule = hit
            c = p.coeff(w)
            u, v = w[:pos], w[pos + len(rule.lhs):]
            q = p - NCPoly.word(w, c) + rule.rhs.sandwich(u, v).scale(c)
            return q, Step(rule.id, w, pos, c)
        return None

    def normal_form(self, p, *, rightmost=False, max_steps=DEFAULT_MAX_STEPS,
                    check_descent=False) -> tuple:
        """``(NF(p), trace)``."""
        trace: list = []
        nf = _reduce(_as_poly(p), self._index, self.order, rightmost=rightmost,
                     max_steps=max_steps, trace=trace, check_descent=check_descent)
        return nf, trace

    def nf(self, p, **kw) -> NCPoly:
        return _reduce(_as_poly(p), self._index, self.order, **kw)

    def with_rules(self, rules, **changes) -> "RewritingSystem":
        return replace(self, rules=tuple(rules), **changes)


def reduce_once(p, system: RewritingSystem, **kw):
    return system.reduce_once(p, **kw)


def normal_form(p, system: RewritingSystem, **kw):
    return system.normal_form(p, **kw)


def replay(p, trace: Iterable[Step], system: RewritingSystem) -> NCPoly:
    """Apply recorded steps to ``p`` one by one, checking each still applies."""
    p = _as_poly(p)
    for step in trace:
        rule = system.rule(step.rule)
        w = step.word
        if w[step.position:step.position + len(rule.lhs)] != rule.lhs:
            raise RewriteError(f"step {step} does not match rule {rule}")
        c = p.coeff(w)
        if not c:
            raise RewriteError(f"term {format_word(w)} absent when replaying {step}")
        u, v = w[:step.position], w[step.position + len(rule.lhs):]
        p = p - NCPoly.word(w, c) + rule.rhs.sandwich(u, v).scale(c)
    return p


# -- critical pairs ---------------------------------------------------------------

@dataclass(frozen=True)
class Superposition:
    """A word reducible by two rules, with both one-step reducts.

    ``left`` comes from ``r1`` applied at the start (or as the whole word for an
    inclusion); ``right`` from ``r2`` applied at ``position``.
    """

    word: Word
    r1: int
    r2: int
    kind: str
    position: int
    left: NCPoly
    right: NCPoly


def critical_pairs(r1: Rule, r2: Rule) -> list:
    """Superpositions of ``r1`` then ``r2``.

    Overlaps: a proper suffix of ``r1.lhs`` equals a proper prefix of
    ``r2.lhs``. Inclusions: ``r2.lhs`` occurs inside ``r1.lhs``.
    """
    a, b = r1.lhs, r2.lhs
    same = r1 == r2
    out = []
    for k in range(1, min(len(a), len(b))):
        if a[-k:] == b[:k]:
            u, v = a[:-k], b[k:]
            out.append(Superposition(a + v, r1.id, r2.id, "overlap", len(u),
                                     r1.rhs.rmul(v), r2.rhs.lmul(u)))
    if len(b) <= len(a):
        for i in range(len(a) - len(b) + 1):
            if a[i:i + len(b)] != b or (same and i == 0):
                continue
            u, v = a[:i], a[i + len(b):]
            out.append(Superposition(a, r1.id, r2.id, "inclusion", i,
                                     r1.rhs, r2.rhs.sandwich(u, v)))
    return out


def all_critical_pairs(rules: Sequence[Rule]) -> list:
    out = []
    for r1 in rules:
        for r2 in rules:
            out.extend(critical_pairs(r1, r2))
    return out


def s_polynomial(sp: Superposition) -> NCPoly:
    return sp.left - sp.right


def check_confluence(system: RewritingSystem) -> tuple:
    """``(confluent, [(superposition, nonzero normal form), ...])``."""
    bad = []
    for sp in all_critical_pairs(system.rules):
        r = system.nf(s_polynomial(sp))
        if r:
            bad.append((sp, r))
    return not bad, bad


# -- completion -----------------------------------------------------------------------

@dataclass(frozen=True)
class Caps:
    max_rules: int | None = 5000
    max_lhs_len: int | None = 16
    max_seconds: float | None = 60.0


class _CapHit(Exception):
    pass


class _Completion:
    def __init__(self, order: WeightOrder, caps: Caps):
        self.order = order
        self.caps = caps
        self.active: dict = {}
        self.history: list = []
        self.ids = itertools.count()
        self.queue: list = []
        self.seq = itertools.count()
        self.capped = False
        self.deadline = (time.monotonic() + caps.max_seconds
                         if caps.max_seconds is not None else None)
        self._index = _Index([])

    def _reindex(self):
        self._index = _Index(list(self.active.values()))

    def nf(self, p: NCPoly) -> NCPoly:
        return _reduce(p, self._index, self.order)

    def check_time(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            self.capped = True
            raise _CapHit("max_seconds")

    def add(self, poly: NCPoly, enqueue: bool = True):
        work = [poly]
        while work:
            p = self.nf(work.pop(0))
            if not p:
                continue
            rule = orient(p, self.order)
            caps = self.caps
            if caps.max_lhs_len is not None and len(rule.lhs) > caps.max_lhs_len:
                log.warning("skipping rule with lhs length %d > cap", len(rule.lhs))
                self.capped = True
                continue
            if caps.max_rules is not None and len(self.history) >= caps.max_rules:
                self.capped = True
                raise _CapHit("max_rules")
            rule = replace(rule, id=next(self.ids))
            for s in list(self.active.values()):
                if is_factor(rule.lhs, s.lhs):
                    del self.active[s.id]
                    work.append(s.poly)
            self.active[rule.id] = rule
            self.history.append(rule)
            self._reindex()
            changed = False
            for s in list(self.active.values()):
                if s.id == rule.id:
                    continue
                if any(self._index.find(w) for w in s.rhs.words()):
                    self.active[s.id] = replace(s, rhs=self.nf(s.rhs))
                    changed = True
            if changed:
                self._reindex()
            if enqueue:
                for s in list(self.active.values()):
                    self.push(critical_pairs(rule, s))
                    if s.id != rule.id:
                        self.push(critical_pairs(s, rule))

    def push(self, pairs):
        for sp in pairs:
            heapq.heappush(self.queue, (self.order.key(sp.word), next(self.seq), sp))

    def run(self):
        while True:
            while self.queue:
                self.check_time()
                _, _, sp = heapq.heappop(self.queue)
                if sp.r1 not in self.active or sp.r2 not in self.active:
                    continue
                self.add(s_polynomial(sp))
            pending = self.unjoined()
            if not pending:
                return
            self.push(pending)

    def unjoined(self):
        rules = list(self.active.values())
        return [sp for sp in all_critical_pairs(rules) if self.nf(s_polynomial(sp))]

    def rules(self) -> list:
        ordered = sorted(self.active.values(), key=lambda r: self.order.key(r.lhs))
        return [replace(r, id=i) for i, r in enumerate(ordered)]


def knuth_bendix(generators: Iterable[NCPoly], order: WeightOrder, caps: Caps = Caps(),
                 alphabet: Alphabet | None = None) -> RewritingSystem:
    """Complete ``generators`` into a confluent rewriting system.

    Superpositions are processed smallest ambiguous word first. Each new rule
    interreduces the current system. If a cap trips the returned system is
    sound but flagged ``capped`` and possibly not confluent.
    """
    state = _Completion(order, caps)
    try:
        for g in generators:
            state.add(g)
        state.run()
    except _CapHit as hit:
        log.warning("completion capped by %s", hit)
    rules = state.rules()
    complete = not state.capped
    if state.capped:
        complete = not state.unjoined()
    return RewritingSystem(rules, order, alphabet, complete=complete,
                           capped=state.capped, history=tuple(state.history))


def interreduce(system: RewritingSystem) -> RewritingSystem:
    """Reduce every right side and drop rules whose left side another rule rewrites."""
    state = _Completion(system.order, Caps(None, None, None))
    for r in system.rules:
        state.add(r.poly, enqueue=False)
    return system.with_rules(state.rules(), history=system.history)
