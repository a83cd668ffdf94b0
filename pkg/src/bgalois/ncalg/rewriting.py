"""Degree-bounded completion of a presentation into a rewriting system (diamond lemma),
normal forms, and filtration dimensions computed two independent ways."""

from __future__ import annotations

import heapq
import itertools
import random
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from ..errors import BudgetExhausted, DegreeOutOfRange
from . import words as W
from .presentation import Presentation

DEFAULT_DEGREE_BOUND = 4
DEFAULT_BUDGET = 1_000_000


class _Counter:
    __slots__ = ("left",)

    def __init__(self, budget: int):
        self.left = budget

    def tick(self):
        self.left -= 1
        if self.left < 0:
            raise _OutOfSteps


class _OutOfSteps(Exception):
    pass


def _find_rule(w, rules, lengths):
    """Leftmost occurrence of a rule's leading word inside w."""
    n = len(w)
    # i = n lets a constant rule (empty leading word) match the empty word
    for i in range(n + 1):
        for ln in lengths:
            if i + ln > n:
                break
            tail = rules.get(w[i:i + ln])
            if tail is not None:
                return i, ln, tail
    return None


def _reduce(poly, rules, lengths, counter: _Counter | None = None):
    """Full reduction, always rewriting the largest remaining word first."""
    work = dict(poly)
    heap = [(W.max_first_key(w), w) for w in work]
    heapq.heapify(heap)
    out = {}
    while heap:
        _, w = heapq.heappop(heap)
        c = work.pop(w, None)
        if c is None or c.is_zero():
            continue
        hit = _find_rule(w, rules, lengths)
        if hit is None:
            out[w] = c
            continue
        if counter is not None:
            counter.tick()
        i, ln, tail = hit
        pre, suf = w[:i], w[i + ln:]
        for tw, tc in tail.items():
            nw = pre + tw + suf
            old = work.get(nw)
            if old is None:
                work[nw] = c * tc
                heapq.heappush(heap, (W.max_first_key(nw), nw))
            else:
                work[nw] = old + c * tc
    return out


@dataclass
class RewriteSystem:
    """Rules lead -> tail (tail strictly smaller in deglex), complete through ``confluent_up_to``."""

    presentation: Presentation
    rules: dict
    degree_bound: int
    confluent_up_to: int
    steps_used: int = 0
    _lengths: tuple = dc_field(default=(), repr=False)
    _memo: dict = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._lengths = tuple(sorted({len(w) for w in self.rules}))

    @property
    def field(self):
        return self.presentation.field

    def rule_list(self) -> list[tuple]:
        return sorted(self.rules.items(), key=lambda kv: W.deglex_key(kv[0]))

    def is_reducible(self, w) -> bool:
        return _find_rule(w, self.rules, self._lengths) is not None

    def _nf_word(self, w) -> dict:
        hit = self._memo.get(w)
        if hit is not None:
            return hit
        found = _find_rule(w, self.rules, self._lengths)
        if found is None:
            res = {w: self.field.one}
        else:
            i, ln, tail = found
            res = {}
            for tw, tc in tail.items():
                W.add_into(res, self._nf_word(w[:i] + tw + w[i + ln:]), tc)
        self._memo[w] = res
        return res

    def reduce(self, poly, check_degree: bool = True) -> dict:
        if check_degree and W.degree(poly) > self.confluent_up_to:
            raise DegreeOutOfRange(
                f"degree {W.degree(poly)} exceeds the verified confluence degree {self.confluent_up_to}")
        out = {}
        for w, c in poly.items():
            W.add_into(out, self._nf_word(w), c)
        return out

    def reduce_randomly(self, poly, rng: random.Random) -> dict:
        """Reduce along a random choice of term and rule occurrence at every step."""
        work = W.clean(poly)
        while True:
            options = []
            for w in work:
                for i in range(len(w) + 1):
                    for ln in self._lengths:
                        if i + ln <= len(w) and w[i:i + ln] in self.rules:
                            options.append((w, i, ln))
            if not options:
                return work
            w, i, ln = rng.choice(options)
            c = work.pop(w)
            W.add_into(work, W.wrap(w[:i], self.rules[w[i:i + ln]], w[i + ln:]), c)

    def irreducible_words(self, degree: int) -> list[list[tuple]]:
        """Irreducible words grouped by length 0..degree."""
        if W.EMPTY in self.rules:
            return [[] for _ in range(degree + 1)]
        levels = [[W.EMPTY]]
        for _ in range(degree):
            nxt = []
            for w in levels[-1]:
                for g in range(self.presentation.ngens):
                    nw = w + (g,)
                    if not any(len(nw) >= ln and nw[len(nw) - ln:] in self.rules for ln in self._lengths):
                        nxt.append(nw)
            levels.append(nxt)
        return levels

    def element(self, poly) -> "AlgebraElement":
        return AlgebraElement(self, self.reduce(poly))

    def gen(self, name_or_index) -> "AlgebraElement":
        i = name_or_index if isinstance(name_or_index, int) else self.presentation.generators.index(name_or_index)
        return self.element(W.gen(self.field, i))

    def one(self) -> "AlgebraElement":
        return self.element(W.const(self.field, 1))


def _add_pairs(heap, rules, versions, new_lead, bound, seq):
    for other in list(rules):
        for u, v in ((new_lead, other), (other, new_lead)) if other != new_lead else ((new_lead, new_lead),):
            for k in range(1, min(len(u), len(v))):
                if u[len(u) - k:] == v[:k]:
                    deg = len(u) + len(v) - k
                    if deg <= bound:
                        heapq.heappush(heap, (deg, next(seq), u, versions[u], v, versions[v], k))


def complete(p: Presentation, degree_bound: int = DEFAULT_DEGREE_BOUND,
             budget: int = DEFAULT_BUDGET) -> RewriteSystem:
    """Buchberger-style completion restricted to overlap words of degree <= degree_bound.

    Ambiguities are processed by increasing degree, so on budget exhaustion the
    partial system is still complete through the last fully processed degree.
    """
    if degree_bound < 2:
        raise ValueError("degree_bound must be >= 2")
    return _complete_cached(p, degree_bound, budget)


@lru_cache(maxsize=64)
def _complete_cached(p: Presentation, degree_bound: int, budget: int) -> RewriteSystem:
    field = p.field
    rules: dict = {}
    versions: dict = {}
    lengths: list = []
    counter = _Counter(budget)
    heap: list = []
    seq = itertools.count()
    version_seq = itertools.count()
    pending = [dict(r) for r in p.relations]

    def refresh_lengths():
        lengths[:] = sorted({len(w) for w in rules})

    def absorb(poly):
        queue = [poly]
        while queue:
            g = _reduce(queue.pop(), rules, lengths, counter)
            if not g:
                continue
            lw = W.lead(g)
            inv = g[lw].inverse()
            tail = {w: -(c * inv) for w, c in g.items() if w != lw}
            for other in [o for o in rules if o != lw and W.is_subword(lw, o)]:
                queue.append(W.add({other: field.one}, W.scale(rules.pop(other), -field.one)))
                versions.pop(other)
            rules[lw] = tail
            versions[lw] = next(version_seq)
            refresh_lengths()
            _add_pairs(heap, rules, versions, lw, degree_bound, seq)

    current_degree = 0
    try:
        for r in pending:
            absorb(r)
        while heap:
            deg, _, u, vu, v, vv, k = heapq.heappop(heap)
            current_degree = deg
            if versions.get(u) != vu or versions.get(v) != vv:
                continue
            spoly = W.sub(W.wrap((), rules[u], v[k:]), W.wrap(u[:len(u) - k], rules[v], ()))
            absorb(spoly)
    except _OutOfSteps:
        done = max(0, min([current_degree - 1] + [h[0] - 1 for h in heap]))
        partial = _finish(p, rules, degree_bound, done, budget)
        raise BudgetExhausted(f"step budget {budget} exhausted; complete through degree {done}", partial)
    return _finish(p, rules, degree_bound, degree_bound, budget - counter.left)


def _finish(p, rules, bound, confluent, used) -> RewriteSystem:
    lengths = sorted({len(w) for w in rules})
    reduced = {}
    for lw, tail in rules.items():
        reduced[lw] = _reduce(tail, rules, lengths)
    return RewriteSystem(p, reduced, bound, min(confluent, bound), used)


@dataclass(frozen=True)
class AlgebraElement:
    system: RewriteSystem
    value: dict

    def _lift(self, other) -> dict:
        if isinstance(other, AlgebraElement):
            return other.value
        return W.const(self.system.field, other)

    def __add__(self, other):
        return AlgebraElement(self.system, W.add(self.value, self._lift(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return AlgebraElement(self.system, W.sub(self.value, self._lift(other)))

    def __neg__(self):
        return AlgebraElement(self.system, W.scale(self.value, -self.system.field.one))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.system.element(W.mul(self.value, other.value))
        return AlgebraElement(self.system, W.scale(self.value, self.system.field(other)))

    def __rmul__(self, other):
        return AlgebraElement(self.system, W.scale(self.value, self.system.field(other)))

    def __eq__(self, other) -> bool:
        if isinstance(other, AlgebraElement):
            return self.system is other.system and self.value == other.value
        return self.value == self._lift(other)

    def __hash__(self):
        return hash(frozenset(self.value.items()))

    def is_zero(self) -> bool:
        return not self.value

    @property
    def degree(self) -> int:
        return W.degree(self.value)

    def __str__(self) -> str:
        return W.to_str(self.value, self.system.presentation.generators)

    __repr__ = __str__


def normal_form(e: AlgebraElement) -> AlgebraElement:
    """Normal form of e; raises DegreeOutOfRange past the verified confluence degree."""
    return AlgebraElement(e.system, e.system.reduce(e.value))


@dataclass(frozen=True)
class FiltrationDims:
    rewriting: tuple[int, ...]
    oracle: tuple[int, ...]
    confluent_up_to: int

    @property
    def agree(self) -> bool:
        return self.rewriting == self.oracle


def dims_by_rewriting(system: RewriteSystem, d: int) -> tuple[int, ...]:
    if d > system.confluent_up_to:
        raise DegreeOutOfRange(f"degree {d} exceeds the verified confluence degree {system.confluent_up_to}")
    levels = system.irreducible_words(d)
    return tuple(itertools.accumulate(len(lv) for lv in levels))


def dims_by_truncated_ideal(p: Presentation, d: int, slack: int = 2) -> tuple[int, ...]:
    """Codimension of (span of u r v, deg <= d + slack) inside the words of degree <= e, for e = 0..d.

    Sparse row echelon form with deglex-largest pivots: a reduced row whose
    leading word has degree <= e lies entirely in degree <= e.
    """
    top = d + slack
    g = p.ngens
    rels = [dict(r) for r in p.relations]
    words_by_len = [list(itertools.product(range(g), repeat=k)) for k in range(top + 1)]
    pivots: dict = {}
    for r in rels:
        rd = W.degree(r)
        if rd < 0:
            continue
        for lu in range(top - rd + 1):
            for lv in range(top - rd - lu + 1):
                for u in words_by_len[lu]:
                    for v in words_by_len[lv]:
                        row = W.wrap(u, r, v)
                        while row:
                            lw = W.lead(row)
                            piv = pivots.get(lw)
                            if piv is None:
                                inv = row[lw].inverse()
                                pivots[lw] = {w: c * inv for w, c in row.items()}
                                break
                            W.add_into(row, piv, -row[lw])
    lead_counts = [0] * (top + 1)
    for lw in pivots:
        lead_counts[len(lw)] += 1
    out, total, killed = [], 0, 0
    for e in range(d + 1):
        total += g ** e
        killed += lead_counts[e]
        out.append(total - killed)
    return tuple(out)


def filtration_dims(p: Presentation, d: int, degree_bound: int | None = None,
                    budget: int = DEFAULT_BUDGET) -> FiltrationDims:
    """Dimensions of the filtration pieces of degree 0..d, by normal words and by the ideal oracle."""
    bound = degree_bound if degree_bound is not None else max(DEFAULT_DEGREE_BOUND, d + 2)
    system = complete(p, bound, budget)
    return FiltrationDims(dims_by_rewriting(system, d), dims_by_truncated_ideal(p, d), system.confluent_up_to)
