"""Noncommutative polynomials: dicts from words (tuples of generator indices) to FieldElem."""

from __future__ import annotations

from typing import Iterable, Mapping

Word = tuple
NCPoly = dict

EMPTY: Word = ()


def deglex_key(w: Word) -> tuple:
    """Sort key for the degree-lexicographic order (larger key = larger word)."""
    return (len(w), w)


def max_first_key(w: Word) -> tuple:
    """Heap key so that heapq pops the deglex-largest word first."""
    return (-len(w), tuple(-x for x in w))


def clean(p: Mapping) -> NCPoly:
    return {w: c for w, c in p.items() if not c.is_zero()}


def const(field, c) -> NCPoly:
    c = field(c)
    return {} if c.is_zero() else {EMPTY: c}


def gen(field, i: int) -> NCPoly:
    return {(i,): field.one}


def add_into(acc: NCPoly, p: Mapping, scale=None) -> NCPoly:
    """acc += scale * p, in place; zero coefficients are dropped."""
    for w, c in p.items():
        if scale is not None:
            c = c * scale
        old = acc.get(w)
        if old is None:
            if not c.is_zero():
                acc[w] = c
        else:
            s = old + c
            if s.is_zero():
                del acc[w]
            else:
                acc[w] = s
    return acc


def add(p: Mapping, q: Mapping) -> NCPoly:
    return add_into(dict(p), q)


def sub(p: Mapping, q: Mapping) -> NCPoly:
    out = dict(p)
    for w, c in q.items():
        add_into(out, {w: -c})
    return out


def scale(p: Mapping, c) -> NCPoly:
    if c.is_zero():
        return {}
    return {w: v * c for w, v in p.items()}


def mul(p: Mapping, q: Mapping) -> NCPoly:
    out: NCPoly = {}
    for u, a in p.items():
        for v, b in q.items():
            add_into(out, {u + v: a * b})
    return out


def product(field, factors: Iterable[Mapping]) -> NCPoly:
    out: NCPoly = {EMPTY: field.one}
    for f in factors:
        out = mul(out, f)
    return out


def wrap(prefix: Word, p: Mapping, suffix: Word) -> NCPoly:
    return {prefix + w + suffix: c for w, c in p.items()}


def lead(p: Mapping) -> Word:
    return max(p, key=deglex_key)


def degree(p: Mapping) -> int:
    return max((len(w) for w in p), default=-1)


def is_subword(small: Word, big: Word) -> bool:
    n, k = len(big), len(small)
    return any(big[i:i + k] == small for i in range(n - k + 1))


def to_str(p: Mapping, names: Iterable[str]) -> str:
    names = list(names)
    if not p:
        return "0"
    parts = []
    for w in sorted(p, key=deglex_key, reverse=True):
        c = p[w]
        mono = "*".join(names[i] for i in w)
        if not mono:
            parts.append(str(c))
        elif c.is_one():
            parts.append(mono)
        elif (-c).is_one():
            parts.append("-" + mono)
        else:
            cs = str(c)
            if any(ch in cs[1:] for ch in "+-") or "/" in cs:
                cs = f"({cs})"
            parts.append(f"{cs}*{mono}")
    out = " + ".join(parts)
    return out.replace("+ -", "- ")
