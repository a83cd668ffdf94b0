"""Dense univariate polynomials over Q as tuples of Fractions (constant term first).

Internal helpers backing the field Q(q); nothing here knows about FieldElem.
"""

from __future__ import annotations

from fractions import Fraction

ZERO: tuple = ()
ONE: tuple = (Fraction(1),)


def trim(c) -> tuple:
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def add(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return trim(out)


def neg(a: tuple) -> tuple:
    return tuple(-x for x in a)


def sub(a: tuple, b: tuple) -> tuple:
    return add(a, neg(b))


def scale(a: tuple, c: Fraction) -> tuple:
    if not c:
        return ZERO
    return tuple(x * c for x in a)


def mul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ZERO
    if len(a) == 1:
        return scale(b, a[0])
    if len(b) == 1:
        return scale(a, b[0])
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def divmod_(a: tuple, b: tuple) -> tuple[tuple, tuple]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return ZERO, a
    r = list(a)
    db = len(b) - 1
    inv = 1 / b[-1]
    quot = [Fraction(0)] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = r[k + db] * inv
        quot[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] -= c * b[j]
    return trim(quot), trim(r[:db])


def monic(a: tuple) -> tuple:
    if not a or a[-1] == 1:
        return a
    return scale(a, 1 / a[-1])


def gcd(a: tuple, b: tuple) -> tuple:
    """Monic gcd; gcd(0, 0) = 0."""
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def is_monomial(a: tuple) -> bool:
    return bool(a) and all(not x for x in a[:-1])


def evaluate(a: tuple, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc
