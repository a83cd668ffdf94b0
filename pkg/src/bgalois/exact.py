"""Exact scalars over Q, F_p and Q(q), and univariate polynomials over them.

Every scalar is a :class:`FieldElem` carrying its :class:`Field`; values are kept
in canonical form so that equality is plain representation equality.

>>> q = QQq.gen()
>>> str(-q - q**-1)
'-q - q^-1'
>>> GF(3)(2) * 2
FieldElem(F_3, 1)
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

from . import _qpoly as qp
from .errors import DivisionByZero, FieldMismatch, FieldNotEnumerable

__all__ = [
    "Field",
    "Rationals",
    "PrimeField",
    "RationalFunctions",
    "FieldElem",
    "Poly",
    "QQ",
    "QQq",
    "GF",
    "field_from_json",
    "poly_eval",
    "poly_is_unit",
]

# Exhaustive root search over F_p is used up to this size.
_ENUMERATION_LIMIT = 1 << 16


class Field:
    """A coefficient field. Subclasses are frozen dataclasses, hence hashable."""

    kind: str = ""

    # raw-value arithmetic, implemented by subclasses
    def _canon(self, x): raise NotImplementedError
    def _add(self, a, b): raise NotImplementedError
    def _sub(self, a, b): raise NotImplementedError
    def _mul(self, a, b): raise NotImplementedError
    def _neg(self, a): raise NotImplementedError
    def _inv(self, a): raise NotImplementedError
    def _is_zero(self, a) -> bool: raise NotImplementedError
    def _format(self, a) -> str: raise NotImplementedError
    def _key(self, a): raise NotImplementedError

    characteristic: int = 0

    def __call__(self, x) -> "FieldElem":
        if isinstance(x, FieldElem):
            if x.field != self:
                raise FieldMismatch(f"cannot coerce element of {x.field} into {self}")
            return x
        if isinstance(x, str):
            from .parsing import parse_scalar

            return parse_scalar(x, self)
        return FieldElem(self, self._canon(x))

    @property
    def zero(self) -> "FieldElem":
        return self(0)

    @property
    def one(self) -> "FieldElem":
        return self(1)

    def is_enumerable(self) -> bool:
        return False

    def elements(self) -> Iterator["FieldElem"]:
        raise FieldNotEnumerable(f"{self} cannot be enumerated")

    def random_element(self, rng: random.Random, bound: int = 5) -> "FieldElem":
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Rationals(Field):
    kind = "Q"

    def __str__(self) -> str:
        return "Q"

    def _canon(self, x):
        if isinstance(x, float):
            raise TypeError("floats are not exact scalars")
        return Fraction(x)

    def _add(self, a, b): return a + b
    def _sub(self, a, b): return a - b
    def _mul(self, a, b): return a * b
    def _neg(self, a): return -a

    def _inv(self, a):
        if not a:
            raise DivisionByZero("division by zero in Q")
        return 1 / a

    def _is_zero(self, a) -> bool:
        return not a

    def _format(self, a) -> str:
        return str(a)

    def _key(self, a):
        return (a,)

    def random_element(self, rng, bound=5):
        den = rng.randint(1, 3)
        return self(Fraction(rng.randint(-bound, bound), den))

    def to_json(self) -> dict:
        return {"kind": "Q"}


@dataclass(frozen=True)
class PrimeField(Field):
    p: int = 2
    kind = "Fp"

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def characteristic(self) -> int:  # type: ignore[override]
        return self.p

    def __str__(self) -> str:
        return f"F_{self.p}"

    def _canon(self, x):
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DivisionByZero(f"{x} has no image in F_{self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, float):
            raise TypeError("floats are not exact scalars")
        return int(x) % self.p

    def _add(self, a, b): return (a + b) % self.p
    def _sub(self, a, b): return (a - b) % self.p
    def _mul(self, a, b): return a * b % self.p
    def _neg(self, a): return -a % self.p

    def _inv(self, a):
        if not a:
            raise DivisionByZero(f"division by zero in F_{self.p}")
        return pow(a, -1, self.p)

    def _is_zero(self, a) -> bool:
        return a == 0

    def _format(self, a) -> str:
        return str(a)

    def _key(self, a):
        return (a,)

    def is_enumerable(self) -> bool:
        return True

    def elements(self):
        for r in range(self.p):
            yield FieldElem(self, r)

    def random_element(self, rng, bound=5):
        return FieldElem(self, rng.randrange(self.p))

    def to_json(self) -> dict:
        return {"kind": "Fp", "p": self.p}


@dataclass(frozen=True)
class RationalFunctions(Field):
    """Q(q): values are (numerator, denominator) coefficient tuples, denominator monic."""

    kind = "Qq"

    def __str__(self) -> str:
        return "Q(q)"

    def gen(self) -> "FieldElem":
        return FieldElem(self, ((Fraction(0), Fraction(1)), qp.ONE))

    def _canon(self, x):
        if isinstance(x, tuple):
            num, den = x
            return _rf_normalize(qp.trim(tuple(Fraction(c) for c in num)),
                                 qp.trim(tuple(Fraction(c) for c in den)))
        if isinstance(x, float):
            raise TypeError("floats are not exact scalars")
        return (qp.trim((Fraction(x),)), qp.ONE)

    def _add(self, a, b):
        (an, ad), (bn, bd) = a, b
        if ad == bd:
            if ad == qp.ONE:
                return (qp.add(an, bn), qp.ONE)
            return _rf_normalize(qp.add(an, bn), ad)
        return _rf_normalize(qp.add(qp.mul(an, bd), qp.mul(bn, ad)), qp.mul(ad, bd))

    def _sub(self, a, b):
        return self._add(a, self._neg(b))

    def _neg(self, a):
        return (qp.neg(a[0]), a[1])

    def _mul(self, a, b):
        (an, ad), (bn, bd) = a, b
        if not an or not bn:
            return (qp.ZERO, qp.ONE)
        if ad == qp.ONE and bd == qp.ONE:
            return (qp.mul(an, bn), qp.ONE)
        # cross-cancel before multiplying keeps intermediate degrees small
        g1 = qp.gcd(an, bd)
        g2 = qp.gcd(bn, ad)
        if g1 != qp.ONE:
            an, bd = qp.divmod_(an, g1)[0], qp.divmod_(bd, g1)[0]
        if g2 != qp.ONE:
            bn, ad = qp.divmod_(bn, g2)[0], qp.divmod_(ad, g2)[0]
        num, den = qp.mul(an, bn), qp.mul(ad, bd)
        lc = den[-1]
        if lc != 1:
            num, den = qp.scale(num, 1 / lc), qp.scale(den, 1 / lc)
        return (num, den)

    def _inv(self, a):
        num, den = a
        if not num:
            raise DivisionByZero("division by zero in Q(q)")
        lc = num[-1]
        return (qp.scale(den, 1 / lc), qp.scale(num, 1 / lc))

    def _is_zero(self, a) -> bool:
        return not a[0]

    def _format(self, a) -> str:
        num, den = a
        if den == qp.ONE:
            return _format_laurent(num, 0)
        if qp.is_monomial(den):
            return _format_laurent(num, len(den) - 1)
        return f"({_format_laurent(num, 0)})/({_format_laurent(den, 0)})"

    def _key(self, a):
        num, den = a
        return (len(den), len(num), den, num)

    def random_element(self, rng, bound=3):
        num = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(rng.randint(1, 3)))
        den = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(rng.randint(0, 2))) + (Fraction(1),)
        return self((num, den))

    def to_json(self) -> dict:
        return {"kind": "Qq"}


def _rf_normalize(num: tuple, den: tuple) -> tuple:
    if not den:
        raise DivisionByZero("zero denominator in Q(q)")
    if not num:
        return (qp.ZERO, qp.ONE)
    g = qp.gcd(num, den)
    if g != qp.ONE:
        num, den = qp.divmod_(num, g)[0], qp.divmod_(den, g)[0]
    lc = den[-1]
    if lc != 1:
        num, den = qp.scale(num, 1 / lc), qp.scale(den, 1 / lc)
    return (num, den)


def _format_laurent(coeffs: tuple, shift: int, var: str = "q") -> str:
    """Render sum c_k var^(k - shift), highest power first."""
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c:
            terms.append((c, k - shift))
    if not terms:
        return "0"
    out = ""
    for i, (c, e) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if e == 0:
            body = str(mag)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if i == 0:
            out = ("-" if sign == "-" else "") + body
        else:
            out += f" {sign} {body}"
    return out


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    if p < 10**12:
        return all(p % d for d in range(3, math.isqrt(p) + 1, 2))
    from sympy import isprime

    return bool(isprime(p))


QQ = Rationals()
QQq = RationalFunctions()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_json(d: dict) -> Field:
    kind = d.get("kind")
    if kind == "Q":
        return QQ
    if kind == "Fp":
        return GF(int(d["p"]))
    if kind == "Qq":
        return QQq
    raise ValueError(f"unknown field kind {kind!r}")


class FieldElem:
    """An exact scalar. Use ``field(x)`` to construct one."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def _coerce(self, other) -> "FieldElem | None":
        if isinstance(other, FieldElem):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElem(self.field, self.field._canon(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.field, self.field._add(self.value, o.value))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.field, self.field._sub(self.value, o.value))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.field, self.field._sub(o.value, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.field, self.field._mul(self.value, o.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.field, self.field._mul(self.value, self.field._inv(o.value)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return FieldElem(self.field, self.field._neg(self.value))

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = self.field.one
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "FieldElem":
        return FieldElem(self.field, self.field._inv(self.value))

    def is_zero(self) -> bool:
        return self.field._is_zero(self.value)

    def is_one(self) -> bool:
        return self == self.field.one

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElem):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self.field._canon(other)
            except DivisionByZero:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.kind, self.value))

    def sort_key(self):
        return self.field._key(self.value)

    def __str__(self) -> str:
        return self.field._format(self.value)

    def __repr__(self) -> str:
        return f"FieldElem({self.field}, {self})"


class Poly:
    """Univariate polynomial over a field, coefficients stored lowest degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable = ()):
        cs = [field(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs: tuple[FieldElem, ...] = tuple(cs)

    @classmethod
    def x(cls, field: Field) -> "Poly":
        return cls(field, (0, 1))

    @classmethod
    def const(cls, field: Field, c) -> "Poly":
        return cls(field, (c,))

    @classmethod
    def from_roots(cls, field: Field, roots) -> "Poly":
        out = cls(field, (1,))
        for r in roots:
            out = out * cls(field, (-field(r), 1))
        return out

    @property
    def degree(self):
        """Degree, with -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_unit(self) -> bool:
        return len(self.coeffs) == 1

    @property
    def lc(self) -> FieldElem:
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def coeff(self, k: int) -> FieldElem:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero

    def constant_term(self) -> FieldElem:
        return self.coeff(0)

    def _lift(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction, FieldElem)):
            return Poly(self.field, (other,))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self.field, [self.coeff(i) + o.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return Poly(self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Poly(self.field, (1,))
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, other):
        o = self._lift(other)
        if o.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(o.coeffs)
        if dq < 0:
            return Poly(self.field), self
        inv = o.lc.inverse()
        quot = [self.field.zero] * (dq + 1)
        db = len(o.coeffs) - 1
        for k in range(dq, -1, -1):
            c = rem[k + db] * inv
            quot[k] = c
            if not c.is_zero():
                for j in range(db + 1):
                    rem[k + j] = rem[k + j] - c * o.coeffs[j]
        return Poly(self.field, quot), Poly(self.field, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        quo, rem = divmod(self, other)
        if not rem.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return quo

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        inv = self.lc.inverse()
        return Poly(self.field, [c * inv for c in self.coeffs])

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def derivative(self) -> "Poly":
        return Poly(self.field, [c * k for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        x = self.field(x)
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def scale_var(self, c) -> "Poly":
        """p(c*x)."""
        c = self.field(c)
        return Poly(self.field, [a * c**k for k, a in enumerate(self.coeffs)])

    def reciprocal(self) -> "Poly":
        """x^deg * p(1/x)."""
        return Poly(self.field, list(reversed(self.coeffs)))

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, FieldElem)):
            return self == Poly(self.field, (other,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def to_str(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            cs = str(c)
            if not mono:
                parts.append(f"({cs})" if _needs_parens(cs) else cs)
            elif c.is_one():
                parts.append(mono)
            elif (-c).is_one():
                parts.append(f"-{mono}")
            else:
                parts.append(f"({cs})*{mono}" if _needs_parens(cs) else f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self) -> str:
        return self.to_str("x")

    def __repr__(self) -> str:
        return f"Poly({self.field}, {self.to_str('x')})"

    def roots(self) -> list[tuple[FieldElem, int]]:
        """Roots lying in the field with multiplicities, sorted deterministically."""
        if self.is_zero():
            raise ValueError("the zero polynomial has every element as a root")
        if self.degree == 0:
            return []
        f = self.field
        if isinstance(f, PrimeField) and f.p <= _ENUMERATION_LIMIT:
            found = []
            rest = self
            for r in f.elements():
                mult = 0
                while rest.degree > 0 and rest(r).is_zero():
                    rest = rest // Poly(f, (-r, 1))
                    mult += 1
                if mult:
                    found.append((r, mult))
                if rest.degree <= 0:
                    break
            return found
        from ._roots import sympy_roots

        return sympy_roots(self)

    def splits(self) -> bool:
        return sum(m for _, m in self.roots()) == self.degree


def _needs_parens(s: str) -> bool:
    return any(ch in s for ch in "+/") or (" - " in s) or ("-" in s[1:])


def poly_eval(f: Poly, x) -> FieldElem:
    """Evaluate ``f`` at ``x`` (which must live in the same field)."""
    if isinstance(x, FieldElem) and x.field != f.field:
        raise FieldMismatch(f"{f.field} vs {x.field}")
    return f(x)


def poly_is_unit(f: Poly) -> bool:
    """Units of k[t] over a field are the nonzero constants."""
    return f.is_unit()
