"""Root finding over Q, Q(q) and large prime fields, backed by sympy factorization."""

from __future__ import annotations

from fractions import Fraction

import sympy

from .exact import FieldElem, Poly, PrimeField, Rationals, RationalFunctions

_X = sympy.Symbol("x")
_Q = sympy.Symbol("q")


def _qq_tuple_to_expr(coeffs) -> sympy.Expr:
    return sum((sympy.Rational(c.numerator, c.denominator) * _Q**k for k, c in enumerate(coeffs)),
               sympy.Integer(0))


def _to_sympy(f: Poly) -> sympy.Poly:
    field = f.field
    if isinstance(field, Rationals):
        cs = [sympy.Rational(c.value.numerator, c.value.denominator) for c in f.coeffs]
        return sympy.Poly(list(reversed(cs)), _X, domain="QQ")
    if isinstance(field, PrimeField):
        cs = [int(c.value) for c in f.coeffs]
        return sympy.Poly(list(reversed(cs)), _X, modulus=field.p)
    # Q(q): clear denominators to land in Q[q][x]
    expr = sympy.Integer(0)
    for k, c in enumerate(f.coeffs):
        num, den = c.value
        expr += _qq_tuple_to_expr(num) / _qq_tuple_to_expr(den) * _X**k
    numer = sympy.numer(sympy.together(expr))
    return sympy.Poly(sympy.expand(numer), _X, _Q, domain="QQ")


def _expr_to_field(expr, field) -> FieldElem:
    if isinstance(field, Rationals):
        r = sympy.Rational(expr)
        return field(Fraction(int(r.p), int(r.q)))
    if isinstance(field, PrimeField):
        return field(int(expr))
    num, den = sympy.fraction(sympy.cancel(sympy.together(expr)))
    def coeffs(e):
        p = sympy.Poly(e, _Q, domain="QQ")
        cs = list(reversed(p.all_coeffs()))
        return tuple(Fraction(int(c.p), int(c.q)) for c in cs)
    return field((coeffs(num), coeffs(den)))


def sympy_roots(f: Poly) -> list[tuple[FieldElem, int]]:
    field = f.field
    sp = _to_sympy(f)
    _, factors = sp.factor_list()
    found: dict = {}
    for fac, mult in factors:
        if isinstance(field, RationalFunctions):
            if fac.degree(_X) != 1:
                continue
            a = fac.as_expr().coeff(_X, 1)
            b = fac.as_expr().coeff(_X, 0)
            root = _expr_to_field(-b / a, field)
        else:
            if fac.degree() != 1:
                continue
            a, b = fac.all_coeffs()
            if isinstance(field, PrimeField):
                root = field(-int(b) * pow(int(a), -1, field.p))
            else:
                root = _expr_to_field(-b / a, field)
        found[root] = found.get(root, 0) + int(mult)
    return sorted(found.items(), key=lambda rm: rm[0].sort_key())
