"""The scalar expression grammar used by job files and reports.

Accepted: integers, the symbol ``q`` (only over Q(q)), the symbol ``t`` (only in
path entries), ``^`` for integer powers, ``*``, ``/``, ``+``, ``-`` and
parentheses.  ``^`` binds tighter than ``*``/``/``, which bind tighter than
``+``/``-``.  Whitespace is ignored.
"""

from __future__ import annotations

import ast
import re

from .errors import DivisionByZero, ParseError
from .exact import Field, FieldElem, Poly, RationalFunctions

_ALLOWED = re.compile(r"^[0-9qt+\-*/^()\s]*$")


def _parse_tree(text: str) -> ast.expr:
    if not isinstance(text, str):
        raise ParseError(f"expected a string scalar, got {type(text).__name__}")
    if not text.strip():
        raise ParseError("empty expression")
    if not _ALLOWED.match(text) or "**" in text:
        raise ParseError(f"illegal character in {text!r}")
    try:
        return ast.parse(text.strip().replace("^", "**"), mode="eval").body
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None


def _evaluate(node: ast.expr, field: Field, allow_t: bool, text: str):
    ev = lambda n: _evaluate(n, field, allow_t, text)  # noqa: E731
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, int):
            raise ParseError(f"non-integer literal in {text!r}")
        return field(node.value)
    if isinstance(node, ast.Name):
        if node.id == "q":
            if not isinstance(field, RationalFunctions):
                raise ParseError(f"symbol q is only available over Q(q): {text!r}")
            return field.gen()
        if node.id == "t":
            if not allow_t:
                raise ParseError(f"symbol t is reserved for path entries: {text!r}")
            return Poly.x(field)
        raise ParseError(f"unknown symbol {node.id!r} in {text!r}")
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = ev(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            exp = _evaluate_int(node.right, text)
            base = ev(node.left)
            if isinstance(base, Poly) and exp < 0:
                raise ParseError(f"negative power of t in {text!r}")
            return base**exp
        left, right = ev(node.left), ev(node.right)
        try:
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if isinstance(right, Poly):
                    if not right.is_constant():
                        raise ParseError(f"division by a polynomial in t in {text!r}")
                    right = right.constant_term()
                if isinstance(left, Poly):
                    return left * right.inverse()
                return left / right
        except DivisionByZero as exc:
            raise ParseError(f"division by zero in {text!r}") from exc
    raise ParseError(f"unsupported construct in {text!r}")


def _evaluate_int(node: ast.expr, text: str) -> int:
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _evaluate_int(node.operand, text)
        return -v if isinstance(node.op, ast.USub) else v
    raise ParseError(f"exponent must be an integer literal in {text!r}")


def parse_scalar(text: str, field: Field) -> FieldElem:
    value = _evaluate(_parse_tree(text), field, False, text)
    return value


def parse_path_entry(text: str, field: Field) -> Poly:
    value = _evaluate(_parse_tree(text), field, True, text)
    if isinstance(value, FieldElem):
        return Poly(field, (value,))
    return value


def format_path_entry(f: Poly) -> str:
    return f.to_str("t")
