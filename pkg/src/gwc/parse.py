"""Small safe arithmetic-expression evaluator built on :mod:`ast`.

Accepts integers, rationals written as ``a/b``, the operators ``+ - * / ^ **``
and parentheses.  ``2x`` and ``)(`` are read as implicit products.
"""

from __future__ import annotations

import ast
import re
from fractions import Fraction
from typing import Callable, Mapping

from .errors import ParseError

_IMPLICIT = [
    (re.compile(r"(\d)\s*([A-Za-z(])"), r"\1*\2"),
    (re.compile(r"\)\s*([A-Za-z0-9(])"), r")*\1"),
]


def normalize(text: str) -> str:
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}")
    s = text.strip().replace("^", "**").replace("−", "-").replace("·", "*")
    for pat, rep in _IMPLICIT:
        s = pat.sub(rep, s)
    return s


def evaluate(text: str, symbols: Mapping[str, object], lift: Callable[[Fraction], object]):
    """Evaluate ``text`` with ``symbols`` bound; numeric literals pass through ``lift``."""
    src = normalize(text)
    if not src:
        raise ParseError("empty expression")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return lift(Fraction(node.value))
        if isinstance(node, ast.Name):
            if node.id not in symbols:
                raise ParseError(f"unknown symbol {node.id!r} in {text!r}")
            return symbols[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = _int_exponent(node.right, text)
                return ev(node.left) ** exp
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                try:
                    return left / right
                except ZeroDivisionError:
                    raise ParseError(f"division by zero in {text!r}") from None
                except TypeError:
                    raise ParseError(f"unsupported division in {text!r}") from None
        raise ParseError(f"unsupported syntax in {text!r}")

    return ev(tree)


def _int_exponent(node, text) -> int:
    sign = 1
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        sign, node = -1, node.operand
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        if sign < 0:
            raise ParseError(f"negative exponent in {text!r}")
        return node.value
    raise ParseError(f"exponent must be a non-negative integer literal in {text!r}")


def parse_rational(text) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    value = evaluate(str(text), {}, lambda q: q)
    return Fraction(value)
