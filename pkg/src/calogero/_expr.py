"""Small arithmetic parser for input-function expressions.

Grammar: numbers, the variable x, constants pi and e, operators + - * / ^,
functions exp, sin, cos, sqrt, ln.  Parsed through the ast module with a
whitelist walk; nothing else evaluates.
"""

from __future__ import annotations

import ast

import numpy as np

__all__ = ["ExpressionError", "compile_expression"]

_FUNCTIONS = {
    "exp": np.exp,
    "sin": np.sin,
    "cos": np.cos,
    "sqrt": np.sqrt,
    "ln": np.log,
}
_CONSTANTS = {"pi": np.pi, "e": np.e}
_BINOPS = {
    ast.Add: np.add,
    ast.Sub: np.subtract,
    ast.Mult: np.multiply,
    ast.Div: np.divide,
    ast.Pow: np.power,
}


class ExpressionError(ValueError):
    pass


def _eval(node, x):
    if isinstance(node, ast.Expression):
        return _eval(node.body, x)
    if isinstance(node, ast.Constant):
        if isinstance(node.value, (int, float)):
            return float(node.value)
        raise ExpressionError(f"unsupported constant {node.value!r}")
    if isinstance(node, ast.Name):
        if node.id == "x":
            return x
        if node.id in _CONSTANTS:
            return _CONSTANTS[node.id]
        raise ExpressionError(f"unknown name '{node.id}'")
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval(node.left, x), _eval(node.right, x))
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand, x)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.Call):
        if not isinstance(node.func, ast.Name) or node.keywords or len(node.args) != 1:
            raise ExpressionError("only f(expr) calls with one argument")
        if node.func.id not in _FUNCTIONS:
            raise ExpressionError(f"unknown function '{node.func.id}'")
        return _FUNCTIONS[node.func.id](_eval(node.args[0], x))
    raise ExpressionError(f"unsupported syntax: {ast.dump(node)}")


def compile_expression(text: str):
    """Compile an expression in x into a vectorized callable."""
    source = text.replace("^", "**")
    try:
        tree = ast.parse(source, mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse expression: {exc.msg}") from exc

    def fn(x):
        return np.asarray(_eval(tree, np.asarray(x, dtype=float)), dtype=float)

    fn.source = text
    return fn
