# field_parser.py
"""
Expression language for coefficient functions of local frames.

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' INT)?
    base   := NUMBER | 'x'|'y'|'z' | ('sin'|'cos'|'exp') '(' expr ')' | '(' expr ')' | '-' base

Parsed fields are immutable trees evaluated with numpy over arrays of points.
Columns in error messages are 0-based offsets into the source text.
"""

import math
import threading
from dataclasses import dataclass

import numpy as np
from arpeggio import EOF, NoMatch, Optional, ParserPython, Terminal, ZeroOrMore
from arpeggio import RegExMatch as _

from .errors import FieldEvaluationError, FieldSyntaxError, UnknownIdentifierError

VARIABLES = ('x', 'y', 'z')
FUNCTIONS = {'sin': np.sin, 'cos': np.cos, 'exp': np.exp}

# |denominator| below this aborts evaluation
DIVISION_GUARD = 1e-12


# ==========================================
# EXPRESSION TREE
# ==========================================

class Node:
    """Base class of expression tree nodes"""


@dataclass(frozen=True)
class Const(Node):
    value: float


@dataclass(frozen=True)
class Var(Node):
    name: str


@dataclass(frozen=True)
class Neg(Node):
    operand: Node


@dataclass(frozen=True)
class BinOp(Node):
    op: str
    left: Node
    right: Node


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exponent: int


@dataclass(frozen=True)
class Call(Node):
    func: str
    arg: Node


def _evaluate(node, coords):
    if isinstance(node, Const):
        return np.full(coords[0].shape, node.value, dtype=float)
    if isinstance(node, Var):
        return coords[VARIABLES.index(node.name)]
    if isinstance(node, Neg):
        return -_evaluate(node.operand, coords)
    if isinstance(node, Pow):
        return _evaluate(node.base, coords) ** node.exponent
    if isinstance(node, Call):
        return FUNCTIONS[node.func](_evaluate(node.arg, coords))

    left = _evaluate(node.left, coords)
    right = _evaluate(node.right, coords)
    if node.op == '+':
        return left + right
    if node.op == '-':
        return left - right
    if node.op == '*':
        return left * right
    if np.any(np.abs(right) < DIVISION_GUARD):
        raise FieldEvaluationError(f"division by (near) zero in {serialize_node(node)}")
    return left / right


def serialize_node(node) -> str:
    if isinstance(node, Const):
        return repr(float(node.value))
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        return f"-({serialize_node(node.operand)})"
    if isinstance(node, Pow):
        return f"({serialize_node(node.base)})^{node.exponent}"
    if isinstance(node, Call):
        return f"{node.func}({serialize_node(node.arg)})"
    return f"({serialize_node(node.left)} {node.op} {serialize_node(node.right)})"


def _count(node) -> int:
    if isinstance(node, (Const, Var)):
        return 1
    if isinstance(node, (Neg, Call)):
        return 1 + _count(node.operand if isinstance(node, Neg) else node.arg)
    if isinstance(node, Pow):
        return 1 + _count(node.base)
    return 1 + _count(node.left) + _count(node.right)


@dataclass(frozen=True)
class ScalarField:
    """A real coefficient function on the chart"""
    tree: Node

    def evaluate(self, points) -> np.ndarray:
        """points: array (..., 3); returns values of shape (...)"""
        points = np.asarray(points, dtype=float)
        coords = tuple(points[..., i] for i in range(3))
        return np.asarray(_evaluate(self.tree, coords), dtype=float)

    def __call__(self, point) -> float:
        return float(self.evaluate(np.asarray(point, dtype=float)))

    def serialize(self) -> str:
        return serialize_node(self.tree)

    def node_count(self) -> int:
        return _count(self.tree)

    @classmethod
    def constant(cls, value):
        return cls(Const(float(value)))


# ==========================================
# GRAMMAR
# ==========================================

def number():       return _(r'(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?')
def integer():      return _(r'\d+')
def function_name(): return _(r'[A-Za-z_][A-Za-z_0-9]*(?=\s*\()')
def variable():     return _(r'[A-Za-z_][A-Za-z_0-9]*')
def addop():        return _(r'[+\-]')
def mulop():        return _(r'[*/]')
def call():         return function_name, "(", expr, ")"
def group():        return "(", expr, ")"
def negation():     return "-", base
def base():         return [number, call, variable, group, negation]
def factor():       return base, Optional("^", integer)
def term():         return factor, ZeroOrMore(mulop, factor)
def expr():         return term, ZeroOrMore(addop, term)
def field():        return expr, EOF


_LEAVES = ('number', 'integer', 'function_name', 'variable', 'addop', 'mulop')


def _leaf(node):
    name, text = node.rule_name, node.value
    if name == 'number':
        value = float(text)
        if not math.isfinite(value):
            raise FieldSyntaxError(f"non-finite numeric literal '{text}'", node.position)
        return Const(value)
    if name == 'integer':
        return int(text)
    if name == 'function_name':
        if text not in FUNCTIONS:
            raise UnknownIdentifierError(f"unknown function '{text}'", node.position)
        return text
    if name == 'variable':
        if text not in VARIABLES:
            raise UnknownIdentifierError(f"unknown identifier '{text}'", node.position)
        return Var(text)
    return text


def _fold(items):
    result = items[0]
    for op, operand in zip(items[1::2], items[2::2]):
        result = BinOp(op, result, operand)
    return result


_BUILDERS = {
    'call': lambda items: Call(items[0], items[1]),
    'negation': lambda items: Neg(items[0]),
    'factor': lambda items: Pow(items[0], items[1]) if len(items) == 2 else items[0],
    'term': _fold,
    'expr': _fold,
}


def _build(node):
    """Flattened items of a parse tree node; punctuation drops out"""
    if isinstance(node, Terminal):
        return [_leaf(node)] if node.rule_name in _LEAVES else []
    items = [item for child in node for item in _build(child)]
    builder = _BUILDERS.get(node.rule_name)
    return [builder(items)] if builder else items


_parser = None
_parser_lock = threading.Lock()


def parse_field(text: str) -> ScalarField:
    global _parser
    with _parser_lock:
        if _parser is None:
            _parser = ParserPython(field)
        try:
            tree = _parser.parse(text)
        except NoMatch as e:
            raise FieldSyntaxError(f"syntax error in '{text}'", e.position)
    return ScalarField(_build(tree)[0])


def serialize_field(f: ScalarField) -> str:
    return f.serialize()
