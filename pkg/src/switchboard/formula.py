"""Quantifier-free formulas over labeled switchboards.

Grammar (``!`` binds tighter than ``&``, which binds tighter than ``|``)::

    formula := conj ('|' conj)*
    conj    := unary ('&' unary)*
    unary   := '!' unary | '(' formula ')' | atom
    atom    := lt(t,t,t,t) | up(t,t,t) | down(t,t,t) | eq(t,t)
    t       := variable | '@' element-id

``up(a, b, c)`` reads "a favors {b, c}".  Order and label atoms are false
whenever an edge argument has coinciding endpoints.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Union

from .core import LabeledSwitchboard, edge
from .errors import FormatError, PreconditionError
from .order import FinitePoset

ARITY = {"lt": 4, "up": 3, "down": 3, "eq": 2}


class FormulaSyntaxError(FormatError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class ArityError(FormulaSyntaxError):
    pass


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    element: int


Term = Union[Var, Const]


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, Not, And, Or]

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<const>@\d+)|(?P<punct>[()!&|,])|(?P<bad>\S))")


def _tokenize(text: str):
    out = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == m.start() or m.lastgroup is None:
            break
        if m.lastgroup == "bad":
            raise FormulaSyntaxError(f"unexpected character {m.group('bad')!r}", m.start("bad"))
        out.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, value=None):
        tok = self.tokens[self.i]
        if value is not None and tok[1] != value:
            shown = repr(tok[1]) if tok[0] != "end" else "end of input"
            raise FormulaSyntaxError(f"expected {value!r}, found {shown}", tok[2])
        self.i += 1
        return tok

    def formula(self):
        node = self.conj()
        while self.peek()[1] == "|":
            self.take()
            node = Or(node, self.conj())
        return node

    def conj(self):
        node = self.unary()
        while self.peek()[1] == "&":
            self.take()
            node = And(node, self.unary())
        return node

    def unary(self):
        kind, value, pos = self.peek()
        if value == "!":
            self.take()
            return Not(self.unary())
        if value == "(":
            self.take()
            node = self.formula()
            self.take(")")
            return node
        if kind == "ident" and value in ARITY:
            return self.atom()
        shown = repr(value) if kind != "end" else "end of input"
        raise FormulaSyntaxError(f"expected an atom, '!' or '(', found {shown}", pos)

    def atom(self):
        _, pred, pos = self.take()
        self.take("(")
        args = [self.term()]
        while self.peek()[1] == ",":
            self.take()
            args.append(self.term())
        self.take(")")
        if len(args) != ARITY[pred]:
            raise ArityError(f"{pred} takes {ARITY[pred]} arguments, got {len(args)}", pos)
        return Atom(pred, tuple(args))

    def term(self):
        kind, value, pos = self.take()
        if kind == "const":
            return Const(int(value[1:]))
        if kind == "ident" and value not in ARITY:
            return Var(value)
        shown = repr(value) if kind != "end" else "end of input"
        raise FormulaSyntaxError(f"expected a variable or constant, found {shown}", pos)


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    node = p.formula()
    kind, value, pos = p.peek()
    if kind != "end":
        raise FormulaSyntaxError(f"trailing input {value!r}", pos)
    return node


def _term_str(t: Term) -> str:
    return t.name if isinstance(t, Var) else f"@{t.element}"


_PREC = {Or: 0, And: 1, Not: 2, Atom: 3}


def to_text(f: Formula) -> str:
    def go(node, min_prec):
        prec = _PREC[type(node)]
        if isinstance(node, Atom):
            s = f"{node.pred}({','.join(_term_str(a) for a in node.args)})"
        elif isinstance(node, Not):
            s = "!" + go(node.arg, 2)
        else:
            op = " | " if isinstance(node, Or) else " & "
            # left-associative: a right child of the same precedence needs parens
            s = go(node.left, prec) + op + go(node.right, prec + 1)
        return f"({s})" if prec < min_prec else s

    return go(f, 0)


def variables(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        return {a.name for a in f.args if isinstance(a, Var)}
    if isinstance(f, Not):
        return variables(f.arg)
    return variables(f.left) | variables(f.right)


def constants(f: Formula) -> set[int]:
    if isinstance(f, Atom):
        return {a.element for a in f.args if isinstance(a, Const)}
    if isinstance(f, Not):
        return constants(f.arg)
    return constants(f.left) | constants(f.right)


def _holds(m: LabeledSwitchboard, pred: str, vals) -> bool:
    if pred == "eq":
        return vals[0] == vals[1]
    if pred == "lt":
        a, b, c, d = vals
        return a != b and c != d and m.less(edge(a, b), edge(c, d))
    a, b, c = vals
    if b == c:
        return False
    if pred == "up":
        return m.favors(a, edge(b, c))
    return m.disfavors(a, edge(b, c))


def evaluate(m: LabeledSwitchboard, f: Formula, assignment: dict) -> bool:
    if isinstance(f, Atom):
        vals = []
        for t in f.args:
            if isinstance(t, Const):
                if not 0 <= t.element < m.n:
                    raise PreconditionError(f"unknown constant @{t.element}")
                vals.append(t.element)
            else:
                if t.name not in assignment:
                    raise PreconditionError(f"unassigned variable {t.name}")
                vals.append(assignment[t.name])
        return _holds(m, f.pred, vals)
    if isinstance(f, Not):
        return not evaluate(m, f.arg, assignment)
    if isinstance(f, And):
        return evaluate(m, f.left, assignment) and evaluate(m, f.right, assignment)
    return evaluate(m, f.left, assignment) or evaluate(m, f.right, assignment)


def phi_sets(m: LabeledSwitchboard, f: Formula, obj_vars, param_vars) -> dict:
    """Map each parameter tuple (repeats allowed) to its set of satisfying object tuples."""
    obj_vars, param_vars = list(obj_vars), list(param_vars)
    both = obj_vars + param_vars
    if len(set(both)) != len(both):
        raise PreconditionError("object and parameter variables must be distinct")
    undeclared = variables(f) - set(both)
    if undeclared:
        raise PreconditionError(f"undeclared variables: {', '.join(sorted(undeclared))}")
    bad = sorted(c for c in constants(f) if not 0 <= c < m.n)
    if bad:
        raise PreconditionError(f"unknown constant @{bad[0]}")
    out = {}
    objs = list(itertools.product(range(m.n), repeat=len(obj_vars)))
    for b in itertools.product(range(m.n), repeat=len(param_vars)):
        env = dict(zip(param_vars, b))
        chosen = []
        for a in objs:
            env.update(zip(obj_vars, a))
            if evaluate(m, f, env):
                chosen.append(a)
        out[b] = frozenset(chosen)
    return out


def phi_poset(m: LabeledSwitchboard, f: Formula, obj_vars, param_vars) -> FinitePoset:
    """Parameter tuples ordered by strict inclusion of their φ-sets."""
    sets = phi_sets(m, f, obj_vars, param_vars)
    keys = list(sets)
    pairs = frozenset((b, c) for b in keys for c in keys if sets[b] < sets[c])
    return FinitePoset(tuple(keys), pairs)
