"""Minimal arithmetic-expression compiler for problem config files.

Grammar (one free variable, e.g. ``t`` for coefficients or ``u`` for
nonlinearities)::

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := ('+' | '-') unary | power
    power := atom ('^' unary)?
    atom  := NUMBER | VAR | FUNC '(' expr ')' | '(' expr ')'

Supported functions: exp, sin, sqrt.  ``^`` is right-associative and binds
tighter than unary minus, so ``-u^2`` reads ``-(u^2)``.  Compilation yields
a numpy-vectorized callable; no ``eval`` is involved.
"""

from __future__ import annotations

import re

import numpy as np

from .errors import ConfigError

_FUNCTIONS = {"exp": np.exp, "sin": np.sin, "sqrt": np.sqrt}

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ConfigError(f"unexpected character {text[pos]!r} at position {pos}")
        if m.group("num") is not None:
            tokens.append(("num", float(m.group("num"))))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name")))
        else:
            tokens.append(("op", m.group("op")))
        pos = m.end()
    tokens.append(("end", None))
    return tokens


class _Parser:
    def __init__(self, text, var):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.var = var
        self.text = text

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, symbol):
        kind, value = self.take()
        if kind != "op" or value != symbol:
            raise ConfigError(f"expected {symbol!r} in {self.text!r}")

    def parse(self):
        node = self.expr()
        if self.peek()[0] != "end":
            raise ConfigError(f"trailing input in {self.text!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            op = self.take()[1]
            rhs = self.term()
            if op == "+":
                node = (lambda a, b: lambda x: a(x) + b(x))(node, rhs)
            else:
                node = (lambda a, b: lambda x: a(x) - b(x))(node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.peek() == ("op", "*") or self.peek() == ("op", "/"):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                node = (lambda a, b: lambda x: a(x) * b(x))(node, rhs)
            else:
                node = (lambda a, b: lambda x: a(x) / b(x))(node, rhs)
        return node

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            inner = self.unary()
            return lambda x: -inner(x)
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            exponent = self.unary()
            return (lambda a, b: lambda x: a(x) ** b(x))(base, exponent)
        return base

    def atom(self):
        kind, value = self.take()
        if kind == "num":
            return lambda x, v=value: np.full_like(np.asarray(x, dtype=float), v) if np.ndim(x) else v
        if kind == "name":
            if value == self.var:
                return lambda x: np.asarray(x, dtype=float) if np.ndim(x) else float(x)
            if value in _FUNCTIONS:
                fn = _FUNCTIONS[value]
                self.expect_op("(")
                inner = self.expr()
                self.expect_op(")")
                return (lambda f, a: lambda x: f(a(x)))(fn, inner)
            raise ConfigError(
                f"unknown name {value!r} (variable is {self.var!r}, "
                f"functions are {sorted(_FUNCTIONS)})"
            )
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ConfigError(f"unexpected token in {self.text!r}")


def compile_expression(text: str, var: str):
    """Compile ``text`` into a callable of the single variable ``var``."""
    if not isinstance(text, str) or not text.strip():
        raise ConfigError("expression must be a non-empty string")
    return _Parser(text, var).parse()
