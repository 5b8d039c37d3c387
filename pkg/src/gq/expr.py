"""Expression language: tokenizer, parser, printer and evaluator.

Grammar (lowest precedence first)::

    program   := statement (';' statement)*
    statement := 'let' NAME '=' compare | compare
    compare   := sum (('==' | '!=' | '<=' | '>=') sum)?
    sum       := product (('+' | '-') product)*
    product   := unary (('*' | '/') unary)*
    unary     := '-' unary | power
    power     := postfix ('^' exponent)?
    exponent  := '-' exponent | primary
    postfix   := primary ('i' | 'j' | 'k')?        # only when written adjacent: 2k, (e^1)i
    primary   := NUMBER | NAME | NAME '(' args ')' | '(' sum ')' | scalar
    scalar    := '{' SET ':' sum ('|' SET ':' sum)* '}'

``e`` is the asymptotic parameter, ``i j k`` the quaternion units and SET a
block set literal ``pre=<bits>;per=<bits>``.  Multiplication never reorders
its factors.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Optional, Union

from gq import oracle
from gq.blocksets import BlockSet
from gq.errors import GQError, ZeroInput
from gq.ghquat import GenQuaternion
from gq.gnum import GenScalar, alpha, chi
from gq.ideals import FgIdeal
from gq.puiseux import PuiseuxGerm


class ParseError(GQError):
    meaning = "the input is not a well-formed expression"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class EvalError(GQError):
    """A library error raised while evaluating a subexpression."""

    def __init__(self, cause: Exception, node: Optional["Node"] = None):
        self.cause = cause
        self.node = node
        where = f" in `{to_text(node)}`" if node is not None else ""
        if isinstance(cause, GQError):
            text = cause.describe()
        else:
            text = f"{type(cause).__name__}: {cause}"
        super().__init__(text + where)

    @property
    def name(self) -> str:
        return type(self.cause).__name__

    @property
    def meaning(self) -> str:  # type: ignore[override]
        return getattr(self.cause, "meaning", "")


# -- tokens ----------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<set>pre=[01]*;per=[01]+)
  | (?P<number>\d+\.\d*(?:[eE][+-]?\d+)?|\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*\??)
  | (?P<op>==|!=|<=|>=|[-+*/^(),{}|:=;])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    start: int
    end: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), m.start(), m.end()))
        pos = m.end()
    tokens.append(Token("end", "", len(text), len(text)))
    return tokens


# -- syntax tree -----------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Union[int, float]


@dataclass(frozen=True)
class Name:
    id: str


@dataclass(frozen=True)
class SetLit:
    text: str


@dataclass(frozen=True)
class ScalarLit:
    branches: tuple


@dataclass(frozen=True)
class Unary:
    op: str
    operand: Any


@dataclass(frozen=True)
class Binary:
    op: str
    left: Any
    right: Any


@dataclass(frozen=True)
class Power:
    base: Any
    exponent: Any


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple


@dataclass(frozen=True)
class Compare:
    op: str
    left: Any
    right: Any


@dataclass(frozen=True)
class Let:
    name: str
    value: Any


Node = Union[Num, Name, SetLit, ScalarLit, Unary, Binary, Power, Call, Compare, Let]

_UNITS = ("i", "j", "k")


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if self.tok.kind == "op" and self.tok.text == text:
            return self.next()
        raise ParseError(f"expected {text!r}, found {self.tok.text or 'end of input'!r}", self.tok.start)

    def program(self) -> list:
        stmts = [self.statement()]
        while self.accept(";"):
            if self.tok.kind == "end":
                break
            stmts.append(self.statement())
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.start)
        return stmts

    def statement(self):
        if self.tok.kind == "name" and self.tok.text == "let":
            self.next()
            name = self.next()
            if name.kind != "name":
                raise ParseError("expected a name after 'let'", name.start)
            self.expect("=")
            return Let(name.text, self.compare())
        return self.compare()

    def compare(self):
        left = self.sum()
        if self.tok.kind == "op" and self.tok.text in ("==", "!=", "<=", ">="):
            op = self.next().text
            return Compare(op, left, self.sum())
        return left

    def sum(self):
        node = self.product()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.next().text
            node = Binary(op, node, self.product())
        return node

    def product(self):
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.next().text
            node = Binary(op, node, self.unary())
        return node

    def unary(self):
        if self.accept("-"):
            return Unary("-", self.unary())
        return self.power()

    def power(self):
        base = self.postfix()
        if self.accept("^"):
            return Power(base, self.exponent())
        return base

    def exponent(self):
        if self.accept("-"):
            return Unary("-", self.exponent())
        return self.primary()

    def postfix(self):
        node = self.primary()
        prev = self.tokens[self.i - 1]
        t = self.tok
        if t.kind == "name" and t.text in _UNITS and t.start == prev.end:
            self.next()
            node = Binary("*", node, Name(t.text))
        return node

    def primary(self):
        t = self.tok
        if t.kind == "number":
            self.next()
            return Num(float(t.text) if "." in t.text else int(t.text))
        if t.kind == "name":
            self.next()
            if self.accept("("):
                args = []
                if not self.accept(")"):
                    args.append(self.argument())
                    while self.accept(","):
                        args.append(self.argument())
                    self.expect(")")
                return Call(t.text, tuple(args))
            return Name(t.text)
        if self.accept("("):
            node = self.sum()
            self.expect(")")
            return node
        if self.accept("{"):
            branches = [self.branch()]
            while self.accept("|"):
                branches.append(self.branch())
            self.expect("}")
            return ScalarLit(tuple(branches))
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.start)

    def argument(self):
        if self.tok.kind == "set":
            return SetLit(self.next().text)
        return self.sum()

    def branch(self):
        t = self.next()
        if t.kind != "set":
            raise ParseError("expected a block set literal pre=...;per=...", t.start)
        self.expect(":")
        return (SetLit(t.text), self.sum())


def parse(text: str):
    """Parse one statement."""
    stmts = _Parser(text).program()
    if len(stmts) != 1:
        raise ParseError("expected a single statement", 0)
    return stmts[0]


def parse_program(text: str) -> list:
    return _Parser(text).program()


# -- printing --------------------------------------------------------------

_PREC = {"compare": 1, "+": 2, "-": 2, "*": 3, "/": 3, "unary": 4, "power": 5, "atom": 6}


def _prec(node) -> int:
    if isinstance(node, (Compare, Let)):
        return 1
    if isinstance(node, Binary):
        return _PREC[node.op]
    if isinstance(node, Unary):
        return 4
    if isinstance(node, Power):
        return 5
    return 6


def format_float(x: float) -> str:
    text = repr(x)
    if "." not in text and "e" in text:
        mant, exp = text.split("e")
        text = f"{mant}.0e{exp}"
    elif "." not in text:
        text += ".0"
    return text


def to_text(node) -> str:
    """Canonical text; ``parse(to_text(node)) == node``."""
    if isinstance(node, Num):
        return format_float(node.value) if isinstance(node.value, float) else str(node.value)
    if isinstance(node, Name):
        return node.id
    if isinstance(node, SetLit):
        return node.text
    if isinstance(node, ScalarLit):
        return "{" + " | ".join(f"{s.text} : {to_text(v)}" for s, v in node.branches) + "}"
    if isinstance(node, Call):
        return f"{node.name}({', '.join(to_text(a) for a in node.args)})"
    if isinstance(node, Let):
        return f"let {node.name} = {to_text(node.value)}"
    if isinstance(node, Compare):
        return f"{_wrap(node.left, 2)} {node.op} {_wrap(node.right, 2)}"
    if isinstance(node, Unary):
        return f"-{_wrap(node.operand, 4)}"
    if isinstance(node, Power):
        exp = node.exponent
        exp_text = to_text(exp) if isinstance(exp, (Num, Name, Call)) else f"({to_text(exp)})"
        return f"{_wrap(node.base, 6)}^{exp_text}"
    if isinstance(node, Binary):
        p = _PREC[node.op]
        return f"{_wrap(node.left, p)} {node.op} {_wrap(node.right, p + 1)}"
    raise TypeError(f"not an expression node: {node!r}")


def _wrap(node, min_prec: int) -> str:
    text = to_text(node)
    return f"({text})" if _prec(node) < min_prec else text


# -- values ----------------------------------------------------------------


def format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "None"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        if value == math.inf:
            return "inf"
        return format_float(value)
    if isinstance(value, tuple):
        return "(" + ", ".join(format_value(v) for v in value) + ")"
    if isinstance(value, list):
        return "\n".join(format_value(v) for v in value)
    if isinstance(value, oracle.OracleReport):
        line = f"{value.decision}: {value.verdict} (margin {value.margin:.3g})"
        if value.counterexample:
            eps, v = value.counterexample
            line += f" counterexample eps={eps:.6g} value={v:.6g}"
        return line
    return str(value)


def value_to_json(value):
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return {"type": "rational", "value": str(value)}
    if isinstance(value, float):
        return {"type": "real", "value": "inf" if value == math.inf else value}
    if isinstance(value, GenScalar):
        return {"type": "scalar", **value.to_json()}
    if isinstance(value, GenQuaternion):
        return {"type": "quaternion", **value.to_json()}
    if isinstance(value, BlockSet):
        return {"type": "blockset", "value": str(value)}
    if isinstance(value, FgIdeal):
        return {
            "type": "ideal",
            "ring": value.ring,
            "generators": [value_to_json(g) for g in value.generators],
            "normal_form": {"g": value_to_json(value.generator), "supp": str(value.support)},
        }
    if isinstance(value, oracle.OracleReport):
        return {"type": "oracle", **value.to_json()}
    if isinstance(value, dict):
        return {k: value_to_json(v) for k, v in value.items()}
    if isinstance(value, (tuple, list)):
        return [value_to_json(v) for v in value]
    return {"type": "text", "value": str(value)}


# -- evaluation -----------------------------------------------------------


def _rational(value, what="argument") -> Fraction:
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, GenScalar) and value.period == 1:
        g = value.germs[0]
        if g.is_exact and not g.terms:
            return Fraction(0)
        if g.is_exact and len(g.terms) == 1 and g.terms[0][0] == 0:
            return g.terms[0][1]
    raise TypeError(f"{what} must be an exact rational constant, got {format_value(value)}")


def _element(value):
    if isinstance(value, (int, float, Fraction)):
        return GenScalar.const(value)
    if isinstance(value, (GenScalar, GenQuaternion)):
        return value
    raise TypeError(f"expected a scalar or quaternion, got {format_value(value)}")


def _quat(value) -> GenQuaternion:
    return GenQuaternion.coerce(_element(value))


def _set(value) -> BlockSet:
    if isinstance(value, BlockSet):
        return value
    raise TypeError("expected a block set literal pre=...;per=...")


def _order_arg(args, n):
    return _rational(args[n], "order") if len(args) > n else None


def _norm(x, *rest):
    return _quat(x).norm(_order_arg((x, *rest), 1))


def _invert(x, *rest):
    return _element(x).invert(_order_arg((x, *rest), 1))


def _sqrt(x, *rest):
    x = _element(x)
    if isinstance(x, GenQuaternion):
        raise TypeError("sqrt is defined for scalars")
    return x.sqrt(_order_arg((x, *rest), 1))


def _annihilator(x):
    x = _element(x)
    if isinstance(x, GenQuaternion):
        return x.zero_divisor_witness()
    return x.annihilator_idempotent()


def _idem(x):
    result = _element(x).is_idempotent()
    return "NotIdempotent" if result is None else result


def _shadow(x):
    x = _element(x)
    s = x.shadow()
    if s is None or isinstance(x, GenScalar):
        return s
    return GenQuaternion(*s)


def _ideal(gens) -> FgIdeal:
    return FgIdeal([_element(g) for g in gens])


def _polar(x, *rest):
    return _quat(x).polar(_order_arg((x, *rest), 1))


def _oracle(x):
    x = _element(x)
    reports = [oracle.check_unit_threshold(x), oracle.check_association(x)]
    if isinstance(x, GenScalar):
        reports.append(oracle.check_qpositivity(x))
    return reports


def _residual(x):
    r = _element(x).residual_order()
    return r if r == math.inf else Fraction(r)


def _vanishing(x):
    v = _valuation(x)
    return "R" if v == math.inf else f"(-inf, {v})"


def _valuation(x):
    v = _element(x).valuation()
    return v if v == math.inf else Fraction(v)


FUNCTIONS: dict[str, Callable] = {
    "alpha": lambda r: alpha(_rational(r, "exponent")),
    "chi": lambda s: chi(_set(s)),
    "O": lambda x: GenScalar.from_germ(PuiseuxGerm.big_o(_valuation(x))),
    "norm": _norm,
    "normsq": lambda x: _quat(x).normsq(),
    "conj": lambda x: _quat(x).conj() if isinstance(x, GenQuaternion) else _element(x),
    "V": _valuation,
    "A": _vanishing,
    "sharpnorm": lambda x: _element(x).sharp_norm(),
    "d": lambda x, y: _quat(x).distance(_quat(y)),
    "dpi": lambda x, y: _quat(x).product_distance(_quat(y)),
    "shadow": _shadow,
    "associates?": lambda x, y: _element(x).associates(_element(y)),
    "sqrt": _sqrt,
    "abs": lambda x: abs(_element(x)),
    "invert": _invert,
    "unit?": lambda x: _element(x).is_unit(),
    "qpos?": lambda x: _element(x).is_qpositive(),
    "idem?": _idem,
    "annihilator": _annihilator,
    "exchange": lambda x: _element(x).exchange_idempotent(),
    "unitnear": lambda x, s: _element(x).unit_within_radius(_rational(s, "radius")),
    "polar": _polar,
    "residual": _residual,
    "bezout": lambda *gens: _ideal(gens).generator,
    "ideal": lambda *gens: _ideal(gens),
    "member": lambda x, *gens: _element(x) in _ideal(gens),
    "essential": lambda *gens: _ideal(gens).is_essential(),
    "proper": lambda *gens: _ideal(gens).is_proper(),
    "rann": lambda *gens: _ideal(gens).right_annihilator_idempotent() or "Zero",
    "oracle": _oracle,
}


def default_env() -> dict:
    return {
        "e": alpha(1),
        "i": GenQuaternion.basis("i"),
        "j": GenQuaternion.basis("j"),
        "k": GenQuaternion.basis("k"),
    }


def _scale_exponent(value) -> Optional[Fraction]:
    """``s`` when ``value`` is exactly the monomial ``e**s``."""
    if isinstance(value, GenScalar) and value.period == 1:
        g = value.germs[0]
        if g.is_exact and len(g.terms) == 1 and g.terms[0][1] == 1 and g.terms[0][0] != 0:
            return g.terms[0][0]
    return None


def _arith(op: str, a, b):
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        if b == 0:
            raise ZeroInput("division by 0")
        return Fraction(a) / Fraction(b)
    if isinstance(a, (int, float, Fraction)):
        a = GenScalar.const(a)
    return a / b


def _compare(op: str, a, b) -> bool:
    a, b = _element(a), _element(b)
    if op == "==":
        return a == b
    if op == "!=":
        return a != b
    if op == "<=":
        return GenScalar.coerce(a).order_leq(b) if not isinstance(a, GenQuaternion) else _no_order()
    return GenScalar.coerce(b).order_leq(a) if not isinstance(b, GenQuaternion) else _no_order()


def _no_order():
    raise TypeError("quaternions are not ordered")


def evaluate(node, env: Optional[dict] = None):
    """Evaluate a statement; ``let`` binds into ``env`` and returns the value."""
    env = default_env() if env is None else env
    try:
        return _eval(node, env)
    except EvalError:
        raise
    except (GQError, ArithmeticError, TypeError, ValueError) as exc:
        raise EvalError(exc, node) from exc


def _eval(node, env):
    try:
        return _dispatch(node, env)
    except EvalError:
        raise
    except (GQError, ArithmeticError, TypeError, ValueError) as exc:
        raise EvalError(exc, node) from exc


def _dispatch(node, env):
    if isinstance(node, Num):
        return node.value if isinstance(node.value, float) else Fraction(node.value)
    if isinstance(node, Name):
        if node.id not in env:
            raise ValueError(f"unbound name {node.id!r}")
        return env[node.id]
    if isinstance(node, SetLit):
        return BlockSet.parse(node.text)
    if isinstance(node, ScalarLit):
        parts = []
        for s, v in node.branches:
            value = _element(_eval(v, env))
            if not isinstance(value, GenScalar) or value.period != 1:
                raise TypeError("branch values must be single germs")
            parts.append((BlockSet.parse(s.text), value.germs[0]))
        return GenScalar.from_branches(parts)
    if isinstance(node, Let):
        value = _eval(node.value, env)
        env[node.name] = value
        return value
    if isinstance(node, Unary):
        return -_eval(node.operand, env)
    if isinstance(node, Binary):
        return _arith(node.op, _eval(node.left, env), _eval(node.right, env))
    if isinstance(node, Power):
        exp = _rational(_eval(node.exponent, env), "exponent")
        base = _eval(node.base, env)
        scale = _scale_exponent(base)
        if scale is not None:
            return alpha(scale * exp)
        if exp.denominator != 1:
            raise ValueError("only e may be raised to a fractional power")
        if isinstance(base, (int, Fraction)):
            if base == 0 and exp < 0:
                raise ZeroInput("0 has no inverse")
            return Fraction(base) ** int(exp)
        return _element(base) ** int(exp)
    if isinstance(node, Compare):
        return _compare(node.op, _eval(node.left, env), _eval(node.right, env))
    if isinstance(node, Call):
        fn = FUNCTIONS.get(node.name)
        if fn is None:
            raise ValueError(f"unknown function {node.name!r}")
        args = [_eval(a, env) for a in node.args]
        return fn(*args)
    raise TypeError(f"not an expression node: {node!r}")


def run(text: str, env: Optional[dict] = None):
    """Parse and evaluate a ``;``-separated program; return the last value."""
    env = default_env() if env is None else env
    result = None
    for stmt in parse_program(text):
        result = evaluate(stmt, env)
    return result
