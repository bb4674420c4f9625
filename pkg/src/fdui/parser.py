"""Expression language for the command line.

Grammar (precedence ^ > unary minus > * / > + -)::

    input  := value ['@N=' INT]
    value  := expr
    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ['^' ['-'] INT]
    atom   := NUM | RATI | 'x' | 'y' | 't' | 'e' | 'i' | '(' expr ')' | call
    call   := ('diff' | 'vf' | 'curve') '(' expr sep expr ')'
            | 'group' '(' [NAME '='] expr (sep [NAME '='] expr)* ')'
    sep    := ',' | ';'

``e`` is the transcendental parameter, ``i`` the imaginary unit.  A
literal such as ``1/2i`` written without spaces means (1/2) i, which keeps
printed Gaussian rationals readable back.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from gmpy2 import mpq

from .curve import CurveError, CurveParam
from .diffeo import DiffeoError, FormalDiffeo
from .groups import GeneratedGroup, GroupError
from .scalar import EPS, I, inv, is_zero
from .series import DEFAULT_TRUNC, BiSeries, SeriesError, UniSeries
from .vfield import FormalVectorField, VectorFieldError


class ParseError(ValueError):
    def __init__(self, message, text="", pos=0, expected=()):
        self.message = message
        self.pos = pos
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.expected = sorted(set(expected))
        extra = f"; expected one of {', '.join(self.expected)}" if self.expected else ""
        super().__init__(f"{self.line}:{self.column}: {message}{extra}")

    def to_json(self):
        return {"error": self.message, "line": self.line, "column": self.column, "expected": self.expected}


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<trunc>@N=\d+)
  | (?P<rati>\d+/\d+i(?![A-Za-z0-9_]))
  | (?P<num>\d+i?(?![A-Za-z0-9_]))
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/^(),;=])
    """,
    re.VERBOSE,
)

CALLS = ("diff", "vf", "curve", "group")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), pos))
        pos = m.end()
    out.append(Token("eof", "", len(text)))
    return out


@dataclass
class Node:
    kind: str  # num | var | neg | bin | pow | call
    span: tuple
    value: object = None
    children: list = field(default_factory=list)
    label: str = None  # generator name inside group(...)


@dataclass
class InputAst:
    root: Node
    text: str
    trunc: int = None


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, expected=(), tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok.pos, expected)

    def expect(self, text):
        t = self.peek()
        if t.text != text:
            self.fail(f"unexpected {t.text or 'end of input'!r}", [repr(text)])
        return self.take()

    def parse(self):
        root = self.expr()
        trunc = None
        if self.peek().kind == "trunc":
            trunc = int(self.take().text[3:])
        if self.peek().kind != "eof":
            self.fail(f"unexpected {self.peek().text!r}", ["'+'", "'-'", "'*'", "'/'", "'@N='", "end of input"])
        return InputAst(root, self.text, trunc)

    def expr(self):
        node = self.term()
        while self.peek().text in ("+", "-"):
            op = self.take().text
            rhs = self.term()
            node = Node("bin", (node.span[0], rhs.span[1]), op, [node, rhs])
        return node

    def term(self):
        node = self.unary()
        while self.peek().text in ("*", "/"):
            op = self.take().text
            rhs = self.unary()
            node = Node("bin", (node.span[0], rhs.span[1]), op, [node, rhs])
        return node

    def unary(self):
        if self.peek().text == "-":
            t = self.take()
            inner = self.unary()
            return Node("neg", (t.pos, inner.span[1]), None, [inner])
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().text != "^":
            return base
        self.take()
        sign = 1
        if self.peek().text == "-":
            self.take()
            sign = -1
        t = self.peek()
        if t.kind != "num" or t.text.endswith("i"):
            self.fail("exponent must be an integer", ["integer"])
        self.take()
        return Node("pow", (base.span[0], t.pos + len(t.text)), sign * int(t.text), [base])

    def atom(self):
        t = self.peek()
        end = t.pos + len(t.text)
        if t.kind == "num":
            self.take()
            if t.text.endswith("i"):
                return Node("num", (t.pos, end), mpq(int(t.text[:-1])) * I)
            return Node("num", (t.pos, end), mpq(int(t.text)))
        if t.kind == "rati":
            self.take()
            p, q = t.text[:-1].split("/")
            if int(q) == 0:
                self.fail("division by zero", tok=t)
            return Node("num", (t.pos, end), mpq(int(p), int(q)) * I)
        if t.kind == "name":
            if t.text in ("x", "y", "t", "e", "i"):
                self.take()
                return Node("var", (t.pos, end), t.text)
            if t.text in CALLS:
                return self.call()
            self.fail(f"unknown name {t.text!r}", ["x", "y", "t", "e", "i", *CALLS, "number", "'('"])
        if t.text == "(":
            self.take()
            node = self.expr()
            close = self.expect(")")
            node.span = (t.pos, close.pos + 1)
            return node
        self.fail(
            f"unexpected {t.text or 'end of input'!r}",
            ["x", "y", "t", "e", "i", *CALLS, "number", "'('", "'-'"],
        )

    def call(self):
        name = self.take()
        self.expect("(")
        args = []
        while True:
            label = None
            if name.text == "group" and self.peek().kind == "name" and self.toks[self.i + 1].text == "=":
                label = self.take().text
                self.take()
            arg = self.expr()
            arg.label = label
            args.append(arg)
            if self.peek().text in (",", ";"):
                self.take()
                continue
            break
        close = self.peek()
        if close.text != ")":
            self.fail(f"unexpected {close.text or 'end of input'!r}", ["')'", "','", "';'"])
        self.take()
        if name.text != "group" and len(args) != 2:
            raise ParseError("expected two components", self.text, name.pos)
        return Node("call", (name.pos, close.pos + 1), name.text, args)


def parse_input(text: str) -> InputAst:
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# evaluation


class EvalError(ValueError):
    def __init__(self, message, ast=None, node=None):
        self.message = message
        pos = node.span[0] if node is not None else 0
        text = ast.text if ast is not None else ""
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{self.line}:{self.column}: {message}")

    def to_json(self):
        return {"error": self.message, "line": self.line, "column": self.column}


def _kind(v):
    if isinstance(v, BiSeries):
        return "bivariate series"
    if isinstance(v, UniSeries):
        return "series in t"
    if isinstance(v, FormalDiffeo):
        return "diffeomorphism"
    if isinstance(v, FormalVectorField):
        return "vector field"
    if isinstance(v, CurveParam):
        return "curve"
    if isinstance(v, GeneratedGroup):
        return "group"
    return "scalar"


_ALGEBRAIC = ("scalar", "bivariate series", "series in t")


def evaluate(ast: InputAst, trunc=DEFAULT_TRUNC):
    """Turn the syntax tree into a value; ``@N=`` in the text wins over ``trunc``."""
    n = ast.trunc if ast.trunc is not None else trunc
    try:
        v = _eval(ast.root, n, ast)
        # products of t-series may know more than N terms; inputs live at N
        return v.jet(n) if isinstance(v, (UniSeries, BiSeries, CurveParam)) else v
    except EvalError:
        raise
    except (SeriesError, DiffeoError, VectorFieldError, CurveError, GroupError, ZeroDivisionError) as exc:
        raise EvalError(str(exc) or type(exc).__name__, ast, ast.root) from exc


def _as_bi(v, n):
    return v if isinstance(v, BiSeries) else BiSeries.const(v, n)


def _as_uni(v, n):
    return v if isinstance(v, UniSeries) else UniSeries.const(v, n)


def _eval(node: Node, n, ast):
    k = node.kind
    if k == "num":
        return node.value
    if k == "var":
        return {
            "x": lambda: BiSeries.x(n),
            "y": lambda: BiSeries.y(n),
            "t": lambda: UniSeries.t(n),
            "e": lambda: EPS,
            "i": lambda: I,
        }[node.value]()
    if k == "neg":
        v = _eval(node.children[0], n, ast)
        _need_algebraic(v, node, ast)
        return -v
    if k == "pow":
        v = _eval(node.children[0], n, ast)
        _need_algebraic(v, node, ast)
        e = node.value
        if _kind(v) == "scalar":
            if e < 0:
                if is_zero(v):
                    raise EvalError("division by zero", ast, node)
                return inv(v) ** (-e)
            return v ** e
        if e < 0:
            v = v.reciprocal()
            e = -e
        return v ** e
    if k == "bin":
        a = _eval(node.children[0], n, ast)
        b = _eval(node.children[1], n, ast)
        _need_algebraic(a, node.children[0], ast)
        _need_algebraic(b, node.children[1], ast)
        ka, kb = _kind(a), _kind(b)
        if "scalar" not in (ka, kb) and ka != kb:
            raise EvalError(f"cannot combine {ka} and {kb}", ast, node)
        op = node.value
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "*":
            return a * b
        if kb == "scalar":
            if is_zero(b):
                raise EvalError("division by zero", ast, node.children[1])
            return a * inv(b)
        if ka == "scalar":
            b_rec = b.reciprocal()
            return b_rec.scale(a)
        return a / b
    if k == "call":
        return _eval_call(node, n, ast)
    raise EvalError(f"unknown node {k}", ast, node)


def _need_algebraic(v, node, ast):
    if _kind(v) not in _ALGEBRAIC:
        raise EvalError(f"{_kind(v)} cannot take part in arithmetic", ast, node)


def _eval_call(node, n, ast):
    name = node.value
    args = [_eval(c, n, ast) for c in node.children]
    if name == "group":
        gens, names = [], []
        for c, v in zip(node.children, args):
            if not isinstance(v, FormalDiffeo):
                raise EvalError(f"group generators must be diffeomorphisms, got {_kind(v)}", ast, c)
            gens.append(v)
            names.append(c.label)
        if all(x is None for x in names):
            names = None
        elif any(x is None for x in names):
            raise EvalError("either name every generator or none", ast, node)
        return GeneratedGroup(gens, names)
    for c, v in zip(node.children, args):
        if _kind(v) not in _ALGEBRAIC:
            raise EvalError(f"component must be a series, got {_kind(v)}", ast, c)
    if name == "curve":
        for c, v in zip(node.children, args):
            if isinstance(v, BiSeries):
                raise EvalError("curve components are series in t", ast, c)
        return CurveParam(_as_uni(args[0], n).jet(n), _as_uni(args[1], n).jet(n))
    for c, v in zip(node.children, args):
        if isinstance(v, UniSeries):
            raise EvalError("components are series in x and y", ast, c)
    a, b = _as_bi(args[0], n), _as_bi(args[1], n)
    if name == "diff":
        return FormalDiffeo(a, b)
    return FormalVectorField(a, b)


def parse_value(text, trunc=DEFAULT_TRUNC):
    return evaluate(parse_input(text), trunc)


def format_value(v):
    from .scalar import to_str

    if _kind(v) == "scalar":
        return to_str(v)
    if isinstance(v, GeneratedGroup):
        return "group(" + "; ".join(f"{nm}=diff{g.format()}" for nm, g in zip(v.names, v.generators)) + ")"
    if isinstance(v, FormalDiffeo):
        return "diff" + v.format()
    return v.format()


__all__ = [
    "ParseError", "EvalError", "InputAst", "Node", "tokenize", "parse_input", "evaluate",
    "parse_value", "format_value",
]
