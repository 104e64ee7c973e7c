"""Expression grammar, matrix literals and the input-document format.

Expressions use integers, ``x``, ``+ - * / ^`` and parentheses.  Exponents
are integers, except that ``(x - a)^(p/q)`` is accepted in tower entries.
Tower entries may also use ``exp(r)``, ``log(x - b)`` and named parameters.
There are no floating-point literals.

Document statements, one per line (a bracketed literal may span lines;
``#`` starts a comment)::

    A = [[0, 1/x], [0, 0]]
    tower F = [[1, log(x)], [0, 1]]
    param z3 cyclotomic 3
    galois g: log(x) += c1; x^(1/2) *= -1; exp(x) *= z3
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import MatRF, Poly, RatFn
from .closedform import ClosedFormScalar, GaloisGen, cf_exp, cf_log, cf_power
from .errors import ExprSyntaxError, InconsistentRowLength
from .params import ParamPoly

__all__ = [
    "parse_expr",
    "parse_ratfn",
    "parse_matrix",
    "parse_closed_form",
    "parse_tower_matrix",
    "parse_document",
    "InputDocument",
]

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>\+=|\*=|[-+*/^()\[\],;:=])"
)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str, line: int = 1, col: int = 1) -> list:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            ch = text[pos]
            what = "floating-point literals are not allowed" if ch == "." else f"unexpected character {ch!r}"
            raise ExprSyntaxError(what, line, col)
        s = m.group()
        if m.lastgroup != "ws":
            toks.append(Token(m.lastgroup, s, line, col))
        for ch in s:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        pos = m.end()
    toks.append(Token("end", "", line, col))
    return toks


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ExprSyntaxError(msg, tok.line, tok.col)

    def accept(self, text):
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            got = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, got {got!r}")

    def expect_end(self):
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")

    # expr := term (('+'|'-') term)*
    def expr(self):
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tok
            self.i += 1
            node = ("add" if op.text == "+" else "sub", node, self.term(), op)
        return node

    def term(self):
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.tok
            self.i += 1
            node = ("mul" if op.text == "*" else "div", node, self.unary(), op)
        return node

    def unary(self):
        if self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tok
            self.i += 1
            inner = self.unary()
            return ("neg", inner, op) if op.text == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            op = self.tok
            self.i += 1
            return ("pow", base, self.exponent(), op)
        return base

    def exponent(self) -> Fraction:
        if self.accept("("):
            neg = self.accept("-")
            num = self.integer()
            den = 1
            if self.accept("/"):
                den = self.integer()
                if den == 0:
                    raise self.error("zero denominator in exponent")
            self.expect(")")
            e = Fraction(num, den)
            return -e if neg else e
        neg = self.accept("-")
        e = Fraction(self.integer())
        return -e if neg else e

    def integer(self) -> int:
        if self.tok.kind != "num":
            raise self.error(f"expected an integer, got {self.tok.text or 'end of input'!r}")
        v = int(self.tok.text)
        self.i += 1
        return v

    def atom(self):
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return ("num", int(tok.text), tok)
        if tok.kind == "ident":
            self.i += 1
            if tok.text in ("exp", "log"):
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return ("call", tok.text, arg, tok)
            if tok.text == "x":
                return ("x", tok)
            return ("param", tok.text, tok)
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        raise self.error(f"unexpected {tok.text or 'end of input'!r}")

    def matrix(self):
        start = self.tok
        self.expect("[")
        rows = []
        while True:
            row_tok = self.tok
            self.expect("[")
            row = [self.expr()]
            while self.accept(","):
                row.append(self.expr())
            self.expect("]")
            rows.append((row, row_tok))
            if not self.accept(","):
                break
        self.expect("]")
        width = len(rows[0][0])
        for row, tok in rows:
            if len(row) != width:
                raise InconsistentRowLength(
                    f"row at line {tok.line}, column {tok.col} has {len(row)} entries, expected {width}"
                )
        if len(rows) != width:
            raise InconsistentRowLength(
                f"matrix at line {start.line}, column {start.col} is {len(rows)}x{width}, not square"
            )
        return [r for r, _ in rows]


def parse_expr(text: str):
    p = _Parser(tokenize(text))
    node = p.expr()
    p.expect_end()
    return node


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def _tok(node) -> Token:
    return node[-1]


def _err(node, msg):
    t = _tok(node)
    return ExprSyntaxError(msg, t.line, t.col)


def eval_ratfn(node) -> RatFn:
    kind = node[0]
    if kind == "num":
        return RatFn.coerce(node[1])
    if kind == "x":
        return RatFn.x()
    if kind == "param":
        raise _err(node, f"unknown identifier {node[1]!r} (only x is allowed here)")
    if kind == "call":
        raise _err(node, f"{node[1]}() is only allowed in tower entries")
    if kind == "neg":
        return -eval_ratfn(node[1])
    if kind == "pow":
        e = node[2]
        if e.denominator != 1:
            raise _err(node, "non-integer exponent is only allowed in tower entries")
        base = eval_ratfn(node[1])
        if e < 0 and base.is_zero():
            raise _err(node, "division by zero")
        return base ** int(e)
    a, b = eval_ratfn(node[1]), eval_ratfn(node[2])
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if b.is_zero():
        raise _err(node, "division by zero")
    return a / b


def _monic_linear_root(r: RatFn, node):
    if not (r.is_poly() and r.num.degree == 1 and r.num.lc == 1):
        raise _err(node, f"expected x - a with rational a, got {r}")
    return -r.num.coeffs[0]


def eval_closed_form(node, cyclotomic=None) -> ClosedFormScalar:
    cyclotomic = cyclotomic or {}
    kind = node[0]
    if kind == "num":
        return ClosedFormScalar.coerce(node[1])
    if kind == "x":
        return ClosedFormScalar.coerce(RatFn.x())
    if kind == "param":
        return ClosedFormScalar.coerce(ParamPoly.var(node[1], cyclotomic.get(node[1], 0)))
    if kind == "call":
        arg = eval_closed_form(node[2], cyclotomic)
        if not arg.is_rational():
            raise _err(node, f"argument of {node[1]}() must be a rational function of x")
        r = arg.as_ratfn()
        if node[1] == "log":
            return cf_log(_monic_linear_root(r, node[2]))
        try:
            return cf_exp(r)
        except ValueError as exc:
            raise _err(node, str(exc)) from None
    if kind == "neg":
        return -eval_closed_form(node[1], cyclotomic)
    if kind == "pow":
        e = node[2]
        base = eval_closed_form(node[1], cyclotomic)
        if e.denominator != 1:
            if not base.is_rational():
                raise _err(node, "fractional powers need a base x - a")
            return cf_power(_monic_linear_root(base.as_ratfn(), node[1]), e)
        try:
            return base ** int(e)
        except ArithmeticError as exc:
            raise _err(node, str(exc)) from None
    a, b = eval_closed_form(node[1], cyclotomic), eval_closed_form(node[2], cyclotomic)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if b.is_zero():
        raise _err(node, "division by zero")
    if b.is_rational():
        return a * b.as_ratfn().inverse()
    try:
        return a * b.unit_inverse()
    except ArithmeticError as exc:
        raise _err(node, str(exc)) from None


def parse_ratfn(text: str) -> RatFn:
    return eval_ratfn(parse_expr(text))


def parse_closed_form(text: str, cyclotomic=None) -> ClosedFormScalar:
    return eval_closed_form(parse_expr(text), cyclotomic)


def _parse_matrix_nodes(text: str, line: int = 1):
    p = _Parser(tokenize(text, line))
    rows = p.matrix()
    p.expect_end()
    return rows


def parse_matrix(text: str, line: int = 1) -> MatRF:
    """Parse ``[[e11, e12], [e21, e22]]`` into a canonical MatRF."""
    return MatRF([[eval_ratfn(e) for e in r] for r in _parse_matrix_nodes(text, line)])


def parse_tower_matrix(text: str, cyclotomic=None, line: int = 1) -> tuple:
    return tuple(tuple(eval_closed_form(e, cyclotomic) for e in r) for r in _parse_matrix_nodes(text, line))


def parse_poly(text: str) -> Poly:
    r = parse_ratfn(text)
    if not r.is_poly():
        raise ExprSyntaxError(f"{text!r} is not a polynomial")
    return r.num


# ---------------------------------------------------------------------------
# Documents
# ---------------------------------------------------------------------------


@dataclass
class InputDocument:
    matrices: dict = field(default_factory=dict)
    towers: dict = field(default_factory=dict)
    galois: dict = field(default_factory=dict)
    cyclotomic: dict = field(default_factory=dict)
    sources: dict = field(default_factory=dict)

    def names(self) -> list:
        return list(self.matrices) + list(self.towers) + list(self.galois) + list(self.cyclotomic)


def _statements(text: str):
    """Yield ``(line, statement)``, joining lines while brackets are open."""
    buf, start, depth = [], 0, 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not buf:
            if not line.strip():
                continue
            start = lineno
        buf.append(line)
        depth += line.count("[") + line.count("(") - line.count("]") - line.count(")")
        if depth <= 0:
            yield start, "\n".join(buf)
            buf, depth = [], 0
    if buf:
        yield start, "\n".join(buf)


_DECL = re.compile(r"\s*(?:(tower)\s+)?([A-Za-z_][A-Za-z0-9_]*)\s*=(.*)", re.S)
_PARAM = re.compile(r"\s*param\s+([A-Za-z_][A-Za-z0-9_]*)\s+cyclotomic\s+(\d+)\s*$")
_GALOIS = re.compile(r"\s*galois\s+([A-Za-z_][A-Za-z0-9_]*)\s*:(.*)", re.S)


def _galois_actions(name: str, body: str, line: int, cyclotomic) -> GaloisGen:
    powers, exps, logs = {}, {}, {}
    col0 = 1
    for part in body.split(";"):
        if not part.strip():
            continue
        toks = tokenize(part, line, col0)
        ops = [k for k, t in enumerate(toks) if t.kind == "op" and t.text in ("+=", "*=")]
        if len(ops) != 1:
            raise ExprSyntaxError(f"galois action {part.strip()!r} needs exactly one '+=' or '*='", line, col0)
        k = ops[0]
        lhs_p = _Parser(toks[:k] + [Token("end", "", toks[k].line, toks[k].col)])
        lhs = lhs_p.expr()
        lhs_p.expect_end()
        rhs_p = _Parser(toks[k + 1:])
        rhs = rhs_p.expr()
        rhs_p.expect_end()
        value = eval_closed_form(rhs, cyclotomic)
        if not value.is_constant():
            raise _err(rhs, "galois multipliers and shifts must be constants")
        value = value.as_constant()
        gen = eval_closed_form(lhs, cyclotomic)
        if len(gen.terms) != 1:
            raise _err(lhs, "left-hand side must be a single tower generator")
        ((sig, mono), c), = gen.terms.items()
        unit = c.is_const() and c.const_value() == 1 and not mono
        op = toks[k].text
        if op == "+=":
            if not (unit and len(sig.logs) == 1 and sig.logs[0][1] == 1 and not sig.powers
                    and sig.exp.is_zero()):
                raise _err(lhs, "'+=' applies to log(x - b)")
            logs[sig.logs[0][0]] = value
        else:
            if sig.logs or not unit:
                raise _err(lhs, "'*=' applies to (x - a)^(p/q) or exp(r)")
            if len(sig.powers) == 1 and sig.exp.is_zero():
                powers[sig.powers[0]] = value
            elif not sig.powers and not sig.exp.is_zero():
                exps[sig.exp] = value
            else:
                raise _err(lhs, "'*=' applies to a single (x - a)^(p/q) or exp(r)")
    try:
        return GaloisGen(name, powers, exps, logs)
    except ValueError as exc:
        raise ExprSyntaxError(str(exc), line, 1) from None


def parse_document(text: str) -> InputDocument:
    doc = InputDocument()
    seen = set()

    def claim(name, line):
        if name in seen:
            raise ExprSyntaxError(f"name {name!r} declared twice", line, 1)
        seen.add(name)

    for line, stmt in _statements(text):
        m = _PARAM.match(stmt)
        if m:
            claim(m.group(1), line)
            doc.cyclotomic[m.group(1)] = int(m.group(2))
            continue
        m = _GALOIS.match(stmt)
        if m:
            claim(m.group(1), line)
            doc.galois[m.group(1)] = _galois_actions(m.group(1), m.group(2), line, doc.cyclotomic)
            doc.sources[m.group(1)] = " ".join(m.group(2).split())
            continue
        m = _DECL.match(stmt)
        if not m:
            raise ExprSyntaxError(f"cannot parse statement {stmt.strip()!r}", line, 1)
        tower, name, body = m.groups()
        claim(name, line)
        if tower:
            doc.towers[name] = parse_tower_matrix(body, doc.cyclotomic, line)
        else:
            doc.matrices[name] = parse_matrix(body, line)
        doc.sources[name] = " ".join(body.split())
    return doc
