"""Surface syntax for base-ring expressions.

Grammar (whitespace insensitive):

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' ['-'] int)?
    base   := int | 'i' | ident | call '(' expr ')' | '(' expr ')'

idents: a, abar, rho, b, alpha (unicode α accepted); alpha is only legal
directly under sin/cos/cot.  Calls: sin, cos, cot, conj.  Lowering maps
sin(alpha) -> s, cos(alpha) -> c, cot(alpha) -> c/s and conj to kernel
conjugation.  The pretty-printer emits the canonical form in the fixed
monomial order, so output is deterministic and re-parseable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DomainError, ExprSyntaxError
from .gaussian import GaussianRational, I as GR_I
from .poly import A, ABAR, B, C, Polynomial, RHO, S
from .rational import TrigRational

MAX_EXPONENT = 64
MAX_DEPTH = 200


# -- AST ----------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class ImagUnit:
    pass


@dataclass(frozen=True)
class Var:
    name: str  # alpha | a | abar | rho | b


@dataclass(frozen=True)
class Call:
    fn: str  # sin | cos | cot | conj
    arg: "ExprAst"


@dataclass(frozen=True)
class Neg:
    child: "ExprAst"


@dataclass(frozen=True)
class BinOp:
    op: str  # + - * / ^
    left: "ExprAst"
    right: Union["ExprAst", int]


@dataclass(frozen=True)
class Paren:
    child: "ExprAst"


ExprAst = Union[Num, ImagUnit, Var, Call, Neg, BinOp, Paren]

_CALLS = ("sin", "cos", "cot", "conj")
_VARS = ("alpha", "a", "abar", "rho", "b")


# -- tokenizer ---------------------------------------------------------------

_SYMBOLS = "+-*/^()"


def _tokens(text: str):
    """Yield (kind, value, offset); kind in {int, ident, sym, end}."""
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "0123456789":  # ASCII only: int() rejects unicode digits
            j = i
            while j < n and text[j] in "0123456789":
                j += 1
            yield ("int", text[i:j], i)
            i = j
            continue
        if ch.isalpha() or ch == "_" or ch == "α":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_" or text[j] == "α"):
                j += 1
            yield ("ident", text[i:j], i)
            i = j
            continue
        if ch in _SYMBOLS:
            yield ("sym", ch, i)
            i += 1
            continue
        raise ExprSyntaxError(i, ["digit", "identifier", "operator"], ch)
    yield ("end", "", n)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = list(_tokens(text))
        self.pos = 0
        self.depth = 0

    def peek(self):
        return self.toks[self.pos]

    def advance(self):
        tok = self.toks[self.pos]
        if tok[0] != "end":
            self.pos += 1
        return tok

    def fail(self, expected):
        kind, val, off = self.peek()
        found = val if kind != "end" else "<end of input>"
        raise ExprSyntaxError(off, expected, found)

    def expect_sym(self, sym):
        kind, val, off = self.peek()
        if kind == "sym" and val == sym:
            return self.advance()
        self.fail([f"'{sym}'"])

    # expr := ['-'] term (('+'|'-') term)*
    def expr(self) -> ExprAst:
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise ExprSyntaxError(self.peek()[2], ["shallower expression"],
                                  "nesting too deep")
        kind, val, off = self.peek()
        if kind == "sym" and val == "-":
            self.advance()
            node: ExprAst = Neg(self.term())
        else:
            node = self.term()
        while True:
            kind, val, off = self.peek()
            if kind == "sym" and val in "+-":
                self.advance()
                rhs = self.term()
                node = BinOp(val, node, rhs)
            else:
                break
        self.depth -= 1
        return node

    def term(self) -> ExprAst:
        node = self.factor()
        while True:
            kind, val, off = self.peek()
            if kind == "sym" and val in "*/":
                self.advance()
                node = BinOp(val, node, self.factor())
            else:
                break
        return node

    def factor(self) -> ExprAst:
        node = self.base()
        kind, val, off = self.peek()
        if kind == "sym" and val == "^":
            self.advance()
            sign = 1
            kind, val, off = self.peek()
            if kind == "sym" and val == "-":
                self.advance()
                sign = -1
                kind, val, off = self.peek()
            if kind != "int":
                self.fail(["integer exponent"])
            self.advance()
            node = BinOp("^", node, sign * int(val))
        return node

    def base(self) -> ExprAst:
        kind, val, off = self.peek()
        if kind == "int":
            self.advance()
            return Num(int(val))
        if kind == "ident":
            self.advance()
            name = "alpha" if val == "α" else val
            if name == "i":
                return ImagUnit()
            if name in _CALLS:
                self.expect_sym("(")
                arg = self.expr()
                self.expect_sym(")")
                return Call(name, arg)
            if name in _VARS:
                return Var(name)
            raise ExprSyntaxError(off, ["a", "abar", "rho", "b", "alpha", "i",
                                        "sin", "cos", "cot", "conj"], val)
        if kind == "sym" and val == "(":
            self.advance()
            inner = self.expr()
            self.expect_sym(")")
            return Paren(inner)
        self.fail(["number", "identifier", "'('"])


def parse(text: str) -> ExprAst:
    """Parse to an AST; raises ExprSyntaxError with a byte offset."""
    p = _Parser(text)
    node = p.expr()
    kind, val, off = p.peek()
    if kind != "end":
        p.fail(["operator", "<end of input>"])
    return node


# -- lowering ------------------------------------------------------------------

_S = TrigRational.var(S)
_C = TrigRational.var(C)


def lower(ast: ExprAst) -> TrigRational:
    """Lower an AST to a canonical TrigRational."""
    if isinstance(ast, Num):
        return TrigRational.from_const(ast.value)
    if isinstance(ast, ImagUnit):
        return TrigRational.from_const(GR_I)
    if isinstance(ast, Var):
        if ast.name == "alpha":
            raise DomainError("alpha may appear only under sin, cos or cot")
        idx = {"a": A, "abar": ABAR, "rho": RHO, "b": B}[ast.name]
        return TrigRational.var(idx)
    if isinstance(ast, Paren):
        return lower(ast.child)
    if isinstance(ast, Neg):
        return -lower(ast.child)
    if isinstance(ast, Call):
        if ast.fn == "conj":
            return lower(ast.arg).conjugate()
        arg = ast.arg
        while isinstance(arg, Paren):
            arg = arg.child
        if not (isinstance(arg, Var) and arg.name == "alpha"):
            raise DomainError(f"{ast.fn}() takes the angle alpha only")
        if ast.fn == "sin":
            return _S
        if ast.fn == "cos":
            return _C
        return _C / _S  # cot
    if isinstance(ast, BinOp):
        if ast.op == "^":
            n = ast.right
            if abs(n) > MAX_EXPONENT:
                raise DomainError(f"exponent {n} exceeds the limit {MAX_EXPONENT}")
            return lower(ast.left) ** n
        if ast.op in "+-":
            # long sums nest left-deep; walk the spine iteratively so that
            # rendered many-term polynomials re-parse within stack limits
            tail = []
            node: ExprAst = ast
            while isinstance(node, BinOp) and node.op in "+-":
                tail.append((node.op, node.right))
                node = node.left
            acc = lower(node)
            for op, rhs_ast in reversed(tail):
                rhs = lower(rhs_ast)
                acc = acc + rhs if op == "+" else acc - rhs
            return acc
        lhs = lower(ast.left)
        rhs = lower(ast.right)
        if ast.op == "*":
            return lhs * rhs
        return lhs / rhs
    raise TypeError(f"unknown AST node {ast!r}")


def parse_expr(text: str) -> TrigRational:
    return lower(parse(text))


# -- rendering -----------------------------------------------------------------

_RENDER_NAMES = ("sin(alpha)", "cos(alpha)", "a", "abar", "rho", "b")


def _render_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _render_coeff(coeff: GaussianRational, has_vars: bool) -> tuple[str, str]:
    """Return (sign, magnitude-string); magnitude may be '' for unit coeffs."""
    if coeff.is_real():
        sign = "-" if coeff.re < 0 else "+"
        mag = abs(coeff.re)
        if mag == 1 and has_vars:
            return sign, ""
        return sign, _render_fraction(mag)
    if not coeff.re:  # purely imaginary
        sign = "-" if coeff.im < 0 else "+"
        mag = abs(coeff.im)
        if mag == 1:
            return sign, "i"
        return sign, f"{_render_fraction(mag)}*i"
    re_s = _render_fraction(coeff.re)
    im_mag = _render_fraction(abs(coeff.im))
    im_op = "-" if coeff.im < 0 else "+"
    return "+", f"({re_s} {im_op} {im_mag}*i)"


def render_poly(poly: Polynomial, names=_RENDER_NAMES) -> str:
    if poly.is_zero:
        return "0"
    parts = []
    for mono, coeff in poly.iter_sorted():
        factors = []
        for idx, exp in enumerate(mono):
            if not exp:
                continue
            factors.append(names[idx] if exp == 1 else f"{names[idx]}^{exp}")
        sign, mag = _render_coeff(coeff, bool(factors))
        body = "*".join(([mag] if mag else []) + factors) or "1"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


JET_RENDER_NAMES = ("X", "Y", "X2", "Y2", "C", "Cbar", "W", "Wbar",
                    "P", "Pbar")


def render_jet(e) -> str:
    """Render a jet polynomial; coefficients in parentheses, render-only."""
    if not e.coeffs:
        return "0"
    parts = []
    for m in sorted(e.coeffs, key=lambda mm: (sum(mm), mm), reverse=True):
        coeff = e.coeffs[m]
        factors = [
            JET_RENDER_NAMES[i] if exp == 1 else f"{JET_RENDER_NAMES[i]}^{exp}"
            for i, exp in enumerate(m) if exp
        ]
        body = "*".join(factors) if factors else "1"
        cs = render(coeff) if isinstance(coeff, TrigRational) else str(coeff)
        parts.append(f"({cs})*{body}" if factors else f"({cs})")
    return " + ".join(parts)


def render(e: TrigRational) -> str:
    """Deterministic canonical rendering; parse(render(e)) equals e."""
    num = render_poly(e.num)
    den_poly = e.den
    if den_poly.is_const() and den_poly.const_value() == GaussianRational(1):
        return num
    den = render_poly(den_poly)
    num_s = num if len(e.num.terms) == 1 and not num.startswith("-") else f"({num})"
    den_s = den if len(den_poly.terms) == 1 else f"({den})"
    return f"{num_s}/{den_s}"
