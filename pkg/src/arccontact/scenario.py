"""Scenario files: a small line-oriented language for varieties and arcs.

::

    vars x y z
    poly f = x*y - z^5
    poly f : weight 2
    arc phi : x -> t^3, y -> t^2, z -> t
    family fam over N in 1..10 : x -> t^(2*N+2), y -> t^(2*N+5), z -> t
    set max_steps 64

``#`` starts a comment.  Variables missing from an arc or family map to 0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .arcs import Arc, ArcFamily, Variety
from .errors import ArcContactError, InvalidArc
from .polynomial import Polynomial
from .series import FormalSeries

OPTIONS = ("prec", "cap", "max_steps")
RESERVED = {"t", "vars", "poly", "arc", "family", "set", "over", "in", "weight"}

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>->|\.\.|[-+*^()/,:=]))"
)


class ParseError(ArcContactError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    column: int


def tokenize(text: str, line: int) -> List[Token]:
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m or m.end() == pos:
            col = pos + 1 + (len(stripped[pos:]) - len(stripped[pos:].lstrip()))
            raise ParseError(f"unexpected character {stripped[col - 1]!r}", line, col)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    tokens.append(Token("end", "", len(stripped) + 1))
    return tokens


class _Parser:
    """Recursive-descent parser over the tokens of a single line."""

    def __init__(self, tokens: List[Token], line: int):
        self.tokens = tokens
        self.pos = 0
        self.line = line

    @property
    def peek(self) -> Token:
        return self.tokens[self.pos]

    def error(self, expected: str, tok: Optional[Token] = None):
        tok = tok or self.peek
        found = "end of line" if tok.kind == "end" else repr(tok.text)
        raise ParseError(f"expected {expected}, found {found}", self.line, tok.column)

    def accept(self, text: str) -> bool:
        if self.peek.text == text and self.peek.kind != "end":
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        tok = self.peek
        if tok.text != text or tok.kind == "end":
            self.error(repr(text))
        self.pos += 1
        return tok

    def name(self, what: str = "a name") -> Token:
        tok = self.peek
        if tok.kind != "name":
            self.error(what)
        self.pos += 1
        return tok

    def integer(self) -> int:
        tok = self.peek
        if tok.kind != "num":
            self.error("an integer")
        self.pos += 1
        return int(tok.text)

    def signed_integer(self) -> int:
        sign = -1 if self.accept("-") else 1
        return sign * self.integer()

    def end(self):
        if self.peek.kind != "end":
            self.error("end of line")

    # expr := ['+'|'-'] term (('+'|'-') term)*
    def expr(self, names: Sequence[str]) -> Polynomial:
        negate = False
        if self.accept("-"):
            negate = True
        else:
            self.accept("+")
        result = self.term(names)
        if negate:
            result = -result
        while True:
            if self.accept("+"):
                result = result + self.term(names)
            elif self.accept("-"):
                result = result - self.term(names)
            else:
                return result

    def term(self, names: Sequence[str]) -> Polynomial:
        result = self.factor(names)
        while self.accept("*"):
            result = result * self.factor(names)
        return result

    def factor(self, names: Sequence[str]) -> Polynomial:
        if self.accept("-"):
            return -self.factor(names)
        base = self.primary(names)
        if self.accept("^"):
            base = base ** self.integer()
        return base

    def primary(self, names: Sequence[str]) -> Polynomial:
        n = len(names)
        tok = self.peek
        if tok.kind == "num":
            self.pos += 1
            value = Fraction(int(tok.text))
            if self.peek.text == "/" and self.tokens[self.pos + 1].kind == "num":
                self.pos += 1
                den = self.integer()
                if den == 0:
                    raise ParseError("zero denominator", self.line, tok.column)
                value /= den
            return Polynomial.constant(n, value)
        if tok.kind == "name":
            if tok.text not in names:
                raise ParseError(f"undeclared variable {tok.text!r}", self.line, tok.column)
            self.pos += 1
            return Polynomial.var(n, list(names).index(tok.text))
        if self.accept("("):
            inner = self.expr(names)
            self.expect(")")
            return inner
        self.error("a number, variable or '('")


@dataclass
class Scenario:
    variables: Tuple[str, ...] = ()
    polys: Dict[str, Polynomial] = field(default_factory=dict)
    weights: Dict[str, int] = field(default_factory=dict)
    arcs: Dict[str, Arc] = field(default_factory=dict)
    families: Dict[str, ArcFamily] = field(default_factory=dict)
    family_params: Dict[str, str] = field(default_factory=dict)
    options: Dict[str, int] = field(default_factory=dict)

    def variety(self, poly: Optional[str] = None) -> Variety:
        if not self.polys:
            raise ValueError("scenario declares no polynomial")
        if poly is not None:
            if poly not in self.polys:
                raise KeyError(f"unknown polynomial {poly!r}")
            return Variety(self.variables, [self.polys[poly]])
        return Variety(self.variables, list(self.polys.values()))

    def weight_list(self, poly: Optional[str] = None) -> List[Optional[int]]:
        names = [poly] if poly is not None else list(self.polys)
        return [self.weights.get(n) for n in names]

    def to_text(self) -> str:
        lines = ["vars " + " ".join(self.variables)]
        for name, p in self.polys.items():
            lines.append(f"poly {name} = {p.to_str(self.variables)}")
            if name in self.weights:
                lines.append(f"poly {name} : weight {self.weights[name]}")
        for name, arc in self.arcs.items():
            parts = [f"{v} -> {_series_text(s)}" for v, s in zip(self.variables, arc.images) if not s.is_zero()]
            lines.append(f"arc {name} : " + ", ".join(parts))
        for name, fam in self.families.items():
            param = self.family_params.get(name, "N")
            parts = []
            for v, t in zip(self.variables, fam.terms):
                if t is None:
                    continue
                c, a, b = t
                lin = _lin_text(a, b, param)
                coef = "" if c == 1 else f"{c}*"
                parts.append(f"{v} -> {coef}t^({lin})")
            lines.append(f"family {name} over {param} in {fam.start}..{fam.stop} : " + ", ".join(parts))
        for key in OPTIONS:
            if key in self.options:
                lines.append(f"set {key} {self.options[key]}")
        return "\n".join(lines) + "\n"


def _series_text(s: FormalSeries) -> str:
    parts = []
    for e, c in sorted(s.terms.items()):
        tpow = "t" if e == 1 else f"t^{e}"
        parts.append(tpow if c == 1 else f"{c}*{tpow}")
    return " + ".join(parts) if parts else "0"


def _lin_text(a: int, b: int, param: str) -> str:
    if a == 0:
        return str(b)
    head = param if a == 1 else f"{a}*{param}"
    if b == 0:
        return head
    return f"{head}{b:+d}"


def parse_scenario(text: str) -> Scenario:
    sc = Scenario()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        p = _Parser(tokenize(line, lineno), lineno)
        head = p.name("a keyword")
        if head.text == "vars":
            _parse_vars(p, sc, head)
        elif not sc.variables and head.text in ("poly", "arc", "family"):
            raise ParseError("'vars' must come before other declarations", lineno, head.column)
        elif head.text == "poly":
            _parse_poly(p, sc)
        elif head.text == "arc":
            _parse_arc(p, sc)
        elif head.text == "family":
            _parse_family(p, sc)
        elif head.text == "set":
            key = p.name("an option name")
            if key.text not in OPTIONS:
                raise ParseError(f"unknown option {key.text!r}", lineno, key.column)
            value = p.integer()
            p.end()
            sc.options[key.text] = value
        else:
            raise ParseError(
                "expected 'vars', 'poly', 'arc', 'family' or 'set', found " + repr(head.text),
                lineno,
                head.column,
            )
    return sc


def _parse_vars(p: _Parser, sc: Scenario, head: Token):
    if sc.variables:
        raise ParseError("variables declared twice", p.line, head.column)
    names = []
    while p.peek.kind == "name":
        tok = p.name()
        if tok.text in RESERVED:
            raise ParseError(f"{tok.text!r} is reserved", p.line, tok.column)
        if tok.text in names:
            raise ParseError(f"duplicate variable {tok.text!r}", p.line, tok.column)
        names.append(tok.text)
    if not names:
        p.error("at least one variable name")
    p.end()
    sc.variables = tuple(names)


def _parse_poly(p: _Parser, sc: Scenario):
    name = p.name("a polynomial name")
    if p.accept(":"):
        kw = p.name("'weight'")
        if kw.text != "weight":
            p.error("'weight'", kw)
        w = p.integer()
        if w < 1:
            raise ParseError("weight must be positive", p.line, kw.column)
        p.end()
        sc.weights[name.text] = w
        return
    p.expect("=")
    start = p.peek
    poly = p.expr(sc.variables)
    p.end()
    if poly.is_zero():
        raise ParseError("polynomial is identically zero", p.line, start.column)
    if poly.constant_term():
        raise ParseError("polynomial must vanish at the origin", p.line, start.column)
    sc.polys[name.text] = poly


def _assignments(p: _Parser, sc: Scenario, parse_image):
    images = {}
    while True:
        var = p.name("a variable")
        if var.text not in sc.variables:
            raise ParseError(f"undeclared variable {var.text!r}", p.line, var.column)
        if var.text in images:
            raise ParseError(f"{var.text!r} assigned twice", p.line, var.column)
        p.expect("->")
        images[var.text] = parse_image(p)
        if not p.accept(","):
            break
    p.end()
    return images


def _parse_series(p: _Parser) -> FormalSeries:
    start = p.peek
    poly = p.expr(("t",))
    s = FormalSeries({m[0]: c for m, c in poly.items()})
    if s.constant_term():
        raise ParseError("arc image must have zero constant term", p.line, start.column)
    return s


def _parse_arc(p: _Parser, sc: Scenario):
    name = p.name("an arc name")
    p.expect(":")
    images = _assignments(p, sc, _parse_series)
    try:
        arc = Arc([images.get(v, FormalSeries.zero()) for v in sc.variables])
    except InvalidArc as exc:
        raise ParseError(str(exc), p.line, name.column) from None
    sc.arcs[name.text] = arc


def _parse_family(p: _Parser, sc: Scenario):
    name = p.name("a family name")
    over = p.name("'over'")
    if over.text != "over":
        p.error("'over'", over)
    param = p.name("a parameter name")
    kw = p.name("'in'")
    if kw.text != "in":
        p.error("'in'", kw)
    lo = p.signed_integer()
    p.expect("..")
    hi = p.signed_integer()
    p.expect(":")

    def image(p: _Parser):
        tok = p.peek
        if tok.kind == "num" and tok.text == "0" and p.tokens[p.pos + 1].text in (",", ""):
            p.pos += 1
            return None
        coef = Fraction(1)
        if p.accept("-"):
            coef = -coef
        if p.peek.kind == "num":
            coef *= p.integer()
            if p.accept("/"):
                coef /= p.integer()
            p.expect("*")
        t = p.name("'t'")
        if t.text != "t":
            p.error("'t'", t)
        if not p.accept("^"):
            return (coef, 0, 1)
        if p.peek.kind == "num":
            return (coef, 0, p.integer())
        p.expect("(")
        lin_start = p.peek
        lin = p.expr((param.text,))
        p.expect(")")
        if lin.degree() > 1 or any(c.denominator != 1 for _, c in lin.items()):
            raise ParseError(f"exponent must be integer-linear in {param.text}", p.line, lin_start.column)
        return (coef, int(lin.coefficient((1,))), int(lin.coefficient((0,))))

    terms = _assignments(p, sc, image)
    try:
        fam = ArcFamily(tuple(terms.get(v) for v in sc.variables), lo, hi)
    except (InvalidArc, ValueError) as exc:
        raise ParseError(str(exc), p.line, name.column) from None
    sc.families[name.text] = fam
    sc.family_params[name.text] = param.text
