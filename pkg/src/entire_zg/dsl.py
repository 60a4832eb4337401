"""Parser for the small algebra language used by the CLI and the REPL.

Literal forms::

    (z-1)^2*(z-2)          (1/2+3i)*z^2         polynomials in z
    n^2+1                  tail(n | n+1; 0:3)   sequences in n, optional exceptions
    {1:2, i:1}                                  finite divisors (point:multiplicity)
    div(z^2) & ann(z-1) + div(1)                pp-formulas, & binds tighter than +
    E y1 y2 : [y1 y2]*[[z,0],[1,z]] = x*[1,z]   matrix pp-formulas
    E(0,3)   Q                                  points
    triple(fixed(0), 2, 3)   triple(free, above(n^2), deg(1))   triple(empty, 0, 0)
    pair(1; z^2; z; z)       pair(tail(1); tail(n+1); tail(n); tail(1))
    [[z,0],[1,z]]                               matrices

Every printer in the library emits text that parses back to an equal value.
Identifiers bound in ``env`` may be used wherever a value of their type fits.
"""

import re
from fractions import Fraction

from .classify import (
    EMPTY,
    FREE,
    ZERO_CUT,
    AdmissibleTriple,
    DegreeAtLeast,
    Fixed,
    FixedThreshold,
    PrincipalAbove,
)
from .divisors import EPSeq, FiniteDivisor, TailDivisor
from .errors import ParseError, ZgError
from .pp import Ann, Conj, Divides, FiniteLength, MatrixForm, PpFormula, Q, Sum
from .scalars import GaussRational, Poly
from .topology import BasicOpenPair

__all__ = [
    "tokenize",
    "Parser",
    "parse_poly",
    "parse_point_value",
    "parse_divisor",
    "parse_eps",
    "parse_tail",
    "parse_formula",
    "parse_module_point",
    "parse_triple",
    "parse_cut",
    "parse_pair",
    "parse_matrix",
    "parse_value",
    "parse_scalar",
]

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?i?)|(?P<id>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()\[\]{},:;|&=]))"
)

RESERVED = {
    "z", "n", "i", "x", "E", "Q", "div", "ann", "tail", "triple", "fixed", "free",
    "empty", "above", "deg", "pair",
}


def tokenize(text):
    """List of ``(kind, text, pos)``; kinds are num, id, op and end."""
    out, pos = [], 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            out.append(("end", "", pos))
            return out
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()


def _number(tok):
    imag = tok.endswith("i")
    q = Fraction(tok[:-1] if imag else tok)
    return GaussRational(0, q) if imag else GaussRational(q)


class Parser:
    def __init__(self, text, env=None):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.env = env or {}

    # token helpers ---------------------------------------------------------

    @property
    def tok(self):
        return self.toks[self.i]

    def peek(self, k=1):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, text, kind=None):
        k, t, _ = self.tok
        return t == text and (kind is None or k == kind) and k != "end"

    def advance(self):
        t = self.tok
        self.i += 1
        return t

    def expect(self, text):
        if not self.at(text):
            self.error(f"expected {text!r}")
        return self.advance()

    def error(self, msg):
        kind, t, pos = self.tok
        found = "end of input" if kind == "end" else repr(t)
        raise ParseError(f"{msg}, found {found}", pos)

    def done(self):
        if self.tok[0] != "end":
            self.error("unexpected trailing input")

    def natural(self):
        kind, t, _ = self.tok
        if kind != "num" or "/" in t or t.endswith("i"):
            self.error("expected a natural number")
        self.advance()
        return int(t)

    def integer(self):
        neg = False
        if self.at("-"):
            self.advance()
            neg = True
        v = self.natural()
        return -v if neg else v

    def _bound(self, types, what):
        kind, name, _ = self.tok
        if kind == "id" and name in self.env and isinstance(self.env[name], types):
            self.advance()
            return self.env[name]
        if kind == "id" and name not in RESERVED and name not in self.env:
            self.error(f"unknown name in {what}")
        return None

    # polynomials -----------------------------------------------------------

    def poly(self, var="z"):
        out = self._term(var)
        while self.at("+") or self.at("-"):
            op = self.advance()[1]
            rhs = self._term(var)
            out = out + rhs if op == "+" else out - rhs
        return out

    def _term(self, var):
        out = self._power(var)
        while self.at("*"):
            self.advance()
            out = out * self._power(var)
        return out

    def _power(self, var):
        if self.at("-"):
            self.advance()
            return -self._power(var)
        base = self._atom(var)
        if self.at("^"):
            self.advance()
            base = base ** self.natural()
        return base

    def _atom(self, var):
        kind, t, _ = self.tok
        if kind == "num":
            self.advance()
            return Poly.const(_number(t))
        if kind == "id":
            if t == "i":
                self.advance()
                return Poly.const(GaussRational(0, 1))
            if t == var:
                self.advance()
                return Poly((0, 1))
            v = self._bound((Poly, GaussRational, int), "polynomial")
            if v is not None:
                return v if isinstance(v, Poly) else Poly.const(v)
            self.error(f"expected a polynomial in {var}")
        if self.at("("):
            self.advance()
            p = self.poly(var)
            self.expect(")")
            return p
        self.error(f"expected a polynomial in {var}")

    def point(self):
        """A constant: Gaussian rational written as a polynomial without variable."""
        kind, t, pos = self.tok
        p = self.poly(var="")
        if p.degree > 0:
            raise ParseError("expected a constant", pos)
        return p.coeff(0)

    # divisors and sequences ------------------------------------------------

    def divisor(self):
        if self.tok[0] == "id":
            v = self._bound((FiniteDivisor,), "divisor")
            if v is not None:
                return v
        self.expect("{")
        items = {}
        if not self.at("}"):
            while True:
                pos = self.tok[2]
                t = self.point()
                self.expect(":")
                m = self.natural()
                if t in items:
                    raise ParseError(f"point {t} listed twice", pos)
                items[t] = m
                if not self.at(","):
                    break
                self.advance()
        self.expect("}")
        return FiniteDivisor({t: m for t, m in items.items() if m})

    def eps(self):
        """A sequence: ``tail(...)`` or a bare polynomial in n."""
        if self.tok[0] == "id" and self.tok[1] not in RESERVED:
            v = self._bound((EPSeq, TailDivisor), "sequence")
            if v is not None:
                return v.multiplicity if isinstance(v, TailDivisor) else v
        if self.at("tail"):
            return self._tail_body()
        pos = self.tok[2]
        return self._make_eps([self.poly("n")], {}, pos)

    def _tail_body(self):
        self.expect("tail")
        pos = self.tok[2]
        self.expect("(")
        polys = [self.poly("n")]
        while self.at("|"):
            self.advance()
            polys.append(self.poly("n"))
        exc = {}
        if self.at(";"):
            self.advance()
            while True:
                k = self.natural()
                self.expect(":")
                exc[k] = self.natural()
                if not self.at(","):
                    break
                self.advance()
        self.expect(")")
        return self._make_eps(polys, exc, pos)

    def _make_eps(self, polys, exc, pos):
        try:
            return EPSeq.quasi(polys, exc)
        except ZgError as e:
            raise ParseError(str(e), pos) from None

    # formulas --------------------------------------------------------------

    def formula(self):
        out = self._conj()
        while self.at("+"):
            self.advance()
            out = Sum(out, self._conj())
        return out

    def _conj(self):
        out = self._fatom()
        while self.at("&"):
            self.advance()
            out = Conj(out, self._fatom())
        return out

    def _fatom(self):
        kind, t, pos = self.tok
        if t == "div" and kind == "id":
            self.advance()
            self.expect("(")
            p = self.poly()
            self.expect(")")
            return Divides(p)
        if t == "ann" and kind == "id":
            self.advance()
            self.expect("(")
            p = self.poly()
            self.expect(")")
            return Ann(p)
        if t == "E" and kind == "id":
            return self._matrix_form()
        if self.at("("):
            self.advance()
            f = self.formula()
            self.expect(")")
            return f
        if kind == "id":
            v = self._bound((PpFormula,), "formula")
            if v is not None:
                return v
        self.error("expected a formula")

    def _matrix_form(self):
        start = self.tok[2]
        self.expect("E")
        ys = []
        while self.tok[0] == "id" and self.tok[1] != ":":
            ys.append(self.advance()[1])
        if len(set(ys)) != len(ys):
            raise ParseError("bound variables must be distinct", start)
        self.expect(":")
        self.expect("[")
        row = []
        while self.tok[0] == "id":
            row.append(self.advance()[1])
        self.expect("]")
        if row != ys:
            raise ParseError(f"row vector [{' '.join(row)}] must list the bound variables {ys}", start)
        self.expect("*")
        A = self.matrix()
        self.expect("=")
        if not self.at("x"):
            self.error("expected x")
        self.advance()
        self.expect("*")
        b = self._poly_list()
        if len(A) != len(ys):
            raise ParseError(f"matrix has {len(A)} rows but {len(ys)} bound variables", start)
        try:
            return MatrixForm(A, b)
        except ZgError as e:
            raise ParseError(str(e), start) from None

    def _poly_list(self):
        self.expect("[")
        out = []
        if not self.at("]"):
            out.append(self.poly())
            while self.at(","):
                self.advance()
                out.append(self.poly())
        self.expect("]")
        return out

    def matrix(self):
        self.expect("[")
        rows = []
        if not self.at("]"):
            rows.append(self._poly_list())
            while self.at(","):
                self.advance()
                rows.append(self._poly_list())
        self.expect("]")
        return rows

    # points, triples and pairs --------------------------------------------

    def module_point(self):
        if self.at("Q"):
            self.advance()
            return Q
        if self.tok[0] == "id" and self.tok[1] not in RESERVED:
            v = self._bound((FiniteLength,), "point")
            if v is not None:
                return v
        self.expect("E")
        self.expect("(")
        t = self.point()
        self.expect(",")
        pos = self.tok[2]
        k = self.natural()
        self.expect(")")
        if k < 1:
            raise ParseError("E(t,k) needs k >= 1", pos)
        return FiniteLength(t, k)

    def cut(self):
        kind, t, pos = self.tok
        if kind == "num":
            k = self.natural()
            return ZERO_CUT if k == 0 else FixedThreshold(k)
        if self.at("above"):
            self.advance()
            self.expect("(")
            g = self.eps()
            self.expect(")")
            try:
                return PrincipalAbove(g)
            except ZgError as e:
                raise ParseError(str(e), pos) from None
        if self.at("deg"):
            self.advance()
            self.expect("(")
            d = self.natural()
            self.expect(")")
            if d < 1:
                raise ParseError("deg(d) needs d >= 1", pos)
            return DegreeAtLeast(d)
        self.error("expected a cut: a natural number, above(...) or deg(...)")

    def triple(self):
        if self.tok[0] == "id" and self.tok[1] not in RESERVED:
            v = self._bound((AdmissibleTriple,), "triple")
            if v is not None:
                return v
        self.expect("triple")
        self.expect("(")
        if self.at("fixed"):
            self.advance()
            self.expect("(")
            U = Fixed(self.point())
            self.expect(")")
        elif self.at("free"):
            self.advance()
            U = FREE
        elif self.at("empty"):
            self.advance()
            U = EMPTY
        else:
            self.error("expected fixed(t), free or empty")
        self.expect(",")
        I = self.cut()
        self.expect(",")
        J = self.cut()
        self.expect(")")
        return AdmissibleTriple(U, I, J)

    def scalar(self):
        """A pair scalar: polynomial, finite divisor or tail divisor."""
        if self.at("{"):
            return self.divisor()
        if self.at("tail"):
            return TailDivisor(self._tail_body())
        if self.tok[0] == "id" and self.tok[1] in self.env:
            v = self.env[self.tok[1]]
            if isinstance(v, (FiniteDivisor, TailDivisor, EPSeq)) and self.peek()[1] in (";", ")", ",", "end", ""):
                self.advance()
                return TailDivisor(v) if isinstance(v, EPSeq) else v
        return self.poly()

    def pair(self):
        start = self.tok[2]
        if self.tok[0] == "id" and self.tok[1] not in RESERVED:
            v = self._bound((BasicOpenPair,), "pair")
            if v is not None:
                return v
        self.expect("pair")
        self.expect("(")
        vals = [self.scalar()]
        for _ in range(3):
            self.expect(";")
            vals.append(self.scalar())
        self.expect(")")
        try:
            return BasicOpenPair(*vals)
        except ZgError as e:
            raise ParseError(str(e), start) from None

    def value(self):
        """Any literal, chosen by its leading token."""
        kind, t, _ = self.tok
        if kind == "id" and t in self.env and self.peek()[0] == "end":
            self.advance()
            return self.env[t]
        if t == "triple":
            return self.triple()
        if t == "pair":
            return self.pair()
        if t == "{":
            return self.divisor()
        if t == "tail":
            return self._tail_body()
        if t == "Q" and kind == "id":
            self.advance()
            return Q
        if t == "E" and self.peek()[1] == "(":
            return self.module_point()
        if t in ("div", "ann", "E") or (t == "(" and self._looks_like_formula()):
            return self.formula()
        if t == "[":
            return self.matrix()
        if kind == "id" and t in self.env and isinstance(self.env[t], PpFormula):
            return self.formula()
        if self._mentions("n") and not self._mentions("z"):
            return self.eps()
        return self.poly()

    def _mentions(self, name):
        return any(k == "id" and t == name for k, t, _ in self.toks[self.i:])

    def _looks_like_formula(self):
        return any(k == "id" and t in ("div", "ann", "E") for k, t, _ in self.toks[self.i:])


def _run(text, method, env=None, **kw):
    p = Parser(text, env)
    out = getattr(p, method)(**kw)
    p.done()
    return out


def parse_poly(text, env=None, var="z"):
    return _run(text, "poly", env, var=var)


def parse_point_value(text, env=None):
    return _run(text, "point", env)


def parse_divisor(text, env=None):
    return _run(text, "divisor", env)


def parse_eps(text, env=None):
    return _run(text, "eps", env)


def parse_tail(text, env=None):
    return TailDivisor(parse_eps(text, env))


def parse_formula(text, env=None):
    return _run(text, "formula", env)


def parse_module_point(text, env=None):
    return _run(text, "module_point", env)


def parse_triple(text, env=None):
    return _run(text, "triple", env)


def parse_cut(text, env=None):
    return _run(text, "cut", env)


def parse_pair(text, env=None):
    return _run(text, "pair", env)


def parse_matrix(text, env=None):
    return _run(text, "matrix", env)


def parse_scalar(text, env=None):
    return _run(text, "scalar", env)


def parse_value(text, env=None):
    return _run(text, "value", env)
