"""The ordered field of rational functions in ``eps``, a positive infinitesimal.

Elements are reduced fractions ``p(eps) / q(eps)`` of polynomials with
rational coefficients, ``q`` monic.  An element is positive when the lowest
non-zero coefficient of its expansion at ``eps -> 0+`` is positive.  The
field is exact and non-archimedean but not real closed.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import total_ordering

from .errors import ParseError

Poly = tuple  # coefficients, lowest degree first, no trailing zeros

_ONE = (Fraction(1),)


def _trim(p) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _padd(p, q):
    n = max(len(p), len(q))
    return _trim((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def _pneg(p):
    return tuple(-c for c in p)


def _pmul(p, q):
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def _pscale(p, c):
    return _trim(c * x for x in p)


def _pdivmod(p, q):
    p = list(p)
    out = [Fraction(0)] * max(len(p) - len(q) + 1, 1)
    lead = q[-1]
    while len(p) >= len(q) and p:
        c = p[-1] / lead
        k = len(p) - len(q)
        out[k] = c
        for i, b in enumerate(q):
            p[i + k] -= c * b
        p = list(_trim(p))
    return _trim(out), tuple(p)


def _pgcd(p, q):
    while q:
        p, q = q, _pdivmod(p, q)[1]
    return _pscale(p, 1 / p[-1]) if p else _ONE


def _low(p) -> tuple[int, Fraction]:
    for i, c in enumerate(p):
        if c:
            return i, c
    raise ValueError("zero polynomial")


@total_ordering
class QEps:
    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=(), den=_ONE, _reduced=False):
        if isinstance(num, (int, Fraction)):
            num = (Fraction(num),)
        num = _trim(Fraction(c) for c in num)
        den = _trim(Fraction(c) for c in den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not _reduced and len(den) > 1 and num:
            g = _pgcd(num, den)
            if len(g) > 1:
                num = _pdivmod(num, g)[0]
                den = _pdivmod(den, g)[0]
        if not num:
            den = _ONE
        elif den[-1] != 1:
            lead = den[-1]
            num, den = _pscale(num, 1 / lead), _pscale(den, 1 / lead)
        self.num, self.den = num, den
        self._hash = None

    @classmethod
    def of(cls, x) -> QEps:
        if isinstance(x, QEps):
            return x
        if isinstance(x, str):
            return parse_qeps(x)
        return cls(Fraction(x))

    # arithmetic
    def __add__(self, other):
        o = QEps.of(other)
        if self.den == _ONE and o.den == _ONE:
            return QEps(_padd(self.num, o.num), _ONE, True)
        return QEps(_padd(_pmul(self.num, o.den), _pmul(o.num, self.den)), _pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return QEps(_pneg(self.num), self.den, True)

    def __sub__(self, other):
        return self + (-QEps.of(other))

    def __rsub__(self, other):
        return QEps.of(other) - self

    def __mul__(self, other):
        o = QEps.of(other)
        if self.den == _ONE and o.den == _ONE:
            return QEps(_pmul(self.num, o.num), _ONE, True)
        return QEps(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QEps.of(other)
        if not o.num:
            raise ZeroDivisionError("division by zero in Q(eps)")
        if len(o.num) == 1 and o.den == _ONE and self.den == _ONE:
            return QEps(_pscale(self.num, 1 / o.num[0]), _ONE, True)
        return QEps(_pmul(self.num, o.den), _pmul(self.den, o.num))

    def __rtruediv__(self, other):
        return QEps.of(other) / self

    # order
    def sign(self) -> int:
        if not self.num:
            return 0
        s = _low(self.num)[1] * _low(self.den)[1]
        return 1 if s > 0 else -1

    def __eq__(self, other):
        if not isinstance(other, (QEps, int, Fraction)):
            return NotImplemented
        o = QEps.of(other)
        return self.num == o.num and self.den == o.den

    def __lt__(self, other):
        return qeps_cmp(self, QEps.of(other)) < 0

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return bool(self.num)

    # expansion at eps -> 0+
    @property
    def valuation(self) -> int | None:
        """Order of the lowest term of the expansion; ``None`` for zero."""
        if not self.num:
            return None
        return _low(self.num)[0] - _low(self.den)[0]

    @property
    def lowest_coeff(self) -> Fraction:
        if not self.num:
            return Fraction(0)
        return _low(self.num)[1] / _low(self.den)[1]

    def standard_part(self) -> Fraction:
        """Rational part of a finite element (raises for infinite ones)."""
        v = self.valuation
        if v is None or v > 0:
            return Fraction(0)
        if v < 0:
            raise ValueError(f"{self} is infinite")
        return self.lowest_coeff

    def is_infinite(self) -> bool:
        v = self.valuation
        return v is not None and v < 0

    def is_rational(self) -> bool:
        return self.den == _ONE and len(self.num) <= 1

    def __repr__(self):
        return f"QEps({self})"

    def __str__(self):
        num = _poly_str(self.num)
        if self.den == _ONE:
            return num
        den = _poly_str(self.den)
        if sum(1 for c in self.num if c) > 1:
            num = f"({num})"
        if sum(1 for c in self.den if c) > 1 or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"


def qeps_cmp(a: QEps, b: QEps) -> int:
    """Sign of ``a - b`` without reducing the difference."""
    if a.den == b.den:
        diff = _padd(a.num, _pneg(b.num))
        scale = _low(a.den)[1]
    else:
        diff = _padd(_pmul(a.num, b.den), _pneg(_pmul(b.num, a.den)))
        scale = _low(a.den)[1] * _low(b.den)[1]
    if not diff:
        return 0
    return 1 if (_low(diff)[1] > 0) == (scale > 0) else -1


def _mono(c: Fraction, k: int) -> str:
    base = "" if k == 0 else ("eps" if k == 1 else f"eps^{k}")
    if k == 0:
        return str(c)
    if c == 1:
        return base
    if c == -1:
        return "-" + base
    return f"{c}*{base}"


def _poly_str(p) -> str:
    if not p:
        return "0"
    terms = [_mono(c, k) for k, c in enumerate(p) if c]
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


ZERO = QEps()
ONE = QEps(1)
EPS = QEps((0, 1))


def field_compare(a, b) -> str:
    """``"<"``, ``"="`` or ``">"``."""
    s = qeps_cmp(QEps.of(a), QEps.of(b))
    return "<" if s < 0 else (">" if s > 0 else "=")


def cauchy_bound(coeffs) -> int:
    """Integer ``N`` with every real root of the polynomial (rational
    coefficients, lowest degree first) strictly below ``N`` in absolute value."""
    coeffs = list(_trim(Fraction(c) for c in coeffs))
    if len(coeffs) <= 1:
        return 0
    lead = abs(coeffs[-1])
    return math.floor(1 + max(abs(c) / lead for c in coeffs[:-1])) + 1


# parsing --------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|(eps|n|inf)|(\*\*|[-+*/^()]))")


def tokenize(text: str) -> list[str]:
    out, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot read {text[pos:]!r}")
        out.append(m.group(1) or m.group(2) or m.group(3))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def _lmul(p: dict, q: dict) -> dict:
    out: dict = {}
    for i, a in p.items():
        for j, b in q.items():
            out[i + j] = out.get(i + j, ZERO) + a * b
    return {k: v for k, v in out.items() if v}


def _ladd(p: dict, q: dict, sign: int = 1) -> dict:
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, ZERO) + (v if sign > 0 else -v)
    return {k: v for k, v in out.items() if v}


class _ExprParser:
    """Recursive descent over ``+ - * / ^`` with atoms numbers, ``eps``, ``n``
    and ``inf``.  Values are Laurent polynomials in ``n`` (dicts power ->
    coefficient); ``inf`` is only allowed alone, possibly signed."""

    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'a token'}, found {tok!r}")
        self.pos += 1
        return tok

    def expr(self) -> dict:
        val = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            val = _ladd(val, self.term(), 1 if op == "+" else -1)
        return val

    def term(self) -> dict:
        val = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op == "*":
                val = _lmul(val, rhs)
            else:
                if len(rhs) != 1:
                    raise ParseError("can only divide by a single term")
                (k, c), = rhs.items()
                val = _lmul(val, {-k: ONE / c})
        return val

    def unary(self) -> dict:
        if self.peek() == "-":
            self.take()
            return {k: -v for k, v in self.unary().items()}
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> dict:
        base = self.atom()
        if self.peek() in ("^", "**"):
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            tok = self.take()
            if not tok.isdigit():
                raise ParseError(f"bad exponent {tok!r}")
            out = {0: ONE}
            for _ in range(int(tok)):
                out = _lmul(out, base)
            if neg:
                if len(out) != 1:
                    raise ParseError("negative power of a sum")
                (k, c), = out.items()
                out = {-k: ONE / c}
            return out
        return base

    def atom(self) -> dict:
        tok = self.take()
        if tok == "(":
            val = self.expr()
            self.take(")")
            return val
        if tok == "eps":
            return {0: EPS}
        if tok == "n":
            return {1: ONE}
        if tok == "inf":
            raise ParseError("inf cannot appear inside an expression")
        if tok[0].isdigit():
            c = QEps(Fraction(tok))
            return {0: c} if c else {}
        raise ParseError(f"unexpected {tok!r}")


def parse_laurent(text: str):
    """Parse an endpoint expression.

    Returns ``float('inf')``/``float('-inf')`` for infinite endpoints and
    otherwise a dict mapping powers of ``n`` to coefficients.
    """
    compact = text.replace(" ", "")
    if compact in ("inf", "+inf"):
        return math.inf
    if compact == "-inf":
        return -math.inf
    p = _ExprParser(text)
    val = p.expr()
    if p.peek() is not None:
        raise ParseError(f"trailing input in {text!r}")
    return val


def parse_qeps(text: str) -> QEps:
    """Expressions such as ``1/2``, ``-3*eps``, ``1 + eps^2``, ``1/eps``."""
    val = parse_laurent(text)
    if isinstance(val, float) or any(k != 0 for k in val):
        raise ParseError(f"{text!r} is not a field element")
    return val.get(0, ZERO)
