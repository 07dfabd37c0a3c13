"""Ordinal arithmetic below epsilon_0 in Cantor normal form.

An ordinal is a finite sum w^e1*c1 + ... + w^ek*ck with strictly decreasing
exponents (themselves ordinals of the same kind) and positive integer
coefficients. The empty sum is 0. Addition, multiplication, exponentiation
and comparison follow the standard ordinal rules; a separate fixed-shape
oracle below w^3 provides an independent cross-check for tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterator, Union

from .errors import InputError, RangeError

ExprAtom = Union[str, int]
Expr = Union[ExprAtom, tuple]


@dataclass(frozen=True)
class CnfOrdinal:
    """Cantor normal form: tuple of (exponent, coefficient) pairs, exponents strictly decreasing."""

    terms: tuple = ()

    def __post_init__(self) -> None:
        prev = None
        for exp, coeff in self.terms:
            if not isinstance(exp, CnfOrdinal) or not isinstance(coeff, int):
                raise InputError("CNF term must be (CnfOrdinal exponent, int coefficient)")
            if coeff <= 0:
                raise InputError("CNF coefficients must be positive")
            if prev is not None and cnf_cmp(exp, prev) >= 0:
                raise InputError("CNF exponents must be strictly decreasing")
            prev = exp

    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero())

    def leading_exponent(self) -> "CnfOrdinal":
        if not self.terms:
            raise InputError("0 has no leading exponent")
        return self.terms[0][0]

    def finite_part(self) -> int:
        """Coefficient of the w^0 term, 0 when absent."""
        if self.terms and self.terms[-1][0].is_zero():
            return self.terms[-1][1]
        return 0

    def limit_part(self) -> "CnfOrdinal":
        """The ordinal with the w^0 term removed."""
        if self.terms and self.terms[-1][0].is_zero():
            return CnfOrdinal(self.terms[:-1])
        return self

    def to_int(self) -> int:
        if not self.is_finite():
            raise RangeError(f"{self} is not a natural number")
        return self.finite_part()

    def __lt__(self, other: "CnfOrdinal") -> bool:
        return cnf_cmp(self, other) < 0

    def __le__(self, other: "CnfOrdinal") -> bool:
        return cnf_cmp(self, other) <= 0

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return "+".join(_term_str(exp, coeff) for exp, coeff in self.terms)

    def __repr__(self) -> str:
        return f"CnfOrdinal({self})"


ZERO = CnfOrdinal()
ONE = CnfOrdinal(((ZERO, 1),))
OMEGA = CnfOrdinal(((ONE, 1),))


def from_int(n: int) -> CnfOrdinal:
    if n < 0:
        raise InputError("ordinals are nonnegative")
    return ZERO if n == 0 else CnfOrdinal(((ZERO, n),))


def omega_power(exp: CnfOrdinal, coeff: int = 1) -> CnfOrdinal:
    return CnfOrdinal(((exp, coeff),))


def cnf_cmp(a: CnfOrdinal, b: CnfOrdinal) -> int:
    """-1, 0 or 1 according to ordinal order."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = cnf_cmp(ea, eb)
        if c != 0:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    if len(a.terms) == len(b.terms):
        return 0
    return -1 if len(a.terms) < len(b.terms) else 1


def cnf_add(a: CnfOrdinal, b: CnfOrdinal) -> CnfOrdinal:
    if b.is_zero():
        return a
    if a.is_zero():
        return b
    lead = b.terms[0][0]
    kept = [t for t in a.terms if cnf_cmp(t[0], lead) > 0]
    merged = b.terms[0][1]
    for exp, coeff in a.terms:
        if cnf_cmp(exp, lead) == 0:
            merged += coeff
    return CnfOrdinal(tuple(kept) + ((lead, merged),) + b.terms[1:])


def cnf_mul(a: CnfOrdinal, b: CnfOrdinal) -> CnfOrdinal:
    if a.is_zero() or b.is_zero():
        return ZERO
    e0, c0 = a.terms[0]
    out = ZERO
    for exp, coeff in b.terms:
        if exp.is_zero():
            # right factor finite: only the leading coefficient inflates
            piece = CnfOrdinal(((e0, c0 * coeff),) + a.terms[1:])
        else:
            piece = omega_power(cnf_add(e0, exp), coeff)
        out = cnf_add(out, piece)
    return out


def _left_decrement(exp: CnfOrdinal) -> CnfOrdinal:
    """exp - 1 when exp is a positive natural, exp itself when infinite."""
    if exp.is_finite():
        return from_int(exp.to_int() - 1)
    return exp


def _pow_finite_exponent(a: CnfOrdinal, n: int) -> CnfOrdinal:
    out = ONE
    base = a
    while n:
        if n & 1:
            out = cnf_mul(out, base)
        base = cnf_mul(base, base)
        n >>= 1
    return out


def cnf_pow(a: CnfOrdinal, b: CnfOrdinal) -> CnfOrdinal:
    if b.is_zero():
        return ONE
    if a.is_zero():
        return ZERO
    if cnf_cmp(a, ONE) == 0:
        return ONE
    if b.is_finite():
        return _pow_finite_exponent(a, b.to_int())
    limit = b.limit_part()
    tail = _pow_finite_exponent(a, b.finite_part())
    if a.is_finite():
        # n^(w^f) = w^(w^(f-1)) with the decrement skipped on infinite f
        mapped = tuple((_left_decrement(exp), coeff) for exp, coeff in limit.terms)
        head = omega_power(CnfOrdinal(mapped))
    else:
        head = omega_power(cnf_mul(a.leading_exponent(), limit))
    return cnf_mul(head, tail)


def _term_str(exp: CnfOrdinal, coeff: int) -> str:
    if exp.is_zero():
        return str(coeff)
    if cnf_cmp(exp, ONE) == 0:
        base = "w"
    else:
        inner = str(exp)
        base = f"w^{inner}" if inner == "w" or inner.isdigit() else f"w^({inner})"
    return base if coeff == 1 else f"{base}*{coeff}"


def _tokenize(text: str) -> Iterator[str]:
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+*^()w":
            yield ch
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            yield text[i:j]
            i = j
        else:
            raise InputError(f"unexpected character {ch!r} in ordinal expression")


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(_tokenize(text))
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise InputError("unexpected end of ordinal expression")
        self.pos += 1
        return tok

    def parse(self) -> CnfOrdinal:
        value = self.sum()
        if self.peek() is not None:
            raise InputError(f"trailing input at token {self.peek()!r}")
        return value

    def sum(self) -> CnfOrdinal:
        value = self.product()
        while self.peek() == "+":
            self.take()
            value = cnf_add(value, self.product())
        return value

    def product(self) -> CnfOrdinal:
        value = self.power()
        while self.peek() == "*":
            self.take()
            value = cnf_mul(value, self.power())
        return value

    def power(self) -> CnfOrdinal:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            return cnf_pow(base, self.power())
        return base

    def atom(self) -> CnfOrdinal:
        tok = self.take()
        if tok == "w":
            return OMEGA
        if tok == "(":
            value = self.sum()
            if self.take() != ")":
                raise InputError("unbalanced parenthesis in ordinal expression")
            return value
        if tok.isdigit():
            return from_int(int(tok))
        raise InputError(f"unexpected token {tok!r} in ordinal expression")


def parse_ordinal(text: str) -> CnfOrdinal:
    """Parse the textual syntax, e.g. "w^w*2+w*3+5"."""
    return _Parser(text).parse()


def cnf_eval(expr: Expr) -> CnfOrdinal:
    """Evaluate a nested-tuple expression with the CNF arithmetic."""
    if isinstance(expr, CnfOrdinal):
        return expr
    if expr == "w":
        return OMEGA
    if isinstance(expr, int):
        return from_int(expr)
    op, left, right = expr
    a, b = cnf_eval(left), cnf_eval(right)
    if op == "+":
        return cnf_add(a, b)
    if op == "*":
        return cnf_mul(a, b)
    if op == "^":
        return cnf_pow(a, b)
    raise InputError(f"unknown operator {op!r}")


# Independent oracle: ordinals below w^3 as coordinate triples (a, b, c)
# standing for w^2*a + w*b + c. The rules are the order types of the
# concatenations and lexicographic products of the underlying well-orders,
# written out positionally; no CnfOrdinal code is reused.

Triple = tuple[int, int, int]

_T0: Triple = (0, 0, 0)


def _tadd(x: Triple, y: Triple) -> Triple:
    if y[0] > 0:
        return (x[0] + y[0], y[1], y[2])
    if y[1] > 0:
        return (x[0], x[1] + y[1], y[2])
    return (x[0], x[1], x[2] + y[2])


def _tdeg(x: Triple) -> int:
    if x[0] > 0:
        return 2
    if x[1] > 0:
        return 1
    return 0


def _tmul_omega(x: Triple) -> Triple:
    # x*w jumps to the next power above deg(x)
    if x == _T0:
        return _T0
    d = _tdeg(x)
    if d >= 2:
        raise RangeError("product reaches w^3")
    return (1, 0, 0) if d == 1 else (0, 1, 0)


def _tmul_fin(x: Triple, n: int) -> Triple:
    if n == 0 or x == _T0:
        return _T0
    if x[0] > 0:
        return (x[0] * n, x[1], x[2])
    if x[1] > 0:
        return (0, x[1] * n, x[2])
    return (0, 0, x[2] * n)


def _tmul(x: Triple, y: Triple) -> Triple:
    if x == _T0 or y == _T0:
        return _T0
    out = _T0
    if y[0] > 0:
        out = _tadd(out, _tmul_fin(_tmul_omega(_tmul_omega(x)), y[0]))
    if y[1] > 0:
        out = _tadd(out, _tmul_fin(_tmul_omega(x), y[1]))
    if y[2] > 0:
        out = _tadd(out, _tmul_fin(x, y[2]))
    return out


def _tpow(x: Triple, y: Triple) -> Triple:
    if y == _T0:
        return (0, 0, 1)
    if x == _T0:
        return _T0
    if x == (0, 0, 1):
        return (0, 0, 1)
    if y[0] > 0:
        raise RangeError("exponent w^2 or above leaves the oracle range")
    out = (0, 0, 1)
    if y[1] > 0:
        if _tdeg(x) > 0:
            raise RangeError("infinite base with infinite exponent leaves the oracle range")
        # n^w = w, and n^(w*b) = w^b
        if y[1] == 1:
            out = (0, 1, 0)
        elif y[1] == 2:
            out = (1, 0, 0)
        else:
            raise RangeError("power reaches w^3")
    for _ in range(y[2]):
        out = _tmul(out, x)
    return out


def _triple_eval(expr: Expr) -> Triple:
    if expr == "w":
        return (0, 1, 0)
    if isinstance(expr, int):
        if expr < 0:
            raise InputError("ordinals are nonnegative")
        return (0, 0, expr)
    if isinstance(expr, tuple) and len(expr) == 3 and expr[0] in ("+", "*", "^"):
        op, left, right = expr
        a, b = _triple_eval(left), _triple_eval(right)
        if op == "+":
            return _tadd(a, b)
        if op == "*":
            return _tmul(a, b)
        return _tpow(a, b)
    raise InputError(f"oracle cannot read expression {expr!r}")


def small_ordinal_oracle(expr: Expr) -> CnfOrdinal:
    """Evaluate an expression below w^3 by the positional triple rules."""
    a, b, c = _triple_eval(expr)
    terms = []
    if a:
        terms.append((from_int(2), a))
    if b:
        terms.append((ONE, b))
    if c:
        terms.append((ZERO, c))
    return CnfOrdinal(tuple(terms))
