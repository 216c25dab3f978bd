"""Exact arithmetic over the Laurent ring Z[t, t^-1]."""
import re
from math import gcd

import numpy as np

from . import kernels
from .errors import InvalidSpecialization, ZeroPolynomialError


class LaurentPolynomial:
    """Immutable Laurent polynomial with integer coefficients.

    Stored as a sorted tuple of ``(exponent, coefficient)`` pairs with no
    zero coefficients; the zero polynomial is the empty tuple.
    """

    __slots__ = ("terms",)

    def __init__(self, coefficients=None):
        if coefficients is None:
            coefficients = {}
        elif isinstance(coefficients, int):
            coefficients = {0: coefficients}
        items = coefficients.items() if isinstance(coefficients, dict) else coefficients
        acc = {}
        for e, c in items:
            acc[int(e)] = acc.get(int(e), 0) + int(c)
        self.terms = tuple(sorted((e, c) for e, c in acc.items() if c))

    @classmethod
    def _raw(cls, terms):
        p = object.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def monomial(cls, exponent, coefficient=1):
        return cls._raw(((exponent, coefficient),) if coefficient else ())

    @classmethod
    def coerce(cls, x):
        if isinstance(x, LaurentPolynomial):
            return x
        if isinstance(x, (int, np.integer)):
            return cls._raw(((0, int(x)),) if x else ())
        if isinstance(x, str):
            return parse_laurent(x)
        raise TypeError(f"cannot interpret {x!r} as a Laurent polynomial")

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        other = LaurentPolynomial.coerce(other)
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return LaurentPolynomial._raw(tuple(sorted((e, c) for e, c in acc.items() if c)))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._raw(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        return self + (-LaurentPolynomial.coerce(other))

    def __rsub__(self, other):
        return LaurentPolynomial.coerce(other) - self

    def __mul__(self, other):
        other = LaurentPolynomial.coerce(other)
        acc = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial._raw(tuple(sorted((e, c) for e, c in acc.items() if c)))

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if not self.is_unit():
                raise ValueError("only units have negative powers")
            (e, c), = self.terms
            return LaurentPolynomial.monomial(e * n, c ** (-n))
        out = LaurentPolynomial.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    @classmethod
    def one(cls):
        return cls._raw(((0, 1),))

    @classmethod
    def zero(cls):
        return cls._raw(())

    @classmethod
    def t(cls):
        return cls._raw(((1, 1),))

    def divexact(self, other):
        """Exact quotient; raises ``ArithmeticError`` if ``other`` does not divide."""
        other = LaurentPolynomial.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = dict(self.terms)
        q = {}
        top_e, top_c = other.terms[-1]
        low_e = other.terms[0][0]
        span = top_e - low_e
        lowest = self.terms[0][0] if self.terms else 0
        while rem:
            e = max(rem)
            c = rem[e]
            if e - lowest < span or c % top_c:
                raise ArithmeticError(f"{other} does not divide {self}")
            k, f = e - top_e, c // top_c
            q[k] = f
            for oe, oc in other.terms:
                v = rem.get(oe + k, 0) - f * oc
                if v:
                    rem[oe + k] = v
                else:
                    rem.pop(oe + k, None)
        return LaurentPolynomial(q)

    def substitute_power(self, d):
        """Image under ``t -> t^d``."""
        return LaurentPolynomial((e * d, c) for e, c in self.terms)

    def evaluate_mod(self, c, p):
        """Value at ``t = c`` in Z/p; ``c`` must be a unit mod p."""
        if c % p == 0:
            raise InvalidSpecialization(f"t -> {c} is not a unit mod {p}")
        cinv = pow(c, -1, p)
        total = 0
        for e, a in self.terms:
            total += a * (pow(c, e, p) if e >= 0 else pow(cinv, -e, p))
        return total % p

    def evaluate(self, x):
        from fractions import Fraction
        return sum(Fraction(a) * Fraction(x) ** e for e, a in self.terms)

    def reduce_mod(self, m):
        """Coefficients reduced into ``0..|m|-1``."""
        m = abs(m)
        return LaurentPolynomial._raw(tuple((e, c % m) for e, c in self.terms if c % m))

    # -- inspection -------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_unit(self):
        return len(self.terms) == 1 and abs(self.terms[0][1]) == 1

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0] == 0)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not an integer")
        return self.terms[0][1] if self.terms else 0

    @property
    def min_exponent(self):
        return self.terms[0][0]

    @property
    def max_exponent(self):
        return self.terms[-1][0]

    def span(self):
        """``max_exponent - min_exponent`` (the degree after clearing t-powers)."""
        return self.terms[-1][0] - self.terms[0][0] if self.terms else -1

    def content(self):
        g = 0
        for _, c in self.terms:
            g = gcd(g, c)
        return g

    def coefficient(self, e):
        return dict(self.terms).get(e, 0)

    def height(self):
        return max((abs(c) for _, c in self.terms), default=0)

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            other = LaurentPolynomial.coerce(other)
        return isinstance(other, LaurentPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(("laurent", self.terms))

    def __lt__(self, other):
        return (self.span(), self.terms) < (other.span(), other.terms)

    def __repr__(self):
        return f"LaurentPolynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = ""
        for e, c in reversed(self.terms):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                power = "t" if e == 1 else f"t^{e}"
                body = power if a == 1 else f"{a}*{power}"
            out += (("-" if sign == "-" else "") + body) if not out else sign + body
        return out


def coerce_points(points):
    return [(int(p), int(c)) for p, c in points]


def unit_normalize(p):
    """Split ``p = (sign * t^k) * core`` with core's lowest term positive at t^0."""
    p = LaurentPolynomial.coerce(p)
    if p.is_zero():
        raise ZeroPolynomialError("the zero polynomial has no unit normalization")
    k = p.min_exponent
    sign = 1 if p.terms[0][1] > 0 else -1
    core = LaurentPolynomial._raw(tuple((e - k, sign * c) for e, c in p.terms))
    return (sign, k), core


def laurent_arith(a, b, op):
    a, b = LaurentPolynomial.coerce(a), LaurentPolynomial.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


_LAURENT_TERM = re.compile(r"""
    \s*(?P<sign>[+-])?\s*
    (?:
        (?P<coef>\d+)\s*(?:\*\s*(?P<var1>t)(?:\s*\^\s*(?P<exp1>[+-]?\d+|\([+-]?\d+\)))?)?
      | (?P<var2>t)(?:\s*\^\s*(?P<exp2>[+-]?\d+|\([+-]?\d+\)))?
    )\s*""", re.VERBOSE)


def parse_laurent(text):
    """Parse literals such as ``3``, ``t+1``, ``t^2+1``, ``2*t^-1 - 5``."""
    pos = 0
    acc = {}
    s = text.strip()
    if not s:
        raise ValueError("empty Laurent polynomial")
    first = True
    while pos < len(s):
        m = _LAURENT_TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse Laurent polynomial {text!r} at offset {pos}")
        if not first and m.group("sign") is None:
            raise ValueError(f"missing operator in {text!r} at offset {pos}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("coef") is not None:
            coef = int(m.group("coef"))
            if m.group("var1"):
                exp = int((m.group("exp1") or "1").strip("()"))
            else:
                exp = 0
        else:
            coef = 1
            exp = int((m.group("exp2") or "1").strip("()"))
        acc[exp] = acc.get(exp, 0) + sign * coef
        pos = m.end()
        first = False
    return LaurentPolynomial(acc)


# ---------------------------------------------------------------------------
# matrices over Z[t, t^-1]
# ---------------------------------------------------------------------------

class LambdaMatrix:
    """Dense matrix of Laurent polynomials, stored row-major as tuples."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, cols=None):
        entries = tuple(tuple(LaurentPolynomial.coerce(x) for x in row) for row in entries)
        if cols is None:
            if not entries:
                raise ValueError("column count required for a matrix with no rows")
            cols = len(entries[0])
        if any(len(row) != cols for row in entries):
            raise ValueError("ragged matrix")
        self.rows = len(entries)
        self.cols = cols
        self.entries = entries

    @classmethod
    def zeros(cls, rows, cols):
        z = LaurentPolynomial.zero()
        return cls([[z] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = LaurentPolynomial.zero()
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a.terms:
                        b = other.entries[k][j]
                        if b.terms:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return LambdaMatrix(out, other.cols)

    def delete_column(self, j):
        return LambdaMatrix([row[:j] + row[j + 1:] for row in self.entries], self.cols - 1)

    def map(self, f):
        return LambdaMatrix([[f(x) for x in row] for row in self.entries], self.cols)

    def tolist(self):
        return [list(row) for row in self.entries]

    def __eq__(self, other):
        return (isinstance(other, LambdaMatrix) and self.cols == other.cols
                and self.entries == other.entries)

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in row) for row in self.entries)
        return f"LambdaMatrix({self.rows}x{self.cols}: [{body}])"


def specialize(A, p, c):
    """Integer matrix of ``A`` evaluated at ``t = c`` and reduced mod ``p``."""
    _check_point(p, c)
    M = np.zeros((A.rows, A.cols), dtype=object)
    for i, row in enumerate(A.entries):
        for j, x in enumerate(row):
            M[i, j] = x.evaluate_mod(c, p)
    return M


def _is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _check_point(p, c):
    if not _is_prime(p):
        raise InvalidSpecialization(f"{p} is not prime")
    if c % p == 0:
        raise InvalidSpecialization(f"t -> {c} is not a unit mod {p}")


def specialize_corank(A, p, c):
    """``cols - rank`` over F_p of ``A`` at ``t = c``."""
    M = specialize(A, p, c)
    return A.cols - kernels.rank_mod_p(M, p)


def _pivot_key(x):
    return (x.span(), x.height(), len(x.terms))


def rank_over_fraction_field(A):
    """Rank over Q(t) by fraction-free (Bareiss) elimination over Z[t, t^-1].

    Pivots are chosen with the smallest span, then the smallest coefficients.
    """
    M = [list(row) for row in A.entries]
    m, n = A.rows, A.cols
    prev = LaurentPolynomial.one()
    rank = 0
    for k in range(min(m, n)):
        best = None
        for i in range(k, m):
            for j in range(k, n):
                x = M[i][j]
                if x.terms and (best is None or _pivot_key(x) < _pivot_key(M[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        M[k], M[bi] = M[bi], M[k]
        if bj != k:
            for row in M:
                row[k], row[bj] = row[bj], row[k]
        p = M[k][k]
        for i in range(k + 1, m):
            a = M[i][k]
            for j in range(k + 1, n):
                M[i][j] = (p * M[i][j] - a * M[k][j]).divexact(prev)
            M[i][k] = LaurentPolynomial.zero()
        prev = p
        rank += 1
    return rank
