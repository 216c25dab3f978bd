"""Direct sums of Λ, Λ/<a> and Λ/<m, f> over Λ = Z[t, t^-1].

Pieces are stored in canonical form so that equal ideals compare equal:

* ``cyc(a)`` keeps the unit-normalized core of ``a``;
* ``cyc(m, f)`` keeps ``|m|`` and ``f`` reduced mod ``m``, normalized up to
  multiplication by ``c * t^k`` with ``c`` a unit mod ``m``.

Only pairs with an integer entry are admitted; for those the regular
sequence condition is "f is nonzero mod every prime dividing m".
"""
import re
from collections import Counter
from dataclasses import dataclass
from math import gcd

from .errors import NotRegularSequence, NotStructured
from .laurent import (LambdaMatrix, LaurentPolynomial, _check_point, parse_laurent,
                      unit_normalize)

_UNIT_SEARCH_LIMIT = 10000


def prime_factors(m):
    m = abs(m)
    out = []
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        out.append(m)
    return out


def _shift_to_zero(p):
    k = p.min_exponent
    return LaurentPolynomial((e - k, c) for e, c in p.terms)


def canonical_cyclic1(a):
    """Canonical generator of <a>; ``None`` when <a> is the unit ideal."""
    a = LaurentPolynomial.coerce(a)
    if a.is_zero():
        return LaurentPolynomial.zero()
    _, core = unit_normalize(a)
    return None if core.is_unit() else core


def canonical_cyclic2(a, b):
    """Canonical ``(m, f)`` with ``<m, f> = <a, b>``; ``None`` for the unit ideal.

    Raises :class:`NotRegularSequence` when neither entry is an integer or
    the pair is not regular.
    """
    a, b = LaurentPolynomial.coerce(a), LaurentPolynomial.coerce(b)
    if not a.is_constant() and b.is_constant():
        a, b = b, a
    if not a.is_constant():
        raise NotRegularSequence(a, b, "undecided: neither entry is an integer")
    m = abs(a.constant_value())
    if m == 0:
        raise NotRegularSequence(a, b, "first entry is zero")
    if m == 1:
        return None
    for p in prime_factors(m):
        if b.reduce_mod(p).is_zero():
            raise NotRegularSequence(a, b, f"second entry vanishes mod {p}")
    f = b.reduce_mod(m)
    if len(f.terms) == 1 and gcd(f.terms[0][1], m) == 1:
        return None  # f is a unit mod m
    if m <= _UNIT_SEARCH_LIMIT:
        units = [u for u in range(1, m) if gcd(u, m) == 1]
    else:
        units = [1, m - 1]
    best = None
    for u in units:
        g = _shift_to_zero((f * u).reduce_mod(m))
        if best is None or g.terms < best.terms:
            best = g
    return LaurentPolynomial(m), best


def is_regular_pair(a, b):
    try:
        canonical_cyclic2(a, b)
    except NotRegularSequence:
        return False
    return True


def ideal_equal(pair1, pair2):
    """Equality of two-generator ideals ``<a, b>`` admitted by :func:`canonical_cyclic2`."""
    return canonical_cyclic2(*pair1) == canonical_cyclic2(*pair2)


def _piece_key(x):
    if isinstance(x, tuple):
        return tuple(p.terms for p in x)
    return x.terms


@dataclass(frozen=True)
class StructuredModule:
    """``Λ^free_rank ⊕ ⨁ Λ/<a> ⊕ ⨁ Λ/<m, f>`` with pieces kept canonical."""
    free_rank: int = 0
    cyclic1: tuple = ()
    cyclic2: tuple = ()

    def __post_init__(self):
        free = int(self.free_rank)
        if free < 0:
            raise ValueError("free rank must be nonnegative")
        # repeated summands are common (M^k); canonicalize each distinct one once
        seen1, seen2 = {}, {}
        c1 = []
        for a in self.cyclic1:
            a = LaurentPolynomial.coerce(a)
            if a not in seen1:
                seen1[a] = canonical_cyclic1(a)
            core = seen1[a]
            if core is None:
                continue
            if core.is_zero():
                free += 1
            else:
                c1.append(core)
        c2 = []
        for a, b in self.cyclic2:
            key = (LaurentPolynomial.coerce(a), LaurentPolynomial.coerce(b))
            if key not in seen2:
                seen2[key] = canonical_cyclic2(*key)
            if seen2[key] is not None:
                c2.append(seen2[key])
        object.__setattr__(self, "free_rank", free)
        object.__setattr__(self, "cyclic1", tuple(sorted(c1, key=_piece_key)))
        object.__setattr__(self, "cyclic2", tuple(sorted(c2, key=_piece_key)))

    @classmethod
    def free(cls, n=1):
        return cls(n)

    @classmethod
    def cyc(cls, a, b=None, power=1):
        if b is None:
            return cls(0, (a,) * power)
        return cls(0, (), ((a, b),) * power)

    @classmethod
    def zero(cls):
        return cls()

    def __add__(self, other):
        return StructuredModule(self.free_rank + other.free_rank,
                                self.cyclic1 + other.cyclic1,
                                self.cyclic2 + other.cyclic2)

    def __mul__(self, k):
        if k < 0:
            raise ValueError("negative multiplicity")
        return StructuredModule(self.free_rank * k, self.cyclic1 * k, self.cyclic2 * k)

    __pow__ = __mul__

    def is_zero(self):
        return not (self.free_rank or self.cyclic1 or self.cyclic2)

    def cyclic2_part(self):
        return StructuredModule(0, (), self.cyclic2)

    def piece_count(self):
        return self.free_rank + len(self.cyclic1) + len(self.cyclic2)

    def __str__(self):
        return format_module(self)


def format_module(M):
    parts = []

    def emit(text, k):
        parts.append(text if k == 1 else f"{text}^{k}")

    for (m, f), k in Counter(M.cyclic2).items():
        emit(f"cyc({m}, {f})", k)
    for a, k in Counter(M.cyclic1).items():
        emit(f"cyc({a})", k)
    if M.free_rank:
        parts.append(f"free({M.free_rank})")
    return " + ".join(parts) if parts else "0"


def _split_top(text, sep):
    depth, start, out = 0, 0, []
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced ')' in {text!r}")
        elif ch == sep and depth == 0:
            out.append(text[start:i])
            start = i + 1
    if depth:
        raise ValueError(f"unbalanced '(' in {text!r}")
    out.append(text[start:])
    return out


_SUMMAND = re.compile(r"^\s*(free|cyc|Lambda)\s*(?:\((.*)\))?\s*(?:\^\s*(\d+))?\s*$", re.S)


def parse_module(text):
    """Parse ``cyc(3,t+1)^4 + cyc(3) + free(2)``; ``0`` is the zero module."""
    if not text.strip():
        raise ValueError("empty module expression")
    total = StructuredModule.zero()
    for part in _split_top(text, "+"):
        if part.strip() == "0":
            continue
        m = _SUMMAND.match(part)
        if m is None:
            raise ValueError(f"cannot parse module summand {part.strip()!r}")
        kind, args, power = m.group(1), m.group(2), int(m.group(3) or 1)
        if kind == "Lambda":
            if args is not None:
                raise ValueError("Lambda takes no arguments")
            piece = StructuredModule.free(1)
        elif args is None:
            raise ValueError(f"{kind} needs arguments")
        elif kind == "free":
            piece = StructuredModule.free(int(args))
        else:
            polys = [parse_laurent(a) for a in _split_top(args, ",")]
            if len(polys) == 1:
                piece = StructuredModule.cyc(polys[0])
            elif len(polys) == 2:
                piece = StructuredModule.cyc(*polys)
            else:
                raise ValueError("cyc takes one or two arguments")
        total = total + piece * power
    return total


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------

def module_rank(M):
    """Dimension of ``M ⊗ Q(t)``; torsion pieces contribute nothing."""
    return M.free_rank + sum(1 for a in M.cyclic1 if a.is_zero())


def koszul_dual_pair(a, b):
    """Ext^2 of ``Λ/<a, b>`` is the cokernel of ``Λ^2 -> Λ``, ``(1,0) -> b``, ``(0,1) -> -a``."""
    a, b = LaurentPolynomial.coerce(a), LaurentPolynomial.coerce(b)
    return b, -a


def ext2_structured(M):
    """``Ext^2_Λ(M, Λ)``: zero on pieces of projective dimension <= 1."""
    for m, f in set(M.cyclic2):
        if not is_regular_pair(m, f):
            raise NotRegularSequence(m, f)
    pieces = [koszul_dual_pair(m, f) for m, f in M.cyclic2]
    return StructuredModule(0, (), tuple(pieces))


def fiber_dimension(M, p, c):
    """``dim_{F_p} M ⊗ Λ/<p, t - c>``."""
    _check_point(p, c)
    total = M.free_rank
    total += sum(1 for a in M.cyclic1 if a.evaluate_mod(c, p) == 0)
    total += sum(1 for m, f in M.cyclic2
                 if m.evaluate_mod(c, p) == 0 and f.evaluate_mod(c, p) == 0)
    return total


def min_generators_lower_bound(M, points):
    """Largest fiber dimension over the maximal ideals ``<p, t - c>``."""
    return max((fiber_dimension(M, p, c) for p, c in points), default=0)


def obvious_presentation_deficiency(M):
    return M.free_rank - len(M.cyclic2)


def module_deficiency_bounds(M, points=((3, -1),)):
    """``(lower, upper)`` with ``lower <= def(M) <= upper``.

    ``upper`` is ``rank(M)`` minus the generator bound for ``Ext^2(M)``;
    ``lower`` is the deficiency of the direct-sum presentation.
    """
    upper = module_rank(M) - min_generators_lower_bound(ext2_structured(M), points)
    return obvious_presentation_deficiency(M), upper


def abelian_group_description(M):
    """Underlying abelian group as text, e.g. ``Z_3`` or ``Z_3^2 + Z_5``.

    Only ``cyc(m, f)`` with ``f``'s extreme coefficients invertible mod m
    have finite rank over Z/m; other pieces print as ``inf``.
    """
    parts = Counter()
    infinite = M.free_rank + len(M.cyclic1)
    for m, f in M.cyclic2:
        n = m.constant_value()
        lo, hi = f.terms[0][1], f.terms[-1][1]
        if gcd(lo, n) == 1 and gcd(hi, n) == 1:
            parts[n] += f.span()
        else:
            infinite += 1
    out = [f"Z_{n}" if k == 1 else f"Z_{n}^{k}" for n, k in sorted(parts.items()) if k]
    if infinite:
        out.append("inf")
    return " + ".join(out) if out else "0"


# ---------------------------------------------------------------------------
# from relation matrices to structured modules
# ---------------------------------------------------------------------------

def _dense(p):
    """Coefficient list (low to high) of a polynomial with min exponent 0."""
    out = [0] * (p.max_exponent + 1)
    for e, c in p.terms:
        out[e] = c
    return out


def _from_dense(coeffs):
    return LaurentPolynomial(enumerate(coeffs))


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _gcd_mod_p(f, g, p):
    a = _trim([x % p for x in _dense(_shift_to_zero(f))])
    b = _trim([x % p for x in _dense(_shift_to_zero(g))])
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            q = (a[-1] * inv) % p
            shift = len(a) - len(b)
            for i, x in enumerate(b):
                a[i + shift] = (a[i + shift] - q * x) % p
            _trim(a)
            if not a:
                break
        a, b = b, a
    return _shift_to_zero(_from_dense(a)) if a else LaurentPolynomial.zero()


def _monic_remainder(g, f):
    """Remainder of ``g`` by ``f`` in Z[t]; ``f``'s top coefficient is +-1."""
    a = _dense(_shift_to_zero(g))
    b = _dense(_shift_to_zero(f))
    lead = b[-1]
    while len(a) >= len(b):
        q = a[-1] * lead
        shift = len(a) - len(b)
        for i, x in enumerate(b):
            a[i + shift] -= q * x
        _trim(a)
        if not a:
            break
    return _from_dense(a)


def _column_piece(polys):
    """Piece ``Λ/I`` for the ideal ``I`` generated by ``polys`` (one generator)."""
    gens = [unit_normalize(p)[1] for p in polys if not p.is_zero()]
    for _ in range(1000):
        if not gens:
            return StructuredModule.free(1)
        if any(p.is_unit() for p in gens):
            return StructuredModule.zero()
        m = 0
        for p in gens:
            if p.is_constant():
                m = gcd(m, p.constant_value())
        others = sorted({p for p in gens if not p.is_constant()}, key=_piece_key)
        if m:
            if m == 1:
                return StructuredModule.zero()
            reduced = [p.reduce_mod(m) for p in others]
            others = sorted({unit_normalize(p)[1] for p in reduced if not p.is_zero()},
                            key=_piece_key)
            if not others:
                return StructuredModule.cyc(m)
            if len(prime_factors(m)) == 1 and prime_factors(m)[0] == m:
                g = others[0]
                for h in others[1:]:
                    g = _gcd_mod_p(g, h, m)
                return StructuredModule.cyc(m, g)
            if len(others) == 1:
                return StructuredModule.cyc(m, others[0])
            raise NotStructured(f"ideal <{m}, {', '.join(map(str, others))}> "
                                "is outside the supported class")
        if len(others) == 1:
            return StructuredModule.cyc(others[0])
        monic = [p for p in others if abs(p.terms[-1][1]) == 1]
        if not monic:
            raise NotStructured("ideal <" + ", ".join(map(str, others)) +
                                "> has no integer or monic generator")
        f = min(monic, key=_piece_key)
        changed = False
        new = [f]
        for g in others:
            if g is f:
                continue
            r = _monic_remainder(g, f)
            if r != g:
                changed = True
            if not r.is_zero():
                new.append(unit_normalize(r)[1])
        if not changed:
            raise NotStructured("ideal <" + ", ".join(map(str, others)) +
                                "> could not be reduced")
        gens = new
    raise NotStructured("ideal reduction did not terminate")  # pragma: no cover


def _eliminate_units(rows, ncols):
    """Tietze-eliminate generators that appear with a unit coefficient."""
    cols = list(range(ncols))
    rows = [list(r) for r in rows]
    while True:
        rows = [r for r in rows if any(not x.is_zero() for x in r)]
        hit = None
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                if x.is_unit():
                    hit = (i, j)
                    break
            if hit:
                break
        if hit is None:
            return rows, cols
        i, j = hit
        pivot = rows.pop(i)
        inv = pivot[j] ** -1
        for r in rows:
            if not r[j].is_zero():
                f = r[j] * inv
                for k in range(len(r)):
                    if not pivot[k].is_zero():
                        r[k] = r[k] - f * pivot[k]
        for r in rows:
            del r[j]
        del cols[j]


def classify_structured(M):
    """Recognize a :class:`LambdaPresentation` as a structured module.

    Generators with a unit coefficient are eliminated first; afterwards each
    relation must involve a single generator. Raises :class:`NotStructured`
    otherwise.
    """
    rows, cols = _eliminate_units(M.relations.entries, M.generators)
    by_col = {j: [] for j in range(len(cols))}
    for r in rows:
        support = [j for j, x in enumerate(r) if not x.is_zero()]
        if len(support) != 1:
            raise NotStructured("relations couple several generators",
                                LambdaMatrix(rows, len(cols)) if rows else None)
        by_col[support[0]].append(r[support[0]])
    total = StructuredModule.zero()
    for j in range(len(cols)):
        total = total + _column_piece(by_col[j])
    return total


# ---------------------------------------------------------------------------
# twist-spun trefoil building blocks
# ---------------------------------------------------------------------------

def trefoil_cover_piece(d):
    """H_1 of the winding-d cover of the twist-spun trefoil complement."""
    if d < 0:
        raise ValueError("winding must be nonnegative")
    if d == 0:
        return StructuredModule.free(1)
    return StructuredModule.cyc(3, LaurentPolynomial.monomial(d) + 1)


def boundary_cover_h1(d):
    """H_1 of the induced cover of the boundary S^1 x S^2."""
    if d < 0:
        raise ValueError("winding must be nonnegative")
    return StructuredModule.free(1) if d == 0 else StructuredModule.zero()


def mv_assembly(base, windings, extra=None):
    """Replace circles of the given windings by twist-spun trefoil complements.

    Each ``d > 0`` adds ``Λ/<3, t^d + 1>``; ``d = 0`` leaves ``base`` alone.
    ``extra`` is an optional module added verbatim.
    """
    total = base
    for d in windings:
        if d < 0:
            raise ValueError("winding must be nonnegative")
        if d > 0:
            total = total + trefoil_cover_piece(d)
    return total + extra if extra is not None else total
