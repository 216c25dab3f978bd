"""Fox calculus and Alexander-module presentations of infinite cyclic covers."""
from dataclasses import dataclass, field
from math import gcd

from .errors import NotSurjective, RelatorPhiNonzero
from .laurent import LambdaMatrix, LaurentPolynomial
from .presentation import GroupPresentation
from .words import Word


class GroupRingElement:
    """Finite integer combination of free-group words."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {w: c for w, c in (coeffs or {}).items() if c}

    @classmethod
    def of(cls, word, coefficient=1):
        return cls({word: coefficient})

    def __add__(self, other):
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) + c
        return GroupRingElement(out)

    def __neg__(self):
        return GroupRingElement({w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for u, a in self.coeffs.items():
            for v, b in other.coeffs.items():
                w = u * v
                out[w] = out.get(w, 0) + a * b
        return GroupRingElement(out)

    def left_multiply(self, word):
        return GroupRingElement({word * w: c for w, c in self.coeffs.items()})

    def augmentation(self):
        return sum(self.coeffs.values())

    def abelianize(self, phi):
        """Image in Z[t, t^-1] under ``x_i -> t^phi[i]``."""
        acc = {}
        for w, c in self.coeffs.items():
            e = sum(phi[g] * k for g, k in w.syllables)
            acc[e] = acc.get(e, 0) + c
        return LaurentPolynomial(acc)

    def __eq__(self, other):
        return isinstance(other, GroupRingElement) and self.coeffs == other.coeffs

    def __repr__(self):
        return "GroupRingElement(" + " + ".join(
            f"{c}*{w}" for w, c in sorted(self.coeffs.items(), key=lambda x: x[0])) + ")"


def fox_derivative(w, i):
    """Fox derivative of ``w`` with respect to generator ``i``."""
    acc = {}
    prefix = Word.identity()
    for g, s in w.letters():
        if s > 0:
            if g == i:
                acc[prefix] = acc.get(prefix, 0) + 1
            prefix = prefix * Word.gen(g)
        else:
            prefix = prefix * Word.gen(g, -1)
            if g == i:
                acc[prefix] = acc.get(prefix, 0) - 1
    return GroupRingElement(acc)


def fox_row(w, ngens, phi):
    """Row of abelianized Fox derivatives ``x_j -> t^phi[j]`` in one pass."""
    acc = [dict() for _ in range(ngens)]
    s = 0
    for g, sign in w.letters():
        if sign > 0:
            acc[g][s] = acc[g].get(s, 0) + 1
            s += phi[g]
        else:
            s -= phi[g]
            acc[g][s] = acc[g].get(s, 0) - 1
    return [LaurentPolynomial(a) for a in acc]


def fox_jacobian(P, phi):
    """``r x g`` matrix of Fox derivatives under ``x_j -> t^phi[j]``."""
    return LambdaMatrix([fox_row(r, P.ngens, phi) for r in P.relators], P.ngens)


@dataclass(frozen=True)
class ZHomomorphism:
    """Homomorphism to Z given by the value of each generator."""
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)

    def divisor(self):
        g = 0
        for v in self.values:
            g = gcd(g, v)
        return g

    def of_word(self, w):
        return sum(self.values[g] * e for g, e in w.syllables)

    def check(self, P, surjective=True):
        if len(self.values) != P.ngens:
            raise ValueError(f"phi has {len(self.values)} values for {P.ngens} generators")
        if surjective and self.divisor() != 1:
            raise NotSurjective(f"phi values {self.values} have gcd {self.divisor()}")
        for k, r in enumerate(P.relators):
            v = self.of_word(r)
            if v:
                raise RelatorPhiNonzero(k, v)


@dataclass(frozen=True)
class LambdaPresentation:
    """Module with ``generators`` generators and one relation per matrix row."""
    generators: int
    relations: LambdaMatrix
    moves: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.relations.cols != self.generators:
            raise ValueError("relation matrix must have one column per generator")

    def substitute_power(self, d):
        return LambdaPresentation(self.generators,
                                  self.relations.map(lambda x: x.substitute_power(d)),
                                  self.moves)

    def deficiency(self):
        return self.generators - self.relations.rows


def normalize_phi(P, phi):
    """Nielsen moves taking phi to ``(d, 0, ..., 0)`` with ``d > 0``.

    Returns ``(P', phi', moves)``; ``moves`` lists the substitutions applied
    as readable strings.
    """
    names = list(P.generators)
    vals = list(phi.values)
    g = len(vals)
    moves = []
    rels = list(P.relators)

    def apply(sub):
        nonlocal rels
        rels = [r.substitute(sub) for r in rels]

    while sum(1 for v in vals if v) > 1:
        i = min((j for j in range(g) if vals[j]), key=lambda j: (abs(vals[j]), j))
        for j in range(g):
            if j != i and vals[j]:
                q = vals[j] // vals[i]
                if q == 0:
                    continue
                # new x_j' = x_j x_i^-q, so old x_j = x_j' x_i^q
                sub = [Word.gen(k) for k in range(g)]
                sub[j] = Word.gen(j) * Word.gen(i, q)
                apply(sub)
                vals[j] -= q * vals[i]
                moves.append(f"{names[j]} -> {names[j]}*{names[i]}^{q}")
    nz = [j for j in range(g) if vals[j]]
    if nz:
        i = nz[0]
        if vals[i] < 0:
            sub = [Word.gen(k) for k in range(g)]
            sub[i] = Word.gen(i, -1)
            apply(sub)
            vals[i] = -vals[i]
            moves.append(f"{names[i]} -> {names[i]}^-1")
        if i != 0:
            perm = [Word.gen(k) for k in range(g)]
            perm[0], perm[i] = Word.gen(i), Word.gen(0)
            apply(perm)
            vals[0], vals[i] = vals[i], vals[0]
            moves.append(f"swap {names[0]} <-> {names[i]}")
            names[0], names[i] = names[i], names[0]
    return GroupPresentation(names, rels), ZHomomorphism(vals), tuple(moves)


def cover_module_presentation(P, phi, winding=1):
    """Presentation of H_1 of the infinite cyclic cover of ``phi``.

    ``phi`` must be onto Z. The generators are changed until only the first
    one has nonzero value (equal to 1); its Fox column is deleted, leaving
    ``g - 1`` generators and ``r`` relations. ``winding = d`` substitutes
    ``t -> t^d``.
    """
    phi = phi if isinstance(phi, ZHomomorphism) else ZHomomorphism(phi)
    if P.ngens < 1:
        raise ValueError("presentation has no generators")
    phi.check(P)
    Q, psi, moves = normalize_phi(P, phi)
    J = fox_jacobian(Q, psi.values).delete_column(0)
    out = LambdaPresentation(P.ngens - 1, J, moves)
    return out.substitute_power(winding) if winding != 1 else out


def fox_module(P, phi):
    """Same construction for any phi with relators in its kernel.

    For phi with gcd ``d`` this normalizes phi to ``(d, 0, ...)`` and uses
    ``x_0 -> t^d`` directly, giving the cover attached to the map of
    winding ``d``.
    """
    phi = phi if isinstance(phi, ZHomomorphism) else ZHomomorphism(phi)
    phi.check(P, surjective=False)
    if phi.divisor() == 0:
        raise NotSurjective("phi is zero")
    Q, psi, moves = normalize_phi(P, phi)
    J = fox_jacobian(Q, psi.values).delete_column(0)
    return LambdaPresentation(P.ngens - 1, J, moves)
