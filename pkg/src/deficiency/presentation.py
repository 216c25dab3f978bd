"""Finite group presentations: parsing, printing and abelian invariants."""
import re
from dataclasses import dataclass

import numpy as np

from .errors import EmptyRelatorError, PresentationSyntaxError, UnknownGeneratorError
from .smith import invariant_factors
from .words import Word


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple
    relators: tuple

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(self.relators))
        g = len(self.generators)
        if len(set(self.generators)) != g:
            raise ValueError("duplicate generator names")
        for i, r in enumerate(self.relators):
            if not isinstance(r, Word):
                raise TypeError(f"relator {i} is not a Word")
            if r.is_identity():
                raise ValueError(f"relator {i} is the empty word")
            if r.max_generator() >= g:
                raise ValueError(f"relator {i} uses a generator index >= {g}")

    @property
    def ngens(self):
        return len(self.generators)

    @property
    def nrels(self):
        return len(self.relators)

    def word(self, text):
        """Parse a single word over this presentation's generators."""
        return parse_word(text, self.generators)

    def format_word(self, w):
        return w.format(self.generators)

    def __str__(self):
        return format_presentation(self)


def deficiency_of_presentation(P):
    return P.ngens - P.nrels


def free_group(rank, prefix="x"):
    return GroupPresentation([f"{prefix}{i}" for i in range(rank)], [])


def free_product(*presentations, suffixes=None):
    """Disjoint union of generators and relators.

    Generator names get ``suffixes[k]`` appended (default ``1, 2, ...``).
    """
    suffixes = suffixes or [str(k + 1) for k in range(len(presentations))]
    names, rels, shift = [], [], 0
    for P, suf in zip(presentations, suffixes):
        names += [f"{n}{suf}" for n in P.generators]
        rels += [Word((g + shift, e) for g, e in r.syllables) for r in P.relators]
        shift += P.ngens
    return GroupPresentation(names, rels)


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<int>[+-]?\d+)
  | (?P<op>[<>|,=*^()])
""", re.VERBOSE)


class _Lexer:
    def __init__(self, text):
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                raise PresentationSyntaxError(f"unexpected character {text[pos]!r}",
                                              *self.where(pos))
            kind = m.lastgroup
            if kind != "ws":
                value = m.group(kind)
                # a signed integer only makes sense right after '^'
                if kind == "int" and value[0] in "+-" and not (
                        self.tokens and self.tokens[-1][1] == "^"):
                    raise PresentationSyntaxError(f"unexpected {value[0]!r}",
                                                  *self.where(pos))
                self.tokens.append((kind if kind != "op" else value, value, pos))
            pos = m.end()
        self.tokens.append(("end", "", len(text)))
        self.i = 0

    def where(self, pos):
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def peek(self):
        return self.tokens[self.i][0]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            shown = tok[1] or "end of input"
            raise PresentationSyntaxError(f"expected {kind!r}, found {shown!r}",
                                          *self.where(tok[2]))
        return tok

    def error(self, message, tok=None):
        tok = tok or self.tokens[self.i]
        return PresentationSyntaxError(message, *self.where(tok[2]))


class _Parser:
    def __init__(self, lexer, index):
        self.lx = lexer
        self.index = index

    def word(self):
        if self.lx.peek() == "int":
            tok = self.lx.next()
            if tok[1] != "1":
                raise self.lx.error(f"unexpected integer {tok[1]!r}", tok)
            return None  # the identity literal
        w = self.term()
        while True:
            kind = self.lx.peek()
            if kind == "*":
                self.lx.next()
                w = w * self.term()
            elif kind in ("name", "("):
                w = w * self.term()
            else:
                return w

    def term(self):
        tok = self.lx.next()
        if tok[0] == "name":
            if tok[1] not in self.index:
                raise UnknownGeneratorError(f"unknown generator {tok[1]!r}",
                                            *self.lx.where(tok[2]))
            base = Word.gen(self.index[tok[1]])
        elif tok[0] == "(":
            base = self.word()
            if base is None:
                raise self.lx.error("the identity literal cannot be bracketed", tok)
            self.lx.expect(")")
        else:
            shown = tok[1] or "end of input"
            raise self.lx.error(f"expected a generator or '(', found {shown!r}", tok)
        if self.lx.peek() == "^":
            self.lx.next()
            exp = self.lx.expect("int")
            base = base ** int(exp[1])
        return base

    def relchain(self):
        start = self.lx.tokens[self.lx.i]
        first = self.word()
        if first is None:
            raise self.lx.error("the identity literal may only appear right of '='",
                                start)
        sides = [(first, start)]
        while self.lx.peek() == "=":
            self.lx.next()
            tok = self.lx.tokens[self.lx.i]
            w = self.word()
            sides.append((Word.identity() if w is None else w, tok))
        if len(sides) == 1:
            if first.is_identity():
                raise EmptyRelatorError("empty relator after reduction",
                                        *self.lx.where(start[2]))
            return [first]
        out = []
        for (u, tok), (v, _) in zip(sides, sides[1:]):
            r = u * v.inverse()
            if r.is_identity():
                raise EmptyRelatorError("empty relator after reduction",
                                        *self.lx.where(tok[2]))
            out.append(r)
        return out


def parse_presentation(text):
    """Parse ``< a, b | rel, u = v = w, ... >``.

    A chain ``u = v = w`` yields the relators ``u v^-1`` and ``v w^-1``.
    """
    lx = _Lexer(text)
    lx.expect("<")
    names = [lx.expect("name")[1]]
    while lx.peek() == ",":
        lx.next()
        tok = lx.expect("name")
        if tok[1] in names:
            raise lx.error(f"duplicate generator {tok[1]!r}", tok)
        names.append(tok[1])
    lx.expect("|")
    parser = _Parser(lx, {n: i for i, n in enumerate(names)})
    relators = []
    if lx.peek() != ">":
        relators += parser.relchain()
        while lx.peek() == ",":
            lx.next()
            relators += parser.relchain()
    lx.expect(">")
    lx.expect("end")
    return GroupPresentation(names, relators)


def parse_word(text, generators):
    lx = _Lexer(text)
    w = _Parser(lx, {n: i for i, n in enumerate(generators)}).word()
    lx.expect("end")
    return Word.identity() if w is None else w


def format_presentation(P):
    gens = ", ".join(P.generators)
    rels = ", ".join(r.format(P.generators) for r in P.relators)
    return f"< {gens} | {rels} >" if rels else f"< {gens} | >"


# ---------------------------------------------------------------------------
# abelianization
# ---------------------------------------------------------------------------

def abelianization_matrix(P):
    """``r x g`` matrix of exponent sums (object dtype, Python ints)."""
    M = np.zeros((P.nrels, P.ngens), dtype=object)
    for i, r in enumerate(P.relators):
        for g, e in r.syllables:
            M[i, g] += e
    return M


def abelian_invariants(P):
    """``(free_rank, torsion)`` with torsion the invariant factors > 1."""
    d = invariant_factors(abelianization_matrix(P))
    nonzero = [x for x in d if x != 0]
    return P.ngens - len(nonzero), [x for x in nonzero if x != 1]


def is_perfect(P):
    free_rank, torsion = abelian_invariants(P)
    return free_rank == 0 and not torsion


def format_abelian_group(free_rank, torsion):
    parts = ([f"Z^{free_rank}" if free_rank > 1 else "Z"] if free_rank else [])
    parts += [f"Z/{m}" for m in torsion]
    return " + ".join(parts) if parts else "0"
