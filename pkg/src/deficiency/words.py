"""Reduced words in a free group.

A word is stored as a tuple of syllables ``(generator, exponent)`` with
nonzero exponents and no two neighbouring syllables on the same generator.
"""


def free_reduce(syllables):
    """Freely reduce a sequence of ``(generator, exponent)`` pairs.

    Accepts a :class:`Word` (returned as-is) or any iterable of pairs, which
    need not be reduced; zero exponents are dropped and equal neighbours
    merged.

    >>> free_reduce([(0, 1), (0, -1), (1, 1)])
    Word(((1, 1),))
    """
    if isinstance(syllables, Word):
        return syllables
    return Word(syllables)


def _reduce(pairs, stack=None):
    stack = [] if stack is None else stack
    for g, e in pairs:
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            e += stack[-1][1]
            stack.pop()
            if e == 0:
                continue
        stack.append((g, e))
    return stack


class Word:
    __slots__ = ("syllables", "_hash")

    def __init__(self, syllables=()):
        self.syllables = tuple(_reduce((int(g), int(e)) for g, e in syllables))
        self._hash = None

    @classmethod
    def _raw(cls, syllables):
        w = object.__new__(cls)
        w.syllables = syllables
        w._hash = None
        return w

    @classmethod
    def identity(cls):
        return cls._raw(())

    @classmethod
    def gen(cls, index, exponent=1):
        return cls([(index, exponent)])

    @classmethod
    def from_letters(cls, letters):
        """Build from signed letters: ``+ (i+1)`` for x_i, ``-(i+1)`` for x_i^-1."""
        return cls((abs(c) - 1, 1 if c > 0 else -1) for c in letters)

    # -- algebra ----------------------------------------------------------

    def __mul__(self, other):
        if not self.syllables:
            return other
        if not other.syllables:
            return self
        return Word._raw(tuple(_reduce(other.syllables, list(self.syllables))))

    def inverse(self):
        return Word._raw(tuple((g, -e) for g, e in reversed(self.syllables)))

    def __invert__(self):
        return self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = Word.identity()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def cyclic_reduce(self):
        syl = list(self.syllables)
        while len(syl) > 1 and syl[0][0] == syl[-1][0]:
            g, e = syl[0]
            e += syl[-1][1]
            syl = syl[1:-1]
            if e:
                syl = [(g, e)] + syl
        return Word._raw(tuple(syl))

    # -- inspection -------------------------------------------------------

    def __len__(self):
        return sum(abs(e) for _, e in self.syllables)

    def __bool__(self):
        return bool(self.syllables)

    def is_identity(self):
        return not self.syllables

    def letters(self):
        """Yield ``(generator, +1 | -1)`` one letter at a time."""
        for g, e in self.syllables:
            s = 1 if e > 0 else -1
            for _ in range(abs(e)):
                yield g, s

    def columns(self):
        """Letters encoded as coset-table columns (x_i -> 2i, x_i^-1 -> 2i+1)."""
        return [2 * g + (0 if s > 0 else 1) for g, s in self.letters()]

    def exponent_sum(self, index):
        return sum(e for g, e in self.syllables if g == index)

    def max_generator(self):
        return max((g for g, _ in self.syllables), default=-1)

    def substitute(self, images):
        """Image under ``x_i -> images[i]`` (a mapping or sequence of Words)."""
        out = Word.identity()
        for g, e in self.syllables:
            out = out * images[g] ** e
        return out

    def __eq__(self, other):
        return isinstance(other, Word) and self.syllables == other.syllables

    def __lt__(self, other):
        return (len(self), self.syllables) < (len(other), other.syllables)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.syllables)
        return self._hash

    def __repr__(self):
        return f"Word({self.syllables!r})"

    def format(self, names=None):
        if not self.syllables:
            return "1"
        parts = []
        for g, e in self.syllables:
            name = names[g] if names is not None else f"x{g}"
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    __str__ = format
