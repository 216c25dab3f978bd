"""Coset tables of finite-index subgroups."""
import json
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import CapacityExceeded, RelatorViolation


class CosetTable:
    """Right action of the signed generators on ``index`` cosets.

    ``table[c, 2*i]`` is ``c . x_i`` and ``table[c, 2*i + 1]`` is
    ``c . x_i^-1``. Coset 0 is the subgroup itself.
    """

    def __init__(self, table):
        table = np.array(table, dtype=np.int64)
        if table.ndim != 2 or table.shape[1] % 2:
            raise ValueError("table must have an even number of columns")
        self.table = table
        self.table.setflags(write=False)

    @property
    def index(self):
        return self.table.shape[0]

    @property
    def ngens(self):
        return self.table.shape[1] // 2

    def act(self, coset, gen, sign=1):
        return int(self.table[coset, 2 * gen + (0 if sign > 0 else 1)])

    def trace(self, coset, word):
        for g, s in word.letters():
            coset = self.act(coset, g, s)
        return coset

    def permutation(self, gen):
        """Action of ``x_gen`` as an array: coset c goes to ``perm[c]``."""
        return self.table[:, 2 * gen].copy()

    def to_json(self):
        return json.dumps(self.to_dict())

    def to_dict(self):
        return {"index": self.index, "table": self.table.tolist()}

    @classmethod
    def from_dict(cls, data):
        t = cls(data["table"])
        if t.index != data["index"]:
            raise ValueError("index does not match the number of rows")
        return t

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def __eq__(self, other):
        return isinstance(other, CosetTable) and np.array_equal(self.table, other.table)

    def __repr__(self):
        return f"CosetTable(index={self.index}, ngens={self.ngens})"


@dataclass(frozen=True)
class PermutationImage:
    """Images of the generators as permutations of ``range(degree)``.

    Permutations act on the right: ``perm[i]`` is the image of point ``i``.
    """
    degree: int
    images: tuple

    def __post_init__(self):
        imgs = []
        for k, p in enumerate(self.images):
            p = np.asarray(p, dtype=np.int64)
            if p.shape != (self.degree,) or not np.array_equal(np.sort(p),
                                                               np.arange(self.degree)):
                raise ValueError(f"image {k} is not a permutation of degree {self.degree}")
            p.setflags(write=False)
            imgs.append(p)
        object.__setattr__(self, "images", tuple(imgs))

    def evaluate(self, word):
        perm = np.arange(self.degree)
        inverses = {}
        for g, e in word.syllables:
            step = self.images[g]
            if e < 0:
                if g not in inverses:
                    inverses[g] = np.argsort(step)
                step = inverses[g]
            for _ in range(abs(e)):
                perm = step[perm]
        return perm


def _canonical(table, jit=None):
    """Renumber by breadth-first search from coset 0 over the columns."""
    order, rank, found = kernels.bfs_order(table, jit=jit)
    if found != table.shape[0]:
        raise ValueError("coset table is not transitive")
    return rank[table[order]]


def todd_coxeter(P, subgroup_words=(), max_cosets=100000, jit=None):
    """Enumerate the cosets of the subgroup generated by ``subgroup_words``.

    Raises :class:`CapacityExceeded` when more than ``max_cosets`` cosets
    (live plus merged) would be needed.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be at least 1")
    words = [w for w in subgroup_words if not w.is_identity()]
    flat, offsets = [], [0]
    for w in list(words) + list(P.relators):
        flat += w.columns()
        offsets.append(len(flat))
    ncols = 2 * P.ngens
    if ncols == 0:
        return CosetTable(np.zeros((1, 0), dtype=np.int64))
    table, parent, n, status = kernels.enumerate_cosets(
        flat, offsets, len(words), ncols, max_cosets, jit=jit)
    if status != kernels.ENUM_OK:
        raise CapacityExceeded(max_cosets)
    parent = parent[:n]
    live = np.nonzero(parent == np.arange(n))[0]
    relabel = np.full(n, -1, dtype=np.int64)
    relabel[live] = np.arange(live.size)
    compact = relabel[table[live].astype(np.int64)]
    return CosetTable(_canonical(compact, jit=jit))


def group_order(images, degree):
    """Order of the permutation group generated by ``images`` (closure)."""
    return len(_closure(images, degree)[0])


def _closure(images, degree):
    ident = np.arange(degree)
    elements = [ident]
    index = {ident.tobytes(): 0}
    steps = []
    for p in images:
        steps += [p, np.argsort(p)]
    rows = []
    i = 0
    while i < len(elements):
        c = elements[i]
        row = []
        for s in steps:
            d = s[c]
            key = d.tobytes()
            k = index.get(key)
            if k is None:
                k = len(elements)
                index[key] = k
                elements.append(d)
            row.append(k)
        rows.append(row)
        i += 1
    return elements, rows


def kernel_coset_table(P, phi):
    """Coset table of the kernel of ``phi`` (a :class:`PermutationImage`).

    Cosets are the elements of the image group; coset ``c`` goes under
    ``x_i`` to ``c . phi(x_i)``.
    """
    if len(phi.images) != P.ngens:
        raise ValueError(f"expected {P.ngens} images, got {len(phi.images)}")
    ident = np.arange(phi.degree)
    for i, r in enumerate(P.relators):
        if not np.array_equal(phi.evaluate(r), ident):
            raise RelatorViolation(i)
    # composing c then phi(x) is (s[c]) with s = phi(x) acting on the right
    _, rows = _closure(phi.images, phi.degree)
    return CosetTable(_canonical(np.array(rows, dtype=np.int64).reshape(-1, 2 * P.ngens)))


def regular_images(T):
    """Generator permutations of the right-regular action on a coset table."""
    return PermutationImage(T.index, tuple(T.permutation(g) for g in range(T.ngens)))


def validate_coset_table(T, P, subgroup_words=()):
    """Raise ``AssertionError`` unless ``T`` is a complete coset table for P."""
    tab = T.table
    n = T.index
    assert tab.shape == (n, 2 * P.ngens), "wrong shape"
    assert n >= 1
    assert ((tab >= 0) & (tab < n)).all(), "incomplete or out-of-range entries"
    for g in range(P.ngens):
        fwd, inv = tab[:, 2 * g], tab[:, 2 * g + 1]
        assert np.array_equal(inv[fwd], np.arange(n)), f"x{g} then x{g}^-1 is not the identity"
    for k, r in enumerate(P.relators):
        cols = r.columns()
        c = np.arange(n)
        for x in cols:
            c = tab[c, x]
        assert np.array_equal(c, np.arange(n)), f"relator {k} does not close"
    for w in subgroup_words:
        assert T.trace(0, w) == 0, "subgroup word moves coset 0"
    seen = {0}
    stack = [0]
    while stack:
        c = stack.pop()
        for d in tab[c]:
            if int(d) not in seen:
                seen.add(int(d))
                stack.append(int(d))
    assert len(seen) == n, "not transitive"
    return True
