"""Reidemeister-Schreier presentations of finite-index subgroups."""
from collections import deque

from .errors import IncompatibleTable
from .presentation import GroupPresentation
from .words import Word


class SchreierTransversal:
    """Spanning tree of the coset graph with one representative per coset.

    ``parent[c] = (d, column)`` means ``rep(c) = rep(d) * letter(column)``;
    the root 0 has parent ``None``.
    """

    def __init__(self, parent):
        self.parent = tuple(parent)
        reps = [None] * len(self.parent)
        reps[0] = Word.identity()
        order = sorted(range(len(self.parent)), key=self._depth)
        for c in order[1:]:
            d, col = self.parent[c]
            reps[c] = reps[d] * Word.gen(col // 2, -1 if col % 2 else 1)
        self.representatives = tuple(reps)

    def _depth(self, c):
        k = 0
        while self.parent[c] is not None:
            c = self.parent[c][0]
            k += 1
        return k

    def __getitem__(self, coset):
        return self.representatives[coset]

    def __len__(self):
        return len(self.representatives)

    def tree_edges(self):
        """Pairs ``(coset, generator)`` whose Schreier generator is trivial."""
        edges = set()
        for c, link in enumerate(self.parent):
            if link is None:
                continue
            d, col = link
            if col % 2 == 0:
                edges.add((d, col // 2))
            else:
                edges.add((c, col // 2))
        return edges


def schreier_transversal(T, method="bfs"):
    """Spanning tree by breadth-first (default) or depth-first search.

    Columns are visited in table order: x_0, x_0^-1, x_1, ...
    """
    n, ncols = T.table.shape
    parent = [None] * n
    seen = [False] * n
    seen[0] = True
    if method == "bfs":
        queue = deque([0])
        while queue:
            c = queue.popleft()
            for col in range(ncols):
                d = int(T.table[c, col])
                if not seen[d]:
                    seen[d] = True
                    parent[d] = (c, col)
                    queue.append(d)
    elif method == "dfs":
        def visit(c):
            stack = [(c, 0)]
            while stack:
                c, col = stack.pop()
                if col == ncols:
                    continue
                stack.append((c, col + 1))
                d = int(T.table[c, col])
                if not seen[d]:
                    seen[d] = True
                    parent[d] = (c, col)
                    stack.append((d, 0))
        visit(0)
    else:
        raise ValueError(f"unknown method {method!r}")
    if not all(seen):
        raise ValueError("coset table is not transitive")
    return SchreierTransversal(parent)


def schreier_generator_names(P, T, transversal=None):
    """Map ``(coset, generator)`` to names ``g<i>_c<j>`` for non-tree edges."""
    transversal = transversal or schreier_transversal(T)
    tree = transversal.tree_edges()
    return {(c, g): f"g{g}_c{c}"
            for g in range(P.ngens) for c in range(T.index) if (c, g) not in tree}


def _canonical_cyclic(w):
    w = w.cyclic_reduce()
    forms = []
    for v in (w, w.inverse()):
        syl = v.syllables
        for k in range(len(syl)):
            forms.append(syl[k:] + syl[:k])
    return min(forms) if forms else ()


def subgroup_presentation(P, T, transversal=None, simplify=False):
    """Rewrite ``P`` over the Schreier generators of the subgroup of ``T``.

    The result has ``n*g - (n-1)`` generators and ``n*r`` relators, ordered
    relator-major then coset-minor. With ``simplify=True`` relators are
    cyclically reduced and duplicates (up to rotation and inversion) dropped.
    """
    if T.ngens != P.ngens:
        raise IncompatibleTable(f"table acts by {T.ngens} generators, "
                                f"presentation has {P.ngens}")
    transversal = transversal or schreier_transversal(T)
    names = schreier_generator_names(P, T, transversal)
    keys = sorted(names, key=lambda cg: (cg[1], cg[0]))
    number = {cg: k for k, cg in enumerate(keys)}
    table = T.table
    relators = []
    for r in P.relators:
        letters = list(r.letters())
        for c in range(T.index):
            out = []
            a = c
            for g, s in letters:
                if s > 0:
                    k = number.get((a, g))
                    if k is not None:
                        out.append((k, 1))
                    a = int(table[a, 2 * g])
                else:
                    b = int(table[a, 2 * g + 1])
                    k = number.get((b, g))
                    if k is not None:
                        out.append((k, -1))
                    a = b
            relators.append(Word(out))
    if simplify:
        seen, kept = set(), []
        for w in relators:
            key = _canonical_cyclic(w)
            if key and key not in seen:
                seen.add(key)
                kept.append(w.cyclic_reduce())
        relators = kept
    return GroupPresentation([names[cg] for cg in keys], relators)


def finite_index_deficiency_bound(def_G, n):
    """Lower bound ``n*def(G) - n + 1`` for the deficiency of an index-n subgroup."""
    if n < 1:
        raise ValueError("index must be at least 1")
    return n * def_G - n + 1
