"""Smith normal form over the integers."""
import numpy as np

from . import kernels


def as_integer_matrix(rows, shape=None):
    """Object-dtype ndarray of Python ints; ``shape`` is needed for 0-row input."""
    rows = list(rows) if not isinstance(rows, np.ndarray) else rows
    if shape is not None and len(rows) == 0:
        return np.zeros(shape, dtype=object)
    M = np.array(rows, dtype=object)
    if M.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    return np.vectorize(int, otypes=[object])(M) if M.size else M


def smith_normal_form(A, jit=None):
    """Return ``(D, U, V)`` with ``U @ A @ V == D``.

    ``U`` and ``V`` are unimodular, ``D`` is diagonal with nonnegative entries
    ``d_1 | d_2 | ...``. Pivots are chosen by smallest absolute value.
    """
    A = np.asarray(A, dtype=object)
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    return kernels.snf_inplace(A, jit=jit)


def invariant_factors(A, jit=None):
    """Diagonal of the Smith form, ``min(rows, cols)`` entries."""
    D, _, _ = smith_normal_form(A, jit=jit)
    return [int(D[i, i]) for i in range(min(D.shape))]


def determinant(M):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    M = [[int(x) for x in row] for row in np.asarray(M, dtype=object)]
    n = len(M)
    if n == 0:
        return 1
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def is_smith_form(D):
    D = np.asarray(D, dtype=object)
    m, n = D.shape
    for i in range(m):
        for j in range(n):
            if i != j and D[i, j] != 0:
                return False
    diag = [int(D[i, i]) for i in range(min(m, n))]
    if any(d < 0 for d in diag):
        return False
    for a, b in zip(diag, diag[1:]):
        if a == 0 and b != 0:
            return False
        if a != 0 and b % a != 0:
            return False
    return True
