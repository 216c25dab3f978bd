"""Hot inner loops.

Each kernel has a numba-compiled form and a fallback. Which one the rest of
the package calls is decided by :data:`deficiency._jit.USE_NUMBA`:

* coset enumeration: the same loop body, compiled or interpreted;
* Smith normal form: int64 loops under numba, vectorized numpy rows
  otherwise; both hand over to an exact ``object`` array path once any
  entry leaves the int64-safe range;
* rank over F_p: int64 loops under numba, vectorized numpy otherwise.

The public entry points are :func:`enumerate_cosets`, :func:`snf_inplace`
and :func:`rank_mod_p`. Each takes ``jit``: ``True`` or ``False`` forces a
backend, while ``None`` (the default) keeps small problems interpreted so that
one-off calls never wait for compilation.
"""
import numpy as np

from ._jit import USE_NUMBA, njit, python_version

# Entries are kept below this bound in the int64 paths so that every update
# ``a - q*b`` with |a|, |q|, |b| <= LIMIT stays inside int64.
LIMIT = 1 << 31

# With ``jit=None`` the interpreted kernels handle problems up to these sizes.
AUTO_ENUM_LIMIT = 2000
AUTO_MATRIX_LIMIT = 40000

ENUM_OK = 0
ENUM_CAPACITY = 1
_ENUM_GROW = 2


# ---------------------------------------------------------------------------
# HLT coset enumeration
# ---------------------------------------------------------------------------

@njit
def _rep(parent, k):
    r = k
    while parent[r] != r:
        r = parent[r]
    while parent[k] != r:
        nxt = parent[k]
        parent[k] = r
        k = nxt
    return r


@njit
def _merge(parent, queue, ql, k, l):
    phi = _rep(parent, k)
    psi = _rep(parent, l)
    if phi != psi:
        lo = min(phi, psi)
        hi = max(phi, psi)
        parent[hi] = lo
        queue[ql] = hi
        ql += 1
    return ql


@njit
def _coincidence(table, parent, queue, a, b):
    ncols = table.shape[1]
    ql = _merge(parent, queue, 0, a, b)
    qi = 0
    while qi < ql:
        g = queue[qi]
        qi += 1
        for x in range(ncols):
            d = table[g, x]
            if d >= 0:
                xi = x ^ 1
                table[d, xi] = -1
                mu = _rep(parent, g)
                nu = _rep(parent, d)
                if table[mu, x] >= 0:
                    ql = _merge(parent, queue, ql, nu, table[mu, x])
                elif table[nu, xi] >= 0:
                    ql = _merge(parent, queue, ql, mu, table[nu, xi])
                else:
                    table[mu, x] = nu
                    table[nu, xi] = mu


@njit
def _scan_and_fill(table, parent, queue, alpha, word, lo, hi, n, max_cosets):
    # Returns (cosets defined so far, status).
    cap = table.shape[0]
    f = alpha
    b = alpha
    i = lo
    j = hi - 1
    while True:
        while i <= j and table[f, word[i]] >= 0:
            f = table[f, word[i]]
            i += 1
        if i > j:
            if f != b:
                _coincidence(table, parent, queue, f, b)
            return n, ENUM_OK
        while j >= i and table[b, word[j] ^ 1] >= 0:
            b = table[b, word[j] ^ 1]
            j -= 1
        if j < i:
            _coincidence(table, parent, queue, f, b)
            return n, ENUM_OK
        if i == j:
            table[f, word[i]] = b
            table[b, word[i] ^ 1] = f
            return n, ENUM_OK
        if n >= max_cosets:
            return n, ENUM_CAPACITY
        if n >= cap:
            return n, _ENUM_GROW
        table[f, word[i]] = n
        table[n, word[i] ^ 1] = f
        n += 1


@njit
def _grow(table, parent, queue, max_cosets):
    old = table.shape[0]
    cap = min(2 * old, max_cosets)
    new_table = np.full((cap, table.shape[1]), -1, np.int32)
    new_table[:old] = table
    new_parent = np.arange(cap).astype(np.int32)
    new_parent[:old] = parent
    return new_table, new_parent, np.empty(cap, np.int32)


@njit
def hlt_kernel(words, offsets, n_sub, ncols, max_cosets, init_cap):
    """HLT enumeration with union-find coincidence processing.

    ``words`` holds column-encoded letters (generator i -> 2i, its inverse
    -> 2i+1) for the subgroup words followed by the relators; ``offsets``
    delimits them. Returns ``(table, parent, n_defined, status)``.
    """
    cap = max(1, min(max_cosets, init_cap))
    table = np.full((cap, ncols), -1, np.int32)
    parent = np.arange(cap).astype(np.int32)
    queue = np.empty(cap, np.int32)
    n = 1
    nwords = offsets.shape[0] - 1

    for w in range(n_sub):
        while True:
            n, status = _scan_and_fill(table, parent, queue, 0, words,
                                       offsets[w], offsets[w + 1], n, max_cosets)
            if status == _ENUM_GROW:
                table, parent, queue = _grow(table, parent, queue, max_cosets)
                continue
            if status == ENUM_CAPACITY:
                return table, parent, n, ENUM_CAPACITY
            break

    alpha = 0
    while alpha < n:
        if parent[alpha] == alpha:
            for w in range(n_sub, nwords):
                while True:
                    n, status = _scan_and_fill(table, parent, queue, alpha, words,
                                               offsets[w], offsets[w + 1], n,
                                               max_cosets)
                    if status == _ENUM_GROW:
                        table, parent, queue = _grow(table, parent, queue, max_cosets)
                        continue
                    if status == ENUM_CAPACITY:
                        return table, parent, n, ENUM_CAPACITY
                    break
                if parent[alpha] != alpha:
                    break
            if parent[alpha] == alpha:
                for x in range(ncols):
                    if table[alpha, x] < 0:
                        if n >= max_cosets:
                            return table, parent, n, ENUM_CAPACITY
                        if n >= table.shape[0]:
                            table, parent, queue = _grow(table, parent, queue, max_cosets)
                        table[alpha, x] = n
                        table[n, x ^ 1] = alpha
                        n += 1
        alpha += 1
    return table, parent, n, ENUM_OK


def enumerate_cosets(words, offsets, n_sub, ncols, max_cosets, init_cap=1024,
                     jit=None):
    """Run the enumeration kernel; ``jit`` overrides the global switch."""
    args = (np.asarray(words, np.int32), np.asarray(offsets, np.int64), int(n_sub), int(ncols))
    if jit is None and USE_NUMBA:
        # small enumerations finish before compilation would; retry compiled if it grows
        cap = min(int(max_cosets), AUTO_ENUM_LIMIT)
        out = python_version(hlt_kernel)(*args, cap, min(int(init_cap), cap))
        if out[3] == ENUM_OK or cap == max_cosets:
            return out
        return hlt_kernel(*args, int(max_cosets), int(init_cap))
    use = USE_NUMBA if jit is None else jit
    kernel = hlt_kernel if use else python_version(hlt_kernel)
    return kernel(*args, int(max_cosets), int(init_cap))


@njit
def bfs_order_kernel(table):
    """Cosets in breadth-first order from 0 over columns; ``-1`` fills unreached slots."""
    n, ncols = table.shape
    rank = np.full(n, -1, dtype=np.int64)
    order = np.full(n, -1, dtype=np.int64)
    rank[0] = 0
    order[0] = 0
    found = 1
    head = 0
    while head < found:
        c = order[head]
        head += 1
        for x in range(ncols):
            d = table[c, x]
            if rank[d] < 0:
                rank[d] = found
                order[found] = d
                found += 1
    return order, rank, found


def bfs_order(table, jit=None):
    use = _auto(jit, table.size)
    kernel = bfs_order_kernel if use else python_version(bfs_order_kernel)
    return kernel(np.ascontiguousarray(table, dtype=np.int64))


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@njit
def _swap_rows(M, a, b):
    if a != b:
        for j in range(M.shape[1]):
            tmp = M[a, j]
            M[a, j] = M[b, j]
            M[b, j] = tmp


@njit
def _swap_cols(M, a, b):
    if a != b:
        for i in range(M.shape[0]):
            tmp = M[i, a]
            M[i, a] = M[i, b]
            M[i, b] = tmp


@njit
def _row_axpy(M, dst, src, q, start):
    # M[dst, start:] -= q * M[src, start:]; reports whether LIMIT was crossed.
    big = False
    for j in range(start, M.shape[1]):
        v = M[dst, j] - q * M[src, j]
        M[dst, j] = v
        if v > LIMIT or v < -LIMIT:
            big = True
    return big


@njit
def _col_axpy(M, dst, src, q, start):
    big = False
    for i in range(start, M.shape[0]):
        v = M[i, dst] - q * M[i, src]
        M[i, dst] = v
        if v > LIMIT or v < -LIMIT:
            big = True
    return big


@njit
def snf_kernel_int64(A, U, V, t0):
    """In-place Smith reduction ``U A V = D`` on int64 arrays.

    Returns ``(t, status)``. Status 1 means an entry crossed ``LIMIT`` after
    a completed row/column operation: the arrays are still a valid
    intermediate state and pivot ``t`` must be redone in exact arithmetic.
    """
    m, n = A.shape
    r = min(m, n)
    t = t0
    while t < r:
        best = 0
        bi = -1
        bj = -1
        for i in range(t, m):
            for j in range(t, n):
                v = abs(A[i, j])
                if v != 0 and (best == 0 or v < best):
                    best = v
                    bi = i
                    bj = j
            if best == 1:
                break
        if bi < 0:
            return t, 0
        _swap_rows(A, t, bi)
        _swap_rows(U, t, bi)
        _swap_cols(A, t, bj)
        _swap_cols(V, t, bj)
        while True:
            p = A[t, t]
            clean = True
            for i in range(t + 1, m):
                if A[i, t] != 0:
                    q = A[i, t] // p
                    if q != 0:
                        big = _row_axpy(A, i, t, q, t)
                        big = _row_axpy(U, i, t, q, 0) or big
                        if big:
                            return t, 1
                    if A[i, t] != 0:
                        clean = False
            for j in range(t + 1, n):
                if A[t, j] != 0:
                    q = A[t, j] // p
                    if q != 0:
                        big = _col_axpy(A, j, t, q, t)
                        big = _col_axpy(V, j, t, q, 0) or big
                        if big:
                            return t, 1
                    if A[t, j] != 0:
                        clean = False
            if not clean:
                best = abs(p)
                bi = t
                bj = t
                for i in range(t + 1, m):
                    v = abs(A[i, t])
                    if v != 0 and v < best:
                        best = v
                        bi = i
                        bj = t
                for j in range(t + 1, n):
                    v = abs(A[t, j])
                    if v != 0 and v < best:
                        best = v
                        bi = t
                        bj = j
                _swap_rows(A, t, bi)
                _swap_rows(U, t, bi)
                _swap_cols(A, t, bj)
                _swap_cols(V, t, bj)
                continue
            found = -1
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i, j] % p != 0:
                        found = i
                        break
                if found >= 0:
                    break
            if found < 0:
                break
            big = _row_axpy(A, t, found, -1, t)
            big = _row_axpy(U, t, found, -1, 0) or big
            if big:
                return t, 1
        if A[t, t] < 0:
            for j in range(t, n):
                A[t, j] = -A[t, j]
            for j in range(m):
                U[t, j] = -U[t, j]
        t += 1
    return t, 0


def _too_big(*blocks):
    return any(b.size and int(np.abs(b).max()) > LIMIT for b in blocks)


def snf_numpy(A, U, V, t0=0):
    """Vectorized Smith reduction; returns the final ``(D, U, V)``.

    Works on int64 arrays and promotes all three to ``object`` (exact Python
    integers) as soon as an entry crosses ``LIMIT``.
    """
    m, n = A.shape
    r = min(m, n)

    def promote():
        nonlocal A, U, V
        if A.dtype != object:
            A, U, V = A.astype(object), U.astype(object), V.astype(object)

    def swap(i, j, ci, cj):
        if i != ci:
            A[[i, ci]] = A[[ci, i]]
            U[[i, ci]] = U[[ci, i]]
        if j != cj:
            A[:, [j, cj]] = A[:, [cj, j]]
            V[:, [j, cj]] = V[:, [cj, j]]

    t = t0
    while t < r:
        nz = np.argwhere(A[t:, t:] != 0)
        if nz.size == 0:
            break
        vals = [abs(A[t + i, t + j]) for i, j in nz]
        k = min(range(len(vals)), key=vals.__getitem__)
        swap(t, t, t + int(nz[k, 0]), t + int(nz[k, 1]))
        while True:
            p = A[t, t]
            rows = t + 1 + np.nonzero(A[t + 1:, t] != 0)[0]
            if rows.size:
                q = A[rows, t] // p
                A[rows, t:] -= q[:, None] * A[t, t:][None, :]
                U[rows, :] -= q[:, None] * U[t, :][None, :]
                if A.dtype != object and _too_big(A[rows], U[rows]):
                    promote()
            cols = t + 1 + np.nonzero(A[t, t + 1:] != 0)[0]
            if cols.size:
                q = A[t, cols] // p
                A[t:, cols] -= A[t:, t][:, None] * q[None, :]
                V[:, cols] -= V[:, t][:, None] * q[None, :]
                if A.dtype != object and _too_big(A[:, cols], V[:, cols]):
                    promote()
            rest_r = np.nonzero(A[t + 1:, t] != 0)[0]
            rest_c = np.nonzero(A[t, t + 1:] != 0)[0]
            if rest_r.size or rest_c.size:
                cands = [(abs(A[t + 1 + i, t]), t + 1 + int(i), t) for i in rest_r]
                cands += [(abs(A[t, t + 1 + j]), t, t + 1 + int(j)) for j in rest_c]
                _, ci, cj = min(cands)
                swap(t, t, ci, cj)
                continue
            bad = np.argwhere(A[t + 1:, t + 1:] % p != 0)
            if bad.size == 0:
                break
            i = t + 1 + int(bad[0, 0])
            A[t, t:] += A[i, t:]
            U[t, :] += U[i, :]
            if A.dtype != object and _too_big(A[t], U[t]):
                promote()
        if A[t, t] < 0:
            A[t, t:] = -A[t, t:]
            U[t, :] = -U[t, :]
        t += 1
    return A, U, V


def _auto(jit, size):
    if jit is None:
        return USE_NUMBA and size > AUTO_MATRIX_LIMIT
    return jit


def snf_inplace(A, jit=None):
    """Smith normal form of an integer ndarray (any integer-valued dtype).

    Returns ``(D, U, V)`` as ``object`` arrays of Python ints with
    ``U @ A @ V == D``.
    """
    A = np.asarray(A, dtype=object)
    use = _auto(jit, A.size)
    m, n = A.shape
    small = A.size == 0 or max(abs(int(x)) for x in A.flat) <= LIMIT
    if small:
        D = A.astype(np.int64)
        U = np.eye(m, dtype=np.int64)
        V = np.eye(n, dtype=np.int64)
    else:
        D = A.copy()
        U = np.eye(m, dtype=np.int64).astype(object)
        V = np.eye(n, dtype=np.int64).astype(object)
    t = 0
    if use and small and A.size:
        t, status = snf_kernel_int64(D, U, V, 0)
        if status == 0:
            return D.astype(object), U.astype(object), V.astype(object)
        D, U, V = D.astype(object), U.astype(object), V.astype(object)
    D, U, V = snf_numpy(D, U, V, t)
    return D.astype(object), U.astype(object), V.astype(object)


# ---------------------------------------------------------------------------
# rank over F_p
# ---------------------------------------------------------------------------

@njit
def _inv_mod(a, p):
    # a is in 1..p-1 and p is prime
    t0, t1 = 0, 1
    r0, r1 = p, a
    while r1 != 0:
        q = r0 // r1
        t0, t1 = t1, t0 - q * t1
        r0, r1 = r1, r0 - q * r1
    return t0 % p


@njit
def rank_mod_p_kernel(M, p):
    """Row-reduce ``M`` (entries in 0..p-1, p < 2**31) in place; return rank."""
    m, n = M.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if M[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        _swap_rows(M, r, piv)
        inv = _inv_mod(M[r, c], p)
        for j in range(c, n):
            M[r, j] = (M[r, j] * inv) % p
        for i in range(m):
            if i != r and M[i, c] != 0:
                f = M[i, c]
                for j in range(c, n):
                    M[i, j] = (M[i, j] - f * M[r, j]) % p
        r += 1
    return r


def rank_mod_p_numpy(M, p):
    M = np.array(M, dtype=np.int64 if p < LIMIT else object) % p
    m, n = M.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(M[r:, c] != 0)[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        M[r] = (M[r] * pow(int(M[r, c]), -1, p)) % p
        others = np.nonzero(M[:, c] != 0)[0]
        others = others[others != r]
        if others.size:
            M[others] = (M[others] - M[others, c][:, None] * M[r][None, :]) % p
        r += 1
    return r


def rank_mod_p(M, p, jit=None):
    """Rank over F_p of an integer matrix."""
    M = np.asarray(M, dtype=object)
    use = _auto(jit, M.size)
    if M.size == 0:
        return 0
    if use and p < LIMIT:
        return int(rank_mod_p_kernel((M % p).astype(np.int64), np.int64(p)))
    return rank_mod_p_numpy(M, p)
