"""Exact rational linear algebra.

Dense matrices are lists of row lists of ``Fraction``; they stay small
(coefficient algebras, Gram matrices, invariant complexes).  The one place
where dimensions explode -- differentials of bar-type complexes -- only ever
needs a rank, so a sparse column-based eliminator is provided for that.

No floating point enters anywhere; every rank, kernel and solution is exact.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def zeros(nrows, ncols):
    return [[ZERO] * ncols for _ in range(nrows)]


def identity(n):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = ONE
    return m


def shape(a):
    return (len(a), len(a[0]) if a else 0)


def mat_copy(a):
    return [row[:] for row in a]


def transpose(a):
    nr, nc = shape(a)
    return [[a[i][j] for i in range(nr)] for j in range(nc)]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a):
    c = Fraction(c)
    return [[c * x for x in row] for row in a]


def mat_mul(a, b):
    nr, nk = shape(a)
    nk2, nc = shape(b)
    if nk != nk2:
        raise ValueError(f"shape mismatch {shape(a)} x {shape(b)}")
    bt = transpose(b)
    out = zeros(nr, nc)
    for i in range(nr):
        ai = a[i]
        for j in range(nc):
            s = ZERO
            for k, x in enumerate(ai):
                if x:
                    s += x * bt[j][k]
            out[i][j] = s
    return out


def mat_vec(a, v):
    return [sum((x * y for x, y in zip(row, v) if x), ZERO) for row in a]


def is_zero_matrix(a):
    return all(not x for row in a for x in row)


def mat_eq(a, b):
    return shape(a) == shape(b) and all(ra == rb for ra, rb in zip(a, b))


def rref(a):
    """Reduced row echelon form.  Returns (R, pivot column list)."""
    m = mat_copy(a)
    nr, nc = shape(m)
    pivots = []
    r = 0
    for c in range(nc):
        pr = next((i for i in range(r, nr) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        if pv != ONE:
            m[r] = [x / pv for x in m[r]]
        for i in range(nr):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return m, pivots


def rank(a):
    if not a or not a[0]:
        return 0
    return len(rref(a)[1])


def nullspace(a):
    """Basis of the right kernel, as a list of column vectors."""
    nr, nc = shape(a)
    if nc == 0:
        return []
    if nr == 0:
        return [[ONE if i == j else ZERO for i in range(nc)] for j in range(nc)]
    r, pivots = rref(a)
    pivset = set(pivots)
    free = [c for c in range(nc) if c not in pivset]
    basis = []
    for fc in free:
        v = [ZERO] * nc
        v[fc] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -r[i][fc]
        basis.append(v)
    return basis


def column_space_basis(a):
    """Indices of a maximal independent column set, in order."""
    if not a or not a[0]:
        return []
    return rref(a)[1]


def solve(a, b):
    """One exact solution of a x = b (vector), or None if inconsistent."""
    nr, nc = shape(a)
    aug = [a[i][:] + [b[i]] for i in range(nr)]
    r, pivots = rref(aug)
    if nc in pivots:
        return None
    x = [ZERO] * nc
    for i, pc in enumerate(pivots):
        x[pc] = r[i][nc]
    return x


def solve_matrix(a, b):
    """Solve a X = b columnwise; None if any column is inconsistent."""
    nr, nc = shape(a)
    nrb, ncb = shape(b)
    if nr != nrb:
        raise ValueError("row mismatch")
    aug = [a[i][:] + b[i][:] for i in range(nr)]
    r, pivots = rref(aug)
    if any(p >= nc for p in pivots):
        return None
    x = zeros(nc, ncb)
    for i, pc in enumerate(pivots):
        for j in range(ncb):
            x[pc][j] = r[i][nc + j]
    return x


def inverse(a):
    nr, nc = shape(a)
    if nr != nc:
        raise ValueError("not square")
    x = solve_matrix(a, identity(nr))
    if x is None or rank(a) != nr:
        raise ValueError("singular matrix")
    return x


def is_symmetric(a):
    nr, nc = shape(a)
    return nr == nc and all(a[i][j] == a[j][i] for i in range(nr) for j in range(i))


def is_positive_definite(a):
    """Sylvester's criterion via exact fraction-free elimination."""
    if not is_symmetric(a):
        return False
    n = len(a)
    m = mat_copy(a)
    for k in range(n):
        if m[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            if m[i][k]:
                f = m[i][k] / m[k][k]
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return True


def from_columns(cols, nrows=None):
    """Assemble a dense matrix from a list of column vectors."""
    if not cols:
        return [[] for _ in range(nrows or 0)]
    nrows = len(cols[0])
    return [[col[i] for col in cols] for i in range(nrows)]


def columns(a):
    return [list(col) for col in zip(*a)] if a and a[0] else []


def sparse_rank(cols):
    """Rank of the matrix whose columns are the given sparse dicts {row: value}.

    Gaussian elimination over the rationals with a min-fill pivot heuristic;
    suited to bar-complex differentials (a handful of entries per column).
    """
    # row index -> set of live column ids containing that row
    cols = [dict(c) for c in cols if c]
    for c in cols:
        for k in list(c):
            if not c[k]:
                del c[k]
    cols = [c for c in cols if c]
    rows = {}
    for ci, c in enumerate(cols):
        for ri in c:
            rows.setdefault(ri, set()).add(ci)
    live = set(range(len(cols)))
    rnk = 0
    while live:
        # cheapest live column, then its sparsest row: keeps fill-in low
        ci = min(live, key=lambda i: (len(cols[i]), i))
        col = cols[ci]
        if not col:
            live.discard(ci)
            continue
        ri = min(col, key=lambda r: (len(rows.get(r, ())), r))
        pivot = col[ri]
        rnk += 1
        live.discard(ci)
        for cj in list(rows.get(ri, ())):
            if cj == ci or cj not in live:
                continue
            other = cols[cj]
            f = other[ri] / pivot
            for rk, v in col.items():
                nv = other.get(rk, ZERO) - f * v
                if nv:
                    if rk not in other:
                        rows.setdefault(rk, set()).add(cj)
                    other[rk] = nv
                else:
                    if rk in other:
                        del other[rk]
                        rows[rk].discard(cj)
            if not other:
                live.discard(cj)
        # retire the pivot row and column entirely
        for cj in rows.get(ri, ()):
            cols[cj].pop(ri, None)
        rows.pop(ri, None)
        for rk in col:
            if rk in rows:
                rows[rk].discard(ci)
    return rnk
