"""Cyclic module of the function algebroid and its cohomology.

Degree-n cochains are coefficient-valued functions on G^n.  Two cyclic
simplicial structures act on them:

* the bar-type structure defined directly on functions (faces contract
  adjacent arguments or pull back along the first, degeneracies insert the
  identity, the cyclic operator rotates arguments with a pullback twist),
* the tensor-side structure on words a^1 (x)_B ... (x)_B a^n of algebroid
  elements (faces insert units or apply the coproduct, degeneracies apply
  the counit, the cyclic operator uses the antipode).

``identify_tensor`` realizes a word as a function on G^n by the iterated
balanced product; the coherence of both structures under this map is part
of the verification suite.

Cohomology is assembled from a total complex: in bidegree (p, q) live
functions on G^p valued in the degree-q part of B, with total differential
D = b + (-1)^p d_B, where b is the alternating face sum and d_B the
coefficient differential.  Cyclic cohomology is computed, in characteristic
zero, from the subcomplex of cochains fixed by the signed cyclic operator
(-1)^p t.  Both computations are exact.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from . import linalg
from .algebras import AlgebraValidationError
from .report import Report

ONE = Fraction(1)
MINUS = Fraction(-1)


class HopfCochain:
    """Finitely supported map G^n -> B, degree n >= 0 (n = 0: one value)."""

    def __init__(self, algebra, degree, table=None):
        self.algebra = algebra
        self.degree = degree
        self.table = {}
        if table:
            for t, v in table.items():
                if len(t) != degree:
                    raise ValueError(f"tuple {t} has wrong length for degree {degree}")
                if not v.is_zero():
                    self.table[t] = v

    def value(self, t):
        got = self.table.get(tuple(t))
        return got if got is not None else self.algebra.zero()

    def is_zero(self):
        return not self.table

    def _merge(self, other, flip):
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        out = dict(self.table)
        for t, v in other.table.items():
            s = (out.get(t, self.algebra.zero()) - v) if flip else (
                out.get(t, self.algebra.zero()) + v)
            if s.is_zero():
                out.pop(t, None)
            else:
                out[t] = s
        return HopfCochain(self.algebra, self.degree, out)

    def __add__(self, other):
        return self._merge(other, False)

    def __sub__(self, other):
        return self._merge(other, True)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return HopfCochain(self.algebra, self.degree)
        return HopfCochain(self.algebra, self.degree,
                           {t: v.scale(c) for t, v in self.table.items()})

    def pointwise_mul(self, other):
        out = {}
        for t, v in self.table.items():
            w = other.table.get(t)
            if w is not None:
                out[t] = self.algebra.mul(v, w)
        return HopfCochain(self.algebra, self.degree, out)

    def __eq__(self, other):
        return (isinstance(other, HopfCochain) and self.degree == other.degree
                and self.table == other.table)

    def __repr__(self):
        return f"<cochain deg {self.degree}, support {len(self.table)}>"


def _require_finite(algebra):
    if not algebra.group.is_finite:
        raise AlgebraValidationError("cyclic complexes are computed for finite groups")


# -- bar-type operators on functions ------------------------------------------


def face(i, c):
    """Coface map C^{n} -> C^{n+1} (unsigned); 0 <= i <= n+1."""
    alg = c.algebra
    _require_finite(alg)
    group = alg.group
    p = c.degree
    if not 0 <= i <= p + 1:
        raise IndexError(f"face index {i} out of range for degree {p}")
    out = {}

    def bump(t, v):
        if t in out:
            s = out[t] + v
            if s.is_zero():
                del out[t]
            else:
                out[t] = s
        elif not v.is_zero():
            out[t] = v

    for t, v in c.table.items():
        if i == 0:
            for g in group.elements():
                bump((g,) + t, alg.rho(g, v))
        elif i <= p:
            tk = t[i - 1]
            for a in group.elements():
                bump(t[: i - 1] + (a, group.mul(group.inv(a), tk)) + t[i:], v)
        else:
            for h in group.elements():
                bump(t + (h,), v)
    return HopfCochain(alg, p + 1, out)


def degeneracy(i, c):
    """Codegeneracy C^{n+1} -> C^n: insert the identity at slot i; 0 <= i <= n."""
    alg = c.algebra
    p = c.degree
    if p < 1 or not 0 <= i <= p - 1:
        raise IndexError(f"degeneracy index {i} out of range for degree {p}")
    e = alg.group.identity
    out = {}
    for t, v in c.table.items():
        if t[i] == e:
            key = t[:i] + t[i + 1:]
            got = out.get(key)
            out[key] = v if got is None else got + v
    return HopfCochain(alg, p - 1, out)


def cyclic_operator(c):
    """t(c)(g_1..g_n) = (g_1...g_n).c((g_1...g_n)^{-1}, g_1, .., g_{n-1})."""
    alg = c.algebra
    group = alg.group
    p = c.degree
    if p == 0:
        return c
    out = {}
    for s, v in c.table.items():
        head = s[0]
        rest = s[1:]
        last = group.inv(group.mul(group.product(rest), head))
        u = rest + (last,)
        w = alg.rho(group.inv(head), v)
        got = out.get(u)
        out[u] = w if got is None else got + w
    return HopfCochain(alg, p, out)


def signed_cyclic_operator(c):
    """lambda = (-1)^n t, the operator whose fixed cochains form the cyclic
    subcomplex in characteristic zero."""
    return cyclic_operator(c).scale(MINUS ** c.degree)


def hochschild_b(c):
    """b = sum_i (-1)^i face_i, the bar differential."""
    out = HopfCochain(c.algebra, c.degree + 1)
    for i in range(c.degree + 2):
        out = out + face(i, c).scale(MINUS**i)
    return out


# -- tensor-side operators on words of algebroid elements ----------------------


def identify_tensor(hopf, factors):
    """Realize a^1 (x)_B ... (x)_B a^n as a function on G^n.

    The value at (g_1, .., g_n) is the iterated balanced product
    a^1(g_1) * g_1.(a^2(g_2)) * (g_1 g_2).(a^3(g_3)) * ...
    """
    alg = hopf.algebra
    _require_finite(alg)
    group = hopf.group
    n = len(factors)
    if n == 0:
        raise ValueError("need at least one factor")
    out = {}
    for gs in itertools.product(group.elements(), repeat=n):
        acc = factors[0].value(gs[0])
        prefix = gs[0]
        for k in range(1, n):
            if acc.is_zero():
                break
            acc = alg.mul(acc, alg.rho(prefix, factors[k].value(gs[k])))
            prefix = group.mul(prefix, gs[k])
        if not acc.is_zero():
            out[gs] = acc
    return HopfCochain(alg, n, out)


def identify_tensor_sum(hopf, terms):
    """Realize a formal sum [(coeff, word), ...] of tensor words."""
    n = len(terms[0][1])
    out = HopfCochain(hopf.algebra, n)
    for coeff, word in terms:
        out = out + identify_tensor(hopf, word).scale(coeff)
    return out


def tensor_face(hopf, i, word):
    """Tensor-side coface on a word of length n-1, as a formal sum.

    Inserting the unit at either end for i in {0, n}; applying the coproduct
    to the i-th factor otherwise, through the finite expansion
    Delta(a) = sum_h a(.h) (x) 1_h.
    """
    n = len(word) + 1
    if not 0 <= i <= n:
        raise IndexError(f"face index {i} out of range")
    one = hopf.unit()
    if i == 0:
        return [(ONE, (one,) + tuple(word))]
    if i == n:
        return [(ONE, tuple(word) + (one,))]
    a = word[i - 1]
    unit_b = hopf.algebra.unit
    terms = []
    for h in hopf.group.elements():
        pair = (a.shift(h), hopf.indicator(h, unit_b))
        terms.append((ONE, tuple(word[: i - 1]) + pair + tuple(word[i:])))
    return terms


def tensor_degeneracy(hopf, i, word):
    """Tensor-side codegeneracy on a word of length n+1: drop the (i+1)-st
    factor through the counit, absorbing it into a neighbour via source
    (interior) or target (at the right end)."""
    n = len(word) - 1
    if not 0 <= i <= n:
        raise IndexError(f"degeneracy index {i} out of range")
    eps = hopf.counit(word[i])
    if i < n:
        absorbed = hopf.source(eps) * word[i + 1]
        return [(ONE, tuple(word[:i]) + (absorbed,) + tuple(word[i + 2:]))]
    absorbed = word[n - 1] * hopf.target(eps)
    return [(ONE, tuple(word[: n - 1]) + (absorbed,))]


def tau_via_hopf(hopf, factors):
    """The tensor-side cyclic operator (Delta^{n-1} S(a^1)) * (a^2 (x) .. (x) 1),
    evaluated entirely in the function realization."""
    alg = hopf.algebra
    _require_finite(alg)
    group = hopf.group
    n = len(factors)
    if n == 0:
        raise ValueError("need at least one factor")
    s_first = hopf.antipode(factors[0])
    shifted = identify_tensor(hopf, list(factors[1:]) + [hopf.unit()])
    out = {}
    for gs in itertools.product(group.elements(), repeat=n):
        lead = s_first.value(group.product(gs))
        if lead.is_zero():
            continue
        v = alg.mul(lead, shifted.value(gs))
        if not v.is_zero():
            out[gs] = v
    return HopfCochain(alg, n, out)


# -- the total complex ----------------------------------------------------------


class TotalComplex:
    """Total complex of functions on G^p valued in the graded coefficients.

    Basis labels in total degree m are (p, g_tuple, q, i) with p + q = m.
    The differential D = b + (-1)^p d_B is materialized lazily per degree as
    sparse columns; ``verify_d_squared`` checks D o D = 0 exactly on every
    assembled basis element.
    """

    def __init__(self, group, algebra, max_total_degree):
        _require_finite(algebra)
        self.group = group
        self.algebra = algebra
        self.max_degree = max_total_degree
        self._basis = {}
        self._index = {}
        self._columns = {}

    def basis(self, m):
        if m < 0 or m > self.max_degree:
            return []
        if m not in self._basis:
            items = []
            for p in range(m + 1):
                q = m - p
                if q not in self.algebra.dims:
                    continue
                for gs in itertools.product(self.group.elements(), repeat=p):
                    for i in range(self.algebra.dims[q]):
                        items.append((p, gs, q, i))
            self._basis[m] = items
            self._index[m] = {b: k for k, b in enumerate(items)}
        return self._basis[m]

    def dim(self, m):
        return len(self.basis(m))

    def index(self, m):
        self.basis(m)
        return self._index[m]

    def _column(self, m, label):
        p, gs, q, i = label
        group, alg = self.group, self.algebra
        idx = self.index(m + 1)
        col = {}

        def bump(key, v):
            k = idx[key]
            s = col.get(k, Fraction(0)) + v
            if s:
                col[k] = s
            else:
                col.pop(k, None)

        for g in group.elements():
            for j, c in alg.action.matrix(g)[q][i].items():
                bump((p + 1, (g,) + gs, q, j), c)
        for k in range(1, p + 1):
            s = MINUS**k
            tk = gs[k - 1]
            for a in group.elements():
                u = gs[: k - 1] + (a, group.mul(group.inv(a), tk)) + gs[k:]
                bump((p + 1, u, q, i), s)
        s = MINUS ** (p + 1)
        for h in group.elements():
            bump((p + 1, gs + (h,), q, i), s)
        if alg.differential is not None:
            dcol = alg.differential.get(q)
            if dcol is not None and (q + 1) in alg.dims:
                s = MINUS**p
                for j, c in dcol[i].items():
                    bump((p, gs, q + 1, j), s * c)
        return col

    def differential_columns(self, m):
        """Sparse columns of D: degree m -> m+1 (requires m+1 <= max)."""
        if m + 1 > self.max_degree:
            raise ValueError(f"degree {m + 1} beyond assembled range")
        if m not in self._columns:
            self._columns[m] = [self._column(m, b) for b in self.basis(m)]
        return self._columns[m]

    def apply_differential(self, m, vec):
        """Apply D to a sparse vector {basis position: coeff} in degree m."""
        cols = self.differential_columns(m)
        out = {}
        for k, c in vec.items():
            for j, d in cols[k].items():
                s = out.get(j, Fraction(0)) + c * d
                if s:
                    out[j] = s
                else:
                    out.pop(j, None)
        return out

    def verify_d_squared(self, up_to=None):
        """Exact check that D o D = 0 on all basis elements of degree <= up_to."""
        top = self.max_degree - 2 if up_to is None else min(up_to, self.max_degree - 2)
        for m in range(top + 1):
            cols = self.differential_columns(m)
            for col in cols:
                if self.apply_differential(m + 1, col):
                    raise ArithmeticError(
                        f"total differential does not square to zero in degree {m}"
                    )
        return True

    def rank(self, m):
        if m < 0 or m + 1 > self.max_degree or self.dim(m) == 0:
            return 0
        return linalg.sparse_rank(self.differential_columns(m))

    def betti(self, max_n=None):
        """dim H^m for m = 0..max_n (default: max assembled degree - 1)."""
        top = self.max_degree - 1 if max_n is None else max_n
        if top + 1 > self.max_degree:
            raise ValueError("not assembled high enough for requested degree")
        out = []
        for m in range(top + 1):
            out.append(self.dim(m) - self.rank(m) - self.rank(m - 1))
        return out


def assemble_total_complex(group, algebra, max_total_degree):
    """Build the total complex and verify D*D = 0 across the assembled range."""
    tc = TotalComplex(group, algebra, max_total_degree)
    tc.verify_d_squared()
    return tc


def hochschild_cohomology(tc, max_n=None):
    """Exact cohomology dimensions of the total complex."""
    return tc.betti(max_n)


# -- cyclic cohomology via the invariant subcomplex -----------------------------


def _is_genperm(algebra):
    group = algebra.group
    for g in group.elements():
        mats = algebra.action.matrix(g)
        for q, cols in mats.items():
            for col in cols:
                if len(col) > 1:
                    return False
    return True


def _lambda_on_slot(group, algebra, p, slot):
    """Image of a basis slot (g_tuple, q, i) under (-1)^p t, for generalized
    permutation actions: returns (slot', coeff)."""
    gs, q, i = slot
    if p == 0:
        return slot, ONE
    head, rest = gs[0], gs[1:]
    last = group.inv(group.mul(group.product(rest), head))
    u = rest + (last,)
    col = algebra.action.matrix(group.inv(head))[q][i]
    (j, c), = col.items()
    return (u, q, j), (MINUS**p) * c


def cyclic_invariant_basis(group, algebra, p, q):
    """Basis of the lambda-fixed subspace of functions G^p -> B_q.

    For generalized-permutation actions the fixed vectors are orbit sums of
    basis slots; an orbit contributes one vector exactly when the product of
    the twisting coefficients around it is 1.  Each returned vector is a
    sparse dict {(g_tuple, q, i): coeff} with coefficient 1 at its
    representative slot.
    """
    if not _is_genperm(algebra):
        raise AlgebraValidationError(
            "cyclic invariants need a generalized-permutation action"
        )
    dim_q = algebra.dims.get(q, 0)
    slots = [
        (gs, q, i)
        for gs in itertools.product(group.elements(), repeat=p)
        for i in range(dim_q)
    ]
    seen = set()
    basis = []
    for start in slots:
        if start in seen:
            continue
        orbit = {start: ONE}
        cur, coeff = start, ONE
        while True:
            cur, c = _lambda_on_slot(group, algebra, p, cur)
            coeff *= c
            if cur == start:
                break
            orbit[cur] = coeff
        seen.update(orbit)
        if coeff == ONE:
            basis.append(orbit)
    return basis


def cyclic_complex_dimensions(group, algebra, max_degree):
    """Per total degree, the bases of the cyclic (lambda-fixed) subcomplex."""
    bases = {}
    for m in range(max_degree + 1):
        block = []
        for p in range(m + 1):
            q = m - p
            if q not in algebra.dims:
                continue
            block.extend(
                (p, vec) for vec in cyclic_invariant_basis(group, algebra, p, q)
            )
        bases[m] = block
    return bases


def cyclic_cohomology(group, algebra, max_degree, total_complex=None):
    """HC^n for n <= max_degree, computed on the cyclic-invariant subcomplex.

    The restriction step re-expands each image in the invariant basis and
    verifies the expansion reproduces it exactly, which simultaneously checks
    that the total differential preserves the subcomplex.
    """
    _require_finite(algebra)
    tc = total_complex
    if tc is None or tc.max_degree < max_degree + 1:
        tc = assemble_total_complex(group, algebra, max_degree + 1)
    bases = cyclic_complex_dimensions(group, algebra, max_degree + 1)

    def restricted_columns(m):
        dom = bases[m]
        cod = bases[m + 1]
        idx_m1 = tc.index(m + 1)
        rep_pos = []
        for p, vec in cod:
            rep = next(iter(vec))  # orbit representative, coefficient 1
            rep_pos.append(idx_m1[(p, rep[0], rep[1], rep[2])])
        cols = []
        idx_m = tc.index(m)
        for p, vec in dom:
            flat = {}
            for slot, coeff in vec.items():
                flat_key = idx_m[(p, slot[0], slot[1], slot[2])]
                flat[flat_key] = flat.get(flat_key, Fraction(0)) + coeff
            image = tc.apply_differential(m, flat)
            col = {k: image.get(pos, Fraction(0)) for k, pos in enumerate(rep_pos)}
            col = {k: v for k, v in col.items() if v}
            # exact invariance check: the image must equal its re-expansion
            reexp = {}
            for k, v in col.items():
                p2, vec2 = cod[k]
                for slot, coeff in vec2.items():
                    fk = tc.index(m + 1)[(p2, slot[0], slot[1], slot[2])]
                    s = reexp.get(fk, Fraction(0)) + v * coeff
                    if s:
                        reexp[fk] = s
                    else:
                        reexp.pop(fk, None)
            if reexp != image:
                raise ArithmeticError(
                    "total differential does not preserve the cyclic subcomplex"
                )
            cols.append(col)
        return cols

    dims = []
    ranks = {}
    for m in range(max_degree + 1):
        ranks[m] = linalg.sparse_rank(restricted_columns(m)) if bases[m] else 0
    for m in range(max_degree + 1):
        prev = ranks.get(m - 1, 0)
        dims.append(len(bases[m]) - ranks[m] - prev)
    return dims


def verify_hopf_cyclic_decomposition(group, algebra, max_degree, invariant_betti=None):
    """Check dim HC^n = sum_k dim H^(n-2k) of the total complex, per degree.

    When the Betti numbers of the invariant subcomplex of an underlying
    G-space are supplied, they are compared against the total-complex
    cohomology as well (the proper-action identification).
    """
    rep = Report("cyclic-decomposition")
    tc = assemble_total_complex(group, algebra, max_degree + 1)
    total = hochschild_cohomology(tc, max_degree)
    hc = cyclic_cohomology(group, algebra, max_degree, total_complex=tc)
    rep.add_table("total_cohomology", total)
    rep.add_table("cyclic_cohomology", hc)
    for n in range(max_degree + 1):
        expect = sum(total[n - 2 * k] for k in range(n // 2 + 1) if n - 2 * k >= 0)
        rep.add(
            f"HC^{n} = sum of H^(n-2k)",
            hc[n] == expect,
            witness=None if hc[n] == expect else f"HC^{n}={hc[n]}, sum={expect}",
        )
    if invariant_betti is not None:
        padded = list(invariant_betti) + [0] * (max_degree + 1)
        for n in range(max_degree + 1):
            rep.add(
                f"H^{n}(total) = invariant Betti b_{n}",
                total[n] == padded[n],
                witness=None if total[n] == padded[n]
                else f"total={total[n]}, betti={padded[n]}",
            )
        for n in range(max_degree + 1):
            expect = sum(padded[n - 2 * k] for k in range(n // 2 + 1) if n - 2 * k >= 0)
            rep.add(
                f"HC^{n} = sum of invariant Betti b_(n-2k)",
                hc[n] == expect,
                witness=None if hc[n] == expect else f"HC^{n}={hc[n]}, sum={expect}",
            )
    return rep
