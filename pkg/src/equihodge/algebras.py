"""Graded coefficient algebras with group actions.

A :class:`GradedAlgebra` is a finite-dimensional graded rational vector
space, optionally carrying

* a graded-commutative associative unital product (structure constants),
* a differential of degree +1 squaring to zero and satisfying the graded
  Leibniz rule,
* a degree-preserving group action ``rho`` with ``rho(g) rho(h) = rho(gh)``
  that respects product and differential when present.

Elements are sparse rational vectors keyed by ``(degree, basis_index)``.
The structure maps of the function algebroid, the cyclic complexes and the
equivariant cochain algebras all consume this one type.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .report import Report

ZERO = Fraction(0)
ONE = Fraction(1)


class AlgebraValidationError(ValueError):
    pass


class GradedElement:
    """Sparse element of a graded algebra: {(degree, index): coefficient}."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs=None):
        self.algebra = algebra
        self.coeffs = {}
        if coeffs:
            for k, v in coeffs.items():
                v = Fraction(v)
                if v:
                    self.coeffs[k] = v

    def copy(self):
        e = GradedElement(self.algebra)
        e.coeffs = dict(self.coeffs)
        return e

    def is_zero(self):
        return not self.coeffs

    def degrees(self):
        return sorted({q for q, _ in self.coeffs})

    def homogeneous_degree(self):
        """The single degree of a homogeneous element (None for 0 or mixed)."""
        ds = self.degrees()
        return ds[0] if len(ds) == 1 else None

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            nv = out.get(k, ZERO) + v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return GradedElement(self.algebra, out)

    def __sub__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            nv = out.get(k, ZERO) - v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return GradedElement(self.algebra, out)

    def __neg__(self):
        return GradedElement(self.algebra, {k: -v for k, v in self.coeffs.items()})

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return GradedElement(self.algebra)
        return GradedElement(self.algebra, {k: c * v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, GradedElement):
            return self.algebra.mul(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        return isinstance(other, GradedElement) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        names = self.algebra.basis_names
        parts = []
        for (q, i), v in sorted(self.coeffs.items()):
            nm = names[q][i] if names else f"b[{q},{i}]"
            parts.append(f"{v}*{nm}" if v != 1 else nm)
        return " + ".join(parts)


def _apply_colmat(colmat, entries):
    """Apply a column-sparse matrix {i -> {j -> c}} to sparse entries."""
    out = {}
    for i, v in entries:
        col = colmat[i]
        for j, c in col.items():
            nv = out.get(j, ZERO) + v * c
            if nv:
                out[j] = nv
            else:
                out.pop(j, None)
    return out


class GroupAction:
    """Degree-preserving linear action of a group on a graded space.

    Matrices are column-sparse per degree: ``mats[g][q][i]`` is the sparse
    image column {j: coeff} of basis vector i of degree q.  For free abelian
    groups only the generator matrices (and their inverses) are supplied;
    arbitrary elements are composed and cached.
    """

    def __init__(self, group, mats=None, generator_mats=None):
        self.group = group
        self._cache = {}
        if group.is_finite:
            if mats is None:
                raise AlgebraValidationError("finite group action needs matrices for every element")
            self._cache = dict(mats)
        else:
            if generator_mats is None:
                raise AlgebraValidationError("free abelian action needs generator matrices")
            self.generator_mats = generator_mats  # list of (mat_plus, mat_minus)
            self._cache[group.identity] = None  # built lazily

    def matrix(self, g):
        """Per-degree column-sparse matrices of rho(g)."""
        if self.group.is_finite:
            return self._cache[g]
        got = self._cache.get(g)
        if got is not None:
            return got
        dims = self._dims
        mat = {q: [{i: ONE} for i in range(n)] for q, n in dims.items()}
        for axis, k in enumerate(g):
            step = self.generator_mats[axis][0 if k >= 0 else 1]
            for _ in range(abs(k)):
                mat = {
                    q: [_apply_colmat(step[q], mat[q][i].items()) for i in range(dims[q])]
                    for q in dims
                }
        self._cache[g] = mat
        return mat

    def attach_dims(self, dims):
        self._dims = dims
        if not self.group.is_finite:
            self._cache = {}

    def apply(self, g, element):
        mats = self.matrix(g)
        out = {}
        for (q, i), v in element.coeffs.items():
            col = mats[q][i]
            for j, c in col.items():
                k = (q, j)
                nv = out.get(k, ZERO) + v * c
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
        return GradedElement(element.algebra, out)


class GradedAlgebra:
    """Graded vector space with optional product/differential and a G-action."""

    def __init__(self, dims, action, product=None, differential=None, basis_names=None):
        self.dims = {q: n for q, n in dims.items() if n > 0}
        self.action = action
        action.attach_dims(self.dims)
        # product: {(q1,i1,q2,i2) -> {(q3,i3) -> c}}; None means "no product"
        self.product = product
        # differential: {q -> colmat into degree q+1}; None means d = 0
        self.differential = differential
        if basis_names is None:
            basis_names = {q: [f"b{q}_{i}" for i in range(n)] for q, n in self.dims.items()}
        self.basis_names = basis_names
        self.group = action.group

    # -- element constructors -------------------------------------------------

    def zero(self):
        return GradedElement(self)

    def basis_element(self, q, i):
        return GradedElement(self, {(q, i): ONE})

    def element(self, coeffs):
        return GradedElement(self, coeffs)

    def basis(self):
        for q in sorted(self.dims):
            for i in range(self.dims[q]):
                yield (q, i)

    def total_dim(self):
        return sum(self.dims.values())

    @property
    def unit(self):
        if self.product is None:
            raise AlgebraValidationError("algebra has no product")
        return GradedElement(self, dict(self._unit_coeffs))

    def set_unit(self, coeffs):
        self._unit_coeffs = {k: Fraction(v) for k, v in coeffs.items()}

    # -- operations -----------------------------------------------------------

    def mul(self, x, y):
        if self.product is None:
            raise AlgebraValidationError("algebra has no product")
        out = {}
        for (q1, i1), v1 in x.coeffs.items():
            for (q2, i2), v2 in y.coeffs.items():
                sc = self.product.get((q1, i1, q2, i2))
                if not sc:
                    continue
                v = v1 * v2
                for k, c in sc.items():
                    nv = out.get(k, ZERO) + v * c
                    if nv:
                        out[k] = nv
                    else:
                        out.pop(k, None)
        return GradedElement(self, out)

    def d(self, x):
        """Apply the differential (zero map when absent)."""
        if self.differential is None:
            return GradedElement(self)
        out = {}
        for (q, i), v in x.coeffs.items():
            colmat = self.differential.get(q)
            if colmat is None:
                continue
            for j, c in colmat[i].items():
                k = (q + 1, j)
                nv = out.get(k, ZERO) + v * c
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
        return GradedElement(self, out)

    def rho(self, g, x):
        return self.action.apply(g, x)

    def has_product(self):
        return self.product is not None


# -- builders ------------------------------------------------------------------


def build_function_algebra(group, action_table, point_names=None):
    """Degree-0 algebra of rational functions on a finite G-set.

    ``action_table[g][x]`` is the point index g.x.  The stored operator
    family is ``rho(g) = 1_x -> 1_{g.x}``, which composes as a homomorphism;
    the validation below rejects tables that are not group actions.
    """
    npts = len(action_table[group.identity]) if group.is_finite else None
    if not group.is_finite:
        raise AlgebraValidationError("function algebras need a finite group")
    for g in group.elements():
        row = action_table[g]
        if sorted(row) != list(range(npts)):
            raise AlgebraValidationError(f"row of {group.name(g)} is not a permutation")
    if action_table[group.identity] != list(range(npts)):
        raise AlgebraValidationError("identity element must act trivially")
    for g in group.elements():
        for h in group.elements():
            gh = group.mul(g, h)
            for x in range(npts):
                if action_table[g][action_table[h][x]] != action_table[gh][x]:
                    raise AlgebraValidationError(
                        f"table is not an action: ({group.name(g)},{group.name(h)}) on point {x}"
                    )

    mats = {
        g: {0: [{action_table[g][x]: ONE} for x in range(npts)]}
        for g in group.elements()
    }
    action = GroupAction(group, mats=mats)
    product = {
        (0, i, 0, j): ({(0, i): ONE} if i == j else {})
        for i in range(npts)
        for j in range(npts)
    }
    names = point_names or [str(i) for i in range(npts)]
    alg = GradedAlgebra(
        {0: npts},
        action,
        product=product,
        basis_names={0: [f"1_{nm}" for nm in names]},
    )
    alg.set_unit({(0, i): ONE for i in range(npts)})
    report = verify_cdga_axioms(alg)
    if not report.all_passed:
        raise AlgebraValidationError(str(report.failures[0]))
    return alg


def _subset_sign(perm_image):
    """Sort a tuple, return (sorted tuple, permutation sign); None if repeats."""
    lst = list(perm_image)
    sign = 1
    for i in range(1, len(lst)):
        j = i
        while j > 0 and lst[j - 1] > lst[j]:
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(lst, lst[1:]):
        if a == b:
            return None, 0
    return tuple(lst), sign


def build_exterior_algebra(group, generator_permutation, n_generators=None):
    """Exterior algebra on n degree-1 generators with a permuting G-action.

    ``generator_permutation[g]`` maps generator indices; the induced action
    on wedge monomials carries the permutation sign.  Basis of degree q:
    strictly increasing q-subsets in lexicographic order.
    """
    if not group.is_finite:
        raise AlgebraValidationError("exterior algebras here need a finite group")
    n = n_generators if n_generators is not None else len(generator_permutation[group.identity])

    subsets = {q: sorted(itertools.combinations(range(n), q)) for q in range(n + 1)}
    index = {q: {s: i for i, s in enumerate(subsets[q])} for q in subsets}

    product = {}
    for q1, s1s in subsets.items():
        for q2, s2s in subsets.items():
            if q1 + q2 > n:
                continue
            for i1, s1 in enumerate(s1s):
                for i2, s2 in enumerate(s2s):
                    merged, sign = _subset_sign(s1 + s2)
                    sc = {}
                    if sign:
                        sc[(q1 + q2, index[q1 + q2][merged])] = Fraction(sign)
                    product[(q1, i1, q2, i2)] = sc

    mats = {}
    for g in group.elements():
        perm = generator_permutation[g]
        if sorted(perm) != list(range(n)):
            raise AlgebraValidationError(f"{group.name(g)} does not permute the generators")
        per_degree = {}
        for q, ss in subsets.items():
            cols = []
            for s in ss:
                image, sign = _subset_sign(tuple(perm[k] for k in s))
                cols.append({index[q][image]: Fraction(sign)})
            per_degree[q] = cols
        mats[g] = per_degree
    action = GroupAction(group, mats=mats)

    names = {
        q: ["1"] if q == 0 else ["^".join(f"e{k+1}" for k in s) for s in subsets[q]]
        for q, ss in subsets.items()
    }
    alg = GradedAlgebra({q: len(ss) for q, ss in subsets.items()}, action,
                        product=product, basis_names=names)
    alg.set_unit({(0, 0): ONE})
    report = verify_cdga_axioms(alg)
    if not report.all_passed:
        raise AlgebraValidationError(str(report.failures[0]))
    return alg


# -- verification ----------------------------------------------------------------


def verify_cdga_axioms(alg, check_action=True):
    """Exhaustive axiom report for a graded algebra.

    Checks (when the structure is present): associativity, unitality and
    graded commutativity of the product; d*d = 0 and the graded Leibniz rule;
    that every rho(g) preserves degree, is invertible, composes as a
    homomorphism, and commutes with product and differential.
    An empty failure list means every axiom holds exactly.
    """
    rep = Report("cdga-axioms")
    basis = list(alg.basis())

    if alg.has_product():
        unit = alg.unit
        ok = True
        for q, i in basis:
            b = alg.basis_element(q, i)
            if alg.mul(unit, b) != b or alg.mul(b, unit) != b:
                rep.add("product: unital", False, witness=alg.basis_names[q][i])
                ok = False
                break
        if ok:
            rep.add("product: unital", True)

        bad = None
        for q1, i1 in basis:
            for q2, i2 in basis:
                x = alg.basis_element(q1, i1)
                y = alg.basis_element(q2, i2)
                sign = Fraction(-1) ** (q1 * q2)
                if alg.mul(x, y) != alg.mul(y, x).scale(sign):
                    bad = (alg.basis_names[q1][i1], alg.basis_names[q2][i2])
                    break
            if bad:
                break
        rep.add("product: graded commutative", bad is None,
                witness=None if bad is None else f"{bad[0]} * {bad[1]}")

        bad = None
        for q1, i1 in basis:
            x = alg.basis_element(q1, i1)
            for q2, i2 in basis:
                y = alg.basis_element(q2, i2)
                xy = alg.mul(x, y)
                for q3, i3 in basis:
                    z = alg.basis_element(q3, i3)
                    if alg.mul(xy, z) != alg.mul(x, alg.mul(y, z)):
                        bad = (alg.basis_names[q1][i1], alg.basis_names[q2][i2],
                               alg.basis_names[q3][i3])
                        break
                if bad:
                    break
            if bad:
                break
        rep.add("product: associative", bad is None,
                witness=None if bad is None else "({},{},{})".format(*bad))

    if alg.differential is not None:
        bad = None
        for q, i in basis:
            if not alg.d(alg.d(alg.basis_element(q, i))).is_zero():
                bad = alg.basis_names[q][i]
                break
        rep.add("differential: d*d = 0", bad is None, witness=bad)

        if alg.has_product():
            bad = None
            for q1, i1 in basis:
                x = alg.basis_element(q1, i1)
                dx = alg.d(x)
                for q2, i2 in basis:
                    y = alg.basis_element(q2, i2)
                    lhs = alg.d(alg.mul(x, y))
                    rhs = alg.mul(dx, y) + alg.mul(x, alg.d(y)).scale(Fraction(-1) ** q1)
                    if lhs != rhs:
                        bad = (alg.basis_names[q1][i1], alg.basis_names[q2][i2])
                        break
                if bad:
                    break
            rep.add("differential: graded Leibniz", bad is None,
                    witness=None if bad is None else f"{bad[0]}, {bad[1]}")

    if check_action:
        group = alg.group
        window = group.elements() if group.is_finite else group.enumeration_window(1)
        bad = None
        for g in window:
            for h in window:
                gh = group.mul(g, h)
                for q, i in basis:
                    b = alg.basis_element(q, i)
                    if alg.rho(g, alg.rho(h, b)) != alg.rho(gh, b):
                        bad = f"rho({group.name(g)})rho({group.name(h)}) on {alg.basis_names[q][i]}"
                        break
                if bad:
                    break
            if bad:
                break
        rep.add("action: rho(g)rho(h) = rho(gh)", bad is None, witness=bad)

        bad = None
        for g in window:
            for q, i in basis:
                img = alg.rho(g, alg.basis_element(q, i))
                if any(qq != q for qq, _ in img.coeffs):
                    bad = f"rho({group.name(g)}) mixes degrees on {alg.basis_names[q][i]}"
                    break
            if bad:
                break
        rep.add("action: degree preserving", bad is None, witness=bad)

        bad = None
        for g in window:
            ginv = group.inv(g)
            for q, i in basis:
                b = alg.basis_element(q, i)
                if alg.rho(ginv, alg.rho(g, b)) != b:
                    bad = f"rho({group.name(g)}) not invertible on {alg.basis_names[q][i]}"
                    break
            if bad:
                break
        rep.add("action: invertible", bad is None, witness=bad)

        if alg.has_product():
            bad = None
            for g in window:
                for q1, i1 in basis:
                    x = alg.basis_element(q1, i1)
                    for q2, i2 in basis:
                        y = alg.basis_element(q2, i2)
                        if alg.rho(g, alg.mul(x, y)) != alg.mul(alg.rho(g, x), alg.rho(g, y)):
                            bad = f"rho({group.name(g)}) on {alg.basis_names[q1][i1]}*{alg.basis_names[q2][i2]}"
                            break
                    if bad:
                        break
                if bad:
                    break
            rep.add("action: algebra maps", bad is None, witness=bad)
            ok = all(alg.rho(g, alg.unit) == alg.unit for g in window)
            rep.add("action: fixes unit", ok)

        if alg.differential is not None:
            bad = None
            for g in window:
                for q, i in basis:
                    b = alg.basis_element(q, i)
                    if alg.rho(g, alg.d(b)) != alg.d(alg.rho(g, b)):
                        bad = f"rho({group.name(g)}) vs d on {alg.basis_names[q][i]}"
                        break
                if bad:
                    break
            rep.add("action: commutes with differential", bad is None, witness=bad)

    return rep


def average_projector(alg):
    """The averaging projector (1/|G|) sum_g rho(g), per degree, dense.

    Finite groups only; for a periodic complex use the quotient description
    in :mod:`equihodge.complexes`.  The result is idempotent, commutes with
    every rho(h) and with the differential, and its image is the invariants.
    """
    group = alg.group
    if not group.is_finite:
        raise AlgebraValidationError(
            "averaging needs a finite group; periodic complexes expose invariants directly"
        )
    from . import linalg

    n = len(group)
    out = {}
    for q, dim in alg.dims.items():
        m = linalg.zeros(dim, dim)
        for g in group.elements():
            cols = alg.action.matrix(g)[q]
            for i in range(dim):
                for j, c in cols[i].items():
                    m[j][i] += c
        out[q] = linalg.mat_scale(Fraction(1, n), m)
    return out
