"""Window Hodge theory for invariant cochains.

Given an equivariant complex, a nonnegative rational cutoff f meeting every
simplex orbit, and the modular weight chi of the group, this module builds:

* the weight  A(x)^2 = sum_g chi(g) f(g.x)^2  (stored squared: no square
  roots are ever taken, so everything stays rational),
* the projection  (P_f mu)(x) = f(x) A(x)^-2 sum_g chi(g) f(g.x) (g.mu)(x)
  onto the window space W = { f s : s invariant },
* the operators d_f (f s -> f ds), its exact inner-product adjoint, the
  generalized Laplacian, the harmonic projector and the Green operator.

W is coordinatized by the invariant basis (s -> f s is injective under the
covering condition), so every operator is a small dense rational matrix and
every asserted identity is an exact matrix identity.  The membrane between
finite and periodic complexes is the handful of ambient-space hooks
(``act_on_id``, ``ambient_inner``, ambient id enumeration) on the complex
classes.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .report import Report

ZERO = Fraction(0)
ONE = Fraction(1)


class HodgeValidationError(ValueError):
    pass


class Cutoff:
    """Nonnegative rational values on ambient simplices, finite support."""

    def __init__(self, values):
        self.values = {}
        for k, v in values.items():
            v = Fraction(v)
            if v < 0:
                raise HodgeValidationError(f"cutoff must be nonnegative, got {v} at {k}")
            if v:
                self.values[k] = v

    def __call__(self, amb_id):
        return self.values.get(amb_id, ZERO)

    def support(self):
        return list(self.values)

    def degrees(self):
        return sorted({k[0] for k in self.values})


def full_cutoff(K):
    """f = 1 on every simplex (finite complexes)."""
    if K.is_periodic:
        raise HodgeValidationError("a periodic complex needs an explicit finite cutoff")
    vals = {}
    for p in K.degrees():
        for amb in K.ambient_ids(p):
            vals[amb] = ONE
    return Cutoff(vals)


class Weight:
    """The squared weight A^2, one positive rational per simplex orbit."""

    def __init__(self, K, f):
        self.K = K
        self.f = f
        group = K.group
        self.base = {}
        if K.is_periodic:
            supp_offsets = {}
            for (p, i, off) in f.support():
                supp_offsets.setdefault((p, i), []).append(off)
            for p in K.degrees():
                for i in range(K.inv_dim(p)):
                    offs = supp_offsets.get((p, i), [])
                    total = sum(
                        (group.chi(off) * f((p, i, off)) ** 2 for off in offs),
                        ZERO,
                    )
                    if total <= 0:
                        raise HodgeValidationError(
                            f"covering violated: orbit {K.cells[p][i][0]} misses the cutoff"
                        )
                    self.base[(p, i)] = total
        else:
            for p in K.degrees():
                orbits, killed = K.orbits(p)
                all_orbits = [set(o) for o in orbits] + [set(k) for k in killed]
                for members in all_orbits:
                    if not any(f((p, i)) for i in members):
                        rep = sorted(members)[0]
                        raise HodgeValidationError(
                            f"covering violated: orbit of simplex {K.simplices[p][rep]}"
                            f" (degree {p}) misses the cutoff"
                        )
                for i in range(K.dim_cochains(p)):
                    total = ZERO
                    for g in group.elements():
                        (pj, j), _sign = K.act_on_id(g, (p, i))
                        total += group.chi(g) * f((pj, j)) ** 2
                    self.base[(p, i)] = total

    def squared(self, amb_id):
        if self.K.is_periodic:
            p, i, off = amb_id
            return self.base[(p, i)] / self.K.group.chi(off)
        return self.base[amb_id]

    def verify_equivariance(self, window_elements):
        """A(g.x)^2 = chi(g)^-1 A(x)^2, exactly, over the given elements."""
        K, group = self.K, self.K.group
        ids = []
        if K.is_periodic:
            for p in K.degrees():
                ids.extend(K.ambient_ids_in_box(p, 1))
        else:
            for p in K.degrees():
                ids.extend(K.ambient_ids(p))
        for g in window_elements:
            for x in ids:
                gx, _ = K.act_on_id(g, x)
                if self.squared(gx) * group.chi(g) != self.squared(x):
                    return False
        return True


def weight_A(K, f, strict=False):
    """Build the weight; optionally require f = 1 somewhere on each orbit."""
    w = Weight(K, f)
    if strict:
        for p in K.degrees():
            n_orbits = K.inv_dim(p) if K.is_periodic else len(K.orbits(p)[0]) + len(K.orbits(p)[1])
            for idx in range(n_orbits):
                if K.is_periodic:
                    ok = any(
                        f(k) == 1 for k in f.support() if k[0] == p and k[1] == idx
                    )
                else:
                    orbits, killed = K.orbits(p)
                    members = (list(orbits[idx]) if idx < len(orbits)
                               else killed[idx - len(orbits)])
                    ok = any(f((p, i)) == 1 for i in members)
                if not ok:
                    raise HodgeValidationError(
                        f"strict cutoff: no representative with f = 1 in degree {p}, orbit {idx}"
                    )
    return w


def _group_window(K, f):
    """Group elements that can move the support of f onto itself."""
    group = K.group
    if not K.is_periodic:
        return list(group.elements())
    offsets = set()
    per_cell = {}
    for (p, i, off) in f.support():
        per_cell.setdefault((p, i), []).append(off)
    for offs in per_cell.values():
        for a in offs:
            for b in offs:
                offsets.add(tuple(x - y for x, y in zip(a, b)))
    return sorted(offsets)


def projection_Pf(K, f, weight, mu):
    """Apply P_f to a finitely supported ambient cochain {amb_id: value}."""
    group = K.group
    out = {}
    if K.is_periodic:
        per_cell = {}
        for (p, i, off) in f.support():
            per_cell.setdefault((p, i), []).append(off)
        for x in f.support():
            p, i, off = x
            acc = ZERO
            for off2 in per_cell[(p, i)]:
                g = tuple(a - b for a, b in zip(off2, off))
                y = (p, i, off2)
                acc += group.chi(g) * f(y) * mu.get(y, ZERO)
            v = f(x) / weight.squared(x) * acc
            if v:
                out[x] = v
    else:
        for x in f.support():
            acc = ZERO
            for g in group.elements():
                y, sign = K.act_on_id(g, x)
                acc += group.chi(g) * f(y) * sign * mu.get(y, ZERO)
            v = f(x) / weight.squared(x) * acc
            if v:
                out[x] = v
    return out


class WindowPackage:
    """All window-space operators for one complex and cutoff.

    Coordinates on W^p are the invariant basis; ``differentials`` may
    override the restricted coboundary (the twisted theory does).
    """

    def __init__(self, K, f=None, differentials=None, weight=None):
        self.K = K
        self.f = f if f is not None else full_cutoff(K)
        self.weight = weight if weight is not None else weight_A(K, self.f)
        self.degrees = list(range(K.dimension + 1))
        self.dims = {p: K.inv_dim(p) for p in self.degrees}
        self._window_basis = {
            p: [self._window_vector(p, j) for j in range(self.dims[p])]
            for p in self.degrees
        }
        self.gram = {p: self._gram(p) for p in self.degrees}
        for p, g in self.gram.items():
            if self.dims[p] and not linalg.is_positive_definite(g):
                raise ArithmeticError(f"window Gram matrix in degree {p} is singular")
        if differentials is None:
            differentials = {p: K.d_inv(p) for p in self.degrees}
        self.d_f = differentials
        self.d_f_adjoint = {}
        for p in self.degrees[:-1]:
            if self.dims[p] and self.dims[p + 1]:
                gp_inv = linalg.inverse(self.gram[p])
                self.d_f_adjoint[p] = linalg.mat_mul(
                    gp_inv,
                    linalg.mat_mul(linalg.transpose(self.d_f[p]), self.gram[p + 1]),
                )
            else:
                self.d_f_adjoint[p] = linalg.zeros(self.dims[p], self.dims[p + 1])
        self.laplacian = {p: self._laplacian(p) for p in self.degrees}
        self.kernel = {p: linalg.nullspace(self.laplacian[p]) if self.dims[p] else []
                       for p in self.degrees}
        self.harmonic_projector = {p: self._harmonic_projector(p) for p in self.degrees}
        self.green = {p: self._green(p) for p in self.degrees}

    # -- assembly ------------------------------------------------------------

    def _window_vector(self, p, j):
        """Ambient sparse dict of f * (j-th invariant basis cochain)."""
        K, f = self.K, self.f
        out = {}
        if K.is_periodic:
            for amb in f.support():
                if amb[0] == p and amb[1] == j:
                    out[amb] = f(amb)
        else:
            inv = K.invariant_vectors(p)[j]
            for i, c in enumerate(inv):
                amb = (p, i)
                v = c * f(amb)
                if v:
                    out[amb] = v
        return out

    def _gram(self, p):
        basis = self._window_basis[p]
        n = len(basis)
        m = linalg.zeros(n, n)
        for i in range(n):
            for j in range(i, n):
                v = self.K.ambient_inner(p, basis[i], basis[j])
                m[i][j] = v
                m[j][i] = v
        return m

    def _laplacian(self, p):
        n = self.dims[p]
        acc = linalg.zeros(n, n)
        if p + 1 in self.dims and self.dims.get(p + 1):
            acc = linalg.mat_add(acc, linalg.mat_mul(self.d_f_adjoint[p], self.d_f[p]))
        if p - 1 >= 0 and self.dims.get(p - 1):
            acc = linalg.mat_add(
                acc, linalg.mat_mul(self.d_f[p - 1], self.d_f_adjoint[p - 1])
            )
        return acc

    def _harmonic_projector(self, p):
        n = self.dims[p]
        kernel = self.kernel[p]
        if not kernel:
            return linalg.zeros(n, n)
        K = linalg.from_columns(kernel, n)
        G = self.gram[p]
        KtG = linalg.mat_mul(linalg.transpose(K), G)
        small = linalg.mat_mul(KtG, K)
        return linalg.mat_mul(K, linalg.mat_mul(linalg.inverse(small), KtG))

    def _green(self, p):
        n = self.dims[p]
        if n == 0:
            return []
        lap = self.laplacian[p]
        h = self.harmonic_projector[p]
        one_minus_h = linalg.mat_sub(linalg.identity(n), h)
        im_cols = linalg.column_space_basis(lap)
        if not im_cols:
            return linalg.zeros(n, n)
        B = linalg.from_columns([linalg.columns(lap)[c] for c in im_cols], n)
        # solve lap (B y) = (1 - H) columnwise; the unique preimage in Im
        lapB = linalg.mat_mul(lap, B)
        y = linalg.solve_matrix(lapB, one_minus_h)
        if y is None:
            raise ArithmeticError("Green operator solve failed (inconsistent system)")
        return linalg.mat_mul(B, y)

    # -- decomposition and harmonic representatives ---------------------------

    def harmonic_dims(self):
        return [len(self.kernel[p]) for p in self.degrees]

    def hodge_decompose(self, p, w):
        """Split w in W^p as (harmonic, image, potential): w = h + Lap(u)."""
        h = linalg.mat_vec(self.harmonic_projector[p], w)
        u = linalg.mat_vec(self.green[p], w)
        image = linalg.mat_vec(self.laplacian[p], u)
        return h, image, u

    def inner(self, p, v, w):
        return sum(
            (x * y for x, y in zip(linalg.mat_vec(self.gram[p], w), v)), ZERO
        )

    def harmonic_representative(self, p, cocycle):
        """H(f alpha) for a d-closed invariant cochain alpha (W coordinates)."""
        if p + 1 <= self.K.dimension:
            if any(x for x in linalg.mat_vec(self.d_f[p], cocycle)):
                raise HodgeValidationError("input cochain is not closed")
        return linalg.mat_vec(self.harmonic_projector[p], cocycle)

    # -- verification -----------------------------------------------------------

    def verify_projection(self):
        """P_f identities on the ambient space: idempotent, symmetric (chi = 1),
        fixes the window, and has the window as exact range."""
        rep = Report("window-projection")
        K, f, weight = self.K, self.f, self.weight
        group = K.group
        chi_trivial = all(group.chi(g) == 1 for g in _group_window(K, f))

        if K.is_periodic:
            radius = 1 + max(
                (max(abs(x) for x in amb[2]) for amb in f.support()), default=0
            )
            test_ids = {p: K.ambient_ids_in_box(p, radius) for p in self.degrees}
        else:
            test_ids = {p: K.ambient_ids(p) for p in self.degrees}

        for p in self.degrees:
            images = {}
            ok_idem = True
            for x in test_ids[p]:
                px = projection_Pf(K, f, weight, {x: ONE})
                images[x] = px
                if projection_Pf(K, f, weight, px) != px:
                    ok_idem = False
                    break
            rep.add(f"P_f idempotent (degree {p})", ok_idem)

            if chi_trivial:
                ok_sym = True
                ids = test_ids[p]
                for a in range(len(ids)):
                    for b in range(a, len(ids)):
                        lhs = K.ambient_inner(p, images[ids[a]], {ids[b]: ONE})
                        rhs = K.ambient_inner(p, {ids[a]: ONE}, images[ids[b]])
                        if lhs != rhs:
                            ok_sym = False
                            break
                    if not ok_sym:
                        break
                rep.add(f"P_f symmetric (degree {p})", ok_sym)

            basis = self._window_basis[p]
            rep.add(
                f"P_f fixes f*s (degree {p})",
                all(projection_Pf(K, f, weight, w) == w for w in basis),
            )

            # range(P_f) = W: every image lies in the span, and ranks agree
            span_ids = sorted({k for w in basis for k in w} | {
                k for img in images.values() for k in img})
            pos = {k: i for i, k in enumerate(span_ids)}
            cols_basis = [
                {pos[k]: v for k, v in w.items()} for w in basis
            ]
            cols_all = cols_basis + [
                {pos[k]: v for k, v in img.items()} for img in images.values()
            ]
            rank_basis = linalg.sparse_rank(cols_basis)
            rank_all = linalg.sparse_rank(cols_all)
            rep.add(
                f"range(P_f) = window space (degree {p})",
                rank_basis == self.dims[p] and rank_all == rank_basis,
            )
        return rep

    def verify_operators(self):
        """The exact matrix identities of the window operator suite."""
        rep = Report("window-operators")
        for p in self.degrees:
            n = self.dims[p]
            if n == 0:
                continue
            G = self.gram[p]
            lap = self.laplacian[p]
            h = self.harmonic_projector[p]
            green = self.green[p]

            if p + 1 in self.dims:
                lhs = linalg.mat_mul(linalg.transpose(self.d_f[p]), self.gram[p + 1])
                rhs = linalg.mat_mul(G, self.d_f_adjoint[p])
                rep.add(f"adjoint relation <d_f w, w'> = <w, d_f* w'> (degree {p})",
                        linalg.mat_eq(lhs, rhs))
                dd = linalg.mat_mul(self.d_f[p + 1], self.d_f[p]) if p + 2 in self.dims else None
                if dd is not None:
                    rep.add(f"d_f o d_f = 0 (degree {p})", linalg.is_zero_matrix(dd))

            glap = linalg.mat_mul(G, lap)
            rep.add(f"Laplacian self-adjoint (degree {p})",
                    linalg.mat_eq(linalg.transpose(glap), glap))

            rank_lap = linalg.rank(lap)
            rep.add(f"dim ker = dim coker (degree {p})",
                    len(self.kernel[p]) == n - rank_lap)

            # ker Lap = ker d_f  intersect  ker d_f*
            kd = []
            if p + 1 in self.dims:
                kd.append(self.d_f[p])
            if p - 1 >= 0 and self.dims.get(p - 1):
                kd.append(self.d_f_adjoint[p - 1])
            stacked = [row for m in kd for row in m] or linalg.zeros(1, n)
            joint = linalg.nullspace(stacked)
            ker = self.kernel[p]
            both = linalg.from_columns(ker + joint, n) if (ker or joint) else None
            same = (len(ker) == len(joint)
                    and (both is None or linalg.rank(both) == len(ker)))
            rep.add(f"ker Lap = ker d_f and ker d_f* (degree {p})", same)

            # ker Lap = (Im Lap)^perp inside W
            if ker:
                KtG = linalg.mat_mul(linalg.transpose(linalg.from_columns(ker, n)), G)
                rep.add(f"ker Lap orthogonal to Im Lap (degree {p})",
                        linalg.is_zero_matrix(linalg.mat_mul(KtG, lap)))
            rep.add(f"dim ker + rank = dim W (degree {p})", len(ker) + rank_lap == n)

            ident = linalg.identity(n)
            rep.add(f"Green: G Lap = Lap G = 1 - H (degree {p})",
                    linalg.mat_eq(linalg.mat_mul(green, lap), linalg.mat_sub(ident, h))
                    and linalg.mat_eq(linalg.mat_mul(lap, green), linalg.mat_sub(ident, h)))
            ggreen = linalg.mat_mul(G, green)
            rep.add(f"Green self-adjoint (degree {p})",
                    linalg.mat_eq(linalg.transpose(ggreen), ggreen))
            rep.add(f"Green vanishes on harmonics (degree {p})",
                    linalg.is_zero_matrix(linalg.mat_mul(green, h)))

        for p in self.degrees[:-1]:
            if not (self.dims[p] and self.dims.get(p + 1)):
                continue
            comm = linalg.mat_sub(
                linalg.mat_mul(self.green[p + 1], self.d_f[p]),
                linalg.mat_mul(self.d_f[p], self.green[p]),
            )
            rep.add(f"[Green, d_f] = 0 (degrees {p}->{p + 1})", linalg.is_zero_matrix(comm))
            comm2 = linalg.mat_sub(
                linalg.mat_mul(self.green[p], self.d_f_adjoint[p]),
                linalg.mat_mul(self.d_f_adjoint[p], self.green[p + 1]),
            )
            rep.add(f"[Green, d_f*] = 0 (degrees {p + 1}->{p})", linalg.is_zero_matrix(comm2))

        window = _group_window(self.K, self.f)
        rep.add("weight equivariance A(g.x)^2 = chi(g)^-1 A(x)^2",
                self.weight.verify_equivariance(window))
        return rep

    def verify_harmonic_isomorphism(self, invariant_betti=None):
        """Prop-style rank statements: H is well-defined, injective and onto
        from invariant cohomology to harmonics, degree by degree."""
        rep = Report("harmonic-isomorphism")
        betti = invariant_betti if invariant_betti is not None else self.K.invariant_betti()
        for p in self.degrees:
            n = self.dims[p]
            h = self.harmonic_projector[p]
            if p >= 1 and self.dims.get(p - 1):
                hd = linalg.mat_mul(h, self.d_f[p - 1])
                rep.add(f"H kills exact cochains (degree {p})", linalg.is_zero_matrix(hd))
            classes = self._invariant_classes_coords(p)
            images = [linalg.mat_vec(h, c) for c in classes]
            rank_img = linalg.rank(linalg.from_columns(images, n)) if images else 0
            rep.add(
                f"H maps cohomology onto harmonics (degree {p})",
                rank_img == len(self.kernel[p]) == betti[p] == len(classes),
                witness=None if rank_img == len(self.kernel[p]) == betti[p] == len(classes)
                else f"rank {rank_img}, harmonic {len(self.kernel[p])}, betti {betti[p]}",
            )
        return rep

    def _invariant_classes_coords(self, p):
        """Invariant cohomology class representatives in W coordinates."""
        K = self.K
        if K.is_periodic:
            return K.invariant_cohomology_classes(p)
        amb_classes = K.invariant_cohomology_classes(p)
        orbit_reps = [next(iter(o)) for o in K.orbits(p)[0]]
        # invariant cochains have coefficient 1 at their orbit representative
        return [[amb[r] for r in orbit_reps] for amb in amb_classes]


def build_window_package(K, f=None, strict=False):
    cutoff = f if f is not None else full_cutoff(K)
    weight = weight_A(K, cutoff, strict=strict)
    return WindowPackage(K, cutoff, weight=weight)
