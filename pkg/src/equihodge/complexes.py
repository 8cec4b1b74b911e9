"""Oriented simplicial complexes with simplicial group actions.

Two flavours:

* :class:`FiniteEquivariantComplex` -- a finite oriented simplicial complex
  with an action of a finite group given by vertex maps.  Simplices are
  stored as ascending vertex tuples; the induced action on oriented
  simplices carries the sorting sign.
* :class:`PeriodicEquivariantComplex` -- a Z^d-periodic complex described by
  a fundamental domain: cells carry slots (vertex orbit, offset), the group
  acts by translation, and invariant cochains are exactly the cochains of
  the finite quotient.

Both expose the invariant subcomplex, its exact Betti numbers, the Euler
characteristic with its Euler-Poincare cross-check, and (on closed oriented
manifold fixtures) the cup-product pairing of invariant cohomology against
the fundamental cycle.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from . import linalg
from .algebras import GradedAlgebra, GroupAction
from .report import Report

ZERO = Fraction(0)
ONE = Fraction(1)


class ComplexValidationError(ValueError):
    pass


MINUS_POW = (ONE, Fraction(-1))


def _sort_with_sign(tup):
    lst = list(tup)
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


def vertex_maps_from_generators(group, generator_maps, n_vertices):
    """Extend vertex maps given on a generating set to the whole group.

    ``generator_maps`` is {element: list v -> v'}.  Elements are composed
    along the Cayley table; inconsistent or incomplete generating data is an
    error.
    """
    maps = {group.identity: list(range(n_vertices))}
    for g, m in generator_maps.items():
        if sorted(m) != list(range(n_vertices)):
            raise ComplexValidationError(f"map of {group.name(g)} is not a vertex bijection")
        maps[g] = list(m)
    frontier = list(maps)
    while frontier:
        new_frontier = []
        for g in frontier:
            for h, hm in list(generator_maps.items()):
                gh = group.mul(h, g)  # apply g first, then h
                composed = [hm[maps[g][v]] for v in range(n_vertices)]
                if gh in maps:
                    if maps[gh] != composed:
                        raise ComplexValidationError(
                            f"generator maps are inconsistent at {group.name(gh)}"
                        )
                else:
                    maps[gh] = composed
                    new_frontier.append(gh)
        frontier = new_frontier
    missing = [g for g in group.elements() if g not in maps]
    if missing:
        raise ComplexValidationError(
            f"generators do not generate: no map for {group.name(missing[0])}"
        )
    return maps


class FiniteEquivariantComplex:
    """Finite oriented simplicial complex with a finite-group action.

    ``simplices``: iterable of vertex-index tuples of dimension >= 1 (the
    vertex set itself is dimension 0).  ``vertex_maps``: {group element:
    list} sending vertex indices to vertex indices.
    """

    is_periodic = False

    def __init__(self, n_vertices, simplices, group, vertex_maps,
                 inner_products=None, vertex_names=None):
        self.group = group
        self.n_vertices = n_vertices
        self.vertex_names = vertex_names or [str(v) for v in range(n_vertices)]

        by_dim = {0: [(v,) for v in range(n_vertices)]}
        for s in simplices:
            key, sign = _sort_with_sign(tuple(s))
            if key is None:
                raise ComplexValidationError(f"repeated vertex in simplex {s}")
            by_dim.setdefault(len(key) - 1, []).append(key)
        for p in by_dim:
            seen = set()
            for s in by_dim[p]:
                if s in seen:
                    raise ComplexValidationError(f"duplicate simplex {s}")
                seen.add(s)
            by_dim[p] = sorted(by_dim[p])
        self.simplices = by_dim
        self.index = {p: {s: i for i, s in enumerate(ss)} for p, ss in by_dim.items()}
        self.dimension = max(by_dim)

        self._check_face_closure()
        self._coboundaries = self._build_coboundaries()

        if set(vertex_maps) != set(group.elements()):
            raise ComplexValidationError("need a vertex map for every group element")
        self.vertex_maps = vertex_maps
        self._action = self._build_action()
        self._check_action()

        self.inner_products = self._build_inner_products(inner_products)
        self._orbit_cache = {}

    # -- construction checks ----------------------------------------------

    def _check_face_closure(self):
        for p in range(1, self.dimension + 1):
            for s in self.simplices.get(p, []):
                for k in range(p + 1):
                    f = s[:k] + s[k + 1:]
                    if f not in self.index.get(p - 1, {}):
                        raise ComplexValidationError(
                            f"face {f} of {s} is missing (face closure)"
                        )

    def _build_coboundaries(self):
        """colmat per degree p: column of sigma in C^p lists its cofaces."""
        cob = {}
        for p in range(self.dimension):
            cols = [dict() for _ in self.simplices.get(p, [])]
            for tau_idx, tau in enumerate(self.simplices.get(p + 1, [])):
                for k in range(p + 2):
                    f = tau[:k] + tau[k + 1:]
                    cols[self.index[p][f]][tau_idx] = MINUS_POW[k % 2]
            cob[p] = cols
        return cob

    def _build_action(self):
        mats = {}
        for g in self.group.elements():
            vm = self.vertex_maps[g]
            per_degree = {}
            for p, ss in self.simplices.items():
                cols = []
                for s in ss:
                    img, sign = _sort_with_sign(tuple(vm[v] for v in s))
                    if img is None or img not in self.index[p]:
                        raise ComplexValidationError(
                            f"{self.group.name(g)} does not act simplicially on {s}"
                        )
                    cols.append({self.index[p][img]: Fraction(sign)})
                per_degree[p] = cols
            mats[g] = per_degree
        return mats

    def _check_action(self):
        group = self.group
        for g in group.elements():
            for h in group.elements():
                gh = group.mul(g, h)
                for p in self.simplices:
                    for i in range(len(self.simplices[p])):
                        via = {}
                        for j, c in self._action[h][p][i].items():
                            for k, c2 in self._action[g][p][j].items():
                                via[k] = via.get(k, ZERO) + c * c2
                        via = {k: v for k, v in via.items() if v}
                        if via != self._action[gh][p][i]:
                            raise ComplexValidationError(
                                "action is not a homomorphism on simplices"
                            )
        # pullback commutes with the coboundary
        for g in group.elements():
            for p in range(self.dimension):
                for i in range(len(self.simplices[p])):
                    lhs = {}
                    for j, c in self._action[g][p][i].items():
                        for k, c2 in self._coboundaries[p][j].items():
                            lhs[k] = lhs.get(k, ZERO) + c * c2
                    rhs = {}
                    for j, c in self._coboundaries[p][i].items():
                        for k, c2 in self._action[g][p + 1][j].items():
                            rhs[k] = rhs.get(k, ZERO) + c * c2
                    if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
                        raise ComplexValidationError("action does not commute with coboundary")

    def _build_inner_products(self, supplied):
        out = {}
        n_group = len(self.group)
        for p, ss in self.simplices.items():
            n = len(ss)
            if supplied and p in supplied:
                m = supplied[p]
                if not linalg.is_symmetric(m) or not linalg.is_positive_definite(m):
                    raise ComplexValidationError(f"inner product in degree {p} is not SPD")
                for g in self.group.elements():
                    a = self.action_matrix_dense(g, p)
                    if not linalg.mat_eq(linalg.mat_mul(linalg.transpose(a), linalg.mat_mul(m, a)), m):
                        raise ComplexValidationError(
                            f"inner product in degree {p} is not invariant"
                        )
                out[p] = m
            else:
                # average of the identity inner product over the group; for
                # signed permutation actions this lands back on the identity
                acc = linalg.zeros(n, n)
                for g in self.group.elements():
                    a = self.action_matrix_dense(g, p)
                    acc = linalg.mat_add(acc, linalg.mat_mul(linalg.transpose(a), a))
                out[p] = linalg.mat_scale(Fraction(1, n_group), acc)
        return out

    # -- basic accessors ----------------------------------------------------

    def degrees(self):
        return sorted(self.simplices)

    def dim_cochains(self, p):
        return len(self.simplices.get(p, []))

    def coboundary_dense(self, p):
        cols = self._coboundaries.get(p, [])
        m = linalg.zeros(self.dim_cochains(p + 1), self.dim_cochains(p))
        for i, col in enumerate(cols):
            for j, c in col.items():
                m[j][i] = c
        return m

    def action_matrix_dense(self, g, p):
        n = self.dim_cochains(p)
        m = linalg.zeros(n, n)
        for i, col in enumerate(self._action[g][p]):
            for j, c in col.items():
                m[j][i] = c
        return m

    def act_on_id(self, g, amb_id):
        """Signed action on an ambient simplex id (p, index)."""
        p, i = amb_id
        (j, c), = self._action[g][p][i].items()
        return (p, j), c

    def ambient_ids(self, p):
        return [(p, i) for i in range(self.dim_cochains(p))]

    def ambient_inner(self, p, s1, s2):
        m = self.inner_products[p]
        acc = ZERO
        for (pp, i), v in s1.items():
            if pp != p or not v:
                continue
            row = m[i]
            for (qq, j), w in s2.items():
                if qq == p and w:
                    acc += v * row[j] * w
        return acc

    # -- invariants -----------------------------------------------------------

    def orbits(self, p):
        """Signed orbit decomposition of p-simplices.

        Returns (orbit list, killed list): each orbit is a dict
        {index: coefficient} normalized to +1 at its representative; killed
        orbits are those where some element flips a simplex onto itself with
        sign -1, so they carry no invariant cochain.
        """
        if p in self._orbit_cache:
            return self._orbit_cache[p]
        n = self.dim_cochains(p)
        seen = [False] * n
        orbits, killed = [], []
        for start in range(n):
            if seen[start]:
                continue
            coeffs = {start: ONE}
            alive = True
            frontier = [start]
            while frontier:
                new_frontier = []
                for i in frontier:
                    for g in self.group.elements():
                        (j, c), = self._action[g][p][i].items()
                        val = coeffs[i] * c
                        if j in coeffs:
                            if coeffs[j] != val:
                                alive = False
                        else:
                            coeffs[j] = val
                            new_frontier.append(j)
                frontier = new_frontier
            for i in coeffs:
                seen[i] = True
            if alive:
                orbits.append(coeffs)
            else:
                killed.append(sorted(coeffs))
        self._orbit_cache[p] = (orbits, killed)
        return self._orbit_cache[p]

    def inv_dim(self, p):
        return len(self.orbits(p)[0]) if p in self.simplices else 0

    def invariant_vectors(self, p):
        """Ambient coefficient vectors (dense lists) of the invariant basis."""
        out = []
        for orbit in self.orbits(p)[0]:
            v = [ZERO] * self.dim_cochains(p)
            for i, c in orbit.items():
                v[i] = c
            out.append(v)
        return out

    def d_inv(self, p):
        """Restricted coboundary on invariant coordinates (dense)."""
        dom = self.orbits(p)[0] if p in self.simplices else []
        cod = self.orbits(p + 1)[0] if (p + 1) in self.simplices else []
        reps = [next(iter(o)) for o in cod]
        m = linalg.zeros(len(cod), len(dom))
        cols = self._coboundaries.get(p)
        if cols is None:
            return m
        for jj, orbit in enumerate(dom):
            img = {}
            for i, c in orbit.items():
                for k, c2 in cols[i].items():
                    img[k] = img.get(k, ZERO) + c * c2
            for kk, r in enumerate(reps):
                m[kk][jj] = img.get(r, ZERO)
        return m

    def invariant_betti(self):
        dims = []
        n = self.dimension
        for p in range(n + 1):
            d_p = self.d_inv(p)
            d_prev = self.d_inv(p - 1) if p >= 1 else linalg.zeros(self.inv_dim(0), 0)
            dims.append(self.inv_dim(p) - linalg.rank(d_p) - (linalg.rank(d_prev) if p >= 1 else 0))
        return dims

    def euler_characteristic(self):
        betti = self.invariant_betti()
        chi = sum((-1) ** p * b for p, b in enumerate(betti))
        chi_cochain = sum((-1) ** p * self.inv_dim(p) for p in range(self.dimension + 1))
        if chi != chi_cochain:
            raise ArithmeticError(
                f"Euler-Poincare cross-check failed: {chi} vs {chi_cochain}"
            )
        return chi

    def averaging_projectors(self):
        """(1/|G|) sum_g of the cochain action, dense per degree."""
        n_group = len(self.group)
        out = {}
        for p in self.simplices:
            n = self.dim_cochains(p)
            acc = linalg.zeros(n, n)
            for g in self.group.elements():
                acc = linalg.mat_add(acc, self.action_matrix_dense(g, p))
            out[p] = linalg.mat_scale(Fraction(1, n_group), acc)
        return out

    def verify_invariant_subcomplex(self):
        """Check that projector image and fixed-vector orbit basis agree."""
        rep = Report("invariant-subcomplex")
        projs = self.averaging_projectors()
        for p in self.simplices:
            pr = projs[p]
            rep.add(f"projector idempotent (degree {p})",
                    linalg.mat_eq(linalg.mat_mul(pr, pr), pr))
            inv = self.invariant_vectors(p)
            fixed_ok = all(linalg.mat_vec(pr, v) == v for v in inv)
            rep.add(f"orbit basis is projector-fixed (degree {p})", fixed_ok)
            rep.add(f"projector rank = orbit count (degree {p})",
                    linalg.rank(pr) == len(inv))
            for g in self.group.elements():
                a = self.action_matrix_dense(g, p)
                if not linalg.mat_eq(linalg.mat_mul(a, pr), pr):
                    rep.add(f"rho(g) P = P (degree {p})", False,
                            witness=self.group.name(g))
                    break
            else:
                rep.add(f"rho(g) P = P (degree {p})", True)
        for p in range(self.dimension):
            pr_next = projs[p + 1]
            pr = projs[p]
            d = self.coboundary_dense(p)
            rep.add(f"projector commutes with d (degree {p})",
                    linalg.mat_eq(linalg.mat_mul(d, pr), linalg.mat_mul(pr_next, d)))
        return rep

    # -- orientation and pairing ----------------------------------------------

    def _check_closed_pseudomanifold(self):
        n = self.dimension
        counts = [0] * self.dim_cochains(n - 1)
        for tau in self.simplices[n]:
            for k in range(n + 1):
                f = tau[:k] + tau[k + 1:]
                counts[self.index[n - 1][f]] += 1
        return all(c == 2 for c in counts)

    def fundamental_cycle(self):
        """Coherent orientation of the top simplices, entries +-1.

        Raises if the complex is not a connected closed orientable
        pseudomanifold.
        """
        n = self.dimension
        if n == 0:
            raise ComplexValidationError("no top-dimensional pairing on a 0-complex")
        if not self._check_closed_pseudomanifold():
            raise ComplexValidationError("not a closed pseudomanifold")
        d_top = self.coboundary_dense(n - 1)
        kernel = linalg.nullspace(linalg.transpose(d_top))
        if len(kernel) != 1:
            raise ComplexValidationError("no unique fundamental class (disconnected or unorientable)")
        v = kernel[0]
        scale = next((abs(x) for x in v if x), None)
        if scale is None:
            raise ComplexValidationError("degenerate fundamental class")
        v = [x / scale for x in v]
        if any(abs(x) != 1 for x in v):
            raise ComplexValidationError("complex is not orientable")
        return v

    def is_orientation_preserving(self):
        eps = self.fundamental_cycle()
        n = self.dimension
        for g in self.group.elements():
            img = linalg.mat_vec(self.action_matrix_dense(g, n), eps)
            if img != eps:
                return False
        return True

    def invariant_cohomology_classes(self, p):
        """Ambient invariant cocycles representing a basis of invariant H^p."""
        inv = self.invariant_vectors(p)
        d_p = self.d_inv(p)
        if d_p:
            kernel = linalg.nullspace(d_p)
        else:  # no higher simplices: every invariant cochain is a cocycle
            kernel = linalg.columns(linalg.identity(self.inv_dim(p)))
        if p >= 1:
            d_prev = self.d_inv(p - 1)
            image_cols = linalg.columns(d_prev)
        else:
            image_cols = []
        chosen = []
        stack = [c for c in image_cols]
        base_rank = linalg.rank(linalg.from_columns(stack, self.inv_dim(p))) if stack else 0
        for k in kernel:
            trial = stack + [k]
            r = linalg.rank(linalg.from_columns(trial, self.inv_dim(p)))
            if r > base_rank:
                stack = trial
                base_rank = r
                chosen.append(k)
        out = []
        for coeffs in chosen:
            amb = [ZERO] * self.dim_cochains(p)
            for j, c in enumerate(coeffs):
                if c:
                    for i, w in enumerate(inv[j]):
                        amb[i] += c * w
            out.append(amb)
        return out

    def cup_product(self, p, a, q, b):
        """Front-face/back-face cup product of dense cochains a in C^p, b in C^q."""
        out = [ZERO] * self.dim_cochains(p + q)
        for idx, s in enumerate(self.simplices[p + q]):
            front = s[: p + 1]
            back = s[p:]
            out[idx] = a[self.index[p][front]] * b[self.index[q][back]]
        return out

    def poincare_pairing(self, p):
        """Cup-product pairing of invariant H^p against H^(n-p) on [M].

        Returns (matrix, rank, orientation_preserving).  Nondegeneracy is a
        theorem only for orientation-preserving actions; callers must treat
        the orientation-reversing case as outside the duality hypotheses.
        """
        n = self.dimension
        if not 0 <= p <= n:
            raise ComplexValidationError(f"degree {p} out of range")
        eps = self.fundamental_cycle()
        a_classes = self.invariant_cohomology_classes(p)
        b_classes = self.invariant_cohomology_classes(n - p)
        matrix = linalg.zeros(len(a_classes), len(b_classes))
        for i, a in enumerate(a_classes):
            for j, b in enumerate(b_classes):
                cup = self.cup_product(p, a, n - p, b)
                matrix[i][j] = sum(e * c for e, c in zip(eps, cup))
        return matrix, linalg.rank(matrix), self.is_orientation_preserving()

    # -- bridges to the other modules ------------------------------------------

    def cochain_algebra(self):
        """The cochain complex as a graded coefficient algebra (no product)."""
        mats = {g: self._action[g] for g in self.group.elements()}
        action = GroupAction(self.group, mats=mats)
        names = {
            p: ["|".join(self.vertex_names[v] for v in s) for s in ss]
            for p, ss in self.simplices.items()
        }
        return GradedAlgebra(
            {p: len(ss) for p, ss in self.simplices.items()},
            action,
            differential=self._coboundaries,
            basis_names=names,
        )


class PeriodicEquivariantComplex:
    """Z^d-periodic complex given by a fundamental domain with gluing.

    ``cells``: {dimension p >= 1: [(name, slots)]} where slots is a tuple of
    (vertex orbit index, offset tuple) in strictly ascending (orbit, offset)
    order; vertex orbits are the dimension-0 cells at canonical offset 0.
    The group acts by translating offsets, so the action is free and
    orientation-preserving by construction, and invariant cochains are the
    cochains of the finite quotient.
    """

    is_periodic = True

    def __init__(self, group, vertex_orbits, cells):
        if group.is_finite:
            raise ComplexValidationError("periodic complexes take a free abelian group")
        self.group = group
        self.rank = group.rank
        self.vertex_orbits = list(vertex_orbits)
        self.cells = {0: [(nm, ((i, group.identity),)) for i, nm in enumerate(self.vertex_orbits)]}
        for p, items in cells.items():
            lst = []
            for name, slots in items:
                slots = tuple((int(o), tuple(off)) for o, off in slots)
                if len(slots) != p + 1:
                    raise ComplexValidationError(f"cell {name} has wrong slot count")
                if list(slots) != sorted(slots):
                    raise ComplexValidationError(
                        f"cell {name}: slots must ascend by (orbit, offset)"
                    )
                if len(set(slots)) != len(slots):
                    raise ComplexValidationError(f"cell {name} has a repeated slot")
                lst.append((name, slots))
            self.cells[p] = lst
        self.dimension = max(self.cells)
        self._canon_index = {
            p: {self._canon(slots)[0]: i for i, (_, slots) in enumerate(items)}
            for p, items in self.cells.items()
        }
        # faces[p][i] = list of (face cell index, offset, sign)
        self.faces = self._build_faces()
        self.cofaces = self._build_cofaces()

    def _canon(self, slots):
        """Translate slots so the first one sits at the origin."""
        base = slots[0][1]
        shifted = tuple((o, tuple(a - b for a, b in zip(off, base))) for o, off in slots)
        return shifted, base

    def _build_faces(self):
        faces = {}
        for p in range(1, self.dimension + 1):
            out = []
            for name, slots in self.cells.get(p, []):
                entries = []
                for k in range(p + 1):
                    sub = slots[:k] + slots[k + 1:]
                    canon, base = self._canon(sub)
                    idx = self._canon_index.get(p - 1, {}).get(canon)
                    if idx is None:
                        raise ComplexValidationError(
                            f"face {canon} of cell {name} is missing (face closure)"
                        )
                    entries.append((idx, base, MINUS_POW[k % 2]))
                out.append(entries)
            faces[p] = out
        return faces

    def _build_cofaces(self):
        cof = {p: [[] for _ in self.cells.get(p, [])] for p in self.cells}
        for p, rows in self.faces.items():
            for i, entries in enumerate(rows):
                for j, off, sign in entries:
                    cof[p - 1][j].append((i, off, sign))
        return cof

    # -- quotient (= invariant) complex ----------------------------------------

    def degrees(self):
        return sorted(self.cells)

    def inv_dim(self, p):
        return len(self.cells.get(p, []))

    def d_inv(self, p):
        """Quotient coboundary (offsets summed out)."""
        return self._quotient_cob(p)

    def _quotient_cob(self, p):
        nd, ns = self.inv_dim(p + 1), self.inv_dim(p)
        m = linalg.zeros(nd, ns)
        for i, entries in enumerate(self.faces.get(p + 1, [])):
            for j, _off, sign in entries:
                m[i][j] += sign
        return m

    def invariant_betti(self):
        dims = []
        for p in range(self.dimension + 1):
            d_p = self._quotient_cob(p) if p < self.dimension else linalg.zeros(0, self.inv_dim(p))
            r_p = linalg.rank(d_p)
            r_prev = linalg.rank(self._quotient_cob(p - 1)) if p >= 1 else 0
            dims.append(self.inv_dim(p) - r_p - r_prev)
        return dims

    def euler_characteristic(self):
        betti = self.invariant_betti()
        chi = sum((-1) ** p * b for p, b in enumerate(betti))
        chi_cochain = sum((-1) ** p * self.inv_dim(p) for p in range(self.dimension + 1))
        if chi != chi_cochain:
            raise ArithmeticError(
                f"Euler-Poincare cross-check failed: {chi} vs {chi_cochain}"
            )
        return chi

    # -- ambient (infinite complex) structure ----------------------------------

    def act_on_id(self, g, amb_id):
        p, i, off = amb_id
        return (p, i, tuple(a + b for a, b in zip(off, g))), ONE

    def ambient_ids_in_box(self, p, radius):
        ids = []
        for off in itertools.product(range(-radius, radius + 1), repeat=self.rank):
            for i in range(self.inv_dim(p)):
                ids.append((p, i, off))
        return ids

    def ambient_inner(self, p, s1, s2):
        acc = ZERO
        for k, v in s1.items():
            w = s2.get(k)
            if w is not None:
                acc += v * w
        return acc

    def ambient_coboundary_instance(self, amb_id):
        """Cofaces of an ambient instance, as ((p+1, i', off'), sign)."""
        p, i, off = amb_id
        out = []
        for j, t, sign in self.cofaces.get(p, [[]])[i]:
            out.append(((p + 1, j, tuple(a - b for a, b in zip(off, t))), sign))
        return out

    # -- orientation and pairing (1-dimensional quotients) ----------------------

    def fundamental_cycle(self):
        if self.dimension != 1:
            raise ComplexValidationError(
                "periodic pairing is implemented for 1-dimensional quotients"
            )
        d0 = self._quotient_cob(0)
        kernel = linalg.nullspace(linalg.transpose(d0))
        if len(kernel) != 1:
            raise ComplexValidationError("no unique fundamental class")
        v = kernel[0]
        scale = next((abs(x) for x in v if x), None)
        if scale is None or any(abs(x / scale) != 1 for x in v):
            raise ComplexValidationError("quotient is not orientable")
        return [x / scale for x in v]

    def is_orientation_preserving(self):
        return True  # translations act trivially on the quotient

    def invariant_cohomology_classes(self, p):
        d_p = self._quotient_cob(p)
        if d_p:
            kernel = linalg.nullspace(d_p)
        else:
            kernel = linalg.columns(linalg.identity(self.inv_dim(p)))
        if p >= 1:
            image_cols = linalg.columns(self._quotient_cob(p - 1))
        else:
            image_cols = []
        chosen = []
        stack = list(image_cols)
        base_rank = linalg.rank(linalg.from_columns(stack, self.inv_dim(p))) if stack else 0
        for k in kernel:
            trial = stack + [k]
            r = linalg.rank(linalg.from_columns(trial, self.inv_dim(p)))
            if r > base_rank:
                stack, base_rank = trial, r
                chosen.append(k)
        return chosen

    def poincare_pairing(self, p):
        n = self.dimension
        eps = self.fundamental_cycle()
        a_classes = self.invariant_cohomology_classes(p)
        b_classes = self.invariant_cohomology_classes(n - p)
        matrix = linalg.zeros(len(a_classes), len(b_classes))
        for i, a in enumerate(a_classes):
            for j, b in enumerate(b_classes):
                acc = ZERO
                for e_idx, (name, slots) in enumerate(self.cells[1]):
                    front_orbit = slots[0][0]
                    zero_cochain = a if p == 0 else b
                    one_cochain = b if p == 0 else a
                    acc += eps[e_idx] * zero_cochain[front_orbit] * one_cochain[e_idx]
                matrix[i][j] = acc
        return matrix, linalg.rank(matrix), True
