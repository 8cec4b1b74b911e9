"""Twisted differentials and the Euler characteristic of the action.

For a positive invariant scaling A on simplices, the conjugated coboundary

    d_{A,k} = M_A^{-k} o d o M_A^{k}        (M_A = multiplication by A)

squares to zero for every integer k and acts on invariant cochains.  Since
discrete groups are unimodular, only invariant A is admitted; conjugation by
M_A^k is then a chain isomorphism, so the twisted Betti numbers and the
Euler characteristic are independent of k.  The sweep below asserts that
k-independence as exact dimension equalities, and the k = 1 duality check
pairs twisted classes (transported back through M_A) under the cup-product
pairing against the fundamental cycle.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .hodge import WindowPackage, full_cutoff
from .report import Report

ZERO = Fraction(0)
ONE = Fraction(1)


class TwistValidationError(ValueError):
    pass


class TwistFamily:
    """Per-degree diagonal scaling by an invariant positive weight."""

    def __init__(self, K, values):
        """``values``: {(degree, simplex index): positive rational} covering
        every simplex (finite complexes), or {(degree, cell index): ...} for
        periodic ones.  Non-invariant scalings are rejected: a discrete group
        is unimodular, so the twisting weight is genuinely invariant.
        """
        self.K = K
        vals = {k: Fraction(v) for k, v in values.items()}
        if any(v <= 0 for v in vals.values()):
            raise TwistValidationError("twist weight must be strictly positive")
        if K.is_periodic:
            for p in K.degrees():
                for i in range(K.inv_dim(p)):
                    if (p, i) not in vals:
                        raise TwistValidationError(f"missing twist value for cell ({p},{i})")
            self.orbit_values = {
                p: [vals[(p, i)] for i in range(K.inv_dim(p))] for p in K.degrees()
            }
        else:
            for p in K.degrees():
                for i in range(K.dim_cochains(p)):
                    if (p, i) not in vals:
                        raise TwistValidationError(
                            f"missing twist value for simplex ({p},{i})"
                        )
            for g in K.group.elements():
                for p in K.degrees():
                    for i in range(K.dim_cochains(p)):
                        (q, j), _sign = K.act_on_id(g, (p, i))
                        if vals[(q, j)] != vals[(p, i)]:
                            raise TwistValidationError(
                                "twist weight is not invariant; discrete groups are"
                                " unimodular, so only invariant weights arise"
                            )
            orbit_values = {}
            for p in K.degrees():
                reps = [next(iter(o)) for o in K.orbits(p)[0]]
                orbit_values[p] = [vals[(p, r)] for r in reps]
            self.orbit_values = orbit_values
        self.values = vals

    def diagonal(self, p, k):
        """M_A^k on invariant coordinates in degree p."""
        vs = self.orbit_values.get(p, [])
        n = len(vs)
        m = linalg.zeros(n, n)
        for i, v in enumerate(vs):
            m[i][i] = v**k
        return m


def uniform_twist(K, value=ONE):
    vals = {}
    if K.is_periodic:
        for p in K.degrees():
            for i in range(K.inv_dim(p)):
                vals[(p, i)] = value
    else:
        for p in K.degrees():
            for i in range(K.dim_cochains(p)):
                vals[(p, i)] = value
    return TwistFamily(K, vals)


def twist_from_orbit_values(K, per_degree_values):
    """Build a TwistFamily from one positive rational per orbit/cell."""
    vals = {}
    for p in K.degrees():
        given = per_degree_values[p]
        if K.is_periodic:
            for i, v in enumerate(given):
                vals[(p, i)] = v
        else:
            orbits = K.orbits(p)[0] + [
                {m: ONE for m in killed} for killed in K.orbits(p)[1]
            ]
            if len(given) != len(orbits):
                raise TwistValidationError(
                    f"degree {p}: need {len(orbits)} orbit values, got {len(given)}"
                )
            for orbit, v in zip(orbits, given):
                for i in orbit:
                    vals[(p, i)] = v
    return TwistFamily(K, vals)


def twisted_differential(K, twist, k):
    """d_{A,k} = M_A^{-k} d M_A^{k} per degree, on invariant coordinates.

    Integer exponents only: rational powers of rational weights would leave
    exact arithmetic.  Squares to zero by construction; verified anyway.
    """
    if k != int(k):
        raise TwistValidationError("twist exponents must be integers")
    k = int(k)
    out = {}
    for p in range(K.dimension + 1):
        d = K.d_inv(p)
        if not d or not d[0]:  # empty codomain or domain: the zero map
            out[p] = d
            continue
        left = twist.diagonal(p + 1, -k)
        right = twist.diagonal(p, k)
        out[p] = linalg.mat_mul(left, linalg.mat_mul(d, right))
    for p in range(K.dimension):
        if p + 2 <= K.dimension:
            sq = linalg.mat_mul(out[p + 1], out[p])
            if not linalg.is_zero_matrix(sq):
                raise ArithmeticError(f"twisted differential does not square to zero (k={k})")
    return out


def twisted_betti(K, twist, k):
    """Exact cohomology dimensions of (invariant cochains, d_{A,k})."""
    d = twisted_differential(K, twist, k)
    dims = []
    for p in range(K.dimension + 1):
        r_p = linalg.rank(d[p]) if p < K.dimension else 0
        r_prev = linalg.rank(d[p - 1]) if p >= 1 else 0
        n = K.inv_dim(p)
        dims.append(n - r_p - r_prev)
    return dims


def euler_characteristic_twisted(K, twist, k):
    return sum((-1) ** p * b for p, b in enumerate(twisted_betti(K, twist, k)))


def euler_index_sweep(K, twist, k_list, f=None, check_harmonic=True):
    """Assert that twisted Betti numbers and the Euler characteristic agree
    across the exponent sweep and with the untwisted invariant complex."""
    rep = Report("euler-index-sweep")
    base_betti = K.invariant_betti()
    chi = K.euler_characteristic()
    chi_cochain = sum((-1) ** p * K.inv_dim(p) for p in range(K.dimension + 1))
    rep.add_table("invariant_betti", base_betti)
    rep.add_table("k_list", list(k_list))
    rep.add("Euler characteristic matches Euler-Poincare count", chi == chi_cochain,
            witness=None if chi == chi_cochain else f"{chi} vs {chi_cochain}")

    for k in k_list:
        betti_k = twisted_betti(K, twist, k)
        rep.add_table(f"twisted_betti_k={k}", betti_k)
        rep.add(f"twisted Betti at k={k} equals untwisted", betti_k == base_betti,
                witness=None if betti_k == base_betti else str(betti_k))
        chi_k = sum((-1) ** p * b for p, b in enumerate(betti_k))
        rep.add(f"chi at k={k} equals chi of the action", chi_k == chi,
                witness=None if chi_k == chi else f"{chi_k} vs {chi}")
        if check_harmonic:
            cutoff = f if f is not None else (None if K.is_periodic else full_cutoff(K))
            if cutoff is not None:
                pkg = WindowPackage(K, cutoff,
                                    differentials=twisted_differential(K, twist, k))
                dims = pkg.harmonic_dims()
                rep.add(
                    f"twisted harmonic dims at k={k} equal twisted Betti",
                    dims == betti_k,
                    witness=None if dims == betti_k else str(dims),
                )
    rep.add_table("chi", [chi])
    return rep


def duality_check_k1(K, twist, f=None):
    """Poincare duality for the k = 1 twist on a closed oriented fixture.

    Declines (rather than fails) for orientation-reversing actions: the
    duality hypotheses genuinely exclude them, as the reflection and
    antipodal fixtures show.
    """
    rep = Report("duality-k1")
    n = K.dimension
    eps_exists = True
    try:
        K.fundamental_cycle()
    except Exception as e:  # noqa: BLE001 - report, do not crash the sweep
        rep.decline("duality hypotheses", f"no fundamental cycle: {e}")
        eps_exists = False
    if eps_exists and not K.is_orientation_preserving():
        rep.decline(
            "duality hypotheses",
            "action reverses orientation; twisted duality is outside the"
            " theorem's hypotheses on this fixture",
        )
        return rep
    if not eps_exists:
        return rep

    betti1 = twisted_betti(K, twist, 1)
    rep.add_table("twisted_betti_k=1", betti1)
    for p in range(n + 1):
        rep.add(f"b_{p} = b_{n - p} at k=1", betti1[p] == betti1[n - p],
                witness=None if betti1[p] == betti1[n - p]
                else f"{betti1[p]} vs {betti1[n - p]}")

    d1 = twisted_differential(K, twist, 1)
    for p in range(n + 1):
        a_classes = _twisted_classes_transported(K, twist, d1, p)
        b_classes = _twisted_classes_transported(K, twist, d1, n - p)
        matrix = _pair_invariant_representatives(K, p, a_classes, n - p, b_classes)
        rank = linalg.rank(matrix)
        full = rank == betti1[p] == len(a_classes)
        rep.add(f"pairing H^{p} x H^{n - p} full rank (k=1)", full,
                witness=None if full else f"rank {rank}, expected {betti1[p]}")

    if n % 2 == 1:
        chi = euler_characteristic_twisted(K, twist, 1)
        rep.add("odd dimension: chi = 0", chi == 0,
                witness=None if chi == 0 else str(chi))
    return rep


def _twisted_classes_transported(K, twist, d1, p):
    """Class representatives of H^{p,1}, pushed through M_A into d-cocycles
    (invariant coordinates)."""
    n = K.inv_dim(p)
    if p < K.dimension:
        kernel = linalg.nullspace(d1[p]) if d1[p] else linalg.columns(linalg.identity(n))
    else:
        kernel = linalg.columns(linalg.identity(n))
    image_cols = linalg.columns(d1[p - 1]) if p >= 1 else []
    chosen = []
    stack = list(image_cols)
    base_rank = linalg.rank(linalg.from_columns(stack, n)) if stack else 0
    for v in kernel:
        trial = stack + [v]
        r = linalg.rank(linalg.from_columns(trial, n))
        if r > base_rank:
            stack, base_rank = trial, r
            chosen.append(v)
    m_a = twist.diagonal(p, 1)
    return [linalg.mat_vec(m_a, v) for v in chosen]


def _pair_invariant_representatives(K, p, a_classes, q, b_classes):
    """Cup pairing matrix of given invariant cocycles against [M]."""
    eps = K.fundamental_cycle()
    matrix = linalg.zeros(len(a_classes), len(b_classes))
    if K.is_periodic:
        for i, a in enumerate(a_classes):
            for j, b in enumerate(b_classes):
                acc = ZERO
                for e_idx, (_name, slots) in enumerate(K.cells[1]):
                    front_orbit = slots[0][0]
                    zero_c = a if p == 0 else b
                    one_c = b if p == 0 else a
                    acc += eps[e_idx] * zero_c[front_orbit] * one_c[e_idx]
                matrix[i][j] = acc
        return matrix
    inv_p = K.invariant_vectors(p)
    inv_q = K.invariant_vectors(q)

    def ambient(coords, inv):
        out = [ZERO] * len(inv[0]) if inv else []
        for c, vec in zip(coords, inv):
            if c:
                for idx, w in enumerate(vec):
                    out[idx] += c * w
        return out

    for i, a in enumerate(a_classes):
        amb_a = ambient(a, inv_p)
        for j, b in enumerate(b_classes):
            amb_b = ambient(b, inv_q)
            cup = K.cup_product(p, amb_a, q, amb_b)
            matrix[i][j] = sum(e * c for e, c in zip(eps, cup))
    return matrix
