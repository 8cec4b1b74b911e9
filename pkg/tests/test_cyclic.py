import itertools
from fractions import Fraction

import pytest

from equihodge.groups import FiniteGroup
from equihodge.algebras import build_exterior_algebra, build_function_algebra
from equihodge.hopf import HopfAlgebroid
from equihodge.cyclic import (
    HopfCochain,
    assemble_total_complex,
    cyclic_cohomology,
    cyclic_operator,
    degeneracy,
    face,
    hochschild_b,
    hochschild_cohomology,
    identify_tensor,
    identify_tensor_sum,
    signed_cyclic_operator,
    tau_via_hopf,
    tensor_degeneracy,
    tensor_face,
    verify_hopf_cyclic_decomposition,
)

F = Fraction


@pytest.fixture(scope="module")
def z2_setup():
    g = FiniteGroup.cyclic(2)
    alg = build_function_algebra(g, {0: [0, 1], 1: [1, 0]}, point_names=["a", "b"])
    return g, alg, HopfAlgebroid(alg)


def basis_cochains(g, alg, n):
    for gs in itertools.product(g.elements(), repeat=n):
        for q, i in alg.basis():
            yield HopfCochain(alg, n, {gs: alg.basis_element(q, i)})


def test_degree_zero_faces_are_source_and_target(z2_setup):
    g, alg, hopf = z2_setup
    b = alg.basis_element(0, 0)
    c = HopfCochain(alg, 0, {(): b})
    d0 = face(0, c)
    d1 = face(1, c)
    for h in g.elements():
        assert d0.value((h,)) == hopf.target(b).value(h)
        assert d1.value((h,)) == hopf.source(b).value(h)


def test_face_index_out_of_range(z2_setup):
    g, alg, _ = z2_setup
    c = HopfCochain(alg, 1, {(0,): alg.basis_element(0, 0)})
    with pytest.raises(IndexError):
        face(3, c)
    with pytest.raises(IndexError):
        degeneracy(1, c)


def test_degeneracy_of_degree_one_is_counit(z2_setup):
    g, alg, hopf = z2_setup
    for a in hopf.basis_elements():
        c = HopfCochain(alg, 1, {(h,): a.value(h) for h in g.elements()})
        got = degeneracy(0, c)
        assert got.value(()) == hopf.counit(a)


def test_simplicial_identities(z2_setup):
    g, alg, _ = z2_setup
    for n in range(0, 3):
        for c in basis_cochains(g, alg, n):
            for i in range(n + 2):
                for j in range(i + 1, n + 3):
                    assert face(j, face(i, c)) == face(i, face(j - 1, c))
    for n in range(2, 5):
        for c in basis_cochains(g, alg, n):
            for i in range(n - 1):
                for j in range(i, n - 2):
                    assert degeneracy(j, degeneracy(i, c)) == degeneracy(i, degeneracy(j + 1, c))
    for n in range(0, 3):
        for c in basis_cochains(g, alg, n):
            for i in range(n + 2):
                fc = face(i, c)
                for j in range(n + 1):
                    got = degeneracy(j, fc)
                    if i < j:
                        assert got == face(i, degeneracy(j - 1, c))
                    elif i in (j, j + 1):
                        assert got == c
                    else:
                        assert got == face(i - 1, degeneracy(j, c))


def test_cyclicity(z2_setup):
    g, alg, _ = z2_setup
    for n in range(1, 5):
        for c in basis_cochains(g, alg, n):
            t = c
            for _ in range(n + 1):
                t = cyclic_operator(t)
            assert t == c
    # signed operator has the same order
    c = HopfCochain(alg, 3, {(0, 1, 1): alg.basis_element(0, 1)})
    t = c
    for _ in range(4):
        t = signed_cyclic_operator(t)
    assert t == c


def test_cyclic_operator_degree_one_is_antipode(z2_setup):
    g, alg, hopf = z2_setup
    for a in hopf.basis_elements():
        c = HopfCochain(alg, 1, {(h,): a.value(h) for h in g.elements()})
        t = cyclic_operator(c)
        s = hopf.antipode(a)
        assert all(t.value((h,)) == s.value(h) for h in g.elements())


def test_b_squared_zero(z2_setup):
    g, alg, _ = z2_setup
    for n in range(0, 4):
        for c in basis_cochains(g, alg, n):
            assert hochschild_b(hochschild_b(c)).is_zero()


def test_unit_cochain_fixed(z2_setup):
    g, alg, hopf = z2_setup
    one = alg.unit
    for n in (1, 2):
        c = HopfCochain(alg, n, {gs: one for gs in itertools.product(g.elements(), repeat=n)})
        assert cyclic_operator(c) == c
        for i in range(n + 2):
            fi = face(i, c)
            assert all(v == one for v in fi.table.values())


def test_identification_coherence_z2(z2_setup):
    g, alg, hopf = z2_setup
    basis_a = list(hopf.basis_elements())
    for n in range(1, 4):
        for word in itertools.product(basis_a, repeat=n):
            c = identify_tensor(hopf, list(word))
            assert tau_via_hopf(hopf, list(word)) == cyclic_operator(c)
            for i in range(n + 1):
                assert identify_tensor_sum(hopf, tensor_face(hopf, i, word)) == face(i, c)
            if n >= 2:
                for i in range(n):
                    assert identify_tensor_sum(hopf, tensor_degeneracy(hopf, i, word)) \
                        == degeneracy(i, c)


def test_identification_coherence_graded():
    g = FiniteGroup.cyclic(3)
    alg = build_exterior_algebra(g, {0: [0, 1, 2], 1: [1, 2, 0], 2: [2, 0, 1]})
    hopf = HopfAlgebroid(alg)
    basis_a = list(hopf.basis_elements())
    for n in (1, 2):
        for word in itertools.product(basis_a, repeat=n):
            c = identify_tensor(hopf, list(word))
            assert tau_via_hopf(hopf, list(word)) == cyclic_operator(c)
            for i in range(n + 1):
                assert identify_tensor_sum(hopf, tensor_face(hopf, i, word)) == face(i, c)
            if n == 2:
                for i in range(n):
                    assert identify_tensor_sum(hopf, tensor_degeneracy(hopf, i, word)) \
                        == degeneracy(i, c)


def test_identify_tensor_balance(z2_setup):
    g, alg, hopf = z2_setup
    for a in hopf.basis_elements():
        for i in range(2):
            b = alg.basis_element(0, i)
            for a2 in hopf.basis_elements():
                assert identify_tensor(hopf, [a * hopf.target(b), a2]) \
                    == identify_tensor(hopf, [a, hopf.source(b) * a2])


def test_identify_matches_tensor_over_b(z2_setup):
    g, alg, hopf = z2_setup
    pairs = [(x, y) for x in g.elements() for y in g.elements()]
    for a1 in hopf.basis_elements():
        for a2 in hopf.basis_elements():
            c = identify_tensor(hopf, [a1, a2])
            ts = hopf.tensor_over_B(a1, a2)
            assert all(c.value(p) == ts.value(*p) for p in pairs)


def test_total_complex_z2(z2_setup):
    g, alg, _ = z2_setup
    tc = assemble_total_complex(g, alg, 6)
    assert hochschild_cohomology(tc, 5) == [1, 0, 0, 0, 0, 0]
    assert cyclic_cohomology(g, alg, 4, total_complex=tc) == [1, 0, 1, 0, 1]


def test_total_complex_point():
    g = FiniteGroup.trivial()
    alg = build_function_algebra(g, {0: [0]})
    tc = assemble_total_complex(g, alg, 6)
    assert hochschild_cohomology(tc, 5) == [1, 0, 0, 0, 0, 0]
    assert cyclic_cohomology(g, alg, 5, total_complex=tc) == [1, 0, 1, 0, 1, 0]


def test_total_complex_trivial_group_is_coefficient_cohomology(fix1):
    # trivial group acting on the hexagon cochain algebra: circle Betti
    g = FiniteGroup.trivial()
    k = fix1
    from equihodge.algebras import GradedAlgebra, GroupAction

    mats = {0: {p: [{i: F(1)} for i in range(k.dim_cochains(p))] for p in (0, 1)}}
    alg = GradedAlgebra(
        {0: 6, 1: 6},
        GroupAction(g, mats=mats),
        differential=k._coboundaries,
    )
    tc = assemble_total_complex(g, alg, 4)
    assert hochschild_cohomology(tc, 3) == [1, 1, 0, 0]


def test_fix1_cyclic_and_decomposition(fix1):
    alg = fix1.cochain_algebra()
    g = fix1.group
    tc = assemble_total_complex(g, alg, 5)
    assert hochschild_cohomology(tc, 4) == [1, 1, 0, 0, 0]
    assert cyclic_cohomology(g, alg, 4, total_complex=tc) == [1, 1, 1, 1, 1]
    rep = verify_hopf_cyclic_decomposition(
        g, alg, 4, invariant_betti=fix1.invariant_betti()
    )
    assert rep.all_passed, rep.failures


def test_fix5_decomposition():
    g = FiniteGroup.cyclic(2)
    alg = build_function_algebra(g, {0: [0, 1], 1: [1, 0]}, point_names=["a", "b"])
    rep = verify_hopf_cyclic_decomposition(g, alg, 4)
    assert rep.all_passed, rep.failures
    assert rep.tables["cyclic_cohomology"] == [1, 0, 1, 0, 1]


def test_empty_algebra_gives_zero_cohomology():
    g = FiniteGroup.cyclic(2)
    from equihodge.algebras import GradedAlgebra, GroupAction

    alg = GradedAlgebra({}, GroupAction(g, mats={0: {}, 1: {}}))
    tc = assemble_total_complex(g, alg, 4)
    assert hochschild_cohomology(tc, 3) == [0, 0, 0, 0]
