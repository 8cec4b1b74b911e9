from fractions import Fraction

import pytest

from equihodge.groups import FiniteGroup, FreeAbelianGroup
from equihodge.algebras import (
    GradedAlgebra,
    GroupAction,
    build_exterior_algebra,
    build_function_algebra,
)
from equihodge.hopf import HopfAlgebroid, check_hopf_axioms, corrupted_antipode

F = Fraction


@pytest.fixture(scope="module")
def z2_fun():
    g = FiniteGroup.cyclic(2)
    alg = build_function_algebra(g, {0: [0, 1], 1: [1, 0]}, point_names=["a", "b"])
    return HopfAlgebroid(alg)


@pytest.fixture(scope="module")
def z3_ext():
    g = FiniteGroup.cyclic(3)
    alg = build_exterior_algebra(g, {0: [0, 1, 2], 1: [1, 2, 0], 2: [2, 0, 1]})
    return HopfAlgebroid(alg)


def one_a(h):
    return h.algebra.basis_element(0, 0)


def test_source_is_constant(z2_fun):
    h = z2_fun
    a = h.source(one_a(h))
    assert a.value(0) == one_a(h) and a.value(1) == one_a(h)
    assert h.source(h.algebra.zero()).value(1).is_zero()
    assert h.source(h.algebra.unit).equals_on(h.unit(), [0, 1])


def test_target_pulls_back(z2_fun):
    h = z2_fun
    b = h.target(one_a(h))
    assert b.value(0) == one_a(h)
    assert b.value(1) == h.algebra.basis_element(0, 1)  # swap moves 1_a to 1_b
    assert h.target(h.algebra.unit).equals_on(h.unit(), [0, 1])


def test_target_equals_source_for_trivial_action():
    g = FiniteGroup.cyclic(2)
    alg = build_function_algebra(g, {0: [0, 1], 1: [0, 1]})
    h = HopfAlgebroid(alg)
    b = alg.basis_element(0, 0)
    assert h.target(b).equals_on(h.source(b), list(g.elements()))


def test_coproduct_values(z2_fun):
    h = z2_fun
    one_b = h.algebra.basis_element(0, 1)
    phi = h.indicator(0, one_a(h)) + h.indicator(1, one_b)
    d = h.coproduct(phi)
    assert d.value(1, 1) == one_a(h)  # phi(t*t) = phi(e)
    assert d.value(0, 1) == one_b
    # Delta(1) = 1 (x) 1 and Delta(source(b)) is constant
    pairs = [(a, b) for a in range(2) for b in range(2)]
    assert h.coproduct(h.unit()).equals_on(h.tensor_over_B(h.unit(), h.unit()), pairs)
    const = h.coproduct(h.source(one_a(h)))
    assert all(const.value(a, b) == one_a(h) for a, b in pairs)


def test_counit(z2_fun):
    h = z2_fun
    one_b = h.algebra.basis_element(0, 1)
    phi = h.indicator(0, one_a(h)) + h.indicator(1, one_b)
    assert h.counit(phi) == one_a(h)
    assert h.counit(h.unit()) == h.algebra.unit
    assert h.counit(h.target(one_b)) == one_b


def test_antipode_values(z2_fun):
    h = z2_fun
    one_b = h.algebra.basis_element(0, 1)
    phi = h.indicator(0, one_a(h)) + h.indicator(1, one_b)
    s = h.antipode(phi)
    # S(phi)(t) = t.(phi(t)) = t.(1_b) = 1_a, so S(phi) = source(1_a)
    assert s.equals_on(h.source(one_a(h)), [0, 1])
    assert h.antipode(h.unit()).equals_on(h.unit(), [0, 1])
    # S swaps source and target
    assert h.antipode(h.source(one_b)).equals_on(h.target(one_b), [0, 1])
    assert h.antipode(h.target(one_b)).equals_on(h.source(one_b), [0, 1])


def test_tensor_over_b_relations(z2_fun):
    h = z2_fun
    pairs = [(a, b) for a in range(2) for b in range(2)]
    for i in range(2):
        b = h.algebra.basis_element(0, i)
        lhs = h.tensor_over_B(h.target(b), h.unit())
        rhs = h.tensor_over_B(h.unit(), h.source(b))
        assert lhs.equals_on(rhs, pairs)
    phi = h.source(one_a(h))
    ts = h.tensor_over_B(phi, phi)
    for g1, g2 in pairs:
        expect = h.algebra.mul(one_a(h), h.algebra.rho(g1, one_a(h)))
        assert ts.value(g1, g2) == expect


def test_axiom_suite_z2_all_pass(z2_fun):
    rep = check_hopf_axioms(z2_fun)
    assert rep.all_passed, rep.failures


def test_axiom_suite_z3_exterior_all_pass(z3_ext):
    rep = check_hopf_axioms(z3_ext)
    assert rep.all_passed, rep.failures


def test_corrupted_antipode_flagged(z2_fun):
    rep = check_hopf_axioms(z2_fun, antipode=corrupted_antipode(z2_fun))
    assert not rep.all_passed
    names = [c.name for c in rep.failures]
    assert any("m_A(S (x) Id)Delta" in n for n in names)
    flagged = next(c for c in rep.checks if "m_A" in c.name)
    assert flagged.witness  # a concrete counterexample is named


def test_axiom_suite_free_abelian_sampled():
    grp = FreeAbelianGroup(1)
    swap = {0: [{1: F(1)}, {0: F(1)}]}
    action = GroupAction(grp, generator_mats=[(swap, swap)])
    product = {
        (0, i, 0, j): ({(0, i): F(1)} if i == j else {})
        for i in range(2)
        for j in range(2)
    }
    alg = GradedAlgebra({0: 2}, action, product=product)
    alg.set_unit({(0, 0): F(1), (0, 1): F(1)})
    rep = check_hopf_axioms(HopfAlgebroid(alg), sample_budget=24)
    assert rep.all_passed, rep.failures
    assert rep.tables["mode"][0] == "sampled"
