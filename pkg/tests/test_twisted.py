from fractions import Fraction

import pytest

from equihodge import linalg as la
from equihodge.twisted import (
    TwistValidationError,
    duality_check_k1,
    euler_index_sweep,
    twist_from_orbit_values,
    twisted_betti,
    twisted_differential,
    uniform_twist,
)

F = Fraction

K_LIST = [-2, -1, 0, 1, 2, 3]


def fix1_twist(fix1):
    return twist_from_orbit_values(fix1, {0: [F(1), F(2)], 1: [F(3), F(1, 2)]})


def fix3_twist(fix3):
    return twist_from_orbit_values(
        fix3, {0: [F(2)], 1: [F(1), F(3), F(1, 2)], 2: [F(5), F(1, 3)]}
    )


def test_k0_and_unit_twist_reduce_to_d(fix1):
    tw = fix1_twist(fix1)
    d0 = twisted_differential(fix1, tw, 0)
    assert la.mat_eq(d0[0], fix1.d_inv(0))
    unit = uniform_twist(fix1)
    for k in (-1, 2):
        dk = twisted_differential(fix1, unit, k)
        assert la.mat_eq(dk[0], fix1.d_inv(0))


def test_twisted_square_zero_and_betti_fix1(fix1):
    tw = fix1_twist(fix1)
    for k in K_LIST:
        assert twisted_betti(fix1, tw, k) == [1, 1]


def test_twisted_betti_fix3(fix3):
    tw = fix3_twist(fix3)
    for k in (-1, 0, 1, 2):
        assert twisted_betti(fix3, tw, k) == [1, 2, 1]


def test_twisted_betti_fix2(fix2):
    tw = uniform_twist(fix2, F(1))
    assert twisted_betti(fix2, tw, 0) == [1, 0]


def test_non_invariant_twist_rejected(fix1):
    vals = {(p, i): F(1) for p in (0, 1) for i in range(6)}
    vals[(0, 0)] = F(2)  # breaks invariance: vertex 0 is not a fixed point
    with pytest.raises(TwistValidationError) as err:
        from equihodge.twisted import TwistFamily

        TwistFamily(fix1, vals)
    assert "unimodular" in str(err.value)


def test_euler_sweep_fix1(fix1):
    rep = euler_index_sweep(fix1, fix1_twist(fix1), K_LIST)
    assert rep.all_passed, rep.failures
    assert rep.tables["chi"] == [0]


def test_euler_sweep_fix2_fix6(fix2, fix6):
    for k, chi in ((fix2, 1), (fix6, 1)):
        rep = euler_index_sweep(k, uniform_twist(k), K_LIST)
        assert rep.all_passed, rep.failures
        assert rep.tables["chi"] == [chi]


def test_euler_sweep_fix3(fix3):
    rep = euler_index_sweep(fix3, fix3_twist(fix3), [-1, 0, 1, 2])
    assert rep.all_passed, rep.failures
    assert rep.tables["chi"] == [0]


def test_euler_sweep_fix4p(fix4p):
    from equihodge.hodge import Cutoff

    f = Cutoff({(0, 0, (0,)): 1, (0, 1, (0,)): 1, (1, 0, (0,)): 1, (1, 1, (0,)): 1})
    tw = twist_from_orbit_values(fix4p, {0: [F(1), F(3)], 1: [F(2), F(1, 2)]})
    rep = euler_index_sweep(fix4p, tw, K_LIST, f=f)
    assert rep.all_passed, rep.failures
    assert rep.tables["chi"] == [0]


def test_duality_fix1(fix1):
    rep = duality_check_k1(fix1, fix1_twist(fix1))
    assert rep.all_passed, rep.failures
    assert any("odd dimension" in c.name for c in rep.checks)


def test_duality_fix3(fix3):
    rep = duality_check_k1(fix3, fix3_twist(fix3))
    assert rep.all_passed, rep.failures
    names = [c.name for c in rep.checks]
    assert "pairing H^1 x H^1 full rank (k=1)" in names


def test_duality_fix4p(fix4p):
    tw = twist_from_orbit_values(fix4p, {0: [F(1), F(1)], 1: [F(2), F(2)]})
    rep = duality_check_k1(fix4p, tw)
    assert rep.all_passed, rep.failures


def test_duality_declined_fix2_fix6(fix2, fix6):
    for k in (fix2, fix6):
        rep = duality_check_k1(k, uniform_twist(k))
        declined = [c for c in rep.checks if c.status == "declined"]
        assert declined and "orientation" in declined[0].witness
        assert rep.all_passed  # declined is not a failure
