from fractions import Fraction

from equihodge import linalg as la

F = Fraction


def M(rows):
    return [[F(x) for x in row] for row in rows]


def test_rank_and_rref():
    a = M([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert la.rank(a) == 2
    r, pivots = la.rref(a)
    assert pivots == [0, 1]
    assert la.rank(la.identity(5)) == 5
    assert la.rank(la.zeros(3, 4)) == 0


def test_nullspace_is_exact_kernel():
    a = M([[1, 2, 3], [4, 5, 6]])
    ns = la.nullspace(a)
    assert len(ns) == 1
    v = ns[0]
    assert la.mat_vec(a, v) == [F(0), F(0)]
    # kernel vector is rational, not a float approximation
    assert all(isinstance(x, Fraction) for x in v)


def test_solve_consistent_and_inconsistent():
    a = M([[2, 0], [0, 3]])
    x = la.solve(a, [F(1), F(1)])
    assert x == [F(1, 2), F(1, 3)]
    b = M([[1, 1], [2, 2]])
    assert la.solve(b, [F(1), F(3)]) is None
    assert la.solve(b, [F(1), F(2)]) is not None


def test_solve_matrix_and_inverse():
    a = M([[1, 2], [3, 5]])
    inv = la.inverse(a)
    assert la.mat_eq(la.mat_mul(a, inv), la.identity(2))
    x = la.solve_matrix(a, la.identity(2))
    assert la.mat_eq(x, inv)


def test_positive_definite():
    assert la.is_positive_definite(M([[2, 1], [1, 2]]))
    assert not la.is_positive_definite(M([[1, 2], [2, 1]]))
    assert not la.is_positive_definite(M([[0, 0], [0, 1]]))
    assert not la.is_positive_definite(M([[1, 2], [0, 1]]))  # not symmetric


def test_sparse_rank_matches_dense():
    import random

    rng = random.Random(7)
    for trial in range(20):
        nr, nc = rng.randint(1, 8), rng.randint(1, 8)
        dense = [[F(rng.choice([-2, -1, 0, 0, 0, 1, 1, 2])) for _ in range(nc)]
                 for _ in range(nr)]
        cols = []
        for j in range(nc):
            col = {i: dense[i][j] for i in range(nr) if dense[i][j]}
            cols.append(col)
        assert la.sparse_rank(cols) == la.rank(dense)


def test_sparse_rank_bar_like_matrix():
    # block of signed unit columns like a bar-complex differential
    cols = [{i: F(1), (i + 1) % 50: F(-1)} for i in range(50)]
    assert la.sparse_rank(cols) == 49


def test_column_space_basis():
    a = M([[1, 2, 3], [2, 4, 6], [0, 0, 1]])
    assert la.column_space_basis(a) == [0, 2]
