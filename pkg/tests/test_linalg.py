import random

import pytest

from hopfkit.fields import FieldSpec, make_field
from hopfkit.linalg import (
    Matrix, apply_rowmap, invert, kernel, pair_or_zero, rank, rref, solve,
    vec_add_into, vec_sub,
)

QQ = make_field(FieldSpec.rational())
C3 = make_field(FieldSpec.cyclotomic(3))


def mat(field, lists):
    return Matrix.from_dense(field, [[field.from_int(x) for x in row] for row in lists])


def dense_rref_oracle(field, lists):
    """Naive dense fraction rref, independent of the library path."""
    rows = [[field.from_int(x) if isinstance(x, int) else x for x in row]
            for row in lists]
    nrows, ncols = len(rows), len(rows[0]) if rows else 0
    rank_ = 0
    pivots = []
    for col in range(ncols):
        piv = next((i for i in range(rank_, nrows) if not rows[i][col].is_zero()), None)
        if piv is None:
            continue
        rows[rank_], rows[piv] = rows[piv], rows[rank_]
        inv = rows[rank_][col].inv()
        rows[rank_] = [inv * c for c in rows[rank_]]
        for i in range(nrows):
            if i != rank_ and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank_])]
        pivots.append(col)
        rank_ += 1
    return rows, pivots, rank_


def test_rref_trivial():
    I3 = Matrix.identity(QQ, 3)
    R, pivots, rk = rref(I3)
    assert R == I3 and pivots == [0, 1, 2] and rk == 3

    Z = Matrix(QQ, 2, 3)
    R, pivots, rk = rref(Z)
    assert R == Z and pivots == [] and rk == 0

    A = mat(QQ, [[1, 2], [2, 4]])
    R, pivots, rk = rref(A)
    assert R == mat(QQ, [[1, 2], [0, 0]]) and rk == 1


def test_rref_idempotent_and_matches_oracle():
    rng = random.Random(1)
    for _ in range(20):
        nrows, ncols = rng.randint(1, 6), rng.randint(1, 6)
        lists = [[rng.randint(-4, 4) for _ in range(ncols)] for _ in range(nrows)]
        A = mat(QQ, lists)
        R, pivots, rk = rref(A)
        R2, pivots2, rk2 = rref(R)
        assert R == R2 and pivots == pivots2 and rk == rk2
        dense, opivots, ork = dense_rref_oracle(QQ, lists)
        assert pivots == opivots and rk == ork
        for i, row in enumerate(dense):
            assert {j: c for j, c in enumerate(row) if not c.is_zero()} == R.rows[i]


def test_solve_trivial():
    I3 = Matrix.identity(QQ, 3)
    b = {0: QQ.from_int(5), 2: QQ.from_int(-1)}
    x, ker = solve(I3, b)
    assert x == b and ker == []

    Z = Matrix(QQ, 2, 2)
    assert solve(Z, {0: QQ.one}) is None


def test_solve_random_rank4_over_cyclotomic():
    rng = random.Random(7)
    # 5x7 matrix of rank 4: four random rows plus one dependent row
    rows = [{j: C3.random_scalar(rng) for j in range(7)} for _ in range(4)]
    dep = {}
    for r in rows[1:4]:
        vec_add_into(dep, r, C3.random_scalar(rng))
    A = Matrix(C3, 5, 7, rows + [dep])
    _, _, rk = rref(A)
    assert rk == 4

    xtrue = {j: C3.random_scalar(rng) for j in range(7)}
    b = A.apply(xtrue)
    result = solve(A, b)
    assert result is not None
    x, ker = result
    assert A.apply(x) == b  # substitution check, exact
    assert len(ker) == 7 - 4
    for v in ker:
        assert A.apply(v) == {}


def test_kernel_examples():
    A = mat(QQ, [[1, 1]])
    ker = kernel(A)
    assert ker == [{0: QQ.one, 1: QQ.from_int(-1)}]

    I2 = Matrix.identity(QQ, 2)
    assert kernel(I2) == []


def test_rank_nullity():
    rng = random.Random(3)
    for _ in range(10):
        nrows, ncols = rng.randint(1, 5), rng.randint(1, 6)
        A = Matrix(QQ, nrows, ncols,
                   [{j: QQ.random_scalar(rng) for j in range(ncols)
                     if rng.random() < 0.5} for _ in range(nrows)])
        assert rank(A) + len(kernel(A)) == ncols


def test_invert():
    D = mat(QQ, [[2, 0], [0, 3]])
    Dinv = invert(D)
    assert Dinv.entry(0, 0) == QQ.from_fraction(1, 2)
    assert Dinv.entry(1, 1) == QQ.from_fraction(1, 3)
    assert D.matmul(Dinv) == Matrix.identity(QQ, 2)

    S = mat(QQ, [[1, 2], [2, 4]])
    assert invert(S) is None

    with pytest.raises(ValueError):
        invert(Matrix(QQ, 2, 3))


def test_sparse_and_dense_paths_agree():
    rng = random.Random(11)
    nrows, ncols = 8, 12
    rows = [{j: QQ.random_scalar(rng) for j in range(ncols) if rng.random() < 0.08}
            for _ in range(nrows)]
    A_sparse = Matrix(QQ, nrows, ncols, rows, mode="sparse")
    A_dense = Matrix(QQ, nrows, ncols, [dict(r) for r in rows], mode="dense")
    from hopfkit.linalg import _rref_dense, _rref_sparse
    Rs, ps, ks = _rref_sparse(A_sparse)
    Rd, pd, kd = _rref_dense(A_dense)
    assert Rs.rows == Rd.rows and ps == pd and ks == kd


def test_vector_helpers():
    a = {0: QQ.one, 1: QQ.from_int(2)}
    b = {1: QQ.from_int(-2), 2: QQ.from_int(4)}
    assert vec_sub(a, a) == {}
    s = dict(a)
    vec_add_into(s, b)
    assert s == {0: QQ.one, 2: QQ.from_int(4)}
    rows = [{1: QQ.one}, {0: QQ.from_int(3)}]
    assert apply_rowmap(rows, {1: QQ.from_int(2)}) == {0: QQ.from_int(6)}
    assert pair_or_zero(QQ, a, b) == QQ.from_int(-4)
