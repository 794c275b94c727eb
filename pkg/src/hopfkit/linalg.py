"""Exact dense/sparse linear algebra over the fields module.

Vectors are sparse dicts {index: Scalar} carrying no explicit zeros.
The pivot rule is deterministic (first nonzero entry scanning
top-to-bottom, left-to-right) so echelon forms, kernels and solver
output are reproducible; golden reports depend on this.
All functions are pure; inputs are never mutated.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .fields import Field, Scalar

Vec = Dict[int, Scalar]

SPARSE_DENSITY_CUTOFF = 0.10


# ---------------------------------------------------------------------------
# sparse vector helpers
# ---------------------------------------------------------------------------

def vec_add_into(dst: Vec, src: Vec, scale: Optional[Scalar] = None) -> None:
    """dst += scale * src (in place on dst; dst is a working buffer).

    Entries of src are nonzero and the field has no zero divisors, so
    scaled entries only need a zero check after accumulation.
    """
    get = dst.get
    if scale is not None:
        if not scale._nonzero:
            return
        for k, c in src.items():
            c = scale * c
            prev = get(k)
            if prev is None:
                dst[k] = c
            else:
                s = prev + c
                if s._nonzero:
                    dst[k] = s
                else:
                    del dst[k]
    else:
        for k, c in src.items():
            prev = get(k)
            if prev is None:
                dst[k] = c
            else:
                s = prev + c
                if s._nonzero:
                    dst[k] = s
                else:
                    del dst[k]


def vec_scale(v: Vec, c: Scalar) -> Vec:
    if c.is_zero():
        return {}
    return {k: c * x for k, x in v.items()}


def vec_neg(v: Vec) -> Vec:
    return {k: -x for k, x in v.items()}


def vec_sub(a: Vec, b: Vec) -> Vec:
    out = dict(a)
    for k, c in b.items():
        prev = out.get(k)
        if prev is None:
            out[k] = -c
        else:
            s = prev - c
            if s.is_zero():
                del out[k]
            else:
                out[k] = s
    return out


def vec_eq(a: Vec, b: Vec) -> bool:
    return a == b


def pair(cov: Vec, v: Vec) -> Optional[Scalar]:
    """<cov, v>; returns None for two empty vectors with unknown field."""
    total = None
    small, big = (cov, v) if len(cov) <= len(v) else (v, cov)
    for k, c in small.items():
        d = big.get(k)
        if d is not None:
            term = c * d
            total = term if total is None else total + term
    return total


def pair_or_zero(field: Field, cov: Vec, v: Vec) -> Scalar:
    s = pair(cov, v)
    return field.zero if s is None else s


def apply_rowmap(rows: Sequence[Vec], v: Vec) -> Vec:
    """Image of v under the map e_i -> rows[i]."""
    out: Vec = {}
    for i, c in v.items():
        vec_add_into(out, rows[i], c)
    return out


def first_nonzero_index(v: Vec) -> Optional[int]:
    return min(v) if v else None


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

class Matrix:
    """Exact matrix; rows stored as sparse dicts {col: Scalar}."""

    __slots__ = ("field", "nrows", "ncols", "rows", "_mode")

    def __init__(self, field: Field, nrows: int, ncols: int,
                 rows: Optional[List[Vec]] = None, mode: Optional[str] = None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.rows: List[Vec] = rows if rows is not None else [{} for _ in range(nrows)]
        self._mode = mode

    @property
    def mode(self) -> str:
        if self._mode is None:
            self._mode = ("sparse" if self.density() < SPARSE_DENSITY_CUTOFF
                          else "dense")
        return self._mode

    @staticmethod
    def from_dense(field: Field, entries: Sequence[Sequence[Scalar]]) -> "Matrix":
        nrows = len(entries)
        ncols = len(entries[0]) if nrows else 0
        rows: List[Vec] = []
        for r in entries:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            rows.append({j: c for j, c in enumerate(r) if not c.is_zero()})
        return Matrix(field, nrows, ncols, rows)

    @staticmethod
    def from_triples(field: Field, nrows: int, ncols: int,
                     triples: Sequence[Tuple[int, int, Scalar]]) -> "Matrix":
        rows: List[Vec] = [{} for _ in range(nrows)]
        for i, j, c in triples:
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise ValueError("entry (%d, %d) out of bounds" % (i, j))
            if not c.is_zero():
                prev = rows[i].get(j)
                s = c if prev is None else prev + c
                if s.is_zero():
                    rows[i].pop(j, None)
                else:
                    rows[i][j] = s
        return Matrix(field, nrows, ncols, rows)

    @staticmethod
    def identity(field: Field, n: int) -> "Matrix":
        return Matrix(field, n, n, [{i: field.one} for i in range(n)])

    def density(self) -> float:
        total = self.nrows * self.ncols
        if total == 0:
            return 0.0
        return sum(len(r) for r in self.rows) / total

    def entry(self, i: int, j: int) -> Scalar:
        return self.rows[i].get(j, self.field.zero)

    def to_dense(self) -> List[List[Scalar]]:
        z = self.field.zero
        return [[r.get(j, z) for j in range(self.ncols)] for r in self.rows]

    def to_triples(self) -> List[Tuple[int, int, Scalar]]:
        return [(i, j, c) for i, r in enumerate(self.rows) for j, c in sorted(r.items())]

    def transpose(self) -> "Matrix":
        rows: List[Vec] = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, c in r.items():
                rows[j][i] = c
        return Matrix(self.field, self.ncols, self.nrows, rows)

    def apply(self, v: Vec) -> Vec:
        """Matrix * column vector."""
        out: Vec = {}
        for i, r in enumerate(self.rows):
            s = pair(r, v)
            if s is not None and not s.is_zero():
                out[i] = s
        return out

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch in matmul")
        rows: List[Vec] = []
        for r in self.rows:
            acc: Vec = {}
            for k, c in r.items():
                vec_add_into(acc, other.rows[k], c)
            rows.append(acc)
        return Matrix(self.field, self.nrows, other.ncols, rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and \
            self.rows == other.rows

    def __repr__(self):
        return "Matrix(%dx%d over %s, %d nonzero)" % (
            self.nrows, self.ncols, self.field.spec,
            sum(len(r) for r in self.rows))


def rref(A: Matrix) -> Tuple[Matrix, List[int], int]:
    """Reduced row echelon form; returns (R, pivot columns, rank)."""
    if A.density() >= SPARSE_DENSITY_CUTOFF:
        return _rref_dense(A)
    return _rref_sparse(A)


def _rref_sparse(A: Matrix) -> Tuple[Matrix, List[int], int]:
    rows = [dict(r) for r in A.rows]
    pivots: List[int] = []
    rank = 0
    for col in range(A.ncols):
        piv = None
        for i in range(rank, A.nrows):
            if col in rows[i]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        inv = prow[col].inv()
        if not (inv == A.field.one):
            rows[rank] = prow = {j: inv * c for j, c in prow.items()}
        for i, r in enumerate(rows):
            if i != rank and col in r:
                factor = -r[col]
                vec_add_into(r, prow, factor)
        pivots.append(col)
        rank += 1
    return Matrix(A.field, A.nrows, A.ncols, rows, mode=A.mode), pivots, rank


def _rref_dense(A: Matrix) -> Tuple[Matrix, List[int], int]:
    z = A.field.zero
    rows = A.to_dense()
    pivots: List[int] = []
    rank = 0
    for col in range(A.ncols):
        piv = None
        for i in range(rank, A.nrows):
            if not rows[i][col].is_zero():
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        inv = prow[col].inv()
        if not (inv == A.field.one):
            rows[rank] = prow = [inv * c for c in prow]
        for i, r in enumerate(rows):
            if i != rank and not r[col].is_zero():
                f = r[col]
                rows[i] = [rc - f * pc for rc, pc in zip(r, prow)]
        pivots.append(col)
        rank += 1
    out = [{j: c for j, c in enumerate(r) if not c.is_zero()} for r in rows]
    return Matrix(A.field, A.nrows, A.ncols, out, mode=A.mode), pivots, rank


def _kernel_from_rref(R: Matrix, pivots: List[int]) -> List[Vec]:
    pivot_set = set(pivots)
    free = [j for j in range(R.ncols) if j not in pivot_set]
    basis: List[Vec] = []
    one = R.field.one
    for f in free:
        v: Vec = {f: one}
        for r, p in enumerate(pivots):
            c = R.rows[r].get(f)
            if c is not None:
                v[p] = -c
        basis.append(v)
    if not basis:
        return []
    # canonicalize: rref of the raw nullspace basis
    B = Matrix(R.field, len(basis), R.ncols, basis)
    RB, _, rank = rref(B)
    return [RB.rows[i] for i in range(rank)]


def kernel(A: Matrix) -> List[Vec]:
    """Canonical basis of {x : Ax = 0}."""
    R, pivots, _ = rref(A)
    return _kernel_from_rref(R, pivots)


def solve(A: Matrix, b: Vec) -> Optional[Tuple[Vec, List[Vec]]]:
    """One exact solution of Ax = b plus a kernel basis, or None if inconsistent."""
    aug_rows = [dict(r) for r in A.rows]
    for i, c in b.items():
        if not (0 <= i < A.nrows):
            raise ValueError("rhs dimension mismatch")
        if not c.is_zero():
            aug_rows[i][A.ncols] = c
    aug = Matrix(A.field, A.nrows, A.ncols + 1, aug_rows)
    R, pivots, rank = rref(aug)
    if pivots and pivots[-1] == A.ncols:
        return None  # inconsistent
    x: Vec = {}
    for r, p in enumerate(pivots):
        c = R.rows[r].get(A.ncols)
        if c is not None:
            x[p] = c
    RA = Matrix(A.field, A.nrows, A.ncols,
                [{j: c for j, c in row.items() if j < A.ncols} for row in R.rows])
    return x, _kernel_from_rref(RA, pivots)


def invert(A: Matrix) -> Optional[Matrix]:
    """Exact inverse, or None when A is singular."""
    if A.nrows != A.ncols:
        raise ValueError("invert requires a square matrix")
    n = A.nrows
    aug_rows = [dict(r) for r in A.rows]
    for i in range(n):
        aug_rows[i][n + i] = A.field.one
    aug = Matrix(A.field, n, 2 * n, aug_rows)
    R, pivots, rank = rref(aug)
    if rank < n or pivots[:n] != list(range(n)):
        return None
    rows = [{j - n: c for j, c in R.rows[i].items() if j >= n} for i in range(n)]
    return Matrix(A.field, n, n, rows)


def rank(A: Matrix) -> int:
    return rref(A)[2]
