"""Exact dense linear algebra over the scalar tower.

The solver does Gauss-Jordan elimination with the coefficient matrix over a
field (rationals or Gaussian rationals).  Right-hand sides only need module
operations (+, -, scaling by field elements), so the same routine solves
systems whose right-hand side carries symbolic parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def matvec(rows, vec):
    out = []
    for row in rows:
        acc = None
        for a, v in zip(row, vec):
            piece = a * v
            acc = piece if acc is None else acc + piece
        out.append(acc)
    return out


def matmul(a, b):
    bt = list(zip(*b))
    return [[_dot(row, col) for col in bt] for row in a]


def _dot(row, col):
    acc = None
    for x, y in zip(row, col):
        piece = x * y
        acc = piece if acc is None else acc + piece
    return acc


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_neg(a):
    return [[-x for x in row] for row in a]


def identity_rows(n, one=Fraction(1), zero=Fraction(0)):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def is_identity_matrix(rows):
    return all(
        (x == 1 if i == j else x == 0) for i, row in enumerate(rows) for j, x in enumerate(row)
    )


@dataclass
class LinearSolveResult:
    """Outcome of solving A x = b over a field.

    feasible      -- every zero row of the reduced A has zero residual
    particular    -- one solution with all free coordinates set to zero
                     (entries have the right-hand side's type)
    nullspace     -- basis of solutions of A x = 0, one vector per free
                     column, in ascending column order
    free_cols     -- the free column indices
    pivot_cols    -- the pivot column indices
    residuals     -- for infeasible systems, the nonzero right-hand sides
                     left on zero rows (in elimination order)
    """

    feasible: bool
    particular: list | None
    nullspace: list | None
    free_cols: list | None
    pivot_cols: list
    residuals: list


def solve_affine(matrix, rhs, one=Fraction(1)):
    """Gauss-Jordan solve of ``matrix . x = rhs``.

    ``matrix`` entries must be field scalars; ``rhs`` entries may live in
    any module over that field.  Returns a LinearSolveResult.  For an
    infeasible system the residuals list holds every nonzero entry stranded
    on a zero row; when right-hand sides are symbolic the caller decides
    what a nonzero residual means.
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    a = [list(row) for row in matrix]
    b = list(rhs)
    if len(b) != nrows:
        raise ValueError("rhs length does not match row count")

    pivot_cols = []
    pivot_row_of = {}
    r = 0
    for c in range(ncols):
        pivot = None
        for k in range(r, nrows):
            if a[k][c] != 0:
                pivot = k
                break
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        b[r], b[pivot] = b[pivot], b[r]
        inv = one / a[r][c]
        a[r] = [inv * x for x in a[r]]
        b[r] = inv * b[r]
        for k in range(nrows):
            if k == r:
                continue
            f = a[k][c]
            if f == 0:
                continue
            a[k] = [x - f * y for x, y in zip(a[k], a[r])]
            b[k] = b[k] - f * b[r]
        pivot_row_of[c] = r
        pivot_cols.append(c)
        r += 1
        if r == nrows:
            break

    residuals = [b[k] for k in range(r, nrows) if b[k] != 0]
    if residuals:
        return LinearSolveResult(False, None, None, None, pivot_cols, residuals)

    free_cols = [c for c in range(ncols) if c not in pivot_row_of]
    particular = []
    zero_rhs = None
    for c in range(ncols):
        if c in pivot_row_of:
            particular.append(b[pivot_row_of[c]])
        else:
            if zero_rhs is None:
                zero_rhs = b[0] * 0 if nrows else Fraction(0)
            particular.append(zero_rhs)
    basis = []
    zero = one * 0
    for f in free_cols:
        vec = [zero] * ncols
        vec[f] = one
        for c in pivot_cols:
            vec[c] = -a[pivot_row_of[c]][f]
        basis.append(vec)
    return LinearSolveResult(True, particular, basis, free_cols, pivot_cols, [])


def rank(matrix, one=Fraction(1)):
    if not matrix:
        return 0
    zero = one * 0
    result = solve_affine(matrix, [zero] * len(matrix), one)
    return len(result.pivot_cols)


def invert_series_matrix(layers):
    """Invert a square matrix with truncated-series entries, given layer by
    layer: ``layers[k]`` is the matrix of h^k coefficients and ``layers[0]``
    must be the identity.  Returns the inverse's layers, computed by

        g_0 = I,   g_k = -(sum_{j=1..k} f_j g_{k-j}).

    No division happens, so the base ring can be any commutative ring.
    """
    if not layers:
        raise ValueError("need at least the constant layer")
    if not is_identity_matrix(layers[0]):
        raise ValueError("constant layer must be the identity matrix")
    n = len(layers[0])
    out = [[row[:] for row in layers[0]]]
    for k in range(1, len(layers)):
        acc = None
        for j in range(1, k + 1):
            piece = matmul(layers[j], out[k - j])
            acc = piece if acc is None else [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(acc, piece)]
        out.append(mat_neg(acc) if acc is not None else identity_rows(n))
    return out
