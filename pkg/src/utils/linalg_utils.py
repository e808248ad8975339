"""
Exact linear algebra over the rationals.

Vectors are sequences of `Fraction` and matrices are sequences of rows. All
functions return fresh lists and never mutate their arguments. Nothing here rounds.

Functions:
    to_fraction: Coerce an int, str or Fraction to a Fraction.
    vector: Build a Fraction vector from arbitrary numeric input.
    dot, add, sub, scale: Vector arithmetic.
    mat_vec, vec_mat, mat_mul, transpose: Matrix products.
    identity, zeros: Matrix constructors.
    row_reduce: Reduced row echelon form with pivot columns.
    rank, nullspace, inverse, solve, determinant: Derived routines.
"""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

Number = Union[int, str, Fraction]
Vector = List[Fraction]
Matrix = List[List[Fraction]]


def to_fraction(value: Number) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted in exact arithmetic")
    return Fraction(value)


def vector(values: Sequence[Number]) -> Vector:
    return [to_fraction(v) for v in values]


def dot(v1: Sequence[Fraction], v2: Sequence[Fraction]) -> Fraction:
    assert len(v1) == len(v2), "Cannot dot product vectors of different dimensions!"
    return sum((x1 * x2 for (x1, x2) in zip(v1, v2)), Fraction(0))


def add(v1: Sequence[Fraction], v2: Sequence[Fraction]) -> Vector:
    assert len(v1) == len(v2), "Cannot add vectors of different dimensions!"
    return [x1 + x2 for (x1, x2) in zip(v1, v2)]


def sub(v1: Sequence[Fraction], v2: Sequence[Fraction]) -> Vector:
    assert len(v1) == len(v2), "Cannot subtract vectors of different dimensions!"
    return [x1 - x2 for (x1, x2) in zip(v1, v2)]


def scale(v: Sequence[Fraction], s: Fraction) -> Vector:
    return [x * s for x in v]


def mat_vec(m: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    return [dot(row, v) for row in m]


def vec_mat(v: Sequence[Fraction], m: Sequence[Sequence[Fraction]]) -> Vector:
    """Covector times matrix, i.e. the pull-back of an effect through a transform."""
    assert len(v) == len(m), "Cannot multiply covector and matrix of different dimensions!"
    cols = len(m[0]) if m else 0
    return [sum((v[r] * m[r][c] for r in range(len(m))), Fraction(0)) for c in range(cols)]


def transpose(m: Sequence[Sequence[Fraction]]) -> Matrix:
    return [list(col) for col in zip(*m)]


def mat_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    assert len(a[0]) == len(b), "Cannot multiply matrices of incompatible shapes!"
    bt = transpose(b)
    return [[dot(row, col) for col in bt] for row in a]


def identity(n: int) -> Matrix:
    return [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def row_reduce(m: Sequence[Sequence[Fraction]]) -> Tuple[Matrix, List[int]]:
    """
    Gauss-Jordan elimination.

    Parameters:
        m (Sequence[Sequence[Fraction]]): The matrix to reduce.

    Returns:
        Tuple[Matrix, List[int]]: The reduced row echelon form and its pivot columns.
    """
    rows = [list(r) for r in m]
    if not rows:
        return rows, []
    n_rows, n_cols = len(rows), len(rows[0])
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [x - factor * y for (x, y) in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return rows, pivots


def rank(m: Sequence[Sequence[Fraction]]) -> int:
    return len(row_reduce(m)[1])


def nullspace(m: Sequence[Sequence[Fraction]], n_cols: Optional[int] = None) -> Matrix:
    """Basis of {x : m x = 0}, one basis vector per free column."""
    if not m:
        assert n_cols is not None
        return identity(n_cols)
    reduced, pivots = row_reduce(m)
    n_cols = len(m[0])
    basis = []
    for free in (c for c in range(n_cols) if c not in pivots):
        x = [Fraction(0)] * n_cols
        x[free] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            x[pc] = -reduced[row_idx][free]
        basis.append(x)
    return basis


def inverse(m: Sequence[Sequence[Fraction]]) -> Optional[Matrix]:
    """Returns None when m is singular."""
    n = len(m)
    augmented = [list(row) + ident for row, ident in zip(m, identity(n))]
    reduced, pivots = row_reduce(augmented)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in reduced]


def solve(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> Optional[Vector]:
    """
    Solve a x = b.

    Returns:
        Optional[Vector]: The unique solution, or None when the system is
            inconsistent or underdetermined.
    """
    n_cols = len(a[0])
    augmented = [list(row) + [rhs] for row, rhs in zip(a, b)]
    reduced, pivots = row_reduce(augmented)
    if n_cols in pivots or len(pivots) < n_cols:
        return None
    return [reduced[i][n_cols] for i in range(n_cols)]


def determinant(m: Sequence[Sequence[Fraction]]) -> Fraction:
    rows = [list(r) for r in m]
    n = len(rows)
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = -det
        det *= rows[c][c]
        for i in range(c + 1, n):
            factor = rows[i][c] / rows[c][c]
            if factor:
                rows[i] = [x - factor * y for (x, y) in zip(rows[i], rows[c])]
    return det
