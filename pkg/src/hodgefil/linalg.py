"""Dense exact linear algebra over Q and over F_p.

Matrices are lists of rows of :class:`fractions.Fraction`.  Nothing here
mutates its arguments.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


class SingularMatrix(ArithmeticError):
    pass


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[x if type(x) is Fraction else Fraction(x) for x in row] for row in rows]


def zeros(m: int, n: int | None = None) -> Matrix:
    return [[Fraction(0)] * (m if n is None else n) for _ in range(m)]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def symplectic_form(g: int) -> Matrix:
    """[[0, I], [-I, 0]] of size 2g."""
    C = zeros(2 * g)
    for i in range(g):
        C[i][g + i] = Fraction(1)
        C[g + i][i] = Fraction(-1)
    return C


def transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    Bt = transpose(B)
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in Bt] for row in A]


def matvec(A: Matrix, v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((a * x for a, x in zip(row, v)), Fraction(0)) for row in A]


def add(A: Matrix, B: Matrix) -> Matrix:
    return [[a + b for a, b in zip(r, s)] for r, s in zip(A, B)]


def scale(c, A: Matrix) -> Matrix:
    c = Fraction(c)
    return [[c * a for a in row] for row in A]


def trace(A: Matrix) -> Fraction:
    return sum((A[i][i] for i in range(len(A))), Fraction(0))


def is_scalar(A: Matrix) -> bool:
    n = len(A)
    return all(A[i][j] == (A[0][0] if i == j else 0) for i in range(n) for j in range(n))


def block(A: Matrix, rows: range, cols: range) -> Matrix:
    return [[A[i][j] for j in cols] for i in rows]


def rref(A: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = [row[:] for row in A]
    pivots: list[int] = []
    m = len(R)
    n = len(R[0]) if R else 0
    r = 0
    for c in range(n):
        if r == m:
            break
        k = next((i for i in range(r, m) if R[i][c]), None)
        if k is None:
            continue
        R[r], R[k] = R[k], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(m):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(A: Matrix) -> int:
    return len(rref(A)[1]) if A else 0


def det(A: Matrix) -> Fraction:
    n = len(A)
    R = [row[:] for row in A]
    d = Fraction(1)
    for c in range(n):
        k = next((i for i in range(c, n) if R[i][c]), None)
        if k is None:
            return Fraction(0)
        if k != c:
            R[c], R[k] = R[k], R[c]
            d = -d
        p = R[c][c]
        d *= p
        for i in range(c + 1, n):
            if R[i][c]:
                f = R[i][c] / p
                R[i] = [x - f * y for x, y in zip(R[i], R[c])]
    return d


def inverse(A: Matrix) -> Matrix:
    n = len(A)
    aug = [list(row) + identity(n)[i] for i, row in enumerate(A)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return [row[n:] for row in R]


def solve(A: Matrix, b: Sequence[Fraction]) -> list[Fraction]:
    """Unique x with A x = b; A may have more rows than columns.

    Raises ValueError if the system is inconsistent and SingularMatrix if the
    solution is not unique.
    """
    n = len(A[0])
    aug = [list(row) + [Fraction(v)] for row, v in zip(A, b)]
    R, piv = rref(aug)
    if n in piv:
        raise ValueError("inconsistent system")
    if len(piv) < n:
        raise SingularMatrix(f"solution not unique: rank {len(piv)} < {n}")
    return [R[i][n] for i in range(n)]


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank over F_p by Gaussian elimination on integer residues."""
    R = [[x % p for x in row] for row in rows]
    if not R:
        return 0
    m, n = len(R), len(R[0])
    r = 0
    for c in range(n):
        if r == m:
            break
        k = next((i for i in range(r, m) if R[i][c]), None)
        if k is None:
            continue
        R[r], R[k] = R[k], R[r]
        inv = pow(R[r][c], -1, p)
        R[r] = [x * inv % p for x in R[r]]
        pr = R[r]
        for i in range(r + 1, m):
            f = R[i][c]
            if f:
                R[i] = [(x - f * y) % p for x, y in zip(R[i], pr)]
        r += 1
    return r


def fmt(A: Matrix) -> list[list[str]]:
    return [[_fs(x) for x in row] for row in A]


def parse(rows) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def _fs(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
