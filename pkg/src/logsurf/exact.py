"""Exact rational linear algebra, LP feasibility, and 1-D quadratic minimization.

Everything in this module computes over fractions.Fraction. Floats are
rejected at the boundary: a float carries rounding error that would poison
every certificate built on top of it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Rational = Fraction


class SingularMatrix(Exception):
    pass


class NonSquare(Exception):
    pass


class NonSymmetric(Exception):
    pass


class DimensionMismatch(Exception):
    pass


class NotStrictlyConvex(Exception):
    pass


def rat(value: int | str | Rational) -> Rational:
    """Coerce to Fraction, rejecting floats.

    Accepts ints, Fractions, and strings like "3", "-2/7".
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a rational value")
    if isinstance(value, float):
        raise TypeError("floats are not allowed in exact computations; pass a Fraction or 'p/q' string")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational number")


@dataclass(frozen=True)
class QMatrix:
    """Dense rational matrix, row-major."""

    rows: int
    cols: int
    entries: tuple[Rational, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        object.__setattr__(self, "entries", tuple(rat(e) for e in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int | str | Rational]]) -> QMatrix:
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged rows")
        return cls(nrows, ncols, tuple(rat(e) for r in rows for e in r))

    @classmethod
    def identity(cls, n: int) -> QMatrix:
        return cls(n, n, tuple(Fraction(1 if i == j else 0) for i in range(n) for j in range(n)))

    def at(self, i: int, j: int) -> Rational:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Rational, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple[Rational, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_lists(self) -> list[list[Rational]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> QMatrix:
        return QMatrix(self.cols, self.rows, tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows)))

    def matmul(self, other: QMatrix) -> QMatrix:
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        ent = []
        for i in range(self.rows):
            for j in range(other.cols):
                ent.append(sum((self.at(i, k) * other.at(k, j) for k in range(self.cols)), Fraction(0)))
        return QMatrix(self.rows, other.cols, tuple(ent))

    def apply(self, v: Sequence[Rational]) -> tuple[Rational, ...]:
        if len(v) != self.cols:
            raise DimensionMismatch("vector length does not match matrix columns")
        return tuple(sum((self.at(i, j) * v[j] for j in range(self.cols)), Fraction(0)) for i in range(self.rows))

    def is_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(self.at(i, j) == self.at(j, i) for i in range(self.rows) for j in range(i))

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> QMatrix:
        ent = tuple(self.at(i, j) for i in row_idx for j in col_idx)
        return QMatrix(len(row_idx), len(col_idx), ent)


def solve_linear(m: QMatrix, v: Sequence[Rational]) -> tuple[Rational, ...]:
    """Solve m @ x = v exactly. Raises SingularMatrix when no unique solution exists."""
    if m.rows != m.cols:
        raise NonSquare(f"solve_linear needs a square matrix, got {m.rows}x{m.cols}")
    if len(v) != m.rows:
        raise DimensionMismatch("right-hand side length does not match matrix")
    n = m.rows
    a = m.to_lists()
    rhs = [rat(x) for x in v]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularMatrix(f"zero pivot column {col}")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            rhs[col], rhs[piv] = rhs[piv], rhs[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [x * inv for x in a[col]]
        rhs[col] *= inv
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                rhs[r] -= f * rhs[col]
    return tuple(rhs)


def determinant(m: QMatrix) -> Rational:
    """Exact determinant. The empty 0x0 matrix has determinant 1."""
    if m.rows != m.cols:
        raise NonSquare(f"determinant needs a square matrix, got {m.rows}x{m.cols}")
    n = m.rows
    if n == 0:
        return Fraction(1)
    a = m.to_lists()
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = Fraction(1) / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def is_negative_definite(m: QMatrix) -> bool:
    """Sylvester test via elimination pivots: every pivot must be negative.

    A zero pivot means a vanishing leading principal minor, which already
    rules out definiteness, so that case returns False rather than raising.
    """
    if m.rows != m.cols:
        raise NonSquare(f"definiteness needs a square matrix, got {m.rows}x{m.cols}")
    if not m.is_symmetric():
        raise NonSymmetric("definiteness is only defined for symmetric matrices here")
    n = m.rows
    a = m.to_lists()
    for k in range(n):
        piv = a[k][k]
        if piv >= 0:
            return False
        inv = Fraction(1) / piv
        for r in range(k + 1, n):
            if a[r][k] != 0:
                f = a[r][k] * inv
                for c in range(k, n):
                    a[r][c] -= f * a[k][c]
    return True


@dataclass(frozen=True)
class FeasibilityResult:
    """Outcome of lp_feasible.

    Exactly one of x, y is set. x is a nonnegative solution of A x = b;
    y is a Farkas certificate with y^T A <= 0 and y^T b > 0.
    """

    feasible: bool
    x: tuple[Rational, ...] | None = None
    y: tuple[Rational, ...] | None = None


def lp_feasible(a: QMatrix, b: Sequence[Rational]) -> FeasibilityResult:
    """Decide whether {x >= 0 : A x = b} is nonempty, exactly.

    Phase-1 simplex with Bland's rule, so termination is guaranteed. On
    infeasibility the returned y is read off the final basis inverse and
    certifies the empty intersection via Farkas.
    """
    if len(b) != a.rows:
        raise DimensionMismatch("b length does not match number of rows")
    m, n = a.rows, a.cols
    rhs = [rat(x) for x in b]
    tab = a.to_lists()
    flipped = []
    for i in range(m):
        if rhs[i] < 0:
            tab[i] = [-x for x in tab[i]]
            rhs[i] = -rhs[i]
            flipped.append(True)
        else:
            flipped.append(False)
    # Tableau columns: n structural, m artificial (identity), m basis-inverse
    # tracker (second identity copy), then rhs.
    width = n + 2 * m
    rows = []
    for i in range(m):
        row = list(tab[i]) + [Fraction(0)] * (2 * m)
        row[n + i] = Fraction(1)
        row[n + m + i] = Fraction(1)
        rows.append(row + [rhs[i]])
    basis = [n + i for i in range(m)]
    cost = [Fraction(0)] * n + [Fraction(1)] * m + [Fraction(0)] * m

    def reduced_cost(j: int) -> Rational:
        return cost[j] - sum((cost[basis[i]] * rows[i][j] for i in range(m)), Fraction(0))

    while True:
        # Bland's rule over structural columns only; a departed artificial is
        # never allowed back, which keeps both termination and the Farkas
        # certificate valid.
        entering = None
        for j in range(n):
            if reduced_cost(j) < 0:
                entering = j
                break
        if entering is None:
            break
        leave = None
        best = None
        for i in range(m):
            if rows[i][entering] > 0:
                ratio = rows[i][width] / rows[i][entering]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            raise AssertionError("phase-1 objective is bounded; no unbounded ray can appear")
        piv = rows[leave][entering]
        rows[leave] = [x / piv for x in rows[leave]]
        for i in range(m):
            if i != leave and rows[i][entering] != 0:
                f = rows[i][entering]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[leave])]
        basis[leave] = entering

    objective = sum((rows[i][width] for i in range(m) if basis[i] >= n), Fraction(0))
    if objective == 0:
        x = [Fraction(0)] * n
        for i in range(m):
            if basis[i] < n:
                x[basis[i]] = rows[i][width]
        return FeasibilityResult(feasible=True, x=tuple(x))
    # y^T = (phase-1 costs of basic vars)^T B^{-1}, then undo row flips.
    y = []
    for i in range(m):
        yi = sum((rows[r][n + m + i] for r in range(m) if basis[r] >= n), Fraction(0))
        y.append(-yi if flipped[i] else yi)
    return FeasibilityResult(feasible=False, y=tuple(y))


@dataclass(frozen=True)
class QuadraticForm1D:
    """One-variable quadratic a*t^2 + b*t + c."""

    a: Rational
    b: Rational
    c: Rational

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", rat(self.a))
        object.__setattr__(self, "b", rat(self.b))
        object.__setattr__(self, "c", rat(self.c))

    @classmethod
    def from_composite(
        cls,
        alpha: int | str | Rational,
        beta: int | str | Rational,
        gamma: int | str | Rational,
        delta: int | str | Rational,
    ) -> QuadraticForm1D:
        """Build alpha*(beta*t - gamma)^2 + delta*(1 - t)^2, expanded."""
        al, be, ga, de = rat(alpha), rat(beta), rat(gamma), rat(delta)
        return cls(al * be * be + de, -2 * al * be * ga - 2 * de, al * ga * ga + de)

    def evaluate(self, t: int | str | Rational) -> Rational:
        tt = rat(t)
        return self.a * tt * tt + self.b * tt + self.c


def minimize_quadratic(q: QuadraticForm1D) -> tuple[Rational, Rational]:
    """Return (argmin, min) of a strictly convex 1-D quadratic."""
    if q.a <= 0:
        raise NotStrictlyConvex(f"leading coefficient {q.a} is not positive")
    t_star = -q.b / (2 * q.a)
    return t_star, q.evaluate(t_star)
