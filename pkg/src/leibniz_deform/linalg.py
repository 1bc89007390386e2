"""Deterministic exact linear algebra over the rationals.

Scalars are ``fractions.Fraction`` values, which are always stored in lowest
terms with a positive denominator; no floating point is used anywhere.
Pivoting is fixed once and for all (first nonzero entry scanning
top-to-bottom, left-to-right; free variables zeroed in particular solutions)
so every result is byte-stable between runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .errors import DimensionMismatch, PreconditionError

F0 = Fraction(0)
F1 = Fraction(1)

Vec = tuple[Fraction, ...]


def as_scalar(x) -> Fraction:
    """Coerce an int, string like ``"3/4"`` or Fraction to an exact scalar."""
    return x if type(x) is Fraction else Fraction(x)


def vec(entries: Iterable) -> Vec:
    return tuple(as_scalar(x) for x in entries)


def zero_vec(n: int) -> Vec:
    return (F0,) * n


def vec_add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vec_scale(c: Fraction, a: Vec) -> Vec:
    return tuple(c * x for x in a)


def vec_is_zero(a: Vec) -> bool:
    return all(x == 0 for x in a)


@dataclass(frozen=True)
class Matrix:
    """Dense row-major matrix of exact rationals."""

    rows: int
    cols: int
    entries: tuple[Vec, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise DimensionMismatch("row count does not match entries")
        for row in self.entries:
            if len(row) != self.cols:
                raise DimensionMismatch("ragged matrix rows")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        entries = tuple(vec(r) for r in rows)
        ncols = len(entries[0]) if entries else 0
        return cls(len(entries), ncols, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: Optional[int] = None) -> "Matrix":
        cols = [vec(c) for c in columns]
        if nrows is None:
            if not cols:
                raise DimensionMismatch("cannot infer row count of an empty column list")
            nrows = len(cols[0])
        entries = tuple(tuple(c[i] for c in cols) for i in range(nrows))
        return cls(nrows, len(cols), entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, tuple(zero_vec(cols) for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(tuple(F1 if i == j else F0 for j in range(n)) for i in range(n)))

    def column(self, j: int) -> Vec:
        return tuple(row[j] for row in self.entries)

    def matvec(self, v: Sequence) -> Vec:
        if len(v) != self.cols:
            raise DimensionMismatch(f"matvec: {self.cols} columns vs vector of length {len(v)}")
        w = vec(v)
        return tuple(sum((r[j] * w[j] for j in range(self.cols) if w[j]), F0) for r in self.entries)

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch("matmul: inner dimensions differ")
        out = []
        for r in self.entries:
            nz = [(j, r[j]) for j in range(self.cols) if r[j]]
            row = [F0] * other.cols
            for j, c in nz:
                orow = other.entries[j]
                for k in range(other.cols):
                    if orow[k]:
                        row[k] += c * orow[k]
            out.append(tuple(row))
        return Matrix(self.rows, other.cols, tuple(out))

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(self.column(j) for j in range(self.cols)))

    def is_zero(self) -> bool:
        return all(vec_is_zero(r) for r in self.entries)


@dataclass(frozen=True)
class SubspaceBasis:
    """A list of linearly independent coordinate vectors in a fixed ambient space."""

    ambient_dim: int
    vectors: tuple[Vec, ...]

    def __post_init__(self):
        for v in self.vectors:
            if len(v) != self.ambient_dim:
                raise DimensionMismatch("basis vector length differs from ambient dimension")

    @property
    def dim(self) -> int:
        return len(self.vectors)


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and the (strictly increasing) pivot columns."""
    work = [list(row) for row in m.entries]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        pr = None
        for i in range(r, m.rows):
            if work[i][c]:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            work[r], work[pr] = work[pr], work[r]
        pv = work[r][c]
        if pv != 1:
            work[r] = [x / pv for x in work[r]]
        prow = work[r]
        for i in range(m.rows):
            f = work[i][c]
            if i != r and f:
                row = work[i]
                work[i] = [a - f * b for a, b in zip(row, prow)]
        pivots.append(c)
        r += 1
    return Matrix(m.rows, m.cols, tuple(tuple(row) for row in work)), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> SubspaceBasis:
    """Basis of the null space {v : m v = 0}.

    The basis is the standard free-variable one read off the reduced echelon
    form, with free variables taken in increasing column order.
    """
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    vectors = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = [F0] * m.cols
        v[f] = F1
        for ri, p in enumerate(pivots):
            v[p] = -reduced.entries[ri][f]
        vectors.append(tuple(v))
    return SubspaceBasis(m.cols, tuple(vectors))


def image_basis(m: Matrix) -> SubspaceBasis:
    """Basis of the column space: the original columns in pivot positions."""
    _, pivots = rref(m)
    return SubspaceBasis(m.rows, tuple(m.column(p) for p in pivots))


def solve(m: Matrix, rhs: Sequence) -> Optional[Vec]:
    """One exact solution of ``m x = rhs``, or None when the system is inconsistent.

    The returned solution is the particular one with every free variable set
    to zero, which makes it deterministic.
    """
    if len(rhs) != m.rows:
        raise DimensionMismatch(f"solve: {m.rows} rows vs right-hand side of length {len(rhs)}")
    b = vec(rhs)
    aug = Matrix(m.rows, m.cols + 1, tuple(row + (b[i],) for i, row in enumerate(m.entries)))
    reduced, pivots = rref(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [F0] * m.cols
    for ri, p in enumerate(pivots):
        x[p] = reduced.entries[ri][m.cols]
    return tuple(x)


def quotient_representatives(
    sub: SubspaceBasis, full: SubspaceBasis
) -> tuple[SubspaceBasis, Callable[[Sequence], Vec]]:
    """Extend ``sub`` to a basis of span(full) and return quotient coordinates.

    Representatives are chosen greedily from ``full`` in order.  The returned
    ``project`` callable maps any vector of span(full) to its coordinates on
    the representatives modulo span(sub).  It is a fault if ``sub`` is not
    contained in span(full).
    """
    if sub.ambient_dim != full.ambient_dim:
        raise DimensionMismatch("sub and full live in different ambient spaces")
    full_rank = rank(Matrix.from_rows(list(full.vectors)) if full.vectors else Matrix.zeros(0, full.ambient_dim))
    joint = list(full.vectors) + list(sub.vectors)
    joint_rank = rank(Matrix.from_rows(joint) if joint else Matrix.zeros(0, full.ambient_dim))
    if joint_rank != full_rank:
        raise PreconditionError("sub is not contained in the span of full")

    selected = list(sub.vectors)
    reps: list[Vec] = []
    cur_rank = rank(Matrix.from_rows(selected)) if selected else 0
    for v in full.vectors:
        if cur_rank == full_rank:
            break
        cand = rank(Matrix.from_rows(selected + [v]))
        if cand > cur_rank:
            selected.append(v)
            reps.append(v)
            cur_rank = cand

    columns = list(sub.vectors) + reps
    nsub = len(sub.vectors)
    span_matrix = Matrix.from_columns(columns, nrows=full.ambient_dim)

    def project(v: Sequence) -> Vec:
        sol = solve(span_matrix, v)
        if sol is None:
            raise PreconditionError("vector is not in the span of full")
        return sol[nsub:]

    return SubspaceBasis(full.ambient_dim, tuple(reps)), project
