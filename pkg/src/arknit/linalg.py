"""Exact dense linear algebra over Q and over prime fields.

Matrices are immutable (tuples of tuples) so they can live inside hashable
representation nodes.  Everything is deterministic: kernel and cokernel bases
come from reduced echelon forms, never from randomized pivoting.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence


@dataclass(frozen=True)
class Field:
    """Scalar field: characteristic 0 means Q, a prime p means GF(p)."""

    char: int = 0

    def __post_init__(self):
        if self.char:
            p = self.char
            if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
                raise ValueError(f"field characteristic must be 0 or a prime, got {p}")

    def of(self, x):
        if self.char:
            if isinstance(x, Fraction):
                den = x.denominator % self.char
                if den == 0:
                    raise ZeroDivisionError(
                        f"denominator divisible by {self.char}")
                return (x.numerator * pow(den, self.char - 2, self.char)) \
                    % self.char
            return int(x) % self.char
        if isinstance(x, Fraction):
            return x
        return Fraction(x)

    @property
    def zero(self):
        return 0 if self.char else Fraction(0)

    @property
    def one(self):
        return 1 if self.char else Fraction(1)

    def add(self, a, b):
        return (a + b) % self.char if self.char else a + b

    def sub(self, a, b):
        return (a - b) % self.char if self.char else a - b

    def mul(self, a, b):
        return (a * b) % self.char if self.char else a * b

    def neg(self, a):
        return (-a) % self.char if self.char else -a

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverting zero field element")
        if self.char:
            return pow(a, self.char - 2, self.char)
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == 0

    def __repr__(self):
        return "QQ" if self.char == 0 else f"GF({self.char})"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


@dataclass(frozen=True)
class Mat:
    """Immutable dense matrix over a Field."""

    field: Field
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    @staticmethod
    def from_rows(field: Field, rows: Sequence[Sequence]) -> "Mat":
        rows = tuple(tuple(field.of(x) for x in r) for r in rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return Mat(field, len(rows), ncols, rows)

    @staticmethod
    def zeros(field: Field, rows: int, cols: int) -> "Mat":
        z = field.zero
        return Mat(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @staticmethod
    def identity(field: Field, n: int) -> "Mat":
        z, o = field.zero, field.one
        return Mat(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def col(self, j):
        return tuple(r[j] for r in self.entries)

    def is_zero(self) -> bool:
        F = self.field
        return all(F.is_zero(x) for r in self.entries for x in r)

    def transpose(self) -> "Mat":
        return Mat(self.field, self.cols, self.rows,
                   tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)))

    def add(self, other: "Mat") -> "Mat":
        F = self.field
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in add")
        return Mat(F, self.rows, self.cols,
                   tuple(tuple(F.add(a, b) for a, b in zip(r1, r2))
                         for r1, r2 in zip(self.entries, other.entries)))

    def sub(self, other: "Mat") -> "Mat":
        return self.add(other.scale(self.field.neg(self.field.one)))

    def scale(self, c) -> "Mat":
        F = self.field
        c = F.of(c)
        return Mat(F, self.rows, self.cols, tuple(tuple(F.mul(c, x) for x in r) for r in self.entries))

    def mul(self, other: "Mat") -> "Mat":
        F = self.field
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch in mul: {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        ot = other.transpose().entries
        z = F.zero
        out = []
        for r in self.entries:
            row = []
            for c in ot:
                acc = z
                for a, b in zip(r, c):
                    if a != 0 and b != 0:
                        acc = F.add(acc, F.mul(a, b))
                row.append(acc)
            out.append(tuple(row))
        return Mat(F, self.rows, other.cols, tuple(out))

    def apply(self, vec: Sequence) -> tuple:
        """Matrix times column vector (vector given as a flat sequence)."""
        F = self.field
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(
            _dot(F, r, vec) for r in self.entries
        )

    def hstack(self, other: "Mat") -> "Mat":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return Mat(self.field, self.rows, self.cols + other.cols,
                   tuple(r1 + r2 for r1, r2 in zip(self.entries, other.entries)))

    def vstack(self, other: "Mat") -> "Mat":
        if self.cols != other.cols:
            raise ValueError("col mismatch in vstack")
        return Mat(self.field, self.rows + other.rows, self.cols, self.entries + other.entries)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Mat":
        return Mat(self.field, len(row_idx), len(col_idx),
                   tuple(tuple(self.entries[i][j] for j in col_idx) for i in row_idx))


def _dot(F: Field, a, b):
    acc = F.zero
    for x, y in zip(a, b):
        if x != 0 and y != 0:
            acc = F.add(acc, F.mul(x, y))
    return acc


def block_matrix(field: Field, blocks: Sequence[Sequence[Optional[Mat]]],
                 row_dims: Sequence[int], col_dims: Sequence[int]) -> Mat:
    """Assemble a block matrix; None blocks mean zero."""
    rows = []
    for bi, rdim in enumerate(row_dims):
        for r in range(rdim):
            row = []
            for bj, cdim in enumerate(col_dims):
                blk = blocks[bi][bj]
                if blk is None:
                    row.extend([field.zero] * cdim)
                else:
                    if blk.rows != rdim or blk.cols != cdim:
                        raise ValueError("block shape mismatch")
                    row.extend(blk.entries[r])
            rows.append(tuple(row))
    return Mat(field, sum(row_dims), sum(col_dims), tuple(rows))


def rref(m: Mat):
    """Reduced row echelon form.  Returns (R, pivot_cols)."""
    F = m.field
    rows = [list(r) for r in m.entries]
    pivots = []
    r = 0
    for c in range(m.cols):
        pr = None
        for i in range(r, m.rows):
            if not F.is_zero(rows[i][c]):
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(m.rows):
            if i != r and not F.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    R = Mat(F, m.rows, m.cols, tuple(tuple(row) for row in rows))
    return R, tuple(pivots)


def rank(m: Mat) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Mat) -> Mat:
    """Columns form the canonical kernel basis (one per free column of rref)."""
    F = m.field
    R, pivots = rref(m)
    pivset = set(pivots)
    free = [c for c in range(m.cols) if c not in pivset]
    cols = []
    for fc in free:
        v = [F.zero] * m.cols
        v[fc] = F.one
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(R.entries[i][fc])
        cols.append(v)
    return Mat(F, m.cols, len(cols), tuple(tuple(v[i] for v in cols) for i in range(m.cols)))


def column_space_basis(m: Mat) -> Mat:
    """Canonical echelon basis of the column space, as columns."""
    R, pivots = rref(m.transpose())
    rows = [R.entries[i] for i in range(len(pivots))]
    return Mat(m.field, len(pivots), m.rows, tuple(rows)).transpose()


def coker_projection(m: Mat):
    """Projection onto a canonical complement of the column space.

    Returns (P, free_rows) with P*m == 0, P of shape (rows-rank) x rows, and
    free_rows naming the coordinate labels of the quotient basis.
    """
    F = m.field
    R, pivots = rref(m.transpose())  # rows of R: echelon basis of column space
    pivset = set(pivots)
    free = [j for j in range(m.rows) if j not in pivset]
    # reduce e_c against the echelon rows, then read coordinates at free slots
    rows = []
    for j in free:
        # value of projection at each input coordinate c
        row = []
        for c in range(m.rows):
            if c in pivset:
                i = pivots.index(c)
                row.append(F.neg(R.entries[i][j]))
            else:
                row.append(F.one if c == j else F.zero)
        rows.append(tuple(row))
    P = Mat(F, len(free), m.rows, tuple(rows))
    return P, tuple(free)


def solve(m: Mat, b: Sequence) -> Optional[tuple]:
    """One exact solution of m x = b with free variables set to zero, or None."""
    F = m.field
    aug = m.hstack(Mat(F, m.rows, 1, tuple((F.of(x),) for x in b)))
    R, pivots = rref(aug)
    if m.cols in pivots:
        return None
    x = [F.zero] * m.cols
    for i, pc in enumerate(pivots):
        x[pc] = R.entries[i][m.cols]
    return tuple(x)


def solve_matrix(m: Mat, b: Mat) -> Optional[Mat]:
    """Solve m X = b column by column; None if any column is inconsistent."""
    F = m.field
    aug = m.hstack(b)
    R, pivots = rref(aug)
    if any(p >= m.cols for p in pivots):
        return None
    cols = []
    for j in range(b.cols):
        x = [F.zero] * m.cols
        for i, pc in enumerate(pivots):
            x[pc] = R.entries[i][m.cols + j]
        cols.append(x)
    return Mat(F, m.cols, b.cols, tuple(tuple(c[i] for c in cols) for i in range(m.cols)))


def inverse(m: Mat) -> Optional[Mat]:
    if m.rows != m.cols:
        return None
    x = solve_matrix(m, Mat.identity(m.field, m.rows))
    if x is None:
        return None
    return x if rank(m) == m.rows else None


def is_invertible(m: Mat) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def min_poly(m: Mat) -> tuple:
    """Monic minimal polynomial of a square matrix, low degree first.

    Returned as a coefficient tuple (c0, c1, ..., 1).
    """
    if m.rows != m.cols:
        raise ValueError("min_poly needs a square matrix")
    F = m.field
    n = m.rows
    power = Mat.identity(F, n)
    stack = []  # vectorized powers as rows
    for _ in range(n + 1):
        stack.append(tuple(x for r in power.entries for x in r))
        A = Mat(F, len(stack), n * n, tuple(stack))
        k = kernel_basis(A.transpose())
        if k.cols > 0:
            # first dependency: normalize so the top (highest power) coeff is 1
            vec = [k.entries[i][0] for i in range(k.rows)]
            top = vec[-1]
            if F.is_zero(top):
                # canonical kernel basis puts 1 at the free coordinate; retry trimmed
                stack.pop()
                power = power.mul(m)
                continue
            inv = F.inv(top)
            return tuple(F.mul(inv, c) for c in vec)
        power = power.mul(m)
    raise RuntimeError("min_poly did not terminate")


def eval_poly(coeffs: Sequence, m: Mat) -> Mat:
    F = m.field
    out = Mat.zeros(F, m.rows, m.cols)
    power = Mat.identity(F, m.rows)
    for c in coeffs:
        if not F.is_zero(F.of(c)):
            out = out.add(power.scale(c))
        power = power.mul(m)
    return out


def fitting_split(m: Mat):
    """Kernel-stable and image-stable subspaces of a square matrix.

    Returns (K, I): columns of K span ker(m^n), columns of I span im(m^n).
    """
    if m.rows != m.cols:
        raise ValueError("fitting_split needs a square matrix")
    p = Mat.identity(m.field, m.rows)
    for _ in range(m.rows):
        p = p.mul(m)
    return kernel_basis(p), column_space_basis(p)
