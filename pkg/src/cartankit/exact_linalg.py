"""Exact rational matrices, an elimination oracle and two inverse-update combinators.

Every scalar is a :class:`fractions.Fraction`.  Matrices and vectors are
immutable; all indices taken by the public accessors are 1-based so that
formula code can be transcribed with the usual subscripts.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Sequence

Rational = Fraction


class SingularError(ArithmeticError):
    """Raised when a matrix that must be inverted is singular."""

    def __init__(self, message: str, rank: int | None = None):
        super().__init__(message)
        self.rank = rank


class UpdateSingularError(ArithmeticError):
    """Raised when ``1 + d^T A^{-1} c`` vanishes in a rank-one update."""


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` (or an int/Fraction) into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    s = text.strip()
    if "." in s or "e" in s.lower():
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(s)


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class Vector:
    __slots__ = ("entries",)

    def __init__(self, entries: Iterable):
        object.__setattr__(self, "entries", tuple(_as_fraction(x) for x in entries))

    def __setattr__(self, name, value):
        raise AttributeError("Vector is immutable")

    @classmethod
    def unit(cls, n: int, i: int) -> Vector:
        """The standard basis vector e_i of length n (1-based)."""
        if not 1 <= i <= n:
            raise IndexError(f"unit vector index {i} out of range 1..{n}")
        return cls(Fraction(int(k == i)) for k in range(1, n + 1))

    @classmethod
    def zeros(cls, n: int) -> Vector:
        return cls([0] * n)

    @property
    def length(self) -> int:
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        if not 1 <= i <= len(self.entries):
            raise IndexError(f"vector index {i} out of range 1..{len(self.entries)}")
        return self.entries[i - 1]

    def __eq__(self, other):
        return isinstance(other, Vector) and self.entries == other.entries

    def __hash__(self):
        return hash(("Vector", self.entries))

    def __repr__(self):
        return "Vector([" + ", ".join(format_rational(q) for q in self.entries) + "])"

    def _check(self, other: Vector):
        if len(other) != len(self):
            raise ValueError(f"vector length mismatch: {len(self)} vs {len(other)}")

    def __add__(self, other: Vector) -> Vector:
        self._check(other)
        return Vector(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other: Vector) -> Vector:
        self._check(other)
        return Vector(a - b for a, b in zip(self.entries, other.entries))

    def __neg__(self) -> Vector:
        return Vector(-a for a in self.entries)

    def scale(self, q) -> Vector:
        q = _as_fraction(q)
        return Vector(q * a for a in self.entries)

    def dot(self, other: Vector) -> Fraction:
        self._check(other)
        return sum((a * b for a, b in zip(self.entries, other.entries) if a and b), Fraction(0))

    def as_column(self) -> Matrix:
        return Matrix(len(self), 1, self.entries)

    def as_row(self) -> Matrix:
        return Matrix(1, len(self), self.entries)


class Matrix:
    """Dense immutable matrix of Fractions stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(_as_fraction(x) for x in entries)
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _trusted(cls, rows: int, cols: int, entries: tuple) -> Matrix:
        # entries already a tuple of Fractions
        m = object.__new__(cls)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "cols", cols)
        object.__setattr__(m, "entries", entries)
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> Matrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def from_function(cls, rows: int, cols: int, f: Callable[[int, int], object]) -> Matrix:
        """Build from ``f(i, j)`` evaluated on 1-based indices."""
        conv = _as_fraction
        return cls._trusted(rows, cols, tuple(conv(f(i, j)) for i in range(1, rows + 1)
                                              for j in range(1, cols + 1)))

    @classmethod
    def identity(cls, n: int) -> Matrix:
        one, zero = Fraction(1), Fraction(0)
        return cls._trusted(n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls._trusted(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def block(cls, blocks: Sequence[Sequence[Matrix]]) -> Matrix:
        """Assemble a block matrix; blocks in a block-row share a row count."""
        out: list[Fraction] = []
        total_cols = None
        nrows = 0
        for brow in blocks:
            h = brow[0].rows
            if any(b.rows != h for b in brow):
                raise ValueError("blocks in a block-row must have equal heights")
            w = sum(b.cols for b in brow)
            if total_cols is None:
                total_cols = w
            elif w != total_cols:
                raise ValueError("block-rows must have equal total widths")
            for r in range(h):
                for b in brow:
                    out.extend(b.entries[r * b.cols:(r + 1) * b.cols])
            nrows += h
        return cls._trusted(nrows, total_cols or 0, tuple(out))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def entry(self, i: int, j: int) -> Fraction:
        """Entry at 1-based position (i, j)."""
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexError(f"index ({i}, {j}) outside {self.rows}x{self.cols}")
        return self.entries[(i - 1) * self.cols + (j - 1)]

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        return self.entry(*ij)

    def row(self, i: int) -> tuple[Fraction, ...]:
        if not 1 <= i <= self.rows:
            raise IndexError(f"row {i} outside 1..{self.rows}")
        return self.entries[(i - 1) * self.cols:i * self.cols]

    def column(self, j: int) -> tuple[Fraction, ...]:
        if not 1 <= j <= self.cols:
            raise IndexError(f"column {j} outside 1..{self.cols}")
        return self.entries[j - 1::self.cols]

    def tolist(self) -> list[list[Fraction]]:
        c = self.cols
        return [list(self.entries[r * c:(r + 1) * c]) for r in range(self.rows)]

    def transpose(self) -> Matrix:
        r, c = self.rows, self.cols
        e = self.entries
        return Matrix._trusted(c, r, tuple(e[i * c + j] for j in range(c) for i in range(r)))

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def is_symmetric(self) -> bool:
        return self.is_square and self == self.transpose()

    def _same_shape(self, other: Matrix):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        self._same_shape(other)
        return Matrix._trusted(self.rows, self.cols,
                               tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: Matrix) -> Matrix:
        self._same_shape(other)
        return Matrix._trusted(self.rows, self.cols,
                               tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> Matrix:
        return Matrix._trusted(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, q) -> Matrix:
        q = _as_fraction(q)
        return Matrix._trusted(self.rows, self.cols, tuple(q * a for a in self.entries))

    def __matmul__(self, other: Matrix) -> Matrix:
        return mat_mul(self, other)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.shape == other.shape
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_rational(q) for q in r) + "]" for r in self.tolist())
        return f"Matrix([{body}])"

    def permuted(self, order: Sequence[int]) -> Matrix:
        """Simultaneous row/column relabeling: result[a, b] = self[order[a], order[b]].

        ``order`` lists 1-based labels of ``self``; ``P M P^T`` for the
        corresponding permutation matrix P.
        """
        if not self.is_square or sorted(order) != list(range(1, self.rows + 1)):
            raise ValueError("order must be a permutation of 1..n on a square matrix")
        n = self.rows
        e = self.entries
        return Matrix._trusted(n, n, tuple(e[(a - 1) * n + (b - 1)] for a in order for b in order))


def outer(c: Vector, d: Vector) -> Matrix:
    """The rank-one matrix c d^T."""
    return Matrix._trusted(len(c), len(d), tuple(a * b for a in c.entries for b in d.entries))


def _nonzero_rows(M: Matrix) -> list[list[tuple[int, Fraction]]]:
    c = M.cols
    e = M.entries
    return [[(j, e[r * c + j]) for j in range(c) if e[r * c + j]] for r in range(M.rows)]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    """Exact product A B; zero entries are skipped, which keeps banded products cheap."""
    if A.cols != B.rows:
        raise ValueError(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    bnz = _nonzero_rows(B)
    zero = Fraction(0)
    n, p = B.cols, A.cols
    ae = A.entries
    out: list[Fraction] = []
    for i in range(A.rows):
        acc = [zero] * n
        base = i * p
        for k in range(p):
            a = ae[base + k]
            if not a:
                continue
            for j, b in bnz[k]:
                acc[j] += a * b
        out.extend(acc)
    return Matrix._trusted(A.rows, n, tuple(out))


def mat_vec(A: Matrix, v: Vector) -> Vector:
    if A.cols != len(v):
        raise ValueError(f"cannot apply {A.rows}x{A.cols} matrix to length-{len(v)} vector")
    nz = [(k, x) for k, x in enumerate(v.entries) if x]
    c = A.cols
    e = A.entries
    return Vector(sum((e[i * c + k] * x for k, x in nz), Fraction(0)) for i in range(A.rows))


def vec_mat(v: Vector, A: Matrix) -> Vector:
    """The row vector v^T A, returned as a Vector."""
    return mat_vec(A.transpose(), v)


def is_identity(M: Matrix) -> bool:
    if not M.is_square:
        return False
    n = M.cols
    return all(x == (k // n == k % n) for k, x in enumerate(M.entries))


def rank(M: Matrix) -> int:
    """Rank by plain rational row reduction."""
    rows = M.tolist()
    r = 0
    for col in range(M.cols):
        piv = next((p for p in range(r, M.rows) if rows[p][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        for i in range(r + 1, M.rows):
            f = rows[i][col]
            if f:
                f = f / pr[col]
                rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        r += 1
    return r


def invert_exact(M: Matrix) -> Matrix:
    """Inverse by fraction-free Gauss-Jordan elimination.

    Rows are first cleared of denominators, then ``[K | I]`` is reduced over
    the integers using the first nonzero pivot of each column; every
    division in the loop is exact.  Columns whose value is already known
    (reduced left columns, and identity columns of rows not yet used as a
    pivot) are kept implicit, so each step touches about ``n + 1`` entries
    per row rather than ``2n``.
    """
    if not M.is_square:
        raise ValueError(f"cannot invert a non-square {M.rows}x{M.cols} matrix")
    n = M.rows
    if n == 0:
        return M
    scales = []
    left = []
    for r in M.tolist():
        lcm = math.lcm(*(q.denominator for q in r))
        scales.append(lcm)
        left.append([int(q * lcm) for q in r])
    # right[r][s]: right-half entry of row r in the column of the row pivoted at step s
    right: list[list[int]] = [[] for _ in range(n)]
    orig = list(range(n))
    prev = 1
    for col in range(n):
        p = next((p for p in range(col, n) if left[p][col]), None)
        if p is None:
            rk = rank(M)
            raise SingularError(f"matrix is singular (rank {rk} < {n})", rank=rk)
        if p != col:
            left[p], left[col] = left[col], left[p]
            right[p], right[col] = right[col], right[p]
            orig[p], orig[col] = orig[col], orig[p]
        for r in range(n):
            right[r].append(prev if r == col else 0)
        pl = left[col][col:]
        pr = right[col]
        piv = pl[0]
        for i in range(n):
            if i == col:
                continue
            a = left[i][col]
            if a:
                left[i][col:] = [(piv * x - a * y) // prev for x, y in zip(left[i][col:], pl)]
                right[i] = [(piv * x - a * y) // prev for x, y in zip(right[i], pr)]
            elif piv != prev:
                left[i][col:] = [piv * x // prev for x in left[i][col:]]
                right[i] = [piv * x // prev for x in right[i]]
        prev = piv
    inv = [[0] * n for _ in range(n)]
    for i in range(n):
        row = inv[i]
        for s, x in enumerate(right[i]):
            row[orig[s]] = x
    out = tuple(Fraction(inv[i][j] * scales[j], prev) for i in range(n) for j in range(n))
    return Matrix._trusted(n, n, out)


def rank_one_update_inverse(Ainv: Matrix, c: Vector, d: Vector) -> Matrix:
    """Inverse of ``A + c d^T`` given ``A^{-1}`` (Sherman-Morrison)."""
    if not Ainv.is_square:
        raise ValueError("Ainv must be square")
    n = Ainv.rows
    if len(c) != n or len(d) != n:
        raise ValueError(f"update vectors must have length {n}")
    u = mat_vec(Ainv, c)
    w = vec_mat(d, Ainv)
    denom = 1 + d.dot(u)
    if denom == 0:
        raise UpdateSingularError("1 + d^T A^{-1} c = 0; A + c d^T is singular")
    ue = [x / denom for x in u.entries]
    we = w.entries
    ae = Ainv.entries
    out = tuple(ae[i * n + j] - ue[i] * we[j] if ue[i] and we[j] else ae[i * n + j]
                for i in range(n) for j in range(n))
    return Matrix._trusted(n, n, out)


def block_inverse(Tinv: Matrix, U: Matrix, V: Matrix, W: Matrix,
                  schur_inverse: Matrix | None = None) -> Matrix:
    """Inverse of ``[[T, U], [V, W]]`` given ``T^{-1}``, via the Schur complement.

    ``S = W - V T^{-1} U``.  When the caller already knows ``S^{-1}`` it can
    pass it as ``schur_inverse``; it is checked against ``S`` and a
    ``ValueError`` is raised on mismatch.  Otherwise a 1x1 complement is
    inverted directly and a larger one with :func:`invert_exact`.
    """
    p, q = Tinv.rows, W.rows
    if not Tinv.is_square or not W.is_square:
        raise ValueError("Tinv and W must be square")
    if U.shape != (p, q) or V.shape != (q, p):
        raise ValueError(f"U must be {p}x{q} and V {q}x{p}; got {U.shape} and {V.shape}")
    X = mat_mul(Tinv, U)
    Y = mat_mul(V, Tinv)
    S = W - mat_mul(V, X)
    if schur_inverse is not None:
        if schur_inverse.shape != (q, q) or not is_identity(mat_mul(S, schur_inverse)):
            raise ValueError("supplied schur_inverse does not invert the Schur complement")
        Sinv = schur_inverse
    elif q == 1:
        s = S.entries[0]
        if s == 0:
            raise SingularError("Schur complement is singular (S = 0)", rank=0)
        Sinv = Matrix._trusted(1, 1, (1 / s,))
    else:
        Sinv = invert_exact(S)
    Z = mat_mul(X, Sinv)
    top_left = Tinv + mat_mul(Z, Y)
    return Matrix.block([[top_left, -Z], [-mat_mul(Sinv, Y), Sinv]])
