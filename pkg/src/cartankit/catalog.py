"""Cartan matrices of the simple Lie algebras and the distinguished Cartan
matrices of the basic classical Lie superalgebras.

All matrices use 1-based labels.  Two low-rank superalgebra cases need a
connection convention that the usual block pictures do not pin down; they
are documented on :func:`build_super`.  Passing ``literal_blocks=True``
builds the naive block reading instead, which is kept only so the mismatch
can be demonstrated.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .exact_linalg import Matrix, format_rational, parse_rational


class InvalidParams(ValueError):
    """A family descriptor violates its parameter bounds."""


class Family(str, enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    S = "S"
    R = "R"
    E6 = "E6"
    E7 = "E7"
    E8 = "E8"
    F4 = "F4"
    G2 = "G2"
    SuperA = "superA"
    SuperB = "superB"
    SuperB0 = "superB0"
    SuperC = "superC"
    SuperD = "superD"
    D21Alpha = "D21alpha"
    SuperF4 = "superF4"
    SuperG3 = "superG3"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, text: str) -> Family:
        key = text.strip().lower()
        for f in cls:
            if f.value.lower() == key or f.name.lower() == key:
                return f
        raise InvalidParams(f"unknown family {text!r}")


SIMPLE = frozenset({Family.A, Family.B, Family.C, Family.D, Family.S, Family.R,
                    Family.E6, Family.E7, Family.E8, Family.F4, Family.G2})
SUPER = frozenset(set(Family) - SIMPLE)
EXCEPTIONAL = frozenset({Family.E6, Family.E7, Family.E8, Family.F4, Family.G2,
                         Family.D21Alpha, Family.SuperF4, Family.SuperG3})
# families whose size is fixed and that take no rank parameter
_FIXED_SIZE = {Family.E6: 6, Family.E7: 7, Family.E8: 8, Family.F4: 4, Family.G2: 2,
               Family.D21Alpha: 3, Family.SuperF4: 4, Family.SuperG3: 3}


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    n: int = 0
    m: int = 0
    alpha: Fraction | None = None

    def __post_init__(self):
        if not isinstance(self.family, Family):
            object.__setattr__(self, "family", Family.parse(str(self.family)))
        if self.alpha is not None and not isinstance(self.alpha, Fraction):
            object.__setattr__(self, "alpha", parse_rational(self.alpha))

    def label(self) -> str:
        f = self.family
        if f in (Family.SuperA, Family.SuperB, Family.SuperD):
            return f"{f}(m={self.m},n={self.n})"
        if f is Family.D21Alpha:
            return f"{f}(alpha={format_rational(self.alpha)})" if self.alpha is not None else str(f)
        if f in _FIXED_SIZE:
            return str(f)
        return f"{f}(n={self.n})"

    def params(self) -> dict:
        """Parameters as plain JSON-ready values."""
        f = self.family
        out: dict = {}
        if f in (Family.SuperA, Family.SuperB, Family.SuperD):
            out["m"] = self.m
        if f not in _FIXED_SIZE:
            out["n"] = self.n
        if f is Family.D21Alpha:
            out["alpha"] = format_rational(self.alpha) if self.alpha is not None else None
        return out


_MIN_N = {Family.A: 1, Family.B: 2, Family.C: 2, Family.D: 2, Family.S: 1, Family.R: 2,
          Family.SuperB0: 2, Family.SuperC: 2}


def validate(spec: FamilySpec) -> None:
    f, m, n = spec.family, spec.m, spec.n
    if f in _MIN_N:
        if n < _MIN_N[f]:
            raise InvalidParams(f"{f} requires n >= {_MIN_N[f]}, got n={n}")
    elif f is Family.SuperA:
        if m < 0 or n < 0:
            raise InvalidParams(f"superA requires m, n >= 0, got m={m}, n={n}")
        if m == n:
            raise InvalidParams(f"superA requires m != n (A(n,n) has a singular Cartan matrix), got m=n={n}")
    elif f is Family.SuperB:
        if m < 1 or n < 1:
            raise InvalidParams(f"superB requires m >= 1 and n >= 1, got m={m}, n={n}")
    elif f is Family.SuperD:
        if m < 2 or n < 1:
            raise InvalidParams(f"superD requires m >= 2 and n >= 1, got m={m}, n={n}")
    elif f is Family.D21Alpha:
        if spec.alpha is None:
            raise InvalidParams("D21alpha requires alpha")
        if spec.alpha in (0, -1):
            raise InvalidParams(f"D21alpha requires alpha not in {{0, -1}}, got alpha={format_rational(spec.alpha)}")
    if f is not Family.D21Alpha and spec.alpha is not None:
        raise InvalidParams(f"alpha is only meaningful for D21alpha, not {f}")


def size_of(spec: FamilySpec) -> int:
    validate(spec)
    f = spec.family
    if f in _FIXED_SIZE:
        return _FIXED_SIZE[f]
    if f is Family.SuperA:
        return spec.m + spec.n + 1
    if f in (Family.SuperB, Family.SuperD):
        return spec.m + spec.n
    return spec.n


def _chain(n: int, diag: int = 2, off: int = -1) -> list[list[int]]:
    """n x n tridiagonal integer array (0-based lists)."""
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = diag
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = off
    return a


def _type_d(n: int) -> list[list[int]]:
    """D_n with the fork on nodes n-1, n; D_2 = diag(2, 2), D_3 has node 1 as the branch point."""
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
    for i in range(n - 3):
        a[i][i + 1] = a[i + 1][i] = -1
    if n >= 3:
        for k in (n - 2, n - 1):
            a[n - 3][k] = a[k][n - 3] = -1
    return a


def _put(a: list[list[int]], block: list[list[int]], offset: int) -> None:
    for i, r in enumerate(block):
        for j, x in enumerate(r):
            a[offset + i][offset + j] = x


_EXCEPTIONAL_CARTAN = {
    Family.E6: [
        [2, 0, -1, 0, 0, 0],
        [0, 2, 0, -1, 0, 0],
        [-1, 0, 2, -1, 0, 0],
        [0, -1, -1, 2, -1, 0],
        [0, 0, 0, -1, 2, -1],
        [0, 0, 0, 0, -1, 2],
    ],
    Family.E7: [
        [2, 0, -1, 0, 0, 0, 0],
        [0, 2, 0, -1, 0, 0, 0],
        [-1, 0, 2, -1, 0, 0, 0],
        [0, -1, -1, 2, -1, 0, 0],
        [0, 0, 0, -1, 2, -1, 0],
        [0, 0, 0, 0, -1, 2, -1],
        [0, 0, 0, 0, 0, -1, 2],
    ],
    Family.E8: [
        [2, 0, -1, 0, 0, 0, 0, 0],
        [0, 2, 0, -1, 0, 0, 0, 0],
        [-1, 0, 2, -1, 0, 0, 0, 0],
        [0, -1, -1, 2, -1, 0, 0, 0],
        [0, 0, 0, -1, 2, -1, 0, 0],
        [0, 0, 0, 0, -1, 2, -1, 0],
        [0, 0, 0, 0, 0, -1, 2, -1],
        [0, 0, 0, 0, 0, 0, -1, 2],
    ],
    Family.F4: [
        [2, -1, 0, 0],
        [-1, 2, -2, 0],
        [0, -1, 2, -1],
        [0, 0, -1, 2],
    ],
    Family.G2: [
        [2, -1],
        [-3, 2],
    ],
    Family.SuperF4: [
        [0, 1, 0, 0],
        [-1, 2, -2, 0],
        [0, -1, 2, -1],
        [0, 0, -1, 2],
    ],
    Family.SuperG3: [
        [0, 1, 0],
        [-1, 2, -3],
        [0, -1, 2],
    ],
}


def build_simple(spec: FamilySpec) -> Matrix:
    validate(spec)
    f, n = spec.family, spec.n
    if f is Family.A:
        a = _chain(n)
    elif f is Family.B:
        a = _chain(n)
        a[n - 2][n - 1] = -2
    elif f is Family.C:
        a = _chain(n)
        a[n - 1][n - 2] = -2
    elif f is Family.D:
        a = _type_d(n)
    elif f is Family.S:
        a = _chain(n)
        a[n - 1][n - 1] = 1
    elif f is Family.R:
        a = _chain(n)
        a[n - 1][n - 1] = 0
    elif f in _EXCEPTIONAL_CARTAN and f in SIMPLE:
        a = _EXCEPTIONAL_CARTAN[f]
    else:
        raise InvalidParams(f"{f} is not a simple Lie algebra family")
    return Matrix.from_rows(a)


def _isotropic_chain(n: int, rest: list[list[int]]) -> list[list[int]]:
    """``[[-A_{n-1}, 1], [1, 0]]`` followed by the block ``rest``; no connection yet."""
    size = n + len(rest)
    a = [[0] * size for _ in range(size)]
    _put(a, _chain(n - 1, diag=-2, off=1), 0)
    if n >= 2:
        a[n - 2][n - 1] = a[n - 1][n - 2] = 1
    _put(a, rest, n)
    return a


def build_super(spec: FamilySpec, literal_blocks: bool = False) -> Matrix:
    """Distinguished Cartan matrix of a basic classical Lie superalgebra.

    Two connection conventions differ from the naive block reading:

    * B(1, n): the isotropic node n pairs with the single short root as
      ``a[n, n+1] = -2``, ``a[n+1, n] = -1`` (so B(1,1) = [[0,-2],[-1,2]]).
      This is ``B_{n+1} - 2 E_11`` for n = 1 and is the variant the closed
      form inverse satisfies.  C(2) inherits it through ``C = -B(n-1,1)^T``.
    * D(2, n), n >= 2: D_2 has no chain node, so the isotropic node joins
      both fork nodes.  The single-connection reading is singular.
    """
    validate(spec)
    f, m, n = spec.family, spec.m, spec.n
    if f is Family.SuperA:
        size = m + n + 1
        a = [[0] * size for _ in range(size)]
        _put(a, _chain(m), 0)
        _put(a, _chain(n, diag=-2, off=1), m + 1)
        if m >= 1:
            a[m - 1][m] = a[m][m - 1] = -1
        if n >= 1:
            a[m][m + 1] = a[m + 1][m] = 1
    elif f is Family.SuperB:
        bm = build_simple(FamilySpec(Family.B, n=m)).tolist() if m >= 2 else [[2]]
        a = _isotropic_chain(n, [[int(x) for x in r] for r in bm])
        if m == 1 and not literal_blocks:
            a[n - 1][n], a[n][n - 1] = -2, -1
        else:
            a[n - 1][n] = a[n][n - 1] = -1
    elif f is Family.SuperB0:
        return -build_simple(FamilySpec(Family.B, n=n))
    elif f is Family.SuperC:
        return -build_super(FamilySpec(Family.SuperB, m=n - 1, n=1), literal_blocks).transpose()
    elif f is Family.SuperD:
        if n == 1:
            a = _type_d(m + 1)
            a[0][0] = 0
        else:
            a = _isotropic_chain(n, _type_d(m))
            a[n - 1][n] = a[n][n - 1] = -1
            if m == 2 and not literal_blocks:
                a[n - 1][n + 1] = a[n + 1][n - 1] = -1
    elif f is Family.D21Alpha:
        al = spec.alpha
        return Matrix.from_rows([[0, 1, al], [-1, 2, 0], [-1, 0, 2]])
    elif f in (Family.SuperF4, Family.SuperG3):
        a = _EXCEPTIONAL_CARTAN[f]
    else:
        raise InvalidParams(f"{f} is not a Lie superalgebra family")
    return Matrix.from_rows(a)


def build(spec: FamilySpec, literal_blocks: bool = False) -> Matrix:
    """Cartan matrix for any family."""
    if spec.family in SIMPLE:
        return build_simple(spec)
    return build_super(spec, literal_blocks)
