"""Entry-wise closed forms for the inverse Cartan matrices.

Each ``inv_entry_*`` function is O(1) in the matrix size and takes 1-based
indices.  For the symmetric families only the ``i <= j`` half of the case
table is evaluated; indices are swapped first.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import catalog
from .catalog import Family, FamilySpec, InvalidParams
from .exact_linalg import Matrix, Vector

Q = Fraction


def _check(i: int, j: int, size: int) -> None:
    if not (1 <= i <= size and 1 <= j <= size):
        raise IndexError(f"index ({i}, {j}) outside 1..{size}")


def inv_entry_A(n: int, i: int, j: int) -> Fraction:
    _check(i, j, n)
    return Q(min(i, j) * (n + 1) - i * j, n + 1)


def inv_entry_B(n: int, i: int, j: int) -> Fraction:
    _check(i, j, n)
    if i < n:
        return Q(min(i, j))
    return Q(j, 2)


def inv_entry_C(n: int, i: int, j: int) -> Fraction:
    return inv_entry_B(n, j, i)


def inv_entry_D(n: int, i: int, j: int) -> Fraction:
    _check(i, j, n)
    if i > j:
        i, j = j, i
    if j <= n - 2:
        return Q(i)
    if i < n - 1:
        return Q(i, 2)
    if i != j:
        return Q(n - 2, 4)
    return Q(n, 4)


def inv_entry_S(n: int, i: int, j: int) -> Fraction:
    _check(i, j, n)
    return Q(min(i, j))


def inv_entry_R(n: int, i: int, j: int) -> Fraction:
    """Inverse of R_n, written in the proofs as R_{m+1} with m = n - 1."""
    _check(i, j, n)
    return Q(min(i, j) * (n - 1) - i * j, n - 1)


def inv_entry_superA(m: int, n: int, i: int, j: int) -> Fraction:
    _check(i, j, m + n + 1)
    k = m + 1
    if i <= k and j <= k:
        return min(i, j) + Q(i * j, n - m)
    if i > k and j <= k:
        # lower-left block is the transpose of the upper-right one
        i, j = j, i
    if i <= k:
        j -= k
        return Q(i * (n + 1 - j), n - m)
    i -= k
    j -= k
    return Q((m + 1) * (n + 1 - i - j) + i * j, n - m) - min(i, j)


def inv_entry_superB(m: int, n: int, i: int, j: int) -> Fraction:
    _check(i, j, m + n)
    last = m + n
    if i == last:
        return Q(-j, 2) if j <= n else Q(j, 2) - n
    if i <= n or j <= n:
        return Q(-min(i, j))
    return Q(min(i, j) - 2 * n)


def inv_entry_superB0(n: int, i: int, j: int) -> Fraction:
    return -inv_entry_B(n, i, j)


def inv_entry_superC(n: int, i: int, j: int) -> Fraction:
    _check(i, j, n)
    if j < n:
        return Q(2 - min(i, j))
    return 1 - Q(i, 2)


def inv_entry_superD1(m: int, i: int, j: int) -> Fraction:
    """Entries of D(m,1)^{-1}; the matrix has size m + 1."""
    _check(i, j, m + 1)
    if i > j:
        i, j = j, i
    if j <= m - 1:
        return Q(i - 2)
    if i < m:
        return Q(i, 2) - 1
    if i != j:
        return Q(m - 3, 4)
    return Q(m - 1, 4)


def inv_entry_superD(m: int, n: int, i: int, j: int) -> Fraction:
    """Entries of D(m,n)^{-1} for n >= 2."""
    size = m + n
    _check(i, j, size)
    if i > j:
        i, j = j, i
    if i <= n:
        return Q(-i) if j <= size - 2 else Q(-i, 2)
    if j < size - 1:
        return Q(i - 2 * n)
    if i < size - 1:
        return Q(i, 2) - n
    if i != j:
        return Q(m - n - 2, 4)
    return Q(m - n, 4)


def _scaled(rows, denom: int) -> Matrix:
    return Matrix.from_rows([[Q(x, denom) for x in r] for r in rows])


_EXCEPTIONAL_INVERSES = {
    Family.E6: _scaled([
        [4, 3, 5, 6, 4, 2],
        [3, 6, 6, 9, 6, 3],
        [5, 6, 10, 12, 8, 4],
        [6, 9, 12, 18, 12, 6],
        [4, 6, 8, 12, 10, 5],
        [2, 3, 4, 6, 5, 4],
    ], 3),
    Family.E7: _scaled([
        [4, 4, 6, 8, 6, 4, 2],
        [4, 7, 8, 12, 9, 6, 3],
        [6, 8, 12, 16, 12, 8, 4],
        [8, 12, 16, 24, 18, 12, 6],
        [6, 9, 12, 18, 15, 10, 5],
        [4, 6, 8, 12, 10, 8, 4],
        [2, 3, 4, 6, 5, 4, 3],
    ], 2),
    Family.E8: _scaled([
        [4, 5, 7, 10, 8, 6, 4, 2],
        [5, 8, 10, 15, 12, 9, 6, 3],
        [7, 10, 14, 20, 16, 12, 8, 4],
        [10, 15, 20, 30, 24, 18, 12, 6],
        [8, 12, 16, 24, 20, 15, 10, 5],
        [6, 9, 12, 18, 15, 12, 8, 4],
        [4, 6, 8, 12, 10, 8, 6, 3],
        [2, 3, 4, 6, 5, 4, 3, 2],
    ], 1),
    Family.F4: _scaled([
        [2, 3, 4, 2],
        [3, 6, 8, 4],
        [2, 4, 6, 3],
        [1, 2, 3, 2],
    ], 1),
    Family.G2: _scaled([
        [2, 1],
        [3, 2],
    ], 1),
    Family.SuperF4: _scaled([
        [2, -3, -4, -2],
        [3, 0, 0, 0],
        [2, 0, 2, 1],
        [1, 0, 1, 2],
    ], 3),
    Family.SuperG3: _scaled([
        [1, -2, -3],
        [2, 0, 0],
        [1, 0, 1],
    ], 2),
}

# The commonly reproduced appendix tables carry two misprints, kept here so
# they can be compared against: G(3)^{-1} has +3 at (1, 3), and the third
# row of D(2,1;alpha)^{-1} reads (1, -alpha/2, alpha/2)/(1+alpha).  Neither
# is an inverse (the D(2,1;alpha) one only at alpha = 1).
PRINTED_G3_INVERSE = _scaled([
    [1, -2, 3],
    [2, 0, 0],
    [1, 0, 1],
], 2)


def printed_d21_inverse(alpha) -> Matrix:
    a = Fraction(alpha)
    s = 1 / (1 + a)
    half = a / 2
    return Matrix.from_rows([
        [2 * s, -s, -a * s],
        [s, half * s, -half * s],
        [s, -half * s, half * s],
    ])


def printed_appendix_inverse(name: Family | str, alpha=None) -> Matrix:
    """The appendix inverse exactly as printed, misprints included."""
    f = name if isinstance(name, Family) else Family.parse(name)
    if f is Family.SuperG3:
        return PRINTED_G3_INVERSE
    if f is Family.D21Alpha:
        return printed_d21_inverse(alpha)
    return _EXCEPTIONAL_INVERSES[f]


def inverse_exceptional(name: Family | str, alpha: Fraction | str | None = None) -> Matrix:
    """True inverse of an exceptional Cartan matrix (misprints corrected).

    D(2,1;alpha) is evaluated for rational alpha.
    """
    f = name if isinstance(name, Family) else Family.parse(name)
    if f not in catalog.EXCEPTIONAL:
        raise InvalidParams(f"{f} is not an exceptional family")
    if f is Family.D21Alpha:
        if alpha is None:
            raise InvalidParams("D21alpha requires alpha")
        spec = FamilySpec(f, alpha=alpha)
        catalog.validate(spec)
        a = spec.alpha
        s = 1 / (1 + a)
        half = a / 2
        return Matrix.from_rows([
            [2 * s, -s, -a * s],
            [s, half * s, -half * s],
            [s, -s / 2, s / 2],
        ])
    if alpha is not None:
        raise InvalidParams(f"alpha is only meaningful for D21alpha, not {f}")
    return _EXCEPTIONAL_INVERSES[f]


def entry_evaluator(spec: FamilySpec):
    """Return ``f(i, j)`` giving the closed-form inverse entries for ``spec``."""
    f, m, n = spec.family, spec.m, spec.n
    if f is Family.A:
        return lambda i, j: inv_entry_A(n, i, j)
    if f is Family.B:
        return lambda i, j: inv_entry_B(n, i, j)
    if f is Family.C:
        return lambda i, j: inv_entry_C(n, i, j)
    if f is Family.D:
        return lambda i, j: inv_entry_D(n, i, j)
    if f is Family.S:
        return lambda i, j: inv_entry_S(n, i, j)
    if f is Family.R:
        return lambda i, j: inv_entry_R(n, i, j)
    if f is Family.SuperA:
        return lambda i, j: inv_entry_superA(m, n, i, j)
    if f is Family.SuperB:
        return lambda i, j: inv_entry_superB(m, n, i, j)
    if f is Family.SuperB0:
        return lambda i, j: inv_entry_superB0(n, i, j)
    if f is Family.SuperC:
        return lambda i, j: inv_entry_superC(n, i, j)
    if f is Family.SuperD:
        if n == 1:
            return lambda i, j: inv_entry_superD1(m, i, j)
        return lambda i, j: inv_entry_superD(m, n, i, j)
    inv = inverse_exceptional(f, spec.alpha)
    return inv.entry


def inverse_matrix(spec: FamilySpec) -> Matrix:
    """Materialize the inverse from the closed forms; no elimination is performed."""
    size = catalog.size_of(spec)
    if spec.family in catalog.EXCEPTIONAL:
        return inverse_exceptional(spec.family, spec.alpha)
    return Matrix.from_function(size, size, entry_evaluator(spec))


@dataclass(frozen=True)
class SpecialVector:
    kind: str
    length: int
    entries: Vector


_KINDS = ("ascending", "descending", "ones", "b", "d", "dproof")


def special_vector(kind: str, length: int) -> SpecialVector:
    """The named column vectors used by the update proofs.

    ``b`` is the first column of B_m^{-1} and ``d`` the first column of
    D_k^{-1}.  For ``dproof`` the argument is the rank n of D_n and the
    result (1, 2, ..., n-2, (n-2)/2) has n - 1 entries.
    """
    if kind not in _KINDS:
        raise ValueError(f"unknown vector kind {kind!r}; expected one of {_KINDS}")
    k = length
    if kind == "ascending":
        _need(k >= 0, kind, k)
        e = range(1, k + 1)
    elif kind == "descending":
        _need(k >= 0, kind, k)
        e = range(k, 0, -1)
    elif kind == "ones":
        _need(k >= 0, kind, k)
        e = [1] * k
    elif kind == "b":
        _need(k >= 1, kind, k)
        e = [1] * (k - 1) + [Q(1, 2)]
    elif kind == "d":
        _need(k >= 2, kind, k)
        e = [1] * (k - 2) + [Q(1, 2), Q(1, 2)]
    else:
        _need(k >= 2, kind, k)
        e = list(range(1, k - 1)) + [Q(k - 2, 2)]
    vec = Vector(e)
    return SpecialVector(kind, len(vec), vec)


def _need(ok: bool, kind: str, k: int) -> None:
    if not ok:
        raise ValueError(f"invalid length {k} for vector kind {kind!r}")
