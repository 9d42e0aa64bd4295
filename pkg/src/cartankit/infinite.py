"""Infinite Cartan matrices as lazy entry oracles, plus windowed inverse checks.

Labels are integers; each family has a label set that is unbounded in one
or both directions.  Every Cartan row has at most three nonzero entries, all
within label distance 2, so both ``(M M^{-1})_{ij}`` and ``(M^{-1} M)_{ij}``
are finite sums and can be checked exactly on any finite window.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .exact_linalg import Matrix, format_rational

Q = Fraction


class InvalidLabel(ValueError):
    """A label (or window) lies outside a family's label set."""


class InfFamily(str, enum.Enum):
    AInfPos = "Ainf+"
    AInfNeg = "Ainf-"
    BInf = "Binf"
    DInf = "Dinf"
    SuperAmInf = "superAinf"
    SuperAInfInf = "superAinfinf"
    SuperBmInf = "superBinf"
    SuperDmInf = "superDinf"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, text: str) -> InfFamily:
        key = text.strip().lower()
        for f in cls:
            if key in (f.value.lower(), f.name.lower()):
                return f
        raise InvalidLabel(f"unknown infinite family {text!r}")


MIN_M = {InfFamily.SuperAmInf: 0, InfFamily.SuperBmInf: 1, InfFamily.SuperDmInf: 2}
# families whose Cartan matrix (and hence inverse) is symmetric
SYMMETRIC = frozenset({InfFamily.AInfPos, InfFamily.AInfNeg, InfFamily.DInf, InfFamily.SuperAmInf,
                       InfFamily.SuperAInfInf, InfFamily.SuperDmInf})


@dataclass(frozen=True)
class InfFamilySpec:
    family: InfFamily
    m: int = 0

    def __post_init__(self):
        if not isinstance(self.family, InfFamily):
            object.__setattr__(self, "family", InfFamily.parse(str(self.family)))
        if self.family in MIN_M:
            if self.m < MIN_M[self.family]:
                raise InvalidLabel(f"{self.family} requires m >= {MIN_M[self.family]}, got m={self.m}")
        elif self.m:
            raise InvalidLabel(f"{self.family} takes no m parameter")

    def bounds(self) -> tuple[int | None, int | None]:
        """(lowest, highest) label; ``None`` marks an unbounded side."""
        f = self.family
        if f in (InfFamily.AInfPos, InfFamily.SuperAmInf):
            return 1, None
        if f is InfFamily.AInfNeg:
            return None, -1
        if f is InfFamily.BInf:
            return None, 0
        if f is InfFamily.DInf:
            return None, 1
        if f is InfFamily.SuperAInfInf:
            return None, None
        return None, self.m

    def contains(self, label: int) -> bool:
        lo, hi = self.bounds()
        return (lo is None or label >= lo) and (hi is None or label <= hi)

    def label(self) -> str:
        return f"{self.family}(m={self.m})" if self.family in MIN_M else str(self.family)


@dataclass(frozen=True)
class Window:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise InvalidLabel(f"empty window [{self.lo}, {self.hi}]")

    def labels(self, spec: InfFamilySpec) -> list[int]:
        lo, hi = spec.bounds()
        a = self.lo if lo is None else max(self.lo, lo)
        b = self.hi if hi is None else min(self.hi, hi)
        if a > b:
            raise InvalidLabel(f"window [{self.lo}, {self.hi}] misses the label set of {spec.label()}")
        return list(range(a, b + 1))


def _require(spec: InfFamilySpec, *labels: int) -> None:
    for x in labels:
        if not spec.contains(x):
            raise InvalidLabel(f"label {x} is not a vertex of {spec.label()}")


def _type_d_edge(m: int, a: int, b: int) -> bool:
    """Whether tail nodes a < b (labels 1..m) are joined inside D_m."""
    if b <= m - 2:
        return b == a + 1
    return m >= 3 and a == m - 2


def inf_cartan_entry(spec: InfFamilySpec, i: int, j: int, literal_blocks: bool = False) -> Fraction:
    _require(spec, i, j)
    f, m = spec.family, spec.m
    if f in (InfFamily.AInfPos, InfFamily.AInfNeg):
        return Q(2 if i == j else -1 if abs(i - j) == 1 else 0)
    if f is InfFamily.BInf:
        if (i, j) == (-1, 0):
            return Q(-2)
        return Q(2 if i == j else -1 if abs(i - j) == 1 else 0)
    if f is InfFamily.DInf:
        if i == j:
            return Q(2)
        a, b = sorted((i, j))
        if (a, b) == (0, 1):
            return Q(0)
        if a == -1 and b in (0, 1):
            return Q(-1)
        return Q(-1 if b == a + 1 and b <= -1 else 0)
    if f is InfFamily.SuperAmInf:
        k = m + 1
        if i == j:
            return Q(2 if i < k else 0 if i == k else -2)
        if abs(i - j) != 1:
            return Q(0)
        return Q(-1 if max(i, j) <= k else 1)
    if f is InfFamily.SuperAInfInf:
        if i == j:
            return Q(2 if i < 0 else 0 if i == 0 else -2)
        if abs(i - j) != 1:
            return Q(0)
        return Q(-1 if min(i, j) < 0 else 1)
    # SuperBmInf / SuperDmInf: -A_inf on labels < 0, isotropic node 0, B_m or D_m on 1..m
    if i == j:
        return Q(-2 if i < 0 else 0 if i == 0 else 2)
    a, b = sorted((i, j))
    if b <= 0:
        return Q(1 if b == a + 1 else 0)
    if f is InfFamily.SuperBmInf:
        if a == 0:
            if b != 1:
                return Q(0)
            if m == 1 and not literal_blocks:
                return Q(-2 if (i, j) == (0, 1) else -1)
            return Q(-1)
        if b != a + 1:
            return Q(0)
        return Q(-2 if (i, j) == (m - 1, m) else -1)
    if a == 0:
        joined = b == 1 or (m == 2 and b == 2 and not literal_blocks)
        return Q(-1 if joined else 0)
    return Q(-1 if _type_d_edge(m, a, b) else 0)


def inf_inverse_entry(spec: InfFamilySpec, i: int, j: int) -> Fraction:
    _require(spec, i, j)
    f, m = spec.family, spec.m
    if f is InfFamily.AInfPos:
        return Q(min(i, j))
    if f is InfFamily.AInfNeg:
        return Q(min(-i, -j))
    if f is InfFamily.BInf:
        return Q(j, 2) if i == 0 else Q(min(i, j))
    if f is InfFamily.DInf:
        # table is written for j <= i
        if i < j:
            i, j = j, i
        if i == j and i >= 0:
            return Q(1, 4)
        if (i, j) == (1, 0):
            return Q(-1, 4)
        if i >= 0:
            return Q(j, 2)
        return Q(j)
    if f is InfFamily.SuperAmInf:
        k = m + 1
        if i > k and j <= k:
            i, j = j, i
        if j <= k:
            return Q(min(i, j))
        if i <= k:
            return Q(i)
        return Q(m + 1 - min(i - k, j - k))
    if f is InfFamily.SuperAInfInf:
        if i > 0 and j <= 0:
            i, j = j, i
        if j <= 0:
            return Q(min(i - 1, j - 1))
        if i <= 0:
            return Q(i - 1)
        return Q(-min(i + 1, j + 1))
    if f is InfFamily.SuperBmInf:
        # the i = m row takes precedence over the i <= 0 or j <= 0 case
        if i == m:
            return Q(abs(j), 2)
        if i <= 0 or j <= 0:
            return Q(-min(i, j))
        return Q(min(i, j))
    # SuperDmInf, table written for i <= j; interior case stops at m - 2
    if i > j:
        i, j = j, i
    if i <= 0:
        return Q(-i) if j <= m - 2 else Q(-i, 2)
    if j <= m - 2:
        return Q(i)
    if i < m - 1:
        return Q(i, 2)
    if i != j:
        return Q(m - 2, 4)
    return Q(m, 4)


def support(spec: InfFamilySpec, i: int, literal_blocks: bool = False) -> list[int]:
    """Labels k with a nonzero Cartan entry at (i, k); the pattern is symmetric."""
    return [k for k in range(i - 2, i + 3)
            if spec.contains(k) and inf_cartan_entry(spec, i, k, literal_blocks)]


def materialize(spec: InfFamilySpec, window: Window, which: str = "cartan",
                literal_blocks: bool = False) -> tuple[Matrix, list[int]]:
    """Finite section over the window's labels (increasing); returns ``(matrix, labels)``.

    Row/column ``p`` of the matrix (1-based) is label ``labels[p - 1]``.
    """
    labels = window.labels(spec)
    if which == "cartan":
        def f(i, j):
            return inf_cartan_entry(spec, i, j, literal_blocks)
    elif which == "inverse":
        def f(i, j):
            return inf_inverse_entry(spec, i, j)
    else:
        raise ValueError(f"which must be 'cartan' or 'inverse', got {which!r}")
    n = len(labels)
    return Matrix.from_function(n, n, lambda p, q: f(labels[p - 1], labels[q - 1])), labels


@dataclass(frozen=True)
class Failure:
    i: int
    j: int
    expected: Fraction
    actual: Fraction
    order: str  # "M*Minv" or "Minv*M"

    def describe(self) -> str:
        return (f"({self.i}, {self.j}) of {self.order}: expected {format_rational(self.expected)}, "
                f"got {format_rational(self.actual)}")


@dataclass
class VerificationReport:
    checked_pairs: int = 0
    failures: list[Failure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def first_failure(self) -> Failure | None:
        return self.failures[0] if self.failures else None


def verify_window(spec: InfFamilySpec, window: Window, literal_blocks: bool = False) -> VerificationReport:
    """Check both products against the identity on every pair of window labels.

    The summation index runs over the full label set, i.e. it may leave
    the window; only the Cartan support of row i (or column j) contributes.
    """
    labels = window.labels(spec)
    sup = {x: support(spec, x, literal_blocks) for x in labels}
    report = VerificationReport()
    for i in labels:
        row = [(k, inf_cartan_entry(spec, i, k, literal_blocks)) for k in sup[i]]
        for j in labels:
            want = Q(int(i == j))
            left = sum((a * inf_inverse_entry(spec, k, j) for k, a in row), Q(0))
            if left != want:
                report.failures.append(Failure(i, j, want, left, "M*Minv"))
            right = sum((inf_inverse_entry(spec, i, k) * inf_cartan_entry(spec, k, j, literal_blocks)
                         for k in sup[j]), Q(0))
            if right != want:
                report.failures.append(Failure(i, j, want, right, "Minv*M"))
            report.checked_pairs += 1
    return report
