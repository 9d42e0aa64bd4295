"""Three-way equivalence driver: closed form vs elimination oracle vs update path.

A spec passes when the closed-form inverse equals the oracle inverse of
the built Cartan matrix and the proof-path reconstruction entry by entry,
and the product of the Cartan matrix with it is the identity.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import catalog
from .catalog import Family, FamilySpec
from .closed_form import inverse_matrix
from .exact_linalg import Matrix, SingularError, format_rational, invert_exact, is_identity, mat_mul
from .proof_path import inverse_via_proof_path

# rational sample points for D(2,1;alpha)
ALPHA_SAMPLES = tuple(Fraction(s) for s in ("1", "1/2", "2", "-3", "7/5", "-1/2", "-5/3", "11/4"))

# (low, high) rank ranges of the default grid, inclusive
DEFAULT_RANGES = {
    Family.A: (1, 64),
    Family.B: (2, 64),
    Family.C: (2, 64),
    Family.D: (2, 64),
    Family.S: (1, 64),
    Family.R: (2, 64),
    Family.SuperB0: (2, 32),
    Family.SuperC: (2, 32),
}
# (m range, n range) for the two-parameter super families
DEFAULT_PAIRS = {
    Family.SuperA: ((0, 32), (0, 32)),
    Family.SuperB: ((1, 32), (1, 32)),
    Family.SuperD: ((2, 32), (1, 32)),
}
FIXED = (Family.E6, Family.E7, Family.E8, Family.F4, Family.G2, Family.SuperF4, Family.SuperG3)


def family_grid(family: Family, max_rank: int | None = None, m: int | None = None,
                n: int | None = None, alpha: Fraction | None = None) -> list[FamilySpec]:
    """Default grid for one family, optionally capped or pinned.

    ``max_rank`` caps n (and m); ``m``/``n`` pin a parameter to one value.
    """
    def span(lo, hi, pin):
        if pin is not None:
            return [pin]
        return list(range(lo, (hi if max_rank is None else min(hi, max_rank)) + 1))

    if family in DEFAULT_RANGES:
        lo, hi = DEFAULT_RANGES[family]
        return [FamilySpec(family, n=k) for k in span(lo, hi, n)]
    if family in DEFAULT_PAIRS:
        (mlo, mhi), (nlo, nhi) = DEFAULT_PAIRS[family]
        out = []
        for mm in span(mlo, mhi, m):
            for nn in span(nlo, nhi, n):
                if family is Family.SuperA and mm == nn:
                    continue
                out.append(FamilySpec(family, m=mm, n=nn))
        return out
    if family is Family.D21Alpha:
        return [FamilySpec(family, alpha=a) for a in ([alpha] if alpha is not None else ALPHA_SAMPLES)]
    return [FamilySpec(family)]


def default_grid() -> list[FamilySpec]:
    specs: list[FamilySpec] = []
    for f in list(DEFAULT_RANGES) + list(DEFAULT_PAIRS) + list(FIXED) + [Family.D21Alpha]:
        specs.extend(family_grid(f))
    return specs


@dataclass(frozen=True)
class SpecResult:
    spec: FamilySpec
    ok: bool
    message: str = ""


def first_difference(X: Matrix, Y: Matrix) -> tuple[int, int, Fraction, Fraction] | None:
    """First (row-major) 1-based position where X and Y differ."""
    if X.shape != Y.shape:
        raise ValueError(f"shape mismatch {X.shape} vs {Y.shape}")
    for k, (a, b) in enumerate(zip(X.entries, Y.entries)):
        if a != b:
            return k // X.cols + 1, k % X.cols + 1, a, b
    return None


def _diff_message(what: str, X: Matrix, Y: Matrix) -> str | None:
    d = first_difference(X, Y)
    if d is None:
        return None
    i, j, a, b = d
    return f"formula vs {what} differ at entry ({i},{j}): formula {format_rational(a)}, {what} {format_rational(b)}"


def check_spec(spec: FamilySpec, literal_blocks: bool = False) -> SpecResult:
    """Run every equality for one spec; the message names the first failing check."""
    catalog.validate(spec)
    M = catalog.build(spec, literal_blocks=literal_blocks)
    formula = inverse_matrix(spec)
    try:
        oracle = invert_exact(M)
    except SingularError as exc:
        return SpecResult(spec, False, f"oracle: Cartan matrix is singular (rank {exc.rank} of {M.rows})")
    msg = _diff_message("oracle", formula, oracle)
    if msg is None:
        msg = _diff_message("proof", formula, inverse_via_proof_path(spec))
    if msg is None and not (is_identity(mat_mul(M, formula)) and is_identity(mat_mul(formula, M))):
        msg = "Cartan matrix times formula inverse is not the identity"
    return SpecResult(spec, msg is None, msg or "")


def _check_packed(args: tuple[FamilySpec, bool]) -> SpecResult:
    return check_spec(*args)


def resolve_jobs(jobs: int | None) -> int:
    if jobs is None:
        env = os.environ.get("CARTANKIT_JOBS", "")
        jobs = int(env) if env.strip() else 1
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    return jobs


def run_grid(specs: list[FamilySpec], literal_blocks: bool = False, jobs: int = 1) -> list[SpecResult]:
    """Check every spec; results come back in input order regardless of ``jobs``."""
    work = [(s, literal_blocks) for s in specs]
    if jobs <= 1 or len(work) < 2:
        return [_check_packed(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_check_packed, work, chunksize=8))
