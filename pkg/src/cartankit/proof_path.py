"""Inverses rebuilt only from rank-one updates and Schur-complement block inverses.

Everything starts from ``S_n^{-1} = (min(i, j))``.  This path is an
independent witness for the closed forms in :mod:`cartankit.closed_form`;
it never calls the elimination oracle (every Schur complement it meets is
either 1x1 or has a known inverse that :func:`block_inverse` checks).
"""
from __future__ import annotations

from . import catalog
from .catalog import Family, FamilySpec
from .exact_linalg import Matrix, Vector, block_inverse, outer, rank_one_update_inverse


def _e(n: int, i: int) -> Vector:
    return Vector.unit(n, i)


def s_inverse(n: int) -> Matrix:
    return Matrix.from_function(n, n, min)


def a_inverse(n: int) -> Matrix:
    # A_n = S_n + e_n e_n^T
    return rank_one_update_inverse(s_inverse(n), _e(n, n), _e(n, n))


def b_inverse(n: int) -> Matrix:
    # B_n = S_n + (e_n - e_{n-1}) e_n^T
    return rank_one_update_inverse(s_inverse(n), _e(n, n) - _e(n, n - 1), _e(n, n))


def c_inverse(n: int) -> Matrix:
    return rank_one_update_inverse(s_inverse(n), _e(n, n), _e(n, n) - _e(n, n - 1))


def r_inverse(n: int) -> Matrix:
    # R_n = S_n - e_n e_n^T
    return rank_one_update_inverse(s_inverse(n), -_e(n, n), _e(n, n))


def d_inverse(n: int) -> Matrix:
    """D_n from A_{n-1} bordered by the last fork node, which hangs off node n-2."""
    k = n - 1
    link = -_e(k, n - 2) if n >= 3 else Vector.zeros(k)
    U = link.as_column()
    return block_inverse(a_inverse(k), U, U.transpose(), Matrix.from_rows([[2]]))


def _cartan(family: Family, n: int) -> Matrix:
    return catalog.build_simple(FamilySpec(family, n=n))


def super_a_inverse(m: int, n: int) -> Matrix:
    if n == 0:
        # A(m,0) is exactly R_{m+1}
        return r_inverse(m + 1)
    if m == 0:
        # reversing the labels of A(0,n) gives -A(n,0)
        size = n + 1
        order = list(range(size, 0, -1))
        return -super_a_inverse(n, 0).permuted(order)
    k = m + 1
    size = m + n + 1
    # U = [[R_{m+1}, e_{m+1} e_1^T], [0, -A_n]] and A_{m,n} = U + e_{m+2} e_{m+1}^T
    corner = outer(_e(k, k), _e(n, 1))
    u_inv = block_inverse(r_inverse(k), corner, Matrix.zeros(n, k), -_cartan(Family.A, n),
                          schur_inverse=-a_inverse(n))
    return rank_one_update_inverse(u_inv, _e(size, m + 2), _e(size, m + 1))


def _isotropic_join(n: int, tail: Matrix, tail_inv: Matrix, up: Vector, down: Vector) -> Matrix:
    """Inverse of ``V - c e_n^T`` where ``V = [[-R_n, -e_n up^T], [0, tail]]``.

    ``up`` is how the isotropic node n pairs with the tail nodes and
    ``down`` how the tail nodes pair back with it; ``c = (0, down)``.
    """
    m = tail.rows
    v_inv = block_inverse(-r_inverse(n), -outer(_e(n, n), up), Matrix.zeros(m, n), tail,
                          schur_inverse=tail_inv)
    c = Vector((0,) * n + down.entries)
    return rank_one_update_inverse(v_inv, -c, _e(n + m, n))


def super_b_inverse(m: int, n: int) -> Matrix:
    if n == 1:
        # B(m,1) = B_{m+1} - 2 e_1 e_1^T
        return rank_one_update_inverse(b_inverse(m + 1), _e(m + 1, 1).scale(-2), _e(m + 1, 1))
    if m == 1:
        # the short root: a[n, n+1] = -2, a[n+1, n] = -1
        return _isotropic_join(n, Matrix.from_rows([[2]]), a_inverse(1),
                               _e(1, 1).scale(2), _e(1, 1))
    e1 = _e(m, 1)
    return _isotropic_join(n, _cartan(Family.B, m), b_inverse(m), e1, e1)


def super_d_inverse(m: int, n: int) -> Matrix:
    if n == 1:
        # D(m,1) = D_{m+1} - 2 e_1 e_1^T
        return rank_one_update_inverse(d_inverse(m + 1), _e(m + 1, 1).scale(-2), _e(m + 1, 1))
    # D_2 has no chain node, so both of its nodes join the isotropic node
    link = _e(m, 1) + _e(m, 2) if m == 2 else _e(m, 1)
    return _isotropic_join(n, _cartan(Family.D, m), d_inverse(m), link, link)


def _relabel_back(X: Matrix, order: list[int]) -> Matrix:
    """Undo ``permuted(order)``: X is indexed by positions in ``order``."""
    pos = [0] * len(order)
    for p, label in enumerate(order, start=1):
        pos[label - 1] = p
    return X.permuted(pos)


def _type_e_inverse(n: int) -> Matrix:
    # chain 1-3-4-...-n is A_{n-1}; node 2 hangs off node 4 (third chain position)
    order = [1] + list(range(3, n + 1)) + [2]
    U = (-_e(n - 1, 3)).as_column()
    X = block_inverse(a_inverse(n - 1), U, U.transpose(), Matrix.from_rows([[2]]))
    return _relabel_back(X, order)


def f4_inverse() -> Matrix:
    # F4 = A_4 - e_2 e_3^T
    return rank_one_update_inverse(a_inverse(4), -_e(4, 2), _e(4, 3))


def _exceptional_inverse(spec: FamilySpec) -> Matrix:
    f = spec.family
    if f in (Family.E6, Family.E7, Family.E8):
        return _type_e_inverse(int(f.value[1]))
    if f is Family.F4:
        return f4_inverse()
    if f is Family.G2:
        # G2 = A_2 - 2 e_2 e_1^T
        return rank_one_update_inverse(a_inverse(2), _e(2, 2).scale(-2), _e(2, 1))
    if f is Family.SuperF4:
        # row 1 of F4 moves from (2, -1, 0, 0) to (0, 1, 0, 0)
        return rank_one_update_inverse(f4_inverse(), _e(4, 1), Vector([-2, 2, 0, 0]))
    if f is Family.D21Alpha:
        # row 1 of D_3 moves from (2, -1, -1) to (0, 1, alpha)
        d = Vector([-2, 2, spec.alpha + 1])
        return rank_one_update_inverse(d_inverse(3), _e(3, 1), d)
    if f is Family.SuperG3:
        # nodes (2, 3) carry the transposed G2 block; the isotropic node 1 is the border
        g2t = rank_one_update_inverse(a_inverse(2), _e(2, 1).scale(-2), _e(2, 2))
        X = block_inverse(g2t, Matrix.from_rows([[-1], [0]]), Matrix.from_rows([[1, 0]]),
                          Matrix.from_rows([[0]]))
        return _relabel_back(X, [2, 3, 1])
    raise ValueError(f"no update path for {f}")


def inverse_via_proof_path(spec: FamilySpec) -> Matrix:
    catalog.validate(spec)
    f, m, n = spec.family, spec.m, spec.n
    if f is Family.S:
        return s_inverse(n)
    if f is Family.A:
        return a_inverse(n)
    if f is Family.B:
        return b_inverse(n)
    if f is Family.C:
        return c_inverse(n)
    if f is Family.D:
        return d_inverse(n)
    if f is Family.R:
        return r_inverse(n)
    if f is Family.SuperA:
        return super_a_inverse(m, n)
    if f is Family.SuperB:
        return super_b_inverse(m, n)
    if f is Family.SuperB0:
        return -b_inverse(n)
    if f is Family.SuperC:
        return -super_b_inverse(n - 1, 1).transpose()
    if f is Family.SuperD:
        return super_d_inverse(m, n)
    return _exceptional_inverse(spec)


__all__ = ["inverse_via_proof_path", "s_inverse", "a_inverse", "b_inverse", "c_inverse",
           "d_inverse", "r_inverse", "super_a_inverse", "super_b_inverse", "super_d_inverse",
           "f4_inverse"]
