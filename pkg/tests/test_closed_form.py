from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cartankit import closed_form as cf
from cartankit.catalog import EXCEPTIONAL, Family, FamilySpec, InvalidParams, build
from cartankit.exact_linalg import Matrix, Vector, invert_exact, is_identity, mat_mul, mat_vec


def M(rows):
    return Matrix.from_rows(rows)


def test_entry_examples():
    assert cf.inv_entry_A(1, 1, 1) == Q(1, 2)
    assert cf.inv_entry_A(4, 2, 3) == Q(4, 5)
    assert cf.inv_entry_A(2, 1, 1) == Q(2, 3)
    assert cf.inv_entry_B(2, 2, 1) == Q(1, 2)
    assert cf.inv_entry_B(3, 1, 3) == 1
    assert cf.inv_entry_B(5, 5, 4) == 2
    assert cf.inv_entry_C(5, 4, 5) == 2
    assert cf.inv_entry_D(4, 4, 4) == 1
    assert cf.inv_entry_D(2, 1, 2) == 0
    assert cf.inv_entry_D(5, 2, 5) == 1
    assert cf.inv_entry_S(3, 2, 3) == 2
    assert cf.inv_entry_R(3, 3, 3) == Q(-3, 2)
    assert cf.inv_entry_R(2, 1, 1) == 0
    assert cf.inv_entry_superA(0, 1, 1, 1) == 2
    assert cf.inv_entry_superA(1, 0, 2, 2) == -2
    assert cf.inv_entry_superB(1, 2, 3, 3) == Q(-1, 2)
    assert cf.inv_entry_superC(4, 4, 2) == 0
    assert cf.inv_entry_superD1(3, 1, 1) == -1
    assert cf.inv_entry_superD1(4, 4, 5) == Q(1, 4)
    assert cf.inv_entry_superD(3, 2, 5, 5) == Q(1, 4)
    # the oracle on the 6x6 D(4,2) gives -1 here (i - 2n with i = 3, n = 2)
    assert cf.inv_entry_superD(4, 2, 3, 4) == -1
    assert invert_exact(build(FamilySpec(Family.SuperD, m=4, n=2)))[3, 4] == -1


def test_index_out_of_range():
    with pytest.raises(IndexError):
        cf.inv_entry_A(3, 0, 1)
    with pytest.raises(IndexError):
        cf.inv_entry_superB(1, 1, 3, 1)


@pytest.mark.parametrize("spec, expected", [
    (FamilySpec(Family.SuperA, m=1, n=2), [[2, 3, 2, 1], [3, 6, 4, 2], [2, 4, 2, 1], [1, 2, 1, 0]]),
    (FamilySpec(Family.SuperB, m=2, n=1), [[-1, -1, -1], [-1, 0, 0], [Q(-1, 2), 0, Q(1, 2)]]),
    (FamilySpec(Family.SuperB, m=1, n=1), [[-1, -1], [Q(-1, 2), 0]]),
    (FamilySpec(Family.SuperC, n=3), [[1, 1, Q(1, 2)], [1, 0, 0], [1, 0, Q(-1, 2)]]),
    (FamilySpec(Family.SuperC, n=2), [[1, Q(1, 2)], [1, 0]]),
    (FamilySpec(Family.SuperD, m=2, n=1),
     [[-1, Q(-1, 2), Q(-1, 2)], [Q(-1, 2), Q(1, 4), Q(-1, 4)], [Q(-1, 2), Q(-1, 4), Q(1, 4)]]),
    (FamilySpec(Family.SuperD, m=2, n=2),
     [[-1, -1, Q(-1, 2), Q(-1, 2)], [-1, -2, -1, -1], [Q(-1, 2), -1, 0, Q(-1, 2)], [Q(-1, 2), -1, Q(-1, 2), 0]]),
    (FamilySpec(Family.G2), [[2, 1], [3, 2]]),
    (FamilySpec(Family.A, n=1), [[Q(1, 2)]]),
    (FamilySpec(Family.SuperB0, n=2), [[-1, -1], [Q(-1, 2), -1]]),
])
def test_full_inverse_examples(spec, expected):
    assert cf.inverse_matrix(spec) == M(expected)


def test_exceptional_examples():
    E6 = cf.inverse_exceptional("E6")
    assert E6 == M([[Q(x, 3) for x in r] for r in
                    [[4, 3, 5, 6, 4, 2], [3, 6, 6, 9, 6, 3], [5, 6, 10, 12, 8, 4],
                     [6, 9, 12, 18, 12, 6], [4, 6, 8, 12, 10, 5], [2, 3, 4, 6, 5, 4]]])
    assert cf.inverse_exceptional(Family.E8)[4, 4] == 30
    assert cf.inverse_exceptional(Family.F4).row(2) == (3, 6, 8, 4)
    SF4 = cf.inverse_exceptional(Family.SuperF4)
    assert SF4 == M([[Q(x, 3) for x in r] for r in [[2, -3, -4, -2], [3, 0, 0, 0], [2, 0, 2, 1], [1, 0, 1, 2]]])
    assert cf.inverse_exceptional(Family.D21Alpha, alpha=1)[1, 1] == 1


def test_exceptional_alpha_rules():
    with pytest.raises(InvalidParams):
        cf.inverse_exceptional(Family.D21Alpha)
    with pytest.raises(InvalidParams):
        cf.inverse_exceptional(Family.D21Alpha, alpha=-1)
    with pytest.raises(InvalidParams):
        cf.inverse_exceptional(Family.G2, alpha=1)
    with pytest.raises(InvalidParams):
        cf.inverse_exceptional(Family.A)


@pytest.mark.parametrize("f", sorted(EXCEPTIONAL - {Family.D21Alpha}, key=str))
def test_exceptional_are_true_inverses(f):
    spec = FamilySpec(f)
    assert is_identity(mat_mul(build(spec), cf.inverse_exceptional(f)))


def test_printed_g3_misprint_is_kept_separately():
    printed = cf.printed_appendix_inverse(Family.SuperG3)
    assert printed[1, 3] == Q(3, 2)
    assert cf.inverse_exceptional(Family.SuperG3)[1, 3] == Q(-3, 2)
    assert not is_identity(mat_mul(build(FamilySpec(Family.SuperG3)), printed))


@settings(max_examples=60, deadline=None)
@given(st.fractions(min_value=-20, max_value=20, max_denominator=12).filter(lambda a: a not in (0, -1)))
def test_d21_inverse_is_two_sided(alpha):
    A = build(FamilySpec(Family.D21Alpha, alpha=alpha))
    inv = cf.inverse_exceptional(Family.D21Alpha, alpha)
    assert is_identity(mat_mul(A, inv)) and is_identity(mat_mul(inv, A))
    # rows 1 and 2 agree with the printed 1/(1+alpha) pattern; row 3 agrees only at alpha = 1
    printed = cf.printed_d21_inverse(alpha)
    assert printed.row(1) == inv.row(1) and printed.row(2) == inv.row(2)
    assert (printed.row(3) == inv.row(3)) == (alpha == 1)


def test_special_vectors():
    assert cf.special_vector("ascending", 4).entries == Vector([1, 2, 3, 4])
    assert cf.special_vector("descending", 3).entries == Vector([3, 2, 1])
    assert cf.special_vector("ones", 2).entries == Vector([1, 1])
    assert cf.special_vector("b", 3).entries == Vector([1, 1, Q(1, 2)])
    assert cf.special_vector("d", 2).entries == Vector([Q(1, 2), Q(1, 2)])
    assert cf.special_vector("d", 4).entries == Vector([1, 1, Q(1, 2), Q(1, 2)])
    v = cf.special_vector("dproof", 4)
    assert v.entries == Vector([1, 2, 1]) and v.length == 3
    for kind, bad in (("b", 0), ("d", 1), ("dproof", 1), ("nope", 3)):
        with pytest.raises(ValueError):
            cf.special_vector(kind, bad)


@given(st.integers(2, 20))
def test_b_and_d_vectors_are_first_columns(k):
    assert cf.special_vector("b", k).entries == Vector(invert_exact(build(FamilySpec(Family.B, n=k))).column(1))
    Dinv = invert_exact(build(FamilySpec(Family.D, n=k)))
    if k >= 3:
        assert cf.special_vector("d", k).entries == Vector(Dinv.column(1))
    else:
        # D_2 has no chain node: d_2 pairs D_2^{-1} with the double link e_1 + e_2
        assert cf.special_vector("d", 2).entries == mat_vec(Dinv, Vector([1, 1]))


# --- properties --------------------------------------------------------------

@st.composite
def grid_specs(draw, max_rank=12):
    f = draw(st.sampled_from([Family.A, Family.B, Family.C, Family.D, Family.S, Family.R, Family.SuperA,
                              Family.SuperB, Family.SuperB0, Family.SuperC, Family.SuperD]))
    n = draw(st.integers(1, max_rank))
    if f is Family.SuperA:
        m = draw(st.integers(0, max_rank).filter(lambda x: x != n))
        return FamilySpec(f, m=m, n=draw(st.sampled_from([n, 0])) if m != 0 else n)
    if f is Family.SuperB:
        return FamilySpec(f, m=draw(st.integers(1, max_rank)), n=n)
    if f is Family.SuperD:
        return FamilySpec(f, m=draw(st.integers(2, max_rank)), n=n)
    return FamilySpec(f, n=max(n, 1 if f in (Family.A, Family.S) else 2))


@settings(max_examples=200, deadline=None)
@given(grid_specs())
def test_formula_equals_oracle(spec):
    assert cf.inverse_matrix(spec) == invert_exact(build(spec))


@settings(max_examples=200, deadline=None)
@given(grid_specs())
def test_product_identity_both_sides(spec):
    A, inv = build(spec), cf.inverse_matrix(spec)
    assert is_identity(mat_mul(A, inv)) and is_identity(mat_mul(inv, A))


@settings(max_examples=200, deadline=None)
@given(grid_specs())
def test_symmetric_exactly_when_cartan_is(spec):
    assert cf.inverse_matrix(spec).is_symmetric() == build(spec).is_symmetric()


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10), st.integers(0, 10))
def test_super_a_lower_block_is_transpose_of_upper(m, n):
    if m == n:
        return
    k = m + 1
    for i in range(1, k + 1):
        for j in range(k + 1, m + n + 2):
            assert cf.inv_entry_superA(m, n, j, i) == cf.inv_entry_superA(m, n, i, j)


@given(st.integers(2, 40))
def test_simple_inverses_positive(n):
    for f in (Family.A, Family.B, Family.C) + ((Family.D,) if n >= 3 else ()):
        assert all(x > 0 for x in cf.inverse_matrix(FamilySpec(f, n=n)).entries)


def test_d2_inverse_has_zeros():
    # D_2 = A_1 x A_1 is semisimple, not simple
    assert cf.inverse_matrix(FamilySpec(Family.D, n=2)) == M([[Q(1, 2), 0], [0, Q(1, 2)]])
