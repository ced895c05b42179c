import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exactalg import (
    DimensionMismatchError,
    FiniteAbelianGroup,
    HypermonoError,
    IntMatrix,
    NonUnitError,
    TruncatedSeries,
    cokernel,
    determinant,
    gcd_all,
    integer_left_kernel,
    lattice_membership,
    lattice_membership_2local,
    matrix_rank,
    smith_normal_form,
    sparse_cokernel,
)

small_matrices = st.integers(1, 4).flatmap(
    lambda cols: st.lists(
        st.lists(st.integers(-6, 6), min_size=cols, max_size=cols), min_size=1, max_size=4
    )
)


def _is_chain(diag):
    for a, b in zip(diag, diag[1:]):
        if a == 0:
            if b != 0:
                return False
        elif b % a:
            return False
    return all(v >= 0 for v in diag)


def test_snf_textbook_example():
    m = IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    diag, left, right = smith_normal_form(m)
    assert diag == [2, 6, 12]
    product = left @ m @ right
    assert product.is_diagonal()
    assert [product[i, i] for i in range(3)] == diag
    assert abs(determinant(left)) == 1
    assert abs(determinant(right)) == 1


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[12, 6, 4, 8], [3, 9, 6, 12], [2, 16, 14, 28], [20, 10, 10, 20]], [1, 10, 30, 0]),
        ([[3, 0, 0, 0], [0, 0, 0, 0], [0, 0, 2, 0]], [1, 6, 0]),
        ([[0, -2]], [2]),
        ([[0], [-2]], [2]),
    ],
)
def test_snf_invariant_factors(rows, expected):
    m = IntMatrix.from_rows(rows)
    diag, left, right = smith_normal_form(m)
    assert diag == expected
    product = left @ m @ right
    assert product.is_diagonal()
    assert [product[i, i] for i in range(len(diag))] == expected
    assert matrix_rank(m) == sum(1 for v in expected if v)


@pytest.mark.parametrize("rows, cols", [(0, 0), (0, 2), (2, 0)])
def test_snf_of_empty_shapes(rows, cols):
    m = IntMatrix.zeros(rows, cols)
    diag, left, right = smith_normal_form(m)
    assert diag == []
    assert left == IntMatrix.identity(rows)
    assert right == IntMatrix.identity(cols)
    assert matrix_rank(m) == 0
    assert len(integer_left_kernel(m)) == rows


def test_zero_matrix_kernel_is_everything():
    kernel = integer_left_kernel(IntMatrix.zeros(2, 3))
    assert len(kernel) == 2
    assert abs(determinant(IntMatrix.from_rows(kernel))) == 1
    assert matrix_rank(IntMatrix.zeros(3, 3)) == 0


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_snf_is_unimodular_and_divisible(rows):
    m = IntMatrix.from_rows(rows)
    diag, left, right = smith_normal_form(m)
    product = left @ m @ right
    assert product.is_diagonal()
    assert [product[i, i] for i in range(len(diag))] == diag
    assert _is_chain(diag)
    assert abs(determinant(left)) == 1
    assert abs(determinant(right)) == 1


def test_determinant():
    assert determinant(IntMatrix.identity(4)) == 1
    assert determinant(IntMatrix.from_rows([[1, 2], [3, 4]])) == -2
    assert determinant(IntMatrix.from_rows([[0, 1], [1, 0]])) == -1
    assert determinant(IntMatrix.from_rows([[1, 2], [2, 4]])) == 0
    with pytest.raises(DimensionMismatchError):
        determinant(IntMatrix.zeros(2, 3))


def test_cokernel_labels():
    assert cokernel(IntMatrix.from_rows([[2, 0], [0, 3]])).invariant_factors == (6,)
    assert cokernel(IntMatrix.from_rows([[1, 2], [3, 4]])).label() == "Z/2"
    assert cokernel(IntMatrix.from_rows([[2, 0], [0, 2]])).label() == "Z/2 ⊕ Z/2"
    assert cokernel(IntMatrix.identity(3)).is_trivial


def test_cokernel_free_part():
    group = cokernel(IntMatrix.from_rows([[2, 0, 0]]))
    assert group.invariant_factors == (2, 0, 0)
    assert group.free_rank == 2
    assert group.torsion == (2,)
    assert group.order is None
    empty = cokernel(IntMatrix.zeros(0, 3))
    assert empty.free_rank == 3


def test_project_and_zero_classes():
    group = cokernel(IntMatrix.from_rows([[2, 0], [0, 3]]))
    assert group.is_zero_class((2, 0))
    assert group.is_zero_class((0, 3))
    assert group.is_zero_class((4, 6))
    assert not group.is_zero_class((1, 0))
    assert not group.is_zero_class((0, 1))
    with pytest.raises(DimensionMismatchError):
        group.project((1, 2, 3))


def test_sparse_cokernel_matches_dense():
    rows = [{0: 1, 1: -1}, {1: 1, 2: -1}, {2: 5}]
    dense = IntMatrix.from_sparse(rows, 3)
    assert sparse_cokernel(3, rows).invariant_factors == cokernel(dense).invariant_factors == (5,)


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_cokernel_ignores_redundant_relations(rows):
    base = cokernel(IntMatrix.from_rows(rows))
    extra = [list(r) for r in rows] + [[a - 3 * b for a, b in zip(rows[0], rows[-1])]]
    assert cokernel(IntMatrix.from_rows(extra)).invariant_factors == base.invariant_factors


def test_rank_and_left_kernel():
    m = IntMatrix.from_rows([[1, 2], [2, 4], [0, 1]])
    assert matrix_rank(m) == 2
    kernel = integer_left_kernel(m)
    assert len(kernel) == 1
    assert m.vector_times(kernel[0]) == (0, 0)
    assert integer_left_kernel(IntMatrix.identity(2)) == []


def test_lattice_membership():
    generators = [[2, 0], [0, 2]]
    assert lattice_membership(generators, [2, 4])
    assert not lattice_membership(generators, [1, 0])
    with pytest.raises(DimensionMismatchError):
        lattice_membership(generators, [1, 0, 0])


def test_lattice_membership_2local():
    assert lattice_membership_2local([[3, 0], [0, 1]], [1, 0])
    assert not lattice_membership_2local([[2, 0], [0, 1]], [1, 0])
    assert lattice_membership_2local([[6, 0], [0, 5]], [2, 1])
    assert not lattice_membership_2local([[6, 0], [0, 5]], [1, 1])


@settings(max_examples=60, deadline=None)
@given(small_matrices, st.data())
def test_integer_membership_implies_2local(rows, data):
    cols = len(rows[0])
    target = data.draw(st.lists(st.integers(-6, 6), min_size=cols, max_size=cols))
    if lattice_membership(rows, target):
        assert lattice_membership_2local(rows, target)
    combination = [sum(c * row[j] for c, row in zip(range(1, len(rows) + 1), rows)) for j in range(cols)]
    assert lattice_membership(rows, combination)


def test_series_inverse_over_z():
    line = TruncatedSeries.from_polynomial([1, 1], 0, 4)
    assert line.inverse().coefficients == (1, -1, 1, -1, 1)
    assert (line * line.inverse()).coefficients == TruncatedSeries.one(0, 4).coefficients
    with pytest.raises(NonUnitError):
        TruncatedSeries.from_polynomial([2, 1], 0, 4).inverse()
    with pytest.raises(NonUnitError):
        TruncatedSeries.from_polynomial([3, 1], 3, 4).inverse()


def test_series_negative_power_mod_2():
    line = TruncatedSeries.from_polynomial([1, 1], 2, 4)
    assert line.power(-5).coefficients == (1, 1, 1, 1, 0)
    assert line.power(0).coefficients == (1, 0, 0, 0, 0)


def test_series_compose():
    outer = TruncatedSeries.from_polynomial([1, 1], 0, 3)
    inner = TruncatedSeries.from_polynomial([0, 1, 1], 0, 3)
    assert outer.compose(inner).coefficients == (1, 1, 1, 0)
    with pytest.raises(HypermonoError):
        outer.compose(TruncatedSeries.from_polynomial([1, 1], 0, 3))


def test_series_truncation_mismatch():
    with pytest.raises(DimensionMismatchError):
        TruncatedSeries.one(0, 3) * TruncatedSeries.one(0, 4)


series_mod_7 = st.lists(st.integers(0, 6), min_size=5, max_size=5).map(
    lambda c: TruncatedSeries(7, tuple(c))
)


@given(series_mod_7, series_mod_7, series_mod_7)
def test_series_multiplication_is_associative(a, b, c):
    assert ((a * b) * c).coefficients == (a * (b * c)).coefficients


@given(series_mod_7)
def test_series_inverse_mod_7(a):
    if a[0] == 0:
        with pytest.raises(NonUnitError):
            a.inverse()
    else:
        assert (a * a.inverse()).coefficients == (1, 0, 0, 0, 0)


def test_finite_abelian_group():
    z28 = FiniteAbelianGroup.from_cyclic_orders([4, 7])
    assert z28.invariant_factors == (28,)
    assert z28.label() == "Z/28"
    assert z28.is_cyclic
    klein = FiniteAbelianGroup.from_cyclic_orders([2, 2])
    assert klein.label() == "Z/2 ⊕ Z/2"
    assert not klein.is_cyclic
    trivial = FiniteAbelianGroup.from_cyclic_orders([1, 1])
    assert trivial.is_trivial and trivial.order == 1 and trivial.label() == "0"
    assert z28.to_dict() == {"invariant_factors": [28], "order": 28, "label": "Z/28"}
    with pytest.raises(HypermonoError):
        FiniteAbelianGroup.from_cyclic_orders([0])


def test_ragged_rows_rejected():
    with pytest.raises(DimensionMismatchError):
        IntMatrix.from_rows([[1, 2], [3]])
    assert gcd_all([12, 18, 30]) == 6
