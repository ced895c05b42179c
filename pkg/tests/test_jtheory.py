import pytest

import jtheory
from exactalg import DegreeError, HypermonoError, IntegralityError
from jtheory import KClass, KOClass, Y, Y2


def test_complexification():
    assert jtheory.complexify(Y).coefficients == (0, 1, -1, 1)
    assert jtheory.complexify(Y2).coefficients == (0, 0, 0, 1)
    assert jtheory.complexification_is_injective()


@pytest.mark.parametrize(
    "j, expected",
    [(1, (1, 0)), (2, (2, 1)), (3, (0, 3)), (4, (0, 2))],
)
def test_realification_of_powers(j, expected):
    assert jtheory.realify(KClass.basis(j)).vector == expected


def test_realify_then_complexify_is_conjugation_sum():
    x = KClass.basis(2)
    assert jtheory.complexify(jtheory.realify(x)) == x + jtheory.adams_psi_C(-1, x)


def test_image_of_complexification_is_checked():
    with pytest.raises(IntegralityError):
        jtheory._solve_c(KClass.basis(1))


def test_adams_operations():
    assert jtheory.adams_psi_R(3, Y).vector == (9, 6)
    assert jtheory.adams_psi_R(3, Y2).vector == (0, 81)
    assert jtheory.adams_psi_C(2, KClass.basis(1)).coefficients == (2, 1, 0, 0)
    assert jtheory.adams_psi_C(1, KClass((1, 2, 3, 4))).coefficients == (1, 2, 3, 4)


@pytest.mark.parametrize("k", [2, 3, 5, 7])
def test_complexification_commutes_with_adams(k):
    for cls in (Y, Y2, KOClass(3, -2)):
        assert jtheory.complexify(jtheory.adams_psi_R(k, cls)) == jtheory.adams_psi_C(
            k, jtheory.complexify(cls)
        )


def test_kernel_lattice():
    assert jtheory.j2_kernel_lattice([3]) == [(8, 6), (0, 80)]
    with pytest.raises(HypermonoError):
        jtheory.j2_kernel_lattice([])


def test_lattice_stability():
    result = jtheory.lattice_stability()
    assert result["large_contains_small"]
    assert result["equal_2local"]


def test_two_adic_valuation():
    assert jtheory.two_adic_valuation(24) == 3
    assert jtheory.two_adic_valuation(7) == 0
    with pytest.raises(HypermonoError):
        jtheory.two_adic_valuation(0)


def test_james_check_degree_8():
    verdict = jtheory.james_periodicity_check(8)
    assert verdict.two_adic_valuation == 3
    assert verdict.target_shift == 59
    assert verdict.class_vector == (59, 336)
    assert verdict.holds
    assert verdict.reduction_holds


def test_james_check_degree_4():
    verdict = jtheory.james_periodicity_check(4)
    assert verdict.target_shift == 27
    assert verdict.class_vector == (11, 20)
    assert verdict.holds
    assert verdict.to_dict()["class_vector"] == [11, 20]


def test_james_check_wrong_shift_fails():
    assert not jtheory.james_periodicity_check(8, m=5).holds


@pytest.mark.parametrize("d", range(4, 65, 4))
def test_james_check_holds_for_multiples_of_4(d):
    assert jtheory.james_periodicity_check(d).holds


@pytest.mark.parametrize("d", [0, 6, -4])
def test_james_check_needs_multiple_of_4(d):
    with pytest.raises(DegreeError):
        jtheory.james_periodicity_check(d)


def test_kclass_validation():
    with pytest.raises(HypermonoError):
        KClass((1, 2))
