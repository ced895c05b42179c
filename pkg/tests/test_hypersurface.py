import pytest

import hypersurface
from exactalg import DegreeError


def test_cp3_cross_check():
    inv = hypersurface.compute_invariants(1)
    assert inv.chern == (4, 6, 4)
    assert inv.euler_char == 4
    assert inv.b3 == 0
    assert inv.g == 0


def test_quintic():
    inv = hypersurface.compute_invariants(5)
    assert inv.chern == (0, 10, -40)
    assert inv.euler_char == -200
    assert inv.b3 == 204
    assert inv.g == 102
    assert inv.p1_coeff == -100
    assert inv.spin


@pytest.mark.parametrize("d", range(1, 51))
def test_closed_forms(d):
    inv = hypersurface.compute_invariants(d)
    assert inv.chern == (5 - d, d * d - 5 * d + 10, -(d**3) + 5 * d * d - 10 * d + 10)
    assert inv.euler_char == -(d**4) + 5 * d**3 - 10 * d**2 + 10 * d
    assert inv.b3 == d**4 - 5 * d**3 + 10 * d**2 - 10 * d + 4
    assert inv.b3 % 2 == 0
    assert inv.p1_coeff == d * ((5 - d) ** 2 - 2 * (d * d - 5 * d + 10))
    assert inv.spin == (d % 2 == 1)


def test_wu_class():
    assert hypersurface.compute_invariants(4).v4_coeff_mod2 == 1
    assert hypersurface.compute_invariants(5).v4_coeff_mod2 == 0


def test_virtual_chern_series_even_degree():
    for d in (2, 4, 6):
        series = hypersurface.virtual_chern_series(d, 2, 4)
        assert series.coefficients == (1, 1, 1, 1, 0)


def test_virtual_chern_series_inverts_tangent_series():
    for d in (3, 7):
        tangent = hypersurface.chern_series(d, 4)
        virtual = hypersurface.virtual_chern_series(d, 0, 4)
        assert (tangent * virtual).coefficients == (1, 0, 0, 0, 0)


def test_eta_restriction():
    even = hypersurface.mu_restriction_on_eta(4)
    assert even.is_surjective and even(3) == 1 and even(2) == 0
    odd = hypersurface.mu_restriction_on_eta(3)
    assert odd.is_zero and odd(1) == 0
    assert odd.to_dict() == {"d": 3, "image_of_generator": 0, "is_zero": True}


def test_cohomology_ranks():
    assert hypersurface.cohomology_ranks(3) == (1, 0, 1, 10, 1, 0, 1)
    assert hypersurface.cohomology_ranks(2) == (1, 0, 1, 0, 1, 0, 1)


def test_degenerate_notes():
    assert "Z/4" in hypersurface.degenerate_note(1)
    assert "trivial" in hypersurface.degenerate_note(2)
    assert hypersurface.degenerate_note(3) is None


def test_degree_errors():
    with pytest.raises(DegreeError):
        hypersurface.compute_invariants(0)
    with pytest.raises(DegreeError):
        hypersurface.degenerate_note(-1)


def test_invariants_table():
    table = hypersurface.invariants_table(1, 3)
    assert [inv.d for inv in table] == [1, 2, 3]
    assert table[2].to_dict()["chern"] == [2, 4, -2]


def test_stiefel_whitney_series():
    assert hypersurface.stiefel_whitney_series(4, 3).coefficients == (1, 1, 0, 0)
    assert hypersurface.stiefel_whitney_series(5, 3).coefficients == (1, 0, 0, 0)
    assert hypersurface.wu_class_v4(hypersurface.stiefel_whitney_series(4, 3)) == 1
    assert hypersurface.wu_class_v4(hypersurface.stiefel_whitney_series(5, 3)) == 0
