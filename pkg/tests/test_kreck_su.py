import pytest

import kreck_su
from exactalg import DegreeError


def test_residue_table_partitions_z16():
    lookup = kreck_su._check_residue_table()
    assert sorted(lookup) == list(range(16))


@pytest.mark.parametrize(
    "d, label",
    [(6, "Z/28"), (7, "0"), (19, "Z/14"), (8, "Z/14"), (14, "Z/4"), (1, "Z/7")],
)
def test_ker_phi(d, label):
    assert kreck_su.ker_phi(d).label() == label


@pytest.mark.parametrize("d, label", [(12, "Z/6"), (5, "0"), (9, "Z/3"), (4, "Z/2"), (24, "Z/6")])
def test_coker_phi(d, label):
    assert kreck_su.coker_phi(d).label() == label


@pytest.mark.parametrize("d, label", [(5, "Z/2"), (7, "Z/28"), (2, "0"), (3, "Z/2"), (16, "Z/4"), (14, "Z/7")])
def test_theta7_mod_ker(d, label):
    assert kreck_su.theta7_mod_ker(d).label() == label


def test_orders_multiply_to_28():
    for d in range(1, 501):
        assert kreck_su.theta7_order_check(d)
        assert kreck_su.theta7_mod_ker(d).is_cyclic
        coker = kreck_su.coker_phi(d)
        if not coker.is_trivial:
            assert d % 4 == 0 or d % 3 == 0


def test_k_constant():
    assert kreck_su.k_constant(3) == -3
    assert kreck_su.k_constant(5) == -25
    assert kreck_su.k_constant(1) == 1
    assert kreck_su.k_constant(4) is None


def test_table_row():
    row = kreck_su.table_row(12)
    assert row.im_phi_order == 1
    assert row.k_d_order == 6
    assert kreck_su.table_row(7).im_phi_order == 28
    out = row.to_dict()
    assert out["coker_phi"]["label"] == "Z/6"
    assert "k_constant" not in out
    assert kreck_su.table_row(3).to_dict()["k_constant"] == -3


def test_mcg_table():
    rows = kreck_su.mcg_table(1, 16)
    assert [r.d for r in rows] == list(range(1, 17))
    with pytest.raises(DegreeError):
        kreck_su.mcg_table(5, 4)
    with pytest.raises(DegreeError):
        kreck_su.ker_phi(0)


def test_finite_residual():
    assert kreck_su.finite_residual(3) == {
        "finite_residual": {"invariant_factors": [2], "order": 2, "label": "Z/2"},
        "residually_finite": False,
    }
    assert kreck_su.finite_residual(6)["residually_finite"]
