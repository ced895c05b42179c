import itertools

import pytest

import hypersurface
import quadform
from exactalg import BoundExceededError, DegreeError, DimensionMismatchError, HypermonoError, IntMatrix
from quadform import QuadraticSpace


def test_pairing():
    e1, f1 = (1, 0), (0, 1)
    assert quadform.symplectic_pairing(e1, f1) == 1
    assert quadform.symplectic_pairing(f1, e1, 4) == 3
    assert quadform.symplectic_pairing(e1, e1, 4) == 0
    with pytest.raises(DimensionMismatchError):
        quadform.symplectic_pairing((1, 0), (1, 0, 0, 0))


def test_transvections_are_symplectic():
    vectors = list(itertools.product(range(4), repeat=2))
    for v in quadform._nonzero_vectors(2, 4):
        t = quadform.transvection(v, 4)
        for a in vectors:
            for b in vectors:
                ta, tb = quadform._apply(t, a, 4), quadform._apply(t, b, 4)
                assert quadform.symplectic_pairing(ta, tb, 4) == quadform.symplectic_pairing(a, b, 4)


@pytest.mark.parametrize("g", [1, 2])
def test_arf_agrees_with_zero_count_for_every_refinement(g):
    for values in itertools.product((0, 1), repeat=2 * g):
        space = QuadraticSpace(g, values)
        assert space.refinement_identity_holds()
        assert quadform.arf(space) == quadform.arf_by_zero_count(space)


def test_standard_spaces():
    for g in (1, 2, 3):
        for a in (0, 1):
            assert quadform.arf(QuadraticSpace.standard(g, a)) == a
    assert QuadraticSpace.standard(2, 1).zero_count() == 6
    assert QuadraticSpace.standard(2, 0).zero_count() == 10
    with pytest.raises(HypermonoError):
        QuadraticSpace.standard(0, 1)
    with pytest.raises(DimensionMismatchError):
        QuadraticSpace(2, (0, 1))


@pytest.mark.parametrize("d, value", [(1, 0), (3, 1), (5, 1), (7, 0), (9, 0), (11, 1), (15, 0)])
def test_arf_of_hypersurface(d, value):
    assert quadform.arf_of_hypersurface(d) == value


def test_arf_of_hypersurface_needs_odd_degree():
    with pytest.raises(DegreeError):
        quadform.arf_of_hypersurface(4)


@pytest.mark.parametrize(
    "g, arf_value, order",
    [(1, 0, 2), (1, 1, 6), (2, 0, 72), (2, 1, 120)],
)
def test_orthogonal_group_orders(g, arf_value, order):
    space = QuadraticSpace.standard(g, arf_value)
    group = quadform.orthogonal_group(space)
    assert len(group) == order
    assert all(space.preserves(h) for h in group)


@pytest.mark.parametrize(
    "g, arf_value, order",
    [(1, 0, 2), (1, 1, 6), (2, 0, 36), (2, 1, 120)],
)
def test_transvection_group_over_f2(g, arf_value, order):
    assert len(quadform.transvection_group(QuadraticSpace.standard(g, arf_value))) == order


def test_transvection_group_over_z_mod_n():
    assert len(quadform.transvection_group(3, 1)) == 24
    assert len(quadform.transvection_group(4, 1)) == 48
    with pytest.raises(HypermonoError):
        quadform.transvection_group(3)
    with pytest.raises(BoundExceededError):
        quadform.transvection_group(3, 3)


def test_closure_bound():
    generators = [quadform.transvection(v, 4) for v in quadform._nonzero_vectors(2, 2)]
    with pytest.raises(BoundExceededError):
        quadform._closure(generators, 2, 4, bound=10)


@pytest.mark.parametrize(
    "g, arf_value, sizes",
    [(1, 0, [1, 2]), (1, 1, [3]), (2, 0, [6, 9]), (2, 1, [5, 10])],
)
def test_orbits_are_level_sets(g, arf_value, sizes):
    partition = quadform.orbit_check(QuadraticSpace.standard(g, arf_value))
    assert sorted(partition.sizes) == sizes
    assert partition.transitive_on_levels
    assert partition.to_dict()["arf"] == arf_value


@pytest.mark.parametrize("arf_value", [0, 1])
def test_two_orbits_at_genus_3(arf_value):
    partition = quadform.orbit_check(QuadraticSpace.standard(3, arf_value))
    assert len(partition.orbits) == 2
    assert partition.transitive_on_levels
    assert sum(partition.sizes) == 63


@pytest.mark.parametrize("n", [2, 3, 4])
def test_invariant_subgroup_scan(n):
    report = quadform.invariant_subgroup_scan(n, 2, 0)
    assert report.all_of_form_k_times_lattice
    assert report.witnesses == ()
    assert report.subgroups_checked == n**4 - 1
    assert report.k_values == ((1, 2) if n == 4 else (1,))
    assert report.to_dict()["acting_group"] == report.acting_group
    assert report.acting_group.startswith("image of Aut(H, lambda, q)")


def test_invariant_subgroup_scan_arguments():
    with pytest.raises(HypermonoError):
        quadform.invariant_subgroup_scan(5, 2, 0)
    with pytest.raises(BoundExceededError):
        quadform.invariant_subgroup_scan(2, 3, 0)


def test_content_gcd():
    assert quadform.content_gcd((2, 0, 2, 2), 4) == 2
    assert quadform.content_gcd((1, 2, 0, 0), 4) == 1
    assert quadform.content_gcd((0, 3, 0, 0), 3) == 3


def test_ker_rho_description():
    assert quadform.ker_rho_description(2).is_trivial
    group = quadform.ker_rho_description(3)
    assert group.invariant_factors == (3,) * 10
    assert quadform.ker_rho_description(4).order == 2**60
    assert quadform.coinvariant_order(6, 9) == 3


def test_pi3_model_odd_degree():
    model = quadform.Pi3Model.build(3)
    assert model.g == 5
    assert model.arf_value == 1
    assert model.eta.is_zero
    assert model.radical_order() == 3
    e1 = ((1,) + (0,) * 9, 0)
    f1 = ((0, 1) + (0,) * 8, 0)
    assert model.lambda_pi3(e1, f1) == 1
    assert model.lambda_pi3(f1, e1) == -1
    assert model.mu(e1) == 1
    assert model.mu(((1, 1) + (0,) * 8, 2)) == 1
    with pytest.raises(DimensionMismatchError):
        model.mu(((1, 0), 0))


def test_pi3_model_even_degree():
    model = quadform.Pi3Model.build(4, genus=2)
    assert model.g == 2
    assert model.arf_value is None
    zero = (0, 0, 0, 0)
    assert model.mu((zero, 1)) == 1
    assert model.mu((zero, 2)) == 0
    assert model.to_dict()["radical_order"] == 4


@pytest.mark.parametrize(
    "n, acting_group",
    [
        (2, "image of Aut(H, lambda, q): O(q) over F_2"),
        (3, "image of Aut(H, lambda, q): Sp(Z/3)"),
        (4, "image of Aut(H, lambda, q): preimage of O(q) in Sp(Z/4)"),
    ],
)
def test_acting_group_is_named(n, acting_group):
    description, generators = quadform.acting_generators(n, 2, 0)
    assert description == acting_group
    assert generators
    if n == 2:
        assert len(generators) == 72


def test_pi3_model_pairing_matrix():
    model = quadform.Pi3Model.build(5, genus=1)
    assert model.relation_matrix().to_rows() == [[0, 0, 5]]
    assert model.pairing_matrix().to_rows() == [[0, 1, 0], [-1, 0, 0], [0, 0, 0]]
    assert model.radical_order() == 5


@pytest.mark.parametrize("d", [2, 6, 7])
def test_radical_of_genus_zero_model(d):
    model = quadform.Pi3Model(d=d, g=0, eta=hypersurface.mu_restriction_on_eta(d), arf_value=None)
    assert model.radical_order() == d


def test_radical_of_degenerate_form_is_infinite(monkeypatch):
    monkeypatch.setattr(
        quadform.Pi3Model, "gram_matrix", lambda self: IntMatrix.zeros(2 * self.g, 2 * self.g)
    )
    assert quadform.Pi3Model.build(3, genus=1).radical_order() is None


def test_radical_of_scaled_form(monkeypatch):
    # nondegenerate but not unimodular: the radical is still Z/d{eta}
    monkeypatch.setattr(
        quadform.Pi3Model, "gram_matrix", lambda self: IntMatrix.from_rows([[0, 2], [-2, 0]])
    )
    assert quadform.Pi3Model.build(3, genus=1).radical_order() == 3
