import numpy as np
import pytest

from photon_slh import DimensionMismatch, ModelError, PhotonSlhException
from photon_slh.config import SolverConfig
from photon_slh.entities.operator_entities import Operator
from photon_slh.operators import (commutator, embed_site, ground_state, identity, row_proportionality_test,
                                  sigma_minus, sigma_plus, sigma_x, sigma_z, vector_eigen_test, zero)


class TestOperator:

    def test_rejects_non_square_and_non_finite_entries(self):
        with pytest.raises(ModelError):
            Operator([[1, 2, 3], [4, 5, 6]])
        with pytest.raises(ModelError):
            Operator([[np.nan, 0], [0, 1]])

    def test_entries_are_read_only(self):
        op = sigma_z()
        with pytest.raises(ValueError):
            op.entries[0, 0] = 5

    def test_arithmetic(self):
        assert (sigma_plus() + sigma_minus()) == sigma_x()
        assert (sigma_x() - sigma_plus()) == sigma_minus()
        assert 2 * sigma_z() == sigma_z() * 2
        assert np.float64(2.0) * sigma_z() == Operator(np.diag([-2.0, 2.0]))
        assert sigma_plus().dagger() == sigma_minus()
        assert (sigma_plus() @ sigma_minus()).allclose(Operator(np.diag([0, 1])), atol=0)

    def test_mismatched_dimensions(self):
        with pytest.raises(DimensionMismatch):
            sigma_z() + identity(3)

    def test_norm_and_hermiticity(self):
        assert sigma_x().norm() == pytest.approx(np.sqrt(2))
        assert sigma_z().is_hermitian(1e-12)
        assert not sigma_minus().is_hermitian(1e-12)


class TestCommutator:

    def test_raising_lowering_gives_sigma_z(self):
        c = commutator(sigma_plus(), sigma_minus())
        assert c == sigma_z()
        np.testing.assert_array_equal(c.apply(ground_state(2)), -ground_state(2))

    def test_self_commutator_vanishes(self):
        assert commutator(sigma_x(), sigma_x()) == zero(2)

    def test_lowering_with_sigma_z(self):
        assert commutator(sigma_minus(), sigma_z()) == 2 * sigma_minus()

    def test_antisymmetry(self, rng):
        a = Operator(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
        b = Operator(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
        assert commutator(a, b).allclose(-commutator(b, a), atol=1e-14)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            commutator(sigma_z(), identity(3))


class TestVectorEigenTest:

    def test_ground_energy_of_two_level_hamiltonian(self):
        report = vector_eigen_test(sigma_z() * 1.5, ground_state(2), 1e-10)
        assert report.holds
        assert report.eigenvalue == pytest.approx(-1.5)

    def test_identity(self, rng):
        v = rng.normal(size=3) + 1j * rng.normal(size=3)
        report = vector_eigen_test(identity(3), v, 1e-10)
        assert report.holds
        assert report.eigenvalue == pytest.approx(1)
        assert report.residual == 0

    def test_raising_operator_has_no_eigenvector_at_ground(self):
        report = vector_eigen_test(sigma_plus(), ground_state(2), 1e-10)
        assert not report.holds
        assert report.residual == pytest.approx(1)

    def test_zero_vector_is_degenerate(self):
        report = vector_eigen_test(sigma_z(), np.zeros(2), 1e-10)
        assert not report.holds
        assert report.eigenvalue is None
        assert report.to_dict()['residual'] is None

    def test_synthesized_eigenvector(self, rng):
        q, _ = np.linalg.qr(rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5)))
        eigenvalues = rng.normal(size=5) + 1j * rng.normal(size=5)
        a = Operator(q @ np.diag(eigenvalues) @ q.conj().T)
        report = vector_eigen_test(a, q[:, 2], 1e-10)
        assert report.residual < 1e-12
        assert report.eigenvalue == pytest.approx(eigenvalues[2], abs=1e-12)


class TestRowProportionality:

    def test_commutator_of_two_level_model(self):
        omega_c = 3.0
        report = row_proportionality_test(commutator(sigma_minus(), sigma_z() * (omega_c / 2)), sigma_minus(),
                                          ground_state(2), 1e-10)
        assert report.holds
        assert report.eigenvalue == pytest.approx(omega_c)

    def test_zero_operator_is_proportional(self):
        report = row_proportionality_test(zero(2), sigma_minus(), ground_state(2), 1e-10)
        assert report.holds
        assert report.eigenvalue == 0

    def test_sigma_z_is_not_proportional_to_lowering(self):
        report = row_proportionality_test(sigma_z(), sigma_minus(), ground_state(2), 1e-10)
        assert not report.holds

    def test_vanishing_reference_row(self):
        holds = row_proportionality_test(zero(2), zero(2), ground_state(2), 1e-10)
        assert holds.holds and holds.eigenvalue is None
        fails = row_proportionality_test(sigma_z(), zero(2), ground_state(2), 1e-10)
        assert not fails.holds and fails.eigenvalue is None


class TestEmbedSite:

    def test_single_site_is_unchanged(self):
        assert embed_site(sigma_z(), 0, 1) == sigma_z()

    def test_second_site_is_rightmost_factor(self):
        expected = np.kron(np.eye(2), sigma_minus().entries)
        np.testing.assert_array_equal(embed_site(sigma_minus(), 1, 2).entries, expected)

    def test_moves_excitation_between_sites(self):
        # |0,1> has index 1 with site 0 leftmost
        v = np.zeros(4)
        v[1] = 1
        moved = (embed_site(sigma_plus(), 0, 2) @ embed_site(sigma_minus(), 1, 2)).apply(v)
        expected = np.zeros(4)
        expected[2] = 1
        np.testing.assert_array_equal(moved, expected)

    def test_distinct_sites_commute(self, rng):
        a = Operator(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
        b = Operator(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
        for i, j in [(0, 1), (0, 2), (1, 2)]:
            assert commutator(embed_site(a, i, 3), embed_site(b, j, 3)).norm() < 1e-13

    def test_dimension_cap(self):
        with pytest.raises(PhotonSlhException, match="cap of 64"):
            embed_site(sigma_z(), 0, 7)
        assert embed_site(sigma_z(), 0, 7, SolverConfig(max_dim=128)).dim == 128

    def test_dimension_cap_from_environment(self, monkeypatch):
        monkeypatch.setenv('PHOTON_SLH_MAX_DIM', '8')
        with pytest.raises(PhotonSlhException, match="cap of 8"):
            embed_site(sigma_z(), 0, 4)
