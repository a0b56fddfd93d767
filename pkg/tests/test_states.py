"""State family constructors: worked values, symmetries, detection thresholds."""

import math

import numpy as np
import pytest

from entwit.qstate import (
    Dims,
    negativity,
    partial_transpose,
    pure_negativity,
    realignment_value,
    schmidt,
    to_json,
)
from entwit.states import (
    StateSpec,
    bennett_rho,
    example1_mixture,
    example2_mixture,
    isotropic,
    max_entangled,
    pure_from_schmidt,
    random_density,
    random_pure,
    rho_a,
)
from entwit.witness import detect_entanglement


def ket(d, i):
    v = np.zeros(d, dtype=complex)
    v[i] = 1.0
    return v


class TestMaxEntangled:
    def test_bell_state(self):
        psi = max_entangled(2)
        want = (np.kron(ket(2, 0), ket(2, 0)) + np.kron(ket(2, 1), ket(2, 1))) / math.sqrt(2)
        assert np.max(np.abs(psi.vec - want)) < 1e-15

    def test_flat_schmidt_spectrum(self):
        mu = schmidt(max_entangled(3)).coefficients
        assert np.max(np.abs(mu - 1.0 / 3.0)) < 1e-12

    def test_unit_pure_negativity_every_d(self):
        for d in (2, 3, 4, 5):
            assert abs(pure_negativity(max_entangled(d)) - 1.0) < 1e-12

    def test_small_d_rejected(self):
        with pytest.raises(ValueError):
            max_entangled(1)


class TestIsotropic:
    def test_endpoints(self):
        assert np.max(np.abs(isotropic(3, 0.0).mat - np.eye(9) / 9.0)) < 1e-15
        assert np.max(np.abs(isotropic(3, 1.0).mat - max_entangled(3).projector().mat)) < 1e-15

    def test_ppt_boundary(self):
        # the family turns NPT exactly at x = 1/(d+1)
        rho = isotropic(3, 0.25)
        lam = np.linalg.eigvalsh(partial_transpose(rho))[0]
        assert abs(lam) < 1e-10

    def test_positivity_range_enforced(self):
        with pytest.raises(ValueError):
            isotropic(3, 1.0 + 1e-6)
        with pytest.raises(ValueError):
            isotropic(3, -1.0 / 8.0 - 1e-6)
        isotropic(3, -1.0 / 8.0)  # boundary itself is a state

    def test_twirl_invariance(self):
        # U (x) U* twirling is the defining symmetry of the family
        rng = np.random.default_rng(3)
        rho = isotropic(3, 0.6)
        for _ in range(5):
            g = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
            u, _ = np.linalg.qr(g)
            big = np.kron(u, u.conj())
            assert np.max(np.abs(big @ rho.mat @ big.conj().T - rho.mat)) < 1e-9


def tiles_second_path():
    """Rebuild the five UPB vectors straight from their formulas."""
    z, o, t = ket(3, 0), ket(3, 1), ket(3, 2)
    s = 1 / math.sqrt(2)
    return [
        np.kron(z, s * (z - o)),
        np.kron(s * (z - o), t),
        np.kron(t, s * (o - t)),
        np.kron(s * (o - t), z),
        np.kron(z + o + t, z + o + t) / 3.0,
    ]


class TestBennettRho:
    def test_upb_orthonormality(self):
        xs = tiles_second_path()
        for i, a in enumerate(xs):
            for j, b in enumerate(xs):
                assert abs(np.vdot(a, b) - (1.0 if i == j else 0.0)) < 1e-14

    def test_matches_independent_rebuild(self):
        mat = np.eye(9, dtype=complex)
        for xi in tiles_second_path():
            mat -= np.outer(xi, xi.conj())
        assert np.max(np.abs(bennett_rho().mat - mat / 4.0)) < 1e-14

    def test_ppt_but_realignment_entangled(self):
        rho = bennett_rho()
        assert np.linalg.eigvalsh(partial_transpose(rho))[0] > -1e-12
        assert realignment_value(rho) > 1.0


class TestExample1Mixture:
    def test_endpoints(self):
        assert np.max(np.abs(example1_mixture(0.0).mat - bennett_rho().mat)) < 1e-15
        assert np.max(np.abs(example1_mixture(1.0).mat - max_entangled(3).projector().mat)) < 1e-15

    def test_detection_threshold_bracketing(self):
        det_hi, _ = detect_entanglement(example1_mixture(0.2))
        det_lo, _ = detect_entanglement(example1_mixture(0.15))
        assert det_hi and not det_lo

    def test_range_enforced(self):
        with pytest.raises(ValueError):
            example1_mixture(-0.01)
        with pytest.raises(ValueError):
            example1_mixture(1.01)


class TestRhoA:
    def test_valid_state_at_grid(self):
        for a in (0.05, 0.236, 0.9):
            rho = rho_a(a)
            assert abs(np.trace(rho.mat).real - 1.0) < 1e-12
            assert np.linalg.eigvalsh(rho.mat)[0] > -1e-12

    def test_realignment_peaks_near_printed_value(self):
        grid = np.arange(0.20, 0.30, 0.001)
        vals = [realignment_value(rho_a(a)) for a in grid]
        best = grid[int(np.argmax(vals))]
        assert abs(best - 0.236) < 1.5e-3
        assert max(vals) > 1.0

    def test_ppt_at_peak(self):
        # bound entangled: PPT yet realignment-positive (measured lambda_min
        # of the partial transpose is ~ -4e-18 at a = 0.236)
        rho = rho_a(0.236)
        assert np.linalg.eigvalsh(partial_transpose(rho))[0] > -1e-12
        assert abs(negativity(rho)) < 1e-12

    def test_range_enforced(self):
        for a in (0.0, 1.0, -0.1, 1.1):
            with pytest.raises(ValueError):
                rho_a(a)


class TestExample2Mixture:
    def test_p_zero_is_rho_a(self):
        assert np.max(np.abs(example2_mixture(0.4, 0.0).mat - rho_a(0.4).mat)) < 1e-15

    def test_tiny_admixture_detected(self):
        det, _ = detect_entanglement(example2_mixture(0.236, 0.01))
        assert det

    def test_range_enforced(self):
        with pytest.raises(ValueError):
            example2_mixture(0.236, 1.2)
        with pytest.raises(ValueError):
            example2_mixture(1.2, 0.5)


class TestRandomStates:
    def test_deterministic_per_seed(self):
        a = random_density(Dims(3, 3), 4, seed=17)
        b = random_density(Dims(3, 3), 4, seed=17)
        assert np.array_equal(a.mat, b.mat)
        pa = random_pure(Dims(2, 3), seed=5)
        pb = random_pure(Dims(2, 3), seed=5)
        assert np.array_equal(pa.vec, pb.vec)

    def test_rank_one_is_pure(self):
        rho = random_density(Dims(2, 2), 1, seed=1)
        assert abs(np.trace(rho.mat @ rho.mat).real - 1.0) < 1e-10

    def test_full_rank_has_positive_spectrum(self):
        rho = random_density(Dims(2, 3), 6, seed=2)
        assert np.linalg.eigvalsh(rho.mat)[0] > 0.0

    def test_bad_rank_rejected(self):
        with pytest.raises(ValueError):
            random_density(Dims(2, 2), 0, seed=0)
        with pytest.raises(ValueError):
            random_density(Dims(2, 2), 5, seed=0)


class TestPureFromSchmidt:
    def test_worked_examples(self):
        psi = pure_from_schmidt([1.0], 2)
        assert abs(psi.vec[0] - 1.0) < 1e-15 and np.max(np.abs(psi.vec[1:])) == 0.0
        bell = pure_from_schmidt([0.5, 0.5], 2)
        assert np.max(np.abs(bell.vec - max_entangled(2).vec)) < 1e-15

    def test_schmidt_round_trip(self):
        rng = np.random.default_rng(23)
        for d in (3, 4):
            mu = rng.dirichlet(np.ones(d))
            psi = pure_from_schmidt(mu, d)
            got = schmidt(psi).coefficients
            assert np.max(np.abs(got - np.sort(mu)[::-1])) < 1e-12

    def test_invalid_spectra_rejected(self):
        with pytest.raises(ValueError):
            pure_from_schmidt([0.6, 0.6], 2)
        with pytest.raises(ValueError):
            pure_from_schmidt([1.2, -0.2], 2)
        with pytest.raises(ValueError):
            pure_from_schmidt([0.2] * 5, 3)


class TestStateSpec:
    def test_each_family_builds(self, tmp_path):
        path = tmp_path / "state.json"
        path.write_text(to_json(isotropic(2, 0.5)))
        cases = [
            ({"family": "isotropic", "d": 3, "x": 0.3}, isotropic(3, 0.3).mat),
            ({"family": "max_entangled", "d": 2}, max_entangled(2).projector().mat),
            ({"family": "bennett_mix", "p": 0.2}, example1_mixture(0.2).mat),
            ({"family": "rho_a_mix", "a": 0.236, "p": 0.1}, example2_mixture(0.236, 0.1).mat),
            ({"family": "random_pure", "d": 2, "seed": 9}, random_pure(Dims(2, 2), 9).projector().mat),
            ({"family": "random_density", "d": 2, "rank": 3, "seed": 9}, random_density(Dims(2, 2), 3, 9).mat),
            ({"family": "schmidt_pure", "mu": [0.5, 0.5], "d": 2}, pure_from_schmidt([0.5, 0.5], 2).projector().mat),
            ({"family": "json_file", "path": str(path)}, isotropic(2, 0.5).mat),
        ]
        for doc, want in cases:
            got = StateSpec.from_dict(doc).build()
            assert np.max(np.abs(got.mat - want)) < 1e-14, doc["family"]

    def test_bad_specs_rejected(self):
        with pytest.raises(ValueError):
            StateSpec.from_dict({"family": "werner", "d": 3})
        with pytest.raises(ValueError):
            StateSpec.from_dict({"family": "isotropic", "d": 3})
        with pytest.raises(ValueError):
            StateSpec.from_dict({"d": 3, "x": 0.3})
        with pytest.raises(ValueError):
            StateSpec.from_dict({"family": "isotropic", "d": 3, "x": 0.3, "p": 1})
