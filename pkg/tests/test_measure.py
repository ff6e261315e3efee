"""Projective pair measurement: exact enumeration and seeded sampling."""

import math

import numpy as np
import pytest

from teleportrix import measure, qcore
from teleportrix.ebasis import BASIS_LABELS, BasisParams, general_basis, resource_state
from teleportrix.errors import BadPair
from teleportrix.qcore import make_state, states_close, tensor


def haar_input(rng):
    vec = rng.normal(size=2) + 1j * rng.normal(size=2)
    vec = vec / np.linalg.norm(vec)
    return complex(vec[0]), complex(vec[1])


def classic_setup(alpha, beta, n=1.0):
    state = tensor(make_state(("a",), (alpha, beta)), resource_state(n))
    return state


class TestProjectAll:
    def test_classic_teleportation_branches(self):
        alpha, beta = 0.6, 0.8j
        outcomes = measure.project_all(
            classic_setup(alpha, beta), ("a", "1"), general_basis(BasisParams(1, 1))
        )
        expected_residuals = {
            "PhiPlus": (alpha, beta),
            "PhiMinus": (alpha, -beta),
            "PsiPlus": (beta, alpha),
            "PsiMinus": (-beta, alpha),
        }
        for outcome in outcomes:
            assert outcome.probability == pytest.approx(0.25, abs=1e-12)
            target = make_state(("2",), expected_residuals[outcome.label])
            assert states_close(outcome.residual, target)

    def test_deterministic_single_outcome(self):
        state = tensor(qcore.basis_state(("a", "b"), "00"), make_state(("c",), (0.6, 0.8)))
        outcomes = measure.project_all(state, ("a", "b"), general_basis(BasisParams(0, 0)))
        probs = {o.label: o.probability for o in outcomes}
        assert probs["PhiPlus"] == pytest.approx(1.0, abs=1e-12)
        assert probs["PhiMinus"] == pytest.approx(0.0, abs=1e-12)
        assert outcomes[1].residual is None

    def test_branch_probability_input_independent(self):
        rng = np.random.default_rng(3)
        basis = general_basis(BasisParams(0.5, 0.5))
        for _ in range(20):
            alpha, beta = haar_input(rng)
            outcomes = measure.project_all(
                classic_setup(alpha, beta, n=0.5), ("a", "1"), basis
            )
            probs = {o.label: o.probability for o in outcomes}
            assert probs["PhiMinus"] == pytest.approx(0.16, abs=1e-12)
            assert probs["PsiPlus"] == pytest.approx(0.16, abs=1e-12)

    def test_probability_conservation_random(self):
        rng = np.random.default_rng(5)
        for _ in range(1000):
            vec = rng.normal(size=8) + 1j * rng.normal(size=8)
            state = make_state(("a", "b", "c"), vec)
            basis = general_basis(BasisParams(
                complex(rng.uniform(-2, 2), rng.uniform(-2, 2)),
                complex(rng.uniform(-2, 2), rng.uniform(-2, 2)),
            ))
            pair = tuple(rng.permutation(["a", "b", "c"])[:2])
            outcomes = measure.project_all(state, pair, basis)
            assert abs(sum(o.probability for o in outcomes) - 1.0) < 1e-10

    def test_residual_mixture_reconstructs_reduced_density(self):
        rng = np.random.default_rng(9)
        for _ in range(100):
            vec = rng.normal(size=8) + 1j * rng.normal(size=8)
            state = make_state(("a", "b", "c"), vec)
            basis = general_basis(BasisParams(
                complex(rng.uniform(-2, 2), rng.uniform(-2, 2)),
                complex(rng.uniform(-2, 2), rng.uniform(-2, 2)),
            ))
            outcomes = measure.project_all(state, ("a", "b"), basis)
            mix = np.zeros((2, 2), dtype=complex)
            for o in outcomes:
                if o.residual is not None:
                    mix += o.probability * np.outer(o.residual.amps, o.residual.amps.conj())
            rho = qcore.reduced_density(state, ("c",))
            np.testing.assert_allclose(mix, rho.entries, atol=1e-9)

    def test_bad_pairs(self):
        state = classic_setup(1.0, 0.0)
        basis = general_basis(BasisParams(1, 1))
        with pytest.raises(BadPair):
            measure.project_all(state, ("a",), basis)
        with pytest.raises(BadPair):
            measure.project_all(state, ("a", "a"), basis)
        with pytest.raises(BadPair):
            measure.project_all(state, ("a", "z"), basis)
        two_qubit = resource_state(1)
        with pytest.raises(BadPair):
            measure.project_all(two_qubit, ("1", "2"), basis)


class TestSample:
    def test_degenerate_distribution(self):
        state = tensor(qcore.basis_state(("a", "b"), "00"), qcore.basis_state(("c",), "0"))
        basis = general_basis(BasisParams(0, 0))
        for seed in (0, 1, 12345, 2**63 - 1):
            assert measure.sample(state, ("a", "b"), basis, seed).label == "PhiPlus"

    def test_same_seed_same_outcome(self):
        state = classic_setup(0.6, 0.8)
        basis = general_basis(BasisParams(1, 1))
        first = [measure.sample(state, ("a", "1"), basis, seed=s).label for s in range(50)]
        second = [measure.sample(state, ("a", "1"), basis, seed=s).label for s in range(50)]
        assert first == second

    def test_classic_frequencies_converge(self):
        # 1e5 shots, seeds split as seed + shot index; each frequency must
        # land within 3 binomial standard errors of 0.25.
        state = classic_setup(0.6, 0.8)
        basis = general_basis(BasisParams(1, 1))
        shots = 100_000
        counts = {label: 0 for label in BASIS_LABELS}
        for i in range(shots):
            counts[measure.sample(state, ("a", "1"), basis, seed=777 + i).label] += 1
        bound = 3.0 * math.sqrt(0.25 * 0.75 / shots)
        for label in BASIS_LABELS:
            assert abs(counts[label] / shots - 0.25) <= bound
