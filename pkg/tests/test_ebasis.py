"""Entangled basis family: construction, inversion, entropy."""

import math

import numpy as np
import pytest

from teleportrix import qcore
from teleportrix.ebasis import (
    BASIS_LABELS,
    BasisParams,
    basis_entropy,
    expand_computational,
    general_basis,
    resource_state,
)
from teleportrix.errors import NonFinite, ParseError

RT2 = 1.0 / math.sqrt(2.0)


def gram(basis):
    vecs = np.array([basis.vectors[label].amps for label in BASIS_LABELS])
    return vecs.conj() @ vecs.T


def random_param(rng, scale=2.0):
    return complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))


class TestGeneralBasis:
    def test_zero_params_give_computational_basis(self):
        b = general_basis(BasisParams(0, 0))
        np.testing.assert_allclose(b.vectors["PhiPlus"].amps, [1, 0, 0, 0], atol=1e-15)
        np.testing.assert_allclose(b.vectors["PhiMinus"].amps, [0, 0, 0, -1], atol=1e-15)
        np.testing.assert_allclose(b.vectors["PsiPlus"].amps, [0, 1, 0, 0], atol=1e-15)
        np.testing.assert_allclose(b.vectors["PsiMinus"].amps, [0, 0, -1, 0], atol=1e-15)

    def test_unit_params_give_bell_basis(self):
        b = general_basis(BasisParams(1, 1))
        np.testing.assert_allclose(b.vectors["PhiPlus"].amps, [RT2, 0, 0, RT2], atol=1e-15)
        np.testing.assert_allclose(b.vectors["PhiMinus"].amps, [RT2, 0, 0, -RT2], atol=1e-15)
        np.testing.assert_allclose(b.vectors["PsiPlus"].amps, [0, RT2, RT2, 0], atol=1e-15)
        np.testing.assert_allclose(b.vectors["PsiMinus"].amps, [0, RT2, -RT2, 0], atol=1e-15)

    def test_weights_and_orthonormality(self):
        b = general_basis(BasisParams(2, 1j))
        assert abs(b.vectors["PhiPlus"].amps[0]) == pytest.approx(1 / math.sqrt(5), abs=1e-12)
        assert abs(b.vectors["PsiPlus"].amps[1]) == pytest.approx(1 / math.sqrt(2), abs=1e-12)
        np.testing.assert_allclose(gram(b), np.eye(4), atol=1e-10)

    def test_parity_support(self):
        b = general_basis(BasisParams(0.3 + 0.1j, 1.7))
        for label in ("PhiPlus", "PhiMinus"):
            np.testing.assert_allclose(b.vectors[label].amps[[1, 2]], 0, atol=1e-15)
        for label in ("PsiPlus", "PsiMinus"):
            np.testing.assert_allclose(b.vectors[label].amps[[0, 3]], 0, atol=1e-15)

    def test_orthonormality_on_random_params(self):
        rng = np.random.default_rng(5)
        for _ in range(1000):
            b = general_basis(BasisParams(random_param(rng), random_param(rng)))
            np.testing.assert_allclose(gram(b), np.eye(4), atol=1e-10)

    def test_non_finite_rejected(self):
        with pytest.raises(NonFinite):
            BasisParams(float("inf"), 0)
        with pytest.raises(NonFinite):
            BasisParams(0, complex(0, float("nan")))

    def test_string_params_accepted(self):
        b = general_basis(BasisParams("0.3-0.4i", "i"))
        assert b.params.ell == complex(0.3, -0.4)
        assert b.params.p == 1j


class TestResourceState:
    def test_bell_at_one(self):
        np.testing.assert_allclose(resource_state(1).amps, [RT2, 0, 0, RT2], atol=1e-15)

    def test_product_at_zero(self):
        np.testing.assert_allclose(resource_state(0).amps, [1, 0, 0, 0], atol=1e-15)

    def test_half(self):
        np.testing.assert_allclose(
            resource_state(0.5).amps,
            [0.8944271909999159, 0, 0, 0.4472135954999579],
            atol=1e-12,
        )

    def test_non_finite(self):
        with pytest.raises(NonFinite):
            resource_state(float("inf"))


class TestBasisEntropy:
    def test_reference_points(self):
        assert basis_entropy(1) == pytest.approx(1.0, abs=1e-12)
        assert basis_entropy(0) == pytest.approx(0.0, abs=1e-12)
        assert basis_entropy(0.5) == pytest.approx(0.7219280948873623, abs=1e-12)

    def test_matches_reduced_state_entropy(self):
        rng = np.random.default_rng(19)
        for _ in range(100):
            c = random_param(rng)
            b = general_basis(BasisParams(c, c))
            for label in BASIS_LABELS:
                rho = qcore.reduced_density(b.vectors[label], ("0",))
                assert abs(basis_entropy(c) - qcore.entropy(rho)) < 1e-9

    def test_reciprocal_conjugate_symmetry(self):
        rng = np.random.default_rng(37)
        for _ in range(200):
            c = random_param(rng)
            if abs(c) < 1e-3:
                continue
            assert abs(basis_entropy(c) - basis_entropy(1 / c.conjugate())) < 1e-9

    def test_strictly_increasing_on_unit_interval(self):
        grid = np.linspace(0.01, 1.0, 100)
        values = [basis_entropy(c) for c in grid]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_equal_params_equalize_all_vector_entropies(self):
        rng = np.random.default_rng(41)
        for _ in range(100):
            c = random_param(rng)
            b = general_basis(BasisParams(c, c))
            entropies = [
                qcore.entropy(qcore.reduced_density(b.vectors[label], ("1",)))
                for label in BASIS_LABELS
            ]
            assert max(entropies) - min(entropies) < 1e-9


class TestExpandComputational:
    def test_known_coefficients(self):
        l, p = 0.5 + 0.25j, 2.0 - 1.0j
        lw = 1.0 / math.sqrt(1.0 + abs(l) ** 2)
        pw = 1.0 / math.sqrt(1.0 + abs(p) ** 2)
        params = BasisParams(l, p)
        assert expand_computational("00", params) == pytest.approx((lw, lw * l))
        assert expand_computational("11", params) == pytest.approx((lw * l.conjugate(), -lw))
        assert expand_computational("01", params) == pytest.approx((pw, pw * p))
        assert expand_computational("10", params) == pytest.approx((pw * p.conjugate(), -pw))

    def test_computational_fixed_point(self):
        assert expand_computational("00", BasisParams(0, 0)) == (1.0, 0.0)

    def test_round_trip_reconstruction(self):
        rng = np.random.default_rng(43)
        for _ in range(200):
            params = BasisParams(random_param(rng), random_param(rng))
            b = general_basis(params)
            for bits, pair in (("00", ("PhiPlus", "PhiMinus")),
                               ("11", ("PhiPlus", "PhiMinus")),
                               ("01", ("PsiPlus", "PsiMinus")),
                               ("10", ("PsiPlus", "PsiMinus"))):
                c_plus, c_minus = expand_computational(bits, params)
                rebuilt = c_plus * b.vectors[pair[0]].amps + c_minus * b.vectors[pair[1]].amps
                expected = np.zeros(4)
                expected[int(bits, 2)] = 1.0
                np.testing.assert_allclose(rebuilt, expected, atol=1e-10)

    def test_bad_label(self):
        with pytest.raises(ParseError):
            expand_computational("02", BasisParams(0, 0))
