"""Finite-size root systems and the discrete sum over excited subsets."""

import numpy as np
import pytest

from detlab import asymptotics, errors, symbols, toeplitz
from detlab.formfactors import form_factor, solve_shifted, tau_eff_finite


class TestRoots:
    def test_trivial_symbol_roots_coincide(self):
        spec = symbols.fixture("F0")
        sys = solve_shifted(spec, L=8, N=4)
        assert np.max(np.abs(sys.p_roots - sys.q_roots[sys.indices])) < 1e-12

    def test_constant_symbol_radius(self):
        # p^L (1 + 0.5) = 1 so |p| = 1.5^{-1/L}
        sys = solve_shifted(symbols.fixture("F1"), L=8, N=4)
        assert np.max(np.abs(np.abs(sys.p_roots) - 1.5 ** (-1 / 8))) < 1e-12

    def test_residuals_small(self):
        sys = solve_shifted(symbols.fixture("F2"), L=10, N=5)
        assert np.max(sys.residuals) < 1e-12

    def test_roots_distinct(self):
        sys = solve_shifted(symbols.fixture("F2"), L=12, N=6)
        p = sys.p_roots
        gaps = np.abs(p[:, None] - p[None, :])[np.triu_indices(len(p), 1)]
        assert gaps.min() > 1e-6


class TestFormFactor:
    def test_vanishing_shift_gives_zero(self):
        # theta = 0 kills the overlap weight termwise; the coincident-grid
        # unit contribution is supplied by the summation layer instead
        spec = symbols.fixture("F0")
        sys = solve_shifted(spec, L=8, N=4)
        assert form_factor(sys, sys.q_roots[sys.indices]) == 0.0

    def test_permutation_invariance(self):
        sys = solve_shifted(symbols.fixture("F2"), L=10, N=5)
        subset = sys.q_roots[[0, 2, 5, 7, 9]]
        a = form_factor(sys, subset)
        b = form_factor(sys, subset[::-1])
        assert abs(a - b) / abs(a) < 1e-12

    def test_size_mismatch(self):
        sys = solve_shifted(symbols.fixture("F2"), L=10, N=5)
        with pytest.raises(errors.SizeMismatch):
            form_factor(sys, sys.q_roots[:3])


class TestFiniteSum:
    def test_trivial_symbol_sums_to_one(self):
        assert abs(tau_eff_finite(symbols.fixture("F0"), L=8, x=3) -
                   1.0) < 1e-14

    def test_constant_symbol_exact_at_any_size(self):
        spec = symbols.fixture("F1")
        truth = toeplitz.toeplitz_det(spec, 2)
        for L in (6, 8, 12):
            val = tau_eff_finite(spec, L=L, x=2)
            assert abs(val - truth) / abs(truth) < 1e-11, L

    def test_smooth_symbol_converges(self):
        # the L -> infinity limit of the subset sum is det(1 + V) on the
        # unit circle, which differs from the moment determinant by
        # exponentially small corrections in x
        spec = symbols.fixture("F2")
        truth = asymptotics.tau_eff(spec, 2)
        gaps = [abs(tau_eff_finite(spec, L=L, x=2) - truth) / abs(truth)
                for L in (8, 12, 16)]
        assert gaps[-1] < 1e-10
        assert gaps[0] > gaps[-1]

    def test_budget_guard(self):
        with pytest.raises(errors.BudgetExceeded):
            tau_eff_finite(symbols.fixture("F2"), L=64, N=32, x=2)
