"""Symbol specifications, winding numbers, and zero bookkeeping."""

import json

import numpy as np
import pytest

from detlab import errors, symbols

EXPECTED_WINDING = {"F0": 0, "F1": 0, "F2": 0, "F3": -1, "F4": -1,
                    "F5": -2, "F6": 0, "F7": 1}


class TestFixtures:
    @pytest.mark.parametrize("name", sorted(EXPECTED_WINDING))
    def test_winding(self, name):
        assert symbols.winding_number(symbols.fixture(name)) == \
            EXPECTED_WINDING[name]

    def test_f3_selected_zeros(self):
        ana = symbols.analyze(symbols.fixture("F3"))
        assert len(ana.z_list) == 1
        assert abs(ana.z_list[0] - 1.6) < 1e-10

    def test_f5_selected_zeros(self):
        ana = symbols.analyze(symbols.fixture("F5"))
        got = sorted(abs(z) for z in ana.z_list)
        assert np.allclose(got, [1.5, 1.9], atol=1e-10)

    def test_f1_constant_theta(self):
        sp = symbols.fixture("F1")
        q = np.exp(1j * np.linspace(0, 6, 11))
        assert np.max(np.abs(symbols.eval_theta(sp, q) - 0.5)) < 1e-14


class TestEvaluation:
    def test_phi_equals_one_plus_theta(self):
        sp = symbols.fixture("F4")
        q = np.array([0.5 + 0.1j, 2.0, -1.3j])
        assert np.max(np.abs(symbols.eval_phi(sp, q) -
                             (1.0 + symbols.eval_theta(sp, q)))) < 1e-13

    def test_dphi_finite_difference(self):
        sp = symbols.fixture("F5")
        q, h = 0.7 + 0.4j, 1e-6
        fd = (symbols.eval_phi(sp, q + h) - symbols.eval_phi(sp, q - h)) / (2 * h)
        assert abs(symbols.eval_dphi(sp, q) - fd) < 1e-8

    def test_dnu_is_logarithmic_derivative(self):
        sp = symbols.fixture("F2")
        q = np.array([1.1 + 0.2j])
        expect = symbols.eval_dphi(sp, q) / (2j * np.pi * symbols.eval_phi(sp, q))
        assert abs(symbols.eval_dnu(sp, q)[0] - expect[0]) < 1e-12

    def test_nu_grid_is_continuous(self):
        sp = symbols.fixture("F5")
        from detlab._series import circle_nodes
        nu = symbols.eval_nu_grid(sp, circle_nodes(1.0, 256))
        assert np.max(np.abs(np.diff(nu))) < 0.2


class TestFourier:
    def test_f2_exact_coefficients(self):
        # log phi = 0.3 q + 0.2 / q, i.e. nu_{+1} = 0.3, nu_{-1} = 0.2 in the
        # normalization nu(q) = sum_j q^j nu_j / (2 pi i)
        ks, cs, nu = symbols.fourier_coefficients(symbols.fixture("F2"), 256)
        assert abs(nu[np.searchsorted(ks, 1)] - 0.3) < 1e-13
        assert abs(nu[np.searchsorted(ks, -1)] - 0.2) < 1e-13

    def test_f1_moments(self):
        ks, cs, _ = symbols.fourier_coefficients(symbols.fixture("F1"), 256)
        assert abs(cs[np.searchsorted(ks, 0)] - 1.5) < 1e-13
        assert abs(cs[np.searchsorted(ks, 3)]) < 1e-13


class TestValidation:
    def test_round_trip(self):
        sp = symbols.fixture("F4")
        again = symbols.from_json_dict(symbols.to_json_dict(sp), label=sp.label)
        q = np.array([0.9 + 0.1j])
        assert abs(symbols.eval_phi(sp, q)[0] -
                   symbols.eval_phi(again, q)[0]) < 1e-14

    def test_unknown_kind_rejected(self):
        with pytest.raises(errors.InputError):
            symbols.from_json_dict({"kind": "mystery"})

    def test_unknown_fixture_rejected(self):
        with pytest.raises(errors.InputError):
            symbols.fixture("F99")

    def test_parse_error(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("not json")
        with pytest.raises(errors.InputError, match="parse error"):
            symbols.load_symbol(str(bad))
