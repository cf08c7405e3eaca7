import numpy as np
import pytest

from mskit.blaschke import BlaschkeProduct, monomial_product, taylor
from mskit.operators import hankel
from mskit.series import conjugate, evaluate, monomial, multiply, norm, one, samples


def test_zero_is_root():
    theta = BlaschkeProduct((0.3 + 0.4j,))
    assert abs(theta(0.3 + 0.4j)) < 1e-15


def test_double_zero_at_origin():
    theta = monomial_product(2)
    assert theta(0.5) == pytest.approx(0.25)


def test_unimodular_on_circle():
    theta = BlaschkeProduct((0.5, -0.3j, 0.7), np.exp(0.3j))
    grid = np.exp(2j * np.pi * np.arange(64) / 64)
    vals = np.array([theta(w) for w in grid])
    assert np.max(np.abs(np.abs(vals) - 1)) < 1e-12


def test_construction_rejects_bad_data():
    with pytest.raises(ValueError):
        BlaschkeProduct((1.2,))
    with pytest.raises(ValueError):
        BlaschkeProduct((0.5,), constant=2.0)


def test_evaluate_outside_disk_rejected():
    with pytest.raises(ValueError):
        monomial_product(1).evaluate(1.5)


class TestTaylor:
    def test_shift(self):
        assert taylor(monomial_product(1), 8) == monomial(1)

    def test_single_zero_constant_term(self):
        # the normalized factor evaluates to |a| at the origin
        th = taylor(BlaschkeProduct((0.5,)), 8)
        assert th.coeff(0) == pytest.approx(0.5)

    def test_matches_fft_sampling_oracle(self):
        rng = np.random.default_rng(11)
        zeros = 0.7 * rng.random(3) * np.exp(2j * np.pi * rng.random(3))
        theta = BlaschkeProduct(tuple(zeros), np.exp(1j))
        N, count = 128, 512
        grid = np.exp(2j * np.pi * np.arange(count) / count)
        vals = np.array([theta(w) for w in grid])
        coeffs = np.fft.fft(vals) / count
        got = taylor(theta, N)
        assert np.max(np.abs(got.coeffs - coeffs[: N + 1])) < 1e-10

    def test_evaluation_agreement_inside(self):
        theta = BlaschkeProduct((0.5, -0.2 + 0.1j))
        th = taylor(theta, 96)
        for w in (0.0, 0.3, -0.45j):
            assert abs(evaluate(th, w) - theta(w)) < 1e-12

    def test_unimodularity_of_coefficients(self):
        theta = BlaschkeProduct((0.6, 0.3j))
        th = taylor(theta, 128)
        prod = multiply(th, conjugate(th))
        tol = max(1e-12, 4 * th.tail)
        assert abs(prod.coeff(0) - 1) < tol
        interior = prod - one()
        assert np.max(np.abs(interior.window(-32, 32))) < tol

    def test_tail_flag_for_extreme_zero(self):
        assert taylor(BlaschkeProduct((0.97,)), 64).note != ""


def test_at_zero_and_degree():
    assert monomial_product(1).at_zero() == 0
    assert BlaschkeProduct((0.5,)).at_zero() == pytest.approx(0.5)
    assert monomial_product(3).degree == 3


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_hankel_rank_equals_degree(d):
    rng = np.random.default_rng(d)
    zeros = 0.8 * rng.random(d) * np.exp(2j * np.pi * rng.random(d))
    theta = BlaschkeProduct(tuple(zeros))
    thbar = conjugate(taylor(theta, 4 * d + 8))
    h = hankel(thbar, 2 * d, 2 * d)
    sv = np.linalg.svd(h.entries, compute_uv=False)
    assert int(np.sum(sv > 1e-8)) == d


def test_json_roundtrip_and_validation():
    theta = BlaschkeProduct((0.5, -0.3j), np.exp(0.7j))
    back = BlaschkeProduct.from_json_dict(theta.to_json_dict())
    assert back.zeros == theta.zeros
    assert back.constant == pytest.approx(theta.constant)
    with pytest.raises(ValueError):
        BlaschkeProduct.from_json_dict({"zeros": [[1.5, 0.0]], "constant": [1.0, 0.0]})
