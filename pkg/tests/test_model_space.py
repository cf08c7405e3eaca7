import numpy as np
import pytest

from mskit.blaschke import BlaschkeProduct, monomial_product, taylor
from mskit.model_space import (
    build_tm_basis,
    decompose_symbol,
    expand_in_basis,
    ideal_distance,
    in_H2,
    in_Ktheta_plus_C_theta,
    is_constant,
    model_kernel,
    project_model,
)
from mskit.sampling import random_trig, rng_from_seed
from mskit.series import (
    LaurentSeries,
    cauchy_kernel,
    conjugate,
    evaluate,
    inner,
    monomial,
    multiply,
    norm,
    one,
)


class TestBasisConstruction:
    def test_monomial_model_space(self):
        basis = build_tm_basis(monomial_product(3), 64)
        assert basis.dim == 3
        for k in range(3):
            assert basis.vectors[k] == monomial(k)
        assert basis.gram_residual < 1e-12

    def test_rejects_constant_inner_function(self):
        with pytest.raises(ValueError):
            build_tm_basis(BlaschkeProduct(()), 32)

    def test_matches_gram_schmidt_oracle(self):
        # Gram-Schmidt on the Cauchy kernels at the zeros, run independently
        zeros = (0.5, -0.3)
        N = 128
        basis = build_tm_basis(BlaschkeProduct(zeros), N)
        k1 = cauchy_kernel(zeros[0], N).window(0, N)
        k2 = cauchy_kernel(zeros[1], N).window(0, N)
        e1 = k1 / np.linalg.norm(k1)
        v2 = k2 - np.vdot(e1, k2) * e1
        e2 = v2 / np.linalg.norm(v2)
        got = basis.matrix()
        assert np.max(np.abs(got[:, 0] - e1)) < 1e-9
        assert np.max(np.abs(got[:, 1] - e2)) < 1e-9

    def test_gram_residual_regimes(self):
        assert build_tm_basis(BlaschkeProduct((0.9,)), 128).gram_residual < 1e-10
        rng = rng_from_seed(5)
        zeros = tuple(0.8 * rng.random(4) * np.exp(2j * np.pi * rng.random(4)))
        assert build_tm_basis(BlaschkeProduct(zeros), 128).gram_residual < 1e-10
        # clustered zeros near 0.9 need a longer window
        assert build_tm_basis(BlaschkeProduct((0.9, 0.9)), 256).gram_residual < 1e-10

    def test_vectors_orthogonal_to_shifted_inner(self):
        theta = BlaschkeProduct((0.5, -0.3j, 0.2))
        N = 128
        basis = build_tm_basis(theta, N)
        th = basis.theta_series
        for e in basis.vectors:
            for m in (0, 1, 7, N - basis.dim - 1):
                assert abs(inner(e, multiply(th, monomial(m)))) < 1e-9


class TestModelProjection:
    def test_monomial_examples(self):
        basis = build_tm_basis(monomial_product(2), 32)
        assert project_model(monomial(1), basis) == monomial(1)
        assert norm(project_model(monomial(2), basis)) < 1e-14
        assert norm(project_model(monomial(-1), basis)) < 1e-14

    def test_agrees_with_basis_expansion(self):
        theta = BlaschkeProduct((0.5, -0.3j, 0.2))
        N = 128
        basis = build_tm_basis(theta, N)
        rng = rng_from_seed(9)
        for _ in range(5):
            f = random_trig(rng, N // 2, analytic=True)
            via_formula = project_model(f, basis)
            coords = expand_in_basis(f, basis)
            via_basis = sum((c * e for c, e in zip(coords, basis.vectors)), 0 * one())
            assert norm(via_formula - via_basis) < 1e-9

    def test_idempotent_and_self_adjoint_matrix(self):
        theta = BlaschkeProduct((0.4, 0.1 - 0.2j))
        N = 96
        basis = build_tm_basis(theta, N)
        j_top = N - 2 * basis.dim
        cols = [project_model(monomial(j), basis).window(0, j_top) for j in range(j_top + 1)]
        mat = np.column_stack(cols)
        assert np.max(np.abs(mat @ mat - mat)) < 1e-9
        assert np.max(np.abs(mat - mat.conj().T)) < 1e-9


class TestModelKernel:
    def test_monomial_cases(self):
        assert model_kernel(0.0, monomial_product(2), 32) == one()
        # degree one: the kernel telescopes to the constant 1 up to rounding
        assert norm(model_kernel(0.3 + 0.1j, monomial_product(1), 32) - one()) < 1e-13

    def test_reproduces_basis_evaluation(self):
        theta = BlaschkeProduct((0.5,))
        N = 128
        basis = build_tm_basis(theta, N)
        kw = model_kernel(0.2, theta, N)
        e1 = basis.vectors[0]
        assert abs(inner(e1, kw) - evaluate(e1, 0.2)) < 1e-9

    def test_reproducing_on_model_space(self):
        theta = BlaschkeProduct((0.5, -0.3j, 0.2))
        N = 160
        basis = build_tm_basis(theta, N)
        w = 0.25 - 0.1j
        kw = model_kernel(w, theta, N)
        rng = rng_from_seed(2)
        coords = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        f = sum((c * e for c, e in zip(coords, basis.vectors)), 0 * one())
        assert abs(inner(f, kw) - evaluate(f, w)) < 1e-8

    def test_kernel_in_basis_span(self):
        theta = BlaschkeProduct((0.5, -0.3j))
        N = 128
        basis = build_tm_basis(theta, N)
        kw = model_kernel(0.3, theta, N)
        coords = expand_in_basis(kw, basis)
        recon = sum((c * e for c, e in zip(coords, basis.vectors)), 0 * one())
        assert norm(kw - recon) < 1e-8


class TestSymbolDecomposition:
    def test_pure_model_element(self):
        basis = build_tm_basis(monomial_product(2), 64)
        dec = decompose_symbol(monomial(1), basis)
        assert dec.g1 == monomial(1)
        assert norm(dec.g2) < 1e-14
        assert dec.residual < 1e-14

    def test_constant_pushed_to_conjugate_side(self):
        basis = build_tm_basis(monomial_product(2), 64)
        dec = decompose_symbol(one(), basis)
        assert norm(dec.g1) < 1e-14
        assert dec.g2 == one()

    def test_mixed_symbol_with_ideal_part(self):
        basis = build_tm_basis(monomial_product(2), 64)
        dec = decompose_symbol(monomial(3) + monomial(-1), basis)
        assert norm(dec.g1) < 1e-12
        assert norm(dec.g2 - monomial(1)) < 1e-12
        assert norm(dec.ideal_part - monomial(3)) < 1e-12
        assert dec.residual <= 1e-10

    def test_recovery_of_constructed_decomposition(self):
        theta = BlaschkeProduct((0.5, -0.3j, 0.2 + 0.4j))
        N = 128
        basis = build_tm_basis(theta, N)
        th = basis.theta_series
        for trial in range(8):
            rng = rng_from_seed(100, trial)
            coords = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            g1 = sum((c * e for c, e in zip(coords, basis.vectors)), 0 * one())
            k0 = one() - complex(np.conj(th.coeff(0))) * th
            g1 = g1 + (-g1.coeff(0) / (1 - abs(th.coeff(0)) ** 2)) * k0
            coords2 = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            g2 = sum((c * e for c, e in zip(coords2, basis.vectors)), 0 * one())
            h = random_trig(rng, 4, analytic=True)
            k = random_trig(rng, 4, analytic=True)
            g = g1 + conjugate(g2) + multiply(th, h) + conjugate(multiply(th, k))
            dec = decompose_symbol(g, basis)
            assert norm(dec.g1 - g1) < 1e-8
            assert norm(dec.g2 - g2) < 1e-8
            assert dec.residual < 1e-8

    def test_matches_dense_least_squares_oracle(self):
        # brute-force minimum-norm least squares over the explicit spanning
        # set, followed by the same g1(0) = 0 pin
        theta = BlaschkeProduct((0.4, -0.2 + 0.3j))
        N = 48
        basis = build_tm_basis(theta, N)
        th = basis.theta_series
        d, m_top = basis.dim, N - basis.dim
        rng = rng_from_seed(17)
        g = random_trig(rng, 10)

        # window wide enough to hold every spanning column without cropping
        lo, hi = -(N + m_top + 1), N + m_top + 1
        cols = []
        for e in basis.vectors:
            cols.append(e.window(lo, hi))
        for e in basis.vectors:
            cols.append(conjugate(e).window(lo, hi))
        for m in range(m_top + 1):
            cols.append(multiply(th, monomial(m)).window(lo, hi))
        for m in range(m_top + 1):
            cols.append(conjugate(multiply(th, monomial(m))).window(lo, hi))
        mat = np.column_stack(cols)
        sol = np.linalg.lstsq(mat, g.window(lo, hi), rcond=None)[0]
        g1 = sum((c * e for c, e in zip(sol[:d], basis.vectors)), 0 * one())
        # the columns carry conj(g2), so its coefficients conjugate on read-back
        g2 = sum((np.conj(c) * e for c, e in zip(sol[d : 2 * d], basis.vectors)), 0 * one())
        k0 = one() - complex(np.conj(th.coeff(0))) * th
        shift = -g1.coeff(0) / (1 - abs(th.coeff(0)) ** 2)
        g1 = g1 + shift * k0
        g2 = g2 - np.conj(shift) * k0

        dec = decompose_symbol(g, basis)
        assert norm(dec.g1 - g1) < 1e-8
        assert norm(dec.g2 - g2) < 1e-8

    def test_pin_always_enforced(self):
        theta = BlaschkeProduct((0.5, 0.2j))
        basis = build_tm_basis(theta, 96)
        rng = rng_from_seed(23)
        for _ in range(5):
            dec = decompose_symbol(random_trig(rng, 8), basis)
            assert abs(dec.g1.coeff(0)) < 1e-12


class TestMembershipResiduals:
    def test_in_h2(self):
        assert in_H2(monomial(-1)) == pytest.approx(1.0)
        assert in_H2(monomial(2)) == 0.0

    def test_model_plus_scalar_inner(self):
        theta = monomial_product(3)
        assert in_Ktheta_plus_C_theta(monomial(1), theta, 64) < 1e-14
        assert in_Ktheta_plus_C_theta(monomial(3), theta, 64) < 1e-14  # f = Theta itself
        assert in_Ktheta_plus_C_theta(monomial(4), theta, 64) == pytest.approx(1.0)

    def test_is_constant(self):
        assert is_constant(monomial(0, 5.0)) == 0.0
        assert is_constant(monomial(0, 2.0) + monomial(3)) == pytest.approx(1.0)

    def test_ideal_distance(self):
        theta = BlaschkeProduct((0.5, -0.3j))
        basis = build_tm_basis(theta, 96)
        th = basis.theta_series
        inside = multiply(th, monomial(2, 1 + 1j)) + conjugate(multiply(th, one()))
        assert ideal_distance(inside, basis) < 1e-12
        # Theta(0) = 0 decouples the two ideal halves: model vectors sit at
        # exact distance 1 from the ideal
        mono = build_tm_basis(monomial_product(3), 96)
        assert ideal_distance(mono.vectors[0], mono) == pytest.approx(1.0, abs=1e-12)

    def test_ideal_distance_matches_dense_lstsq(self):
        theta = BlaschkeProduct((0.5, -0.3j))
        N = 40
        basis = build_tm_basis(theta, N)
        th = basis.theta_series
        m_top = N - basis.dim
        lo, hi = -(N + m_top + 1), N + m_top + 1
        cols = [multiply(th, monomial(m)).window(lo, hi) for m in range(m_top + 1)]
        cols += [conjugate(multiply(th, monomial(m))).window(lo, hi) for m in range(m_top + 1)]
        mat = np.column_stack(cols)
        rng = rng_from_seed(31)
        for _ in range(4):
            x = random_trig(rng, 6) + 0.5 * basis.vectors[0]
            sol = np.linalg.lstsq(mat, x.window(lo, hi), rcond=None)[0]
            want = np.linalg.norm(x.window(lo, hi) - mat @ sol)
            assert ideal_distance(x, basis) == pytest.approx(want, abs=1e-10)
