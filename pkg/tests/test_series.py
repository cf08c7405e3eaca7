import math

import numpy as np
import pytest
from hypothesis import given

import mskit.series
from conftest import laurent_series
from mskit.series import (
    DiskPoint,
    LaurentSeries,
    OversizedSeriesError,
    TruncationConfig,
    apply_U,
    apply_V,
    cauchy_kernel,
    conjugate,
    evaluate,
    inner,
    mobius_symbol,
    monomial,
    multiply,
    norm,
    one,
    project_P,
    project_Q,
    quadrature_inner,
    samples,
)


def fft_multiply_oracle(a, b, count=64):
    """Sample both factors on the circle, multiply pointwise, transform back."""
    va, vb = samples(a, count), samples(b, count)
    wrapped = np.fft.fft(va * vb) / count
    lo = a.min_index + b.min_index
    hi = a.max_index + b.max_index
    return LaurentSeries(lo, np.array([wrapped[n % count] for n in range(lo, hi + 1)]))


class TestMultiply:
    def test_cross_term(self):
        a = monomial(1) + monomial(-1)
        assert multiply(a, monomial(1)) == monomial(2) + one()

    @given(laurent_series())
    def test_identity_element(self, f):
        assert multiply(f, one()) == f

    def test_matches_fft_sampling_oracle(self):
        rng = np.random.default_rng(42)
        for _ in range(5):
            a = LaurentSeries(-8, rng.standard_normal(17) + 1j * rng.standard_normal(17))
            b = LaurentSeries(-8, rng.standard_normal(17) + 1j * rng.standard_normal(17))
            got = multiply(a, b)
            want = fft_multiply_oracle(a, b)
            assert norm(got - want) < 1e-12 * (1 + norm(a) * norm(b))

    def test_minkowski_index_range(self):
        a = LaurentSeries(-2, np.ones(3))
        b = LaurentSeries(1, np.ones(2))
        p = multiply(a, b)
        assert (p.min_index, p.max_index) == (-1, 2)

    def test_hard_cap(self, monkeypatch):
        monkeypatch.setattr(mskit.series, "HARD_CAP", 16)
        a = LaurentSeries(0, np.ones(10))
        with pytest.raises(OversizedSeriesError):
            multiply(a, a)


class TestConjugate:
    def test_flips_monomial(self):
        assert conjugate(monomial(1)) == monomial(-1)

    def test_constant(self):
        assert conjugate(monomial(0, 1 + 2j)) == monomial(0, 1 - 2j)

    @given(laurent_series())
    def test_involution(self, f):
        assert conjugate(conjugate(f)) == f


class TestProjections:
    def test_split_example(self):
        a = monomial(-1) + one() + monomial(1)
        assert project_P(a) == one() + monomial(1)
        assert project_Q(a) == monomial(-1)

    @given(laurent_series())
    def test_complementary(self, f):
        assert project_P(f) + project_Q(f) == f

    @given(laurent_series())
    def test_idempotent_and_orthogonal(self, f):
        assert project_P(project_P(f)) == project_P(f)
        assert abs(inner(project_P(f), project_Q(f))) == 0.0

    def test_analytic_fixed(self):
        f = monomial(0, 2.0) + monomial(3, 1j)
        assert project_P(f) == f


class TestInnerNormEvaluate:
    def test_examples(self):
        assert inner(monomial(1), monomial(1)) == 1
        assert inner(monomial(1), monomial(-1)) == 0
        assert evaluate(one() + monomial(1), 1.0) == pytest.approx(2.0)

    @given(laurent_series(), laurent_series())
    def test_conjugate_linear_in_second(self, a, b):
        lhs = inner(a, 2j * b)
        assert lhs == pytest.approx(np.conj(2j) * inner(a, b), abs=1e-9)

    @given(laurent_series())
    def test_norm_squared_is_self_inner(self, a):
        assert norm(a) ** 2 == pytest.approx(inner(a, a).real, rel=1e-12, abs=1e-12)

    def test_domain_errors(self):
        mixed = monomial(-1) + one()
        with pytest.raises(ValueError):
            evaluate(mixed, 0.5)
        with pytest.raises(ValueError):
            evaluate(one() + monomial(2), 1.3)
        assert evaluate(one() + monomial(2), 0.5) == pytest.approx(1.25)


class TestQuadrature:
    def test_parseval_against_sampling(self):
        rng = np.random.default_rng(3)
        for _ in range(5):
            a = LaurentSeries(-16, rng.standard_normal(33) + 1j * rng.standard_normal(33))
            b = LaurentSeries(-16, rng.standard_normal(33) + 1j * rng.standard_normal(33))
            coeff = inner(a, b)
            quad = quadrature_inner(a, b, 128)
            assert abs(coeff - quad) <= 1e-10 * (1 + abs(coeff))

    def test_aliasing_guard(self):
        with pytest.raises(ValueError):
            samples(LaurentSeries(0, np.ones(10)), 8)


class TestCauchyKernel:
    def test_center_is_constant_one(self):
        assert cauchy_kernel(0.0, 16) == one()

    def test_norm_tail_bound(self):
        k = cauchy_kernel(0.5, 64)
        assert abs(norm(k) - math.sqrt(1 - 0.5 ** 130)) < 1e-15
        # geometric bound plus the rounding floor of the norm itself
        assert abs(1 - norm(k)) <= 0.5 ** 130 / (1 - 0.25) + 4e-16

    def test_reproduces_point_evaluation(self):
        # <f, k_z> = sqrt(1-|z|^2) f(z) for analytic f: the evaluation oracle
        z = 0.3
        f = monomial(0, 2.0) + monomial(2, -1.5j) + monomial(5, 0.7)
        lhs = inner(f, cauchy_kernel(z, 64))
        rhs = math.sqrt(1 - z * z) * evaluate(f, z)
        assert abs(lhs - rhs) < 1e-12

    def test_adequacy_note(self):
        assert cauchy_kernel(0.99, 64).note != ""
        assert cauchy_kernel(0.5, 64).note == ""


class TestMobiusSymbol:
    def test_center(self):
        assert mobius_symbol(0.0, 8) == monomial(1, -1.0)

    def test_vanishes_at_center_point(self):
        z = 0.4 + 0.2j
        phi = mobius_symbol(z, 128)
        assert abs(evaluate(phi, z)) < 1e-12

    def test_unimodular_on_circle(self):
        phi = mobius_symbol(0.5, 128)
        vals = samples(phi, 512)
        assert np.max(np.abs(np.abs(vals) - 1)) < 1e-8

    def test_pointwise_involution(self):
        z = 0.5
        phi = mobius_symbol(z, 128)
        for t in np.linspace(0, 2 * np.pi, 16, endpoint=False):
            w = np.exp(1j * t)
            inner_pt = evaluate(phi, w)
            assert abs(evaluate(phi, inner_pt / abs(inner_pt)) - w) < 1e-10


class TestFlipMaps:
    def test_examples(self):
        assert apply_U(one()) == monomial(-1)
        assert apply_V(monomial(-1)) == one()
        assert apply_V(one()) == monomial(-1)

    @given(laurent_series())
    def test_isometries(self, f):
        assert norm(apply_U(f)) == pytest.approx(norm(f))
        assert norm(apply_V(f)) == pytest.approx(norm(f))

    @given(laurent_series())
    def test_v_involution(self, f):
        assert apply_V(apply_V(f)) == f

    def test_v_antilinear(self):
        f = monomial(2, 1 + 1j)
        assert apply_V(2j * f) == np.conj(2j) * apply_V(f)


class TestValueTypes:
    def test_disk_point_rejects_boundary(self):
        with pytest.raises(ValueError):
            DiskPoint(1.0)
        assert DiskPoint(0.5j).value == 0.5j

    def test_truncation_config_validation(self):
        TruncationConfig()
        with pytest.raises(ValueError):
            TruncationConfig(N=0)
        with pytest.raises(ValueError):
            TruncationConfig(sample_count=100)  # not a power of two
        with pytest.raises(ValueError):
            TruncationConfig(N=512, M=512, sample_count=2048)  # below 4(N+M)
        with pytest.raises(ValueError):
            TruncationConfig(zero_tol=1e-6, residual_tol=1e-8)

    def test_equality_ignores_padding(self):
        a = LaurentSeries(-1, np.array([0.0, 1.0, 0.0]))
        assert a == monomial(0)

    def test_json_roundtrip(self):
        f = monomial(-2, 1 + 2j) + monomial(3, -0.25)
        assert LaurentSeries.from_json_dict(f.to_json_dict()) == f
