"""Seeded random instances for the identity suites and decision-procedure tests.

Every generator takes an explicit numpy Generator so suites are reproducible
bit for bit from a single integer seed.  The zero-product builders construct
(theta, f, g) triples that satisfy one of the four vanishing conditions
exactly, so the brute-force oracle confirms them up to truncation tails.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .blaschke import BlaschkeProduct, monomial_product
from .model_space import ModelBasis, build_tm_basis
from .series import LaurentSeries, conjugate, evaluate, monomial, multiply, norm, one


def rng_from_seed(seed: int, *keys: int) -> np.random.Generator:
    """Independent deterministic substream for (seed, keys...)."""
    return np.random.default_rng([int(seed), *map(int, keys)])


def random_complex(rng: np.random.Generator, n: int | None = None, scale: float = 1.0):
    shape = () if n is None else (n,)
    z = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return z * (scale / np.sqrt(2.0))


def _nonvanishing_complex(rng: np.random.Generator, floor: float = 0.25) -> complex:
    z = complex(random_complex(rng))
    while abs(z) < floor:
        z = complex(random_complex(rng))
    return z


def random_trig(rng: np.random.Generator, max_degree: int, analytic: bool = False) -> LaurentSeries:
    """Random trigonometric polynomial with unit-scale coefficients."""
    lo = 0 if analytic else -max_degree
    width = max_degree - lo + 1
    coeffs = random_complex(rng, width) / np.sqrt(width)
    return LaurentSeries(lo, coeffs)


def random_blaschke(
    rng: np.random.Generator,
    degree: int,
    max_modulus: float = 0.6,
    min_modulus: float = 0.0,
) -> BlaschkeProduct:
    radii = min_modulus + (max_modulus - min_modulus) * rng.random(degree)
    angles = 2 * np.pi * rng.random(degree)
    phase = np.exp(2j * np.pi * rng.random())
    return BlaschkeProduct(tuple(radii * np.exp(1j * angles)), phase)


def random_disk_point(rng: np.random.Generator, max_modulus: float = 0.7) -> complex:
    return complex(max_modulus * rng.random() * np.exp(2j * np.pi * rng.random()))


def random_model_element(
    rng: np.random.Generator, basis: ModelBasis, zero_at_origin: bool = False
) -> LaurentSeries:
    """Random element of the truncated model space, optionally pinned to vanish at 0."""
    coords = random_complex(rng, basis.dim)
    out = None
    for c, e in zip(coords, basis.vectors):
        out = c * e if out is None else out + c * e
    if zero_at_origin:
        th0 = basis.theta_series.coeff(0)
        k0 = one() - complex(np.conj(th0)) * basis.theta_series
        out = out + (-out.coeff(0) / (1.0 - abs(th0) ** 2)) * k0
    return out


def random_ideal_symbol(rng: np.random.Generator, basis: ModelBasis, degree: int = 4) -> LaurentSeries:
    """Random element of the truncated ideal: Theta h + conj(Theta k)."""
    th = basis.theta_series
    h = random_trig(rng, degree, analytic=True)
    k = random_trig(rng, degree, analytic=True)
    return multiply(th, h) + conjugate(multiply(th, k))


# -- constructed zero-product instances -------------------------------------------


@dataclass(frozen=True, eq=False)
class ZeroInstance:
    """A (theta, f, g) triple with the vanishing condition it was built to satisfy
    ("1".."4"), or "none" for perturbed instances."""

    basis: ModelBasis
    f: LaurentSeries
    g: LaurentSeries
    expected: str


def _geometric_kernel(a: complex, N: int) -> LaurentSeries:
    """Truncated 1/(1 - conj(a) w), the unnormalized kernel at a."""
    return LaurentSeries(0, np.conj(a) ** np.arange(N + 1), tail=abs(a) ** (N + 1))


def make_condition_instance(cond: int, rng: np.random.Generator, N: int) -> ZeroInstance:
    """Build an instance satisfying the given vanishing condition exactly.

    Condition 4 alternates between a pole-cancellation family with coanalytic
    f (both fitted scalars generically nonzero) and monomial inner functions
    with both scalars zero; condition 3 between a kernel-vs-vanishing-symbol
    pairing and a monomial family.
    """
    if cond == 1:
        degree = 2 + int(rng.integers(3))
        basis = build_tm_basis(random_blaschke(rng, degree, 0.6), N)
        f = random_trig(rng, 6)
        return ZeroInstance(basis, f, random_ideal_symbol(rng, basis, 3), "1")

    if cond == 2:
        degree = 2 + int(rng.integers(3))
        basis = build_tm_basis(random_blaschke(rng, degree, 0.6), N)
        f = monomial(0, complex(random_complex(rng)) + 0.5)
        return ZeroInstance(basis, f, random_trig(rng, 6), "2")

    if cond == 3:
        if rng.random() < 0.5:
            # monomial family: f of degree <= j, g = conj(w^j + higher)
            d = 2 + int(rng.integers(3))
            basis = build_tm_basis(monomial_product(d), N)
            j = 1 + int(rng.integers(d - 1))
            f = monomial(j, _nonvanishing_complex(rng))
            for i in range(j):
                f = f + monomial(i, complex(random_complex(rng)))
            g2 = monomial(j)
            if j + 1 <= d - 1:
                g2 = g2 + monomial(j + 1, complex(random_complex(rng)))
            return ZeroInstance(basis, f, conjugate(g2), "3")
        # kernel family: f = kernel at a zero, g2 in the model space with g2(a) = 0
        degree = 2 + int(rng.integers(3))
        theta = random_blaschke(rng, degree, 0.6, min_modulus=0.15)
        basis = build_tm_basis(theta, N)
        a = theta.zeros[0]
        f = _geometric_kernel(a, N) + monomial(0, complex(random_complex(rng)))
        vals = np.array([evaluate(e, a) for e in basis.vectors])
        coords = random_complex(rng, basis.dim)
        coords -= (np.vdot(np.conj(vals), coords) / np.vdot(vals, vals)) * np.conj(vals)
        g2 = sum((c * e for c, e in zip(coords, basis.vectors)), 0 * one())
        return ZeroInstance(basis, f, conjugate(g2), "3")

    if cond == 4:
        if rng.random() < 0.6:
            # pole family: coanalytic f, alpha = Theta(a), beta = -g1(a)
            degree = 2 + int(rng.integers(3))
            theta = random_blaschke(rng, degree, 0.5, min_modulus=0.1)
            basis = build_tm_basis(theta, N)
            a = complex((0.2 + 0.35 * rng.random()) * np.exp(2j * np.pi * rng.random()))
            f = conjugate(_geometric_kernel(a, N)) + monomial(0, complex(random_complex(rng)))
            g1 = random_model_element(rng, basis, zero_at_origin=True)
            alpha = theta.evaluate(a)
            beta = -evaluate(g1, a)
            th = basis.theta_series
            thbar = conjugate(th)
            conj_g2 = alpha * multiply(thbar, g1) + beta * (one() - th.coeff(0) * thbar)
            return ZeroInstance(basis, f, g1 + conj_g2, "4")
        # monomial family with alpha = beta = 0
        d = 2 + int(rng.integers(3))
        basis = build_tm_basis(monomial_product(d), N)
        j = 1 + int(rng.integers(d - 1))
        i = 1 + int(rng.integers(j))
        f = monomial(-i, _nonvanishing_complex(rng))
        f = f + monomial(0, complex(random_complex(rng)))
        return ZeroInstance(basis, f, monomial(j), "4")

    raise ValueError(f"no such condition: {cond}")


def perturb_instance(inst: ZeroInstance, rng: np.random.Generator) -> ZeroInstance:
    """Knock a constructed instance out of its vanishing condition.

    Ideal symbols are perturbed on the Toeplitz side (the product stays zero
    under any f when the symbol is ideal), constant f on the Hankel side.
    """
    eps = 0.3
    if inst.expected == "1":
        bump = random_model_element(rng, inst.basis)
        return ZeroInstance(inst.basis, inst.f, inst.g + eps * bump, "none")
    if inst.expected == "2":
        return ZeroInstance(inst.basis, inst.f + eps * random_trig(rng, 4), inst.g, "none")
    if inst.expected == "3":
        bump = random_model_element(rng, inst.basis, zero_at_origin=True)
        while norm(bump) < 0.1:
            bump = random_model_element(rng, inst.basis, zero_at_origin=True)
        return ZeroInstance(inst.basis, inst.f, inst.g + eps * bump, "none")
    return ZeroInstance(inst.basis, inst.f + eps * random_trig(rng, 3), inst.g, "none")
