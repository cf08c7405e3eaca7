"""Model spaces of finite Blaschke products.

Provides the Takenaka-Malmquist orthonormal basis, the model projection
through the formula P_K f = P f - Theta P(conj(Theta) f), truncated model
reproducing kernels, membership residuals, and the canonical splitting of a
symbol into g1 + conj(g2) + ideal part with the g1(0) = 0 normalization.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from .blaschke import BlaschkeProduct, _factor_coeffs, taylor
from .series import (
    LaurentSeries,
    as_disk_point,
    conjugate,
    inner,
    monomial,
    multiply,
    norm,
    one,
    project_P,
    project_Q,
    restrict,
)


@dataclass(frozen=True, eq=False)
class ModelBasis:
    """Orthonormal Takenaka-Malmquist basis of the model space, truncated at order N.

    `theta_series` caches the Taylor expansion of the inner function at the
    same order as the basis vectors so the projection formula and the basis
    expansion agree to stated tolerance.  Immutable after construction.
    """

    theta: BlaschkeProduct
    order: int
    vectors: tuple
    theta_series: LaurentSeries
    gram_residual: float

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def matrix(self) -> np.ndarray:
        """(order+1) x dim column stack of basis coefficient vectors."""
        return np.column_stack([v.window(0, self.order) for v in self.vectors])

    @property
    def token(self) -> str:
        """Stable identifier for space tags: hashes zeros, constant and order."""
        h = hashlib.sha256()
        for z in self.theta.zeros:
            h.update(np.float64(z.real).tobytes() + np.float64(z.imag).tobytes())
        h.update(np.float64(self.theta.constant.real).tobytes())
        h.update(np.float64(self.theta.constant.imag).tobytes())
        h.update(str(self.order).encode())
        return h.hexdigest()[:16]


def _truncmul(a: np.ndarray, b: np.ndarray, N: int) -> np.ndarray:
    # exact first N+1 coefficients for analytic factors
    return np.convolve(a, b)[: N + 1]


def build_tm_basis(theta: BlaschkeProduct, N: int) -> ModelBasis:
    """Takenaka-Malmquist basis: normalized kernel at zero k times the partial
    Blaschke product of the earlier zeros, expanded to analytic order N.

    Repeated zeros are handled by the same recursion.  Rejects degree 0, where
    the model space is undefined.
    """
    d = theta.degree
    if d == 0:
        raise ValueError("constant inner function: model space undefined")
    if N < d:
        raise ValueError("truncation order below degree")
    running = np.zeros(N + 1, dtype=np.complex128)
    running[0] = 1.0
    vectors = []
    for a in theta.zeros:
        scale = math.sqrt(1.0 - abs(a) ** 2)
        kernel = scale * np.conj(a) ** np.arange(N + 1)
        vectors.append(LaurentSeries(0, _truncmul(kernel, running, N)))
        running = _truncmul(running, _factor_coeffs(a, N), N)
    mat = np.column_stack([v.coeffs for v in vectors])
    gram = mat.conj().T @ mat
    gram_residual = float(np.max(np.abs(gram - np.eye(d))))
    return ModelBasis(theta, N, tuple(vectors), taylor(theta, N), gram_residual)


def project_model(f: LaurentSeries, basis: ModelBasis) -> LaurentSeries:
    """Model projection P f - Theta P(conj(Theta) f), clipped to order N."""
    th = basis.theta_series
    pf = project_P(f)
    sub = multiply(th, project_P(multiply(conjugate(th), f)))
    return restrict(pf - sub, 0, basis.order)


def expand_in_basis(f: LaurentSeries, basis: ModelBasis) -> np.ndarray:
    """Coordinates <f, e_k> against the orthonormal basis."""
    return np.array([inner(f, e) for e in basis.vectors])


def model_kernel(w, theta: BlaschkeProduct, N: int) -> LaurentSeries:
    """Truncated model reproducing kernel (1 - conj(Theta(w)) Theta(z))/(1 - conj(w) z)."""
    ww = as_disk_point(w)
    th = taylor(theta, N)
    numer = one() - complex(np.conj(theta.evaluate(ww))) * th
    geo = LaurentSeries(0, np.conj(ww) ** np.arange(N + 1), tail=abs(ww) ** (N + 1))
    return restrict(multiply(numer, geo), 0, N)


# -- membership residuals -----------------------------------------------------


def in_H2(f: LaurentSeries) -> float:
    """Distance to the analytic subspace: norm of the coanalytic part."""
    return norm(project_Q(f))


def in_Ktheta_plus_C_theta(f: LaurentSeries, theta: BlaschkeProduct, N: int) -> float:
    """Residual for membership in {f analytic : Theta conj(f) analytic}."""
    th = taylor(theta, N)
    return max(in_H2(f), in_H2(multiply(th, conjugate(f))))


def is_constant(f: LaurentSeries) -> float:
    """Distance of f to its mean: norm of f - c[0]."""
    return norm(f - monomial(0, f.coeff(0)))


# -- canonical symbol decomposition -------------------------------------------


@dataclass(frozen=True, eq=False)
class SymbolDecomposition:
    """Symbol split g = g1 + conj(g2) + ideal_part with g1(0) = 0 enforced.

    g1, g2 lie in the model space (truncated), ideal_part in the truncated
    ideal Theta H2 + conj(Theta H2), and `residual` is the reconstruction
    defect (non-representable content of the input).
    """

    g1: LaurentSeries
    g2: LaurentSeries
    ideal_part: LaurentSeries
    residual: float


def ideal_projection(x: LaurentSeries, basis: ModelBasis, m_top: int | None = None) -> LaurentSeries:
    """Least-squares projection of x onto span{Theta w^m} + span{conj(Theta w^m)}.

    Both families are orthonormal; they couple only through index 0 with the
    rank-one cross Gram theta0^2, solved exactly by a 2x2 correction.
    """
    th = basis.theta_series
    thbar = conjugate(th)
    if m_top is None:
        m_top = max(basis.order - basis.dim, 0)
    b1 = project_P(multiply(thbar, x)).window(0, m_top)
    b2 = np.conj(project_P(multiply(thbar, conjugate(x))).window(0, m_top))
    # <Theta w^m, conj(Theta w^k)> = theta0^2 at m = k = 0, zero elsewhere
    c2 = th.coeff(0) ** 2
    det = 1.0 - abs(c2) ** 2
    x0 = (b1[0] - np.conj(c2) * b2[0]) / det
    y0 = (b2[0] - c2 * b1[0]) / det
    xs = b1.copy()
    ys = b2.copy()
    xs[0], ys[0] = x0, y0
    analytic = multiply(th, LaurentSeries(0, xs))
    anti = conjugate(multiply(th, LaurentSeries(0, np.conj(ys))))
    return analytic + anti


def ideal_distance(x: LaurentSeries, basis: ModelBasis, m_top: int | None = None) -> float:
    """Least-squares distance of x to the truncated ideal."""
    return norm(x - ideal_projection(x, basis, m_top))


def decompose_symbol(g: LaurentSeries, basis: ModelBasis) -> SymbolDecomposition:
    """Canonical least-squares split of a symbol over the truncated spanning set
    {model basis} + {conjugated model basis} + {ideal}, with the one-parameter
    constant overlap pinned by g1(0) = 0.

    The minimizer is computed through the orthogonal structure of the spanning
    set: the analytic and coanalytic parts decompose exactly into model +
    ideal components, and the pin selects the canonical representative.
    """
    th = basis.theta_series
    pg = project_P(g)
    u = conjugate(project_Q(g))
    g1_raw = project_model(pg, basis)
    g2_raw = project_model(u, basis)
    # reproducing kernel at 0: 1 - conj(Theta(0)) Theta, never zero at the origin
    k0 = one() - complex(np.conj(th.coeff(0))) * th
    k0_at0 = 1.0 - abs(th.coeff(0)) ** 2
    c = -g1_raw.coeff(0) / k0_at0
    g1 = restrict(g1_raw + c * k0, 0, basis.order)
    g2 = restrict(g2_raw - np.conj(c) * k0, 0, basis.order)
    s = g - g1 - conjugate(g2)
    m_top = max(basis.order - basis.dim, s.max_index, -s.min_index, 0)
    ideal_part = ideal_projection(s, basis, m_top)
    return SymbolDecomposition(g1, g2, ideal_part, norm(s - ideal_part))
