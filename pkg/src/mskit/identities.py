"""Finite-section checks of the classical operator identities.

Each check returns (residual, budget): the residual is a max-abs entry
difference over a block on which the infinite identity restricts exactly,
and the budget combines a rounding term 1e-12 * scale * sqrt(dim) with the
geometric tails of any truncated kernel or inner-function expansion involved.
Products and Hankel-square identities with polynomial symbols are exact on
interior blocks, so residuals sit at rounding level when the check is healthy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import theorems
from .model_space import build_tm_basis
from .operators import (
    adjoint,
    cohardy_vector,
    common_block_residual,
    hankel,
    hardy_vector,
    identity,
    interior_residual,
    rank_one,
    s_op,
    toeplitz,
    v_conjugate,
)
from .sampling import (
    random_blaschke,
    random_disk_point,
    random_model_element,
    random_trig,
    rng_from_seed,
)
from .series import (
    LaurentSeries,
    apply_U,
    cauchy_kernel,
    conjugate,
    mobius_symbol,
    multiply,
    sup_estimate,
)


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    residual: float
    budget: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.budget


def _deg(f: LaurentSeries) -> int:
    t = f.trimmed()
    return max(abs(t.min_index), abs(t.max_index))

def _rounding(dim: int, *symbols: LaurentSeries) -> float:
    scale = 1.0
    for s in symbols:
        scale *= 1.0 + sup_estimate(s)
    return 1e-12 * scale * math.sqrt(dim)


# -- product identities on the Hardy scale -------------------------------------


def check_product_splitting(f, g, N, M) -> IdentityCheck:
    """T_{fg} = T_f T_g + H*_{conj f} H_g on the interior block."""
    lhs = toeplitz(multiply(f, g), N)
    rhs = toeplitz(f, N) @ toeplitz(g, N) + adjoint(hankel(conjugate(f), N, M)) @ hankel(g, N, M)
    margin = _deg(f) + _deg(g)
    res = interior_residual(lhs, rhs, margin)
    return IdentityCheck("product_splitting", res, _rounding(N + 1, f, g))


def check_hankel_splitting(f, g, N, M) -> IdentityCheck:
    """H_{fg} = H_f T_g + S_f H_g on the interior block."""
    lhs = hankel(multiply(f, g), N, M)
    rhs = hankel(f, N, M) @ toeplitz(g, N) + s_op(f, M) @ hankel(g, N, M)
    margin = _deg(f) + _deg(g)
    res = interior_residual(lhs, rhs, margin)
    return IdentityCheck("hankel_splitting", res, _rounding(max(N + 1, M), f, g))


def check_analytic_right(f, g_analytic, N, M) -> tuple[IdentityCheck, IdentityCheck]:
    """For analytic g: T_f T_g = T_{fg} and H_f T_g = H_{fg}."""
    fg = multiply(f, g_analytic)
    margin = _deg(f) + _deg(g_analytic)
    t_res = interior_residual(toeplitz(f, N) @ toeplitz(g_analytic, N), toeplitz(fg, N), margin)
    h_res = interior_residual(hankel(f, N, M) @ toeplitz(g_analytic, N), hankel(fg, N, M), margin)
    b = _rounding(max(N + 1, M), f, g_analytic)
    return (
        IdentityCheck("toeplitz_analytic_right", t_res, b),
        IdentityCheck("hankel_analytic_right", h_res, b),
    )


def check_analytic_left(f_analytic, g, N, M) -> IdentityCheck:
    """For analytic f: H_{fg} = S_f H_g."""
    lhs = hankel(multiply(f_analytic, g), N, M)
    rhs = s_op(f_analytic, M) @ hankel(g, N, M)
    res = interior_residual(lhs, rhs, _deg(f_analytic) + _deg(g))
    return IdentityCheck("hankel_analytic_left", res, _rounding(M, f_analytic, g))


# -- the flip and the rank-one defect identities --------------------------------


def check_v_conjugation(f, N, M) -> IdentityCheck:
    """V^-1 H_f V = H*_f: flip-conjugation agrees with the adjoint section."""
    lhs = v_conjugate(hankel(f, N, M))
    rhs = adjoint(hankel(f, N, M))
    res = common_block_residual(lhs, rhs)
    return IdentityCheck("v_conjugation", res, _rounding(max(N + 1, M), f))


def check_mobius_defect(z, N) -> IdentityCheck:
    """I - T_phi T_{conj phi} = k_z (x) k_z, exact on the full section."""
    phi = mobius_symbol(z, N)
    kz = hardy_vector(cauchy_kernel(z, N), N)
    lhs = identity(kz.space) - toeplitz(phi, N) @ toeplitz(conjugate(phi), N)
    rhs = rank_one(kz, kz)
    res = common_block_residual(lhs, rhs)
    budget = _rounding(N + 1) + abs(complex(z)) ** (2 * (N + 1))
    return IdentityCheck("mobius_rank_one_defect", res, budget)


def check_s_mobius_defect(z, N, M) -> IdentityCheck:
    """S*_phi S_phi = 1 - (U k_conj(z)) (x) (U k_conj(z)) on the coanalytic window."""
    phi = mobius_symbol(z, M)
    s = s_op(phi, M)
    uk = cohardy_vector(apply_U(cauchy_kernel(np.conj(complex(z)), N)), M)
    lhs = adjoint(s) @ s
    rhs = identity(s.domain) - rank_one(uk, uk)
    res = common_block_residual(lhs, rhs)
    budget = _rounding(M) + abs(complex(z)) ** (2 * min(N + 1, M))
    return IdentityCheck("s_mobius_rank_one_defect", res, budget)


# -- rank-one perturbation identities (the tensor pair) --------------------------


def check_tensor_pair(f, g, z, N, M) -> tuple[IdentityCheck, IdentityCheck]:
    """Both rank-one perturbation identities for H*_f H_g and H_f T_g.

    First:  H*_f H_g - T*_phi H*_f H_g T_phi = V[(H_f k_z)(x)(H_g k_z)]V*.
    Second: S_phi H_f T_g T_{conj phi} - H_f T_g
            = -(H_f T_g k_z)(x)k_z + [(H_f k_z)(x)(H*_g U k_conj(z))] T_{conj phi}.
    """
    zz = complex(z)
    phi = mobius_symbol(zz, N)
    kz_series = cauchy_kernel(zz, N)
    kz = hardy_vector(kz_series, N)
    ukzbar = cohardy_vector(apply_U(cauchy_kernel(np.conj(zz), N)), M)

    hf, hg = hankel(f, N, M), hankel(g, N, M)
    tg, tphi = toeplitz(g, N), toeplitz(phi, N)
    tphibar = toeplitz(conjugate(phi), N)
    x = adjoint(hf) @ hg
    lhs1 = x - adjoint(tphi) @ x @ tphi
    hfk = hf @ kz
    hgk = hg @ kz
    # V [(x)(y)] V* = (Vx)(x)(Vy): entrywise conjugation with flipped tags
    rhs1 = v_conjugate(rank_one(hfk, hgk))
    res1 = common_block_residual(lhs1, rhs1)
    tail = abs(zz) ** max(1, N + 1 - _deg(f) - _deg(g)) if abs(zz) > 0 else 0.0
    check1 = IdentityCheck("tensor_hankel_square", res1, _rounding(N + 1, f, g) + tail)

    hftg = hf @ tg
    sphi = s_op(mobius_symbol(zz, M), M)
    lhs2 = sphi @ hftg @ tphibar - hftg
    hstar_g_uk = adjoint(hg) @ ukzbar
    rhs2 = (-1.0) * rank_one(hftg @ kz, kz) + rank_one(hfk, hstar_g_uk) @ tphibar
    res2 = common_block_residual(lhs2, rhs2)
    check2 = IdentityCheck("tensor_hankel_toeplitz", res2, _rounding(max(N + 1, M), f, g) + tail)
    return check1, check2


# -- the seeded suite ------------------------------------------------------------


SUITE_IDENTITIES = (
    "product_splitting",
    "hankel_splitting",
    "toeplitz_analytic_right",
    "hankel_analytic_right",
    "hankel_analytic_left",
    "v_conjugation",
    "mobius_rank_one_defect",
    "s_mobius_rank_one_defect",
    "tensor_hankel_square",
    "tensor_hankel_toeplitz",
    "model_product_splitting",
    "flip_rewriting_first",
    "flip_rewriting_second",
)


def run_identity_suite(
    trials: int,
    max_degree: int,
    N: int,
    M: int,
    seed: int,
    inject_sign_error: bool = False,
) -> dict:
    """Worst residual and budget per identity over seeded random instances.

    `inject_sign_error` flips a sign inside the first product identity; the
    suite must then fail, which sanity-checks the harness itself.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    worst: dict[str, IdentityCheck] = {}

    def record(check: IdentityCheck):
        prev = worst.get(check.name)
        if prev is None or check.residual > prev.residual:
            worst[check.name] = check

    for t in range(trials):
        rng = rng_from_seed(seed, t)
        f = random_trig(rng, max_degree)
        g = random_trig(rng, max_degree)
        ga = random_trig(rng, max_degree, analytic=True)
        fa = random_trig(rng, max_degree, analytic=True)
        z = random_disk_point(rng, 0.7)

        lhs = toeplitz(multiply(f, g), N)
        sign = -1.0 if inject_sign_error else 1.0
        rhs = toeplitz(f, N) @ toeplitz(g, N) + sign * (
            adjoint(hankel(conjugate(f), N, M)) @ hankel(g, N, M)
        )
        record(
            IdentityCheck(
                "product_splitting",
                interior_residual(lhs, rhs, _deg(f) + _deg(g)),
                _rounding(N + 1, f, g),
            )
        )
        record(check_hankel_splitting(f, g, N, M))
        for c in check_analytic_right(f, ga, N, M):
            record(c)
        record(check_analytic_left(fa, g, N, M))
        record(check_v_conjugation(f, N, M))
        record(check_mobius_defect(z, N))
        record(check_s_mobius_defect(z, N, M))
        for c in check_tensor_pair(f, g, z, N, M):
            record(c)

        theta = random_blaschke(rng, 1 + int(rng.integers(4)), 0.6)
        basis = build_tm_basis(theta, N)
        g1 = random_model_element(rng, basis, zero_at_origin=True)
        g2 = random_model_element(rng, basis)
        split = theorems.lemma_eq_split_parts(f, g1, g2, basis, N, M)
        record(IdentityCheck("model_product_splitting", split["lemma_product"], split["budget"]))
        record(IdentityCheck("flip_rewriting_first", split["flip_first"], split["budget"]))
        record(IdentityCheck("flip_rewriting_second", split["flip_second"], split["budget"]))

    checks = [worst[name] for name in SUITE_IDENTITIES if name in worst]
    return {
        "trials": trials,
        "max_degree": max_degree,
        "N": N,
        "M": M,
        "seed": seed,
        "identities": [
            {"name": c.name, "worst_residual": c.residual, "budget": c.budget, "pass": c.passed}
            for c in checks
        ],
        "pass": all(c.passed for c in checks),
    }
