"""Finite Blaschke products: the concrete inner functions.

A product is stored as its zeros (repetition encodes multiplicity) together
with a unimodular constant.  Each nonzero-zero factor is normalized as
(|a|/a) * (a - w)/(1 - conj(a) w), so every factor is 1-at-the-origin up to
the modulus |a| and the stored constant carries all remaining phase; a zero
at the origin contributes the bare factor w.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .series import LaurentSeries, as_disk_point

#: zeros with modulus above this get a slow-Taylor-decay note attached
FLAG_MODULUS = 0.95


@dataclass(frozen=True)
class BlaschkeProduct:
    """Finite Blaschke product with the given zeros and unimodular constant."""

    zeros: tuple
    constant: complex = 1.0 + 0.0j

    def __post_init__(self):
        zs = tuple(as_disk_point(z) for z in self.zeros)
        c = complex(self.constant)
        if abs(abs(c) - 1.0) > 1e-12:
            raise ValueError(f"constant must be unimodular within 1e-12, got |c| = {abs(c):.6g}")
        object.__setattr__(self, "zeros", zs)
        object.__setattr__(self, "constant", c)
        # inner-function check: unit modulus on a coarse circle grid
        grid = np.exp(2j * np.pi * np.arange(64) / 64)
        vals = np.array([self.evaluate(w) for w in grid])
        dev = float(np.max(np.abs(np.abs(vals) - 1.0)))
        if dev > 1e-10:
            raise ValueError(f"not unimodular on the circle: deviation {dev:.3e}")

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def evaluate(self, w: complex) -> complex:
        """Value at w, |w| <= 1; on the circle the modulus is 1."""
        ww = complex(w)
        if abs(ww) > 1.0 + 1e-12:
            raise ValueError("evaluation requires |w| <= 1")
        out = self.constant
        for a in self.zeros:
            if a == 0:
                out *= ww
            else:
                out *= (abs(a) / a) * (a - ww) / (1.0 - np.conj(a) * ww)
        return complex(out)

    __call__ = evaluate

    def at_zero(self) -> complex:
        return self.evaluate(0.0)

    def to_json_dict(self) -> dict:
        return {
            "zeros": [[float(z.real), float(z.imag)] for z in self.zeros],
            "constant": [float(self.constant.real), float(self.constant.imag)],
        }

    @staticmethod
    def from_json_dict(obj: dict) -> "BlaschkeProduct":
        zeros = tuple(complex(re, im) for re, im in obj["zeros"])
        re, im = obj["constant"]
        return BlaschkeProduct(zeros, complex(re, im))


def _factor_coeffs(a: complex, N: int) -> np.ndarray:
    """Taylor coefficients 0..N of one normalized Blaschke factor."""
    out = np.zeros(N + 1, dtype=np.complex128)
    if a == 0:
        if N >= 1:
            out[1] = 1.0
        return out
    out[0] = abs(a)
    out[1:] = -(abs(a) / a) * (1.0 - abs(a) ** 2) * np.conj(a) ** np.arange(N)
    return out


def taylor(theta: BlaschkeProduct, N: int) -> LaurentSeries:
    """Taylor coefficients 0..N of the product.

    Truncated convolution of analytic factors is exact for the first N+1
    coefficients; the dropped tail mass is sqrt(1 - sum |c_n|^2) by
    unimodularity and is recorded on the result.
    """
    acc = np.zeros(N + 1, dtype=np.complex128)
    acc[0] = theta.constant
    for a in theta.zeros:
        acc = np.convolve(acc, _factor_coeffs(a, N))[: N + 1]
    # unimodularity gives the dropped mass exactly, but 1 - sum|c|^2 floors at
    # rounding noise; a geometric extrapolation from the last coefficients is
    # sharper when the zeros sit well inside the disk
    parseval = float(np.sqrt(max(0.0, 1.0 - float(np.sum(np.abs(acc) ** 2)))))
    rho = max((abs(a) for a in theta.zeros), default=0.0)
    if rho == 0.0:
        tail = 0.0
    else:
        last = float(np.max(np.abs(acc[max(0, N - 2) :])))
        tail = min(parseval, 4.0 * last * rho / (1.0 - rho))
    note = ""
    if theta.zeros and max(abs(a) for a in theta.zeros) > FLAG_MODULUS:
        note = f"taylor tail decays like {max(abs(a) for a in theta.zeros):.3f}^N"
    return LaurentSeries(0, acc, tail=tail, note=note)


def at_zero(theta: BlaschkeProduct) -> complex:
    return theta.at_zero()


def degree(theta: BlaschkeProduct) -> int:
    return theta.degree


def monomial_product(d: int) -> BlaschkeProduct:
    """The product w^d (all zeros at the origin, constant 1)."""
    return BlaschkeProduct((0.0,) * d)


__all__ = [
    "BlaschkeProduct",
    "taylor",
    "at_zero",
    "degree",
    "monomial_product",
]
