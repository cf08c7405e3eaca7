"""Finite Laurent series on the unit circle.

This is the arithmetic layer everything else reduces to: exact coefficient
convolution, analytic/coanalytic projections, Parseval inner products, circle
quadrature, and the specific symbol families the operator layer consumes
(normalized Cauchy kernels, Moebius transforms, the U and V coefficient maps).

All values are immutable; operations are pure functions, safe to share across
threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

#: hard cap on the coefficient window any single operation may allocate
HARD_CAP = 1 << 22

#: adequacy rule for kernel/Moebius truncation: N * (1 - |z|) >= this
KERNEL_ADEQUACY = 10.0


class OversizedSeriesError(ValueError):
    """An operation would allocate a coefficient window larger than HARD_CAP."""


@dataclass(frozen=True)
class DiskPoint:
    """A point strictly inside the open unit disk."""

    value: complex

    def __post_init__(self):
        v = complex(self.value)
        if abs(v) >= 1.0:
            raise ValueError(f"|z| < 1 required, got |z| = {abs(v):.6g}")
        object.__setattr__(self, "value", v)


def as_disk_point(z) -> complex:
    """Coerce a complex or DiskPoint to a validated complex inside the disk."""
    return z.value if isinstance(z, DiskPoint) else DiskPoint(z).value


@dataclass(frozen=True)
class TruncationConfig:
    """Truncation orders and tolerances shared by finite-section computations.

    N is the analytic order (indices 0..N), M the coanalytic order
    (indices -1..-M).  sample_count is the circle-quadrature grid size and
    must be a power of two >= 4*(N+M) so band-limited products are sampled
    exactly.
    """

    N: int = 256
    M: int = 256
    sample_count: int = 2048
    zero_tol: float = 1e-8
    residual_tol: float = 1e-6

    def __post_init__(self):
        if self.N < 1 or self.M < 1:
            raise ValueError("need N >= 1 and M >= 1")
        sc = self.sample_count
        if sc < 4 * (self.N + self.M):
            raise ValueError("sample_count must be >= 4*(N+M)")
        if sc <= 0 or sc & (sc - 1):
            raise ValueError("sample_count must be a power of two")
        if not 0.0 <= self.zero_tol < self.residual_tol:
            raise ValueError("need 0 <= zero_tol < residual_tol")


@dataclass(frozen=True, eq=False)
class LaurentSeries:
    """Fourier coefficients c[n] for n = min_index .. min_index + len(coeffs) - 1.

    Analytic means min_index >= 0; strictly coanalytic means max_index <= -1.
    Equality compares zero-padded windows, so leading/trailing exact zeros do
    not matter.  `tail` is an l2 bound on mass a truncating constructor
    dropped and `note` carries attached warnings; neither is part of equality.
    """

    min_index: int
    coeffs: np.ndarray
    tail: float = field(default=0.0)
    note: str = field(default="")

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=np.complex128)
        if arr.ndim == 0:
            arr = arr.reshape(1)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("coeffs must be a nonempty 1-d sequence")
        if arr.size > HARD_CAP:
            raise OversizedSeriesError(
                f"coefficient window of {arr.size} exceeds hard cap {HARD_CAP}"
            )
        object.__setattr__(self, "coeffs", arr)
        object.__setattr__(self, "min_index", int(self.min_index))
        object.__setattr__(self, "tail", float(self.tail))

    # -- window bookkeeping -------------------------------------------------

    @property
    def max_index(self) -> int:
        return self.min_index + len(self.coeffs) - 1

    def coeff(self, n: int) -> complex:
        if self.min_index <= n <= self.max_index:
            return complex(self.coeffs[n - self.min_index])
        return 0.0 + 0.0j

    def window(self, lo: int, hi: int) -> np.ndarray:
        """Coefficients on the inclusive index range lo..hi, zero padded."""
        if hi < lo:
            raise ValueError("empty window")
        out = np.zeros(hi - lo + 1, dtype=np.complex128)
        a, b = max(lo, self.min_index), min(hi, self.max_index)
        if a <= b:
            out[a - lo : b - lo + 1] = self.coeffs[a - self.min_index : b - self.min_index + 1]
        return out

    def trimmed(self) -> "LaurentSeries":
        """Drop exact leading/trailing zero coefficients (keeps at least one)."""
        nz = np.nonzero(self.coeffs)[0]
        if len(nz) == 0:
            return LaurentSeries(0, np.zeros(1), tail=self.tail, note=self.note)
        a, b = nz[0], nz[-1]
        return LaurentSeries(
            self.min_index + a, self.coeffs[a : b + 1].copy(), tail=self.tail, note=self.note
        )

    @property
    def is_analytic(self) -> bool:
        return self.trimmed().min_index >= 0

    # -- ring structure -----------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        lo = min(self.min_index, other.min_index)
        hi = max(self.max_index, other.max_index)
        return bool(np.array_equal(self.window(lo, hi), other.window(lo, hi)))

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        lo = min(self.min_index, other.min_index)
        hi = max(self.max_index, other.max_index)
        return LaurentSeries(
            lo, self.window(lo, hi) + other.window(lo, hi), tail=self.tail + other.tail
        )

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(self.min_index, -self.coeffs, tail=self.tail)

    def __mul__(self, other):
        if isinstance(other, LaurentSeries):
            return multiply(self, other)
        return LaurentSeries(self.min_index, self.coeffs * complex(other), tail=abs(other) * self.tail)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"LaurentSeries([{self.min_index}..{self.max_index}], {len(self.coeffs)} coeffs)"

    # -- JSON wire format ---------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "min_index": self.min_index,
            "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs],
        }

    @staticmethod
    def from_json_dict(obj: dict) -> "LaurentSeries":
        coeffs = np.array([complex(re, im) for re, im in obj["coeffs"]], dtype=np.complex128)
        return LaurentSeries(int(obj["min_index"]), coeffs)


def zero() -> LaurentSeries:
    return LaurentSeries(0, np.zeros(1))


def one() -> LaurentSeries:
    return LaurentSeries(0, np.ones(1))


def monomial(n: int, c: complex = 1.0) -> LaurentSeries:
    """The single term c * w^n."""
    return LaurentSeries(n, np.array([c], dtype=np.complex128))


def restrict(a: LaurentSeries, lo: int, hi: int) -> LaurentSeries:
    """Clip to the inclusive index window lo..hi (zero padded)."""
    return LaurentSeries(lo, a.window(lo, hi), tail=a.tail)


# -- core operations --------------------------------------------------------


def multiply(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    """Exact coefficient convolution; index range is the Minkowski sum."""
    size = len(a.coeffs) + len(b.coeffs) - 1
    if size > HARD_CAP:
        raise OversizedSeriesError(f"product window of {size} exceeds hard cap {HARD_CAP}")
    prod = np.convolve(a.coeffs, b.coeffs)
    na, nb = norm(a), norm(b)
    tail = a.tail * (nb + b.tail) + b.tail * na
    return LaurentSeries(a.min_index + b.min_index, prod, tail=tail)


def conjugate(a: LaurentSeries) -> LaurentSeries:
    """Complex conjugate on the circle: coefficient n maps to conj(c[-n])."""
    return LaurentSeries(-a.max_index, np.conj(a.coeffs[::-1]), tail=a.tail)


def project_P(a: LaurentSeries) -> LaurentSeries:
    """Analytic (Riesz) projection: keep indices >= 0."""
    if a.max_index < 0:
        return LaurentSeries(0, np.zeros(1), tail=a.tail)
    lo = max(a.min_index, 0)
    return LaurentSeries(lo, a.coeffs[lo - a.min_index :].copy(), tail=a.tail)


def project_Q(a: LaurentSeries) -> LaurentSeries:
    """Coanalytic projection: keep indices <= -1; P + Q is the identity."""
    if a.min_index >= 0:
        return LaurentSeries(-1, np.zeros(1), tail=a.tail)
    hi = min(a.max_index, -1)
    return LaurentSeries(a.min_index, a.coeffs[: hi - a.min_index + 1].copy(), tail=a.tail)


def inner(a: LaurentSeries, b: LaurentSeries) -> complex:
    """L2 pairing <a, b>, conjugate linear in the second argument."""
    lo = max(a.min_index, b.min_index)
    hi = min(a.max_index, b.max_index)
    if hi < lo:
        return 0.0 + 0.0j
    return complex(np.vdot(b.window(lo, hi), a.window(lo, hi)))


def norm(a: LaurentSeries) -> float:
    """Parseval norm: l2 norm of the coefficient vector."""
    return float(np.linalg.norm(a.coeffs))


def evaluate(a: LaurentSeries, point: complex) -> complex:
    """Evaluate at a circle point, or inside the disk for analytic input.

    A series with negative indices is only a function on the circle, so the
    point must satisfy |point| = 1 within 1e-12 there.
    """
    p = complex(point)
    r = abs(p)
    if a.trimmed().min_index < 0:
        if abs(r - 1.0) > 1e-12:
            raise ValueError("series with negative indices: need |point| = 1 within 1e-12")
    elif r > 1.0 + 1e-12:
        raise ValueError("analytic series: need |point| <= 1")
    n = np.arange(a.min_index, a.max_index + 1)
    if p == 0:
        vals = np.zeros(len(n), dtype=np.complex128)
        vals[n == 0] = 1.0
    else:
        vals = p**n
    return complex(np.sum(a.coeffs * vals))


# -- circle quadrature -------------------------------------------------------


def samples(a: LaurentSeries, count: int) -> np.ndarray:
    """Values at the uniform circle grid exp(2*pi*i*j/count), j = 0..count-1."""
    if len(a.coeffs) > count:
        raise ValueError("sample count smaller than coefficient window (aliasing)")
    wrapped = np.zeros(count, dtype=np.complex128)
    idx = np.arange(a.min_index, a.max_index + 1) % count
    np.add.at(wrapped, idx, a.coeffs)
    return np.fft.ifft(wrapped) * count


def quadrature_inner(a: LaurentSeries, b: LaurentSeries, count: int) -> complex:
    """<a, b> by uniform circle quadrature; exact when widths < count."""
    sa, sb = samples(a, count), samples(b, count)
    return complex(np.mean(sa * np.conj(sb)))


def sup_estimate(a: LaurentSeries, count: int = 256) -> float:
    """Sup-norm estimate: max modulus over a uniform circle grid."""
    width = len(a.coeffs)
    c = count
    while c < 2 * width:
        c *= 2
    return float(np.max(np.abs(samples(a, c))))


# -- kernels and symbol maps --------------------------------------------------


def kernel_adequate(z, N: int) -> bool:
    """Truncation adequacy rule for kernels at z expanded to order N."""
    return (1.0 - abs(as_disk_point(z))) * N >= KERNEL_ADEQUACY


def cauchy_kernel(z, N: int) -> LaurentSeries:
    """Normalized reproducing kernel at z, expanded to analytic order N.

    Coefficient n is sqrt(1-|z|^2) * conj(z)^n.  The dropped geometric tail
    has l2 mass |z|^(N+1), recorded in `tail`; an inadequate (1-|z|)*N budget
    attaches a truncation note.
    """
    zz = as_disk_point(z)
    scale = math.sqrt(1.0 - abs(zz) ** 2)
    coeffs = scale * np.conj(zz) ** np.arange(N + 1)
    note = "" if kernel_adequate(zz, N) else "truncation: (1-|z|)*N < 10"
    return LaurentSeries(0, coeffs, tail=abs(zz) ** (N + 1), note=note)


def mobius_symbol(z, N: int) -> LaurentSeries:
    """Analytic expansion of the disk automorphism (z - w)/(1 - conj(z) w).

    Constant term z, coefficient -(1-|z|^2) * conj(z)^(n-1) at n >= 1.
    """
    zz = as_disk_point(z)
    r = abs(zz)
    coeffs = np.empty(N + 1, dtype=np.complex128)
    coeffs[0] = zz
    coeffs[1:] = -(1.0 - r**2) * np.conj(zz) ** np.arange(N)
    note = "" if kernel_adequate(zz, N) else "truncation: (1-|z|)*N < 10"
    return LaurentSeries(0, coeffs, tail=math.sqrt(1.0 - r**2) * r**N, note=note)


def apply_U(a: LaurentSeries) -> LaurentSeries:
    """Unitary flip (Uf)(z) = conj(z) f(conj(z)): coefficient m <- c[-m-1]."""
    return LaurentSeries(-a.max_index - 1, a.coeffs[::-1].copy(), tail=a.tail)


def apply_V(a: LaurentSeries) -> LaurentSeries:
    """Antiunitary involution (Vf)(z) = conj(z f(z)): coefficient m <- conj(c[-m-1])."""
    return LaurentSeries(-a.max_index - 1, np.conj(a.coeffs[::-1]), tail=a.tail)
