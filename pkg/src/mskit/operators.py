"""Finite-section matrices of Toeplitz, Hankel and model-space operators.

Every matrix is tagged with domain and codomain space descriptors so
compositions are checked, and the antilinear flip V is never stored as a
matrix: it acts on vectors as index-flip plus conjugation and on matrices as
entrywise conjugation with flipped tags.

Storage conventions:
  hardy(N):    indices 0..N, storage position n
  cohardy(M):  indices -1..-M, storage position j-1 for index -j
  model:       coordinates against the orthonormal TM basis
  model_perp:  block A = coordinates against the orthonormal shifted inner
               functions Theta w^m (0 <= m <= N-d-1), block B = cohardy(M)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model_space import ModelBasis, project_model
from .series import LaurentSeries, conjugate, inner, multiply, project_P, project_Q


class TagMismatchError(ValueError):
    """Composition or addition attempted across incompatible space tags."""


@dataclass(frozen=True)
class SpaceTag:
    kind: str
    n: int = -1
    m: int = -1
    basis_token: str = ""
    dim: int = 0

    def __repr__(self) -> str:
        if self.kind == "hardy":
            return f"Hardy(N={self.n})"
        if self.kind == "cohardy":
            return f"CoHardy(M={self.m})"
        if self.kind == "model":
            return f"Model(dim={self.dim}, {self.basis_token[:6]})"
        return f"ModelPerp(N={self.n}, M={self.m}, {self.basis_token[:6]})"

    def to_json_dict(self) -> dict:
        out = {"kind": self.kind, "dim": self.dim}
        if self.n >= 0:
            out["N"] = self.n
        if self.m >= 0:
            out["M"] = self.m
        if self.basis_token:
            out["basis"] = self.basis_token
        return out


def hardy_tag(N: int) -> SpaceTag:
    return SpaceTag("hardy", n=N, dim=N + 1)


def cohardy_tag(M: int) -> SpaceTag:
    return SpaceTag("cohardy", m=M, dim=M)


def model_tag(basis: ModelBasis) -> SpaceTag:
    return SpaceTag("model", basis_token=basis.token, dim=basis.dim)


def model_perp_tag(basis: ModelBasis, N: int, M: int) -> SpaceTag:
    d = basis.dim
    if N - d < 0:
        raise ValueError("need N >= degree for the shifted-inner block")
    return SpaceTag("model_perp", n=N, m=M, basis_token=basis.token, dim=(N - d) + M)


@dataclass(frozen=True, eq=False)
class SpaceVector:
    space: SpaceTag
    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=np.complex128)
        if arr.shape != (self.space.dim,):
            raise TagMismatchError(f"vector shape {arr.shape} does not match {self.space}")
        object.__setattr__(self, "entries", arr)

    def norm(self) -> float:
        return float(np.linalg.norm(self.entries))


@dataclass(frozen=True, eq=False)
class OpMatrix:
    domain: SpaceTag
    codomain: SpaceTag
    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=np.complex128)
        if arr.shape != (self.codomain.dim, self.domain.dim):
            raise TagMismatchError(
                f"matrix shape {arr.shape} does not match {self.codomain} x {self.domain}"
            )
        object.__setattr__(self, "entries", arr)

    def __matmul__(self, other):
        if isinstance(other, OpMatrix):
            return compose(self, other)
        if isinstance(other, SpaceVector):
            return apply(self, other)
        return NotImplemented

    def __add__(self, other: "OpMatrix") -> "OpMatrix":
        if self.domain != other.domain or self.codomain != other.codomain:
            raise TagMismatchError("addition requires identical tags")
        return OpMatrix(self.domain, self.codomain, self.entries + other.entries)

    def __sub__(self, other: "OpMatrix") -> "OpMatrix":
        return self + (-1.0) * other

    def __mul__(self, c) -> "OpMatrix":
        return OpMatrix(self.domain, self.codomain, self.entries * complex(c))

    __rmul__ = __mul__

    def __neg__(self) -> "OpMatrix":
        return (-1.0) * self

    def to_json_dict(self) -> dict:
        rows, cols = self.entries.shape
        flat = self.entries.reshape(-1)
        return {
            "domain": self.domain.to_json_dict(),
            "codomain": self.codomain.to_json_dict(),
            "rows": rows,
            "cols": cols,
            "entries": [[float(v.real), float(v.imag)] for v in flat],
        }


def compose(a: OpMatrix, b: OpMatrix) -> OpMatrix:
    """a after b; the inner tags must agree exactly."""
    if a.domain != b.codomain:
        raise TagMismatchError(f"cannot compose {a.domain} after {b.codomain}")
    return OpMatrix(b.domain, a.codomain, a.entries @ b.entries)


def add(a: OpMatrix, b: OpMatrix) -> OpMatrix:
    return a + b


def scale(a: OpMatrix, c: complex) -> OpMatrix:
    return a * c


def adjoint(a: OpMatrix) -> OpMatrix:
    return OpMatrix(a.codomain, a.domain, a.entries.conj().T)


def apply(a: OpMatrix, v: SpaceVector) -> SpaceVector:
    if a.domain != v.space:
        raise TagMismatchError(f"cannot apply {a.domain}->{a.codomain} to {v.space}")
    return SpaceVector(a.codomain, a.entries @ v.entries)


def identity(tag: SpaceTag) -> OpMatrix:
    return OpMatrix(tag, tag, np.eye(tag.dim, dtype=np.complex128))


def rank_one(x: SpaceVector, y: SpaceVector) -> OpMatrix:
    """The operator f -> <f, y> x from y's space to x's space."""
    return OpMatrix(y.space, x.space, np.outer(x.entries, np.conj(y.entries)))


def op_norm(a: OpMatrix) -> float:
    """Spectral norm: largest singular value."""
    if a.entries.size == 0:
        return 0.0
    return float(np.linalg.svd(a.entries, compute_uv=False)[0])


# -- embeddings between series and tagged coordinate vectors ------------------


def hardy_vector(f: LaurentSeries, N: int) -> SpaceVector:
    return SpaceVector(hardy_tag(N), f.window(0, N))


def cohardy_vector(f: LaurentSeries, M: int) -> SpaceVector:
    return SpaceVector(cohardy_tag(M), f.window(-M, -1)[::-1])


def series_from_hardy(v: SpaceVector) -> LaurentSeries:
    return LaurentSeries(0, v.entries.copy())


def series_from_cohardy(v: SpaceVector) -> LaurentSeries:
    return LaurentSeries(-v.space.m, v.entries[::-1].copy())


def model_vector(f: LaurentSeries, basis: ModelBasis) -> SpaceVector:
    coords = np.array([inner(f, e) for e in basis.vectors])
    return SpaceVector(model_tag(basis), coords)


def model_perp_vector(f: LaurentSeries, basis: ModelBasis, N: int, M: int) -> SpaceVector:
    """Coordinates of a series lying (up to residual) in the orthogonal
    complement of the model space: shifted-inner block plus cohardy block."""
    d = basis.dim
    thbar = conjugate(basis.theta_series)
    block_a = project_P(multiply(thbar, project_P(f))).window(0, N - d - 1) if N - d >= 1 else np.zeros(0)
    block_b = f.window(-M, -1)[::-1]
    return SpaceVector(model_perp_tag(basis, N, M), np.concatenate([block_a, block_b]))


def basis_matrix(basis: ModelBasis, N: int) -> np.ndarray:
    """(N+1) x dim column stack of basis vectors on the hardy(N) window."""
    return np.column_stack([e.window(0, N) for e in basis.vectors])


# -- finite sections of the classical operators --------------------------------


def _coeff_grid(f: LaurentSeries, grid: np.ndarray) -> np.ndarray:
    lo, hi = int(grid.min()), int(grid.max())
    table = f.window(lo, hi)
    return table[grid - lo]


def toeplitz(f: LaurentSeries, N: int) -> OpMatrix:
    """Section of compression-multiplication on the analytic side: entry (j,k) = c[j-k]."""
    idx = np.arange(N + 1)
    grid = np.subtract.outer(idx, idx)
    return OpMatrix(hardy_tag(N), hardy_tag(N), _coeff_grid(f, grid))


def hankel(f: LaurentSeries, N: int, M: int) -> OpMatrix:
    """Section of h -> Q(f h): row for w^-j, column for w^k carries c[-j-k]."""
    grid = -np.add.outer(np.arange(1, M + 1), np.arange(N + 1))
    return OpMatrix(hardy_tag(N), cohardy_tag(M), _coeff_grid(f, grid))


def s_op(f: LaurentSeries, M: int) -> OpMatrix:
    """Section of h -> Q(f h) on the coanalytic side: entry (-j, -k) = c[k-j]."""
    idx = np.arange(M)
    grid = -np.subtract.outer(idx, idx)
    return OpMatrix(cohardy_tag(M), cohardy_tag(M), _coeff_grid(f, grid))


def u_matrix(N: int, M: int) -> OpMatrix:
    """Matrix of the unitary flip w^k -> w^(-k-1) between the truncated windows."""
    ent = np.zeros((M, N + 1), dtype=np.complex128)
    r = min(M, N + 1)
    ent[np.arange(r), np.arange(r)] = 1.0
    return OpMatrix(hardy_tag(N), cohardy_tag(M), ent)


def tto(g: LaurentSeries, basis: ModelBasis) -> OpMatrix:
    """Truncated Toeplitz operator: entry (j,k) = <g e_k, e_j>."""
    d = basis.dim
    ent = np.empty((d, d), dtype=np.complex128)
    for k, ek in enumerate(basis.vectors):
        gek = multiply(g, ek)
        for j, ej in enumerate(basis.vectors):
            ent[j, k] = inner(gek, ej)
    return OpMatrix(model_tag(basis), model_tag(basis), ent)


def tho(f: LaurentSeries, basis: ModelBasis, N: int, M: int) -> OpMatrix:
    """Truncated Hankel operator: column k holds (I - P_K)(f e_k) in
    model_perp coordinates."""
    cols = []
    for ek in basis.vectors:
        v = multiply(f, ek)
        resid = v - project_model(v, basis)
        cols.append(model_perp_vector(resid, basis, N, M).entries)
    return OpMatrix(model_tag(basis), model_perp_tag(basis, N, M), np.column_stack(cols))


# -- the antilinear flip -------------------------------------------------------


def _flip_tag(tag: SpaceTag) -> SpaceTag:
    if tag.kind == "hardy":
        return cohardy_tag(tag.n + 1)
    if tag.kind == "cohardy":
        return hardy_tag(tag.m - 1)
    raise TagMismatchError(f"V-conjugation unsupported for {tag}")


def v_conjugate(a: OpMatrix) -> OpMatrix:
    """Matrix of V^-1 A V for the antiunitary V: w^k <-> w^(-k-1) with conjugation.

    In the storage conventions above this is entrywise conjugation with both
    tags flipped; for a Hankel section it reproduces the adjoint on the
    common block.
    """
    return OpMatrix(_flip_tag(a.domain), _flip_tag(a.codomain), np.conj(a.entries))


def apply_V_vector(v: SpaceVector) -> SpaceVector:
    """V on tagged vectors: entrywise conjugation with the tag flipped."""
    return SpaceVector(_flip_tag(v.space), np.conj(v.entries))


# -- comparison helpers --------------------------------------------------------


def common_block_residual(a: OpMatrix, b: OpMatrix, row_trim: int = 0, col_trim: int = 0) -> float:
    """Max-abs difference on the shared upper-left block, optionally trimmed
    away from the truncation boundary."""
    rows = min(a.entries.shape[0], b.entries.shape[0]) - row_trim
    cols = min(a.entries.shape[1], b.entries.shape[1]) - col_trim
    if rows <= 0 or cols <= 0:
        raise ValueError("no overlap left after trimming")
    return float(np.max(np.abs(a.entries[:rows, :cols] - b.entries[:rows, :cols])))


def interior_residual(a: OpMatrix, b: OpMatrix, margin: int) -> float:
    """Max-abs difference away from the truncation boundary.

    Hardy axes lose `margin` on both ends (low indices border the coanalytic
    side, high indices the cut); cohardy axes only near the cut at -M.
    """
    if a.domain != b.domain or a.codomain != b.codomain:
        raise TagMismatchError("interior comparison requires identical tags")

    def _slice(tag: SpaceTag):
        if tag.kind == "hardy":
            return slice(margin, tag.dim - margin)
        return slice(0, tag.dim - margin)

    rs, cs = _slice(a.codomain), _slice(a.domain)
    diff = a.entries[rs, cs] - b.entries[rs, cs]
    if diff.size == 0:
        raise ValueError("margin leaves an empty interior block")
    return float(np.max(np.abs(diff)))
