"""Boundary-limit functionals along radial paths into the disk boundary.

The probes evaluate the computable norms that govern compactness of Hankel
products: kernel images under Hankel sections, rank-one tensor sums, and the
vector functionals of the product splitting.  Every functional is computed by
series arithmetic; a dense matrix-vector twin exists for each and their
agreement is a standing test invariant.

No compactness verdict is ever emitted: reports carry values, adequacy flags
and a descriptive trend slope only.

Path points are evaluated independently (optionally in parallel, capped by
the MSKIT_THREADS environment variable) and reports preserve path order.
"""

from __future__ import annotations

import cmath
import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .blaschke import taylor
from .model_space import ModelBasis, SymbolDecomposition
from .operators import (
    OpMatrix,
    adjoint,
    apply,
    cohardy_vector,
    hankel,
    hardy_vector,
    op_norm,
    rank_one,
    toeplitz,
)
from .series import (
    KERNEL_ADEQUACY,
    LaurentSeries,
    apply_U,
    as_disk_point,
    cauchy_kernel,
    conjugate,
    monomial,
    multiply,
    norm,
    project_P,
    project_Q,
    restrict,
)


@dataclass(frozen=True)
class ProbePath:
    """Strictly increasing radii toward the boundary, all inside the disk."""

    points: tuple
    adequacy: tuple

    def __post_init__(self):
        pts = tuple(as_disk_point(z) for z in self.points)
        radii = [abs(z) for z in pts]
        if any(b <= a for a, b in zip(radii, radii[1:])):
            raise ValueError("radii must be strictly increasing")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "adequacy", tuple(bool(a) for a in self.adequacy))

    @staticmethod
    def radial(radii, angle: float, N: int) -> "ProbePath":
        pts = tuple(r * cmath.exp(1j * angle) for r in radii)
        flags = tuple((1.0 - r) * N >= KERNEL_ADEQUACY for r in radii)
        return ProbePath(pts, flags)


@dataclass(frozen=True, eq=False)
class ProbeReport:
    """Per-point functional values with adequacy flags and trend slopes.

    `values` is (points x labels); `trends` holds the least-squares slope of
    log(value) against log(1-r) over the adequate points of each stream,
    NaN when fewer than two usable points exist.  Carries full config
    provenance.
    """

    kind: str
    labels: tuple
    radii: tuple
    angles: tuple
    adequacy: tuple
    values: np.ndarray
    trends: tuple
    config: dict

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "labels": list(self.labels),
            "radii": [float(r) for r in self.radii],
            "angles": [float(a) for a in self.angles],
            "adequacy": [bool(a) for a in self.adequacy],
            "values": [[float(v) for v in row] for row in self.values],
            "trends": [float(t) for t in self.trends],
            "config": dict(self.config),
        }

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write("r,angle,adequate," + ",".join(self.labels) + "\n")
        for i, (r, a, ok) in enumerate(zip(self.radii, self.angles, self.adequacy)):
            row = [f"{r:.17g}", f"{a:.17g}", "1" if ok else "0"]
            row += [f"{v:.17g}" for v in self.values[i]]
            out.write(",".join(row) + "\n")
        return out.getvalue()


def _thread_cap() -> int:
    try:
        return max(1, int(os.environ.get("MSKIT_THREADS", "1")))
    except ValueError:
        return 1


def _pmap(fn, items):
    cap = _thread_cap()
    if cap == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=min(cap, len(items))) as ex:
        return list(ex.map(fn, items))


def _trend(radii, column, adequacy) -> float:
    xs, ys = [], []
    for r, v, ok in zip(radii, column, adequacy):
        if ok and v > 1e-290:
            xs.append(math.log(1.0 - r))
            ys.append(math.log(v))
    if len(xs) < 2:
        return float("nan")
    slope = np.polyfit(xs, ys, 1)[0]
    return float(slope)


def _make_report(kind, labels, path: ProbePath, N, M, rows, seed=None) -> ProbeReport:
    values = np.asarray(rows, dtype=np.float64)
    radii = tuple(abs(z) for z in path.points)
    angles = tuple(cmath.phase(z) for z in path.points)
    adequacy = tuple((1.0 - r) * N >= KERNEL_ADEQUACY for r in radii)
    trends = tuple(_trend(radii, values[:, j], adequacy) for j in range(values.shape[1]))
    config = {"N": int(N), "M": int(M), "seed": seed}
    return ProbeReport(kind, tuple(labels), radii, angles, adequacy, values, trends, config)


# -- series-path functional primitives ------------------------------------------


def _h_apply(sym: LaurentSeries, v: LaurentSeries, M: int) -> LaurentSeries:
    """Hankel action Q(sym * v), clipped to the coanalytic window."""
    return restrict(project_Q(multiply(sym, v)), -M, -1)


def _hstar_apply(sym: LaurentSeries, u: LaurentSeries, N: int) -> LaurentSeries:
    """Adjoint Hankel action P(conj(sym) * u), clipped to the analytic window."""
    return restrict(project_P(multiply(conjugate(sym), u)), 0, N)


def _t_apply(sym: LaurentSeries, v: LaurentSeries, N: int) -> LaurentSeries:
    """Toeplitz action P(sym * v), clipped to the analytic window."""
    return restrict(project_P(multiply(sym, v)), 0, N)


def _u_kernel(z: complex, N: int, M: int) -> LaurentSeries:
    """U k_conj(z), clipped to the coanalytic window."""
    return restrict(apply_U(cauchy_kernel(np.conj(z), N)), -M, -1)


def _tensor_norm(x_cols, y_cols) -> float:
    """Spectral norm of sum_i x_i (x) y_i from stacked coefficient columns."""
    x = np.column_stack(x_cols)
    y = np.column_stack(y_cols)
    rx = np.linalg.qr(x, mode="r")
    ry = np.linalg.qr(y, mode="r")
    core = rx @ ry.conj().T
    sv = np.linalg.svd(core, compute_uv=False)
    return float(sv[0]) if sv.size else 0.0


def _co_col(s: LaurentSeries, M: int) -> np.ndarray:
    return s.window(-M, -1)[::-1]


def _an_col(s: LaurentSeries, N: int) -> np.ndarray:
    return s.window(0, N)


# -- the probes -------------------------------------------------------------------


def hankel_kernel_probe(f: LaurentSeries, path: ProbePath, N: int, M: int) -> ProbeReport:
    """||H_f k_z|| and ||H*_f U k_conj(z)|| along the path."""

    def values(z):
        kz = cauchy_kernel(z, N)
        u = _u_kernel(z, N, M)
        return (norm(_h_apply(f, kz, M)), norm(_hstar_apply(f, u, N)))

    rows = _pmap(values, list(path.points))
    return _make_report("kernel", ("hankel_kernel", "hankel_adjoint_flip"), path, N, M, rows)


def hankel_kernel_probe_dense(f: LaurentSeries, path: ProbePath, N: int, M: int) -> np.ndarray:
    """Matrix-vector twin of hankel_kernel_probe."""
    h = hankel(f, N, M)
    hs = adjoint(h)
    rows = []
    for z in path.points:
        kz = hardy_vector(cauchy_kernel(z, N), N)
        u = cohardy_vector(_u_kernel(z, N, M), M)
        rows.append((apply(h, kz).norm(), apply(hs, u).norm()))
    return np.asarray(rows)


def tensor_probe_k1(fs, gs, path: ProbePath, N: int, M: int) -> ProbeReport:
    """||sum_i (H_{f_i} k_z) (x) (H_{g_i} k_z)|| along the path."""
    if len(fs) != len(gs) or not fs:
        raise ValueError("need equally many f and g symbols, at least one pair")

    def values(z):
        kz = cauchy_kernel(z, N)
        xs = [_co_col(_h_apply(fi, kz, M), M) for fi in fs]
        ys = [_co_col(_h_apply(gi, kz, M), M) for gi in gs]
        return (_tensor_norm(xs, ys),)

    rows = _pmap(values, list(path.points))
    return _make_report("tensor1", ("tensor_kernel",), path, N, M, rows)


def tensor_probe_k1_dense(fs, gs, path: ProbePath, N: int, M: int) -> np.ndarray:
    hs = [hankel(fi, N, M) for fi in fs]
    hgs = [hankel(gi, N, M) for gi in gs]
    rows = []
    for z in path.points:
        kz = hardy_vector(cauchy_kernel(z, N), N)
        total = None
        for hf, hg in zip(hs, hgs):
            term = rank_one(apply(hf, kz), apply(hg, kz))
            total = term if total is None else total + term
        rows.append((op_norm(total),))
    return np.asarray(rows)


def tensor_probe_k2(fs, gs, path: ProbePath, N: int, M: int) -> ProbeReport:
    """||sum_i (H_{f_i} k_z) (x) (H*_{g_i} U k_conj(z))|| and the vector
    functional ||(sum_i H_{f_i} T_{g_i})* U k_conj(z)|| along the path."""
    if len(fs) != len(gs) or not fs:
        raise ValueError("need equally many f and g symbols, at least one pair")

    def values(z):
        kz = cauchy_kernel(z, N)
        u = _u_kernel(z, N, M)
        xs = [_co_col(_h_apply(fi, kz, M), M) for fi in fs]
        ys = [_an_col(_hstar_apply(gi, u, N), N) for gi in gs]
        acc = None
        for fi, gi in zip(fs, gs):
            term = _t_apply(conjugate(gi), _hstar_apply(fi, u, N), N)
            acc = term if acc is None else acc + term
        return (_tensor_norm(xs, ys), norm(acc))

    rows = _pmap(values, list(path.points))
    return _make_report("tensor2", ("tensor_flip", "k2_adjoint_flip"), path, N, M, rows)


def tensor_probe_k2_dense(fs, gs, path: ProbePath, N: int, M: int) -> np.ndarray:
    hfs = [hankel(fi, N, M) for fi in fs]
    hgs = [hankel(gi, N, M) for gi in gs]
    k2 = None
    for hf, gi in zip(hfs, gs):
        term = hf @ toeplitz(gi, N)
        k2 = term if k2 is None else k2 + term
    k2s = adjoint(k2)
    rows = []
    for z in path.points:
        kz = hardy_vector(cauchy_kernel(z, N), N)
        u = cohardy_vector(_u_kernel(z, N, M), M)
        total = None
        for hf, hg in zip(hfs, hgs):
            term = rank_one(apply(hf, kz), apply(adjoint(hg), u))
            total = term if total is None else total + term
        rows.append((op_norm(total), apply(k2s, u).norm()))
    return np.asarray(rows)


def _product_symbols(f: LaurentSeries, dec: SymbolDecomposition, basis: ModelBasis, N: int, M: int):
    th = taylor(basis.theta, N + M)
    thbar = conjugate(th)
    g1, g2 = dec.g1, dec.g2
    fg1 = multiply(f, g1)
    pairs1 = (
        (thbar, fg1),
        (multiply(thbar, g2), f),
        (conjugate(g1), -multiply(th, f)),
    )
    pairs2 = (
        (thbar, multiply(th, conjugate(fg1))),
        (multiply(thbar, g2), multiply(th, conjugate(f))),
        (conjugate(g1), -conjugate(f)),
    )
    triple3 = (
        (multiply(thbar, fg1), thbar),
        (multiply(thbar, f), multiply(thbar, g2)),
        (-f, conjugate(g1)),
    )
    return pairs1, pairs2, triple3


def product_probe(
    f: LaurentSeries, dec: SymbolDecomposition, basis: ModelBasis,
    path: ProbePath, N: int, M: int,
) -> ProbeReport:
    """The three vector/tensor functionals of the product splitting.

    Stream 1 is the kernel tensor sum, stream 2 the flipped tensor sum, and
    stream 3 the norm of the Toeplitz-times-adjoint-Hankel sum applied to
    U k_conj(z); a zero product drives all three to zero along the path.
    """
    pairs1, pairs2, triple3 = _product_symbols(f, dec, basis, N, M)

    def values(z):
        kz = cauchy_kernel(z, N)
        u = _u_kernel(z, N, M)
        v1 = _tensor_norm(
            [_co_col(_h_apply(a, kz, M), M) for a, _ in pairs1],
            [_co_col(_h_apply(b, kz, M), M) for _, b in pairs1],
        )
        v2 = _tensor_norm(
            [_co_col(_h_apply(a, kz, M), M) for a, _ in pairs2],
            [_an_col(_hstar_apply(b, u, N), N) for _, b in pairs2],
        )
        acc = None
        for t_sym, h_sym in triple3:
            term = _t_apply(t_sym, _hstar_apply(h_sym, u, N), N)
            acc = term if acc is None else acc + term
        return (v1, v2, norm(acc))

    rows = _pmap(values, list(path.points))
    return _make_report(
        "product", ("kernel_tensor", "flip_tensor", "toeplitz_hankel_vector"), path, N, M, rows
    )


def product_probe_dense(
    f: LaurentSeries, dec: SymbolDecomposition, basis: ModelBasis,
    path: ProbePath, N: int, M: int,
) -> np.ndarray:
    pairs1, pairs2, triple3 = _product_symbols(f, dec, basis, N, M)
    h1 = [(hankel(a, N, M), hankel(b, N, M)) for a, b in pairs1]
    h2 = [(hankel(a, N, M), adjoint(hankel(b, N, M))) for a, b in pairs2]
    op3 = None
    for t_sym, h_sym in triple3:
        term = toeplitz(t_sym, N) @ adjoint(hankel(h_sym, N, M))
        op3 = term if op3 is None else op3 + term
    rows = []
    for z in path.points:
        kz = hardy_vector(cauchy_kernel(z, N), N)
        u = cohardy_vector(_u_kernel(z, N, M), M)
        t1 = None
        for ha, hb in h1:
            term = rank_one(apply(ha, kz), apply(hb, kz))
            t1 = term if t1 is None else t1 + term
        t2 = None
        for ha, hbs in h2:
            term = rank_one(apply(ha, kz), apply(hbs, u))
            t2 = term if t2 is None else t2 + term
        rows.append((op_norm(t1), op_norm(t2), apply(op3, u).norm()))
    return np.asarray(rows)


# -- finite-section singular values -------------------------------------------------


@dataclass(frozen=True, eq=False)
class SvTable:
    """Top-k singular values per finite-section size.  Heuristic data only:
    stabilizing values with a vanishing tail suggest compactness, a flat
    non-decaying profile suggests the opposite; no verdict is attached."""

    sizes: tuple
    values: np.ndarray  # (len(sizes), k)

    def to_json_dict(self) -> dict:
        return {
            "sizes": [int(s) for s in self.sizes],
            "singular_values": [[float(v) for v in row] for row in self.values],
        }

    def to_csv(self) -> str:
        k = self.values.shape[1]
        out = io.StringIO()
        out.write("size," + ",".join(f"sigma{i+1}" for i in range(k)) + "\n")
        for s, row in zip(self.sizes, self.values):
            out.write(",".join([str(int(s))] + [f"{v:.17g}" for v in row]) + "\n")
        return out.getvalue()


def finite_section_sv(builder, sizes, k: int) -> SvTable:
    """Deterministic table of the top-k singular values of builder(n) over
    ascending section sizes n."""
    sizes = [int(s) for s in sizes]
    if k < 1:
        raise ValueError("k must be >= 1")
    if any(b <= a for a, b in zip(sizes, sizes[1:])) or not sizes:
        raise ValueError("sizes must be nonempty and strictly ascending")
    rows = []
    for n in sizes:
        mat = builder(n)
        if not isinstance(mat, OpMatrix):
            raise TypeError("builder must return an OpMatrix")
        sv = np.linalg.svd(mat.entries, compute_uv=False)
        top = np.zeros(k)
        top[: min(k, sv.size)] = sv[:k]
        rows.append(top)
    return SvTable(tuple(sizes), np.asarray(rows))


__all__ = [
    "ProbePath",
    "ProbeReport",
    "SvTable",
    "hankel_kernel_probe",
    "hankel_kernel_probe_dense",
    "tensor_probe_k1",
    "tensor_probe_k1_dense",
    "tensor_probe_k2",
    "tensor_probe_k2_dense",
    "product_probe",
    "product_probe_dense",
    "finite_section_sv",
]
