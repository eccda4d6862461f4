"""Symmetric tridiagonal eigenvalues via Sturm counts and bisection.

All matrices have unit off-diagonal entries (hopping 1) and a real diagonal,
i.e. Dirichlet restrictions of discrete Schrodinger operators.  A cyclic
Jacobi solver for small dense symmetric matrices serves as the independent
oracle.  No eigenvectors anywhere: the density of states only needs counts.
"""

import hashlib
import json
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .model import ModelParams, potential_vector

_JACOBI_MAX_DIM = 256


@dataclass(frozen=True)
class TridiagMatrix:
    """Symmetric tridiagonal matrix with implicit unit off-diagonals."""

    diag: np.ndarray

    def __post_init__(self):
        d = np.atleast_1d(np.asarray(self.diag, dtype=float))
        if d.ndim != 1 or d.size < 1:
            raise ValueError("diagonal must be a nonempty 1-D array")
        object.__setattr__(self, "diag", d)

    @property
    def n(self) -> int:
        return self.diag.size

    def gershgorin(self):
        return float(self.diag.min() - 2.0), float(self.diag.max() + 2.0)

    def dense(self) -> np.ndarray:
        a = np.diag(self.diag)
        i = np.arange(self.n - 1)
        a[i, i + 1] = 1.0
        a[i + 1, i] = 1.0
        return a


@dataclass(frozen=True)
class Spectrum1D:
    """Sorted eigenvalues of a finite Dirichlet box, with provenance."""

    eigenvalues: np.ndarray
    params: ModelParams | None = None
    tol: float = 0.0

    def __post_init__(self):
        e = np.atleast_1d(np.asarray(self.eigenvalues, dtype=float))
        if np.any(np.diff(e) < 0):
            raise ValueError("eigenvalues must be sorted")
        if self.params is not None and e.size != self.params.n_sites:
            raise ValueError("eigenvalue count does not match box size")
        object.__setattr__(self, "eigenvalues", e)

    def __len__(self):
        return self.eigenvalues.size


def fibonacci_tridiag(p: ModelParams, start: int = 0) -> TridiagMatrix:
    """Dirichlet box of the Fibonacci Hamiltonian on sites start..start+N-1."""
    return TridiagMatrix(potential_vector(start, p))


def _pivot_scale(diag):
    return max(1.0, float(np.max(np.abs(diag))) + 2.0)


def sturm_count(m: TridiagMatrix, e: float) -> int:
    """Number of eigenvalues of m strictly below e."""
    return int(sturm_count_batch(m, np.asarray([e], dtype=float))[0])


def sturm_count_batch(m: TridiagMatrix, energies: np.ndarray) -> np.ndarray:
    """Sturm counts for many shifts at once (one pass over the diagonal).

    Pivot recursion d_1 = diag_1 - e, d_{i+1} = diag_{i+1} - e - 1/d_i; the
    count of negative pivots equals the count of eigenvalues strictly below
    e.  Pivots inside (-eps, eps) with eps = 2^-52 * scale are pushed to +-eps
    keeping their sign (exact zeros to +eps, so an eigenvalue sitting exactly
    at e is not counted); this keeps the recursion finite and deterministic.
    """
    e = np.asarray(energies, dtype=float)
    diag = m.diag
    eps = np.ldexp(_pivot_scale(diag), -52)
    d = diag[0] - e
    d = np.where(np.abs(d) < eps, np.where(d < 0, -eps, eps), d)
    count = (d < 0).astype(np.int64)
    for i in range(1, diag.size):
        d = diag[i] - e - 1.0 / d
        d = np.where(np.abs(d) < eps, np.where(d < 0, -eps, eps), d)
        count += d < 0
    return count


def eigenvalues_bisect(m: TridiagMatrix, tol: float | None = None,
                       params: ModelParams | None = None) -> Spectrum1D:
    """All eigenvalues of m, each bracketed by bisection on Sturm counts.

    The k-th smallest eigenvalue is bisected inside the Gershgorin interval
    until the bracket width is <= tol; all N bisections advance together on a
    shared count evaluation.
    """
    if tol is None:
        tol = 1e-12 * _pivot_scale(m.diag)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    n = m.n
    glo, ghi = m.gershgorin()
    lo = np.full(n, glo)
    hi = np.full(n, ghi)
    want = np.arange(1, n + 1)
    while np.max(hi - lo) > tol:
        mid = 0.5 * (lo + hi)
        have = sturm_count_batch(m, mid) >= want
        hi = np.where(have, mid, hi)
        lo = np.where(have, lo, mid)
    eigs = np.sort(0.5 * (lo + hi))
    return Spectrum1D(eigs, params=params, tol=tol)


def jacobi_dense(a: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Sorted eigenvalues of a small dense symmetric matrix, cyclic Jacobi.

    Sweeps of Givens rotations until the off-diagonal Frobenius norm drops
    below tol.  Oracle-scale only: dimension capped at 256.
    """
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    n = a.shape[0]
    if n > _JACOBI_MAX_DIM:
        raise ValueError(f"jacobi_dense is an oracle for dimensions <= {_JACOBI_MAX_DIM}")
    if np.max(np.abs(a - a.T)) > 1e-12 * max(1.0, np.max(np.abs(a))):
        raise ValueError("matrix is not symmetric")
    if n == 1:
        return a[0, :1].copy()

    def offnorm(x):
        o = x - np.diag(np.diag(x))
        return np.sqrt(np.sum(o * o))

    for _ in range(60):
        if offnorm(a) <= tol:
            break
        small = offnorm(a) / (n * n)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= small:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.hypot(1.0, theta)) if theta != 0 else 1.0
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
    return np.sort(np.diag(a))


def _cache_key(p: ModelParams, start: int, tol: float) -> str:
    blob = json.dumps({
        "lambda": repr(p.lam), "omega": repr(p.omega), "alpha": repr(p.alpha),
        "n": p.n_sites, "start": start, "tol": repr(tol),
    }, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def cached_spectrum(p: ModelParams, start: int = 0, tol: float | None = None,
                    cache_dir: str | os.PathLike | None = None) -> Spectrum1D:
    """Eigenvalues of the Fibonacci box, cached on disk when a dir is given.

    Cache files are sorted float64 arrays keyed by a content hash of
    (lambda, omega, alpha, N, start, tol); the QUASISPEC_CACHE environment
    variable supplies a default directory.
    """
    m = fibonacci_tridiag(p, start=start)
    if tol is None:
        tol = 1e-12 * _pivot_scale(m.diag)
    if cache_dir is None:
        cache_dir = os.environ.get("QUASISPEC_CACHE")
    if cache_dir is None:
        return eigenvalues_bisect(m, tol=tol, params=p)
    cache = Path(cache_dir)
    cache.mkdir(parents=True, exist_ok=True)
    path = cache / f"spectrum1d-{_cache_key(p, start, tol)}.npy"
    if path.exists():
        return Spectrum1D(np.load(path), params=p, tol=tol)
    spec = eigenvalues_bisect(m, tol=tol, params=p)
    tmp = path.with_suffix(".tmp.npy")
    np.save(tmp, spec.eigenvalues)
    os.replace(tmp, path)
    return spec
