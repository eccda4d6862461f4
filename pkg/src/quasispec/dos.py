"""Finitely supported spectral measures and their diagnostics.

Empirical density-of-states measures of finite boxes, exact convolution of
atomic measures, kernel-density smoothing with L2 norms, and Monte-Carlo
local-dimension estimation.  Measures are immutable after construction.
"""

from dataclasses import dataclass

import numpy as np

PAIR_CAP = 10**8  # convolution size guard


@dataclass(frozen=True)
class AtomicMeasure:
    """Probability measure with finitely many atoms, sorted by position."""

    positions: np.ndarray
    weights: np.ndarray
    merge_tol: float = 0.0

    def __post_init__(self):
        pos = np.atleast_1d(np.asarray(self.positions, dtype=float))
        w = np.atleast_1d(np.asarray(self.weights, dtype=float))
        if pos.size != w.size or pos.size == 0:
            raise ValueError("positions and weights must be nonempty and equal length")
        if np.any(np.diff(pos) <= 0):
            raise ValueError("positions must be strictly increasing")
        if np.any(w <= 0):
            raise ValueError("weights must be positive")
        if abs(w.sum() - 1.0) > 1e-12:
            raise ValueError("weights must sum to 1")
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "_cum", np.cumsum(w))

    def __len__(self):
        return self.positions.size

    @property
    def support(self):
        return float(self.positions[0]), float(self.positions[-1])

    def mean(self) -> float:
        return float(np.dot(self.positions, self.weights))

    def variance(self) -> float:
        mu = self.mean()
        return float(np.dot((self.positions - mu) ** 2, self.weights))

    def mass_leq(self, e) -> np.ndarray:
        """CDF value(s) at e (right-continuous, clipped to [0, 1])."""
        idx = np.searchsorted(self.positions, np.asarray(e, dtype=float), side="right")
        cum = np.concatenate(([0.0], self._cum))
        return np.clip(cum[idx], 0.0, 1.0)

    def mass_lt(self, e) -> np.ndarray:
        """Left limit(s) of the CDF at e."""
        idx = np.searchsorted(self.positions, np.asarray(e, dtype=float), side="left")
        cum = np.concatenate(([0.0], self._cum))
        return np.clip(cum[idx], 0.0, 1.0)

    def ball_mass(self, x, r) -> np.ndarray:
        """Mass of the closed ball [x-r, x+r]."""
        x = np.asarray(x, dtype=float)
        return self.mass_leq(x + r) - self.mass_lt(x - r)

    def sample(self, n: int, rng) -> np.ndarray:
        idx = rng.choice(self.positions.size, size=n, p=self.weights / self.weights.sum())
        return self.positions[idx]


def _merge_arrays(positions, weights, merge_tol):
    """Sort atoms and coalesce clusters closer than merge_tol.

    Merged positions are the weight-averaged cluster positions, so total mass
    and first moment are preserved exactly up to roundoff.  Works on raw
    arrays (no normalization requirement).
    """
    if merge_tol < 0:
        raise ValueError("merge tolerance must be >= 0")
    pos = np.asarray(positions, dtype=float).ravel()
    w = np.asarray(weights, dtype=float).ravel()
    order = np.argsort(pos, kind="stable")
    pos = pos[order]
    w = w[order]
    split = np.where(np.diff(pos) > merge_tol)[0] + 1
    groups = np.concatenate(([0], split, [pos.size]))
    gw = np.add.reduceat(w, groups[:-1])
    gp = np.add.reduceat(pos * w, groups[:-1]) / gw
    # singleton clusters keep their exact position; (p*w)/w can lose an ulp
    single = np.diff(groups) == 1
    gp[single] = pos[groups[:-1][single]]
    return gp, gw


def merge_atoms(positions, weights, merge_tol) -> AtomicMeasure:
    """Probability measure from atoms merged within merge_tol."""
    gp, gw = _merge_arrays(positions, weights, merge_tol)
    return AtomicMeasure(gp, gw, merge_tol=merge_tol)


def default_merge_tol(positions) -> float:
    span = float(np.max(positions) - np.min(positions))
    return 1e-12 * span


def empirical_measure(eigs) -> AtomicMeasure:
    """DOS measure of a finite box: weight 1/N at each eigenvalue."""
    vals = np.asarray(getattr(eigs, "eigenvalues", eigs), dtype=float).ravel()
    if vals.size == 0:
        raise ValueError("empty spectrum")
    w = np.full(vals.size, 1.0 / vals.size)
    return merge_atoms(vals, w, default_merge_tol(vals) if vals.size > 1 else 0.0)


def cdf(m: AtomicMeasure, e: float) -> float:
    return float(m.mass_leq(e))


def convolve(a: AtomicMeasure, b: AtomicMeasure, pair_cap: int = PAIR_CAP,
             block_pairs: int = 2**22) -> AtomicMeasure:
    """Exact convolution: atoms at all pairwise sums with product weights.

    Large products are generated in row blocks that are merged as they go,
    which bounds transient memory; block-wise merging composes weighted
    means, so the result matches the single-pass construction.
    """
    npairs = len(a) * len(b)
    if npairs > pair_cap:
        raise ValueError(f"convolution would produce {npairs} pairs, cap is {pair_cap}")
    span = (a.positions[-1] + b.positions[-1]) - (a.positions[0] + b.positions[0])
    tol = max(a.merge_tol, b.merge_tol, 1e-12 * span)
    if npairs <= block_pairs:
        pos = np.add.outer(a.positions, b.positions).ravel()
        w = np.multiply.outer(a.weights, b.weights).ravel()
        return merge_atoms(pos, w, tol)
    rows = max(1, block_pairs // len(b))
    parts = []
    for i in range(0, len(a), rows):
        pos = np.add.outer(a.positions[i:i + rows], b.positions).ravel()
        w = np.multiply.outer(a.weights[i:i + rows], b.weights).ravel()
        parts.append(_merge_arrays(pos, w, tol))
    pos = np.concatenate([p for p, _ in parts])
    w = np.concatenate([x for _, x in parts])
    return merge_atoms(pos, w, tol)


def sup_cdf_distance(a: AtomicMeasure, b: AtomicMeasure) -> float:
    """Kolmogorov distance, checking both one-sided limits at every atom."""
    grid = np.union1d(a.positions, b.positions)
    d_right = np.abs(a.mass_leq(grid) - b.mass_leq(grid))
    d_left = np.abs(a.mass_lt(grid) - b.mass_lt(grid))
    return float(max(d_right.max(), d_left.max()))


@dataclass(frozen=True)
class DensityEstimate:
    """Kernel density on a uniform grid."""

    grid: np.ndarray
    values: np.ndarray
    bandwidth: float

    @property
    def step(self) -> float:
        return float(self.grid[1] - self.grid[0])

    def integral(self) -> float:
        return float(np.trapezoid(self.values, dx=self.step))


def kde_density(m: AtomicMeasure, bandwidth: float,
                grid: tuple[float, float, float] | None = None) -> DensityEstimate:
    """Triangular-kernel density of m on a uniform grid (min, max, step).

    Each atom's kernel is renormalized so its on-grid trapezoid mass equals
    the atom weight exactly; the total integral is then 1 up to roundoff.
    The grid must cover the support widened by one bandwidth.
    """
    if bandwidth <= 0:
        raise ValueError("bandwidth must be positive")
    lo, hi = m.support
    if grid is None:
        step = bandwidth / 8.0
        grid = (lo - bandwidth - step, hi + bandwidth + step, step)
    gmin, gmax, step = grid
    if step <= 0 or step > bandwidth / 4.0 or gmax <= gmin:
        raise ValueError("grid step must be positive and <= bandwidth/4")
    if gmin > lo - bandwidth or gmax < hi + bandwidth:
        raise ValueError("grid must cover the support widened by the bandwidth")
    x = np.arange(gmin, gmax + 0.5 * step, step)
    vals = np.zeros_like(x)
    half = int(np.ceil(bandwidth / step)) + 1
    for p, w in zip(m.positions, m.weights):
        c = int(round((p - gmin) / step))
        sl = slice(max(0, c - half), min(x.size, c + half + 1))
        k = np.maximum(0.0, 1.0 - np.abs(x[sl] - p) / bandwidth) / bandwidth
        mass = np.trapezoid(k, dx=step)
        if mass > 0:
            vals[sl] += w * k / mass
    return DensityEstimate(x, vals, bandwidth)


def l2_norm(d: DensityEstimate) -> float:
    return float(np.sqrt(np.trapezoid(d.values**2, dx=d.step)))


def l2_bandwidth_trend(m: AtomicMeasure, bandwidths,
                       step: float | None = None) -> list[tuple[float, float]]:
    """(bandwidth, L2 norm) pairs on a shared auto grid.

    The default step is 1/16 of the smallest bandwidth; pass step explicitly
    to reproduce a registered run.
    """
    if step is None:
        step = min(bandwidths) / 16.0
    lo, hi = m.support
    h = max(bandwidths)
    grid = (lo - h - step, hi + h + step, step)
    return [(h, l2_norm(kde_density(m, h, grid))) for h in bandwidths]


def local_dimension(m: AtomicMeasure, radii, samples: int = 400,
                    seed: int = 0) -> tuple[float, float]:
    """Slope of mean log m(B_r(x)) against log r over atom-sampled x.

    Draws atoms with probability equal to their weight, averages
    log m(B_r(x)) per radius, and least-squares fits the averaged points.
    Returns (slope, standard error of the slope).
    """
    radii = np.asarray(radii, dtype=float)
    if radii.size < 3:
        raise ValueError("need at least 3 radii")
    if np.any(radii <= 0) or np.any(np.diff(radii) >= 0):
        raise ValueError("radii must be positive and strictly decreasing")
    if samples < 100:
        raise ValueError("need at least 100 samples")
    if len(m) > 1 and radii.min() < max(m.merge_tol, 1e-15):
        raise ValueError("radius below atom resolution: measure is atomic at that scale")
    rng = np.random.default_rng(seed)
    xs = m.sample(samples, rng)
    logr = np.log(radii)
    logm = np.array([np.mean(np.log(m.ball_mass(xs, r))) for r in radii])
    return _slope_with_stderr(logr, logm)


def _slope_with_stderr(x, y) -> tuple[float, float]:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = x.size
    xm = x - x.mean()
    sxx = np.dot(xm, xm)
    slope = np.dot(xm, y) / sxx
    resid = y - y.mean() - slope * xm
    dof = max(n - 2, 1)
    stderr = float(np.sqrt(np.dot(resid, resid) / dof / sxx))
    return float(slope), stderr


def ids_curve(eigs, energies) -> np.ndarray:
    """(E, IDS(E)) rows: the integrated DOS of the empirical measure."""
    m = empirical_measure(eigs)
    e = np.asarray(energies, dtype=float)
    return np.column_stack([e, m.mass_leq(e)])


def uniform_measure(lo: float, hi: float, n_atoms: int) -> AtomicMeasure:
    """n_atoms equally weighted atoms, evenly spread over [lo, hi]."""
    pos = np.linspace(lo, hi, n_atoms)
    return AtomicMeasure(pos, np.full(n_atoms, 1.0 / n_atoms))


def cantor_lebesgue(ratio: float, depth: int) -> AtomicMeasure:
    """Depth-k approximation of the Cantor-Lebesgue measure on [0, 1].

    Atoms sit at the left endpoints of the 2^depth level-depth cylinders of
    the two-map system x -> ratio*x, x -> ratio*x + (1-ratio), each with
    weight 2^-depth.
    """
    if not 0 < ratio < 0.5:
        raise ValueError("contraction ratio must be in (0, 1/2)")
    if not 1 <= depth <= 24:
        raise ValueError("depth out of range")
    pos = np.zeros(1)
    for k in range(depth):
        pos = np.concatenate([pos, pos + (1.0 - ratio) * ratio**k])
    w = np.full(pos.size, 1.0 / pos.size)
    return merge_atoms(pos, w, 0.0)
