"""Transversality-condition diagnostics for convolution regularity.

A linear self-similar projection family over a topological Markov shift is
the checkable test bed: words omega map to sum_k digits[omega_k] * lam^k.
The three quantitative conditions (difference decay, derivative lower bound,
cylinder-measure decay) are estimated on stratified word-pair samples, and
the two criterion inequalities are evaluated from the fitted exponents.
Correlation-integral estimators apply the same near/far decomposition to any
pair of atomic measures.  Everything is seeded and deterministic; verdicts
are diagnostics, not proofs.
"""

import json
from dataclasses import dataclass, field, asdict

import numpy as np

from .dos import AtomicMeasure, convolve


@dataclass(frozen=True)
class SymbolicSystem:
    """Alphabet, transition matrix, digit values, and Bernoulli weights."""

    digits: tuple
    transition: np.ndarray | None = None
    weights: tuple | None = None

    def __post_init__(self):
        digits = tuple(float(d) for d in self.digits)
        ell = len(digits)
        if ell < 2:
            raise ValueError("alphabet needs at least two symbols")
        t = self.transition
        t = np.ones((ell, ell), dtype=int) if t is None else np.asarray(t, dtype=int)
        if t.shape != (ell, ell) or not np.isin(t, (0, 1)).all():
            raise ValueError("transition must be an ell x ell 0-1 matrix")
        if not _is_primitive(t):
            raise ValueError("transition matrix must be primitive")
        w = self.weights
        w = tuple(1.0 / ell for _ in range(ell)) if w is None else tuple(float(x) for x in w)
        if len(w) != ell or any(x <= 0 for x in w) or abs(sum(w) - 1.0) > 1e-12:
            raise ValueError("weights must be positive and sum to 1")
        object.__setattr__(self, "digits", digits)
        object.__setattr__(self, "transition", t)
        object.__setattr__(self, "weights", w)

    @property
    def ell(self) -> int:
        return len(self.digits)


def _is_primitive(t: np.ndarray) -> bool:
    ell = t.shape[0]
    p = t.copy()
    for _ in range(2 * ell):
        if (p > 0).all():
            return True
        p = np.sign(p @ t)
    return (p > 0).all()


def middle_cantor_system(ratio: float = 1.0 / 3.0) -> SymbolicSystem:
    """Two-symbol full shift whose projection at lam=ratio is the Cantor set."""
    return SymbolicSystem(digits=(0.0, 1.0 - ratio))


def pi_lambda(word, lam: float, sys: SymbolicSystem) -> tuple[float, float]:
    """Linear projection sum_k digits[word_k] lam^k and its truncation bound."""
    if not 0.0 < lam < 1.0:
        raise ValueError("lam must lie in (0, 1)")
    w = np.asarray(word, dtype=int)
    _check_admissible(w, sys)
    powers = lam ** np.arange(w.size)
    value = float(np.dot(np.asarray(sys.digits)[w], powers))
    tail = max(abs(d) for d in sys.digits) * lam ** w.size / (1.0 - lam)
    return value, tail


def _check_admissible(w, sys: SymbolicSystem):
    if np.any(w < 0) or np.any(w >= sys.ell):
        raise ValueError("symbol out of range")
    if w.size > 1 and not np.all(sys.transition[w[:-1], w[1:]] == 1):
        raise ValueError("word violates the transition matrix")


def phi(omega, tau, lam: float, sys: SymbolicSystem) -> float:
    """Projection difference of two equal-length words."""
    if len(omega) != len(tau):
        raise ValueError("words must have equal length")
    return pi_lambda(omega, lam, sys)[0] - pi_lambda(tau, lam, sys)[0]


def common_prefix_len(omega, tau) -> int:
    k = 0
    for a, b in zip(omega, tau):
        if a != b:
            break
        k += 1
    return k


def _phi_poly(omega, tau, sys: SymbolicSystem) -> np.ndarray:
    d = np.asarray(sys.digits)
    return d[np.asarray(omega, dtype=int)] - d[np.asarray(tau, dtype=int)]


def _phi_on_grid(coeffs: np.ndarray, lams: np.ndarray) -> np.ndarray:
    return lams[:, None] ** np.arange(coeffs.size) @ coeffs


def _random_word(rng, sys: SymbolicSystem, length: int, first=None) -> np.ndarray:
    w = np.empty(length, dtype=int)
    probs = np.asarray(sys.weights)
    allowed0 = np.arange(sys.ell) if first is None else np.asarray(first)
    p0 = probs[allowed0] / probs[allowed0].sum()
    w[0] = rng.choice(allowed0, p=p0)
    for i in range(1, length):
        allowed = np.where(sys.transition[w[i - 1]] == 1)[0]
        p = probs[allowed] / probs[allowed].sum()
        w[i] = rng.choice(allowed, p=p)
    return w


def sample_pair(rng, sys: SymbolicSystem, depth: int, k: int):
    """Admissible word pair of length depth with common prefix length k."""
    for _ in range(64):
        if k > 0:
            prefix = _random_word(rng, sys, k)
            succ = np.where(sys.transition[prefix[-1]] == 1)[0]
        else:
            prefix = np.empty(0, dtype=int)
            succ = np.arange(sys.ell)
        if succ.size < 2:
            continue
        s, t = rng.choice(succ, size=2, replace=False)
        om = np.concatenate([prefix, [s], _suffix(rng, sys, s, depth - k - 1)])
        ta = np.concatenate([prefix, [t], _suffix(rng, sys, t, depth - k - 1)])
        return om, ta
    raise RuntimeError("could not sample a branching pair; transition too sparse")


def _suffix(rng, sys, last, length):
    if length <= 0:
        return np.empty(0, dtype=int)
    w = np.empty(length, dtype=int)
    prev = last
    probs = np.asarray(sys.weights)
    for i in range(length):
        allowed = np.where(sys.transition[prev] == 1)[0]
        p = probs[allowed] / probs[allowed].sum()
        prev = w[i] = rng.choice(allowed, p=p)
    return w


def _extreme_pairs(rng, sys: SymbolicSystem, depth: int, k: int):
    """Deterministic worst-case pairs for stratum k (full shift only).

    The aligned pair maximizes |phi| over the stratum; the cancelling pair
    minimizes |d phi / d lam|.  On sparse transition matrices the extreme
    suffixes may be inadmissible, in which case none are produced.
    """
    d = np.asarray(sys.digits)
    hi = int(np.argmax(d))
    lo = int(np.argmin(d))
    if not (sys.transition > 0).all():
        return []
    prefix = _random_word(rng, sys, k) if k > 0 else np.empty(0, dtype=int)
    m = depth - k - 1
    aligned = (np.concatenate([prefix, [hi], np.full(m, hi, dtype=int)]),
               np.concatenate([prefix, [lo], np.full(m, lo, dtype=int)]))
    cancelling = (np.concatenate([prefix, [hi], np.full(m, lo, dtype=int)]),
                  np.concatenate([prefix, [lo], np.full(m, hi, dtype=int)]))
    return [aligned, cancelling]


def _lambda_grid(J, n: int = 33) -> np.ndarray:
    lo, hi = float(J[0]), float(J[1])
    if not 0.0 < lo < hi < 1.0:
        raise ValueError("parameter interval must satisfy 0 < lo < hi < 1")
    return np.linspace(lo, hi, n)


def estimate_cond1(sys: SymbolicSystem, J, depth: int, sample_pairs: int,
                   k0: int = 2, seed: int = 0) -> tuple[float, float]:
    """Exponent and constant for the difference-decay bound.

    Samples pairs stratified by common prefix length k in k0..depth-2,
    regresses log max_J |phi| on -k log ell, and returns (alpha_hat, c1) with
    c1 inflated so the bound holds on every sampled pair.
    """
    if depth < 4:
        raise ValueError("depth must be >= 4")
    rng = np.random.default_rng(seed)
    lams = _lambda_grid(J)
    ks, vals = _max_phi_samples(rng, sys, J, depth, sample_pairs, k0, lams)
    x = -np.asarray(ks, dtype=float) * np.log(sys.ell)
    y = np.log(vals)
    alpha_hat = float(np.dot(x - x.mean(), y - y.mean()) / np.dot(x - x.mean(), x - x.mean()))
    c1 = float(np.max(vals * np.asarray(sys.ell, dtype=float) ** (alpha_hat * np.asarray(ks))))
    return alpha_hat, c1


def _max_phi_samples(rng, sys, J, depth, sample_pairs, k0, lams):
    strata = list(range(k0, depth))
    if not strata:
        raise ValueError("no prefix strata between k0 and depth")
    per = max(1, sample_pairs // len(strata))
    ks, vals = [], []
    for k in strata:
        pairs = _extreme_pairs(rng, sys, depth, k)
        pairs += [sample_pair(rng, sys, depth, k) for _ in range(per)]
        for om, ta in pairs:
            coeffs = _phi_poly(om, ta, sys)
            ph = _phi_on_grid(coeffs, lams)
            ks.append(k)
            vals.append(np.max(np.abs(ph)))
    return np.asarray(ks), np.asarray(vals)


def verify_cond1(sys: SymbolicSystem, J, depth: int, holdout_pairs: int,
                 alpha_hat: float, c1: float, k0: int = 2, seed: int = 1) -> int:
    """Number of holdout pairs violating the fitted bound (0 when it holds)."""
    rng = np.random.default_rng(seed)
    lams = _lambda_grid(J)
    ks, vals = _max_phi_samples(rng, sys, J, depth, holdout_pairs, k0, lams)
    bound = c1 * (1.0 + 1e-12) * np.asarray(sys.ell, dtype=float) ** (-alpha_hat * ks)
    return int(np.sum(vals > bound))


def estimate_cond2(sys: SymbolicSystem, J, depth: int, sample_pairs: int,
                   k0: int = 2, seed: int = 0, cd_step: float | None = None
                   ) -> tuple[float, float, float]:
    """Exponent and constant for the derivative lower bound.

    Central differences on a lambda grid estimate min_J |d phi / d lam| per
    pair; pairs whose derivative is indistinguishable from zero at that
    resolution are excluded and counted.  Returns (beta_hat, c2, flagged
    fraction) where c2 = 2 / c2', and c2' makes the envelope
    min |phi'| >= c2' ell^{-k beta_hat} hold on every retained pair.
    """
    if depth < 4:
        raise ValueError("depth must be >= 4")
    rng = np.random.default_rng(seed)
    ks, vals, flagged = _min_dphi_samples(rng, sys, J, depth, sample_pairs, k0, cd_step)
    if len(vals) == 0:
        raise RuntimeError("all sampled pairs were derivative-degenerate")
    x = -np.asarray(ks, dtype=float) * np.log(sys.ell)
    y = np.log(vals)
    beta_hat = float(np.dot(x - x.mean(), y - y.mean()) / np.dot(x - x.mean(), x - x.mean()))
    c2_prime = float(np.min(vals * np.asarray(sys.ell, dtype=float) ** (beta_hat * np.asarray(ks))))
    return beta_hat, 2.0 / c2_prime, flagged


def _min_dphi_samples(rng, sys, J, depth, sample_pairs, k0, cd_step):
    lams = _lambda_grid(J)
    if cd_step is None:
        cd_step = max(1e-6, 1e-3 * (float(J[1]) - float(J[0])))
    if cd_step > 1e-4:
        raise ValueError("central-difference step must resolve phi': need <= 1e-4")
    strata = list(range(k0, depth))
    per = max(1, sample_pairs // len(strata))
    ks, vals, nflag, total = [], [], 0, 0
    for k in strata:
        pairs = _extreme_pairs(rng, sys, depth, k)
        pairs += [sample_pair(rng, sys, depth, k) for _ in range(per)]
        for om, ta in pairs:
            total += 1
            coeffs = _phi_poly(om, ta, sys)
            d = np.abs(_phi_on_grid(coeffs, lams + cd_step)
                       - _phi_on_grid(coeffs, lams - cd_step)) / (2.0 * cd_step)
            dmin = float(np.min(d))
            if dmin < 1e-12:
                nflag += 1
                continue
            ks.append(k)
            vals.append(dmin)
    return np.asarray(ks), np.asarray(vals), nflag / max(total, 1)


def verify_cond2(sys: SymbolicSystem, J, depth: int, holdout_pairs: int,
                 beta_hat: float, c2: float, k0: int = 2, seed: int = 1) -> int:
    """Holdout violations of the derivative envelope implied by (beta_hat, c2)."""
    rng = np.random.default_rng(seed)
    ks, vals, _ = _min_dphi_samples(rng, sys, J, depth, holdout_pairs, k0, None)
    c2_prime = 2.0 / c2
    bound = c2_prime * (1.0 - 1e-12) * np.asarray(sys.ell, dtype=float) ** (-beta_hat * ks)
    return int(np.sum(vals < bound))


def measure_decay(sys: SymbolicSystem, depth: int = 20) -> tuple[float, float]:
    """Cylinder-mass decay exponent: closed form for Bernoulli weights."""
    if depth > 30:
        raise ValueError("depth capped at 30")
    wmax = max(sys.weights)
    gamma_hat = -np.log(wmax) / np.log(sys.ell)
    return float(gamma_hat), 1.0


def criterion_verdict(d_eta: float, alpha_hat: float, beta_hat: float,
                      gamma_hat: float) -> tuple[bool, bool]:
    """The two inequalities (d + gamma/beta > 1, d > (beta-gamma)/alpha)."""
    if min(alpha_hat, beta_hat, gamma_hat) <= 0:
        raise ValueError("exponents must be positive")
    return (bool(d_eta + gamma_hat / beta_hat > 1.0),
            bool(d_eta > (beta_hat - gamma_hat) / alpha_hat))


@dataclass(frozen=True)
class TransversalityReport:
    """Estimated exponents, constants, and diagnostic verdicts."""

    alpha_hat: float
    beta_hat: float
    gamma_hat: float
    c1: float
    c2: float
    c3: float
    k0: int
    d_eta: float
    verdict_1: bool
    verdict_2: bool
    flagged_fraction: float
    max_certified_depth: int
    inputs: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)


def transversality_report(sys: SymbolicSystem, J, depth: int, sample_pairs: int,
                          d_eta: float, k0: int = 2, seed: int = 0) -> TransversalityReport:
    """Run all three estimators and evaluate the criterion inequalities."""
    alpha_hat, c1 = estimate_cond1(sys, J, depth, sample_pairs, k0=k0, seed=seed)
    beta_hat, c2, flagged = estimate_cond2(sys, J, depth, sample_pairs, k0=k0, seed=seed)
    gamma_hat, c3 = measure_decay(sys, min(depth, 30))
    v1, v2 = criterion_verdict(d_eta, alpha_hat, beta_hat, gamma_hat)
    inputs = {"J": [float(J[0]), float(J[1])], "depth": depth,
              "sample_pairs": sample_pairs, "seed": seed,
              "digits": list(sys.digits), "weights": list(sys.weights),
              "note": "diagnostic estimates at sampled depths, not a proof"}
    return TransversalityReport(alpha_hat, beta_hat, gamma_hat, c1, c2, c3,
                                k0, d_eta, v1, v2, flagged, depth - 1, inputs)


def correlation_integral(eta: AtomicMeasure, nu: AtomicMeasure, radii,
                         sample_pairs: int = 2000, seed: int = 0
                         ) -> list[tuple[float, float]]:
    """Monte-Carlo lower-density diagnostic of the convolution eta * nu.

    Draws x = y + z with y ~ eta, z ~ nu and averages (eta*nu)(B_r(x))/(2r);
    a bounded trend as r decreases is consistent with an L2 density, a
    diverging trend flags singularity.
    """
    radii = np.asarray(radii, dtype=float)
    if np.any(radii <= 0) or np.any(np.diff(radii) >= 0):
        raise ValueError("radii must be positive and strictly decreasing")
    if sample_pairs < 1000:
        raise ValueError("need at least 1000 sample pairs")
    conv = convolve(eta, nu)
    if radii.min() < max(conv.merge_tol, 1e-15):
        raise ValueError("radius below atom resolution of the convolution")
    rng = np.random.default_rng(seed)
    xs = eta.sample(sample_pairs, rng) + nu.sample(sample_pairs, rng)
    return [(float(r), float(np.mean(conv.ball_mass(xs, r)) / (2.0 * r)))
            for r in radii]


def near_far_split(eta: AtomicMeasure, nu: AtomicMeasure, r: float,
                   sample_pairs: int = 2000, seed: int = 0) -> tuple[float, float]:
    """Near/far decomposition of the raw correlation mass at radius r.

    The ball mass around each sampled x = y + z is split by whether the eta
    coordinate of the contributing pair lies within 2r of y.  The two
    components sum to 2r times the correlation-integral estimate at the same
    seed; the near part is the one the criterion controls at rate
    r^(d_eta + gamma/beta).
    """
    if r <= 0:
        raise ValueError("radius must be positive")
    rng = np.random.default_rng(seed)
    ys = eta.sample(sample_pairs, rng)
    zs = nu.sample(sample_pairs, rng)
    xs = ys + zs
    near = np.zeros(sample_pairs)
    far = np.zeros(sample_pairs)
    for j in range(sample_pairs):
        x, y = xs[j], ys[j]
        # strict |y - z| < 2r for the near component
        i0 = np.searchsorted(eta.positions, y - 2.0 * r, side="right")
        i1 = np.searchsorted(eta.positions, y + 2.0 * r, side="left")
        contrib = eta.weights * nu.ball_mass(x - eta.positions, r)
        near[j] = contrib[i0:i1].sum()
        far[j] = contrib.sum() - near[j]
    return float(near.mean()), float(far.mean())
