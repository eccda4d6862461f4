"""Convolution-regularity diagnostics on linear Cantor systems.

The absolute-continuity criterion asks for three quantitative bounds on a
projection family (difference decay, derivative lower bound, cylinder-mass
decay) plus a dimension inequality.  On linear self-similar systems every
exponent has a closed form, so the estimators can be cross-checked end to
end, and the measure-level diagnostics (kernel L2 ladders, correlation
integrals) can be calibrated against known singular/regular pairs.
"""

import numpy as np

from quasispec import (
    cantor_lebesgue,
    convolve,
    correlation_integral,
    l2_bandwidth_trend,
    middle_cantor_system,
    near_far_split,
    transversality_report,
)

# --- transversality estimates on the middle-thirds family ----------------------

thirds = middle_cantor_system(1.0 / 3.0)
J = (0.3, 0.35)
rep = transversality_report(thirds, J, depth=12, sample_pairs=600, d_eta=1.0, seed=0)
print("middle-thirds linear family on J =", J)
print(f"   alpha_hat = {rep.alpha_hat:.4f}   (contraction bound: "
      f"{np.log(1/J[1])/np.log(2):.4f})")
print(f"   beta_hat  = {rep.beta_hat:.4f}")
print(f"   gamma_hat = {rep.gamma_hat:.4f}   (uniform Bernoulli weights)")
print(f"   criterion verdicts with Lebesgue eta (d=1): "
      f"({rep.verdict_1}, {rep.verdict_2})")
print("   (diagnostic only: the conclusion is an a.e.-in-parameter statement)\n")

# --- kernel-density L2 ladders --------------------------------------------------

h1, h2 = 2.0 ** -8, 2.0 ** -10
step = h2 / 16
cases = [("1/3 square (dims sum 1.26 > 1)", 1.0 / 3.0, 10),
         ("1/5 square (dims sum 0.86 < 1)", 1.0 / 5.0, 3)]
print("kernel L2 norms under bandwidth refinement:")
for label, ratio, depth in cases:
    conv = convolve(cantor_lebesgue(ratio, depth), cantor_lebesgue(ratio, depth))
    tr = l2_bandwidth_trend(conv, [h1, h2], step=step)
    print(f"   {label}: |f|_2 at h=2^-8 is {tr[0][1]:.4f}, at h=2^-10 is "
          f"{tr[1][1]:.4f}  (x{tr[1][1]/tr[0][1]:.3f})")
print("a stable norm is consistent with an L2 density; growth flags singularity.\n")

# --- correlation integrals and the near/far split --------------------------------

eta = cantor_lebesgue(1.0 / 3.0, 12)
radii = [2.0 ** -k for k in range(5, 10)]
print("correlation integral of the 1/3 convolution square:")
for r, v in correlation_integral(eta, eta, radii, 3000, seed=7):
    print(f"   r = 2^{int(np.log2(r))}: estimate {v:.4f}")

i1s = [near_far_split(eta, eta, r, 3000, seed=7)[0] for r in radii]
slope = np.polyfit(np.log(radii), np.log(i1s), 1)[0]
d = np.log(2) / np.log(3)
print(f"\nnear-component scaling: slope {slope:.4f} vs predicted "
      f"d + gamma/beta = {d + d:.4f}")
print("the near part obeys the criterion's power law; the far part is where a")
print("fixed-parameter computation can deviate from the parameter-averaged bound.")
