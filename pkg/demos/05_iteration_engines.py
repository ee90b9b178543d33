"""The two iteration engines and their constant-free lifespan slopes.

Subcritical: iterated lower bounds G(t) > D_j (1+t)^{-a_j} (t-T0)^{b_j}
amplify any first iterate into divergence once the certificate J(t)
passes 1.  Critical: slicing on l_j = 2 - 2^{-(j+1)} amplifies a
logarithmic seed.  Both engines run in the log domain (D_j and C_j pass
1e300 near j ~ 20) and both yield lifespan scalings without knowing any
of the universal constants: only slopes are extracted.
"""

import math

import numpy as np

from tricomilab.exponents import ExponentContext, gamma_mnp, p_crit
from tricomilab.iteration import (
    critical_run,
    critical_threshold_curve,
    j_function,
    j_threshold_time,
    subcritical_run,
    subcritical_threshold_curve,
    threshold_time_log_scan,
)

ctx = ExponentContext(1.0, 1, 2.0)
print(f"=== subcritical engine at (m,n,p) = (1,1,2), gamma = {gamma_mnp(ctx)} ===")
seq = subcritical_run(ctx, d1=0.1, t0=0.0, jmax=12)
print("   j      a_j        b_j        log D_j")
for j in seq.j_index[:8]:
    print(f"  {j:2d}  {seq.a_j[j-1]:9.3f}  {seq.b_j[j-1]:9.3f}  {seq.log_d_j[j-1]:12.3f}")
print(f"  closed forms match recursions to {np.max(np.abs(seq.a_closed(seq.j_index) - seq.a_j)):.1e}")

t_scan = math.exp(threshold_time_log_scan(seq))
print(f"\n  first time with J(t) > 1: {t_scan:.3f}")
print(f"  closed-form threshold:    {j_threshold_time(seq):.3f}")
print(f"  J at 1.5x the scan time:  {j_function(1.5 * t_scan, seq):.3f}")

eps = 2.0 ** -np.arange(4, 13)
slope = np.polyfit(np.log(eps), subcritical_threshold_curve(ctx, eps), 1)[0]
print(f"\n  constant-free slope of log T* vs log eps: {slope:.5f}"
      f"  (theory -2p(p-1)/gamma = {-2 * 2 * 1 / gamma_mnp(ctx):.5f})")

pc = p_crit(1.0, 2)
ctxc = ExponentContext(1.0, 2, pc)
print(f"\n=== critical engine at (m,n) = (1,2), p = p_crit = {pc:.6f} ===")
seqc = critical_run(ctxc, eps=0.1, jmax=12)
print("   j      a_j        b_j        l_j     log C_j")
for j in seqc.j_index[:8]:
    print(f"  {j:2d}  {seqc.a_j[j-1]:9.3f}  {seqc.b_j[j-1]:9.3f}  {seqc.l_j[j-1]:.5f}  {seqc.log_c_j[j-1]:12.3f}")

eps_c = 2.0 ** -np.arange(8, 15)
log_t = critical_threshold_curve(ctxc, eps_c)
slope_c = np.polyfit(np.log(eps_c), np.log(log_t), 1)[0]
print(f"\n  log T* spans e^{log_t[0]:.1f} .. e^{log_t[-1]:.1f} across the sweep")
print(f"  slope of log log T* vs log eps: {slope_c:.5f}"
      f"  (theory -p(p-1) = {-pc * (pc - 1):.5f})")
