"""Atlas of critical exponents and lifespan laws.

gamma(m,n,p) is the quadratic whose positive root p_crit(m,n) separates
blow-up (p below the root) from small-data global existence; at m = 0 it
reduces to the classical Strauss exponent.  Below the root the lifespan
obeys T(eps) <= C eps^{-2p(p-1)/gamma}; at the root it degenerates to the
double-exponential law exp(C eps^{-p(p-1)}).
"""

import math

from tricomilab.exponents import (
    ExponentContext,
    critical_identities,
    gamma_mnp,
    iteration_exponents,
    lifespan_prediction,
    p_crit,
    strauss_exponent,
)

print("=== p_crit(m,n) (column m=0 equals the Strauss exponent) ===")
ms = (0.0, 0.5, 1.0, 2.0, 4.0)
print("   n \\ m " + "".join(f"{m:10.1f}" for m in ms))
for n in (2, 3, 4):
    row = "".join(f"{p_crit(m, n):10.6f}" for m in ms)
    print(f"   {n}     {row}   (Strauss: {strauss_exponent(n):.6f})")

print("\n=== identity residuals at the root (must vanish) ===")
for m, n in ((1.0, 2), (0.0, 3), (2.0, 4)):
    ctx = ExponentContext(m, n, p_crit(m, n))
    r1, r2 = critical_identities(ctx)
    print(f"  (m,n)=({m},{n}): frame {r1:+.2e}, initiation {r2:+.2e}")

print("\n=== exponent gap beta - alpha = gamma/(2(p-1)) ===")
for p in (1.5, 2.0, 2.18, 2.5):
    ctx = ExponentContext(1.0, 2, p)
    it = iteration_exponents(ctx)
    gap = it.beta_it - it.alpha_it
    print(f"  p={p:5.2f}: gap {gap:+.6f}  gamma/(2(p-1)) {gamma_mnp(ctx) / (2 * (p - 1)):+.6f}")

print("\n=== lifespan upper-bound laws at (m,n) = (1,1), gamma(p=2) = 4 ===")
ctx = ExponentContext(1.0, 1, 2.0)
for eps in (0.8, 0.4, 0.2, 0.1):
    print(f"  subcritical eps={eps:4.2f}: T <= C * {lifespan_prediction(ctx, eps, 1.0):9.3f}")
ctxc = ExponentContext(1.0, 2, p_crit(1.0, 2))
for eps in (1.0, 0.8, 0.6):
    t = lifespan_prediction(ctxc, eps, 1.0)
    print(f"  critical    eps={eps:4.2f}: T <= exp(C eps^-p(p-1)) = {t:12.4g}")
