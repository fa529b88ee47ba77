"""Entire solutions of f(lambda z) = p(f(z)): growth, spirals, Julia sets.

The gasket's function grows like exp(Q(log_5 x) x^rho) with Q genuinely
periodic, so the normalized log-growth spirals toward a limit L > 1; a
flat comparison map collapses to L = 1 exactly.  Backward iteration
samples the Julia set on the negative axis and records the multiplier
inequalities that pin the sampled hull, and a small reality table shows
which quadratic families stay on the line at all.
"""
import math

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from fracspec import decimation, poincare

sg = decimation.sg_system("dirichlet")
cheb = decimation.chebyshev_system()

# periodic growth band on one multiplicative period
prof = poincare.growth_profile(sg.phi, samples=121)
print(f"gasket growth band: qhat in [{prof.qhat.min():.6f}, "
      f"{prof.qhat.max():.6f}], periodicity defect "
      f"{prof.periodicity_defect:.2e}")

# spiral limits: oscillatory for the gasket, exactly 1 for the flat map
rep = poincare.spiral_limit(sg.pmap, 10.0, complex(sg.phi(10.0)))
flat = poincare.spiral_limit(cheb.pmap, 10.0, complex(cheb.phi(10.0)))
print(f"spiral limit, gasket: L = {rep.L:.10f} after {rep.iterations} "
      f"doublings (bracket [{rep.bracket_lo:.6f}, {rep.bracket_hi:.6f}])")
print(f"spiral limit, flat map: L = {flat.L:.10f} (|L - 1| = "
      f"{abs(flat.L - 1.0):.1e})")

# Julia set samples and the multiplier ledger
jrep = poincare.julia_sample_and_multipliers(sg.pmap, depth=40, samples=1500,
                                             seed=0x5EED)
print(f"\nJulia sampling (gasket map x(x+5)): real = {jrep.is_real}, "
      f"max |Im| = {jrep.max_imag:.1e}")
for m in jrep.multipliers:
    rel = "=" if m.equality else (">" if m.abs_deriv > m.bound else "<")
    print(f"  {m.kind:20s} at {m.point.real:+9.5f}: |p'| = {m.abs_deriv:.4f} "
          f"{rel} bound {m.bound:g}")
jcheb = poincare.julia_sample_and_multipliers(cheb.pmap, depth=40,
                                              samples=1500, seed=0x5EED)
print(f"flat map hits the degree bound with equality: "
      f"{jcheb.chebyshev_equality}")

# reality table for p(x) = a x(x + omega): the line survives only when
# a|omega| clears 2 (omega > 0) or 4 (omega < 0)
print("\nreal-Julia criterion on a x(x + omega):")
for a, omega in ((1.0, 5.0), (1.0, 3.0), (0.5, 3.0), (1.0, -4.0),
                 (1.0, -3.0), (2.0, -2.0)):
    real = poincare.julia_real_quadratic(a, omega)
    print(f"  a = {a:g}, omega = {omega:+g}: real = {real}")

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.5, 3.6))
ax1.plot(prof.t, prof.qhat, lw=1.1)
ax1.set_xlabel("log_5 x (one period)")
ax1.set_ylabel("x^(-rho) log f(x)")
ax1.set_title("periodic growth profile", fontsize=9)
pts = np.sort(jrep.samples.real)
ax2.plot(pts, np.linspace(0.0, 1.0, len(pts)), lw=1.1)
ax2.set_xlabel("Julia point (real axis)")
ax2.set_ylabel("sampled measure up to x")
ax2.set_title("harmonic measure staircase", fontsize=9)
fig.tight_layout()
fig.savefig("poincare_spiral.png", dpi=150)
print("\nwrote poincare_spiral.png")
