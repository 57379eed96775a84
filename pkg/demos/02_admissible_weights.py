"""Admissible weights: certificates, sector integrals, compact bounds.

A weight is usable when v(t) <= M exp(w|t'|) v(t+t') for some M >= 1 and
real w.  The certificate (M, w) powers every guaranteed bound downstream,
so checking an offered certificate and knowing the weight's integral are
the first steps of any scenario.
"""

import math

from sectorlab import (Sector, admissibility_check, compact_lower_bound,
                       exp_decay, grid_minimum, poly_decay, vertical_exp,
                       weight_integral)

sector = Sector(math.pi / 4)

for v, M, w in ((exp_decay(), 1.0, 1.0),
                (vertical_exp(), 1.0, 2.0),
                (poly_decay(), 1.0, 4.0)):
    report = admissibility_check(v, M, w, sector)
    print(f"{v.family:13s} (M={M}, w={w}): "
          f"{'no violations' if report.ok else 'VIOLATED'} "
          f"on {report.n_pairs} pairs, worst ratio {report.worst_ratio:.6f}")

# A wrong certificate is caught immediately: w=0 claims translation
# never shrinks the exponential weight, which fails at t=0.
bad = admissibility_check(exp_decay(), 1.0, 0.0, sector)
t, tp, ratio = bad.violations[0]
print(f"\nexp_decay with (M=1, w=0): violated at t={t}, t'={tp} "
      f"(ratio {ratio:.3g})")

# Sector integrals with tail models.  The two decaying weights have
# closed-form integrals; the vertical weight grows and is flagged.
print()
for v, model, closed in ((exp_decay(), "exp", math.pi / 2),
                         (poly_decay(), "power", math.pi ** 2 / 8)):
    est = weight_integral(v, 60.0, sector, tail=model)
    print(f"integral of {v.family}: {est.total:.12f} "
          f"(closed form {closed:.12f}, verdict {est.verdict})")
est = weight_integral(vertical_exp(), 40.0, sector)
print(f"integral of vertical_exp: value {est.value:.3e} at R=40, "
      f"verdict {est.verdict}")

# Lower bounds on the closed ball of radius 2: the certificate gives a
# guaranteed bound, the sampled grid a tighter heuristic one.
print()
for v in (exp_decay(), vertical_exp()):
    b = compact_lower_bound(v, 2.0, sector)
    print(f"{v.family:13s} on |t|<=2: analytic >= {b.analytic:.6f}, "
          f"grid min {b.grid_min:.6f} at {b.argmin:.3f}")
gmin, argmin = grid_minimum(poly_decay(), 2.0, sector)
print(f"poly_decay (uncertified): grid min {gmin:.6f} = 1/17 at {argmin:.3f}")
