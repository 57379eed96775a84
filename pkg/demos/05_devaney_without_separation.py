"""A weight with periodic points on a ray but no distributional separation.

The vertical weight exp(2y) is summable along the interior ray through
2 - i (the imaginary parts march down), which certifies a nontrivial
periodic point for the restriction to that ray.  Yet its annulus series
diverges, and every function's orbit norms collapse on the upper half of
the sector: the superlevel density of any positive threshold is capped
near 1/2, so the norm-separation signature of distributional chaos never
reaches density one.  Ray-level recurrence and sector-level separation
come apart.
"""

import math

import numpy as np

from sectorlab import (IndexSet, LpSpace, OrbitResolution, Sector,
                       annuli_union, dc_sufficient_series, density_estimates,
                       devaney_ray_series, exp_decay, indicator, level_density,
                       orbit_profile, run_example, vertical_exp)

sector = Sector(math.pi / 4)
v = vertical_exp()

# Along the ray through 2 - i the weight is geometric: sum e^{-2k}.
ray = devaney_ray_series(v, 2 - 1j, 50, sector)
closed = math.exp(2) / (math.exp(2) - 1)
print(f"ray series at t1 = 2 - 1j: {ray.value:.12f} "
      f"(closed form e^2/(e^2-1) = {closed:.12f}, verdict {ray.verdict})")

# The annulus series diverges: the sufficient separation condition fails.
series = dc_sufficient_series(v, IndexSet.all_naturals(), 40, sector)
print(f"annulus series: verdict {series.verdict} "
      f"(partial sum {series.value:.3e} at k=40)")

# Orbit norms of the unit-ball indicator: the superlevel density at any
# positive threshold stays far below one.
space = LpSpace(v, 2.0, sector)
f = indicator(annuli_union([0], sector))
grid = orbit_profile(space, f, 150.0, OrbitResolution(n_r=192, n_theta=48))
sched = np.geomspace(150 / 8, 150.0, 10)
sub = level_density(grid, 0.1, "sub", sched)
sup = level_density(grid, 0.1, "super", sched)
print(f"||T_t f|| < 0.1: tail lower density "
      f"{density_estimates(sub.profile, 6).lower:.3f} (>= 1/2 - tol)")
print(f"||T_t f|| >= 0.1: tail upper density "
      f"{density_estimates(sup.profile, 6).upper:.3f} (<= 1/2 + tol)")

# Contrast: the exponential weight passes the separation condition.
other = dc_sufficient_series(exp_decay(), IndexSet.all_naturals(), 40, sector)
print(f"\nfor comparison, exp_decay annulus series: {other.verdict}")

# The packaged scenario bundles all of these checks with pinned thresholds.
report = run_example("devaney-not-dc")
print(f"\npackaged scenario devaney-not-dc: "
      f"{'all checks pass' if report.passed else 'FAILURES'}")
for c in report.checks:
    print(f"  {'PASS' if c.passed else 'FAIL'} {c.name}: {c.value:.6g}")
