"""The annulus-series condition and its separation witness.

If the weight's integrals over unit annuli indexed by a density-one set
K sum to a finite value, the indicator of those annuli is a witness
whose translates stay norm-separated by an explicit delta: the weight is
bounded below on the ball of radius 2, and every step t of modulus in
[k-1, k] pushes a unit of measure of the witness into that ball.  This
script rebuilds the witness for the exponential weight and verifies the
separation numerically.
"""

import math

import numpy as np

from sectorlab import (IndexSet, LpSpace, OrbitResolution, Sector,
                       WitnessSampling, build_witness, dc_sufficient_series,
                       density_estimates, exp_decay, level_density,
                       orbit_profile, poly_decay, verify_witness)

sector = Sector(math.pi / 4)
K = IndexSet.all_naturals()

# The series: for the exponential weight the annuli partition the sector,
# so the limit is the full integral pi/2.
series = dc_sufficient_series(exp_decay(), K, 60, sector)
print(f"annulus series (exp_decay, K = {K.describe()}): "
      f"partial {series.value:.8f}, limit estimate {series.limit_estimate:.8f}, "
      f"verdict {series.verdict}")
print(f"counting ratio #(K n [1,n])/n at n=60: {series.counting_ratio:.3f} "
      f"(declared density {series.declared_density})")

# The witness: delta = (alpha * min of v on |t|<=2)^(1/p), from the
# certificate when the weight has one.
pkg = build_witness(exp_decay(), K, 2.0, sector, k_cap=64)
print(f"\nwitness delta = {pkg.delta:.6f} "
      f"(= sqrt(alpha * e^-2) = {math.sqrt(sector.alpha * math.exp(-2)):.6f}, "
      f"{pkg.bound_source} bound; grid bound {pkg.delta_grid:.6f})")

space = LpSpace(exp_decay(), 2.0, sector)
ver = verify_witness(space, pkg, K, 50.0, WitnessSampling(n_random=200))
print(f"verification over {ver.n_samples} sampled steps up to |t|=50: "
      f"min ||T_t f|| = {ver.min_norm:.4f} "
      f"{'>=' if ver.passed else '<'} delta - tol = {ver.delta - ver.tol:.4f}")

# The separation set has full density on the horizon: the superlevel
# density of the orbit field at delta is ~1.
grid = orbit_profile(space, pkg.f, 50.0, OrbitResolution(n_r=128, n_theta=32))
sup = level_density(grid, pkg.delta, "super", np.geomspace(6.25, 50.0, 8))
print(f"superlevel density at delta: upper estimate "
      f"{density_estimates(sup.profile, 4).upper:.3f}")

# Same construction for the polynomial weight (uncertified: the sampled
# minimum 1/17 on the ball of radius 2 stands in for the certificate).
pkg2 = build_witness(poly_decay(), K, 1.0, sector, k_cap=64, bound="grid")
ver2 = verify_witness(LpSpace(poly_decay(), 1.0, sector), pkg2, K, 50.0)
print(f"\npoly_decay witness: delta = {pkg2.delta:.6f} (= (pi/4)/17), "
      f"min sampled norm {ver2.min_norm:.4f}, passed={ver2.passed}")
