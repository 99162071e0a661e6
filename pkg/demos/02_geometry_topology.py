"""
Metric, curvature and the topology of the state manifold
========================================================

The Fubini-Study metric over (theta, phi, xi), read off by finite
differences of the state, is compared with its closed form.  The (theta, xi)
surface then gets its Gaussian curvature and a Gauss-Bonnet count.
"""

import math

import numpy as np

from isinggeom import geometry as geo
from isinggeom.spin_core import ModelParams

point = ModelParams(4, 1.0, 1.1, 0.3, 0.8)
numeric = geo.fs_metric_numeric(point)
closed = geo.fs_metric_closed(point)
print("finite-difference metric:\n", np.round(numeric.components, 9))
print("max |closed - numeric| =", np.max(np.abs(numeric.components - closed.components)))

# The off-diagonal phi-xi component fixes the convention for the cross term
print("cross-term coefficient from the oracle:", geo.calibrate_cross_term(point))

# Curvature along theta: positive near the poles, negative at the equator once N >= 3
for n in (2, 3, 5):
    ks = [geo.gaussian_curvature_closed(ModelParams(n, 1.0, t)).k for t in (0.2, 0.8, math.pi / 2)]
    print(f"N={n}: K(0.2), K(0.8), K(pi/2) =", np.round(ks, 6))

# Gauss-Bonnet: the smooth part integrates to 4 pi (N - 1), the two conical
# poles contribute 4 pi (2 - N), and the sum is always that of a sphere.
for n in range(2, 7):
    r = geo.euler_characteristic(n)
    print(f"N={n}: bulk/4pi = {r.bulk_integral / (4 * math.pi):.9f}, "
          f"defects/4pi = {r.defect_sum / (4 * math.pi):+.6f}, chi = {r.euler_characteristic:.9f}")

# At xi = 0 the state space is the sphere (N/4)(dtheta^2 + sin^2 dphi^2)
print("initial-sphere radius for N=4:", geo.initial_sphere_radius(4))
