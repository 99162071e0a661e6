"""
Two spins: geometry written in terms of entanglement
====================================================

For N = 2 the concurrence C = sin^2(theta) |sin xi| can replace theta as a
coordinate.  Curvature, phases, speed and the optimal time then become
functions of how entangled the pair is.
"""

import math

import numpy as np

from isinggeom import two_spin as ts

theta, xi = 1.2, 1.0
state = ts.two_spin_state(theta, 0.3, xi)
rho = np.outer(state.vector, state.vector.conj())
print(f"Wootters concurrence {ts.wootters_concurrence(rho):.15f}")
print(f"closed form          {ts.concurrence_closed(theta, xi):.15f}")

s = abs(math.sin(xi))
print("   C       K        Phi_g      Phi_AA     V        tau")
for c in np.linspace(0.0, s, 6):
    point = ts.ConcurrencePoint(float(c), xi)
    v, _, tau = ts.speed_distance_opttime_of_concurrence(point)
    print(f"{c:6.3f}  {ts.curvature_of_concurrence(point):7.4f}  "
          f"{ts.geometric_phase_of_concurrence(point).value:+8.5f}  "
          f"{ts.aa_phase_of_concurrence(point).value:+8.5f}  {v:6.4f}  {tau:6.4f}")

# Where the geometric phase bottoms out
for x in (1.0, 2.0):
    print(f"xi={x}: critical concurrence {ts.critical_concurrence(x):.8f}, "
          f"numeric minimum at {ts.critical_concurrence_numeric(x):.8f}")
