"""
Speed of evolution and the quickest route
=========================================

The state moves along its orbit at a constant Fubini-Study speed.  Choosing
the initial polar angle well makes it as fast as possible; the ratio of the
optimal time to the ordinary time shrinks with the particle number.
"""

import math

from isinggeom import dynamics as dyn
from isinggeom.spin_core import ModelParams

# Speed from the metric and from the energy spread
p = ModelParams(5, 1.0, 1.0)
print(f"V = {dyn.speed_closed(p):.12f}, Delta E = {dyn.energy_uncertainty(p):.12f}")

print(" N   theta_max   V_max       t_min/t")
for n in (2, 3, 4, 8, 16, 64):
    sol = dyn.brachistochrone(n)
    print(f"{n:3d}  {sol.theta_max:.6f}   {sol.v_max:9.4f}   {sol.t_min / sol.t:.6f}")

# The closed-form angle agrees with a numerical search
for n in (2, 3, 7):
    report = dyn.verify_speed_is_argmax(n)
    print(f"N={n}: numeric argmax {report['theta_numeric']:.12f} vs {report['theta_closed']:.12f}")

# Large N: t_min / t approaches sqrt(2 / N)
n = 10_000
print(f"N={n}: t_min/t = {dyn.optimal_time_ratio(n):.6f}, sqrt(2/N) = {math.sqrt(2 / n):.6f}")
