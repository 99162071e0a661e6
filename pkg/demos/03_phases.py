"""
Total, dynamic and geometric phases
===================================

The total phase is the argument of the survival amplitude; subtracting the
dynamic part leaves the geometric phase.  Over a closed cycle the geometric
phase becomes the Aharonov-Anandan phase.
"""

import math

import numpy as np

from isinggeom import phases as ph
from isinggeom.spin_core import ModelParams

params = ModelParams(3, 1.0, 1.1, 0.0, 2.3)
parts = ph.geometric_phase(params)
print(f"total {parts.total.value:+.9f}  dynamic {parts.dynamic.value:+.9f}  geometric {parts.geometric.value:+.9f}")
print("closed-form geometric phase:", ph.geometric_phase_closed(params))
print("path-integral geometric phase:", ph.geometric_phase_numeric(params).value)

# Unwrapping along a path keeps track of whole turns
path = np.linspace(0.0, 30.0, 3001)
long_run = ph.total_phase(ModelParams(1, 1.0, 1.0, 0.0, 30.0), unwrap_path=path)
print(f"N=1 total phase at xi=30: {long_run.value:.6f} ({long_run.branch_count} turns)")

# Cyclic evolution: numeric loop integral against -(pi/2) N (N-1) sin^2 theta
for n in (2, 3, 4):
    for theta in (0.3, math.pi / 2):
        p = ModelParams(n, 1.0, theta)
        numeric = ph.aa_phase_numeric(p)
        closed = ph.aa_phase_closed(p).value
        note = f"  (overlap vanishes at xi = {numeric.zero_crossings})" if numeric.zero_crossings else ""
        print(f"N={n} theta={theta:.3f}: numeric {numeric.principal:+.9f}, closed mod 2pi "
              f"{ph.principal(closed):+.9f}{note}")

# The topological part: whole multiples of pi only for even N
for n in range(1, 6):
    print(f"N={n}: topological phase = {ph.topological_phase(n).value / math.pi:g} pi")

# Short-time expansion: the measured agreement order
print("short-time expansion order:", round(ph.short_time_order(ModelParams(3, 1.0, 0.7)), 3))
