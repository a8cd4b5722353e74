"""
Building a hypercyclic vector
=============================

Enumerate the rational targets, choose shifts n_m that push each target far
enough out, and sum the pushed targets.  The orbit of the partial sum then
passes close to every target so far.
"""

from rolewicz import ShiftOperator
from rolewicz.hyperengine import (
    build_schedule,
    check_schedule,
    enumerate_Y,
    orbit_approach_error,
    partial_hypercyclic_vector,
)
from rolewicz.seqspace import Lp
from rolewicz.shiftop import REAL

op = ShiftOperator(2, Lp(1))

print("first targets:")
for m in range(1, 9):
    print(f"  y^{m} =", [str(v) for v in enumerate_Y(REAL, m).entries])

s = build_schedule(op, 8)
print("shifts n_m:", s.n, "valid:", check_schedule(op, s))

# The entries of the partial sum have denominators near 2**600, so only its
# support is printed.
hps = partial_hypercyclic_vector(op, s)
print("support of x_8:", hps.x_M.support)

# A^{n_k} x_8 lands within the geometric bound of y^k.
for k in range(1, 7):
    err, bound = orbit_approach_error(op, hps, k)
    print(f"k={k}: ||y^k - A^(n_k) x|| ~ {float(err.hi):.3e}   bound {float(bound):.3e}")
