"""
Periodic points are dense
=========================

Any finite seed extends to a point with A^N x = x.  Taking the target itself
as the seed and letting N grow gives periodic points converging to it.
"""

from rolewicz import ShiftOperator
from rolewicz.hyperengine import enumerate_Y
from rolewicz.periodic import make_periodic, periodic_approximation, verify_periodicity
from rolewicz.seqspace import C0
from rolewicz.shiftop import REAL

op = ShiftOperator(3, C0())

p = make_periodic(op, [1, -2])
print("first entries:", [str(v) for v in p.prefix(6)])
print("A^2 x = x up to k = 100:", verify_periodicity(p, 100))

y = enumerate_Y(REAL, 14)
print("target:", [str(v) for v in y.entries])
for N in range(y.support, y.support + 6):
    _, dist, bound = periodic_approximation(op, y, N)
    print(f"N={N}: distance <= {float(dist.hi):.3e}   geometric bound {float(bound):.3e}")
