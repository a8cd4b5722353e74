"""
Every scalar is an eigenvalue
=============================

Solving w**k x_{k+1} = lam x_k from x_1 = 1 gives a sequence that decays
faster than any geometric one, so it lies in every l_p and in c_0.  A grid
of lam values is probed here; this is evidence on a grid, not a proof about
the whole plane.
"""

from rolewicz import ShiftOperator
from rolewicz.exactnum import ComplexRational
from rolewicz.seqspace import Lp
from rolewicz.shiftop import COMPLEX
from rolewicz.spectral import eigen_membership, eigenvector, spectrum_probe

op = ShiftOperator(2, Lp(2), COMPLEX)

ep = eigenvector(op, ComplexRational(1, 1))
print("x for lam = 1+i:", [str(v) for v in ep.vector.prefix(5)])
verdict, k0 = eigen_membership(ep, K=32)
print(f"in D(A): {verdict.status}, |x_k| <= 2**-(k-1) from k0={k0}")

grid = [a if b == 0 else ComplexRational(a, b) for a in range(-3, 4) for b in range(-3, 4)]
cells = spectrum_probe(op, grid, K=48)
print(f"{sum(c.passed for c in cells)}/{len(cells)} grid cells pass")
