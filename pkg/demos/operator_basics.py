"""
The weighted backward shift and its right inverse
=================================================

A acts on sequences by (A x)_k = w**k x_{k+1}.  Everything below is exact
rational arithmetic; nothing is rounded.
"""

from fractions import Fraction

from rolewicz import FiniteSequence, ShiftOperator, apply_A, apply_A_pow, apply_B_pow
from rolewicz.seqspace import Lp, norm_finite
from rolewicz.shiftop import unboundedness_witness

A = ShiftOperator(2, Lp(2))

# A sends e_2 to 2 e_1 and e_3 to 4 e_2: the weights grow geometrically.
e2 = FiniteSequence.unit(2)
print("A e_2 =", [str(v) for v in apply_A(A, e2).entries])

# B undoes A from the right.  B^3 pushes x three slots out and divides by a
# triangular power of w; A^3 brings it back.
x = FiniteSequence([1, Fraction(-1, 2), 3])
far = apply_B_pow(A, 3, x)
print("B^3 x =", [str(v) for v in far.entries])
print("A^3 B^3 x == x:", apply_A_pow(A, 3, far) == x)

# A is unbounded: the unit vectors have norm 1 but ||A e_{k+1}|| = 2**k.
k, ratio_sq = unboundedness_witness(A, 10 ** 6)
print(f"first k with ||A e_(k+1)|| > 10**6: k={k}, squared ratio {ratio_sq}")
print("check:", norm_finite(apply_A(A, FiniteSequence.unit(k + 1)), A.space).hi)
