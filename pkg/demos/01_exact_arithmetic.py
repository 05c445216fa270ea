"""Exact Gaussian-rational arithmetic and Bombieri-Weyl products.

Everything below is computed without a single floating-point operation.
"""

from fractions import Fraction

from certitrack.exact_arith import gr, invert, matmul, qmatrix, solve_linear
from certitrack.polysys import PolySystem, bw_inner, bw_norm_sq, evaluate, jacobian

# Gaussian rationals normalize on construction
z = gr(Fraction(2, 4), Fraction(6, 9))
print("z =", z, "  |z|^2 =", z.abs2())
print("(1+2i)/(3-i) =", gr(1, 2) / gr(3, -1))

# fraction-free elimination over Z[i], checked by multiplying back
A = qmatrix([[gr(1, 1), 2], [gr(0, -1), Fraction(1, 3)]])
b = (gr(1), gr(0, 1))
x = solve_linear(A, b, verify=True)
print("solution of A x = b:", [str(c) for c in x])
print("A * A^-1 = I:", matmul(A, invert(A)) == qmatrix([[1, 0], [0, 1]]))

# the start and target systems of the toy family with m = 10
g = PolySystem.from_dicts([2], [{(0, 2): 1, (2, 0): -1}])
f = PolySystem.from_dicts([2], [{(0, 2): 1, (2, 0): -11}])
print("||f||^2 =", bw_norm_sq(f), " ||g||^2 =", bw_norm_sq(g), " <f, g> =", bw_inner(f, g))
print("||f - g||^2 =", bw_norm_sq(f - g))

# a cross term x0 x1 carries weight 1!1!/2! = 1/2
h = PolySystem.from_dicts([2], [{(1, 1): 1}])
print("||x0 x1||^2 =", bw_norm_sq(h))

p = (gr(1), gr(1))
print("g(1, 1) =", [str(c) for c in evaluate(g, p)], " Dg(1, 1) =", [[str(c) for c in r] for r in jacobian(g, p)])
