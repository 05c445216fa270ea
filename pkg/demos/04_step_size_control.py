"""How a single step size is chosen.

Given theta1 = ||g_i||^2, theta2 = Re<g_i, f - g>, theta3 = ||f - g||^2 and a
window [L, U], bisection finds a dyadic t with L <= beta(t) <= U, comparing
only squares of rationals.
"""

from fractions import Fraction

from certitrack.conditioning import CONSTANTS, condition_data
from certitrack.diagnostics import ToyFamily
from certitrack.stepsize import beta_sq, lu_quadratic

fam = ToyFamily(Fraction(10))
cd = condition_data(fam.g, fam.f, fam.z0)
print(f"at the start: a = {cd.a}, b = {cd.b}, W = {cd.W}")
print(f"window: L = {float(cd.L):.12f}, U = {float(cd.U):.12f}")

theta1, theta2, theta3 = Fraction(2), Fraction(10), Fraction(100)
plain = lu_quadratic(theta1, theta2, theta3, cd.L, cd.U)
print(f"first step: t = {plain.t} after {plain.depth} bisections, beta(t)^2 = {float(beta_sq(theta1, theta2, theta3, plain.t)):.12f}")

# continuing the bisection until t's denominator matches s keeps s + t short
s = Fraction(3, 2**12)
matched = lu_quadratic(theta1, theta2, theta3, cd.L, cd.U, match_denominator=s)
print(f"with s = {s}: t = {matched.t}, s + t = {s + matched.t}")

print(f"rounding tolerance eps = eps0 / a = {float(CONSTANTS.eps0(2) / cd.a):.3e}")
