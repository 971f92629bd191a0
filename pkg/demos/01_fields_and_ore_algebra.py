#!/usr/bin/env python3
# Exact finite fields and the twisted algebra of additive polynomials.
#
# Everything is integer arithmetic: field elements are coordinate vectors
# over a deterministic modulus, so all output here is reproducible bit for
# bit on any machine.

from wildinv import (
    AdditivePoly,
    compose,
    e_poly,
    evaluate,
    field_create,
    frobenius,
    is_prime,
    right_divmod,
    roots_of_unity,
    scaling_order,
)

# F_9 with its canonical modulus (the lexicographically least irreducible)
F9 = field_create(3, 2)
print("F_9 modulus (constant first):", F9.modulus)

g = F9.gen()
x = g + 1
print("x =", x, "  x^8 =", x ** 8, " (multiplicative order divides 8)")
print("Frobenius x -> x^3:", frobenius(x, 1), "equals x*x*x:", x * x * x)

# the scaling roots of unity that additive polynomials see
print("mu_4 in F_9:", [z.coords for z in roots_of_unity(F9, 4)])

# additive polynomials compose like twisted polynomials: coefficients pick up
# Frobenius powers as they move past each other
F3 = field_create(3, 1)
R = AdditivePoly.from_ints(F3, [0, 1])  # x^3
E = e_poly(R)
print("\nR = x^3 over F_3")
print("E-polynomial:", E, " degree", E.degree)
print("scaling order d_R =", scaling_order(R))

# right division always works in the twisted ring; over F_9 the same
# E-polynomial splits while over F_3 it is prime
E9 = E.embed_to(F9)
b = next(b for b in F9.elements() if not b.is_zero() and b ** 4 == -F9.one())
factor = AdditivePoly(F9, [b, F9.one()])  # x^3 + b x with b^4 = -1
quot, rem = right_divmod(E9, factor)
print("\nright division of E by x^3 + bx over F_9: remainder =", rem)
print("so E =", quot, "o", factor)
print("reassembled:", compose(quot, factor) == E9)
print("prime over F_3:", is_prime(E), " prime over F_9:", is_prime(E9))

# evaluation is additive, which is the whole point of these polynomials
y, z = F9.gen(), F9.gen() + 2
print("\nadditivity: E(y + z) == E(y) + E(z):",
      evaluate(E9, y + z) == evaluate(E9, y) + evaluate(E9, z))
