# Truncated power series over a finite field
#
# Every series remembers the total degree through which it is known.
# Products, inverses and the Frobenius map compute the precision they can
# guarantee instead of assuming the ring's N.

import numpy as np

from breuilmod import RingContext, frobenius_sigma, invert_unit, make_field, ord

F = make_field(3)
R = RingContext(F, 2, 10)
T1, T2 = R.gens

# Coefficients cancel mod 3, and Frobenius acts on variables as x -> x^3.

f = R.parse("(T1 + T2)^3")
print("(T1+T2)^3      =", f)
print("sigma(T1 + T2) =", frobenius_sigma(T1 + T2))


# A series known through degree 3 has a Frobenius image known through 3*3+2.

g = (1 + T1 + T2 ** 2).truncate(3)
print("prec of g:", g.prec, " prec of sigma(g):", frobenius_sigma(g).prec)


# Units invert by the geometric series; the product is exactly one.

u = 1 + T1 - T2
print("u * u^-1 == 1:", u * invert_unit(u) == R.one())


# Orders are additive, as in any domain.

a, b = R.parse("T1^2 + T2^3"), R.parse("T1*T2 + T2^4")
print("ord(a), ord(b), ord(ab):", ord(a), ord(b), ord(a * b))


# Extension fields: F_9 as F_3[w]/(w^2 + 1).  The coordinates of each element
# are base-3 digits of its integer code.

K = make_field(3, 2)
w = K.w
print("modulus of F_9 (low degree first):", K.modulus)
print("w^2 =", w * w, " frobenius(w) =", w.frobenius())
codes = np.array([[K.mul(x, y) for y in range(K.q)] for x in range(K.q)])
print("multiplication table of F_9:")
print(codes)
