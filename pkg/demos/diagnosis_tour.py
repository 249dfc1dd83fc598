# Diagnosing R = W(k)[[T1, T2]]/(p - h)
#
# The verdict depends only on hbar, the reduction of h mod p.  The cascade
# tries, in order: membership in the critical ideal, small ramification,
# monomial partitions in three or more variables, and finally the
# counterexample constructions.  Anything else is reported as unknown.

import numpy as np

from breuilmod import RingContext, diagnose, make_field, monomial_classify, partition_search

R = RingContext(make_field(3), 2, 12)

for text in ["T1*T2", "T1^2 + T2^2", "(T1*T2)^2", "T1^3 + T1^3*T2", "T1^3 + T1*T2^5", "T1^3 + T2^4 + T1^2*T2^3"]:
    v = diagnose(R.parse(text))
    print(f"{text:28s} e={v.e}  quasi={v.quasi_healthy:7s} p-quasi={v.p_quasi_healthy:7s} {','.join(v.rules)}")


# Monomials T1^e1 T2^e2 are always decided.  A grid of verdicts for p = 5:
# 1 means yes, 0 means no.

p = 5
grid = np.zeros((p + 3, p + 3), dtype=int)
for e1 in range(p + 3):
    for e2 in range(p + 3):
        if e1 + e2:
            grid[e1, e2] = monomial_classify(p, e1, e2).quasi_healthy == "yes"
grid[0, 0] = -1
print(grid)


# In more variables a monomial h is quasi-healthy when its exponents split
# into two groups with sums m1 in [1, p-1] and m2 in [0, p-2].  All-ones
# vectors split exactly up to length 2p - 3.

for m in range(1, 6):
    print(m, "ones:", partition_search([1] * m, 3))
