# Three families of non-surjective morphisms that are onto off the closed point
#
# For hbar inside (T1^p, T2^p, T1^(p-1) T2^(p-1)) the library builds a pair of
# modules M1 -> M2 and a map alpha between them.  Each bundle carries machine
# checks: the morphism identity, the certificates A*B = B*A = f*I, finite
# length of coker(alpha), and alpha not surjective.

from breuilmod import RingContext, build_counterexample, make_field
from breuilmod.fileio import format_bundle

R = RingContext(make_field(3), 2, 12)
T1, T2 = R.gens
one = R.one()

bundles = {
    "divisible by u^p": build_counterexample("i", T1 ** 3, t=T2, u=T1),
    "divisible by (uv)^(p-1)": build_counterexample("ii", (T1 * T2) ** 2, u=T1, v=T2),
    "determinant shape": build_counterexample("iii", R.parse("T1^3 + T2^3 + T1^2*T2^2"), a=one, b=one, c=one),
}

for name, b in bundles.items():
    print(f"{name}: case {b.case}, rank {b.M1.rank} -> {b.M2.rank}")
    for k, v in b.checks.items():
        print(f"    {k:22s} {v}")


# The rank-three matrix of the first family, and its companion obtained by
# solving Gamma * X = u^p * I column by column.

b = bundles["divisible by u^p"]
print("Gamma =")
print(b.M1.A)
print("Delta =")
print(b.M1.cert.B)


# Bundles serialize to plain text and re-verify on load.

print(format_bundle(bundles["divisible by (uv)^(p-1)"]))
