import sympy
from hypothesis import given, strategies as st

from breuilmod import make_field
from breuilmod import polyutil as pu

from conftest import X


def to_sympy(a, p):
    return sympy.Poly(list(reversed(a)) or [0], X, modulus=p)


def from_sympy(poly, p):
    return pu.trim([int(c) % p for c in reversed(poly.all_coeffs())])


coeff_lists = st.lists(st.integers(0, 4), min_size=1, max_size=9)


@given(st.sampled_from([2, 3, 5]), coeff_lists, coeff_lists)
def test_arithmetic_matches_sympy(p, a, b):
    F = make_field(p)
    a = pu.trim([x % p for x in a])
    b = pu.trim([x % p for x in b])
    assert pu.mul(F, a, b) == from_sympy(to_sympy(a, p) * to_sympy(b, p), p)
    if pu.deg(b) >= 0:
        q, r = pu.divmod_poly(F, a, b)
        sq, sr = sympy.div(to_sympy(a, p), to_sympy(b, p))
        assert (pu.trim(q), pu.trim(r)) == (from_sympy(sq, p), from_sympy(sr, p))
        g = pu.gcd(F, a, b)
        assert pu.monic(F, g) == from_sympy(sympy.gcd(to_sympy(a, p), to_sympy(b, p)).monic(), p)


@given(st.sampled_from([2, 3, 5]), st.lists(st.tuples(coeff_lists, st.integers(1, 7)), min_size=1, max_size=3))
def test_squarefree_decomposition_recomposes(p, factors):
    """The decomposition multiplies back to the monic input and its parts are squarefree."""
    F = make_field(p)
    a = [1]
    for coeffs, k in factors:
        f = pu.trim([x % p for x in coeffs])
        if pu.deg(f) < 1:
            continue
        for _ in range(k):
            a = pu.mul(F, a, f)
    if pu.deg(a) < 1:
        return
    parts = pu.squarefree_decomposition(F, a)
    prod = [1]
    for g, k in parts:
        assert to_sympy(g, p).is_sqf
        for _ in range(k):
            prod = pu.mul(F, prod, g)
    assert prod == pu.monic(F, a)
    # multiplicities agree with sympy's factorization
    ours = {}
    for g, k in parts:
        for h, e in sympy.factor_list(to_sympy(g, p))[1]:
            ours[tuple(from_sympy(h.monic(), p))] = ours.get(tuple(from_sympy(h.monic(), p)), 0) + e * k
    theirs = {tuple(from_sympy(h.monic(), p)): e for h, e in sympy.factor_list(to_sympy(a, p))[1]}
    assert ours == theirs


def test_pth_power_input():
    F = make_field(3)
    a = pu.mul(F, pu.mul(F, [1, 1], [1, 1]), [1, 1])  # (x+1)^3 = x^3 + 1
    assert a == [1, 0, 0, 1]
    assert pu.squarefree_decomposition(F, a) == [([1, 1], 3)]


def test_extension_field_pth_root():
    F = make_field(2, 2)
    w = F.generator
    f = [w, 1]  # x + w
    sq = pu.mul(F, f, f)
    assert pu.pth_root(F, sq) == f
    assert pu.squarefree_decomposition(F, sq) == [(f, 2)]


def test_derivative():
    F = make_field(3)
    assert pu.derivative(F, [1, 2, 1, 1]) == [2, 2]
    assert pu.trim(pu.derivative(F, [0, 0, 0, 1])) == []
