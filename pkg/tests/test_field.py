import pytest
import sympy

from breuilmod import CompositeP, ReducibleModulus, frobenius_elem, make_field
from breuilmod.field import all_small_fields

from conftest import X


def naive_mul(F, a, b):
    """Multiply coordinate vectors with sympy and reduce by the modulus."""
    pa = sympy.Poly(list(reversed(F.coordinates(a))), X, modulus=F.p)
    pb = sympy.Poly(list(reversed(F.coordinates(b))), X, modulus=F.p)
    mod = sympy.Poly(list(reversed(F.modulus)), X, modulus=F.p)
    r = (pa * pb).rem(mod)
    coords = [int(c) % F.p for c in reversed(r.all_coeffs())]
    return F.from_coordinates(coords + [0] * (F.m - len(coords)))


def test_prime_field():
    F = make_field(3)
    assert F.q == 3
    assert F(2) + F(2) == 1
    assert F(2).inverse() == 2


def test_f4_generator_square():
    F = make_field(2, 2)
    assert F.modulus == (1, 1, 1)
    w = F.w
    assert w * w == w + 1
    assert frobenius_elem(w) == w + 1
    assert frobenius_elem(frobenius_elem(w)) == w


def test_f9_default_modulus_has_no_root():
    F = make_field(3, 2)
    poly = F.modulus
    for x in range(3):
        assert sum(c * x ** i for i, c in enumerate(poly)) % 3 != 0


def test_default_modulus_is_first_irreducible():
    for p, m in [(2, 2), (2, 3), (3, 2), (5, 2), (3, 3)]:
        F = make_field(p, m)
        for code in range(p ** m):
            low = [(code // p ** i) % p for i in range(m)]
            cand = sympy.Poly(list(reversed(low + [1])), X, modulus=p)
            if cand.is_irreducible:
                assert F.modulus == tuple(low + [1])
                break


def test_rejects_bad_input():
    with pytest.raises(CompositeP):
        make_field(4)
    with pytest.raises(ReducibleModulus):
        make_field(2, 2, modulus=(1, 0, 1))


SMALL = [(F.p, F.m) for F in all_small_fields(25)]


@pytest.mark.parametrize("p,m", SMALL)
def test_arithmetic_matches_polynomial_oracle(p, m):
    F = make_field(p, m)
    for a in range(F.q):
        for b in range(F.q):
            assert F.mul(a, b) == naive_mul(F, a, b)
            coords = [(x + y) % p for x, y in zip(F.coordinates(a), F.coordinates(b))]
            assert F.add(a, b) == F.from_coordinates(coords)
        if a:
            assert F.mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("p,m", SMALL)
def test_frobenius_is_automorphism_of_order_m(p, m):
    F = make_field(p, m)
    for a in range(F.q):
        assert F.frob(a) == F.power(a, p)
        assert F.frob_inv(F.frob(a)) == a
        x = a
        for _ in range(m):
            x = F.frob(x)
        assert x == a
        for b in range(F.q):
            assert F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b))
            assert F.frob(F.mul(a, b)) == F.mul(F.frob(a), F.frob(b))


def test_extension_embeds_subfield():
    F = make_field(3, 1)
    big, table = F.extension(2)
    assert big.q == 9
    for a in range(3):
        for b in range(3):
            assert table[F.mul(a, b)] == big.mul(table[a], table[b])
            assert table[F.add(a, b)] == big.add(table[a], table[b])


def test_truth_value_is_nonzero():
    F = make_field(2, 2)
    assert not F(0) and F.w and F(1)
