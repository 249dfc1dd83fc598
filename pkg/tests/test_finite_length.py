import pytest

from breuilmod import (
    FiniteLengthPair,
    IllFormedPresentation,
    MonomialIdeal,
    frobenius_socle_witness,
    monomial_ideal_membership,
    search_finite_length_pairs,
    search_precision,
    validate_fl_pair,
)
from breuilmod.finite_length import critical_ideal, staircase_ideals

from conftest import ctx_for

MAXIMAL = MonomialIdeal([(1, 0), (0, 1)], 2)


def partition_count(n):
    counts = [1] + [0] * n
    for k in range(1, n + 1):
        for s in range(k, n + 1):
            counts[s] += counts[s - k]
    return counts[n]


@pytest.mark.parametrize("n", range(1, 7))
def test_staircases_are_all_colength_n_ideals(n):
    ideals = staircase_ideals(n)
    assert len(ideals) == partition_count(n)
    assert len({tuple(sorted(a.gens)) for a in ideals}) == len(ideals)
    for a in ideals:
        assert a.is_m_primary() and a.colength() == n


def test_socle_witness_examples():
    c = ctx_for(3, N=12)
    T1, T2 = c.gens
    w = frobenius_socle_witness((T1 * T2) ** 2)
    assert w is not None and validate_fl_pair(w, (T1 * T2) ** 2)
    assert frobenius_socle_witness(T1 ** 3) is not None
    assert frobenius_socle_witness(T1 * T2) is None
    assert not validate_fl_pair(w, T1 * T2)


def test_zero_module_is_vacuous():
    c = ctx_for(3)
    unit = MonomialIdeal([(0, 0)], 2)
    assert validate_fl_pair(FiniteLengthPair(3, [unit], [[{}]]), c.var(1))


def test_ill_formed_presentation():
    # phi(1) = T1 is not killed by T1 modulo (T1^3, T2^3)
    with pytest.raises(IllFormedPresentation):
        validate_fl_pair(FiniteLengthPair(3, [MAXIMAL], [[{(1, 0): 1}]]), ctx_for(3).var(1))


@pytest.mark.parametrize("p", [2, 3])
def test_cyclic_pairs_against_ideal_membership(p):
    """For C = S/a and phi(1) = mu, coker is S/((mu) + a^(p))."""
    c = ctx_for(p, N=search_precision(p, 3) + 2)
    hbars = [c.monomial(e) for e in c.monomials(2 * p, 1)] + [c.parse("T1^2 + T2^3"), c.parse("T1*T2 + T2^2")]
    for a in (ideal for n in (1, 2, 3) for ideal in staircase_ideals(n)):
        tw = a.frobenius_power(p)
        for mu in tw.standard_monomials():
            if not all(tw.contains(tuple(x + y for x, y in zip(g, mu))) for g in a.gens):
                continue
            pair = FiniteLengthPair(p, [a], [[{mu: 1}]])
            image = MonomialIdeal(list(tw.gens) + [mu], 2)
            for h in hbars:
                expected = monomial_ideal_membership(h, image.gens).is_in
                assert validate_fl_pair(pair, h) == expected


def test_search_finds_nothing_for_unit():
    c = ctx_for(3, N=search_precision(3, 3))
    res = search_finite_length_pairs(c.one(), max_colength=3, max_degree=3)
    assert not res.found


def test_search_census_is_deterministic():
    c = ctx_for(3, N=search_precision(3, 4))
    T1, T2 = c.gens
    a = search_finite_length_pairs(T1 * T2, 4, 3)
    b = search_finite_length_pairs(T1 * T2, 4, 3)
    assert not a.found and a.statistics == b.statistics
    w = search_finite_length_pairs(T1 ** 3, 4, 3)
    assert w.found and validate_fl_pair(w.witness, T1 ** 3)
    assert not w.witness.is_zero()


def test_critical_ideal():
    I = critical_ideal(5)
    assert sorted(I.gens) == [(0, 5), (4, 4), (5, 0)]
    assert I.max_complement_degree() == 2 * 5 - 3
