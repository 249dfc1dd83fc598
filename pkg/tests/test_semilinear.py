import itertools

import pytest
from hypothesis import given, strategies as st

from breuilmod import (
    DimensionMismatch,
    Series,
    SeriesMatrix,
    build_counterexample,
    coker_annihilated_by,
    coker_finite_length,
    is_surjective,
    nilpotent_mod_maximal,
    solve_linear,
    solve_many,
    twist,
)
from breuilmod.semilinear import poly_adjugate, poly_det, unit_column

from conftest import ctx_for, polynomials


def gamma_case_i(p=3):
    c = ctx_for(p, N=4 * p)
    T1, T2 = c.gens
    b = build_counterexample("i", T1 ** p, t=T2, u=T1)
    return c, b


def assert_sound(A, b, res):
    """A solution must re-multiply to b through the solve precision."""
    assert res.ok
    assert (A @ res.solution).eq_through(b, res.prec)


def test_solve_examples():
    c = ctx_for(3)
    T1, T2 = c.gens
    A = SeriesMatrix.column([T1])
    res = solve_linear(A, SeriesMatrix.column([T1 * T2]))
    assert_sound(A, SeriesMatrix.column([T1 * T2]), res)
    assert res.solution[0, 0].eq_through(T2, res.prec - 1)
    res = solve_linear(A, SeriesMatrix.column([T2]))
    assert not res.ok and res.failing_degree == 1


def test_solve_gamma_case_i():
    c, b = gamma_case_i()
    G = b.M1.A
    u = c.var(1)
    rhs = unit_column(G.ctx, 3, 1, u ** 3)
    res = solve_linear(G, rhs)
    assert_sound(G, rhs, res)


def test_twist_examples():
    c = ctx_for(3)
    T1, T2 = c.gens
    U = SeriesMatrix.row([T2, T1, T1 * T2])
    assert twist(U) == SeriesMatrix.from_strings(c, [["T2^3", "T1^3", "T1^3*T2^3"]])
    I = SeriesMatrix.identity(c, 3)
    assert twist(I) == I


def test_annihilation_examples():
    c = ctx_for(3, N=10)
    T1, T2 = c.gens
    A = SeriesMatrix.diag([T1 ** 2, T2 ** 2])
    assert coker_annihilated_by(A, (T1 * T2) ** 2).certified
    assert coker_annihilated_by(SeriesMatrix.identity(c, 2), T1).certified
    res = coker_annihilated_by(SeriesMatrix.column([T1]), T2)
    assert not res.certified and res.refuted_degree == 1
    with pytest.raises(DimensionMismatch):
        coker_annihilated_by(SeriesMatrix.row([T1, T2]), T1)


def test_finite_length_examples():
    c = ctx_for(3, N=10)
    T1, T2 = c.gens
    res = coker_finite_length(SeriesMatrix.row([T2, T1, T1 * T2]))
    assert res.finite and res.bound == 1
    res = coker_finite_length(SeriesMatrix.identity(c, 2))
    assert res.finite and res.bound == 0
    assert not coker_finite_length(SeriesMatrix.row([T1])).finite


def test_surjective_and_nilpotent_examples():
    c, b = gamma_case_i()
    T1, T2 = c.gens
    assert is_surjective(SeriesMatrix.row([1 + T1]))
    assert not is_surjective(SeriesMatrix.row([T1, T2]))
    assert not is_surjective(b.M1.A)
    assert nilpotent_mod_maximal(SeriesMatrix.row([T1]))
    assert not nilpotent_mod_maximal(SeriesMatrix.identity(c, 1))
    assert nilpotent_mod_maximal(b.M1.A)


def test_nilpotent_constant_matrix():
    c = ctx_for(3)
    A = SeriesMatrix.from_strings(c, [["0", "1"], ["0", "0"]])
    assert nilpotent_mod_maximal(A)
    A = SeriesMatrix.from_strings(c, [["1", "1"], ["0", "0"]])
    assert not nilpotent_mod_maximal(A)


def test_polynomial_det_and_adjugate():
    c = ctx_for(3)
    G = SeriesMatrix.from_strings(c, [["T1", "T2"], ["T1^2", "1+T2"]])
    F = c.field
    det = poly_det(F, G.poly_rows())
    assert det == c.parse("T1 + T1*T2 - T1^2*T2").coeffs
    adj = poly_adjugate(F, G.poly_rows())
    assert adj[0][1] == c.parse("-T2").coeffs


# -- solver against exhaustive enumeration ------------------------------------

def all_polys(ctx, degree):
    mons = ctx.monomials(degree)
    for coeffs in itertools.product(range(ctx.field.p), repeat=len(mons)):
        yield Series(ctx, dict(zip(mons, coeffs)))


SMALL = ctx_for(2, N=2)
SMALL_POLYS = list(all_polys(SMALL, 2))


@given(st.lists(st.sampled_from(SMALL_POLYS), min_size=3, max_size=3))
def test_solver_matches_brute_force(entries):
    a1, a2, rhs = entries
    A = SeriesMatrix.row([a1, a2])
    b = SeriesMatrix.column([rhs])
    res = solve_linear(A, b, 2)
    exists = any((a1 * x + a2 * y).eq_through(rhs, 2) for x in SMALL_POLYS for y in SMALL_POLYS)
    assert res.ok == exists
    if res.ok:
        assert_sound(A, b, res)


@given(polynomials(ctx_for(3, N=6), max_deg=3), polynomials(ctx_for(3, N=6), max_deg=3),
       polynomials(ctx_for(3, N=6), max_deg=4))
def test_solver_soundness_and_monotone_refutation(f, g, h):
    A = SeriesMatrix.row([f, g])
    b = SeriesMatrix.column([h])
    res = solve_linear(A, b, 4)
    if res.ok:
        assert_sound(A, b, res)
    else:
        # a refutation at degree n persists at every higher precision
        assert not solve_linear(A, b, 6).ok
        assert solve_linear(A, b, 6).failing_degree == res.failing_degree


@given(polynomials(ctx_for(3, N=8), max_deg=3, min_order=1),
       polynomials(ctx_for(3, N=8), max_deg=3, min_order=1))
def test_annihilation_consistent_with_multiples(f, g):
    c = f.ctx
    A = SeriesMatrix.diag([f + c.var(1), c.var(2)])
    first = coker_annihilated_by(A, (f + c.var(1)) * c.var(2))
    assert first.certified
    assert coker_annihilated_by(A, (f + c.var(1)) * c.var(2) * g).certified


@given(polynomials(ctx_for(3, N=8), max_deg=3), polynomials(ctx_for(3, N=8), max_deg=3),
       polynomials(ctx_for(3, N=8), max_deg=3), polynomials(ctx_for(3, N=8), max_deg=3))
def test_twist_is_multiplicative_and_additive(a, b, c, d):
    U = SeriesMatrix(a.ctx, [[a, b]])
    V = SeriesMatrix(a.ctx, [[c], [d]])
    lhs, rhs = twist(U @ V), twist(U) @ twist(V)
    assert lhs.eq_through(rhs, min(lhs.prec, rhs.prec))
    W = SeriesMatrix(a.ctx, [[c, d]])
    assert twist(U + W) == twist(U) + twist(W)


def test_solve_many_matches_single_solves():
    c = ctx_for(3, N=6)
    T1, T2 = c.gens
    A = SeriesMatrix.from_strings(c, [["T1", "T2^2"], ["T2", "T1+T2"]])
    rhs = [unit_column(c, 2, i, m) for i in range(2) for m in (T1, T2, T1 * T2, c.one())]
    together = solve_many(A, rhs, 5)
    for b, res in zip(rhs, together):
        single = solve_linear(A, b, 5)
        assert res.ok == single.ok
        assert res.failing_degree == single.failing_degree
        if res.ok:
            assert_sound(A, b, res)
