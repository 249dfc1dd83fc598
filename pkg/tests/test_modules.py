import pytest

from breuilmod import (
    AnnihilationRefuted,
    BreuilModP,
    Certificate,
    DimensionMismatch,
    InvalidCertificate,
    MissingCertificate,
    MorphismP,
    NoMorphism,
    RingContext,
    SeriesMatrix,
    build_counterexample,
    check_morphism,
    compose,
    dualize,
    epi_on_punctured,
    is_surjective,
    make_field,
    mu_p_module,
    solve_mu_p_morphism,
    validate,
)
from breuilmod.modules import mu_p_identity_holds

from conftest import ctx_for


def rg_module(p=3):
    c = ctx_for(p, N=4 * p)
    T1, T2 = c.gens
    h = (T1 * T2) ** (p - 1)
    A = SeriesMatrix.diag([T1 ** (p - 1), T2 ** (p - 1)])
    B = SeriesMatrix.diag([T2 ** (p - 1), T1 ** (p - 1)])
    return BreuilModP(h, A, Certificate(B, h))


def rank_one(h, a, b=None, f=None):
    A = SeriesMatrix(h.ctx, [[a]])
    cert = None if b is None else Certificate(SeriesMatrix(h.ctx, [[b]]), f)
    return BreuilModP(h, A, cert)


def test_validate_examples():
    rep = validate(rg_module())
    assert rep.certified and rep.connected and rep.exact
    c = ctx_for(3)
    T1, T2 = c.gens
    h = T1 ** 3
    rep = validate(rank_one(h, h, c.one(), h))
    assert rep.certified and rep.connected
    with pytest.raises(AnnihilationRefuted):
        validate(rank_one(h, T2))


def test_validate_uncertified_module_uses_solver():
    c = ctx_for(3, N=10)
    T1, T2 = c.gens
    rep = validate(rank_one(T1 ** 2 * T2, T1 * (1 + T2)))
    assert rep.certified and not rep.exact


def test_invalid_certificates():
    c = ctx_for(3)
    T1, T2 = c.gens
    with pytest.raises(InvalidCertificate):
        validate(rank_one(T1 ** 3, T1, T1, T1 ** 3))
    # identities hold but f does not divide hbar
    with pytest.raises(InvalidCertificate):
        validate(rank_one(T1 ** 3, T2, c.one(), T2))


def test_dualize_examples():
    M = rg_module()
    D = dualize(M)
    assert D.A == M.cert.B
    assert validate(D).certified
    assert dualize(D) == M
    c = ctx_for(3)
    h = c.var(1) ** 3
    D = dualize(rank_one(h, h, c.one(), h))
    assert D.A == SeriesMatrix.identity(c, 1)
    assert not validate(D).connected
    with pytest.raises(MissingCertificate):
        dualize(rank_one(h, h))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_dualize_involution_on_case_i(p):
    c = ctx_for(p, N=4 * p)
    T1, T2 = c.gens
    b = build_counterexample("i", T1 ** p, t=T2, u=T1)
    for M in (b.M1, b.M2):
        assert dualize(dualize(M)) == M
        assert validate(dualize(M)).certified


def test_case_i_morphism_example():
    c = ctx_for(3, N=12)
    T1, T2 = c.gens
    b = build_counterexample("i", T1 ** 3, t=T2, u=T1)
    U = b.alpha.U
    assert U == SeriesMatrix.row([T2, T1, T1 * T2])
    assert check_morphism(U, b.M1, b.M2, exact=True)
    assert epi_on_punctured(U, b.M1, b.M2)
    assert not is_surjective(U)


def test_identity_and_case_ii_morphisms():
    M = rg_module()
    I = SeriesMatrix.identity(M.ctx, 2)
    assert check_morphism(I, M, M, exact=True)
    assert epi_on_punctured(I, M, M)
    T1, T2 = M.ctx.gens
    tau = (T1 * T2) ** 2
    target = rank_one(M.hbar, tau, M.ctx.one(), tau)
    U = SeriesMatrix.row([T2, T1])
    assert check_morphism(U, M, target, exact=True)
    assert not check_morphism(SeriesMatrix.row([T1, T2]), M, target)
    with pytest.raises(DimensionMismatch):
        check_morphism(SeriesMatrix.column([T1, T2]), M, target)


def test_composition_of_morphisms():
    M = rg_module()
    T1, T2 = M.ctx.gens
    tau = (T1 * T2) ** 2
    target = rank_one(M.hbar, tau, M.ctx.one(), tau)
    alpha = MorphismP(M, target, SeriesMatrix.row([T2, T1]))
    # scalar endomorphisms by constants commute with phi on any module
    two = SeriesMatrix(M.ctx, [[M.ctx.constant(2)]])
    beta = MorphismP(target, target, two)
    assert check_morphism(beta.U, target, target)
    gamma = compose(beta, alpha)
    assert check_morphism(gamma.U, M, target, exact=True)
    # the swap of basis vectors exchanges the two diagonal entries
    swap = SeriesMatrix.from_strings(M.ctx, [["0", "1"], ["1", "0"]])
    other = BreuilModP(M.hbar, M.cert.B, Certificate(M.A, M.hbar))
    assert check_morphism(swap, M, other)
    via_other = compose(MorphismP(other, target, SeriesMatrix.row([T1, T2])), MorphismP(M, other, swap))
    assert via_other.U == alpha.U
    assert check_morphism(via_other.U, M, target, exact=True)


# -- the mu_p family -------------------------------------------------------------

def one_var(p, N=None, m=1):
    return RingContext(make_field(p, m), 1, N or 3 * p)


def test_mu_p_module_shape():
    c = one_var(3)
    M = mu_p_module(2, c)
    assert M.A == SeriesMatrix.from_strings(c, [["T^2"]])
    assert validate(M).connected


def test_mu_p_examples():
    c = one_var(3)
    sols = solve_mu_p_morphism(c.parse("T^2"), 2, 9)
    assert sols[0].ord_a == 0
    assert any(s.a.same_coefficients(c.one()) for s in sols)
    for s in sols:
        assert mu_p_identity_holds(c.parse("T^2"), s, 9)
    with pytest.raises(NoMorphism):
        solve_mu_p_morphism(c.parse("T"), 2, 9)


def test_mu_p_needs_root_of_leading_coefficient():
    # 2a = a^3 has no nonzero solution in F_3, so the field is extended
    c = one_var(3)
    g = c.parse("2*T^2")
    for a in range(1, 3):
        assert (2 * a) % 3 != pow(a, 3, 3)
    sols = solve_mu_p_morphism(g, 2, 9)
    assert sols and sols[0].a.field.q == 9
    for s in sols:
        assert s.ord_a == 0
        assert mu_p_identity_holds(g, s, 9)


def test_mu_p_nonmonomial_g():
    c = one_var(5, N=15)
    g = c.parse("T^4 + 3*T^6 + T^9")
    for s in solve_mu_p_morphism(g, 4, 15):
        assert mu_p_identity_holds(g, s, 15)
