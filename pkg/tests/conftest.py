import sympy
from hypothesis import settings, strategies as st

from breuilmod import RingContext, Series, make_field

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

X, T1, T2 = sympy.symbols("x T1 T2")


def ctx_for(p, d=2, N=8, m=1):
    return RingContext(make_field(p, m), d, N)


def to_sympy(f: Series):
    """Polynomial over GF(p) with the same coefficients (prime fields only)."""
    syms = sympy.symbols(" ".join(f"T{i + 1}" for i in range(f.ctx.d)))
    syms = syms if isinstance(syms, tuple) else (syms,)
    expr = sympy.Integer(0)
    for exps, c in f.coeffs.items():
        term = sympy.Integer(c)
        for s, a in zip(syms, exps):
            term *= s ** a
        expr += term
    return sympy.Poly(expr, *syms, modulus=f.ctx.field.p)


def from_sympy(poly, ctx):
    p = ctx.field.p
    return Series(ctx, {e: int(c) % p for e, c in poly.terms()})


@st.composite
def polynomials(draw, ctx, max_terms=6, max_deg=None, min_order=0):
    max_deg = ctx.N if max_deg is None else max_deg
    mons = ctx.monomials(max_deg, min_order)
    terms = draw(st.dictionaries(st.sampled_from(mons), st.integers(1, ctx.field.q - 1), max_size=max_terms))
    return Series(ctx, terms)
