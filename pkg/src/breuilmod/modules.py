"""p-torsion Breuil modules over k[[T1..Td]], their morphisms and duals.

A module is free of rank r with the linear map phi: M -> M^(sigma) given by a
square matrix A.  Its cokernel must be killed by hbar; a certificate (B, f)
with A B = B A = f I and f | hbar proves this without a general solve.
Morphisms U: M1 -> M2 satisfy A2 U = twist(U) A1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    AnnihilationRefuted,
    DimensionMismatch,
    InvalidCertificate,
    MissingCertificate,
    NoMorphism,
)
from .field import GroundField
from .series import RingContext, Series, ord
from .semilinear import (
    SeriesMatrix,
    coker_annihilated_by,
    coker_finite_length,
    exact_product,
    nilpotent_mod_maximal,
    poly_matmul,
    poly_scalar_matrix,
    poly_twist,
    solve_linear,
)


@dataclass
class Certificate:
    B: SeriesMatrix
    f: Series


class BreuilModP:
    """Free module with phi given by A, cokernel killed by hbar."""

    def __init__(self, hbar: Series, A: SeriesMatrix, cert: Certificate | None = None):
        if A.nrows != A.ncols:
            raise DimensionMismatch("phi must be given by a square matrix")
        if cert is not None and cert.B.shape != A.shape:
            raise DimensionMismatch("certificate matrix has the wrong shape")
        self.ctx: RingContext = A.ctx
        self.hbar = hbar
        self.A = A
        self.cert = cert

    @property
    def rank(self) -> int:
        return self.A.nrows

    @property
    def field(self) -> GroundField:
        return self.ctx.field

    def __eq__(self, other) -> bool:
        if not isinstance(other, BreuilModP):
            return NotImplemented
        same_cert = (self.cert is None) == (other.cert is None)
        if same_cert and self.cert is not None:
            same_cert = self.cert.B == other.cert.B and self.cert.f == other.cert.f
        return self.hbar == other.hbar and self.A == other.A and same_cert

    def __repr__(self) -> str:
        return f"BreuilModP(rank={self.rank}, hbar={self.hbar}, A=[{self.A!r}])"


@dataclass
class ValidationReport:
    certified: bool
    connected: bool
    exact: bool
    details: list[str] = field(default_factory=list)


def _scalar_identity_check(P: SeriesMatrix, f: Series) -> bool:
    n = P.nrows
    for i in range(n):
        for j in range(n):
            want = f if i == j else P.ctx.zero()
            if not P[i, j].eq_through(want, min(P[i, j].prec, want.prec)):
                return False
    return True


def divides(f: Series, g: Series) -> bool:
    """Does f divide g, decided at the common precision."""
    A = SeriesMatrix(f.ctx, [[f]])
    b = SeriesMatrix(f.ctx, [[g]])
    return solve_linear(A, b, min(f.prec, g.prec)).ok


def check_certificate(M: BreuilModP) -> tuple[bool, bool]:
    """Return (valid, exact): exact when the identities hold as polynomial identities."""
    A, B, f = M.A, M.cert.B, M.cert.f
    fI = poly_scalar_matrix(f.coeffs, M.rank)
    if exact_product(A, B) == fI and exact_product(B, A) == fI:
        return True, True
    ok = _scalar_identity_check(A @ B, f) and _scalar_identity_check(B @ A, f)
    return ok, False


def validate(M: BreuilModP) -> ValidationReport:
    """Check that coker(phi) is killed by hbar and report connectedness."""
    details = []
    if M.cert is not None:
        ok, exact = check_certificate(M)
        if not ok:
            raise InvalidCertificate("A*B = B*A = f*I fails")
        details.append("certificate identities hold " + ("exactly" if exact else f"through degree {M.A.prec}"))
        if not divides(M.cert.f, M.hbar):
            raise InvalidCertificate("certificate scalar f does not divide hbar")
        details.append("f divides hbar")
    else:
        res = coker_annihilated_by(M.A, M.hbar)
        if not res.certified:
            raise AnnihilationRefuted(res.refuted_degree)
        exact = False
        details.append(f"cokernel killed by hbar through degree {res.prec}")
    connected = nilpotent_mod_maximal(M.A)
    return ValidationReport(True, connected, exact, details)


def dualize(M: BreuilModP) -> BreuilModP:
    """Dual module: phi' = B^T with certificate (A^T, f)."""
    if M.cert is None:
        raise MissingCertificate("dualizing needs the companion matrix B")
    return BreuilModP(M.hbar, M.cert.B.transpose(), Certificate(M.A.transpose(), M.cert.f))


@dataclass
class MorphismP:
    source: BreuilModP
    target: BreuilModP
    U: SeriesMatrix


def _check_dims(U: SeriesMatrix, M1: BreuilModP, M2: BreuilModP) -> None:
    if U.shape != (M2.rank, M1.rank):
        raise DimensionMismatch(f"morphism matrix must be {M2.rank}x{M1.rank}, got {U.nrows}x{U.ncols}")


def check_morphism(U: SeriesMatrix, M1: BreuilModP, M2: BreuilModP, exact: bool = False) -> bool:
    """A2 U = twist(U) A1; with ``exact`` only polynomial equality counts."""
    _check_dims(U, M1, M2)
    F = U.field
    lhs = poly_matmul(F, M2.A.poly_rows(), U.poly_rows())
    rhs = poly_matmul(F, poly_twist(F.p, F, U.poly_rows()), M1.A.poly_rows())
    if lhs == rhs:
        return True
    if exact:
        return False
    return (M2.A @ U).eq_through(U.twist() @ M1.A)


def epi_on_punctured(U: SeriesMatrix, M1: BreuilModP, M2: BreuilModP) -> bool:
    """Cokernel of U has finite length, so U is onto away from the closed point."""
    _check_dims(U, M1, M2)
    return coker_finite_length(U).finite


def compose(V: MorphismP, U: MorphismP) -> MorphismP:
    return MorphismP(U.source, V.target, V.U @ U.U)


# -- the mu_p family over k[[T]] ----------------------------------------------

def mu_p_module(e: int, ctx: RingContext) -> BreuilModP:
    """Rank one, phi = multiplication by T^e, over a one-variable context."""
    if ctx.d != 1:
        raise DimensionMismatch("the mu_p module lives over k[[T]]")
    Te = ctx.monomial((e,))
    return BreuilModP(Te, SeriesMatrix(ctx, [[Te]]), Certificate(SeriesMatrix.identity(ctx, 1), Te))


@dataclass
class MuPSolution:
    ord_a: int
    a: Series
    leading: int


def _field_with_root(F: GroundField, c: int, n: int, max_q: int = 2048):
    """Smallest extension of F (within table limits) where x^n = c has a root."""
    k = 1
    while F.q ** k <= max_q:
        big, table = (F, list(range(F.q))) if k == 1 else F.extension(k)
        cc = table[c]
        roots = [x for x in big.scan_order() if x and big.power(x, n) == cc]
        if roots:
            return big, table, roots
        k += 1
    return None


def solve_mu_p_morphism(g: Series, e: int, prec: int | None = None) -> list[MuPSolution]:
    """All a with g * a = sigma(a) * T^(p-1), one per choice of leading coefficient.

    The order law ord(g) = (p-1)(ord(a)+1) fixes ord(a); the leading coefficient
    solves x^(p-1) = lead(g) (the field is extended if needed) and the remaining
    coefficients follow from a triangular recursion.  Solutions are computed
    through degree prec - ord(g) of a, so the identity holds through degree prec.
    """
    ctx = g.ctx
    if ctx.d != 1:
        raise DimensionMismatch("the mu_p equation lives over k[[T]]")
    p = ctx.p
    o = ord(g)
    if not o.known:
        raise NoMorphism(f"g vanishes through degree {g.prec}; its order is unknown")
    og = o.value
    if og > e:
        raise NoMorphism(f"ord(g) = {og} exceeds e = {e}")
    if og % (p - 1) or og // (p - 1) < 1:
        raise NoMorphism(f"ord(g) = {og} is not (p-1)(ord(a)+1) for any ord(a) >= 0")
    s = og // (p - 1) - 1
    prec = g.prec if prec is None else prec
    found = _field_with_root(ctx.field, g.coeffs[(og,)], p - 1)
    if found is None:
        raise NoMorphism("no field within table limits contains a (p-1)-th root of the leading coefficient")
    F, table, roots = found
    ctx2 = ctx if F == ctx.field else RingContext(F, 1, ctx.N)
    gg = {n[0]: table[c] for n, c in g.coeffs.items()}
    g_inv = F.inv(gg[og])
    top = prec - og
    out = []
    for root in roots:
        a = {s: root}
        for n in range(s + 1, top + 1):
            acc = 0
            k = og + n
            j, r = divmod(k - p + 1, p)
            if r == 0 and j in a:
                acc = F.frob(a[j])
            for jj, aj in a.items():
                gc = gg.get(og + n - jj)
                if gc:
                    acc = F.sub(acc, F.mul(gc, aj))
            v = F.mul(acc, g_inv)
            if v:
                a[n] = v
        series = Series(ctx2, {(n,): c for n, c in a.items()}, top)
        out.append(MuPSolution(s, series, root))
    return out


def mu_p_identity_holds(g: Series, sol: MuPSolution, degree: int) -> bool:
    """g * a == sigma(a) * T^(p-1) through the given degree."""
    a = sol.a
    ctx = a.ctx
    if g.ctx != ctx:
        g = g.embed(ctx, _embedding(g.field, ctx.field))
    lhs = g * a
    rhs = a.frobenius() * ctx.monomial((ctx.p - 1,))
    return lhs.eq_through(rhs, degree) and min(lhs.prec, rhs.prec) >= degree


def _embedding(small: GroundField, big: GroundField) -> list[int]:
    k = big.m // small.m
    F2, table = small.extension(k)
    if F2 != big:
        raise DimensionMismatch("fields are not compatible")
    return table
