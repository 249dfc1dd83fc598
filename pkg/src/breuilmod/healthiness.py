"""Diagnosis of quasi-healthiness for R = W(k)[[T1..Td]]/(p - h) from hbar = h mod p.

Positive verdicts rest on the critical-ideal test, small ramification, or a
partition of monomial exponents.  Negative verdicts always come with a machine
checked counterexample: two Breuil modules and a morphism between them which is
onto away from the closed point but not onto.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import (
    BreuilError,
    NotRegularSequence,
    PrecisionTooLow,
    ShapeMismatch,
    UnsupportedDimension,
)
from .finite_length import critical_ideal
from .modules import BreuilModP, Certificate, MorphismP, check_certificate, check_morphism, divides, validate
from .polyutil import squarefree_decomposition
from .semilinear import (
    SeriesMatrix,
    coker_finite_length,
    is_surjective,
    poly_adjugate,
    poly_det,
    solve_many,
    unit_column,
)
from .series import (
    HomogeneousForm,
    MembershipResult,
    OrderResult,
    RingContext,
    Series,
    monomial_ideal_membership,
    ord,
    poly_add,
    poly_mul,
    poly_neg,
)

YES, NO, UNKNOWN = "yes", "no", "unknown"

OPEN_QUESTION_NOTE = (
    "open: hbar lies in the critical ideal but no counterexample shape was found; "
    "expected (unproven) answer is no/no"
)


@dataclass
class CounterexampleBundle:
    case: str
    M1: BreuilModP
    M2: BreuilModP
    alpha: MorphismP
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.get(k) for k in CHECK_NAMES)


CHECK_NAMES = ("morphism", "certificates", "coker_finite_length", "not_surjective")


@dataclass
class Verdict:
    e: OrderResult
    quasi_healthy: str
    p_quasi_healthy: str
    rules: list[str] = field(default_factory=list)
    witness: CounterexampleBundle | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def determined(self) -> bool:
        return UNKNOWN not in (self.quasi_healthy, self.p_quasi_healthy)


# -- ideal and form tests -------------------------------------------------------

def critical_ideal_test(hbar: Series) -> MembershipResult:
    """Membership of hbar in (T1^p, T2^p, T1^(p-1) T2^(p-1)); exact once prec >= 2p-3."""
    if hbar.ctx.d != 2:
        raise UnsupportedDimension("the critical ideal is defined in two variables")
    p = hbar.ctx.p
    res = monomial_ideal_membership(hbar, critical_ideal(p))
    if res.status == "unknown":
        raise PrecisionTooLow("critical ideal membership is undecided", needed=2 * p - 3)
    return res


def initial_form_pm1_power_test(form: HomogeneousForm) -> str:
    """Does the binary form generate the (p-1)-th power of an ideal?

    Returns "is_power", "not_power" or "unknown" (more than two variables).
    """
    if form.d != 2:
        return "unknown"
    F = form.field
    p = F.p
    if not form.coeffs:
        return "unknown"
    if form.degree % (p - 1):
        return "not_power"
    # dehomogenize at T2 = 1; the missing degree is the multiplicity of T2
    f = [0] * (form.degree + 1)
    for (i, _), c in form.coeffs.items():
        f[i] = c
    while f and f[-1] == 0:
        f.pop()
    t2_mult = form.degree - (len(f) - 1)
    if t2_mult % (p - 1):
        return "not_power"
    if all(k % (p - 1) == 0 for _, k in squarefree_decomposition(F, f)):
        return "is_power"
    return "not_power"


# -- counterexample construction ----------------------------------------------

def _poly_pow(F, a: dict, n: int, d: int) -> dict:
    out = {(0,) * d: 1}
    for _ in range(n):
        out = poly_mul(F, out, a)
    return out


def _poly_sub(F, a: dict, b: dict) -> dict:
    return poly_add(F, a, poly_neg(F, b))


def _poly_degree(a: dict) -> int:
    return max((sum(e) for e in a), default=-1)


def _poly_order(a: dict) -> int:
    return min((sum(e) for e in a), default=0)


def _matrix(ctx: RingContext, rows) -> SeriesMatrix:
    return SeriesMatrix(ctx, [[Series(ctx, r) for r in row] for row in rows])


def _require_maximal(case: str, name: str, s: Series) -> None:
    if s.constant_term():
        raise ShapeMismatch(case, f"{name} must lie in the maximal ideal")


def _require_regular(t: Series, u: Series) -> None:
    pair = SeriesMatrix(t.ctx, [[t, u]])
    if not coker_finite_length(pair).finite:
        raise NotRegularSequence(f"({t}, {u}) does not generate an ideal of finite colength")


def verify_bundle(bundle: CounterexampleBundle) -> dict:
    """Recompute the four defining checks of a counterexample bundle."""
    checks = {}
    M1, M2, U = bundle.M1, bundle.M2, bundle.alpha.U
    checks["morphism"] = check_morphism(U, M1, M2)
    try:
        r1, r2 = validate(M1), validate(M2)
        checks["certificates"] = r1.certified and r2.certified
        checks["exact_certificates"] = r1.exact and r2.exact
    except BreuilError:
        checks["certificates"] = False
        checks["exact_certificates"] = False
    checks["coker_finite_length"] = coker_finite_length(U).finite
    checks["not_surjective"] = not is_surjective(U)
    if bundle.case == "iii":
        det = poly_det(M1.field, M1.A.poly_rows())
        checks["det_equals_hbar"] = Series(M1.hbar.ctx, det, M1.hbar.prec).eq_through(M1.hbar)
    return checks


def _finish(case: str, M1: BreuilModP, M2: BreuilModP, U: SeriesMatrix) -> CounterexampleBundle:
    bundle = CounterexampleBundle(case, M1, M2, MorphismP(M1, M2, U))
    bundle.checks = verify_bundle(bundle)
    if not bundle.ok:
        failed = [k for k in CHECK_NAMES if not bundle.checks.get(k)]
        raise ShapeMismatch(case, f"construction failed its checks: {', '.join(failed)}")
    return bundle


def _build_i(hbar: Series, t: Series, u: Series) -> CounterexampleBundle:
    ctx = hbar.ctx
    F, p, d = ctx.field, ctx.p, ctx.d
    _require_maximal("i", "t", t)
    _require_maximal("i", "u", u)
    _require_regular(t, u)
    tt, uu = t.coeffs, u.coeffs
    up = _poly_pow(F, uu, p, d)
    if not divides(Series(ctx, up), hbar):
        raise ShapeMismatch("i", "u^p does not divide hbar")
    up1 = _poly_pow(F, uu, p - 1, d)
    tp1 = _poly_pow(F, tt, p - 1, d)
    x = _poly_sub(F, tt, poly_mul(F, _poly_pow(F, tt, p, d), up1))  # t - t^p u^(p-1)
    y = _poly_sub(F, uu, tp1)  # u - t^(p-1)
    gamma = [
        [{}, {}, up],
        [x, uu, poly_mul(F, y, x)],
        [up1, {}, poly_mul(F, up1, y)],
    ]
    # Delta is the unique solution of Gamma X = u^p I; its degree is known from
    # the adjugate, and solving through deg(Delta) + ord(det) pins it down
    adj = poly_adjugate(F, gamma)
    det = poly_det(F, gamma)
    deg_delta = max(_poly_degree(a) for row in adj for a in row) - p * _poly_degree(uu)
    solve_prec = deg_delta + _poly_order(det)
    alpha = [[tt, uu, poly_mul(F, tt, uu)]]
    top = max(solve_prec, p * max(_poly_degree(a) for a in alpha[0]),
              max(_poly_degree(a) for row in gamma for a in row))
    big = RingContext(F, d, max(ctx.N, top))
    G = _matrix(big, gamma)
    rhs = [unit_column(big, 3, i, Series(big, up)) for i in range(3)]
    cols = solve_many(G, rhs, solve_prec)
    if not all(c.ok for c in cols):
        raise ShapeMismatch("i", "Gamma X = u^p I has no solution")
    delta = [[Series(big, {e: c for e, c in cols[j].solution[i, 0].coeffs.items() if sum(e) <= deg_delta})
              for j in range(3)] for i in range(3)]
    h = hbar.embed(big)
    upS = Series(big, up)
    M1 = BreuilModP(h, G, Certificate(SeriesMatrix(big, delta), upS))
    M2 = BreuilModP(h, SeriesMatrix(big, [[upS]]), Certificate(SeriesMatrix.identity(big, 1), upS))
    return _finish("i", M1, M2, _matrix(big, alpha))


def _build_ii(hbar: Series, u: Series, v: Series) -> CounterexampleBundle:
    ctx = hbar.ctx
    F, p, d = ctx.field, ctx.p, ctx.d
    _require_maximal("ii", "u", u)
    _require_maximal("ii", "v", v)
    _require_regular(u, v)
    up1 = _poly_pow(F, u.coeffs, p - 1, d)
    vp1 = _poly_pow(F, v.coeffs, p - 1, d)
    tau = poly_mul(F, up1, vp1)
    if not divides(Series(ctx, tau), hbar):
        raise ShapeMismatch("ii", "(uv)^(p-1) does not divide hbar")
    top = max(p * max(u.degree(), v.degree()), _poly_degree(tau))
    big = RingContext(F, d, max(ctx.N, top))
    h = hbar.embed(big)
    tauS = Series(big, tau)
    M1 = BreuilModP(h, _matrix(big, [[up1, {}], [{}, vp1]]),
                    Certificate(_matrix(big, [[vp1, {}], [{}, up1]]), tauS))
    M2 = BreuilModP(h, SeriesMatrix(big, [[tauS]]), Certificate(SeriesMatrix.identity(big, 1), tauS))
    return _finish("ii", M1, M2, _matrix(big, [[v.coeffs, u.coeffs]]))


def _build_iii(hbar: Series, a: Series, b: Series, c: Series) -> CounterexampleBundle:
    ctx = hbar.ctx
    F, p, d = ctx.field, ctx.p, ctx.d
    if d != 2:
        raise UnsupportedDimension("this construction lives in two variables")
    T1, T2 = {(1, 0): 1}, {(0, 1): 1}
    A, B, C = a.coeffs, b.coeffs, c.coeffs
    T1p1, T2p1 = {(p - 1, 0): 1}, {(0, p - 1): 1}
    tau = poly_add(F, poly_add(F, poly_mul(F, A, {(p, 0): 1}), poly_mul(F, B, {(0, p): 1})),
                   poly_mul(F, C, {(p - 1, p - 1): 1}))
    ctau = poly_mul(F, C, tau)
    if not Series(ctx, ctau, hbar.prec).eq_through(hbar):
        raise ShapeMismatch("iii", "hbar is not c * (a T1^p + b T2^p + c T1^(p-1) T2^(p-1))")
    gamma = [
        [poly_add(F, poly_mul(F, A, T1), poly_mul(F, C, T2p1)), poly_mul(F, A, T2)],
        [poly_mul(F, B, T1), poly_add(F, poly_mul(F, B, T2), poly_mul(F, C, T1p1))],
    ]
    adj = poly_adjugate(F, gamma)
    top = max(_poly_degree(ctau), p, max(_poly_degree(x) for row in gamma + adj for x in row))
    big = RingContext(F, d, max(ctx.N, top))
    h = hbar.embed(big)
    M1 = BreuilModP(h, _matrix(big, gamma), Certificate(_matrix(big, adj), Series(big, poly_det(F, gamma))))
    M2 = BreuilModP(h, _matrix(big, [[tau]]), Certificate(_matrix(big, [[C]]), Series(big, ctau)))
    bundle = _finish("iii", M1, M2, _matrix(big, [[T1, T2]]))
    if not bundle.checks.get("det_equals_hbar"):
        raise ShapeMismatch("iii", "det Gamma differs from hbar")
    return bundle


def build_counterexample(case: str, hbar: Series, **params: Series) -> CounterexampleBundle:
    """Assemble and verify a counterexample bundle.

    case "i" needs t, u with u^p | hbar; case "ii" needs u, v with
    (uv)^(p-1) | hbar; case "iii" needs a, b, c with
    hbar = c (a T1^p + b T2^p + c T1^(p-1) T2^(p-1)).
    """
    if hbar.ctx.d != 2:
        raise UnsupportedDimension("counterexamples are built in two variables")
    need = {"i": ("t", "u"), "ii": ("u", "v"), "iii": ("a", "b", "c")}
    if case not in need:
        raise ValueError(f"unknown case {case!r}")
    missing = [k for k in need[case] if params.get(k) is None]
    if missing:
        raise ShapeMismatch(case, f"missing parameters: {', '.join(missing)}")
    args = [params[k] for k in need[case]]
    for s in args:
        if s.ctx != hbar.ctx:
            raise ShapeMismatch(case, "parameters must live in the ring of hbar")
    return {"i": _build_i, "ii": _build_ii, "iii": _build_iii}[case](hbar, *args)


# -- monomial criteria ----------------------------------------------------------

def default_precision(p: int, e: int) -> int:
    return max(2 * p, 2 * e)


def monomial_classify(p: int, e1: int, e2: int, ctx: RingContext | None = None) -> Verdict:
    """Complete answer for hbar = T1^e1 T2^e2."""
    if e1 + e2 < 1:
        raise ValueError("the monomial must lie in the maximal ideal")
    if ctx is None:
        from .field import make_field

        ctx = RingContext(make_field(p), 2, default_precision(p, e1 + e2))
    h = ctx.monomial((e1, e2))
    e = OrderResult.Known(e1 + e2)
    if critical_ideal_test(h).is_not_in:
        return Verdict(e, YES, YES, ["outside-ideal"])
    T1, T2 = ctx.var(1), ctx.var(2)
    if e1 >= p:
        bundle = build_counterexample("i", h, t=T2, u=T1)
    elif e2 >= p:
        bundle = build_counterexample("i", h, t=T1, u=T2)
    else:
        bundle = build_counterexample("ii", h, u=T1, v=T2)
    return Verdict(e, NO, NO, [f"counterexample-{bundle.case}"], bundle)


@dataclass
class Partition:
    I1: tuple[int, ...]
    I2: tuple[int, ...]
    m1: int
    m2: int


def partition_search(exponents, p: int) -> Partition | None:
    """Split indices into I1, I2 with sum over I1 in [1, p-1] and over I2 in [0, p-2].

    Subset sums are tracked in a table (value -> one index set reaching it); the
    largest admissible m1 is chosen.
    """
    exps = list(exponents)
    if not exps or any(x < 1 for x in exps):
        raise ValueError("need at least one positive exponent")
    total = sum(exps)
    reach: dict[int, tuple[int, ...]] = {0: ()}
    for i, x in enumerate(exps):
        for s, idx in list(reach.items()):
            if s + x <= p - 1 and s + x not in reach:
                reach[s + x] = idx + (i,)
    for m1 in range(p - 1, 0, -1):
        m2 = total - m1
        if m1 in reach and 0 <= m2 <= p - 2:
            I1 = reach[m1]
            I2 = tuple(i for i in range(len(exps)) if i not in I1)
            return Partition(I1, I2, m1, m2)
    return None


# -- shape detection ------------------------------------------------------------

def _linear_forms(ctx: RingContext) -> list[Series]:
    """T1 + lam*T2 for lam in scan order, then T2."""
    F = ctx.field
    out = [Series(ctx, {(1, 0): 1, (0, 1): lam}) for lam in F.scan_order()]
    out.append(ctx.var(2))
    return out


def _complement(ctx: RingContext, ell: Series) -> Series:
    return ctx.var(1) if (1, 0) not in ell.coeffs else ctx.var(2)


def detect_shape(hbar: Series) -> tuple[str, dict] | None:
    """Find parameters of a counterexample shape, trying monomials then linear forms."""
    ctx = hbar.ctx
    p = ctx.p
    T1, T2 = ctx.var(1), ctx.var(2)
    if hbar.is_monomial():
        (e1, e2), = hbar.coeffs
        if e1 >= p:
            return "i", {"t": T2, "u": T1}
        if e2 >= p:
            return "i", {"t": T1, "u": T2}
        if e1 >= p - 1 and e2 >= p - 1:
            return "ii", {"u": T1, "v": T2}
    forms = _linear_forms(ctx)
    for ell in forms:
        if divides(ell ** p, hbar):
            return "i", {"t": _complement(ctx, ell), "u": ell}
    candidates = [ell for ell in forms if divides(ell ** (p - 1), hbar)]
    for l1, l2 in combinations(candidates, 2):
        if divides((l1 * l2) ** (p - 1), hbar):
            return "ii", {"u": l1, "v": l2}
    return None


def diagnose(h: Series, hints: dict | None = None) -> Verdict:
    """Run the decision cascade on hbar; see the module docstring."""
    ctx = h.ctx
    p, d = ctx.p, ctx.d
    if d < 2:
        raise UnsupportedDimension("healthiness questions need at least two variables")
    o = ord(h)
    if not o.known:
        return Verdict(o, UNKNOWN, UNKNOWN, [], None,
                       [f"precision too low: hbar vanishes through degree {h.prec}"])
    e = o.value
    notes = []
    membership = None
    if d == 2:
        try:
            membership = critical_ideal_test(h)
        except PrecisionTooLow as exc:
            notes.append(str(exc))
        if membership is not None and membership.is_not_in:
            return Verdict(o, YES, YES, ["outside-ideal"], notes=notes)
    if e <= p - 1:
        return Verdict(o, YES, YES if d == 2 else UNKNOWN, ["small-ramification"], notes=notes)
    if d >= 3 and h.is_monomial():
        (exps, _), = h.coeffs.items()
        part = partition_search([x for x in exps if x], p)
        if part is not None:
            notes.append(f"partition m1={part.m1} m2={part.m2}")
            return Verdict(o, YES, UNKNOWN, ["monomial-partition"], notes=notes)
        notes.append("no admissible partition of the exponents")
    if d == 2 and membership is not None and membership.is_in:
        if hints:
            case = hints.get("case") or _case_from_hints(hints)
            params = {k: v for k, v in hints.items() if k != "case"}
            bundle = build_counterexample(case, h, **params)
        else:
            shape = detect_shape(h)
            bundle = build_counterexample(shape[0], h, **shape[1]) if shape else None
        if bundle is not None:
            return Verdict(o, NO, NO, [f"counterexample-{bundle.case}"], bundle, notes)
        notes.append(OPEN_QUESTION_NOTE)
    elif d >= 3:
        notes.append("no rule applies in three or more variables without a monomial partition")
    return Verdict(o, UNKNOWN, UNKNOWN, [], None, notes)


def _case_from_hints(hints: dict) -> str:
    keys = {k for k, v in hints.items() if v is not None}
    if {"a", "b", "c"} <= keys:
        return "iii"
    if {"t", "u"} <= keys:
        return "i"
    if {"u", "v"} <= keys:
        return "ii"
    raise ShapeMismatch("?", "hints must supply (t,u), (u,v) or (a,b,c)")
