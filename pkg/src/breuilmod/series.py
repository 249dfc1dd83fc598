"""Truncated power series k[[T1,...,Td]] with total-degree precision.

A :class:`Series` stores its nonzero coefficients up to total degree ``prec``;
everything above ``prec`` is unknown (not zero).  Operations return the largest
precision that is still sound, so exactness claims are never silently inflated.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb

from .errors import (
    ContextMismatch,
    NoLambdaInField,
    NotAUnit,
    NotNormalized,
    OrderUnknown,
)
from .field import FieldElement, GroundField


Exps = tuple[int, ...]


@dataclass(frozen=True)
class RingContext:
    """The ring k[[T1..Td]] handled at working precision N."""

    field: GroundField
    d: int
    N: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("need at least one variable")
        if self.N < 1:
            raise ValueError("precision must be >= 1")

    @property
    def p(self) -> int:
        return self.field.p

    def with_precision(self, N: int) -> "RingContext":
        return RingContext(self.field, self.d, N)

    def var(self, i: int) -> "Series":
        """The variable T_i (1-based)."""
        if not 1 <= i <= self.d:
            raise IndexError(f"T{i} not in a ring with {self.d} variables")
        exps = tuple(1 if j == i - 1 else 0 for j in range(self.d))
        return Series(self, {exps: 1})

    @property
    def gens(self) -> list["Series"]:
        return [self.var(i) for i in range(1, self.d + 1)]

    def zero(self) -> "Series":
        return Series(self, {})

    def one(self) -> "Series":
        return self.constant(1)

    def constant(self, c) -> "Series":
        code = _code(self.field, c)
        return Series(self, {(0,) * self.d: code} if code else {})

    def monomial(self, exps, c=1) -> "Series":
        exps = tuple(exps)
        if len(exps) != self.d:
            raise ValueError("exponent vector has wrong length")
        code = _code(self.field, c)
        return Series(self, {exps: code} if code and sum(exps) <= self.N else {})

    def parse(self, text: str) -> "Series":
        from .parsing import parse_series

        return parse_series(text, self)

    def monomials(self, max_degree: int, min_degree: int = 0) -> list[Exps]:
        """All exponent vectors with total degree in [min_degree, max_degree], graded."""
        out = []
        for n in range(min_degree, max_degree + 1):
            out.extend(monomials_of_degree(self.d, n))
        return out


def monomials_of_degree(d: int, n: int) -> list[Exps]:
    """Exponent vectors of total degree n, in decreasing lexicographic order."""
    if d == 1:
        return [(n,)]
    out = []
    for a in range(n, -1, -1):
        for rest in monomials_of_degree(d - 1, n - a):
            out.append((a,) + rest)
    return out


def _code(field: GroundField, c) -> int:
    if isinstance(c, FieldElement):
        if c.field != field:
            raise ContextMismatch("coefficient from a different field")
        return c.code
    return field.from_int(int(c))


@dataclass(frozen=True)
class OrderResult:
    """``Known(i)`` or ``Above(prec)``: the series vanishes through degree prec."""

    known: bool
    value: int

    @classmethod
    def Known(cls, i: int) -> "OrderResult":
        return cls(True, i)

    @classmethod
    def Above(cls, prec: int) -> "OrderResult":
        return cls(False, prec)

    def lower_bound(self) -> int:
        return self.value if self.known else self.value + 1

    def __str__(self) -> str:
        return str(self.value) if self.known else f">{self.value}"


@dataclass(frozen=True)
class HomogeneousForm:
    field: GroundField
    d: int
    degree: int
    coeffs: dict = dc_field(hash=False)

    def __str__(self) -> str:
        return _format_terms(self.field, self.d, self.coeffs)

    def evaluate(self, point) -> int:
        """Value (as a field code) at a point given as codes."""
        F = self.field
        acc = 0
        for exps, c in self.coeffs.items():
            term = c
            for x, a in zip(point, exps):
                term = F.mul(term, F.power(x, a))
            acc = F.add(acc, term)
        return acc


class Series:
    """Element of k[[T1..Td]] known modulo (T1..Td)^(prec+1).

    ``coeffs`` maps exponent tuples to coefficients; plain ints in ``range(q)``
    are read as field codes, other ints are reduced into the prime field.
    """

    __slots__ = ("ctx", "coeffs", "prec")

    def __init__(self, ctx: RingContext, coeffs: dict | None = None, prec: int | None = None):
        prec = ctx.N if prec is None else min(prec, ctx.N)
        if prec < -1:
            prec = -1
        F = ctx.field
        clean = {}
        for exps, c in (coeffs or {}).items():
            exps = tuple(exps)
            if sum(exps) > prec:
                continue
            code = c if isinstance(c, int) and 0 <= c < F.q else _code(F, c)
            if code:
                clean[exps] = code
        self.ctx = ctx
        self.coeffs = clean
        self.prec = prec

    @classmethod
    def _raw(cls, ctx: RingContext, coeffs: dict, prec: int) -> "Series":
        # trusted constructor: coeffs already reduced, nonzero and within prec
        s = object.__new__(cls)
        s.ctx = ctx
        s.coeffs = coeffs
        s.prec = prec
        return s

    # -- inspection -----------------------------------------------------------

    @property
    def field(self) -> GroundField:
        return self.ctx.field

    def coefficient(self, exps) -> FieldElement:
        exps = tuple(exps)
        if sum(exps) > self.prec:
            raise OrderUnknown(f"coefficient of degree {sum(exps)} beyond precision {self.prec}")
        return FieldElement(self.field, self.coeffs.get(exps, 0))

    def is_zero(self) -> bool:
        """True when no coefficient is stored (zero *through precision*)."""
        return not self.coeffs

    def degree(self) -> int:
        """Largest stored total degree, -1 for the zero series."""
        return max((sum(e) for e in self.coeffs), default=-1)

    def order(self) -> OrderResult:
        if not self.coeffs:
            return OrderResult.Above(self.prec)
        return OrderResult.Known(min(sum(e) for e in self.coeffs))

    def valuation_bound(self) -> int:
        return self.order().lower_bound()

    def homogeneous_part(self, n: int) -> dict:
        return {e: c for e, c in self.coeffs.items() if sum(e) == n}

    def initial_form(self) -> HomogeneousForm:
        o = self.order()
        if not o.known:
            raise OrderUnknown(f"series vanishes through degree {self.prec}")
        return HomogeneousForm(self.field, self.ctx.d, o.value, self.homogeneous_part(o.value))

    def constant_term(self) -> int:
        return self.coeffs.get((0,) * self.ctx.d, 0)

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def eq_through(self, other: "Series", degree: int | None = None) -> bool:
        """Coefficientwise equality through the given (default: common) degree."""
        self._check(other)
        if degree is None:
            degree = min(self.prec, other.prec)
        a = {e: c for e, c in self.coeffs.items() if sum(e) <= degree}
        b = {e: c for e, c in other.coeffs.items() if sum(e) <= degree}
        return a == b

    def same_coefficients(self, other: "Series") -> bool:
        return self.coeffs == other.coeffs

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: "Series") -> None:
        if self.ctx != other.ctx:
            raise ContextMismatch("series live in different rings")

    def _lift(self, other) -> "Series":
        if isinstance(other, Series):
            self._check(other)
            return other
        if isinstance(other, (int, FieldElement)):
            return self.ctx.constant(other)
        return NotImplemented

    def __add__(self, other) -> "Series":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        F = self.field
        prec = min(self.prec, other.prec)
        out = {e: c for e, c in self.coeffs.items() if sum(e) <= prec}
        for e, c in other.coeffs.items():
            if sum(e) > prec:
                continue
            v = F.add(out.get(e, 0), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Series._raw(self.ctx, out, prec)

    __radd__ = __add__

    def __neg__(self) -> "Series":
        F = self.field
        return Series._raw(self.ctx, {e: F.neg(c) for e, c in self.coeffs.items()}, self.prec)

    def __sub__(self, other) -> "Series":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Series":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "Series":
        F = self.field
        code = _code(F, c)
        if code == 0:
            return Series._raw(self.ctx, {}, self.prec)
        return Series._raw(self.ctx, {e: F.mul(v, code) for e, v in self.coeffs.items()}, self.prec)

    def __mul__(self, other) -> "Series":
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        if not isinstance(other, Series):
            return NotImplemented
        self._check(other)
        # unknown tails only reach degrees above prec_f + ord g and prec_g + ord f
        prec = min(self.prec + other.valuation_bound(), other.prec + self.valuation_bound(), self.ctx.N)
        return Series._raw(self.ctx, _mul_terms(self.field, self.coeffs, other.coeffs, prec), prec)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Series":
        if n < 0:
            return invert_unit(self) ** (-n)
        result = self.ctx.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def truncate(self, prec: int) -> "Series":
        prec = min(prec, self.prec)
        return Series._raw(self.ctx, {e: c for e, c in self.coeffs.items() if sum(e) <= prec}, prec)

    def frobenius(self) -> "Series":
        return frobenius_sigma(self)

    def embed(self, ctx: RingContext, table: list[int] | None = None, as_polynomial: bool = False) -> "Series":
        """Move into another context (larger N and/or an extension field).

        With ``as_polynomial`` the stored coefficients are taken as an exact
        polynomial, so the precision becomes that of the new context.
        """
        if ctx.d != self.ctx.d:
            raise ContextMismatch("different number of variables")
        if table is None:
            if ctx.field != self.field:
                raise ContextMismatch("field change needs an embedding table")
            coeffs = dict(self.coeffs)
        else:
            coeffs = {e: table[c] for e, c in self.coeffs.items()}
        prec = ctx.N if as_polynomial else self.prec
        return Series(ctx, coeffs, prec)

    # -- dunder ---------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, FieldElement)):
            other = self.ctx.constant(other)
            return self.coeffs == other.coeffs
        if not isinstance(other, Series):
            return NotImplemented
        return self.ctx == other.ctx and self.prec == other.prec and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.ctx, self.prec, frozenset(self.coeffs.items())))

    def __str__(self) -> str:
        return _format_terms(self.field, self.ctx.d, self.coeffs)

    def __repr__(self) -> str:
        return f"Series({self}, prec={self.prec})"


def _mul_terms(F: GroundField, a: dict, b: dict, prec: int) -> dict:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    # sort b by degree so the inner loop can stop early
    b_items = sorted(((sum(e), e, c) for e, c in b.items()), key=lambda t: t[0])
    out: dict = {}
    prime = F.m == 1
    p = F.p
    for ea, ca in a.items():
        da = sum(ea)
        room = prec - da
        if room < 0:
            continue
        for db, eb, cb in b_items:
            if db > room:
                break
            e = tuple(x + y for x, y in zip(ea, eb))
            if prime:
                v = (out.get(e, 0) + ca * cb) % p
            else:
                v = F.add(out.get(e, 0), F.mul(ca, cb))
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def poly_mul(F: GroundField, a: dict, b: dict) -> dict:
    """Exact product of two coefficient dictionaries seen as polynomials."""
    bound = max((sum(e) for e in a), default=0) + max((sum(e) for e in b), default=0)
    return _mul_terms(F, a, b, bound)


def poly_add(F: GroundField, a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = F.add(out.get(e, 0), c)
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def poly_neg(F: GroundField, a: dict) -> dict:
    return {e: F.neg(c) for e, c in a.items()}


def _format_terms(F: GroundField, d: int, coeffs: dict) -> str:
    if not coeffs:
        return "0"
    names = ["T"] if d == 1 else [f"T{i}" for i in range(1, d + 1)]
    parts = []
    for exps in sorted(coeffs, key=lambda e: (-sum(e), tuple(-x for x in e))):
        c = coeffs[exps]
        mono = "*".join(
            n if a == 1 else f"{n}^{a}" for n, a in zip(names, exps) if a
        )
        cs = F.format_code(c)
        if "+" in cs or "*" in cs:
            cs = f"({cs})"
        if not mono:
            parts.append(cs)
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{cs}*{mono}")
    return " + ".join(parts)


# -- the operation surface ----------------------------------------------------

def parse_series(text: str, ctx: RingContext) -> Series:
    from .parsing import parse_series as _parse

    return _parse(text, ctx)


def ord(f: Series) -> OrderResult:  # noqa: A001 - the ring-theoretic name
    return f.order()


def initial_form(f: Series) -> HomogeneousForm:
    return f.initial_form()


def invert_unit(f: Series) -> Series:
    """Inverse of a series with nonzero constant term, through f.prec."""
    F = f.field
    c0 = f.constant_term()
    if c0 == 0:
        raise NotAUnit(f"{f} has zero constant term")
    g = f.ctx.constant(FieldElement(F, F.inv(c0))).truncate(f.prec)
    # Newton: g <- g (2 - f g) doubles the number of correct degrees
    correct = 0
    two = f.ctx.constant(2)
    while correct < f.prec:
        g = (g * (two - f * g)).truncate(f.prec)
        correct = 2 * correct + 1
    return g


def frobenius_sigma(f: Series) -> Series:
    """sigma: T_i -> T_i^p and coefficients c -> c^p."""
    p = f.ctx.p
    F = f.field
    prec = min(f.ctx.N, p * f.prec + p - 1)
    out = {}
    for e, c in f.coeffs.items():
        ne = tuple(p * x for x in e)
        if sum(ne) <= prec:
            out[ne] = F.frob(c)
    return Series._raw(f.ctx, out, prec)


# -- monomial ideals ----------------------------------------------------------

def _divides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b))


class MonomialIdeal:
    """Ideal of k[[T1..Td]] generated by monomials (given as exponent vectors)."""

    def __init__(self, gens, d: int | None = None):
        gens = [tuple(int(x) for x in g) for g in gens]
        if not gens:
            raise ValueError("need at least one generator")
        self.d = d if d is not None else len(gens[0])
        if any(len(g) != self.d for g in gens):
            raise ValueError("generators have inconsistent length")
        minimal = []
        for g in sorted(set(gens), key=lambda e: (sum(e), e)):
            if not any(_divides(h, g) for h in minimal):
                minimal.append(g)
        self.gens = tuple(minimal)

    def contains(self, exps: Exps) -> bool:
        return any(_divides(g, exps) for g in self.gens)

    def is_unit(self) -> bool:
        return (0,) * self.d in self.gens

    def is_m_primary(self) -> bool:
        """Finite colength: every variable has a pure power among the generators."""
        for i in range(self.d):
            if not any(g[i] > 0 and sum(g) == g[i] for g in self.gens) and not self.is_unit():
                return False
        return True

    def standard_monomials(self) -> list[Exps]:
        """Monomials outside the ideal (finite list; requires m-primary)."""
        if not self.is_m_primary():
            raise ValueError("ideal has infinite colength")
        out = []
        seen = set()
        frontier = [(0,) * self.d]
        while frontier:
            nxt = []
            for e in frontier:
                if e in seen or self.contains(e):
                    continue
                seen.add(e)
                out.append(e)
                for i in range(self.d):
                    nxt.append(tuple(x + (1 if j == i else 0) for j, x in enumerate(e)))
            frontier = nxt
        return sorted(out, key=lambda e: (sum(e), tuple(-x for x in e)))

    def colength(self) -> int:
        return len(self.standard_monomials())

    def max_complement_degree(self) -> int:
        return max((sum(e) for e in self.standard_monomials()), default=-1)

    def frobenius_power(self, p: int) -> "MonomialIdeal":
        """The ideal generated by p-th powers of elements, i.e. gens scaled by p."""
        return MonomialIdeal([tuple(p * x for x in g) for g in self.gens], self.d)

    def reduce(self, coeffs: dict) -> dict:
        """Normal form modulo the ideal: drop every monomial it contains."""
        return {e: c for e, c in coeffs.items() if not self.contains(e)}

    def __eq__(self, other) -> bool:
        return isinstance(other, MonomialIdeal) and self.gens == other.gens

    def __hash__(self) -> int:
        return hash(self.gens)

    def __repr__(self) -> str:
        return f"MonomialIdeal({list(self.gens)})"


@dataclass(frozen=True)
class MembershipResult:
    status: str  # "in" | "not_in" | "unknown"
    witness: Exps | None = None

    @property
    def is_in(self) -> bool:
        return self.status == "in"

    @property
    def is_not_in(self) -> bool:
        return self.status == "not_in"


IN = MembershipResult("in")
UNKNOWN_AT_PRECISION = MembershipResult("unknown")


def monomial_ideal_membership(f: Series, gens) -> MembershipResult:
    ideal = gens if isinstance(gens, MonomialIdeal) else MonomialIdeal(gens, f.ctx.d)
    outside = [e for e in f.coeffs if not ideal.contains(e)]
    if outside:
        return MembershipResult("not_in", min(outside, key=lambda e: (sum(e), tuple(-x for x in e))))
    if ideal.is_m_primary() and ideal.max_complement_degree() <= f.prec:
        return IN
    return UNKNOWN_AT_PRECISION


# -- coordinate changes -------------------------------------------------------

def shear(f: Series, lam, source: int = 1, target: int = 2) -> Series:
    """Substitute T_target <- T_target + lam * T_source (1-based indices)."""
    ctx = f.ctx
    F = f.field
    lam = _code(F, lam)
    s, t = source - 1, target - 1
    if s == t or not (0 <= s < ctx.d and 0 <= t < ctx.d):
        raise ValueError("shear needs two distinct variables")
    lam_pows = [1]
    out: dict = {}
    for e, c in f.coeffs.items():
        b = e[t]
        while len(lam_pows) <= b:
            lam_pows.append(F.mul(lam_pows[-1], lam))
        for j in range(b + 1):
            # choose j factors of lam*T_source out of (T_target + lam T_source)^b
            coef = F.mul(c, F.mul(F.from_int(comb(b, j)), lam_pows[j]))
            if not coef:
                continue
            ne = list(e)
            ne[t] = b - j
            ne[s] = e[s] + j
            ne = tuple(ne)
            v = F.add(out.get(ne, 0), coef)
            if v:
                out[ne] = v
            else:
                out.pop(ne, None)
    return Series._raw(ctx, out, f.prec)


def swap_variables(f: Series, i: int = 1, j: int = 2) -> Series:
    i, j = i - 1, j - 1
    out = {}
    for e, c in f.coeffs.items():
        ne = list(e)
        ne[i], ne[j] = ne[j], ne[i]
        out[tuple(ne)] = c
    return Series._raw(f.ctx, out, f.prec)


def find_normalizing_lambda(f: Series) -> FieldElement:
    """First lam (0, then powers of a primitive element) making T1^e appear after shear."""
    if f.ctx.d != 2:
        raise ValueError("normalization is implemented for two variables")
    form = f.initial_form()
    F = f.field
    for lam in F.scan_order():
        # coefficient of T1^e in F(T1, T2 + lam T1) is F(1, lam)
        if form.evaluate((1, lam)):
            return FieldElement(F, lam)
    raise NoLambdaInField(
        f"initial form {form} vanishes at every slope of {F!r}; extend the field"
    )


def extend_series(f: Series, k: int = 2) -> Series:
    """The same series over the degree-k extension of its field."""
    big, table = f.field.extension(k)
    return f.embed(RingContext(big, f.ctx.d, f.ctx.N), table)


# -- Weierstrass preparation --------------------------------------------------

def _split_t1(x: Series, e: int) -> tuple[Series, Series]:
    """x = alpha * T1^e + beta with beta of T1-degree < e."""
    hi, lo = {}, {}
    for exps, c in x.coeffs.items():
        if exps[0] >= e:
            hi[(exps[0] - e,) + exps[1:]] = c
        else:
            lo[exps] = c
    return Series._raw(x.ctx, hi, x.prec - e), Series._raw(x.ctx, lo, x.prec)


def weierstrass_preparation(f: Series) -> tuple[Series, list[Series]]:
    """f = unit * (T1^e + a_{e-1}(T2) T1^{e-1} + ... + a_0(T2)), a_i(0) = 0.

    Weierstrass division of T1^e by f as a fixed point iteration
    ``Q <- alpha(T1^e - Q beta(f)) / alpha(f)``; beta(f) lies in (T2), so every
    round fixes one more T2-adic degree of Q.  Then f = Q^{-1} (T1^e - R).
    """
    ctx = f.ctx
    if ctx.d != 2:
        raise ValueError("Weierstrass preparation is implemented for two variables")
    o = f.order()
    if not o.known:
        raise OrderUnknown(f"series vanishes through degree {f.prec}")
    e = o.value
    if f.coeffs.get((e, 0), 0) == 0:
        raise NotNormalized(f"coefficient of T1^{e} is zero; shear first")
    alpha_f, beta_f = _split_t1(f, e)
    inv_alpha = invert_unit(alpha_f)
    t1e = ctx.monomial((e, 0))
    q = ctx.zero().truncate(f.prec - e)
    for _ in range(f.prec + 2):
        x = t1e - q * beta_f
        new_q = (_split_t1(x, e)[0] * inv_alpha).truncate(f.prec - e)
        if new_q.coeffs == q.coeffs:
            break
        q = new_q
    remainder = _split_t1(t1e - q * beta_f, e)[1]
    F = f.field
    wcoeffs = [dict() for _ in range(e)]
    for exps, c in remainder.coeffs.items():
        wcoeffs[exps[0]][(0, exps[1])] = F.neg(c)
    wpoly = [Series(ctx, wcoeffs[i], remainder.prec - i) for i in range(e)]
    return invert_unit(q), wpoly


def weierstrass_polynomial(wpoly: list[Series]) -> Series:
    """Reassemble T1^e + sum a_i T1^i from the coefficient list."""
    ctx = wpoly[0].ctx if wpoly else None
    if ctx is None:
        raise ValueError("empty coefficient list")
    e = len(wpoly)
    total = ctx.monomial((e, 0))
    for i, a in enumerate(wpoly):
        total = total + a * ctx.monomial((i, 0))
    return total

