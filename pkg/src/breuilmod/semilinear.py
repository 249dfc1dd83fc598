"""Matrices over k[[T1..Td]] at precision, and exact-at-precision linear algebra.

Solving ``A x = b`` modulo (T1..Td)^(n+1) is a finite k-linear system in the
coefficients of x of degree <= n, because multiplying by A never lowers degree.
The system is assembled and eliminated one degree at a time (the grading makes
each degree block depend only on lower ones), so an inconsistency is reported
at the first degree where it appears.  Extension-field systems are expanded to
F_p through the multiplication matrices of the field.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContextMismatch, DimensionMismatch, PrecisionTooLow
from .field import GroundField
from .series import RingContext, Series, frobenius_sigma, poly_add, poly_mul


class SeriesMatrix:
    """Rectangular matrix of series sharing one ring context."""

    def __init__(self, ctx: RingContext, rows):
        rows = [list(r) for r in rows]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("ragged matrix")
        for r in rows:
            for s in r:
                if s.ctx != ctx:
                    raise ContextMismatch("matrix entries live in different rings")
        self.ctx = ctx
        self.rows = rows

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_strings(cls, ctx: RingContext, rows) -> "SeriesMatrix":
        return cls(ctx, [[ctx.parse(s) if isinstance(s, str) else s for s in r] for r in rows])

    @classmethod
    def identity(cls, ctx: RingContext, n: int) -> "SeriesMatrix":
        return cls(ctx, [[ctx.one() if i == j else ctx.zero() for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ctx: RingContext, r: int, c: int) -> "SeriesMatrix":
        return cls(ctx, [[ctx.zero() for _ in range(c)] for _ in range(r)])

    @classmethod
    def diag(cls, entries) -> "SeriesMatrix":
        entries = list(entries)
        ctx = entries[0].ctx
        n = len(entries)
        return cls(ctx, [[entries[i] if i == j else ctx.zero() for j in range(n)] for i in range(n)])

    @classmethod
    def column(cls, entries) -> "SeriesMatrix":
        entries = list(entries)
        return cls(entries[0].ctx, [[e] for e in entries])

    @classmethod
    def row(cls, entries) -> "SeriesMatrix":
        entries = list(entries)
        return cls(entries[0].ctx, [entries])

    # -- shape and access -----------------------------------------------------

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def prec(self) -> int:
        return min((s.prec for r in self.rows for s in r), default=self.ctx.N)

    @property
    def field(self) -> GroundField:
        return self.ctx.field

    def __getitem__(self, ij) -> Series:
        i, j = ij
        return self.rows[i][j]

    def entries(self):
        for r in self.rows:
            yield from r

    def columns(self) -> list["SeriesMatrix"]:
        return [SeriesMatrix(self.ctx, [[r[j]] for r in self.rows]) for j in range(self.ncols)]

    def degree(self) -> int:
        return max((s.degree() for s in self.entries()), default=-1)

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        self._same_shape(other)
        return SeriesMatrix(self.ctx, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        self._same_shape(other)
        return SeriesMatrix(self.ctx, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "SeriesMatrix":
        return SeriesMatrix(self.ctx, [[-a for a in r] for r in self.rows])

    def scale(self, f) -> "SeriesMatrix":
        return SeriesMatrix(self.ctx, [[a * f for a in r] for r in self.rows])

    def __matmul__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        if self.ctx != other.ctx:
            raise ContextMismatch("matrices live in different rings")
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for r in self.rows:
            row = []
            for j in range(other.ncols):
                acc = None
                for k, a in enumerate(r):
                    term = a * other.rows[k][j]
                    acc = term if acc is None else acc + term
                row.append(acc if acc is not None else self.ctx.zero())
            out.append(row)
        return SeriesMatrix(self.ctx, out)

    def transpose(self) -> "SeriesMatrix":
        return SeriesMatrix(self.ctx, [list(c) for c in zip(*self.rows)] if self.rows else [])

    @property
    def T(self) -> "SeriesMatrix":
        return self.transpose()

    def twist(self) -> "SeriesMatrix":
        return twist(self)

    def mod_maximal(self) -> list[list[int]]:
        """Reduction modulo (T1..Td): the matrix of constant terms (field codes)."""
        return [[s.constant_term() for s in r] for r in self.rows]

    def eq_through(self, other: "SeriesMatrix", degree: int | None = None) -> bool:
        self._same_shape(other)
        return all(a.eq_through(b, degree) for a, b in zip(self.entries(), other.entries()))

    def _same_shape(self, other: "SeriesMatrix") -> None:
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    # -- exact polynomial view ------------------------------------------------

    def poly_rows(self) -> list[list[dict]]:
        return [[dict(s.coeffs) for s in r] for r in self.rows]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SeriesMatrix):
            return NotImplemented
        return self.ctx == other.ctx and self.rows == other.rows

    def __str__(self) -> str:
        return "\n".join("; ".join(str(s) for s in r) for r in self.rows)

    def __repr__(self) -> str:
        return f"SeriesMatrix({self.shape}, [{' | '.join('; '.join(str(s) for s in r) for r in self.rows)}])"


# -- exact polynomial matrix products ----------------------------------------

def poly_matmul(F: GroundField, A: list[list[dict]], B: list[list[dict]]) -> list[list[dict]]:
    """Product of matrices of polynomials, no truncation."""
    if A and len(A[0]) != len(B):
        raise DimensionMismatch("inner dimensions differ")
    out = []
    for r in A:
        row = []
        for j in range(len(B[0]) if B else 0):
            acc: dict = {}
            for k, a in enumerate(r):
                acc = poly_add(F, acc, poly_mul(F, a, B[k][j]))
            row.append(acc)
        out.append(row)
    return out


def poly_scalar_matrix(f: dict, n: int) -> list[list[dict]]:
    return [[dict(f) if i == j else {} for j in range(n)] for i in range(n)]


def poly_twist(p: int, F: GroundField, A: list[list[dict]]) -> list[list[dict]]:
    return [[{tuple(p * x for x in e): F.frob(c) for e, c in s.items()} for s in r] for r in A]


def exact_product(A: SeriesMatrix, B: SeriesMatrix) -> list[list[dict]]:
    """A*B over the polynomial ring, treating stored coefficients as exact."""
    return poly_matmul(A.field, A.poly_rows(), B.poly_rows())


def poly_det(F: GroundField, A: list[list[dict]]) -> dict:
    """Determinant by cofactor expansion (small matrices only)."""
    n = len(A)
    if n == 1:
        return dict(A[0][0])
    if n == 2:
        return poly_add(F, poly_mul(F, A[0][0], A[1][1]),
                        {e: F.neg(c) for e, c in poly_mul(F, A[0][1], A[1][0]).items()})
    total: dict = {}
    for j in range(n):
        if not A[0][j]:
            continue
        minor = [r[:j] + r[j + 1:] for r in A[1:]]
        term = poly_mul(F, A[0][j], poly_det(F, minor))
        if j % 2:
            term = {e: F.neg(c) for e, c in term.items()}
        total = poly_add(F, total, term)
    return total


def poly_adjugate(F: GroundField, A: list[list[dict]]) -> list[list[dict]]:
    n = len(A)
    if n == 1:
        return [[{(0,) * len(next(iter(A[0][0]), (0,))): 1}]] if A[0][0] else [[{}]]
    adj = [[{} for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [r[:j] + r[j + 1:] for k, r in enumerate(A) if k != i]
            c = poly_det(F, minor)
            if (i + j) % 2:
                c = {e: F.neg(v) for e, v in c.items()}
            adj[j][i] = c
    return adj


# -- twisting -----------------------------------------------------------------

def twist(U: SeriesMatrix) -> SeriesMatrix:
    """Entrywise Frobenius: the matrix of the induced map between Frobenius twists."""
    return SeriesMatrix(U.ctx, [[frobenius_sigma(s) for s in r] for r in U.rows])


# -- F_p elimination kernel ---------------------------------------------------

def _mod(x: np.ndarray, p: int) -> np.ndarray:
    return np.mod(x, p, out=x)


class _GradedEliminator:
    """Incremental reduced row echelon form over F_p, fed one degree block at a time.

    Arrays are float64 holding integers in [0, p); BLAS products of such arrays
    stay exact as long as rank * p^2 < 2^53.
    """

    def __init__(self, ncols: int, nrhs: int, p: int):
        self.p = p
        self.ncols = ncols
        self.P = np.zeros((0, ncols))
        self.PR = np.zeros((0, nrhs))
        self.pivots: list[int] = []

    def add_block(self, B: np.ndarray, BR: np.ndarray) -> np.ndarray:
        """Insert rows; return a boolean mask of right-hand sides made inconsistent."""
        p = self.p
        if self.pivots:
            coeff = B[:, self.pivots]
            B = _mod(B - coeff @ self.P, p)
            BR = _mod(BR - coeff @ self.PR, p)
        live = np.flatnonzero(B.any(axis=0))
        M = B[:, live].astype(np.int64)
        R = BR.astype(np.int64)
        new_rows = []
        new_cols = []
        done = np.zeros(M.shape[0], dtype=bool)
        for i in range(M.shape[0]):
            nz = np.flatnonzero(M[i])
            if nz.size == 0:
                continue
            c = nz[0]
            inv = pow(int(M[i, c]), p - 2, p)
            if inv != 1:
                M[i] = M[i] * inv % p
                R[i] = R[i] * inv % p
            hit = np.flatnonzero(M[:, c])
            hit = hit[hit != i]
            if hit.size:
                f = M[hit, c][:, None]
                M[hit] = (M[hit] - f * M[i]) % p
                R[hit] = (R[hit] - f * R[i]) % p
            new_rows.append(i)
            new_cols.append(live[c])
            done[i] = True
        zero_rows = ~done
        bad = R[zero_rows].any(axis=0) if zero_rows.any() else np.zeros(R.shape[1], dtype=bool)
        if new_rows:
            N = np.zeros((len(new_rows), self.ncols))
            N[:, live] = M[new_rows]
            NR = R[new_rows]
            if self.pivots:
                coeff = self.P[:, new_cols]
                self.P = _mod(self.P - coeff @ N, p)
                self.PR = _mod(self.PR - coeff @ NR, p)
            self.P = np.vstack([self.P, N])
            self.PR = np.vstack([self.PR, NR])
            self.pivots.extend(int(c) for c in new_cols)
        return bad

    def solution(self, k: int) -> np.ndarray:
        x = np.zeros(self.ncols, dtype=np.int64)
        if self.pivots:
            x[self.pivots] = self.PR[:, k].astype(np.int64)
        return x


@dataclass
class SolveResult:
    """Either a solution column (``solution``) or the first failing degree."""

    solution: SeriesMatrix | None
    failing_degree: int | None
    prec: int

    @property
    def ok(self) -> bool:
        return self.solution is not None

    def __bool__(self) -> bool:
        return self.ok


def solve_many(A: SeriesMatrix, rhs: list[SeriesMatrix], prec: int | None = None) -> list[SolveResult]:
    """Solve A x = b for several columns b at once, modulo degree prec + 1."""
    ctx = A.ctx
    for b in rhs:
        if b.ctx != ctx:
            raise ContextMismatch("right-hand side lives in another ring")
        if b.shape != (A.nrows, 1):
            raise DimensionMismatch(f"right-hand side must be a {A.nrows}x1 column")
    common = min([A.prec] + [b.prec for b in rhs])
    if prec is None:
        prec = common
    if prec > common:
        raise PrecisionTooLow("solve precision exceeds the data precision", needed=prec)
    F = ctx.field
    p, m = F.p, F.m
    r, c = A.shape
    if prec < 0:
        return [SolveResult(SeriesMatrix.zeros(ctx, c, 1), None, prec) for _ in rhs]

    monos = ctx.monomials(prec)
    index = {e: i for i, e in enumerate(monos)}
    by_degree: list[list] = [[] for _ in range(prec + 1)]
    for e in monos:
        by_degree[sum(e)].append(e)
    local = {e: k for n in range(prec + 1) for k, e in enumerate(by_degree[n])}
    nmon = len(monos)
    ncols = c * nmon * m

    def col(j: int, mu: int) -> int:
        # unknown coordinates are laid out monomial-major
        return (mu * c + j) * m

    mats = F._mult_matrices if m > 1 else None
    terms = [(i, j, alpha, sum(alpha), coef) for i, arow in enumerate(A.rows)
             for j, a in enumerate(arow) for alpha, coef in a.coeffs.items() if sum(alpha) <= prec]
    rhs_terms = [(k, i, nu, coef) for k, b in enumerate(rhs) for i in range(r)
                 for nu, coef in b.rows[i][0].coeffs.items() if sum(nu) <= prec]

    def block(n: int) -> tuple[np.ndarray, np.ndarray]:
        # equations for the coefficients of degree n: sum over alpha + mu = nu
        size = len(by_degree[n])
        B = np.zeros((r * size * m, ncols))
        for i, j, alpha, da, coef in terms:
            if da > n:
                continue
            for mu in by_degree[n - da]:
                nu = tuple(x + y for x, y in zip(mu, alpha))
                row = (i * size + local[nu]) * m
                cc = col(j, index[mu])
                if m == 1:
                    B[row, cc] += coef
                else:
                    B[row:row + m, cc:cc + m] += mats[coef]
        BR = np.zeros((r * size * m, len(rhs)))
        for k, i, nu, coef in rhs_terms:
            if sum(nu) == n:
                row = (i * size + local[nu]) * m
                BR[row:row + m, k] = F.coordinates(coef)
        return _mod(B, p), _mod(BR, p)

    elim = _GradedEliminator(ncols, len(rhs), p)
    failing: list[int | None] = [None] * len(rhs)
    for n in range(prec + 1):
        bad = elim.add_block(*block(n))
        for k in np.flatnonzero(bad):
            if failing[k] is None:
                failing[k] = n
        if all(f is not None for f in failing):
            break

    results = []
    for k in range(len(rhs)):
        if failing[k] is not None:
            results.append(SolveResult(None, failing[k], prec))
            continue
        x = elim.solution(k)
        cols = []
        for j in range(c):
            coeffs = {}
            for mu_i, mu in enumerate(monos):
                base = col(j, mu_i)
                code = F.from_coordinates(x[base:base + m]) if m > 1 else int(x[base])
                if code:
                    coeffs[mu] = code
            cols.append([Series(ctx, coeffs, prec)])
        results.append(SolveResult(SeriesMatrix(ctx, cols), None, prec))
    return results


def solve_linear(A: SeriesMatrix, b: SeriesMatrix, prec: int | None = None) -> SolveResult:
    """Decide A x = b modulo degree prec + 1; NoSolution carries the first bad degree."""
    return solve_many(A, [b], prec)[0]


def unit_column(ctx: RingContext, n: int, i: int, entry: Series | None = None) -> SeriesMatrix:
    entry = ctx.one() if entry is None else entry
    return SeriesMatrix(ctx, [[entry if k == i else ctx.zero()] for k in range(n)])


@dataclass
class AnnihilationResult:
    certified: bool
    refuted_degree: int | None
    prec: int
    witnesses: list[SeriesMatrix] | None = None

    def __bool__(self) -> bool:
        return self.certified


def coker_annihilated_by(A: SeriesMatrix, f: Series, prec: int | None = None) -> AnnihilationResult:
    """Is f * e_i in the image of A for every basis vector e_i (at working precision)?"""
    if A.nrows != A.ncols:
        raise DimensionMismatch("annihilation test needs a square matrix")
    if prec is None:
        prec = min(A.prec, f.prec)
    rhs = [unit_column(A.ctx, A.nrows, i, f) for i in range(A.nrows)]
    results = solve_many(A, rhs, prec)
    bad = [res.failing_degree for res in results if not res.ok]
    if bad:
        return AnnihilationResult(False, min(bad), prec)
    return AnnihilationResult(True, None, prec, [res.solution for res in results])


@dataclass
class FiniteLengthResult:
    finite: bool
    bound: int | None
    searched_up_to: int

    def __bool__(self) -> bool:
        return self.finite


def coker_finite_length(U: SeriesMatrix, prec: int | None = None) -> FiniteLengthResult:
    """Least n0 with (T1..Td)^n0 * target inside the image of U, searched up to prec // 2.

    A success at working precision P with n0 <= P is exact: the degree-n0 part
    of the target then lies in im(U) + m * (that part), and Nakayama removes the
    error term.  So the precision is doubled from a small start and the first
    success is final.
    """
    ctx = U.ctx
    if prec is None:
        prec = U.prec
    work = min(prec, 2)
    while True:
        found = _least_power_in_image(U, work)
        if found is not None:
            return FiniteLengthResult(True, found, work // 2)
        if work >= prec:
            return FiniteLengthResult(False, None, prec // 2)
        work = min(prec, 2 * work)


def _least_power_in_image(U: SeriesMatrix, prec: int) -> int | None:
    ctx = U.ctx
    budget = prec // 2
    targets = []
    for n in range(budget + 1):
        for mu in ctx.monomials(n, n):
            for i in range(U.nrows):
                targets.append((n, unit_column(ctx, U.nrows, i, ctx.monomial(mu))))
    results = solve_many(U, [t for _, t in targets], prec)
    ok_by_degree = [True] * (budget + 1)
    for (n, _), res in zip(targets, results):
        if not res.ok:
            ok_by_degree[n] = False
    return next((n for n in range(budget + 1) if ok_by_degree[n]), None)


# -- reductions modulo the maximal ideal ----------------------------------------

def rank_mod_p(M: np.ndarray, p: int) -> int:
    M = np.array(M, dtype=np.int64) % p
    rank = 0
    rows, cols = M.shape
    for c in range(cols):
        piv = next((i for i in range(rank, rows) if M[i, c]), None)
        if piv is None:
            continue
        M[[rank, piv]] = M[[piv, rank]]
        M[rank] = M[rank] * pow(int(M[rank, c]), p - 2, p) % p
        for i in range(rows):
            if i != rank and M[i, c]:
                M[i] = (M[i] - M[i, c] * M[rank]) % p
        rank += 1
        if rank == rows:
            break
    return rank


def rank_over_field(F: GroundField, rows: list[list[int]]) -> int:
    """Rank of a matrix of field codes (via its F_p expansion)."""
    if not rows or not rows[0]:
        return 0
    if F.m == 1:
        return rank_mod_p(np.array(rows), F.p)
    big = np.block([[F.mult_matrix(a) for a in r] for r in rows])
    return rank_mod_p(big, F.p) // F.m


def is_surjective(U: SeriesMatrix) -> bool:
    """Nakayama: U is onto iff its reduction mod the maximal ideal has full row rank."""
    return rank_over_field(U.field, U.mod_maximal()) == U.nrows


def _kmat_mul(F: GroundField, X: list[list[int]], Y: list[list[int]]) -> list[list[int]]:
    out = []
    for r in X:
        row = []
        for j in range(len(Y[0])):
            acc = 0
            for k, a in enumerate(r):
                if a and Y[k][j]:
                    acc = F.add(acc, F.mul(a, Y[k][j]))
            row.append(acc)
        out.append(row)
    return out


def nilpotent_mod_maximal(A: SeriesMatrix) -> bool:
    """Twisted nilpotence of A mod (T): sigma^{s-1}(A0) ... sigma(A0) A0 = 0 for some s <= r*m."""
    if A.nrows != A.ncols:
        raise DimensionMismatch("nilpotence needs a square matrix")
    F = A.field
    A0 = A.mod_maximal()
    current = [row[:] for row in A0]
    twisted = A0
    for _ in range(A.nrows * F.m):
        if not any(any(row) for row in current):
            return True
        twisted = [[F.frob(a) for a in row] for row in twisted]
        current = _kmat_mul(F, twisted, current)
    return not any(any(row) for row in current)
