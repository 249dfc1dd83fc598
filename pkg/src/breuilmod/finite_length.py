"""Finite-length modules C = sum_j S/a_j with a_j monomial, and maps phi: C -> C^(sigma).

The twist of S/a is S/a^(p), where a^(p) is generated by the p-th powers of
the generators.  Everything here is exact: the modules are finite-dimensional
over k and membership questions become ranks over F_p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product

import numpy as np

from .errors import BudgetExceeded, IllFormedPresentation, PrecisionTooLow
from .series import MonomialIdeal, Series, monomial_ideal_membership


def critical_ideal(p: int) -> MonomialIdeal:
    """(T1^p, T2^p, T1^(p-1) T2^(p-1)) in two variables."""
    return MonomialIdeal([(p, 0), (0, p), (p - 1, p - 1)], 2)


@dataclass
class FiniteLengthPair:
    """C = sum_j S/summands[j]; phi[i][j] is the i-th component of phi(e_j), a dict monomial -> F_p code."""

    p: int
    summands: list[MonomialIdeal]
    phi: list[list[dict]]

    @property
    def twisted(self) -> list[MonomialIdeal]:
        return [a.frobenius_power(self.p) for a in self.summands]

    def is_zero(self) -> bool:
        return all(a.is_unit() for a in self.summands)

    def length(self) -> int:
        return sum(a.colength() for a in self.summands)


def _mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _check_well_defined(P: FiniteLengthPair) -> None:
    tw = P.twisted
    n = len(P.summands)
    if len(P.phi) != n or any(len(r) != n for r in P.phi):
        raise IllFormedPresentation("phi must be square with one row and column per summand")
    for i in range(n):
        for j, a in enumerate(P.summands):
            for g in a.gens:
                for mu in P.phi[i][j]:
                    if not tw[i].contains(_mono_mul(g, mu)):
                        raise IllFormedPresentation(
                            f"phi does not respect the relation {g} of summand {j} in component {i}")


def _rank_mod_p(M: np.ndarray, p: int) -> int:
    M = M.copy() % p
    rank = 0
    rows, cols = M.shape
    for c in range(cols):
        if rank == rows:
            break
        nz = np.flatnonzero(M[rank:, c])
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            M[[rank, piv]] = M[[piv, rank]]
        M[rank] = M[rank] * pow(int(M[rank, c]), p - 2, p) % p
        col = M[:, c].copy()
        col[rank] = 0
        M = (M - np.outer(col, M[rank])) % p
        rank += 1
    return rank


class _Layout:
    """Coordinates of C^(sigma) as an F_p space: one slot per (summand, standard monomial)."""

    def __init__(self, p: int, summands: list[MonomialIdeal], hbar: Series):
        self.p = p
        self.tw = [a.frobenius_power(p) for a in summands]
        self.std = [b.standard_monomials() for b in self.tw]
        self.index = {}
        for i, mons in enumerate(self.std):
            for mu in mons:
                self.index[(i, mu)] = len(self.index)
        self.dim = len(self.index)
        self.multipliers = sorted({mu for mons in self.std for mu in mons},
                                  key=lambda e: (sum(e), tuple(-x for x in e)))
        F = hbar.field
        for b in self.tw:
            if b.max_complement_degree() > hbar.prec:
                raise PrecisionTooLow("hbar is not known far enough to reduce modulo the twisted summands",
                                      needed=b.max_complement_degree())
        self.m = F.m
        # h e_i, one F_p vector per field coordinate
        self.targets = []
        for i, b in enumerate(self.tw):
            red = b.reduce(hbar.coeffs)
            vecs = np.zeros((F.m, self.dim), dtype=np.int64)
            for mu, c in red.items():
                vecs[:, self.index[(i, mu)]] = F.coordinates(c)
            self.targets.extend(v for v in vecs if v.any())

    def slot(self, i: int, mono):
        if self.tw[i].contains(mono):
            return None
        return self.index[(i, mono)]


def _image_rows(layout: _Layout, phi: list[list[dict]]) -> np.ndarray:
    n = len(phi)
    rows = []
    for j in range(n):
        for nu in layout.multipliers:
            v = np.zeros(layout.dim, dtype=np.int64)
            for i in range(n):
                for mu, c in phi[i][j].items():
                    s = layout.slot(i, _mono_mul(nu, mu))
                    if s is not None:
                        v[s] = (v[s] + c) % layout.p
            if v.any():
                rows.append(v)
    return np.array(rows, dtype=np.int64).reshape(-1, layout.dim)


def _targets_in_span(layout: _Layout, rows: np.ndarray) -> bool:
    if not layout.targets:
        return True
    T = np.array(layout.targets, dtype=np.int64)
    if rows.shape[0] == 0:
        return False
    r = _rank_mod_p(rows, layout.p)
    return _rank_mod_p(np.vstack([rows, T]), layout.p) == r


def validate_fl_pair(P: FiniteLengthPair, hbar: Series) -> bool:
    """Exact check that hbar * C^(sigma) lies in the image of phi."""
    _check_well_defined(P)
    if P.is_zero():
        return True
    layout = _Layout(P.p, P.summands, hbar)
    return _targets_in_span(layout, _image_rows(layout, P.phi))


def frobenius_socle_witness(hbar: Series) -> FiniteLengthPair | None:
    """For hbar in the critical ideal: C = S/(T1,T2) with phi(1) = T1^(p-1) T2^(p-1).

    The cokernel of phi is S/(T1^p, T2^p, T1^(p-1) T2^(p-1)), killed by hbar
    exactly when hbar lies in the critical ideal.  Returns None otherwise.
    """
    if hbar.ctx.d != 2:
        raise ValueError("the socle witness lives in two variables")
    p = hbar.ctx.p
    if not monomial_ideal_membership(hbar, critical_ideal(p)).is_in:
        return None
    pair = FiniteLengthPair(p, [MonomialIdeal([(1, 0), (0, 1)], 2)], [[{(p - 1, p - 1): 1}]])
    if not validate_fl_pair(pair, hbar):
        raise AssertionError("socle witness failed its own validation")
    return pair


# -- bounded search -----------------------------------------------------------

def staircase_ideals(n: int) -> list[MonomialIdeal]:
    """All monomial ideals of k[[T1,T2]] with colength n (one per partition of n)."""
    out = []

    def partitions(rest, cap):
        if rest == 0:
            yield []
            return
        for k in range(min(rest, cap), 0, -1):
            for tail in partitions(rest - k, k):
                yield [k] + tail

    for lam in partitions(n, n):
        std = {(i, j) for j, row in enumerate(lam) for i in range(row)}
        gens = []
        for j in range(len(lam) + 1):
            i = lam[j] if j < len(lam) else 0
            if (j == 0 or (i, j - 1) in std):
                gens.append((i, j))
        out.append(MonomialIdeal(gens, 2))
    return out


def search_precision(p: int, max_colength: int) -> int:
    """Precision of hbar needed to reduce modulo every twisted summand in the search."""
    # the worst staircase is (T1^n, T2), twisted to (T1^(pn), T2^p)
    return p * (max_colength + 1) - 2


@dataclass
class SearchResult:
    witness: FiniteLengthPair | None
    statistics: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.witness is not None


def _allowed_entries(p: int, a_i: MonomialIdeal, a_j: MonomialIdeal, max_degree: int):
    """Monomials mu (standard mod a_i^(p)) with a_j * mu inside a_i^(p), exponents <= max_degree."""
    b = a_i.frobenius_power(p)
    return [mu for mu in b.standard_monomials()
            if max(mu) <= max_degree and all(b.contains(_mono_mul(g, mu)) for g in a_j.gens)]


def search_finite_length_pairs(hbar: Series, max_colength: int = 4, max_degree: int = 3,
                               max_candidates: int = 2_000_000) -> SearchResult:
    """Exhaustive search for a nonzero pair (C, phi) whose cokernel is killed by hbar.

    C runs over direct sums of monomial quotients of total colength <= max_colength;
    each entry of phi is an F_p-combination of monomials whose exponents are all
    <= max_degree.  Configurations are tried by increasing colength and phi
    candidates in lexicographic order starting from zero, so the first witness
    is deterministic.
    """
    if hbar.ctx.d != 2:
        raise ValueError("the search is implemented in two variables")
    p = hbar.ctx.p
    by_size = {n: staircase_ideals(n) for n in range(1, max_colength + 1)}
    pool = [a for n in range(1, max_colength + 1) for a in by_size[n]]
    stats = {"configurations": 0, "pruned": 0, "candidates": 0}
    for r in range(1, max_colength + 1):
        for config in combinations_with_replacement(range(len(pool)), r):
            summands = [pool[k] for k in config]
            if sum(a.colength() for a in summands) > max_colength:
                continue
            stats["configurations"] += 1
            layout = _Layout(p, summands, hbar)
            slots = [(i, j, mu) for i in range(r) for j in range(r)
                     for mu in _allowed_entries(p, summands[i], summands[j], max_degree)]
            reachable = set()
            for i, _, mu in slots:
                for nu in layout.multipliers:
                    s = layout.slot(i, _mono_mul(nu, mu))
                    if s is not None:
                        reachable.add(s)
            if any(set(np.flatnonzero(t)) - reachable for t in layout.targets):
                stats["pruned"] += 1
                continue
            count = p ** len(slots)
            if stats["candidates"] + count > max_candidates:
                stats["blocked_configuration"] = [list(a.gens) for a in summands]
                raise BudgetExceeded("phi enumeration exceeds the candidate budget", dict(stats))
            for coeffs in product(range(p), repeat=len(slots)):
                stats["candidates"] += 1
                phi = [[{} for _ in range(r)] for _ in range(r)]
                for (i, j, mu), c in zip(slots, coeffs):
                    if c:
                        phi[i][j][mu] = c
                if _targets_in_span(layout, _image_rows(layout, phi)):
                    pair = FiniteLengthPair(p, summands, phi)
                    if not validate_fl_pair(pair, hbar):
                        raise AssertionError("search witness failed validation")
                    return SearchResult(pair, stats)
    return SearchResult(None, stats)
