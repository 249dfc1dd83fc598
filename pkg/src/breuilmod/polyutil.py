"""Dense univariate polynomials over a finite field (coefficient lists, low degree first)."""

from __future__ import annotations

from .field import GroundField

Poly = list[int]


def trim(a: Poly) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a: Poly) -> int:
    return len(trim(a)) - 1


def add(F: GroundField, a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return trim([F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)])


def sub(F: GroundField, a: Poly, b: Poly) -> Poly:
    return add(F, a, [F.neg(c) for c in b])


def mul(F: GroundField, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(out)


def divmod_poly(F: GroundField, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = F.inv(b[-1])
    q = [0] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    for k in range(len(a) - len(b), -1, -1):
        c = F.mul(r[k + len(b) - 1], inv)
        q[k] = c
        if c:
            for j, y in enumerate(b):
                r[k + j] = F.sub(r[k + j], F.mul(c, y))
    return trim(q), trim(r)


def monic(F: GroundField, a: Poly) -> Poly:
    a = trim(a)
    if not a:
        return a
    inv = F.inv(a[-1])
    return [F.mul(c, inv) for c in a]


def gcd(F: GroundField, a: Poly, b: Poly) -> Poly:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_poly(F, a, b)[1]
    return monic(F, a)


def derivative(F: GroundField, a: Poly) -> Poly:
    return trim([F.mul(F.from_int(i), c) for i, c in enumerate(a)][1:])


def pth_root(F: GroundField, a: Poly) -> Poly:
    """Inverse Frobenius of a polynomial in x^p (zero derivative)."""
    p = F.p
    if any(c for i, c in enumerate(a) if i % p):
        raise ValueError("not a p-th power")
    return trim([F.frob_inv(a[i]) for i in range(0, len(a), p)])


def squarefree_decomposition(F: GroundField, a: Poly) -> list[tuple[Poly, int]]:
    """Monic squarefree factors with multiplicities, valid in characteristic p."""
    a = monic(F, a)
    if deg(a) <= 0:
        return []
    out = []
    c = gcd(F, a, derivative(F, a))
    w = divmod_poly(F, a, c)[0]
    i = 1
    while deg(w) > 0:
        y = gcd(F, w, c)
        z = divmod_poly(F, w, y)[0]
        if deg(z) > 0:
            out.append((z, i))
        i += 1
        w = y
        c = divmod_poly(F, c, y)[0]
    if deg(c) > 0:
        for g, k in squarefree_decomposition(F, pth_root(F, c)):
            out.append((g, k * F.p))
    return out
