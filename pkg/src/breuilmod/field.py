"""Finite fields F_{p^m} with the Frobenius automorphism.

Elements are encoded as integers ``0 <= code < q``: the base-``p`` digits of the
code are the coordinates in the power basis ``1, w, ..., w^(m-1)`` of the
generator ``w`` (a root of the modulus).  The series and matrix layers work on
these raw codes; :class:`FieldElement` is the user-facing wrapper.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import CompositeP, DivisionByZero, ReducibleModulus


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


# -- dense polynomials over F_p, coefficient lists low -> high -----------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return a


def _monic_polys(degree: int, p: int):
    """Monic polynomials of the given degree, lower coefficients in code order."""
    for code in range(p ** degree):
        low = [(code // p ** i) % p for i in range(degree)]
        yield low + [1]


def is_irreducible(poly: list[int], p: int) -> bool:
    """Irreducibility over F_p by trial division with all monic factors of degree <= m/2."""
    poly = _trim([c % p for c in poly])
    m = len(poly) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    for deg in range(1, m // 2 + 1):
        for f in _monic_polys(deg, p):
            if not _poly_mod(poly, f, p):
                return False
    return True


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """First monic irreducible of degree m, scanning lower coefficients in code order."""
    for f in _monic_polys(m, p):
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # impossible for a prime p


class GroundField:
    """The finite field F_{p^m} = F_p[w]/(modulus)."""

    # extension fields keep dense add/mul tables up to this order
    TABLE_LIMIT = 2048

    def __init__(self, p: int, m: int = 1, modulus=None):
        if not is_prime(p):
            raise CompositeP(f"{p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.m = m
        self.q = p ** m
        if modulus is None:
            modulus = default_modulus(p, m) if m > 1 else (0, 1)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != m + 1 or modulus[-1] != 1:
                raise ReducibleModulus(f"modulus must be monic of degree {m}")
            if not is_irreducible(list(modulus), p):
                raise ReducibleModulus(f"modulus {modulus} is reducible over F_{p}")
        self.modulus = tuple(modulus)
        if m > 1:
            if self.q > self.TABLE_LIMIT:
                raise ValueError(f"extension fields are limited to order <= {self.TABLE_LIMIT}")
            self._build_tables()

    # -- construction ---------------------------------------------------------

    def _build_tables(self) -> None:
        p, m, q = self.p, self.m, self.q
        digits = [tuple((c // p ** i) % p for i in range(m)) for c in range(q)]
        self._digits = digits
        weights = [p ** i for i in range(m)]

        def encode(vec) -> int:
            return sum((v % p) * w for v, w in zip(vec, weights))

        def polymul(a, b):
            prod = [0] * (2 * m - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        prod[i + j] = (prod[i + j] + x * y) % p
            rem = _poly_mod(prod, list(self.modulus), p)
            return rem + [0] * (m - len(rem))

        # primitive element: smallest code of multiplicative order q - 1
        for g in range(2, q):
            exp = [1]
            cur = digits[g]
            while encode(cur) != 1:
                exp.append(encode(cur))
                cur = polymul(cur, digits[g])
            if len(exp) == q - 1:
                break
        else:  # pragma: no cover
            raise AssertionError("no primitive element")
        self.primitive = g
        self._exp = exp + exp  # doubled to skip a modulo in mul
        log = [0] * q
        for i, c in enumerate(exp):
            log[c] = i
        self._log = log
        add = np.zeros((q, q), dtype=np.int32)
        darr = np.array(digits, dtype=np.int64)
        w = np.array(weights, dtype=np.int64)
        for a in range(q):
            add[a] = ((darr[a] + darr) % p) @ w
        self._add = add.tolist()
        neg = ((-darr) % p) @ w
        self._neg = neg.tolist()

    # -- raw-code arithmetic --------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        return self._add[a][b]

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def power(self, a: int, n: int) -> int:
        if n == 0:
            return 1
        if a == 0:
            return 0
        if n < 0:
            a, n = self.inv(a), -n
        if self.m == 1:
            return pow(a, n, self.p)
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def frob(self, a: int) -> int:
        """a -> a^p."""
        if self.m == 1:
            return a
        if a == 0:
            return 0
        return self._exp[(self._log[a] * self.p) % (self.q - 1)]

    def frob_inv(self, a: int) -> int:
        """The unique p-th root (the field is perfect)."""
        for _ in range(self.m - 1):
            a = self.frob(a)
        return a

    def from_int(self, n: int) -> int:
        """Image of an integer in the prime field."""
        return n % self.p

    def coordinates(self, a: int) -> tuple[int, ...]:
        if self.m == 1:
            return (a,)
        return self._digits[a]

    def from_coordinates(self, coords) -> int:
        coords = list(coords) + [0] * (self.m - len(coords))
        return sum((int(c) % self.p) * self.p ** i for i, c in enumerate(coords[: self.m]))

    @property
    def generator(self) -> int:
        """Code of w (m > 1) or of 1 (prime field)."""
        return self.p if self.m > 1 else 1

    @cached_property
    def primitive_element(self) -> int:
        if self.m > 1:
            return self.primitive
        if self.p == 2:
            return 1
        for g in range(2, self.p):
            if all(pow(g, (self.p - 1) // r, self.p) != 1 for r in _prime_factors(self.p - 1)):
                return g
        raise AssertionError

    def scan_order(self) -> list[int]:
        """All elements: 0 first, then powers of the primitive element."""
        out = [0]
        g = self.primitive_element
        x = 1
        for _ in range(self.q - 1):
            out.append(x)
            x = self.mul(x, g)
        return out

    def mult_matrix(self, a: int) -> np.ndarray:
        """Matrix over F_p of multiplication by a on the coordinate space."""
        return self._mult_matrices[a]

    @cached_property
    def _mult_matrices(self) -> list[np.ndarray]:
        m = self.m
        basis = [self.p ** i for i in range(m)]
        mats = []
        for a in range(self.q):
            cols = [self.coordinates(self.mul(a, b)) for b in basis]
            mats.append(np.array(cols, dtype=np.int64).T)
        return mats

    # -- user-facing ----------------------------------------------------------

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("element belongs to another field")
            return value
        if isinstance(value, (list, tuple)):
            return FieldElement(self, self.from_coordinates(value))
        return FieldElement(self, self.from_int(int(value)))

    def element(self, code: int) -> "FieldElement":
        return FieldElement(self, code)

    @property
    def w(self) -> "FieldElement":
        return FieldElement(self, self.generator)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, c) for c in range(self.q)]

    def format_code(self, a: int) -> str:
        """Integer for m = 1, polynomial in w otherwise (e.g. ``2*w+1``)."""
        if self.m == 1:
            return str(a)
        terms = []
        for i, c in reversed(list(enumerate(self.coordinates(a)))):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "w" if i == 1 else f"w^{i}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms) if terms else "0"

    def extension(self, k: int) -> tuple["GroundField", list[int]]:
        """Degree-k extension together with the embedding table code -> code."""
        big = GroundField(self.p, self.m * k)
        if self.m == 1:
            return big, list(range(self.p))
        # find a root of our modulus in the big field
        for r in range(big.q):
            acc = 0
            x = 1
            for c in self.modulus:
                acc = big.add(acc, big.mul(big.from_int(c), x))
                x = big.mul(x, r)
            if acc == 0:
                root = r
                break
        else:  # pragma: no cover - an irreducible of degree m always splits in F_{p^{mk}}
            raise AssertionError("modulus has no root in the extension")
        table = []
        for code in range(self.q):
            acc = 0
            x = 1
            for c in self.coordinates(code):
                acc = big.add(acc, big.mul(big.from_int(c), x))
                x = big.mul(x, root)
            table.append(acc)
        return big, table

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroundField)
            and self.p == other.p
            and self.m == other.m
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={self.modulus})"


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def make_field(p: int, m: int = 1, modulus=None) -> GroundField:
    """Build F_{p^m}; without a modulus the first irreducible in code order is used."""
    return GroundField(p, m, modulus)


@dataclass(frozen=True)
class FieldElement:
    field: GroundField
    code: int

    @property
    def coordinates(self) -> tuple[int, ...]:
        return self.field.coordinates(self.code)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.code
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.code, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(b, self.code))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.code, b))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.code, self.field.inv(b)))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.power(self.code, n))

    def frobenius(self) -> "FieldElement":
        return FieldElement(self.field, self.field.frob(self.code))

    def is_zero(self) -> bool:
        return self.code == 0

    def __bool__(self) -> bool:
        return self.code != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == self.field.from_int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.code))

    def __str__(self) -> str:
        return self.field.format_code(self.code)

    def __repr__(self) -> str:
        return f"FieldElement({self}, {self.field!r})"


def frobenius_elem(a: FieldElement) -> FieldElement:
    return a.frobenius()



def all_small_fields(max_q: int = 25):
    """Every (p, m) with p^m <= max_q, default moduli.  Used by exhaustive checks."""
    out = []
    for p in range(2, max_q + 1):
        if not is_prime(p):
            continue
        for m in itertools.count(1):
            if p ** m > max_q:
                break
            out.append(GroundField(p, m))
    return out
