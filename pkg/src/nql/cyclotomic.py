"""Exact arithmetic in Z[zeta_n] = Z[T] / Phi_n(T).

Values are kept as integer coefficient vectors of length phi(n), the unique
remainder modulo the n-th cyclotomic polynomial, so equality and the zero
test are plain comparisons of integer tuples.
"""

from __future__ import annotations

import cmath
import threading
from dataclasses import dataclass

from .errors import InexactDivision

Poly = tuple[int, ...]


def trim(coeffs) -> Poly:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_mul(a, b) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def poly_divmod(a, b) -> tuple[Poly, Poly]:
    """Division by a monic integer polynomial ``b``."""
    b = trim(b)
    if not b or b[-1] != 1:
        raise ValueError("divisor must be monic")
    rem = list(trim(a))
    db = len(b) - 1
    if len(rem) <= db:
        return (), tuple(rem)
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if c:
            quot[k - db] = c
            for j in range(db + 1):
                rem[k - db + j] -= c * b[j]
    return trim(quot), trim(rem[:db])


def poly_exact_div(a, b) -> Poly:
    q, r = poly_divmod(a, b)
    if r:
        raise InexactDivision(f"{b} does not divide {a}")
    return q


_PHI_CACHE: dict[int, Poly] = {}
_PHI_LOCK = threading.Lock()


def cyclotomic_polynomial(n: int) -> Poly:
    """Phi_n as a coefficient tuple (index = degree).

    Computed as (T^n - 1) divided exactly by Phi_d for every proper divisor d.
    """
    if n < 1:
        raise ValueError(f"cyclotomic index must be positive, got {n}")
    cached = _PHI_CACHE.get(n)
    if cached is not None:
        return cached
    num: Poly = (-1,) + (0,) * (n - 1) + (1,)
    for d in range(1, n):
        if n % d == 0:
            num = poly_exact_div(num, cyclotomic_polynomial(d))
    with _PHI_LOCK:
        _PHI_CACHE.setdefault(n, num)
    return _PHI_CACHE[n]


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def _mod_phi(coeffs, n: int) -> tuple[int, ...]:
    phi = cyclotomic_polynomial(n)
    _, r = poly_divmod(coeffs, phi)
    deg = len(phi) - 1
    return tuple(r) + (0,) * (deg - len(r))


@dataclass(frozen=True)
class CyclotomicInt:
    n: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"modulus must be positive, got {self.n}")
        if len(self.coeffs) != euler_phi(self.n):
            raise ValueError("coefficient vector is not in canonical form")

    @classmethod
    def from_poly(cls, coeffs, n: int) -> "CyclotomicInt":
        return cls(n, _mod_phi(coeffs, n))

    @classmethod
    def from_cyclic(cls, hist, n: int) -> "CyclotomicInt":
        """Reduce an element of Z[T]/(T^n - 1), given as ``n`` coefficients."""
        if len(hist) != n:
            raise ValueError(f"expected {n} coefficients, got {len(hist)}")
        return cls.from_poly(hist, n)

    @classmethod
    def zero(cls, n: int) -> "CyclotomicInt":
        return cls(n, (0,) * euler_phi(n))

    @classmethod
    def integer(cls, k: int, n: int) -> "CyclotomicInt":
        return cls.from_poly((k,), n)

    @classmethod
    def one(cls, n: int) -> "CyclotomicInt":
        return cls.integer(1, n)

    def _same(self, other: "CyclotomicInt"):
        if not isinstance(other, CyclotomicInt):
            return NotImplemented
        if other.n != self.n:
            raise ValueError(f"modulus mismatch: {self.n} vs {other.n}")
        return other

    def __add__(self, other):
        if isinstance(other, int):
            other = CyclotomicInt.integer(other, self.n)
        other = self._same(other)
        if other is NotImplemented:
            return other
        return CyclotomicInt(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInt(self.n, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = CyclotomicInt.integer(other, self.n)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicInt(self.n, tuple(other * a for a in self.coeffs))
        other = self._same(other)
        if other is NotImplemented:
            return other
        return CyclotomicInt.from_poly(poly_mul(self.coeffs, other.coeffs), self.n)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = CyclotomicInt.one(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def exact_div(self, k: int) -> "CyclotomicInt":
        if k == 0 or any(c % k for c in self.coeffs):
            raise InexactDivision(f"{self} is not divisible by {k}")
        return CyclotomicInt(self.n, tuple(c // k for c in self.coeffs))

    def galois(self, k: int) -> "CyclotomicInt":
        """Image under the automorphism zeta -> zeta^k (gcd(k, n) = 1)."""
        from math import gcd

        if gcd(k, self.n) != 1:
            raise ValueError(f"{k} is not a unit mod {self.n}")
        hist = [0] * self.n
        for i, c in enumerate(self.coeffs):
            hist[i * k % self.n] += c
        return CyclotomicInt.from_cyclic(hist, self.n)

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.n)
        return sum(c * z**i for i, c in enumerate(self.coeffs))

    def to_dict(self) -> dict:
        return {"n": self.n, "coeffs": list(self.coeffs)}

    @classmethod
    def from_dict(cls, d: dict) -> "CyclotomicInt":
        return cls(int(d["n"]), tuple(int(c) for c in d["coeffs"]))

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            z = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not z:
                terms.append(str(c))
            elif c == 1:
                terms.append(z)
            elif c == -1:
                terms.append("-" + z)
            else:
                terms.append(f"{c}*{z}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def zeta_pow(n: int, k: int) -> CyclotomicInt:
    hist = [0] * n
    hist[k % n] = 1
    return CyclotomicInt.from_cyclic(hist, n)


def reduce_mod_cyclotomic(p, n: int) -> CyclotomicInt:
    """Remainder of the integer polynomial ``p`` modulo Phi_n; zero iff Phi_n | p."""
    return CyclotomicInt.from_poly(p, n)
