"""Finite abelian groups given by cyclic factor moduli.

Elements are plain tuples of residues. Characters are labelled by group
elements through a fixed pairing, so no separate dual group is kept.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import prod

Element = tuple[int, ...]


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``n >= 1`` by trial division."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


@dataclass(frozen=True)
class AbelianGroup:
    moduli: tuple[int, ...] = ()
    _elements: tuple[Element, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        mods = tuple(int(q) for q in self.moduli)
        for q in mods:
            if q < 1:
                raise ValueError(f"group modulus must be positive, got {q}")
        object.__setattr__(self, "moduli", mods)
        elems = tuple(itertools.product(*(range(q) for q in mods)))
        object.__setattr__(self, "_elements", elems)

    @property
    def order(self) -> int:
        return prod(self.moduli)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def canonical(self) -> bool:
        return all(b % a == 0 for a, b in zip(self.moduli, self.moduli[1:]))

    @cached_property
    def normalized(self) -> "AbelianGroup":
        """Isomorphic group whose moduli form a divisibility chain q1 | q2 | ...

        Prime powers of every factor are merged into elementary divisors;
        factors equal to 1 are dropped.
        """
        powers: dict[int, list[int]] = {}
        for q in self.moduli:
            for p, e in factorize(q).items():
                powers.setdefault(p, []).append(e)
        for exps in powers.values():
            exps.sort(reverse=True)
        r = max((len(e) for e in powers.values()), default=0)
        inv = []
        for k in range(r):
            inv.append(prod(p ** e[k] for p, e in powers.items() if k < len(e)))
        return AbelianGroup(tuple(reversed(inv)))

    @property
    def spec(self) -> str:
        return format_group_spec(self)

    def elements(self) -> list[Element]:
        return list(self._elements)

    @property
    def zero(self) -> Element:
        return (0,) * self.rank

    def contains(self, x) -> bool:
        return (
            isinstance(x, tuple)
            and len(x) == self.rank
            and all(isinstance(c, int) and 0 <= c < q for c, q in zip(x, self.moduli))
        )

    def check(self, x) -> Element:
        if not self.contains(x):
            raise ValueError(f"{x!r} is not an element of Z/{self.moduli}")
        return x

    def element(self, *coords: int) -> Element:
        """Element from (possibly unreduced) integer coordinates."""
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(coords)}")
        return tuple(c % q for c, q in zip(coords, self.moduli))

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % q for a, b, q in zip(x, y, self.moduli))

    def neg(self, x: Element) -> Element:
        return tuple(-a % q for a, q in zip(x, self.moduli))

    def scale(self, k: int, x: Element) -> Element:
        return tuple(k * a % q for a, q in zip(x, self.moduli))

    def element_order(self, x: Element) -> int:
        k = 1
        y = x
        while y != self.zero:
            y = self.add(y, x)
            k += 1
        return k

    def pairing(self, lam: Element, sigma: Element) -> int:
        """Exponent of zeta_n in the value of character ``lam`` at ``sigma``."""
        self.check(lam)
        self.check(sigma)
        n = self.order
        return sum((n // q) * a * b for a, b, q in zip(lam, sigma, self.moduli)) % n

    def subgroup_elements(self, factors) -> list[Element]:
        """Elements supported on the selected coordinate factors (1-based)."""
        sel = set(factors)
        for i in sel:
            if not (isinstance(i, int) and 1 <= i <= self.rank):
                raise ValueError(f"factor index {i!r} out of range 1..{self.rank}")
        ranges = [range(q) if i + 1 in sel else range(1) for i, q in enumerate(self.moduli)]
        return list(itertools.product(*ranges))


def make_group(moduli) -> AbelianGroup:
    return AbelianGroup(tuple(moduli))


def parse_group_spec(text: str) -> AbelianGroup:
    """Parse ``"q1xq2x...xqr"``, e.g. ``"2x4"``; case-insensitive, no whitespace."""
    if not isinstance(text, str) or not text:
        raise ValueError("empty group spec")
    parts = text.lower().split("x")
    mods = []
    for part in parts:
        if not (part.isascii() and part.isdigit()):
            raise ValueError(f"bad group spec {text!r}")
        q = int(part)
        if q < 1:
            raise ValueError(f"bad group spec {text!r}: moduli must be positive")
        mods.append(q)
    if mods == [1]:
        return AbelianGroup(())
    return AbelianGroup(tuple(mods))


def format_group_spec(group: AbelianGroup) -> str:
    if not group.moduli:
        return "1"
    return "x".join(str(q) for q in group.moduli)


def partitions(k: int, largest: int | None = None):
    if largest is None:
        largest = k
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in partitions(k - first, first):
            yield (first,) + rest


def abelian_groups_of_order(n: int) -> list[AbelianGroup]:
    """All abelian groups of order ``n`` up to isomorphism, in canonical form."""
    if n == 1:
        return [AbelianGroup(())]
    fac = sorted(factorize(n).items())
    groups = []
    for choice in itertools.product(*(list(partitions(e)) for _, e in fac)):
        r = max(len(c) for c in choice)
        inv = []
        for k in range(r):
            inv.append(prod(p ** c[k] for (p, _), c in zip(fac, choice) if k < len(c)))
        groups.append(AbelianGroup(tuple(reversed(inv))))
    groups.sort(key=lambda g: (len(g.moduli), g.moduli))
    return groups
