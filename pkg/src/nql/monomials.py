"""Monomials, group actions on variables, orbit tables and prime compositions.

A variable is identified by a tuple of ints. For regular representations the
tuple is the group element indexing the basis vector; eigen-variables with
several copies of a character append the copy index.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import comb

from .groups import AbelianGroup, Element, is_prime

Var = tuple[int, ...]


@dataclass(frozen=True, order=False)
class Monomial:
    """Sparse exponent map, stored as sorted ``(var, exp)`` pairs with exp > 0."""

    terms: tuple[tuple[Var, int], ...] = ()

    def __post_init__(self):
        merged: dict[Var, int] = {}
        for v, e in self.terms:
            if e < 0:
                raise ValueError(f"negative exponent for {v}")
            merged[tuple(v)] = merged.get(tuple(v), 0) + e
        terms = tuple(sorted((v, e) for v, e in merged.items() if e))
        object.__setattr__(self, "terms", terms)

    @classmethod
    def of(cls, exps) -> "Monomial":
        """From a mapping var -> exponent, or an iterable of vars (with repeats)."""
        if isinstance(exps, dict):
            return cls(tuple(exps.items()))
        return cls(tuple(Counter(tuple(v) for v in exps).items()))

    @classmethod
    def from_dense(cls, variables, exps) -> "Monomial":
        return cls(tuple(zip(variables, exps)))

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.terms)

    def exps(self) -> dict[Var, int]:
        return dict(self.terms)

    def exp(self, v: Var) -> int:
        for w, e in self.terms:
            if w == v:
                return e
        return 0

    def variables(self) -> list[Var]:
        return [v for v, _ in self.terms]

    def dense(self, variables) -> tuple[int, ...]:
        d = dict(self.terms)
        return tuple(d.get(v, 0) for v in variables)

    def support_multiset(self) -> list[Var]:
        return [v for v, e in self.terms for _ in range(e)]

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.terms + other.terms)

    def divides(self, other: "Monomial") -> bool:
        o = dict(other.terms)
        return all(o.get(v, 0) >= e for v, e in self.terms)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        d = dict(self.terms)
        for v, e in other.terms:
            d[v] -= e
        return Monomial(tuple(d.items()))

    def map_vars(self, f) -> "Monomial":
        return Monomial(tuple((f(v), e) for v, e in self.terms))

    def __str__(self):
        if not self.terms:
            return "1"
        return "*".join(f"X[{var_label(v)}]^{e}" for v, e in self.terms)

    def to_list(self) -> list[dict]:
        return [{"var": list(v), "exp": e} for v, e in self.terms]

    @classmethod
    def from_list(cls, items) -> "Monomial":
        return cls(tuple((tuple(int(c) for c in it["var"]), int(it["exp"])) for it in items))


def var_label(v: Var) -> str:
    return ",".join(str(c) for c in v)


def graded_lex_key(m: Monomial, variables) -> tuple:
    """Sort key: higher degree first, then larger exponent of earlier variables first."""
    return (-m.degree,) + tuple(-e for e in m.dense(variables))


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_monomials(variables, d: int) -> list[Monomial]:
    """All degree-``d`` monomials, graded-lex (X0^d first).

    ``variables`` is either a variable count m (variables ``(0,)..(m-1,)``)
    or an explicit ordered list of variables.
    """
    if isinstance(variables, int):
        if variables < 1:
            raise ValueError("need at least one variable")
        variables = [(i,) for i in range(variables)]
    variables = list(variables)
    if d < 0:
        raise ValueError("degree must be nonnegative")
    return [Monomial.from_dense(variables, c) for c in _compositions(d, len(variables))]


def count_monomials(m: int, d: int) -> int:
    return comb(m + d - 1, d)


@dataclass(frozen=True)
class PermAction:
    """G permuting a finite set of variables; ``perms[g][v]`` is g . v."""

    group: AbelianGroup
    variables: tuple[Var, ...]
    perms: dict = field(hash=False)

    def act(self, g: Element, m: Monomial) -> Monomial:
        p = self.perms[g]
        return m.map_vars(lambda v: p[v])

    def check_axioms(self) -> bool:
        G = self.group
        vs = set(self.variables)
        for g in G.elements():
            if sorted(self.perms[g][v] for v in self.variables) != sorted(self.variables):
                return False
        if any(self.perms[G.zero][v] != v for v in vs):
            return False
        for g in G.elements():
            for h in G.elements():
                gh = self.perms[G.add(g, h)]
                if any(gh[v] != self.perms[g][self.perms[h][v]] for v in vs):
                    return False
        return True


def regular_perm_action(group: AbelianGroup) -> PermAction:
    elems = group.elements()
    perms = {g: {t: group.add(g, t) for t in elems} for g in elems}
    return PermAction(group, tuple(elems), perms)


@dataclass(frozen=True)
class EigenAction:
    """Variables that are common eigenvectors; ``chars[v]`` is the weight of v."""

    group: AbelianGroup
    variables: tuple[Var, ...]
    chars: dict = field(hash=False)
    kind: str = "regular-eigen"

    def char(self, v: Var) -> Element:
        try:
            return self.chars[v]
        except KeyError:
            raise ValueError(f"unknown variable {v}") from None

    def multiplicities(self) -> dict[Element, int]:
        c = Counter(self.chars[v] for v in self.variables)
        return {g: c.get(g, 0) for g in self.group.elements()}


def regular_eigen_action(group: AbelianGroup) -> EigenAction:
    elems = group.elements()
    return EigenAction(group, tuple(elems), {g: g for g in elems})


def eigen_action_with_multiplicities(group: AbelianGroup, mults) -> EigenAction:
    """``mults[k]`` copies of the k-th character, characters in element order.

    Variables are ``char + (copy,)`` with copies numbered from 0.
    """
    elems = group.elements()
    mults = list(mults)
    if len(mults) != len(elems):
        raise ValueError(f"expected {len(elems)} multiplicities, got {len(mults)}")
    if any(m < 0 for m in mults):
        raise ValueError("multiplicities must be nonnegative")
    if all(m == 1 for m in mults):
        return regular_eigen_action(group)
    variables, chars = [], {}
    for g, m in zip(elems, mults):
        for i in range(m):
            v = g + (i,)
            variables.append(v)
            chars[v] = g
    if not variables:
        raise ValueError("representation has no variables")
    return EigenAction(group, tuple(variables), chars, kind="custom-eigen")


def weight(m: Monomial, action: EigenAction) -> Element:
    G = action.group
    w = G.zero
    for v, e in m.terms:
        w = G.add(w, G.scale(e, action.char(v)))
    return w


def character_multiset(m: Monomial, action: EigenAction) -> Counter:
    c: Counter = Counter()
    for v, e in m.terms:
        c[action.char(v)] += e
    return c


def invariant_monomials(action: EigenAction, d: int) -> list[Monomial]:
    zero = action.group.zero
    return [m for m in enumerate_monomials(action.variables, d) if weight(m, action) == zero]


@dataclass(frozen=True)
class Orbit:
    rep: Monomial
    members: tuple[Monomial, ...]

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class OrbitTable:
    action: PermAction
    degree: int
    orbits: tuple[Orbit, ...]

    def __len__(self):
        return len(self.orbits)

    def index_of(self, m: Monomial) -> int:
        for i, o in enumerate(self.orbits):
            if m in o.members:
                return i
        raise KeyError(m)


def orbit_decomposition(action: PermAction, d: int) -> OrbitTable:
    variables = action.variables
    monos = enumerate_monomials(variables, d)
    seen: set[Monomial] = set()
    orbits = []
    for m in monos:
        if m in seen:
            continue
        members = {action.act(g, m) for g in action.group.elements()}
        seen |= members
        ordered = sorted(members, key=lambda x: graded_lex_key(x, variables))
        orbits.append(Orbit(ordered[0], tuple(ordered)))
    # enumeration order is graded-lex and each rep is its orbit's first
    # member, so ``orbits`` is already sorted by representative
    return OrbitTable(action, d, tuple(orbits))


@dataclass(frozen=True)
class Composition:
    p: int
    a: tuple[int, ...]

    def __post_init__(self):
        if len(self.a) != self.p or any(x < 0 for x in self.a):
            raise ValueError(f"bad composition {self.a} for p={self.p}")
        if sum(self.a) != self.p or sum(i * x for i, x in enumerate(self.a)) % self.p:
            raise ValueError(f"{self.a} is not a valid composition for p={self.p}")

    @property
    def prefix_sums(self) -> tuple[int, ...]:
        out, s = [], 0
        for x in self.a:
            s += x
            out.append(s)
        return tuple(out)


def compositions_prime(p: int) -> list[Composition]:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return [
        Composition(p, a)
        for a in _compositions(p, p)
        if sum(i * x for i, x in enumerate(a)) % p == 0
    ]
