"""Coefficients of the invariant product

    Phi(X, Y) = prod_{g in G} sum_v Y_v * (g . X_v)

with the group acting on the X-copy only. In a permutation basis the
coefficients are assignment counts; in an eigenbasis they are sums of roots
of unity, returned as exact cyclotomic integers.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import combinations
from math import factorial, prod

from .cyclotomic import CyclotomicInt
from .errors import InexactDivision, OracleBoundExceeded
from .groups import Element
from .monomials import EigenAction, Monomial, PermAction, character_multiset

PERM_ORACLE_BOUND = 5
EIGEN_ORACLE_BOUND = 4


def perm_coefficient(action: PermAction, mx: Monomial, my: Monomial) -> int:
    """Number of maps g: G -> variables with {g(s)} = my and {s . g(s)} = mx."""
    n = action.group.order
    if mx.degree != n or my.degree != n:
        raise ValueError(f"monomials must have degree |G| = {n}")
    known = set(action.variables)
    if any(v not in known for v in mx.variables() + my.variables()):
        return 0
    elems = action.group.elements()
    yvars = my.variables()
    xvars = mx.variables()
    xidx = {v: i for i, v in enumerate(xvars)}
    # images[k][j]: position in xvars of elems[k] . yvars[j], or None
    images = [[xidx.get(action.perms[s][v]) for v in yvars] for s in elems]

    @lru_cache(maxsize=None)
    def count(k: int, ry: tuple, rx: tuple) -> int:
        if k == n:
            return 1
        total = 0
        for j, left in enumerate(ry):
            if not left:
                continue
            i = images[k][j]
            if i is None or not rx[i]:
                continue
            total += count(
                k + 1,
                ry[:j] + (left - 1,) + ry[j + 1:],
                rx[:i] + (rx[i] - 1,) + rx[i + 1:],
            )
        return total

    return count(0, tuple(e for _, e in my.terms), tuple(e for _, e in mx.terms))


def _normalize_multiset(action: EigenAction, chars) -> Counter:
    G = action.group
    if isinstance(chars, Monomial):
        return character_multiset(chars, action)
    c = Counter(dict(chars)) if isinstance(chars, (dict, Counter)) else Counter(chars)
    for lam in c:
        G.check(lam)
    return c


def _rotate_add(dst: list, src: list, shift: int, n: int) -> None:
    if shift == 0:
        for t in range(n):
            dst[t] += src[t]
    else:
        for t in range(n):
            dst[(t + shift) % n] += src[t]


def eigen_histogram(action: EigenAction, chars) -> list[int]:
    """Exponent histogram of the character-arrangement sum, in Z[T]/(T^n - 1).

    Entry t counts the distinct maps h: G -> characters with value multiset
    ``chars`` and sum_g <h(g), g> = t (mod n).
    """
    G = action.group
    n = G.order
    c = _normalize_multiset(action, chars)
    if sum(c.values()) != n:
        raise ValueError(f"character multiset must have size |G| = {n}")
    lams = sorted(c)
    elems = G.elements()
    expo = [[G.pairing(lam, s) for s in elems] for lam in lams]
    start = tuple(c[lam] for lam in lams)
    states = {start: [1] + [0] * (n - 1)}
    for k in range(n):
        nxt: dict[tuple, list] = {}
        for rem, hist in states.items():
            for i, left in enumerate(rem):
                if not left:
                    continue
                key = rem[:i] + (left - 1,) + rem[i + 1:]
                acc = nxt.get(key)
                if acc is None:
                    acc = nxt[key] = [0] * n
                _rotate_add(acc, hist, expo[i][k], n)
        states = nxt
    (hist,) = states.values()
    return hist


def _eigen_ryser(action: EigenAction, c: Counter) -> CyclotomicInt:
    G = action.group
    n = G.order
    lams = sorted(c)
    elems = G.elements()
    zeta = [CyclotomicInt.from_cyclic([int(t == k) for t in range(n)], n) for k in range(n)]
    expo = [[G.pairing(lam, s) for s in elems] for lam in lams]
    total = CyclotomicInt.zero(n)
    for size in range(1, n + 1):
        sign = (-1) ** (n - size)
        for cols in combinations(range(n), size):
            term = CyclotomicInt.one(n)
            for i, lam in enumerate(lams):
                hist = [0] * n
                for k in cols:
                    hist[expo[i][k]] += 1
                rowsum = CyclotomicInt.from_cyclic(hist, n)
                term = term * rowsum ** c[lam]
                if term.is_zero():
                    break
            if not term.is_zero():
                total = total + term * sign
    denom = prod(factorial(a) for a in c.values())
    try:
        return total.exact_div(denom)
    except InexactDivision:
        raise InexactDivision(
            f"permanent not divisible by {denom}; eigen engine inconsistent"
        ) from None


def eigen_coefficient(action: EigenAction, chars, method: str = "auto") -> CyclotomicInt:
    """Sum over distinct h: G -> characters with multiset ``chars`` of zeta^(sum <h(g), g>).

    ``chars`` may be a monomial (its character multiset is used), a mapping
    character -> count, or an iterable of characters. ``method`` is
    ``"arrangements"`` (multiset DP), ``"ryser"`` (permanent with exact division)
    or ``"auto"`` (currently the DP; both routes are exact and must agree).
    """
    n = action.group.order
    c = _normalize_multiset(action, chars)
    if sum(c.values()) != n:
        raise ValueError(f"character multiset must have size |G| = {n}")
    if method == "auto":
        method = "arrangements"
    if method == "ryser":
        return _eigen_ryser(action, c)
    if method != "arrangements":
        raise ValueError(f"unknown method {method!r}")
    return CyclotomicInt.from_cyclic(eigen_histogram(action, c), n)


def multiplicity_factor(m: Monomial, action: EigenAction) -> int:
    """prod_chars a_char! / prod_vars e_v!, the number of variable fillings per character map."""
    c = character_multiset(m, action)
    num = prod(factorial(a) for a in c.values())
    den = prod(factorial(e) for _, e in m.terms)
    return num // den


def eigen_monomial_coefficient(action: EigenAction, m: Monomial) -> CyclotomicInt:
    """Coefficient of M(X)M(Y) for a monomial over (possibly repeated) eigen-variables."""
    return eigen_coefficient(action, m) * multiplicity_factor(m, action)


def _poly_mul(a: dict, b: dict, zero) -> dict:
    out: dict = {}
    for (ax, ay), ca in a.items():
        for (bx, by), cb in b.items():
            key = (ax * bx, ay * by)
            out[key] = out.get(key, zero) + ca * cb
    return out


def brute_force_expand(action, max_order: int | None = None) -> dict:
    """Naive term-by-term expansion of Phi into {(X-monomial, Y-monomial): coeff}.

    Deliberately shares nothing with the counting code above. Zero
    coefficients are dropped.
    """
    G = action.group
    n = G.order
    if isinstance(action, PermAction):
        bound = PERM_ORACLE_BOUND if max_order is None else max_order
        zero = 0
        factors = [
            {(Monomial.of([action.perms[s][v]]), Monomial.of([v])): 1 for v in action.variables}
            for s in G.elements()
        ]
    elif isinstance(action, EigenAction):
        bound = EIGEN_ORACLE_BOUND if max_order is None else max_order
        zero = CyclotomicInt.zero(n)
        factors = []
        for s in G.elements():
            f = {}
            for v in action.variables:
                hist = [0] * n
                hist[G.pairing(action.char(v), s)] = 1
                f[(Monomial.of([v]), Monomial.of([v]))] = CyclotomicInt.from_cyclic(hist, n)
            factors.append(f)
    else:
        raise TypeError(f"unsupported action {type(action).__name__}")
    if n > bound:
        raise OracleBoundExceeded(f"oracle refuses |G| = {n} > {bound}")
    poly = {(Monomial(), Monomial()): (1 if zero == 0 else CyclotomicInt.one(n))}
    for f in factors:
        poly = _poly_mul(poly, f, zero)
    return {k: v for k, v in poly.items() if v != zero}


def invariant_multisets(group, size: int | None = None) -> list[tuple[Element, ...]]:
    """Weight-zero multisets of characters of the given size (default |G|)."""
    from .monomials import invariant_monomials, regular_eigen_action

    action = regular_eigen_action(group)
    d = group.order if size is None else size
    return [tuple(m.support_multiset()) for m in invariant_monomials(action, d)]
