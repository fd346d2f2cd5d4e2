"""Degeneracy witness monomials, prime-order certificates and the F_2 subset bijection."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from math import factorial, gcd, prod

import numpy as np

from .cyclotomic import CyclotomicInt, reduce_mod_cyclotomic
from .errors import CertificateFailure
from .expansion import eigen_coefficient
from .groups import AbelianGroup, factorize, is_prime, make_group
from .monomials import Composition, Monomial, regular_eigen_action, weight


@dataclass(frozen=True)
class WitnessMonomial:
    group: AbelianGroup
    monomial: Monomial
    case: str
    params: dict = field(default_factory=dict, hash=False)

    def to_dict(self) -> dict:
        return {
            "group": self.group.spec,
            "monomial": self.monomial.to_list(),
            "display": str(self.monomial),
            "case": self.case,
            "params": dict(self.params),
        }


def least_prime_and_cofactor(n: int) -> tuple[int, int]:
    if n <= 1 or is_prime(n):
        raise ValueError(f"{n} is not composite")
    p = min(factorize(n))
    return p, n // p


def _cyclic_monomial(n: int, exps: list[tuple[int, int]]) -> Monomial:
    # indices reduced mod n; repeated indices merge
    return Monomial(tuple(((i % n,), e) for i, e in exps))


def _check_invariant(G: AbelianGroup, m: Monomial) -> None:
    act = regular_eigen_action(G)
    if m.degree != G.order or weight(m, act) != G.zero:
        raise AssertionError(f"{m} is not an invariant monomial of degree {G.order}")


def witness_case_Ia(n: int) -> WitnessMonomial:
    """X_0 X_1^(q-2) X_(n-q+2) X_q^((p-1)q) over Z/n, for p | q."""
    p, q = least_prime_and_cofactor(n)
    if q % p:
        raise ValueError(f"case Ia needs p | q, got n={n} (p={p}, q={q})")
    if n == 4:
        raise ValueError("case Ia collapses at n = 4")
    G = make_group([n])
    m = _cyclic_monomial(n, [(0, 1), (1, q - 2), (n - q + 2, 1), (q, (p - 1) * q)])
    _check_invariant(G, m)
    return WitnessMonomial(G, m, "Ia", {"p": p, "q": q})


def case_Ia_formula(n: int) -> Monomial:
    """The case Ia formula applied without preconditions (used to exhibit the n = 4 collapse)."""
    p, q = least_prime_and_cofactor(n)
    return _cyclic_monomial(n, [(0, 1), (1, q - 2), (n - q + 2, 1), (q, (p - 1) * q)])


def witness_case_Ib(n: int) -> WitnessMonomial:
    """X_0^(q-2) X_(q-p) X_(n-q+p) X_p^((p-1)q) over Z/n, for gcd(p, q) = 1."""
    p, q = least_prime_and_cofactor(n)
    if gcd(p, q) != 1:
        raise ValueError(f"case Ib needs gcd(p, q) = 1, got n={n} (p={p}, q={q})")
    G = make_group([n])
    m = _cyclic_monomial(n, [(0, q - 2), (q - p, 1), (n - q + p, 1), (p, (p - 1) * q)])
    _check_invariant(G, m)
    return WitnessMonomial(G, m, "Ib", {"p": p, "q": q})


def witness_case_II(G: AbelianGroup) -> WitnessMonomial:
    """For canonical G = Z/q1 + ... + Z/qr with r >= 2 and qr >= 3, q = n / q1."""
    if not G.canonical or G.rank < 2 or G.moduli[-1] < 3 or G.moduli[0] < 2:
        raise ValueError(f"case II needs canonical rank >= 2 with q_r >= 3, got {G.moduli}")
    q1 = G.moduli[0]
    q = G.order // q1
    r = G.rank
    zero = G.zero
    e011 = (0,) + (1,) * (r - 1)
    e0m = (0,) + tuple(qi - 1 for qi in G.moduli[1:])
    e111 = (1,) * r
    m = Monomial(((zero, q - 2), (e011, 1), (e0m, 1), (e111, q * (q1 - 1))))
    _check_invariant(G, m)
    return WitnessMonomial(G, m, "II", {"q": q, "q1": q1})


def witness_case_III(G: AbelianGroup) -> WitnessMonomial:
    """For G = (Z/2)^k, k >= 3: the product of X_(0,u) over u in U, times X_(1,...,1)^(n/2)."""
    if G.rank < 3 or any(q != 2 for q in G.moduli):
        raise ValueError(f"case III needs (Z/2)^k with k >= 3, got {G.moduli}")
    q = G.order // 2
    U = G.subgroup_elements(range(2, G.rank + 1))
    terms = [(u, 1) for u in U] + [((1,) * G.rank, q)]
    m = Monomial(tuple(terms))
    _check_invariant(G, m)
    return WitnessMonomial(G, m, "III", {"q": q})


def select_witness(G: AbelianGroup) -> WitnessMonomial:
    """Case-dispatched witness; the group is first brought to canonical form."""
    n = G.order
    if n == 1 or n == 4 or is_prime(n):
        raise ValueError(f"no witness for order {n}: prime, 4 or trivial")
    H = G.normalized
    if H.rank == 1:
        p, q = least_prime_and_cofactor(n)
        return witness_case_Ia(n) if q % p == 0 else witness_case_Ib(n)
    if all(qi == 2 for qi in H.moduli):
        return witness_case_III(H)
    return witness_case_II(H)


def case_witness_for(G: AbelianGroup) -> WitnessMonomial | None:
    """The case witness for G as given, or None if G is not canonical or none applies."""
    n = G.order
    if n == 1 or n == 4 or is_prime(n) or G.moduli != G.normalized.moduli:
        return None
    return select_witness(G)


def witness_coefficient(W: WitnessMonomial) -> CyclotomicInt:
    return eigen_coefficient(regular_eigen_action(W.group), W.monomial)


def verify_witness(G: AbelianGroup, W: WitnessMonomial | Monomial) -> bool:
    """True iff the diagonal coefficient of the monomial vanishes."""
    m = W.monomial if isinstance(W, WitnessMonomial) else W
    return eigen_coefficient(regular_eigen_action(G), m).is_zero()


# -- H-invariant factorizations (cyclic case Ia) ------------------------------


def _sub_multisets(counts: tuple[int, ...], size: int):
    if not counts:
        if size == 0:
            yield ()
        return
    for k in range(min(counts[0], size), -1, -1):
        for rest in _sub_multisets(counts[1:], size - k):
            yield (k,) + rest


def h_invariant_factorizations(n: int, M: Monomial) -> list[tuple[Monomial, ...]]:
    """Unordered p-tuples of degree-q monomials, each invariant under the
    order-q subgroup H of Z/n, whose product is M (n = pq, p | q)."""
    p, q = least_prime_and_cofactor(n)
    if q % p:
        raise ValueError(f"needs p | q, got n={n}")
    G = make_group([n])
    act = regular_eigen_action(G)
    if M.degree != n or weight(M, act) != G.zero:
        raise ValueError(f"{M} is not an invariant monomial of degree {n}")
    # H = <p>; a character is trivial on H iff its weight is divisible by q
    vars_ = M.variables()
    out = []

    def rec(remaining: tuple[int, ...], parts: list[tuple[int, ...]]):
        if len(parts) == p:
            if not any(remaining):
                out.append(tuple(Monomial.from_dense(vars_, c) for c in parts))
            return
        for c in _sub_multisets(remaining, q):
            if parts and c > parts[-1]:
                continue  # nonincreasing parts, so each unordered tuple appears once
            if sum(e * v[0] for e, v in zip(c, vars_)) % q:
                continue
            rec(tuple(a - b for a, b in zip(remaining, c)), parts + [c])

    rec(tuple(M.dense(vars_)), [])
    return out


# -- prime-order certificates --------------------------------------------------


_PERMS: dict[int, np.ndarray] = {}


def _permutations(p: int) -> np.ndarray:
    if p not in _PERMS:
        _PERMS[p] = np.array(list(itertools.permutations(range(p))), dtype=np.int64)
    return _PERMS[p]


def slot_weights(a: Composition) -> list[int]:
    """Block index r of each slot 1..p, where slot j is in block r iff b_(r-1) < j <= b_r."""
    return [r for r, size in enumerate(a.a) for _ in range(size)]


def block_weight_sums(p: int, a: Composition) -> np.ndarray:
    """w(sigma) = sum_j sigma(j) * r(j) for every permutation of {0..p-1}, unreduced."""
    return _permutations(p) @ np.array(slot_weights(a), dtype=np.int64)


def prime_S_counts(p: int, a) -> dict[int, int]:
    if not isinstance(a, Composition):
        a = Composition(p, tuple(a))
    w = block_weight_sums(p, a) % p
    counts = np.bincount(w, minlength=p)
    return {x: int(counts[x]) for x in range(p)}


@dataclass
class PrimeCertificate:
    p: int
    a: tuple[int, ...]
    counts: dict[int, int]
    reduced_poly: tuple[int, ...]
    eigen_value: CyclotomicInt
    checks: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "a": list(self.a),
            "counts": {str(x): c for x, c in self.counts.items()},
            "reduced_poly": list(self.reduced_poly),
            "eigen_coefficient": self.eigen_value.to_dict(),
            "checks": dict(self.checks),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PrimeCertificate":
        return cls(
            int(d["p"]),
            tuple(d["a"]),
            {int(x): int(c) for x, c in d["counts"].items()},
            tuple(d["reduced_poly"]),
            CyclotomicInt.from_dict(d["eigen_coefficient"]),
            {k: bool(v) for k, v in d["checks"].items()},
        )

    def __eq__(self, other):
        return isinstance(other, PrimeCertificate) and self.to_dict() == other.to_dict()


def prime_certificate(p: int, a, strict: bool = True) -> PrimeCertificate:
    """Counts |S_x,a| and every check that makes the diagonal entry for ``a`` nonzero.

    With ``strict`` a failed check raises :class:`CertificateFailure`.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    comp = a if isinstance(a, Composition) else Composition(p, tuple(a))
    w = block_weight_sums(p, comp)
    counts_arr = np.bincount(w % p, minlength=p)
    counts = {x: int(counts_arr[x]) for x in range(p)}
    # the root-of-unity sum uses the unreduced exponents
    hist = np.bincount(w)
    reduced = reduce_mod_cyclotomic(tuple(int(c) for c in hist), p)
    G = make_group([p])
    chars = Counter({(j,): k for j, k in enumerate(comp.a) if k})
    eig = eigen_coefficient(regular_eigen_action(G), chars)
    from_counts = CyclotomicInt.from_cyclic([counts[x] for x in range(p)], p)
    scale = prod(factorial(k) for k in comp.a)
    checks = {
        "sum_is_p_factorial": sum(counts.values()) == factorial(p),
        "p_divides_counts": all(c % p == 0 for c in counts.values()),
        "count0_ne_count1": counts[0] != counts[1],
        "unit_symmetry": all(
            counts[u * x % p] == counts[x] for u in range(1, p) for x in range(p)
        ),
        "reduced_poly_nonzero": not reduced.is_zero(),
        "matches_eigen_coefficient": from_counts == eig * scale,
    }
    cert = PrimeCertificate(p, comp.a, counts, reduced.coeffs, eig, checks)
    if strict and not cert.ok:
        failed = [k for k, v in checks.items() if not v]
        raise CertificateFailure(f"p={p}, a={comp.a}: failed {failed}")
    return cert


# -- subsets of F_2^k ------------------------------------------------------------


@dataclass
class Lemma2Result:
    k: int
    v1: int
    even_zero: int
    odd_v1: int
    pairing: list[tuple[tuple[int, ...], tuple[int, ...]]]

    def to_dict(self) -> dict:
        fmt = lambda A: [format(x, f"0{self.k}b") for x in A]  # noqa: E731
        return {
            "k": self.k,
            "v1": format(self.v1, f"0{self.k}b"),
            "even_zero": self.even_zero,
            "odd_v1": self.odd_v1,
            "pairing": [[fmt(A), fmt(B)] for A, B in self.pairing],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Lemma2Result":
        parse = lambda A: tuple(int(x, 2) for x in A)  # noqa: E731
        return cls(
            int(d["k"]),
            int(d["v1"], 2),
            int(d["even_zero"]),
            int(d["odd_v1"]),
            [(parse(A), parse(B)) for A, B in d["pairing"]],
        )


def _xor_all(elems) -> int:
    s = 0
    for x in elems:
        s ^= x
    return s


def lemma2_counts(k: int, v1: int) -> Lemma2Result:
    """Subsets A of F_2^k: |A| even with sum 0 versus |A| odd with sum v1.

    Vectors are ints in [0, 2^k); ``v1`` as an int (bit string "101" -> 0b101).
    The pairing sends A to the symmetric difference A ^ {v1}.
    """
    if k < 1:
        raise ValueError("dimension must be positive")
    if not 0 < v1 < 2**k:
        raise ValueError("v1 must be a nonzero vector of F_2^k")
    size = 2**k
    even_zero, odd_v1 = [], []
    # vector sum of a subset mask, built incrementally over masks
    sums = [0] * (1 << size)
    for mask in range(1, 1 << size):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] ^ (low.bit_length() - 1)
    for mask in range(1 << size):
        par = bin(mask).count("1") & 1
        if par == 0 and sums[mask] == 0:
            even_zero.append(mask)
        elif par == 1 and sums[mask] == v1:
            odd_v1.append(mask)
    as_set = lambda mask: tuple(x for x in range(size) if mask >> x & 1)  # noqa: E731
    bit = 1 << v1
    pairing = [(as_set(m), as_set(m ^ bit)) for m in even_zero]
    return Lemma2Result(k, v1, len(even_zero), len(odd_v1), pairing)


def check_lemma2_pairing(res: Lemma2Result) -> bool:
    """The pairing is a bijection from the even family onto the odd family and an involution."""
    size = 2**res.k
    fam_even, fam_odd = set(), set()
    for A, B in res.pairing:
        if len(A) % 2 or _xor_all(A) != 0:
            return False
        if len(B) % 2 == 0 or _xor_all(B) != res.v1:
            return False
        if tuple(sorted(set(B) ^ {res.v1})) != A:
            return False
        fam_even.add(A)
        fam_odd.add(B)
    expected_odd = sum(
        1
        for mask in range(1 << size)
        if bin(mask).count("1") & 1
        and _xor_all(x for x in range(size) if mask >> x & 1) == res.v1
    )
    return len(fam_even) == res.even_zero and len(fam_odd) == res.odd_v1 == expected_odd
