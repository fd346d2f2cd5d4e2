"""Coefficient matrix, exact determinant and nondegeneracy verdicts."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .cyclotomic import CyclotomicInt
from .errors import CertificateFailure, InexactDivision, SearchFailure
from .expansion import eigen_coefficient, multiplicity_factor, perm_coefficient
from .groups import AbelianGroup, factorize, format_group_spec
from .monomials import (
    EigenAction,
    Monomial,
    OrbitTable,
    PermAction,
    invariant_monomials,
    orbit_decomposition,
    regular_eigen_action,
)


@dataclass(frozen=True)
class CoefficientMatrix:
    table: OrbitTable
    entries: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def labels(self) -> list[Monomial]:
        return [o.rep for o in self.table.orbits]

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def column_counts(action: PermAction, my: Monomial) -> Counter:
    """For a fixed Y-monomial, the X-monomial histogram over all admissible maps.

    Forward DP over group elements; gives a whole matrix column at once.
    """
    elems = action.group.elements()
    yvars = my.variables()
    xvars = list(action.variables)
    xpos = {v: i for i, v in enumerate(xvars)}
    img = [[xpos[action.perms[s][v]] for v in yvars] for s in elems]
    states = {(tuple(e for _, e in my.terms), (0,) * len(xvars)): 1}
    for k in range(len(elems)):
        nxt: Counter = Counter()
        for (ry, xs), cnt in states.items():
            for j, left in enumerate(ry):
                if left:
                    i = img[k][j]
                    key = (ry[:j] + (left - 1,) + ry[j + 1:], xs[:i] + (xs[i] + 1,) + xs[i + 1:])
                    nxt[key] += cnt
        states = nxt
    out: Counter = Counter()
    for (_, xs), cnt in states.items():
        out[Monomial.from_dense(xvars, xs)] += cnt
    return out


def assemble_matrix(action: PermAction, method: str = "entries") -> CoefficientMatrix:
    """Entry (r, s) is the coefficient of rep(O_r)(X) rep(O_s)(Y).

    ``method="entries"`` evaluates every entry with :func:`perm_coefficient`;
    ``"columns"`` uses one forward DP per column and is faster for larger groups.
    """
    n = action.group.order
    table = orbit_decomposition(action, n)
    reps = [o.rep for o in table.orbits]
    if method == "entries":
        entries = tuple(tuple(perm_coefficient(action, r, s) for s in reps) for r in reps)
    elif method == "columns":
        cols = [column_counts(action, s) for s in reps]
        entries = tuple(tuple(cols[j].get(r, 0) for j in range(len(reps))) for r in reps)
    else:
        raise ValueError(f"unknown method {method!r}")
    return CoefficientMatrix(table, entries)


def determinant(matrix) -> int | Fraction:
    """Exact determinant by Bareiss fraction-free elimination.

    Pivot: first nonzero entry in the current column, scanning rows downward.
    Works for int or Fraction entries.
    """
    a = [list(row) for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    integral = all(isinstance(x, int) for row in a for x in row)
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                num = row_i[j] * akk - aik * row_k[j]
                if integral:
                    q, r = divmod(num, prev)
                    if r:
                        raise InexactDivision("Bareiss step left a remainder")
                    row_i[j] = q
                else:
                    row_i[j] = num / prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def cofactor_determinant(matrix) -> int:
    """Laplace expansion along the first row; a slow oracle for small matrices."""
    n = len(matrix)
    if n == 0:
        return 1
    if n == 1:
        return matrix[0][0]
    total = 0
    for j in range(n):
        if matrix[0][j]:
            minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
            total += (-1) ** j * matrix[0][j] * cofactor_determinant(minor)
    return total


def det_prime_factors(d: int) -> list[int]:
    if d == 0:
        raise ValueError("zero has no prime factorization")
    return [p for p, e in sorted(factorize(abs(d)).items()) for _ in range(e)]


def left_kernel_vector(matrix) -> list[int] | None:
    """A primitive integer vector c != 0 with c^T A = 0, or None if A is nonsingular."""
    n = len(matrix)
    # solve A^T c = 0 by Gauss-Jordan over Q
    m = [[Fraction(matrix[j][i]) for j in range(n)] for i in range(n)]
    pivots = []
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, n) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = 1 / m[row][col]
        m[row] = [x * inv for x in m[row]]
        for r in range(n):
            if r != row and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
    free = [c for c in range(n) if c not in pivots]
    if not free:
        return None
    f = free[0]
    c = [Fraction(0)] * n
    c[f] = Fraction(1)
    for r, pc in enumerate(pivots):
        c[pc] = -m[r][f]
    from math import gcd, lcm

    den = lcm(*(x.denominator for x in c))
    ints = [int(x * den) for x in c]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints]


@dataclass
class Verdict:
    """Outcome of a nondegeneracy decision together with replayable evidence.

    Nondegenerate, permutation basis: ``determinant`` and ``prime_factors``.
    Nondegenerate, eigenbasis: ``diagonal`` lists every invariant monomial with
    its (nonzero) coefficient. Degenerate, permutation basis: ``determinant``
    is 0 and ``hyperplane`` is an integer vector c with c^T A = 0. Degenerate,
    eigenbasis: ``witness`` with its verified zero ``witness_coefficient``.
    """

    kind: str
    basis: str
    group: str
    representation: str
    determinant: int | None = None
    prime_factors: list[int] | None = None
    hyperplane: list[int] | None = None
    diagonal: list[tuple[Monomial, CyclotomicInt]] | None = None
    witness: Monomial | None = None
    witness_coefficient: CyclotomicInt | None = None
    witness_source: str | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def nondegenerate(self) -> bool:
        return self.kind == "nondegenerate"

    def to_dict(self) -> dict:
        d = {
            "kind": self.kind,
            "basis": self.basis,
            "group": self.group,
            "representation": self.representation,
        }
        if self.determinant is not None:
            d["determinant"] = self.determinant
        if self.prime_factors is not None:
            d["prime_factors"] = list(self.prime_factors)
        if self.hyperplane is not None:
            d["hyperplane"] = list(self.hyperplane)
        if self.diagonal is not None:
            d["diagonal"] = [
                {"monomial": m.to_list(), "coefficient": c.to_dict()} for m, c in self.diagonal
            ]
        if self.witness is not None:
            d["witness"] = self.witness.to_list()
            d["witness_display"] = str(self.witness)
            d["witness_coefficient"] = self.witness_coefficient.to_dict()
            d["witness_source"] = self.witness_source
        if self.notes:
            d["notes"] = list(self.notes)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Verdict":
        v = cls(d["kind"], d["basis"], d["group"], d["representation"])
        v.determinant = d.get("determinant")
        v.prime_factors = d.get("prime_factors")
        v.hyperplane = d.get("hyperplane")
        if "diagonal" in d:
            v.diagonal = [
                (Monomial.from_list(e["monomial"]), CyclotomicInt.from_dict(e["coefficient"]))
                for e in d["diagonal"]
            ]
        if "witness" in d:
            v.witness = Monomial.from_list(d["witness"])
            v.witness_coefficient = CyclotomicInt.from_dict(d["witness_coefficient"])
            v.witness_source = d.get("witness_source")
        v.notes = list(d.get("notes", []))
        return v

    def __eq__(self, other):
        return isinstance(other, Verdict) and self.to_dict() == other.to_dict()


def _perm_verdict(action: PermAction, method: str) -> Verdict:
    mat = assemble_matrix(action, method=method)
    det = determinant(mat.entries)
    v = Verdict(
        "nondegenerate" if det else "degenerate",
        "perm",
        format_group_spec(action.group),
        "regular-perm",
        determinant=det,
    )
    if det:
        v.prime_factors = det_prime_factors(det)
    else:
        c = left_kernel_vector(mat.entries)
        n = mat.size
        if any(sum(c[r] * mat.entries[r][s] for r in range(n)) for s in range(n)):
            raise CertificateFailure("left kernel vector does not annihilate the matrix")
        v.hyperplane = c
    return v


def _support_monomial(action: EigenAction, chars: Counter) -> Monomial:
    """Monomial realizing a character multiset, using the first copy of each character."""
    first = {}
    for var in action.variables:
        first.setdefault(action.char(var), var)
    return Monomial(tuple((first[lam], a) for lam, a in chars.items()))


def _reverify(action: EigenAction, mono: Monomial) -> CyclotomicInt:
    n = action.group.order
    method = "ryser" if n <= 12 else "arrangements"
    return eigen_coefficient(action, mono, method=method) * multiplicity_factor(mono, action)


def _eigen_verdict(action: EigenAction, try_case_witness: bool) -> Verdict:
    G = action.group
    n = G.order
    v = Verdict("nondegenerate", "eigen", format_group_spec(G), action.kind)
    if try_case_witness and action.kind == "regular-eigen":
        from .witnesses import case_witness_for

        w = case_witness_for(G)
        if w is not None:
            coeff = eigen_coefficient(action, w.monomial) * multiplicity_factor(w.monomial, action)
            if coeff.is_zero():
                v.kind = "degenerate"
                v.witness = w.monomial
                v.witness_coefficient = _reverify(action, w.monomial)
                v.witness_source = f"case {w.case}"
                return v
            v.notes.append(
                f"case {w.case} monomial {w.monomial} has nonzero coefficient {coeff}; scanned instead"
            )
    # the coefficient depends only on the character multiset, so scan those
    regular = regular_eigen_action(G)
    present = {lam for lam, m in action.multiplicities().items() if m > 0}
    diagonal = []
    for m in invariant_monomials(regular, n):
        chars = Counter({lam: e for lam, e in m.terms})
        if not set(chars) <= present:
            continue
        mono = _support_monomial(action, chars)
        coeff = eigen_coefficient(action, chars) * multiplicity_factor(mono, action)
        if coeff.is_zero():
            again = _reverify(action, mono)
            if not again.is_zero():
                raise CertificateFailure(f"coefficient of {mono} vanishes by one route only")
            v.kind = "degenerate"
            v.witness = mono
            v.witness_coefficient = again
            v.witness_source = "scan"
            return v
        diagonal.append((mono, coeff))
    v.diagonal = diagonal
    return v


def nondegenerate(action, try_case_witness: bool = True, method: str = "entries") -> Verdict:
    """Decide nondegeneracy of the norm map for a permutation or eigen action.

    Permutation basis: nonsingularity of the coefficient matrix. Eigenbasis:
    every diagonal coefficient of an invariant degree-n monomial is nonzero.
    In the eigenbasis the matching case witness (when one applies) is tried
    first; a degenerate verdict always carries a twice-computed zero.
    """
    if isinstance(action, PermAction):
        return _perm_verdict(action, method)
    if isinstance(action, EigenAction):
        return _eigen_verdict(action, try_case_witness)
    raise TypeError(f"unsupported action {type(action).__name__}")


# -- evaluation certificates -------------------------------------------------


@dataclass
class EvaluationCertificate:
    points: list[tuple[Fraction, ...]]
    matrix: list[list[Fraction]]
    det: Fraction
    attempted: int

    def to_dict(self) -> dict:
        return {
            "points": [[str(x) for x in p] for p in self.points],
            "matrix": [[str(x) for x in row] for row in self.matrix],
            "det": str(self.det),
            "attempted": self.attempted,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EvaluationCertificate":
        return cls(
            [tuple(Fraction(x) for x in p) for p in d["points"]],
            [[Fraction(x) for x in row] for row in d["matrix"]],
            Fraction(d["det"]),
            int(d["attempted"]),
        )


def orbit_sums(table: OrbitTable) -> list[dict]:
    return [{m: 1 for m in o.members} for o in table.orbits]


def evaluate(poly: dict, variables, point) -> Fraction:
    env = dict(zip(variables, point))
    total = Fraction(0)
    for mono, c in poly.items():
        term = Fraction(c)
        for v, e in mono.terms:
            term *= env[v] ** e
        total += term
    return total


def _candidate_points(m: int, degree: int):
    # 0/1 vectors by weight, then geometric progressions, then integer boxes
    for w in range(1, m + 1):
        for ones in itertools.combinations(range(m), w):
            yield tuple(Fraction(int(i in ones)) for i in range(m))
    for t in range(2, 2 + 4 * m):
        yield tuple(Fraction(t) ** (k + 1) for k in range(m))
    for bound in range(2, degree + 2):
        for p in itertools.product(range(bound + 1), repeat=m):
            if max(p) == bound:
                yield tuple(Fraction(x) for x in p)


def evaluation_certificate(polys, variables, budget: int = 100_000) -> EvaluationCertificate:
    """Points v_1..v_N whose evaluation matrix (poly_r(v_s)) is nonsingular.

    Greedy over a fixed candidate sequence: a point is kept when it raises the
    rank of the evaluations collected so far. Deterministic.
    """
    variables = list(variables)
    N = len(polys)
    degree = max((mono.degree for p in polys for mono in p), default=0)
    kept: list[tuple[Fraction, ...]] = []
    basis: list[tuple[int, list[Fraction]]] = []  # (pivot index, reduced row)
    attempted = 0
    for pt in _candidate_points(len(variables), degree):
        if len(kept) == N:
            break
        if attempted >= budget:
            break
        attempted += 1
        vec = [evaluate(p, variables, pt) for p in polys]
        for piv, row in basis:
            if vec[piv]:
                f = vec[piv] / row[piv]
                vec = [a - f * b for a, b in zip(vec, row)]
        lead = next((i for i, x in enumerate(vec) if x), None)
        if lead is None:
            continue
        basis.append((lead, vec))
        kept.append(pt)
    if len(kept) < N:
        raise SearchFailure(
            f"found only {len(kept)} of {N} independent points after {attempted} candidates",
            attempted=kept,
        )
    matrix = [[evaluate(p, variables, pt) for pt in kept] for p in polys]
    det = determinant(matrix)
    if det == 0:
        raise CertificateFailure("selected points give a singular evaluation matrix")
    return EvaluationCertificate(kept, matrix, Fraction(det), attempted)
