import random
from fractions import Fraction

import pytest

from nql.criterion import (
    EvaluationCertificate,
    Verdict,
    assemble_matrix,
    cofactor_determinant,
    det_prime_factors,
    determinant,
    evaluation_certificate,
    left_kernel_vector,
    nondegenerate,
    orbit_sums,
)
from nql.errors import SearchFailure
from nql.expansion import brute_force_expand, perm_coefficient
from nql.groups import abelian_groups_of_order, format_group_spec, make_group
from nql.monomials import (
    Monomial,
    eigen_action_with_multiplicities,
    orbit_decomposition,
    regular_eigen_action,
    regular_perm_action,
)

SMALL = [g for n in range(1, 6) for g in abelian_groups_of_order(n)]


def test_determinant_matches_cofactor_random():
    rng = random.Random(1729)
    for _ in range(1000):
        n = rng.randint(1, 5)
        m = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert determinant(m) == cofactor_determinant(m)


def test_determinant_fraction_and_edge_cases():
    assert determinant([]) == 1
    assert determinant([[0, 1], [1, 0]]) == -1
    assert determinant([[1, 2], [2, 4]]) == 0
    assert determinant([[Fraction(1, 2), 1], [1, 4]]) == 1
    with pytest.raises(ValueError):
        determinant([[1, 2]])


def test_prime_factors():
    assert det_prime_factors(-12) == [2, 2, 3]
    assert det_prime_factors(1) == []
    with pytest.raises(ValueError):
        det_prime_factors(0)


def test_left_kernel():
    a = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    c = left_kernel_vector(a)
    assert c is not None and any(c)
    assert all(sum(c[i] * a[i][j] for i in range(3)) == 0 for j in range(3))
    assert left_kernel_vector([[1, 0], [0, 1]]) is None


def test_matrix_examples():
    assert assemble_matrix(regular_perm_action(make_group([2]))).rows() == [[0, 1], [1, 0]]
    assert assemble_matrix(regular_perm_action(make_group([1]))).rows() == [[1]]


@pytest.mark.parametrize("g", SMALL, ids=format_group_spec)
def test_matrix_matches_oracle(g):
    act = regular_perm_action(g)
    mat = assemble_matrix(act)
    table = brute_force_expand(act)
    reps = mat.labels
    expect = [[table.get((r, s), 0) for s in reps] for r in reps]
    assert mat.rows() == expect
    assert assemble_matrix(act, method="columns").rows() == expect
    assert determinant(expect) == determinant(mat.entries)


def test_small_determinants_from_oracle():
    # values come from the naive expansion, not from the fast engine
    dets = {}
    for g in SMALL:
        act = regular_perm_action(g)
        table = brute_force_expand(act)
        reps = [o.rep for o in orbit_decomposition(act, g.order).orbits]
        dets[format_group_spec(g)] = determinant([[table.get((r, s), 0) for s in reps] for r in reps])
    assert {k: abs(v) for k, v in dets.items()} == {"1": 1, "2": 1, "3": 1, "4": 1, "2x2": 2, "5": 1}


@pytest.mark.parametrize("g", SMALL, ids=format_group_spec)
def test_representative_independence(g):
    act = regular_perm_action(g)
    mat = assemble_matrix(act)
    rng = random.Random(hash(g.moduli) & 0xFFFF)
    for _ in range(3):
        reps = [rng.choice(o.members) for o in mat.table.orbits]
        entries = [[perm_coefficient(act, r, s) for s in reps] for r in reps]
        assert entries == mat.rows()


@pytest.mark.parametrize("n", range(1, 6))
def test_basis_independence(n):
    g = make_group([n])
    assert nondegenerate(regular_perm_action(g)).kind == nondegenerate(regular_eigen_action(g)).kind


def test_perm_degenerate_has_hyperplane():
    act = regular_perm_action(make_group([6]))
    v = nondegenerate(act, method="columns")
    assert v.kind == "degenerate" and v.determinant == 0
    a = assemble_matrix(act, method="columns").rows()
    c = v.hyperplane
    assert any(c)
    assert all(sum(c[i] * a[i][j] for i in range(len(a))) == 0 for j in range(len(a)))


def test_eigen_verdicts():
    v7 = nondegenerate(regular_eigen_action(make_group([7])))
    assert v7.nondegenerate and len(v7.diagonal) == 246
    assert all(not c.is_zero() for _, c in v7.diagonal)
    v6 = nondegenerate(regular_eigen_action(make_group([6])))
    assert not v6.nondegenerate
    assert v6.witness.degree == 6 and v6.witness_coefficient.is_zero()
    v22 = nondegenerate(regular_eigen_action(make_group([2, 2])))
    assert v22.nondegenerate


def test_custom_multiplicities():
    g = make_group([3])
    # only the trivial character: (sum of copies)^3 is nondegenerate
    assert nondegenerate(eigen_action_with_multiplicities(g, [2, 0, 0])).nondegenerate
    v = nondegenerate(eigen_action_with_multiplicities(g, [1, 2, 1]))
    assert v.representation == "custom-eigen"
    assert v.nondegenerate == nondegenerate(regular_eigen_action(g)).nondegenerate


def test_verdict_round_trip():
    for act in (regular_perm_action(make_group([4])), regular_eigen_action(make_group([6])),
                regular_eigen_action(make_group([5]))):
        v = nondegenerate(act)
        assert Verdict.from_dict(v.to_dict()) == v


def test_evaluation_examples():
    x1, x2 = (0,), (1,)
    cert = evaluation_certificate([{Monomial.of([x1]): 1}, {Monomial.of([x2]): 1}], [x1, x2])
    assert cert.points == [(1, 0), (0, 1)] and cert.det == 1
    tab = orbit_decomposition(regular_perm_action(make_group([2])), 2)
    cert = evaluation_certificate(orbit_sums(tab), tab.action.variables)
    assert cert.points == [(1, 0), (1, 1)]
    assert abs(cert.det) == 1
    assert EvaluationCertificate.from_dict(cert.to_dict()) == cert


def test_evaluation_z5():
    act = regular_perm_action(make_group([5]))
    tab = orbit_decomposition(act, 5)
    cert = evaluation_certificate(orbit_sums(tab), act.variables)
    assert len(cert.points) == 26 and cert.det != 0
    assert determinant(cert.matrix) == cert.det


def test_evaluation_failure():
    x = (0,)
    dependent = [{Monomial.of([x]): 1}, {Monomial.of([x]): 2}]
    with pytest.raises(SearchFailure):
        evaluation_certificate(dependent, [x], budget=50)
