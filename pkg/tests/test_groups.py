import itertools

import pytest
from hypothesis import given, strategies as st

from nql.groups import (
    AbelianGroup,
    abelian_groups_of_order,
    factorize,
    format_group_spec,
    make_group,
    parse_group_spec,
)

SMALL_GROUPS = [g for n in range(1, 13) for g in abelian_groups_of_order(n)]


def test_parse_examples():
    assert parse_group_spec("2x4").moduli == (2, 4)
    assert parse_group_spec("5").moduli == (5,)
    assert parse_group_spec("2X2X2").moduli == (2, 2, 2)
    assert parse_group_spec("1").order == 1


@pytest.mark.parametrize("bad", ["", "x", "2x", "x3", "0", "2x0", "a", "2 x 3", "-3", "2x-1", "²"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_group_spec(bad)


@pytest.mark.parametrize("g", SMALL_GROUPS, ids=format_group_spec)
def test_format_round_trip(g):
    assert parse_group_spec(format_group_spec(g)) == g


def test_groups_of_order():
    specs = lambda n: sorted(g.moduli for g in abelian_groups_of_order(n))
    assert specs(8) == sorted([(8,), (2, 4), (2, 2, 2)])
    assert specs(9) == sorted([(9,), (3, 3)])
    assert specs(12) == sorted([(12,), (2, 6)])
    assert specs(7) == [(7,)]
    assert specs(16) == sorted([(16,), (2, 8), (4, 4), (2, 2, 4), (2, 2, 2, 2)])
    for n in range(1, 40):
        for g in abelian_groups_of_order(n):
            assert g.order == n and g.canonical


def test_element_examples():
    G = make_group([2, 4])
    assert G.order == 8 and len(G.elements()) == 8
    assert G.add((1, 3), (1, 2)) == (0, 1)
    assert G.neg((1, 1)) == (1, 3)
    assert G.element_order((1, 2)) == 2
    assert G.element_order((0, 1)) == 4
    with pytest.raises(ValueError):
        G.check((2, 0))


def test_pairing_examples():
    G = make_group([5])
    assert G.pairing((1,), (1,)) == 1
    assert G.pairing((2,), (3,)) == 1
    H = make_group([2, 4])
    # n = 8: factor weights n/q_i are 4 and 2
    assert H.pairing((1, 0), (1, 0)) == 4
    assert H.pairing((0, 1), (0, 1)) == 2
    assert H.pairing((1, 1), (1, 3)) == (4 + 6) % 8
    for g in SMALL_GROUPS:
        assert all(g.pairing(g.zero, s) == 0 for s in g.elements())


@pytest.mark.parametrize("g", SMALL_GROUPS, ids=format_group_spec)
def test_pairing_bilinear_and_nondegenerate(g):
    n = g.order
    E = g.elements()
    for lam, mu, s in itertools.product(E, repeat=3):
        assert g.pairing(g.add(lam, mu), s) == (g.pairing(lam, s) + g.pairing(mu, s)) % n
        assert g.pairing(s, g.add(lam, mu)) == (g.pairing(s, lam) + g.pairing(s, mu)) % n
    for lam in E:
        if lam != g.zero:
            assert any(g.pairing(lam, s) for s in E)


def _order_profile(g):
    return sorted(g.element_order(x) for x in g.elements())


@pytest.mark.parametrize(
    "mods", [(6, 4), (4, 6), (3, 2), (2, 3, 4), (12,), (2, 2, 3), (1, 5), (10, 15), (9, 3), (1,)]
)
def test_normalize_preserves_type(mods):
    g = make_group(mods)
    h = g.normalized
    assert h.canonical and h.order == g.order
    assert _order_profile(h) == _order_profile(g)


def test_normalize_example():
    assert make_group([6, 4]).normalized.moduli == (2, 12)
    assert make_group([3, 2]).normalized.moduli == (6,)


@given(st.lists(st.integers(1, 12), min_size=1, max_size=3))
def test_normalize_property(mods):
    g = make_group(mods)
    if g.order > 200:
        return
    h = g.normalized
    assert h.order == g.order
    assert all(h.moduli[i + 1] % h.moduli[i] == 0 for i in range(h.rank - 1))
    assert _order_profile(h) == _order_profile(g)


def test_subgroup_elements():
    G = make_group([2, 4])
    assert G.subgroup_elements([2]) == [(0, j) for j in range(4)]
    U = make_group([2, 2, 2]).subgroup_elements([2, 3])
    assert len(U) == 4 and all(x[0] == 0 for x in U)
    assert make_group([3]).subgroup_elements([]) == [(0,)]
    with pytest.raises(ValueError):
        G.subgroup_elements([3])


def test_factorize():
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert factorize(1) == {}


def test_trivial_group():
    t = parse_group_spec("1")
    assert t.order == 1 and t.elements() == [t.zero]
    assert isinstance(t, AbelianGroup)
