import numpy as np
import pytest

from conftest import dihedral_perms, order_histogram, quaternion_units
from ghostnum.catalog import build, catalog_of_order, cyclic
from ghostnum.errors import (
    IndexOutOfRange,
    NotAGroup,
    NotCentral,
    NotNormal,
    OrderMismatch,
    OrderNotPrimePower,
    PrimeMismatch,
    TrivialGroup,
)
from ghostnum.groups import (
    central_order_p_subgroups,
    central_product,
    direct_product,
    element_order,
    is_normal,
    make_group,
    maximal_subgroups,
    quotient,
    structural_subgroups,
    subgroup_generated,
    trivial_subgroup,
)


def test_trivial_and_c2():
    T = make_group([[0]], 2, "1")
    assert T.order == 1 and T.n == 0
    C2 = make_group([[0, 1], [1, 0]], 2, "C2")
    assert C2.n == 1 and C2.exponent == 2


def test_broken_inverses_rejected():
    table = [[0, 1, 2], [1, 2, 1], [2, 0, 1]]
    with pytest.raises(NotAGroup) as exc:
        make_group(table, 3)
    assert exc.value.law == "inverses"


def test_non_associative_table_reports_triple():
    # a Latin square with identity 0 that is not associative (order 4 loop-like)
    table = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 1, 0], [3, 2, 0, 1]]
    G = np.array(table)
    brute = any(
        G[G[a, b], c] != G[a, G[b, c]] for a in range(4) for b in range(4) for c in range(4)
    )
    if brute:
        with pytest.raises(NotAGroup) as exc:
            make_group(table, 2)
        x, s, y = exc.value.witness
        assert G[G[x, s], y] != G[x, G[s, y]]


def test_order_not_prime_power():
    c6 = [[(i + j) % 6 for j in range(6)] for i in range(6)]
    with pytest.raises(OrderNotPrimePower):
        make_group(c6, 2)


def test_element_orders():
    C4 = cyclic(4)
    assert element_order(C4, 0) == 1
    assert element_order(C4, 1) == 4
    Q = build("Q(8)")
    z = structural_subgroups(Q).center.elements[1]
    squares_to_z = [g for g in range(8) if Q.mul(g, g) == z]
    assert squares_to_z and all(element_order(Q, g) == 4 for g in squares_to_z)
    with pytest.raises(IndexOutOfRange):
        element_order(C4, 4)


def test_q8_matches_quaternion_units():
    assert order_histogram(build("Q(8)")) == order_histogram(quaternion_units())


@pytest.mark.parametrize("order", [8, 16, 32])
def test_dihedral_matches_polygon_symmetries(order):
    assert order_histogram(build(f"D({order})")) == order_histogram(dihedral_perms(order))


def test_structural_c4():
    s = structural_subgroups(cyclic(4))
    assert s.center.order == 4 and s.derived.order == 1 and s.frattini.order == 2 and s.exponent == 4


def test_structural_d8():
    s = structural_subgroups(build("D(8)"))
    assert (s.center.order, s.derived.order, s.frattini.order, s.exponent) == (2, 2, 2, 4)
    assert s.center == s.derived == s.frattini


def test_structural_ea():
    s = structural_subgroups(build("EA(2,3)"))
    assert s.frattini.order == 1 and s.exponent == 2


def test_subgroup_generated():
    G = build("C(8)")
    assert subgroup_generated(G, []).elements == (0,)
    assert subgroup_generated(G, [2]).order == 4
    D = build("D(8)")
    r = int(np.flatnonzero(D.orders == 4)[0])
    assert subgroup_generated(D, [r]).order == 4
    with pytest.raises(IndexOutOfRange):
        subgroup_generated(G, [8])


def test_quotients():
    C4 = cyclic(4)
    Q = quotient(C4, subgroup_generated(C4, [2]))
    assert Q.order == 2
    for name in ("Q(8)", "D(8)"):
        G = build(name)
        K = quotient(G, structural_subgroups(G).center)
        assert K.order == 4 and K.exponent == 2


def test_quotient_requires_normal():
    D = build("D(8)")
    refl = [g for g in range(8) if D.orders[g] == 2 and g not in structural_subgroups(D).center]
    S = subgroup_generated(D, [refl[0]])
    assert not is_normal(D, S)
    with pytest.raises(NotNormal):
        quotient(D, S)


def test_direct_products():
    C2 = cyclic(2)
    P = direct_product(C2, C2)
    assert P.order == 4 and P.exponent == 2
    DC = direct_product(build("D(8)"), C2)
    assert DC.order == 16 and structural_subgroups(DC).frattini.order == 2
    C33 = direct_product(cyclic(3), cyclic(3))
    assert C33.order == 9 and C33.exponent == 3
    with pytest.raises(PrimeMismatch):
        direct_product(C2, cyclic(3))


def test_direct_product_associative_up_to_relabeling():
    A, B, C = build("D(8)"), cyclic(4), cyclic(2)
    left = direct_product(direct_product(A, B), C)
    right = direct_product(A, direct_product(B, C))
    assert left.order == right.order and left.exponent == right.exponent
    assert order_histogram(left) == order_histogram(right)


def _central_involution(G):
    return next(z for z in structural_subgroups(G).omega1_center.elements if z)


def test_central_product_almost_extraspecial():
    D8, C4 = build("D(8)"), cyclic(4)
    G = central_product(D8, C4, _central_involution(D8), 2)
    s = structural_subgroups(G)
    assert G.order == 16
    assert s.frattini.order == 2 and s.derived.order == 2 and s.frattini == s.derived
    assert s.center.order == 4 and np.any(G.orders[list(s.center.elements)] == 4)


def test_central_product_extraspecial_32():
    D8 = build("D(8)")
    z = _central_involution(D8)
    G = central_product(D8, D8, z, z)
    s = structural_subgroups(G)
    assert G.order == 32
    assert s.frattini.order == s.center.order == s.derived.order == 2


@pytest.mark.parametrize("p", [2, 3])
def test_central_product_abelian(p):
    C = cyclic(p * p)
    G = central_product(C, C, p, p)
    assert G.order == p**3
    assert structural_subgroups(G).center.order == G.order


def test_central_product_errors():
    D8 = build("D(8)")
    noncentral = next(g for g in range(8) if g not in structural_subgroups(D8).center)
    with pytest.raises(NotCentral):
        central_product(D8, D8, noncentral, _central_involution(D8))
    C4 = cyclic(4)
    with pytest.raises(OrderMismatch):
        central_product(C4, C4, 1, 2)


def test_central_order_p_subgroups():
    assert len(central_order_p_subgroups(build("Q(8)"))) == 1
    assert len(central_order_p_subgroups(build("EA(2,2)"))) == 3
    assert len(central_order_p_subgroups(cyclic(9))) == 1
    with pytest.raises(TrivialGroup):
        central_order_p_subgroups(make_group([[0]], 2))


def test_maximal_subgroups_count():
    # G/Phi elementary abelian of rank d has (p^d - 1)/(p - 1) hyperplanes
    assert len(maximal_subgroups(build("EA(2,3)"))) == 7
    assert len(maximal_subgroups(build("ES(3,1,+)"))) == 4
    assert all(K.order == 4 for K in maximal_subgroups(build("D(8)")))


@pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (3, 1), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3)])
def test_catalog_structural_invariants(p, n):
    for spec, G in catalog_of_order(p, n):
        s = structural_subgroups(G)
        assert s.derived.issubset(s.frattini), spec
        assert s.omega1_center.issubset(s.center), spec
        assert G.order % s.exponent == 0
        assert all(s.exponent % int(o) == 0 for o in G.orders)
        for C in central_order_p_subgroups(G):
            Q = quotient(G, C)
            assert Q.order == G.order // G.p
