import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from ghostnum.errors import BudgetExceeded, NotEquivariant, ShapeMismatch
from ghostnum.gfp import FpSubspace, rank
from ghostnum.stmod import (
    JordanModule,
    ModuleMap,
    certified_lower_bound,
    compose,
    exhaustive_ghost_check,
    ghost_chain_search,
    ghost_space,
    hom_basis,
    hom_basis_blocks,
    hom_basis_bruteforce,
    identity_map,
    induced_tate_map,
    is_ghost,
    is_stably_trivial,
    jordan,
    mult_x,
    projective_factoring,
    stable_dimension,
    tate_dimension,
    verify_chain,
    zero_map,
)

MODULI = [2, 3, 4, 5, 7, 8, 9]
PROPS = settings(max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def modules(draw, m=None, max_blocks=3):
    m = draw(st.sampled_from(MODULI)) if m is None else m
    blocks = draw(st.lists(st.integers(1, m), min_size=1, max_size=max_blocks))
    return jordan(m, *blocks)


def random_map(draw, M, N):
    basis = hom_basis(M, N)
    if not basis:
        return zero_map(M, N)
    coeffs = draw(st.lists(st.integers(0, M.p - 1), min_size=len(basis), max_size=len(basis)))
    mat = sum(c * h for c, h in zip(coeffs, basis)) % M.p
    return ModuleMap(M, N, mat)


def random_element(draw, space: FpSubspace, shape):
    if space.dim == 0:
        return np.zeros(shape, dtype=np.int64)
    coeffs = np.array(draw(st.lists(st.integers(0, space.p - 1), min_size=space.dim, max_size=space.dim)))
    return ((coeffs @ space.basis) % space.p).reshape(shape)


# -- examples -------------------------------------------------------------------


def test_module_validation():
    with pytest.raises(ValueError):
        jordan(4, 5)
    with pytest.raises(ValueError):
        JordanModule(6, 2, (1,))
    with pytest.raises(NotEquivariant):
        ModuleMap(jordan(4, 2), jordan(4, 2), [[0, 1], [0, 0]])
    with pytest.raises(ShapeMismatch):
        ModuleMap(jordan(4, 2), jordan(4, 3), np.eye(2))


def test_tate_examples():
    for d in range(-3, 4):
        assert tate_dimension(jordan(4, 4), d) == 0
    assert tate_dimension(jordan(4, 1), 0) == 1
    assert tate_dimension(jordan(9, 2, 3), -1) == 2


def test_induced_examples():
    J2 = jordan(4, 2)
    assert induced_tate_map(identity_map(J2), 0).tolist() == [[1]]
    assert induced_tate_map(mult_x(J2), 0).tolist() == [[0]]
    assert not np.any(induced_tate_map(zero_map(J2, jordan(4, 3)), 1))


@pytest.mark.parametrize("m", [3, 4, 5, 8, 9])
def test_mult_x_is_ghost(m):
    for a in range(2, m):
        assert is_ghost(mult_x(jordan(m, a)))


def test_identity_on_trivial_is_not_ghost():
    for c in (1, 2):
        assert not is_ghost(ModuleMap(jordan(3, 1), jordan(3, 1), [[c]]))


def test_maps_from_projective_are_ghosts():
    P = jordan(4, 4)
    for h in hom_basis(P, jordan(4, 3)):
        assert is_ghost(ModuleMap(P, jordan(4, 3), h))


def test_stably_trivial_examples():
    assert not is_stably_trivial(mult_x(jordan(4, 2)))
    assert is_stably_trivial(identity_map(jordan(4, 4)))
    for m in range(2, 10):
        if m in (6,):
            continue
        for a in range(1, m):
            assert is_stably_trivial(mult_x(jordan(m, a), min(a, m - a)))


def test_composed_x_cubed_on_j4():
    J4 = jordan(9, 4)
    f = mult_x(J4)
    comp = compose(f, compose(f, f))
    assert np.array_equal(comp.matrix, mult_x(J4, 3).matrix)
    assert not is_stably_trivial(comp)
    assert verify_chain([f, f, f]) is not None


def test_compose_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        compose(identity_map(jordan(4, 2)), identity_map(jordan(4, 3)))


def test_chain_examples():
    c = ghost_chain_search(4, 1)
    assert c.certified_bound == 2 and c.modules[0].blocks == (2,)
    c = ghost_chain_search(9, 3)
    assert c.certified_bound == 4 and all(M.blocks == (4,) for M in c.modules)
    with pytest.raises(BudgetExceeded) as exc:
        ghost_chain_search(2, 1, 3)
    assert exc.value.exhaustive


@pytest.mark.parametrize("m,bound", [(8, 4), (3, 1), (25, 12), (2, 1), (4, 2)])
def test_certified_lower_bound(m, bound):
    assert certified_lower_bound(m) == bound


def test_no_ghosts_for_c2_c3():
    assert exhaustive_ghost_check(2, 3) == []
    assert exhaustive_ghost_check(3, 3) == []
    assert exhaustive_ghost_check(4, 1)


def test_certificate_serializes():
    d = ghost_chain_search(8, 3).to_dict()
    assert d["certified_bound"] == 4 and len(d["maps"]) == 3


# -- oracles --------------------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3])
def test_hom_basis_closed_form_matches_nullspace(p):
    for a in range(1, 10):
        for b in range(1, 10):
            closed = FpSubspace.span(np.array([h.ravel() for h in hom_basis_blocks(a, b)]).reshape(-1, a * b), p, a * b)
            assert closed == hom_basis_bruteforce(a, b, p)


def _stable_end_bruteforce(a, m, p):
    """dim End(J_a) minus the rank of maps factoring through J_m, from nullspace bases only."""
    end = hom_basis_bruteforce(a, a, p)
    into = [v.reshape(m, a) for v in hom_basis_bruteforce(a, m, p).basis]
    out = [v.reshape(a, m) for v in hom_basis_bruteforce(m, a, p).basis]
    products = [((g @ f) % p).ravel() for f in into for g in out]
    return end.dim - rank(np.array(products).reshape(-1, a * a), p)


@pytest.mark.parametrize("m", [2, 3, 4, 5, 7, 8, 9])
def test_stable_end_dimension(m):
    p = {2: 2, 3: 3, 4: 2, 5: 5, 7: 7, 8: 2, 9: 3}[m]
    for a in range(1, m):
        assert _stable_end_bruteforce(a, m, p) == min(a, m - a)
        assert stable_dimension(jordan(m, a), jordan(m, a)) == min(a, m - a)


# -- properties -----------------------------------------------------------------


@given(modules(), st.data())
@PROPS
def test_tate_additive_and_periodic(M, data):
    N = data.draw(modules(m=M.m))
    for d in range(-2, 2):
        assert tate_dimension(M + N, d) == tate_dimension(M, d) + tate_dimension(N, d)
        assert tate_dimension(M, d) == tate_dimension(M, d + 2)
        assert tate_dimension(M, d) == sum(1 for b in M.blocks if b < M.m)
    f = random_map(data.draw, M, N)
    for d in range(-2, 2):
        assert np.array_equal(induced_tate_map(f, d), induced_tate_map(f, d + 2))


@given(modules(), st.data())
@PROPS
def test_ghosts_form_an_ideal(M, data):
    N = data.draw(modules(m=M.m))
    P = data.draw(modules(m=M.m))
    Q = data.draw(modules(m=M.m))
    f = ModuleMap(M, N, random_element(data.draw, ghost_space(M, N), (N.dim, M.dim)))
    assert is_ghost(f)
    g = random_map(data.draw, N, P)
    h = random_map(data.draw, Q, M)
    assert is_ghost(compose(g, f))
    assert is_ghost(compose(f, h))


@given(modules(), st.data())
@settings(max_examples=300, deadline=None)
def test_stably_trivial_implies_ghost(M, data):
    N = data.draw(modules(m=M.m))
    f = ModuleMap(M, N, random_element(data.draw, projective_factoring(M, N), (N.dim, M.dim)))
    assert is_stably_trivial(f)
    assert is_ghost(f)


@given(modules(max_blocks=2), st.data())
@settings(max_examples=300, deadline=None)
def test_invariant_under_automorphisms(M, data):
    N = data.draw(modules(m=M.m, max_blocks=2))
    f = random_map(data.draw, M, N)
    u = random_map(data.draw, M, M)
    v = random_map(data.draw, N, N)
    if rank(u.matrix, M.p) < M.dim or rank(v.matrix, N.p) < N.dim:
        return
    g = compose(v, compose(f, u))
    assert is_ghost(g) == is_ghost(f)
    assert is_stably_trivial(g) == is_stably_trivial(f)
