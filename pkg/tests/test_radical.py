import numpy as np
import pytest

from ghostnum.catalog import build, catalog_of_order
from ghostnum.errors import DimensionMismatch, SizeCapExceeded
from ghostnum.gfp import FpSubspace
from ghostnum.groups import make_group, whole_group
from ghostnum.jennings import t_index
from ghostnum.radical import augmentation_ideal, ideal_power_step, nilpotency_index_radical, radical_powers


def test_augmentation_dims():
    assert augmentation_ideal(make_group([[0]], 2)).dim == 0
    I = augmentation_ideal(build("C(2)"))
    assert I.dim == 1 and I.contains([1, 1])
    assert augmentation_ideal(build("Q(8)")).dim == 7


def test_step_of_zero():
    G = build("D(8)")
    Z = FpSubspace.zero(2, 8)
    assert ideal_power_step(G, Z).dim == 0


def test_step_c4_matches_truncated_polynomials():
    G = build("C(4)")
    I2 = ideal_power_step(G, augmentation_ideal(G))
    assert I2.dim == 2
    # (g - 1)^2 and (g - 1)^3 written in the group basis, with g the generator 1
    g1_sq = np.array([1, 0, 1, 0])          # 1 - 2g + g^2 mod 2
    g1_cube = np.array([1, 1, 1, 1])        # binomial coefficients mod 2
    assert I2.contains(g1_sq) and I2.contains(g1_cube)
    assert [V.dim for V in radical_powers(G)] == [3, 2, 1, 0]


def test_step_klein():
    G = build("EA(2,2)")
    I2 = ideal_power_step(G, augmentation_ideal(G))
    assert I2.dim == 1 and I2.contains(np.ones(4, dtype=np.int64))


def test_step_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        ideal_power_step(build("C(4)"), FpSubspace.zero(2, 8))
    with pytest.raises(DimensionMismatch):
        ideal_power_step(build("C(4)"), FpSubspace.zero(3, 4))


def test_generating_set_matches_all_elements():
    for name in ("D(8)", "ES(3,1,-)", "C(3)xC(9)"):
        G = build(name)
        V = augmentation_ideal(G)
        while V.dim:
            gens = whole_group(G).generators
            full = ideal_power_step(G, V)
            assert ideal_power_step(G, V, gens) == full
            V = full
        assert V.dim == 0


@pytest.mark.parametrize("spec,t", [("C(8)", 8), ("EA(2,3)", 4), ("D(8)", 5), ("ES(3,1,+)", 9)])
def test_nilpotency_examples(spec, t):
    assert nilpotency_index_radical(build(spec)) == t


def test_cap():
    with pytest.raises(SizeCapExceeded):
        nilpotency_index_radical(build("C(16)"), cap=8)


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_agrees_with_jennings(p, n):
    for spec, G in catalog_of_order(p, n):
        assert nilpotency_index_radical(G) == t_index(G), spec


def test_powers_strictly_decrease():
    dims = [V.dim for V in radical_powers(build("Q(16)"))]
    assert all(a > b for a, b in zip(dims, dims[1:])) and dims[-1] == 0
