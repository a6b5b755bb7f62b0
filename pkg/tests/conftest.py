import itertools

import numpy as np
import pytest

from ghostnum.groups import group_from_multiplication


def perm_group(generators, degree, p, label):
    """Independent construction: close a set of permutations under composition."""
    ident = tuple(range(degree))
    elements = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in generators:
                c = tuple(g[a[i]] for i in range(degree))
                if c not in seen:
                    seen.add(c)
                    elements.append(c)
                    nxt.append(c)
        frontier = nxt
    return group_from_multiplication(
        elements, lambda a, b: tuple(b[a[i]] for i in range(degree)), p, label
    )


def dihedral_perms(order):
    """Symmetries of a regular (order/2)-gon."""
    k = order // 2
    rot = tuple((i + 1) % k for i in range(k))
    ref = tuple((-i) % k for i in range(k))
    return perm_group([rot, ref], k, 2, f"Dih{order}")


def quaternion_units():
    """Q8 as the unit quaternions {+-1, +-i, +-j, +-k} with Hamilton's product."""
    def qmul(a, b):
        a1, b1, c1, d1 = a
        a2, b2, c2, d2 = b
        return (
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    units = [(1, 0, 0, 0)]
    for pos in range(4):
        for s in (1, -1):
            v = [0, 0, 0, 0]
            v[pos] = s
            if tuple(v) != (1, 0, 0, 0):
                units.append(tuple(v))
    return group_from_multiplication(units, qmul, 2, "Quat")


def order_histogram(G):
    vals, counts = np.unique(G.orders, return_counts=True)
    return dict(zip(vals.tolist(), counts.tolist()))


@pytest.fixture
def rng():
    return np.random.default_rng(20150219)
