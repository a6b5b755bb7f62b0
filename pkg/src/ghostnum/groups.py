"""Finite p-groups as validated multiplication tables.

Elements are the integers ``0 .. order-1`` and index 0 is always the
identity.  Every construction below goes through :func:`make_group`, so a
:class:`GroupTable` in hand is known to satisfy the group axioms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from ghostnum.errors import (
    IndexOutOfRange,
    NotAGroup,
    NotCentral,
    NotNormal,
    OrderMismatch,
    OrderNotPrimePower,
    PrimeMismatch,
    TrivialGroup,
    WrongPrime,
)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def prime_power(m: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``m == p**k`` and ``k >= 1``, or None."""
    if m < 2:
        return None
    p = next(d for d in range(2, m + 1) if m % d == 0)
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    return (p, k) if m == 1 else None


def log_p(m: int, p: int) -> int | None:
    k = 0
    while m > 1 and m % p == 0:
        m //= p
        k += 1
    return k if m == 1 else None


@dataclass(frozen=True, eq=False)
class GroupTable:
    p: int
    n: int
    table: np.ndarray
    label: str = "G"
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def cached(self, key: Hashable, compute: Callable[[], object]):
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]

    @property
    def inverse(self) -> np.ndarray:
        return self.cached("inverse", lambda: np.argmin(self.table, axis=1))

    @property
    def orders(self) -> np.ndarray:
        return self.cached("orders", lambda: _element_orders(self.table))

    @property
    def exponent(self) -> int:
        return int(self.orders.max())

    def power(self, g: int, k: int) -> int:
        x = 0
        for _ in range(k % int(self.orders[g])):
            x = int(self.table[x, g])
        return x

    def __repr__(self) -> str:
        return f"GroupTable({self.label!r}, p={self.p}, order={self.order})"


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: GroupTable
    elements: tuple[int, ...]
    generators: tuple[int, ...] = ()

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.elements)] = True
        return m

    def __contains__(self, g: int) -> bool:
        return bool(self.mask[g])

    def issubset(self, other: "Subgroup") -> bool:
        return set(self.elements) <= set(other.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((id(self.parent), self.elements))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} in {self.parent.label})"


def _element_orders(table: np.ndarray) -> np.ndarray:
    size = table.shape[0]
    idx = np.arange(size)
    orders = np.zeros(size, dtype=np.int64)
    cur = idx.copy()
    for k in range(1, size + 1):
        orders[(cur == 0) & (orders == 0)] = k
        if orders.all():
            break
        cur = table[cur, idx]
    return orders


def _magma_closure(table: np.ndarray, start: Iterable[int], gens: Sequence[int]) -> np.ndarray:
    """Mask of everything reachable from ``start`` by right multiplication by ``gens``."""
    mask = np.zeros(table.shape[0], dtype=bool)
    frontier = np.unique(np.fromiter(start, dtype=np.int64))
    mask[frontier] = True
    gens = np.asarray(gens, dtype=np.int64)
    while frontier.size and gens.size:
        nxt = np.unique(table[np.ix_(frontier, gens)].ravel())
        nxt = nxt[~mask[nxt]]
        mask[nxt] = True
        frontier = nxt
    return mask


def _check_associative(table: np.ndarray) -> None:
    # Light's test: the elements s with (xs)y = x(sy) for all x, y are closed
    # under multiplication, so it suffices to test a generating set.
    size = table.shape[0]
    gens: list[int] = []
    mask = np.zeros(size, dtype=bool)
    mask[0] = True
    for g in range(size):
        if not mask[g]:
            gens.append(g)
            mask = _magma_closure(table, np.flatnonzero(mask), gens)
    for s in gens:
        left = table[table[:, s], :]
        right = table[:, table[s, :]]
        bad = np.argwhere(left != right)
        if bad.size:
            x, y = (int(v) for v in bad[0])
            raise NotAGroup("associativity", (x, s, y))


def make_group(table, p: int, label: str = "G") -> GroupTable:
    """Validate a multiplication table and wrap it as a :class:`GroupTable`."""
    t = np.array(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise NotAGroup("shape", tuple(t.shape), "table must be a non-empty square array")
    if not is_prime(p):
        raise WrongPrime(f"{p} is not prime")
    size = t.shape[0]
    n = 0 if size == 1 else log_p(size, p)
    if n is None:
        raise OrderNotPrimePower(f"order {size} is not a power of {p}")
    if t.min() < 0 or t.max() >= size:
        raise NotAGroup("closure", (), "table entries out of range")
    idx = np.arange(size)
    for g in idx[(t[0] != idx) | (t[:, 0] != idx)]:
        raise NotAGroup("identity", (0, int(g)))
    zero_counts = (t == 0).sum(axis=1)
    for g in np.flatnonzero(zero_counts != 1):
        raise NotAGroup("inverses", (int(g),), f"element {g} has {zero_counts[g]} right inverses")
    inv = np.argmin(t, axis=1)
    for g in np.flatnonzero(t[inv, idx] != 0):
        raise NotAGroup("inverses", (int(g), int(inv[g])), f"right inverse of {g} is not a left inverse")
    _check_associative(t)
    t.setflags(write=False)
    group = GroupTable(p, n, t, label)
    bad = [g for g, o in enumerate(group.orders) if o == 0 or log_p(int(o), p) is None]
    if bad:
        raise WrongPrime(f"element {bad[0]} does not have p-power order")
    return group


def group_from_multiplication(
    elements: Sequence[Hashable], mul: Callable, p: int, label: str
) -> GroupTable:
    """Tabulate ``mul`` on ``elements``; the first element must be the identity."""
    index = {e: i for i, e in enumerate(elements)}
    size = len(elements)
    table = np.empty((size, size), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[i, j] = index[mul(a, b)]
    return make_group(table, p, label)


def trivial_group(p: int) -> GroupTable:
    return make_group([[0]], p, "1")


def element_order(G: GroupTable, g: int) -> int:
    if not 0 <= g < G.order:
        raise IndexOutOfRange(f"element {g} not in group of order {G.order}")
    return int(G.orders[g])


def _subgroup_mask(G: GroupTable, start_mask: np.ndarray, gens: Iterable[int]) -> tuple[np.ndarray, list[int]]:
    """Close ``start_mask`` (already a subgroup) under ``gens``; returns mask and used gens."""
    mask = start_mask.copy()
    used: list[int] = []
    for g in gens:
        if mask[g]:
            continue
        used.append(int(g))
        # the subgroup generated by the old one and g is reached by right
        # multiplying old elements by words in (old generators + g); old
        # elements already absorb old generators, so g plus mask suffices
        # once we iterate to a fixed point.
        while True:
            els = np.flatnonzero(mask)
            new = np.unique(G.table[np.ix_(els, els)].ravel())
            new = np.union1d(new, G.table[els, g])
            if mask[new].all():
                break
            mask[new] = True
    return mask, used


def _closure(G: GroupTable, gens: Iterable[int], base: Subgroup | None = None) -> Subgroup:
    start = np.zeros(G.order, dtype=bool)
    start[0] = True
    base_gens: list[int] = []
    if base is not None:
        start = base.mask
        base_gens = list(base.generators)
    mask, used = _subgroup_mask(G, start, gens)
    return Subgroup(G, tuple(int(x) for x in np.flatnonzero(mask)), tuple(base_gens + used))


def subgroup_generated(G: GroupTable, gens: Sequence[int]) -> Subgroup:
    for g in gens:
        if not 0 <= g < G.order:
            raise IndexOutOfRange(f"element {g} not in group of order {G.order}")
    return _closure(G, [int(g) for g in gens])


def subgroup_from_elements(G: GroupTable, elements: Iterable[int]) -> Subgroup:
    """Wrap a known-closed element set, recording a greedy generating set."""
    els = sorted(set(int(e) for e in elements) | {0})
    sub = _closure(G, els)
    if sub.elements != tuple(els):
        raise ValueError("element set is not a subgroup")
    return sub


def trivial_subgroup(G: GroupTable) -> Subgroup:
    return Subgroup(G, (0,), ())


def whole_group(G: GroupTable) -> Subgroup:
    return _closure(G, range(G.order))


@dataclass(frozen=True)
class StructuralSubgroups:
    center: Subgroup
    derived: Subgroup
    frattini: Subgroup
    omega1_center: Subgroup
    exponent: int


def commutator_table(G: GroupTable) -> np.ndarray:
    """``c[g, h] = g^-1 h^-1 g h``."""
    def compute():
        inv = G.inverse
        t = G.table
        return t[t[np.ix_(inv, inv)], t]
    return G.cached("commutators", compute)


def structural_subgroups(G: GroupTable) -> StructuralSubgroups:
    return G.cached("structure", lambda: _structural(G))


def _structural(G: GroupTable) -> StructuralSubgroups:
    t = G.table
    central = np.all(t == t.T, axis=1)
    center = subgroup_from_elements(G, np.flatnonzero(central))
    comms = np.unique(commutator_table(G))
    derived = _closure(G, comms)
    pth = np.unique([G.power(g, G.p) for g in range(G.order)])
    # for p-groups the Frattini subgroup is G^p [G, G]
    frattini = _closure(G, pth, base=derived)
    omega = [z for z in center.elements if G.p % int(G.orders[z]) == 0]
    omega1 = subgroup_from_elements(G, omega)
    return StructuralSubgroups(center, derived, frattini, omega1, G.exponent)


def is_normal(G: GroupTable, N: Subgroup) -> bool:
    els = np.asarray(N.elements)
    conj = G.table[G.table[:, els], G.inverse[:, None]]
    return bool(N.mask[conj].all())


def subgroup_table(S: Subgroup, label: str | None = None) -> GroupTable:
    """The subgroup ``S`` as a standalone group (elements renumbered in order)."""
    G = S.parent
    els = np.asarray(S.elements)
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[els] = np.arange(len(els))
    return make_group(pos[G.table[np.ix_(els, els)]], G.p, label or f"{G.label}[{len(els)}]")


def quotient(G: GroupTable, N: Subgroup, label: str | None = None) -> GroupTable:
    if N.parent is not G:
        raise ValueError("subgroup belongs to a different group")
    if not is_normal(G, N):
        raise NotNormal(f"subgroup of order {N.order} is not normal in {G.label}")
    els = np.asarray(N.elements)
    coset = np.full(G.order, -1, dtype=np.int64)
    reps: list[int] = []
    for g in range(G.order):
        if coset[g] < 0:
            coset[G.table[g, els]] = len(reps)
            reps.append(g)
    r = np.asarray(reps)
    qt = coset[G.table[np.ix_(r, r)]]
    return make_group(qt, G.p, label or f"{G.label}/{N.order}")


def direct_product(G: GroupTable, H: GroupTable, label: str | None = None) -> GroupTable:
    if G.p != H.p:
        raise PrimeMismatch(f"cannot multiply a {G.p}-group by a {H.p}-group")
    gi = np.repeat(np.arange(G.order), H.order)
    hi = np.tile(np.arange(H.order), G.order)
    table = G.table[np.ix_(gi, gi)] * H.order + H.table[np.ix_(hi, hi)]
    return make_group(table, G.p, label or f"{G.label}x{H.label}")


def pair_index(G: GroupTable, H: GroupTable, g: int, h: int) -> int:
    """Index of ``(g, h)`` in ``direct_product(G, H)``."""
    return g * H.order + h


def is_central(G: GroupTable, z: int) -> bool:
    return bool(np.array_equal(G.table[z], G.table[:, z]))


def central_product(
    G: GroupTable, H: GroupTable, zG: int, zH: int, label: str | None = None
) -> GroupTable:
    """``(G x H) / <(zG, zH^-1)>``, gluing two central subgroups of order p."""
    for grp, z in ((G, zG), (H, zH)):
        if not 0 <= z < grp.order:
            raise IndexOutOfRange(f"element {z} not in {grp.label}")
        if not is_central(grp, z):
            raise NotCentral(f"element {z} is not central in {grp.label}")
    oG, oH = element_order(G, zG), element_order(H, zH)
    if oG != oH or oG != G.p:
        raise OrderMismatch(f"glued elements must both have order p, got {oG} and {oH}")
    P = direct_product(G, H)
    N = subgroup_generated(P, [pair_index(G, H, zG, int(H.inverse[zH]))])
    return quotient(P, N, label or f"{G.label}*{H.label}")


def central_order_p_subgroups(G: GroupTable) -> list[Subgroup]:
    if G.order == 1:
        raise TrivialGroup("the trivial group has no subgroups of order p")
    omega = structural_subgroups(G).omega1_center
    seen: dict[tuple[int, ...], Subgroup] = {}
    for z in omega.elements:
        if z == 0:
            continue
        sub = subgroup_generated(G, [z])
        seen.setdefault(sub.elements, sub)
    return [seen[k] for k in sorted(seen)]


def frattini_coordinates(G: GroupTable) -> tuple[np.ndarray, list[int]]:
    """Coordinates of every element in ``G / Phi(G)`` with respect to a chosen basis.

    Returns an ``(order, d)`` array over GF(p) and the basis elements.
    """
    def compute():
        phi = structural_subgroups(G).frattini
        basis: list[int] = []
        mask = phi.mask
        for g in range(G.order):
            if not mask[g]:
                basis.append(g)
                mask, _ = _subgroup_mask(G, mask, [g])
        d = len(basis)
        coords = np.zeros((G.order, d), dtype=np.int64)
        phi_els = np.asarray(phi.elements)
        for exps in itertools.product(range(G.p), repeat=d):
            w = 0
            for b, e in zip(basis, exps):
                w = G.mul(w, G.power(b, e))
            coords[G.table[w, phi_els]] = exps
        return coords, basis
    return G.cached("frattini_coordinates", compute)


def maximal_subgroups(G: GroupTable) -> list[Subgroup]:
    """All index-p subgroups, as kernels of nonzero functionals on ``G / Phi(G)``."""
    def compute():
        coords, _ = frattini_coordinates(G)
        d = coords.shape[1]
        result = []
        for lam in itertools.product(range(G.p), repeat=d):
            nz = [x for x in lam if x]
            if not nz or nz[0] != 1:
                continue
            kernel = np.flatnonzero((coords @ np.asarray(lam)) % G.p == 0)
            result.append(subgroup_from_elements(G, kernel))
        return result
    return G.cached("maximal_subgroups", compute)
