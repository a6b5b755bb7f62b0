"""Brute-force nilpotency index of the radical of GF(p)G.

For a p-group in characteristic p the radical is the augmentation ideal
``I``; this module multiplies out ``I^s`` as explicit subspaces of the
group algebra until it vanishes.  It shares nothing with the Jennings
computation beyond the multiplication table.
"""

from __future__ import annotations

import numpy as np

from ghostnum.catalog import default_cap
from ghostnum.errors import DimensionMismatch, SizeCapExceeded
from ghostnum.gfp import FpSubspace
from ghostnum.groups import GroupTable, whole_group

__all__ = ["FpSubspace", "augmentation_ideal", "ideal_power_step", "nilpotency_index_radical"]


def augmentation_ideal(G: GroupTable) -> FpSubspace:
    size = G.order
    if size == 1:
        return FpSubspace.zero(G.p, 1)
    rows = np.eye(size, dtype=np.int64)[1:]
    rows[:, 0] = -1
    return FpSubspace.span(rows, G.p, size)


def ideal_power_step(G: GroupTable, V: FpSubspace, generators=None) -> FpSubspace:
    """Span of ``v * (g - 1)`` for basis vectors ``v`` of ``V``.

    ``generators`` defaults to every non-identity element.  Passing a
    generating set of G gives the same subspace whenever ``V`` is a
    two-sided ideal, since then ``V * kG = V`` and the augmentation ideal is
    the left ideal generated by ``g - 1`` for ``g`` in any generating set.
    """
    if V.ambient_dim != G.order or V.p != G.p:
        raise DimensionMismatch(
            f"subspace of GF({V.p})^{V.ambient_dim} is not in the group algebra of {G.label}"
        )
    if V.dim == 0:
        return V
    gens = range(1, G.order) if generators is None else generators
    # (v * g)[k] = v[k g^-1]
    blocks = [V.basis[:, G.table[:, G.inverse[g]]] - V.basis for g in gens]
    return FpSubspace.span(np.vstack(blocks), G.p, G.order)


def radical_powers(G: GroupTable, generators=None) -> list[FpSubspace]:
    """``[I^1, I^2, ..., I^t = 0]``."""
    if generators is None:
        generators = whole_group(G).generators
    powers = [augmentation_ideal(G)]
    while powers[-1].dim > 0:
        nxt = ideal_power_step(G, powers[-1], generators)
        if nxt.dim >= powers[-1].dim:
            raise ArithmeticError("radical powers stopped decreasing")
        powers.append(nxt)
    return powers


def nilpotency_index_radical(G: GroupTable, cap: int | None = None) -> int:
    cap = default_cap(G.p) if cap is None else cap
    if G.order > cap:
        raise SizeCapExceeded(f"order {G.order} exceeds cap {cap}")
    return G.cached(("radical_t", None), lambda: len(radical_powers(G)))
