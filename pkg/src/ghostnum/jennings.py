"""Jennings dimension series and the nilpotency index t(G).

Jennings' theorem gives ``t(G) = 1 + (p - 1) * sum(s * d_s)`` where
``p^{d_s} = |Gamma_s / Gamma_{s+1}|``.  The closed forms in
:func:`t_closed_form` cover the families where the index is known
without computing the series.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from ghostnum.groups import (
    GroupTable,
    Subgroup,
    _closure,
    commutator_table,
    log_p,
    subgroup_table,
    whole_group,
)

if TYPE_CHECKING:
    from ghostnum.bounds import ClassificationFlags


@dataclass(frozen=True, eq=False)
class JenningsData:
    group: GroupTable
    series: tuple[Subgroup, ...]
    dims: tuple[int, ...]
    t: int


def jennings_series(G: GroupTable) -> JenningsData:
    return G.cached("jennings", lambda: _jennings(G))


def _jennings(G: GroupTable) -> JenningsData:
    p = G.p
    comm = commutator_table(G)
    powers = np.array([G.power(g, p) for g in range(G.order)], dtype=np.int64)
    series: list[Subgroup] = [whole_group(G)]
    s = 1
    while series[-1].order > 1:
        s += 1
        prev = np.asarray(series[-1].elements)
        source = np.asarray(series[-(-s // p) - 1].elements)
        gens = np.union1d(np.unique(comm[prev, :]), np.unique(powers[source]))
        series.append(_closure(G, gens))
    dims = tuple(
        log_p(series[i].order // series[i + 1].order, p) for i in range(len(series) - 1)
    )
    t = 1 + (p - 1) * sum((i + 1) * d for i, d in enumerate(dims))
    return JenningsData(G, tuple(series), dims, t)


def t_index(G: GroupTable) -> int:
    return jennings_series(G).t


class ClosedForm(str, enum.Enum):
    CYCLIC = "cyclic"
    ELEMENTARY_ABELIAN = "elementary-abelian"
    CYCLIC_MAXIMAL = "cyclic-maximal"
    FRATTINI_ORDER_P = "frattini-order-p"
    DIRECT_PRODUCT_C2 = "direct-product-c2"


def t_closed_form(
    G: GroupTable, flags: "ClassificationFlags"
) -> tuple[int, ClosedForm] | None:
    """t(G) from a closed formula when G belongs to a known family, else None."""
    p, n = G.p, G.n
    if flags.cyclic:
        return G.order, ClosedForm.CYCLIC
    if flags.elementary_abelian:
        return n * (p - 1) + 1, ClosedForm.ELEMENTARY_ABELIAN
    if n >= 2 and flags.has_cyclic_maximal_subgroup:
        return p ** (n - 1) + p - 1, ClosedForm.CYCLIC_MAXIMAL
    if flags.frattini_order == p:
        if flags.exponent == p:
            return (n + 1) * (p - 1) + 1, ClosedForm.FRATTINI_ORDER_P
        return (p + n - 1) * (p - 1) + 1, ClosedForm.FRATTINI_ORDER_P
    if p == 2:
        from ghostnum.bounds import classify, split_central_factor

        split = split_central_factor(G)
        if split is not None:
            K = subgroup_table(split[1])
            inner = t_closed_form(K, classify(K))
            if inner is not None:
                return inner[0] + 1, ClosedForm.DIRECT_PRODUCT_C2
    return None
