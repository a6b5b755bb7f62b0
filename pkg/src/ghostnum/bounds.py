"""Classification predicates and ghost-number intervals for p-group algebras.

Ghost numbers of non-cyclic groups are never computed directly.  Each
group gets an interval ``[ghost_lower, ghost_upper]`` assembled from the
known inequalities, collapsed to a point when the group belongs to a
family whose ghost number is known exactly.  Every contributing number is
recorded in ``sources`` with the rule that produced it.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from ghostnum.catalog import default_cap
from ghostnum.errors import SizeCapExceeded
from ghostnum.groups import (
    GroupTable,
    Subgroup,
    central_order_p_subgroups,
    log_p,
    maximal_subgroups,
    quotient,
    structural_subgroups,
    subgroup_generated,
    subgroup_table,
)
from ghostnum.jennings import t_index


@dataclass(frozen=True)
class ClassificationFlags:
    cyclic: bool
    abelian: bool
    elementary_abelian: bool
    extraspecial: bool
    almost_extraspecial: bool
    has_cyclic_maximal_subgroup: bool
    is_exponent_p_extraspecial: bool
    is_p1plus2_minus: bool
    excluded_thm11: bool
    exponent: int
    frattini_order: int
    center_order: int
    dihedral: bool

    def to_dict(self) -> dict:
        return asdict(self)


def is_dihedral(G: GroupTable) -> bool:
    """``<r, s | r^{2^{n-1}} = s^2 = 1, s r s^-1 = r^-1>`` for n >= 3."""
    if G.p != 2 or G.n < 3:
        return False
    half = G.order // 2
    rots = np.flatnonzero(G.orders == half)
    invols = np.flatnonzero(G.orders == 2)
    for r in rots:
        cyc = subgroup_generated(G, [int(r)]).mask
        for s in invols:
            if not cyc[s] and G.mul(G.mul(int(s), int(r)), int(s)) == G.inverse[r]:
                return True
    return False


def classify(G: GroupTable) -> ClassificationFlags:
    return G.cached("flags", lambda: _classify(G))


def _classify(G: GroupTable) -> ClassificationFlags:
    p, n = G.p, G.n
    st = structural_subgroups(G)
    exponent = st.exponent
    abelian = st.center.order == G.order
    phi, derived, center = st.frattini, st.derived, st.center
    extraspecial = center.order == p and phi == derived == center
    center_cyclic = bool(np.any(G.orders[list(center.elements)] == center.order))
    almost = phi == derived and phi.order == p and center.order == p * p and center_cyclic
    exp_p_es = extraspecial and exponent == p
    minus = extraspecial and p != 2 and n == 3 and exponent == p * p
    return ClassificationFlags(
        cyclic=exponent == G.order,
        abelian=abelian,
        elementary_abelian=abelian and exponent <= p,
        extraspecial=extraspecial,
        almost_extraspecial=almost,
        has_cyclic_maximal_subgroup=n >= 1 and bool(np.any(G.orders == G.order // p)),
        is_exponent_p_extraspecial=exp_p_es,
        is_p1plus2_minus=minus,
        excluded_thm11=(exp_p_es and p != 2) or (minus and p in (3, 5)),
        exponent=exponent,
        frattini_order=phi.order,
        center_order=center.order,
        dihedral=is_dihedral(G),
    )


def split_central_factor(G: GroupTable) -> tuple[int, Subgroup] | None:
    """Witness ``(z, K)`` for ``G = K x <z>`` with ``z`` central of order p.

    Such a splitting exists iff some central element of order p lies
    outside the Frattini subgroup; K is then any maximal subgroup missing z.
    """
    def compute():
        st = structural_subgroups(G)
        phi = st.frattini.mask
        for z in st.omega1_center.elements:
            if z == 0 or phi[z]:
                continue
            for K in maximal_subgroups(G):
                if z not in K:
                    return z, K
        return None
    return G.cached("split", compute)


def ghost_number_cyclic(p: int, n: int) -> int:
    """Ghost number of the group algebra of the cyclic group of order p^n."""
    if n == 0:
        return 1
    if p == 2:
        return 2 ** (n - 1)
    return (p**n - 1) // 2


def exact_ghost_rules(G: GroupTable, flags: ClassificationFlags | None = None) -> list[tuple[int, str]]:
    """Every exact-value rule that applies to G, as ``(value, rule)`` pairs."""
    flags = flags or classify(G)
    p, n = G.p, G.n
    rules: list[tuple[int, str]] = []
    if n == 0:
        return [(1, "trivial group (convention)")]
    if flags.cyclic:
        rules.append((ghost_number_cyclic(p, n), "cyclic group formula"))
    if p == 3 and n == 2 and flags.elementary_abelian:
        rules.append((3, "C3 x C3"))
    if flags.dihedral:
        rules.append((2 ** (n - 2) + 1, "dihedral 2-group"))
    if p == 2:
        # both rules can apply; the first one listed is the one reported
        family: list[tuple[int, str]] = []
        if split_central_factor(G) is not None:
            family.append((t_index(G) - 1, "direct factor C2: t(G) - 1"))
        if (
            flags.frattini_order == 2
            and not flags.cyclic
            and not flags.extraspecial
            and not flags.almost_extraspecial
        ):
            family.insert(0 if not flags.abelian else len(family), (n + 1, "Frattini subgroup of order 2: n + 1"))
        rules.extend(family)
    return rules


def exact_ghost_number(G: GroupTable, flags: ClassificationFlags | None = None) -> tuple[int, str] | None:
    rules = exact_ghost_rules(G, flags)
    if not rules:
        return None
    values = {v for v, _ in rules}
    if len(values) > 1:
        raise ArithmeticError(f"exact-value rules disagree on {G.label}: {rules}")
    return rules[0]


@dataclass
class BoundsReport:
    spec: str
    order: int
    p: int
    n: int
    t_jennings: int
    t_radical: int | None
    flags: ClassificationFlags
    ghost_lower: int
    ghost_upper: int
    ghost_exact: int | None
    sources: list[tuple[int, str]] = field(default_factory=list)
    t_upper: int = 0  # min(t - 1, cyclic comparison) before any exact value collapses the interval

    def to_dict(self) -> dict:
        d = asdict(self)
        d["flags"] = self.flags.to_dict()
        d["sources"] = [{"value": v, "rule": r} for v, r in self.sources]
        return d


def _central_quotient_bound(G: GroupTable) -> tuple[int, int]:
    """Max of t(G/C) over central C of order p, and how many C were tried."""
    subs = central_order_p_subgroups(G)
    return max(t_index(quotient(G, C)) for C in subs), len(subs)


def _maximal_subgroup_bound(G: GroupTable) -> int:
    """Max of t(K/C) over maximal K and C <= Z(K) of order p with C not central in G.

    Central-in-G choices are skipped: for those K/C embeds in G/C, so
    t(K/C) <= t(G/C) is already covered by the central quotient bound.
    """
    center = structural_subgroups(G).center.mask
    best = 0
    for K in maximal_subgroups(G):
        KT = subgroup_table(K)
        els = np.asarray(K.elements)
        for C in central_order_p_subgroups(KT):
            if center[els[list(C.elements)]].all():
                continue
            best = max(best, t_index(quotient(KT, C)))
    return best


def ghost_bounds(
    G: GroupTable, spec: str | None = None, *, radical: bool = False, cap: int | None = None
) -> BoundsReport:
    cap = default_cap(G.p) if cap is None else cap
    if G.order > cap:
        raise SizeCapExceeded(f"order {G.order} exceeds cap {cap}")
    p, n = G.p, G.n
    flags = classify(G)
    t = t_index(G)
    t_rad = None
    if radical:
        from ghostnum.radical import nilpotency_index_radical

        t_rad = nilpotency_index_radical(G, cap)
    sources: list[tuple[int, str]] = []

    if n == 0:
        return BoundsReport(spec or G.label, 1, p, 0, t, t_rad, flags, 1, 1, 1,
                            [(1, "trivial group (convention)")], 1)

    upper = t - 1
    sources.append((upper, "upper: t(G) - 1"))
    if not flags.cyclic:
        cyc = ghost_number_cyclic(p, n)
        sources.append((cyc, "upper: cyclic group of the same order"))
        upper = min(upper, cyc)
    t_upper = upper

    lower = 1
    if G.order not in (2, 3):
        lower = 2
        sources.append((2, "lower: nonzero ghosts exist unless C2 or C3"))
    q_bound, q_count = _central_quotient_bound(G)
    sources.append((q_bound, f"lower: max t(G/C) over {q_count} central C of order p"))
    lower = max(lower, q_bound)
    k = log_p(flags.exponent, p)
    cyc_sub = ghost_number_cyclic(p, k)
    sources.append((cyc_sub, f"lower: cyclic subgroup of order {flags.exponent}"))
    lower = max(lower, cyc_sub)

    exact = exact_ghost_number(G, flags)
    if exact is not None:
        value, rule = exact
        if not lower <= value <= upper:
            raise ArithmeticError(
                f"exact value {value} ({rule}) outside [{lower}, {upper}] for {G.label}"
            )
        sources.append((value, f"exact: {rule}"))
        lower = upper = value
    elif not flags.abelian:
        m_bound = _maximal_subgroup_bound(G)
        if m_bound:
            sources.append((m_bound, "lower: t(K/C) for maximal K, C <= Z(K) of order p"))
            lower = max(lower, m_bound)

    if lower > upper:
        raise ArithmeticError(f"empty ghost-number interval [{lower}, {upper}] for {G.label}")
    return BoundsReport(
        spec=spec or G.label,
        order=G.order,
        p=p,
        n=n,
        t_jennings=t,
        t_radical=t_rad,
        flags=flags,
        ghost_lower=lower,
        ghost_upper=upper,
        ghost_exact=exact[0] if exact else None,
        sources=sources,
        t_upper=t_upper,
    )
