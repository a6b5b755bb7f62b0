"""Stable module category of a cyclic p-group, ``k[x]/(x^m)`` with ``m = p^n``.

Modules are direct sums of Jordan blocks ``J_a = k[x]/(x^a)``.  A module of
total dimension ``D`` uses the basis ``x^j * gen_i`` (block ``i``, power
``j``) in block order, and a map ``M -> N`` is a ``dim N x dim M`` matrix
over GF(p) commuting with the action of ``x``.

Tate cohomology is computed from the periodic complex of the cyclic group:
``H^even = ker x / im x^{m-1}`` and ``H^odd = ker x^{m-1} / im x``.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

import numpy as np

from ghostnum.errors import BudgetExceeded, NotEquivariant, ShapeMismatch
from ghostnum.gfp import FpSubspace, matpow, nullspace, quotient_basis, quotient_coordinates
from ghostnum.groups import prime_power


@dataclass(frozen=True)
class JordanModule:
    m: int
    p: int
    blocks: tuple[int, ...]

    def __post_init__(self):
        pp = prime_power(self.m)
        if pp is None or pp[0] != self.p:
            raise ValueError(f"modulus {self.m} is not a power of {self.p}")
        object.__setattr__(self, "blocks", tuple(int(b) for b in self.blocks))
        for b in self.blocks:
            if not 1 <= b <= self.m:
                raise ValueError(f"block size {b} outside [1, {self.m}]")

    @property
    def dim(self) -> int:
        return sum(self.blocks)

    @property
    def offsets(self) -> tuple[int, ...]:
        return tuple(itertools.accumulate((0,) + self.blocks[:-1]))

    @property
    def x(self) -> np.ndarray:
        return _shift_matrix(self.blocks)

    def __add__(self, other: "JordanModule") -> "JordanModule":
        if (self.m, self.p) != (other.m, other.p):
            raise ShapeMismatch("modules over different algebras")
        return JordanModule(self.m, self.p, self.blocks + other.blocks)

    def __str__(self) -> str:
        return "+".join(f"J{b}" for b in self.blocks) or "0"


def jordan(m: int, *blocks: int) -> JordanModule:
    return JordanModule(m, prime_power(m)[0], blocks)


@functools.lru_cache(maxsize=None)
def _shift_matrix(blocks: tuple[int, ...]) -> np.ndarray:
    dim = sum(blocks)
    x = np.zeros((dim, dim), dtype=np.int64)
    off = 0
    for b in blocks:
        for j in range(b - 1):
            x[off + j + 1, off + j] = 1
        off += b
    x.setflags(write=False)
    return x


@dataclass(frozen=True, eq=False)
class ModuleMap:
    source: JordanModule
    target: JordanModule
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        if (self.source.m, self.source.p) != (self.target.m, self.target.p):
            raise ShapeMismatch("source and target are modules over different algebras")
        mat = np.asarray(self.matrix, dtype=np.int64) % self.p
        if mat.shape != (self.target.dim, self.source.dim):
            raise ShapeMismatch(
                f"matrix shape {mat.shape} does not match {self.target.dim}x{self.source.dim}"
            )
        if np.any((mat @ self.source.x - self.target.x @ mat) % self.p):
            raise NotEquivariant("map does not commute with the action of x")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def p(self) -> int:
        return self.source.p

    def __repr__(self) -> str:
        return f"ModuleMap({self.source} -> {self.target})"


def identity_map(M: JordanModule) -> ModuleMap:
    return ModuleMap(M, M, np.eye(M.dim, dtype=np.int64))


def zero_map(M: JordanModule, N: JordanModule) -> ModuleMap:
    return ModuleMap(M, N, np.zeros((N.dim, M.dim), dtype=np.int64))


def mult_x(M: JordanModule, power: int = 1) -> ModuleMap:
    return ModuleMap(M, M, matpow(M.x, power, M.p))


def compose(g: ModuleMap, f: ModuleMap) -> ModuleMap:
    """``g o f``."""
    if f.target != g.source:
        raise ShapeMismatch(f"cannot compose {g} after {f}")
    return ModuleMap(f.source, g.target, (g.matrix @ f.matrix) % f.p)


# -- Tate cohomology ----------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _tate_pieces(M: JordanModule, parity: int) -> tuple[FpSubspace, FpSubspace]:
    """``(boundaries, representatives)`` for the Tate group of ``M`` in degree ``parity``."""
    p, dim = M.p, M.dim
    x = M.x
    norm = matpow(x, M.m - 1, p)
    kernel_of, image_of = (x, norm) if parity == 0 else (norm, x)
    cycles = FpSubspace.span(nullspace(kernel_of, p), p, dim)
    boundaries = FpSubspace.span(image_of.T, p, dim)
    return boundaries, quotient_basis(boundaries, cycles)


def tate_dimension(M: JordanModule, d: int) -> int:
    return _tate_pieces(M, d % 2)[1].dim


def induced_tate_map(f: ModuleMap, d: int) -> np.ndarray:
    """Matrix of ``f_*`` on Tate cohomology in degree ``d`` (only ``d mod 2`` matters)."""
    _, reps_m = _tate_pieces(f.source, d % 2)
    bound_n, reps_n = _tate_pieces(f.target, d % 2)
    out = np.zeros((reps_n.dim, reps_m.dim), dtype=np.int64)
    for j, r in enumerate(reps_m.basis):
        out[:, j] = quotient_coordinates((f.matrix @ r) % f.p, bound_n, reps_n)
    return out


def is_ghost(f: ModuleMap) -> bool:
    return not (np.any(induced_tate_map(f, 0)) or np.any(induced_tate_map(f, -1)))


# -- Hom spaces and maps factoring through projectives ------------------------


@functools.lru_cache(maxsize=None)
def hom_basis_blocks(a: int, b: int) -> tuple[np.ndarray, ...]:
    """Basis of ``Hom(J_a, J_b)``: the generator goes to ``x^j`` with ``b - a <= j < b``."""
    basis = []
    for j in range(max(0, b - a), b):
        mat = np.zeros((b, a), dtype=np.int64)
        for k in range(a):
            if j + k < b:
                mat[j + k, k] = 1
        basis.append(mat)
    return tuple(basis)


def hom_basis_bruteforce(a: int, b: int, p: int) -> FpSubspace:
    """``Hom(J_a, J_b)`` as the solution space of ``F X_a = X_b F`` (flattened row-major)."""
    xa, xb = _shift_matrix((a,)), _shift_matrix((b,))
    system = np.kron(np.eye(b, dtype=np.int64), xa.T) - np.kron(xb, np.eye(a, dtype=np.int64))
    return FpSubspace.span(nullspace(system, p), p, a * b)


def _embed(M: JordanModule, N: JordanModule, i: int, j: int, block: np.ndarray) -> np.ndarray:
    full = np.zeros((N.dim, M.dim), dtype=np.int64)
    ro, co = N.offsets[j], M.offsets[i]
    full[ro : ro + block.shape[0], co : co + block.shape[1]] = block
    return full


def hom_basis(M: JordanModule, N: JordanModule) -> list[np.ndarray]:
    out = []
    for i, a in enumerate(M.blocks):
        for j, b in enumerate(N.blocks):
            out.extend(_embed(M, N, i, j, h) for h in hom_basis_blocks(a, b))
    return out


@functools.lru_cache(maxsize=None)
def projective_factoring_blocks(a: int, b: int, m: int, p: int) -> FpSubspace:
    """Maps ``J_a -> J_b`` that factor through the free module ``J_m``."""
    products = [
        (h2 @ h1) % p for h1 in hom_basis_blocks(a, m) for h2 in hom_basis_blocks(m, b)
    ]
    return FpSubspace.span(np.array([pr.ravel() for pr in products]), p, a * b)


@functools.lru_cache(maxsize=None)
def projective_factoring(M: JordanModule, N: JordanModule) -> FpSubspace:
    """Subspace of flattened ``Hom(M, N)`` of maps factoring through a projective."""
    rows = []
    for i, a in enumerate(M.blocks):
        for j, b in enumerate(N.blocks):
            sub = projective_factoring_blocks(a, b, M.m, M.p)
            rows.extend(_embed(M, N, i, j, v.reshape(b, a)).ravel() for v in sub.basis)
    return FpSubspace.span(np.array(rows).reshape(-1, N.dim * M.dim), M.p, N.dim * M.dim)


def is_stably_trivial(f: ModuleMap) -> bool:
    return projective_factoring(f.source, f.target).contains(f.matrix.ravel())


def stable_dimension(M: JordanModule, N: JordanModule) -> int:
    """Dimension of the stable Hom space ``Hom(M, N)`` modulo projectively factoring maps."""
    hom = FpSubspace.span(np.array([h.ravel() for h in hom_basis(M, N)]), M.p, N.dim * M.dim)
    return hom.dim - projective_factoring(M, N).dim


@functools.lru_cache(maxsize=None)
def ghost_space(M: JordanModule, N: JordanModule) -> FpSubspace:
    """All ghosts ``M -> N`` (flattened), found by linear algebra over the full Hom space."""
    basis = hom_basis(M, N)
    dim = N.dim * M.dim
    if not basis:
        return FpSubspace.zero(M.p, dim)
    effects = []
    for h in basis:
        f = ModuleMap(M, N, h)
        effects.append(np.concatenate([induced_tate_map(f, 0).ravel(), induced_tate_map(f, -1).ravel()]))
    effect = np.array(effects)
    flat = np.array([h.ravel() for h in basis])
    if effect.shape[1] == 0:
        return FpSubspace.span(flat, M.p, dim)
    coeffs = nullspace(effect.T, M.p)
    if coeffs.shape[0] == 0:
        return FpSubspace.zero(M.p, dim)
    return FpSubspace.span((coeffs @ flat) % M.p, M.p, dim)


@functools.lru_cache(maxsize=None)
def stable_ghost_reps(M: JordanModule, N: JordanModule) -> tuple[np.ndarray, ...]:
    """Ghosts ``M -> N`` representing a basis of ghosts modulo stably trivial maps."""
    reps = quotient_basis(projective_factoring(M, N), ghost_space(M, N))
    return tuple(r.reshape(N.dim, M.dim) for r in reps.basis)


def exhaustive_ghost_check(m: int, max_blocks: int) -> list[tuple[JordanModule, JordanModule]]:
    """Pairs ``(M, N)`` of non-projective modules with a stably nontrivial ghost ``M -> N``.

    Modules range over all sums of at most ``max_blocks`` blocks of size < m.
    Since ghosts and stably trivial maps are both subspaces of ``Hom(M, N)``,
    comparing them covers every map, not just a sample.
    """
    mods = candidate_modules(m, max_blocks)
    return [(M, N) for M in mods for N in mods if stable_ghost_reps(M, N)]


def candidate_modules(m: int, max_blocks: int) -> list[JordanModule]:
    p = prime_power(m)[0]
    out = []
    for count in range(1, max_blocks + 1):
        for combo in itertools.combinations_with_replacement(range(1, m), count):
            out.append(JordanModule(m, p, combo))
    return out


# -- ghost chains -------------------------------------------------------------


@dataclass
class ChainCertificate:
    modulus: int
    p: int
    modules: list[JordanModule]
    maps: list[ModuleMap]
    transcript: dict

    @property
    def length(self) -> int:
        return len(self.maps)

    @property
    def certified_bound(self) -> int:
        return self.length + 1

    def to_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "p": self.p,
            "length": self.length,
            "certified_bound": self.certified_bound,
            "modules": [list(M.blocks) for M in self.modules],
            "maps": [f.matrix.tolist() for f in self.maps],
            "transcript": self.transcript,
        }


def verify_chain(maps: list[ModuleMap]) -> dict | None:
    """Check a composable chain of ghosts with stably nontrivial composite.

    Returns the verification transcript, or None if any check fails.
    """
    ghosts = [is_ghost(f) for f in maps]
    if not all(ghosts):
        return None
    comp = maps[0]
    for f in maps[1:]:
        comp = compose(f, comp)
    pf = projective_factoring(comp.source, comp.target)
    if pf.contains(comp.matrix.ravel()):
        return None
    with_comp = FpSubspace.span(np.vstack([pf.basis, comp.matrix.ravel()[None, :]]), pf.p, pf.ambient_dim)
    return {
        "ghost_checks": ghosts,
        "composite_projective_rank": pf.dim,
        "composite_rank_with_map": with_comp.dim,
        "composite_stably_trivial": False,
    }


def _x_chain(m: int, p: int, a: int, length: int) -> ChainCertificate | None:
    M = JordanModule(m, p, (a,))
    maps = [mult_x(M)] * length
    transcript = verify_chain(maps)
    if transcript is None:
        return None
    transcript["strategy"] = "multiplication by x"
    return ChainCertificate(m, p, [M] * (length + 1), maps, transcript)


def ghost_chain_search(
    m: int, length: int, block_budget: int = 1, *, node_budget: int = 5000
) -> ChainCertificate:
    """Find ``length`` composable ghosts whose composite is not stably trivial.

    Multiplication-by-x chains on single blocks are tried first.  Otherwise
    a depth-first search runs over modules with at most ``block_budget``
    blocks, composing representatives of ghosts modulo stably trivial maps;
    by multilinearity of composition this misses no chain between the
    modules it visits.  Raises BudgetExceeded when nothing is found.
    """
    pp = prime_power(m)
    if pp is None:
        raise ValueError(f"modulus {m} is not a prime power")
    if length < 1:
        raise ValueError("chain length must be at least 1")
    p = pp[0]
    for a in sorted(range(1, m), key=lambda a: (abs(2 * a - m), a)):
        cert = _x_chain(m, p, a, length)
        if cert is not None:
            return cert

    mods = candidate_modules(m, block_budget)
    nodes = 0

    def dfs(path: list[JordanModule], maps: list[np.ndarray], comp: np.ndarray | None):
        nonlocal nodes
        cur = path[-1]
        for nxt in mods:
            for rep in stable_ghost_reps(cur, nxt):
                nodes += 1
                if nodes > node_budget:
                    raise BudgetExceeded(
                        f"node budget {node_budget} exhausted before finding a chain of length {length}"
                    )
                new = rep if comp is None else (rep @ comp) % p
                if projective_factoring(path[0], nxt).contains(new.ravel()):
                    continue
                if len(maps) + 1 == length:
                    return path + [nxt], maps + [rep]
                found = dfs(path + [nxt], maps + [rep], new)
                if found:
                    return found
        return None

    for start in mods:
        found = dfs([start], [], None)
        if found:
            path, mats = found
            maps = [ModuleMap(path[i], path[i + 1], mat) for i, mat in enumerate(mats)]
            transcript = verify_chain(maps)
            if transcript is None:
                raise ArithmeticError("search produced a chain that fails verification")
            transcript["strategy"] = "stable ghost basis search"
            return ChainCertificate(m, p, path, maps, transcript)
    exc = BudgetExceeded(
        f"no chain of length {length} among modules with at most {block_budget} block(s)"
    )
    exc.exhaustive = True
    raise exc


def certified_chain(m: int, block_budget: int = 1, *, node_budget: int = 200) -> ChainCertificate | None:
    """Longest chain found by increasing the length until the search fails."""
    best = None
    length = 1
    while True:
        try:
            best = ghost_chain_search(m, length, block_budget, node_budget=node_budget)
        except BudgetExceeded:
            return best
        length += 1


def certified_lower_bound(m: int, budget: int = 1, *, node_budget: int = 200) -> int:
    """``1 + `` the longest certified ghost chain for ``k[x]/(x^m)``."""
    cert = certified_chain(m, budget, node_budget=node_budget)
    return 1 if cert is None else cert.certified_bound
