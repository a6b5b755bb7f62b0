"""Dense linear algebra over the prime field GF(p).

Matrices are numpy int64 arrays with entries in ``range(p)``.  Everything is
exact; no floating point is involved anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def as_fp(mat, p: int) -> np.ndarray:
    return np.asarray(mat, dtype=np.int64) % p


def rref(mat, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form over GF(p).

    Returns the nonzero rows of the reduced matrix and the pivot columns.
    """
    a = as_fp(mat, p).copy()
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        lead = int(a[r, c])
        if lead != 1:
            a[r] = (a[r] * pow(lead, -1, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(mat, p: int) -> int:
    m = np.asarray(mat)
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def nullspace(mat, p: int) -> np.ndarray:
    """Basis (as rows) of the right kernel ``{v : mat @ v = 0}``."""
    m = as_fp(mat, p)
    ncols = m.shape[1]
    if m.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    r, pivots = rref(m, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, fcol in enumerate(free):
        basis[k, fcol] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-r[i, fcol]) % p
    return basis


def matpow(mat: np.ndarray, e: int, p: int) -> np.ndarray:
    n = mat.shape[0]
    result = np.eye(n, dtype=np.int64)
    base = as_fp(mat, p)
    while e:
        if e & 1:
            result = (result @ base) % p
        base = (base @ base) % p
        e >>= 1
    return result


@dataclass(frozen=True, eq=False)
class FpSubspace:
    """A subspace of GF(p)^ambient_dim held as a reduced row-echelon basis."""

    p: int
    ambient_dim: int
    basis: np.ndarray
    pivots: tuple[int, ...] = field(default=())

    @classmethod
    def span(cls, vectors, p: int, ambient_dim: int) -> "FpSubspace":
        v = np.asarray(vectors, dtype=np.int64)
        if v.size == 0:
            return cls.zero(p, ambient_dim)
        v = v.reshape(-1, ambient_dim)
        basis, pivots = rref(v, p)
        return cls(p, ambient_dim, basis, tuple(pivots))

    @classmethod
    def zero(cls, p: int, ambient_dim: int) -> "FpSubspace":
        return cls(p, ambient_dim, np.zeros((0, ambient_dim), dtype=np.int64), ())

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, v) -> np.ndarray:
        """Canonical residue of ``v`` modulo this subspace (zero on every pivot column)."""
        v = as_fp(v, self.p)
        if not self.pivots:
            return v
        coeffs = v[..., list(self.pivots)]
        return (v - coeffs @ self.basis) % self.p

    def contains(self, v) -> bool:
        return not np.any(self.reduce(v))

    def coordinates(self, v) -> np.ndarray:
        """Coordinates of ``v`` in the stored basis; ``v`` must lie in the span."""
        v = as_fp(v, self.p)
        if np.any(self.reduce(v)):
            raise ValueError("vector is not in the subspace")
        return v[..., list(self.pivots)]

    def issubspace(self, other: "FpSubspace") -> bool:
        return self.dim == 0 or not np.any(other.reduce(self.basis))

    def __add__(self, other: "FpSubspace") -> "FpSubspace":
        return FpSubspace.span(np.vstack([self.basis, other.basis]), self.p, self.ambient_dim)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpSubspace):
            return NotImplemented
        return (
            self.p == other.p
            and self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.ambient_dim, self.pivots, self.basis.tobytes()))

    def __repr__(self) -> str:
        return f"FpSubspace(p={self.p}, dim={self.dim}, ambient={self.ambient_dim})"


def quotient_basis(sub: FpSubspace, bigger: FpSubspace) -> FpSubspace:
    """Representatives for ``bigger / sub``, reduced against ``sub``.

    The returned rows vanish on ``sub``'s pivot columns, so the quotient
    coordinates of any ``v`` in ``bigger`` are ``sub.reduce(v)`` read off at
    the returned pivots.
    """
    if bigger.dim == 0:
        return FpSubspace.zero(sub.p, sub.ambient_dim)
    residues = sub.reduce(bigger.basis)
    return FpSubspace.span(residues, sub.p, sub.ambient_dim)


def quotient_coordinates(v, sub: FpSubspace, reps: FpSubspace) -> np.ndarray:
    r = sub.reduce(v)
    return reps.coordinates(r)
