"""Named p-group families built from standard presentations.

Spec strings follow a small grammar::

    spec := term ("x" term)*
    term := NAME "(" args ")"

with ``NAME`` one of ``C EA D Q SD Mod ES AES``.  Examples: ``C(8)``,
``ES(3,1,+)``, ``D(8)xC(2)``.  Whitespace is ignored, names are
case-sensitive.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterator

from ghostnum.errors import InvalidSpec, SizeCapExceeded
from ghostnum.groups import (
    GroupTable,
    central_product,
    direct_product,
    group_from_multiplication,
    is_prime,
    log_p,
    prime_power,
    structural_subgroups,
)

ATOM_ARITY = {"C": 1, "EA": 2, "D": 1, "Q": 1, "SD": 1, "Mod": 1, "ES": 3, "AES": 2}

DEFAULT_CAPS = {2: 256, 3: 243, 5: 125}
GENERIC_CAP = 125


def default_cap(p: int) -> int:
    """Largest catalog order allowed for prime ``p``."""
    if p in DEFAULT_CAPS:
        return DEFAULT_CAPS[p]
    cap = p
    while cap * p <= GENERIC_CAP:
        cap *= p
    return cap


@dataclass(frozen=True)
class Atom:
    name: str
    args: tuple

    def __str__(self) -> str:
        return f"{self.name}({','.join(str(a) for a in self.args)})"

    @property
    def prime(self) -> int:
        if self.name == "C":
            return prime_power(self.args[0])[0]
        if self.name in ("EA", "ES", "AES"):
            return self.args[0]
        return 2

    @property
    def log_order(self) -> int:
        name, args = self.name, self.args
        if name == "C":
            return prime_power(args[0])[1]
        if name == "EA":
            return args[1]
        if name == "ES":
            return 2 * args[1] + 1
        if name == "AES":
            return 2 * args[1] + 2
        return log_p(args[0], 2)


@dataclass(frozen=True)
class GroupSpec:
    """A direct product of atoms; the product operator is flattened."""

    factors: tuple[Atom, ...]

    def __str__(self) -> str:
        return "x".join(str(a) for a in self.factors)

    @property
    def p(self) -> int:
        return self.factors[0].prime

    @property
    def n(self) -> int:
        return sum(a.log_order for a in self.factors)

    @property
    def order(self) -> int:
        return self.p**self.n

    def __mul__(self, other: "GroupSpec") -> "GroupSpec":
        return GroupSpec(self.factors + other.factors)


_TOKEN = re.compile(
    r"\s*(?:(?P<name>AES|EA|ES|SD|Mod|C|D|Q)(?![A-Za-z])|(?P<times>x)"
    r"|(?P<int>\d+)|(?P<sym>[(),+\-])|(?P<word>[A-Za-z]+))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise InvalidSpec(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind == "word":
            raise InvalidSpec(f"unknown group name {m.group(kind)!r}", m.start(kind))
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def parse_spec(text: str) -> GroupSpec:
    """Parse a spec string; raises InvalidSpec with a character position on failure."""
    tokens = _tokenize(text)
    i = 0

    def take(kind: str, value: str | None = None) -> tuple[str, str, int]:
        nonlocal i
        tok = tokens[i]
        if tok[0] != kind or (value is not None and tok[1] != value):
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            raise InvalidSpec(f"expected {value or kind}, found {found}", tok[2])
        i += 1
        return tok

    factors: list[Atom] = []
    while True:
        _, name, npos = take("name")
        take("sym", "(")
        args: list = []
        while True:
            if tokens[i][0] == "sym" and tokens[i][1] in "+-":
                args.append(tokens[i][1])
                i += 1
            else:
                args.append(int(take("int")[1]))
            if tokens[i][1] != ",":
                break
            i += 1
        take("sym", ")")
        atom = Atom(name, tuple(args))
        _validate_atom(atom, npos)
        factors.append(atom)
        if tokens[i][0] == "end":
            break
        take("times")
    spec = GroupSpec(tuple(factors))
    primes = {a.prime for a in spec.factors}
    if len(primes) > 1:
        raise InvalidSpec(f"factors use different primes {sorted(primes)}")
    return spec


def _validate_atom(atom: Atom, pos: int | None = None) -> None:
    name, args = atom.name, atom.args
    if len(args) != ATOM_ARITY[name]:
        raise InvalidSpec(f"{name} takes {ATOM_ARITY[name]} argument(s), got {len(args)}", pos)
    ints = args if name != "ES" else args[:2]
    if any(not isinstance(a, int) for a in ints):
        raise InvalidSpec(f"{name} arguments must be integers", pos)
    if name == "C":
        if prime_power(args[0]) is None:
            raise InvalidSpec(f"C({args[0]}): order not a prime power", pos)
    elif name == "EA":
        if not is_prime(args[0]):
            raise InvalidSpec(f"EA: {args[0]} is not prime", pos)
        if args[1] < 1:
            raise InvalidSpec("EA(p,n) needs n >= 1", pos)
    elif name in ("D", "Q", "SD", "Mod"):
        k = log_p(args[0], 2)
        kmin = 3 if name in ("D", "Q") else 4
        if k is None or args[0] < 2:
            raise InvalidSpec(f"{name}({args[0]}): order must be a power of 2", pos)
        if k < kmin:
            raise InvalidSpec(f"{name}(2^k) needs k >= {kmin}", pos)
    elif name == "ES":
        if not is_prime(args[0]):
            raise InvalidSpec(f"ES: {args[0]} is not prime", pos)
        if args[1] < 1:
            raise InvalidSpec("ES(p,r,sign) needs r >= 1", pos)
        if args[2] not in ("+", "-"):
            raise InvalidSpec("ES sign must be + or -", pos)
    elif name == "AES":
        if not is_prime(args[0]):
            raise InvalidSpec(f"AES: {args[0]} is not prime", pos)
        if args[1] < 1:
            raise InvalidSpec("AES(p,r) needs r >= 1", pos)


# -- presentations ----------------------------------------------------------


def cyclic(m: int) -> GroupTable:
    p, _ = prime_power(m)
    return group_from_multiplication(list(range(m)), lambda a, b: (a + b) % m, p, f"C({m})")


def metacyclic(m: int, q: int, k: int, c: int, p: int, label: str) -> GroupTable:
    """``<r, s | r^m = 1, s^q = r^c, s r s^-1 = r^k>`` with elements ``r^i s^j``."""
    def mul(a, b):
        i1, j1 = a
        i2, j2 = b
        i = (i1 + pow(k, j1, m) * i2) % m
        j = j1 + j2
        if j >= q:
            j -= q
            i = (i + c) % m
        return (i, j)

    elements = [(i, j) for j in range(q) for i in range(m)]
    return group_from_multiplication(elements, mul, p, label)


def heisenberg(p: int) -> GroupTable:
    """Upper unitriangular 3x3 matrices over GF(p), as triples (a, b, c)."""
    def mul(x, y):
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p)

    elements = [(a, b, c) for a in range(p) for b in range(p) for c in range(p)]
    return group_from_multiplication(elements, mul, p, f"ES({p},1,+)")


def _two_group(name: str, order: int) -> GroupTable:
    half = order // 2
    k, c = {
        "D": (half - 1, 0),
        "Q": (half - 1, half // 2),
        "SD": (half // 2 - 1, 0),
        "Mod": (half // 2 + 1, 0),
    }[name]
    return metacyclic(half, 2, k, c, 2, f"{name}({order})")


def _central_involution(G: GroupTable) -> int:
    """Smallest non-identity element of the order-p part of the center."""
    omega = structural_subgroups(G).omega1_center.elements
    return next(z for z in omega if z != 0)


def extraspecial(p: int, r: int, sign: str) -> GroupTable:
    if p == 2:
        plus, minus = _two_group("D", 8), _two_group("Q", 8)
    else:
        plus = heisenberg(p)
        minus = metacyclic(p * p, p, 1 + p, 0, p, f"ES({p},1,-)")
    G = minus if sign == "-" else plus
    for _ in range(r - 1):
        G = central_product(G, plus, _central_involution(G), _central_involution(plus))
    return _relabel(G, f"ES({p},{r},{sign})")


def almost_extraspecial(p: int, r: int) -> GroupTable:
    E = extraspecial(p, r, "+")
    Z = cyclic(p * p)
    return _relabel(central_product(E, Z, _central_involution(E), p), f"AES({p},{r})")


def _relabel(G: GroupTable, label: str) -> GroupTable:
    return GroupTable(G.p, G.n, G.table, label, G._cache)


def _build_atom(atom: Atom) -> GroupTable:
    name, args = atom.name, atom.args
    if name == "C":
        return cyclic(args[0])
    if name == "EA":
        p, n = args
        G = cyclic(p)
        for _ in range(n - 1):
            G = direct_product(G, cyclic(p))
        return _relabel(G, str(atom))
    if name in ("D", "Q", "SD", "Mod"):
        return _two_group(name, args[0])
    if name == "ES":
        return extraspecial(*args)
    return almost_extraspecial(*args)


@functools.lru_cache(maxsize=None)
def _build_cached(text: str) -> GroupTable:
    spec = parse_spec(text)
    G = _build_atom(spec.factors[0])
    for atom in spec.factors[1:]:
        G = direct_product(G, _build_atom(atom))
    return _relabel(G, text)


def build(spec: GroupSpec | str) -> GroupTable:
    """Construct the group named by ``spec`` (a GroupSpec or spec string)."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    else:
        for atom in spec.factors:
            _validate_atom(atom)
    return _build_cached(str(spec))


# -- catalog ----------------------------------------------------------------


def _partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def ea_atoms(p: int, r: int) -> tuple[Atom, ...]:
    if r == 0:
        return ()
    return (Atom("C", (p,)),) if r == 1 else (Atom("EA", (p, r)),)


def abelian_spec(p: int, parts: tuple[int, ...]) -> GroupSpec:
    ones = sum(1 for k in parts if k == 1)
    big = sorted(k for k in parts if k > 1)
    if not big:
        return GroupSpec(ea_atoms(p, ones)) if ones > 1 else GroupSpec((Atom("C", (p,)),))
    atoms = [Atom("C", (p,))] * ones + [Atom("C", (p**k,)) for k in big]
    return GroupSpec(tuple(atoms))


def catalog_specs(p: int, n: int) -> list[GroupSpec]:
    """Spec list for ``catalog_of_order`` without building anything."""
    specs: list[GroupSpec] = [abelian_spec(p, parts) for parts in _partitions(n)]

    def nonabelian(k: int) -> list[Atom]:
        atoms: list[Atom] = []
        if p == 2:
            if k >= 3:
                atoms += [Atom("D", (2**k,)), Atom("Q", (2**k,))]
            if k >= 4:
                atoms += [Atom("SD", (2**k,)), Atom("Mod", (2**k,))]
        if k % 2 == 1 and k >= 3:
            r = (k - 1) // 2
            # ES(2,1,+-) are D(8) and Q(8), already listed
            if not (p == 2 and r == 1):
                atoms += [Atom("ES", (p, r, "+")), Atom("ES", (p, r, "-"))]
        if k % 2 == 0 and k >= 4:
            atoms.append(Atom("AES", (p, (k - 2) // 2)))
        return atoms

    specs += [GroupSpec((a,)) for a in nonabelian(n)]
    for k in range(3, n):
        for a in nonabelian(k):
            if a.name in ("SD", "Mod"):
                continue
            specs.append(GroupSpec((a,) + ea_atoms(p, n - k)))
    return specs


def catalog_of_order(p: int, n: int, cap: int | None = None) -> list[tuple[GroupSpec, GroupTable]]:
    """All catalog groups of order ``p**n``: distinct by construction, not exhaustive."""
    if not is_prime(p):
        raise InvalidSpec(f"{p} is not prime")
    cap = default_cap(p) if cap is None else cap
    if p**n > cap:
        raise SizeCapExceeded(f"order {p}^{n} = {p**n} exceeds cap {cap}")
    if n < 1:
        raise InvalidSpec("catalog orders start at p^1")
    return [(s, build(s)) for s in catalog_specs(p, n)]
