"""Finite groups given by multiplication tables, and their subgroups.

Elements are the indices ``0..order-1`` and the identity is always ``0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product
from math import gcd
from typing import Iterable, Sequence

from .errors import ORDER_CAP, ConsistencyError, MalformedInputError, check_cap


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    name: str = ""
    labels: tuple[str, ...] | None = field(default=None, repr=False)

    def __post_init__(self):
        n = len(self.mul)
        if n == 0:
            raise MalformedInputError("group must have at least one element")
        if any(len(row) != n for row in self.mul) or len(self.inv) != n:
            raise MalformedInputError("multiplication table must be square and match inv")
        if tuple(self.mul[0]) != tuple(range(n)) or any(self.mul[x][0] != x for x in range(n)):
            raise MalformedInputError("index 0 must be a two-sided identity")
        for x in range(n):
            if self.mul[self.inv[x]][x] != 0:
                raise MalformedInputError(f"inv({x}) is not a left inverse of {x}")

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], name: str = "", labels=None) -> FiniteGroup:
        """Build from a square table with identity at index 0; inverses are derived."""
        mul = tuple(tuple(int(v) for v in row) for row in table)
        n = len(mul)
        for row in mul:
            if len(row) != n or any(not 0 <= v < n for v in row):
                raise MalformedInputError("multiplication table entries out of range")
        inv = []
        for x in range(n):
            ys = [y for y in range(n) if mul[x][y] == 0]
            if len(ys) != 1:
                raise MalformedInputError(f"element {x} has no unique right inverse")
            inv.append(ys[0])
        return cls(mul, tuple(inv), name, None if labels is None else tuple(labels))

    @property
    def order(self) -> int:
        return len(self.mul)

    def __len__(self) -> int:
        return len(self.mul)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def check_associative(self) -> tuple[int, int, int] | None:
        """Return a failing triple, or None if the table is associative."""
        m = self.mul
        for x in range(self.order):
            mx = m[x]
            for y in range(self.order):
                mxy = m[mx[y]]
                my = m[y]
                for z in range(self.order):
                    if mxy[z] != mx[my[z]]:
                        return (x, y, z)
        return None

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv[x], -k
        result = 0
        while k:
            if k & 1:
                result = self.mul[result][x]
            x = self.mul[x][x]
            k >>= 1
        return result

    def element_order(self, x: int) -> int:
        return len(self._cyclic_elements[x])

    @cached_property
    def _cyclic_elements(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for x in range(self.order):
            seq = [0]
            y = x
            while y != 0:
                seq.append(y)
                y = self.mul[y][x]
            out.append(tuple(seq))
        return tuple(out)

    def cyclic_subgroup(self, x: int) -> Subgroup:
        return Subgroup(self, tuple(sorted(self._cyclic_elements[x])))

    @cached_property
    def is_abelian(self) -> bool:
        m = self.mul
        return all(m[x][y] == m[y][x] for x in range(self.order) for y in range(x))

    def generate(self, gens: Iterable[int]) -> Subgroup:
        return Subgroup(self, tuple(sorted(generate(self, gens))))

    def whole(self) -> Subgroup:
        return Subgroup(self, tuple(range(self.order)))

    def trivial(self) -> Subgroup:
        return Subgroup(self, (0,))


def generate(G: FiniteGroup, gens: Iterable[int], start: Iterable[int] = (0,)) -> frozenset[int]:
    """Closure of ``start`` under right multiplication by ``gens``."""
    gens = [g for g in dict.fromkeys(gens) if g != 0]
    seen = set(start)
    seen.add(0)
    stack = list(seen)
    mul = G.mul
    while stack:
        x = stack.pop()
        row = mul[x]
        for g in gens:
            y = row[g]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return frozenset(seen)


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of ``ambient`` stored as its sorted element indices."""

    ambient: FiniteGroup
    elems: tuple[int, ...]

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.ambient is other.ambient and self.elems == other.elems

    def __hash__(self):
        return hash(self.elems)

    def __lt__(self, other: Subgroup) -> bool:
        return self.elems < other.elems

    def __len__(self) -> int:
        return len(self.elems)

    def __contains__(self, x: int) -> bool:
        return x in self.elemset

    def __iter__(self):
        return iter(self.elems)

    def __repr__(self) -> str:
        return f"Subgroup(order={len(self.elems)}, elems={list(self.elems)[:8]}{'...' if len(self.elems) > 8 else ''})"

    @property
    def order(self) -> int:
        return len(self.elems)

    @cached_property
    def elemset(self) -> frozenset[int]:
        return frozenset(self.elems)

    @cached_property
    def gens(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily in index order."""
        G = self.ambient
        out: list[int] = []
        current = frozenset([0])
        for x in self.elems:
            if x not in current:
                out.append(x)
                current = generate(G, out, current)
                if len(current) == len(self.elems):
                    break
        return tuple(out)

    def validate(self) -> None:
        """Check the closure invariant; raise ConsistencyError otherwise."""
        G, S = self.ambient, self.elemset
        if 0 not in S:
            raise ConsistencyError("subgroup lacks identity")
        for x in self.elems:
            if G.inv[x] not in S:
                raise ConsistencyError(f"subgroup not closed under inverse at {x}")
            row = G.mul[x]
            for y in self.elems:
                if row[y] not in S:
                    raise ConsistencyError(f"subgroup not closed under product ({x},{y})")

    def conjugate(self, g: int) -> Subgroup:
        G = self.ambient
        return Subgroup(G, tuple(sorted(G.conj(g, x) for x in self.elems)))

    def is_subgroup_of(self, other: Subgroup) -> bool:
        return self.elemset <= other.elemset

    def is_normal_in(self, other: Subgroup) -> bool:
        G, S = self.ambient, self.elemset
        return all(G.conj(h, x) in S for h in other.gens for x in self.gens)

    def is_normal(self) -> bool:
        return self.is_normal_in(self.ambient.whole())

    @cached_property
    def is_cyclic(self) -> bool:
        G = self.ambient
        n = len(self.elems)
        return any(G.element_order(x) == n for x in self.elems)

    def cyclic_generator(self) -> int | None:
        G = self.ambient
        n = len(self.elems)
        for x in self.elems:
            if G.element_order(x) == n:
                return x
        return None

    def as_group(self, name: str = "") -> tuple[FiniteGroup, tuple[int, ...]]:
        """Relabel as a standalone group; returns (group, new index -> ambient element)."""
        G = self.ambient
        elems = self.elems
        pos = {x: i for i, x in enumerate(elems)}
        mul = tuple(tuple(pos[G.mul[x][y]] for y in elems) for x in elems)
        inv = tuple(pos[G.inv[x]] for x in elems)
        labels = tuple(G.label(x) for x in elems) if G.labels else None
        return FiniteGroup(mul, inv, name, labels), elems


# ---------------------------------------------------------------- constructors

def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise MalformedInputError("cyclic group order must be positive")
    mul = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    inv = tuple((-i) % n for i in range(n))
    return FiniteGroup(mul, inv, f"Z/{n}", tuple(str(i) for i in range(n)))


def trivial_group() -> FiniteGroup:
    return cyclic(1)


def direct_product(G: FiniteGroup, H: FiniteGroup, name: str = "") -> FiniteGroup:
    """Elements (g, h) indexed as g * |H| + h."""
    nh = H.order
    idx = lambda g, h: g * nh + h
    pairs = list(product(range(G.order), range(H.order)))
    mul = tuple(tuple(idx(G.mul[g][g2], H.mul[h][h2]) for g2, h2 in pairs) for g, h in pairs)
    inv = tuple(idx(G.inv[g], H.inv[h]) for g, h in pairs)
    labels = tuple(f"({G.label(g)},{H.label(h)})" for g, h in pairs)
    return FiniteGroup(mul, inv, name or f"{G.name}x{H.name}", labels)


def from_permutations(gens: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    """Permutation group generated by ``gens``; elements sorted, identity first."""
    if not gens:
        return trivial_group()
    deg = len(gens[0])
    ident = tuple(range(deg))
    gens = [tuple(g) for g in gens]
    seen = {ident}
    stack = [ident]
    while stack:
        x = stack.pop()
        for g in gens:
            y = tuple(x[g[i]] for i in range(deg))
            if y not in seen:
                seen.add(y)
                stack.append(y)
    elems = sorted(seen)
    pos = {p: i for i, p in enumerate(elems)}
    # (p * q)(i) = p(q(i)): apply q first.
    mul = tuple(tuple(pos[tuple(p[q[i]] for i in range(deg))] for q in elems) for p in elems)
    inv = []
    for p in elems:
        ip = [0] * deg
        for i, v in enumerate(p):
            ip[v] = i
        inv.append(pos[tuple(ip)])
    return FiniteGroup(mul, tuple(inv), name, tuple(str(list(p)) for p in elems))


def symmetric(n: int) -> FiniteGroup:
    return from_permutations(list(permutations(range(n))), f"S{n}")


def alternating(n: int) -> FiniteGroup:
    def even(p):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        return inversions % 2 == 0
    return from_permutations([p for p in permutations(range(n)) if even(p)] or [tuple(range(n))], f"A{n}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n acting on n points."""
    rot = [(i + 1) % n for i in range(n)]
    ref = [(-i) % n for i in range(n)]
    return from_permutations([rot, ref], f"D{2 * n}")


def quaternion() -> FiniteGroup:
    # Regular representation of Q8 on {±1, ±i, ±j, ±k} indexed 0..7.
    i = [2, 3, 1, 0, 6, 7, 5, 4]
    j = [4, 5, 7, 6, 1, 0, 2, 3]
    return from_permutations([i, j], "Q8")


# ---------------------------------------------------------------- enumeration

def _cyclic_reps(G: FiniteGroup) -> list[tuple[frozenset[int], int]]:
    """One (cyclic subgroup, generator) per cyclic subgroup, in generator order."""
    out: dict[frozenset[int], int] = {}
    for x in range(G.order):
        out.setdefault(frozenset(G._cyclic_elements[x]), x)
    return [(S, g) for S, g in out.items()]


def _conjugates(G: FiniteGroup, S: frozenset[int]) -> set[frozenset[int]]:
    out = set()
    for g in range(G.order):
        out.add(frozenset(G.conj(g, x) for x in S))
    return out


def subgroups(G: FiniteGroup, up_to_conjugacy: bool = False, cap: int = ORDER_CAP) -> list[Subgroup]:
    """All subgroups of G, or one per conjugacy class (the lexicographically least member).

    Classes are built up by joining representatives with cyclic subgroups; every
    subgroup is reached since it is a join of cyclic subgroups and each step can
    be conjugated back onto a representative.
    """
    check_cap(G.order, cap, "group order")
    cyclics = _cyclic_reps(G)
    class_of: dict[frozenset[int], frozenset[int]] = {}
    classes: dict[frozenset[int], list[frozenset[int]]] = {}
    gens_of: dict[frozenset[int], tuple[int, ...]] = {}

    def register(S: frozenset[int], gens: tuple[int, ...]) -> frozenset[int] | None:
        if S in class_of:
            return None
        conj = _conjugates(G, S)
        rep = min(conj, key=lambda T: tuple(sorted(T)))
        for T in conj:
            class_of[T] = rep
        classes[rep] = sorted(conj, key=lambda T: tuple(sorted(T)))
        if rep == S:
            gens_of[rep] = gens
        else:
            # Conjugate the generators along with the subgroup.
            for g in range(G.order):
                if frozenset(G.conj(g, x) for x in S) == rep:
                    gens_of[rep] = tuple(G.conj(g, x) for x in gens)
                    break
        return rep

    triv = frozenset([0])
    register(triv, ())
    frontier = [triv]
    while frontier:
        nxt = []
        for H in frontier:
            hg = gens_of[H]
            for C, g in cyclics:
                if g in H:
                    continue
                K = generate(G, hg + (g,), H)
                rep = register(K, hg + (g,))
                if rep is not None:
                    nxt.append(rep)
        frontier = nxt

    if up_to_conjugacy:
        reps = sorted(classes, key=lambda T: tuple(sorted(T)))
        return [Subgroup(G, tuple(sorted(T))) for T in reps]
    every = sorted({T for members in classes.values() for T in members}, key=lambda T: tuple(sorted(T)))
    return [Subgroup(G, tuple(sorted(T))) for T in every]


def conjugacy_class_of(H: Subgroup) -> list[Subgroup]:
    G = H.ambient
    conj = _conjugates(G, H.elemset)
    return sorted(Subgroup(G, tuple(sorted(T))) for T in conj)


def class_representative(H: Subgroup) -> Subgroup:
    return conjugacy_class_of(H)[0]


# ---------------------------------------------------------------- small helpers

def prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(n + 1) if sieve[i]]


def is_prime_power_of(n: int, p: int) -> bool:
    """True iff n = p^k for some k >= 0."""
    if n < 1:
        return False
    while n % p == 0:
        n //= p
    return n == 1


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)
