"""Virtually abelian groups presented as extensions 1 -> Z^n -> G -> Q -> 1.

An element is a pair ``(vec, q)`` with ``vec`` in Z^n (the lattice written
additively) and ``q`` an index into the finite group Q. Multiplication is

    (a, q)(b, r) = (a + alpha(q) b + c(q, r), q r)

for an integer action ``alpha`` and a normalized 2-cocycle ``c``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import lattice as L
from .errors import ORDER_CAP, ConsistencyError, MalformedInputError, check_cap
from .finite import FiniteGroup, Subgroup


@dataclass(frozen=True)
class LatticeAction:
    rank: int
    mats: tuple[L.Mat, ...]

    def __call__(self, q: int, v: Sequence[int]) -> L.Vec:
        return L.mat_vec(self.mats[q], v)

    def violations(self, Q: FiniteGroup) -> list[str]:
        n = self.rank
        out = []
        if len(self.mats) != Q.order:
            return [f"action has {len(self.mats)} matrices but |Q| = {Q.order}"]
        for q, M in enumerate(self.mats):
            if len(M) != n or any(len(row) != n for row in M):
                return [f"action matrix for q={q} is not {n}x{n}"]
        if self.mats[0] != L.identity(n):
            out.append("action: mats(id) is not the identity matrix")
        for q, M in enumerate(self.mats):
            if abs(L.det(M)) != 1:
                out.append(f"action: det(mats({q})) = {L.det(M)} is not +-1")
        for q in range(Q.order):
            for r in range(Q.order):
                if L.mat_mul(self.mats[q], self.mats[r]) != self.mats[Q.mul[q][r]]:
                    out.append(f"action: mats({q})*mats({r}) != mats({Q.mul[q][r]})")
                    return out
        return out

    def is_faithful(self) -> bool:
        return len(set(self.mats)) == len(self.mats)


@dataclass(frozen=True)
class Cocycle:
    rank: int
    table: tuple[tuple[L.Vec, ...], ...]

    def __call__(self, q: int, r: int) -> L.Vec:
        return self.table[q][r]

    @classmethod
    def zero(cls, rank: int, qorder: int) -> Cocycle:
        z = (0,) * rank
        return cls(rank, tuple(tuple(z for _ in range(qorder)) for _ in range(qorder)))

    def violations(self, Q: FiniteGroup, action: LatticeAction) -> list[str]:
        n, k = self.rank, Q.order
        if len(self.table) != k or any(len(row) != k for row in self.table):
            return [f"cocycle table is not {k}x{k}"]
        if any(len(v) != n for row in self.table for v in row):
            return [f"cocycle entries must have length {n}"]
        z = (0,) * n
        out = []
        for q in range(k):
            if self.table[0][q] != z or self.table[q][0] != z:
                out.append(f"cocycle normalization fails at q={q}")
                return out
        mul = Q.mul
        for q in range(k):
            for r in range(k):
                for s in range(k):
                    lhs = L.vec_add(
                        L.vec_sub(action(q, self.table[r][s]), self.table[mul[q][r]][s]),
                        L.vec_sub(self.table[q][mul[r][s]], self.table[q][r]),
                    )
                    if lhs != z:
                        out.append(f"cocycle identity fails at (q,r,s)=({q},{r},{s})")
                        return out
        return out


@dataclass(frozen=True, order=True)
class Element:
    vec: tuple[int, ...]
    q: int

    def __repr__(self) -> str:
        return f"({','.join(map(str, self.vec))};{self.q})"


@dataclass(frozen=True)
class VAPresentation:
    rank: int
    Q: FiniteGroup
    action: LatticeAction
    cocycle: Cocycle
    name: str = field(default="", compare=False)

    def violations(self) -> list[str]:
        out = []
        if self.action.rank != self.rank or self.cocycle.rank != self.rank:
            out.append("rank mismatch between presentation, action and cocycle")
            return out
        assoc = self.Q.check_associative()
        if assoc is not None:
            out.append(f"Q multiplication is not associative at {assoc}")
            return out
        out += self.action.violations(self.Q)
        if out:
            return out
        out += self.cocycle.violations(self.Q, self.action)
        return out

    def validate(self) -> VAPresentation:
        bad = self.violations()
        if bad:
            raise MalformedInputError(f"{self.name or 'presentation'}: " + "; ".join(bad))
        return self

    @property
    def qorder(self) -> int:
        return self.Q.order

    @cached_property
    def identity(self) -> Element:
        return Element((0,) * self.rank, 0)

    def is_faithful(self) -> bool:
        return self.action.is_faithful()

    def is_split(self) -> bool:
        return all(v == (0,) * self.rank for row in self.cocycle.table for v in row)

    def semidirect(self) -> VAPresentation:
        """A x| Q: same rank, Q and action, zero cocycle."""
        return VAPresentation(
            self.rank, self.Q, self.action, Cocycle.zero(self.rank, self.Q.order), f"{self.name}_split"
        )

    def lattice_basis(self) -> list[Element]:
        return [Element(tuple(int(i == j) for j in range(self.rank)), 0) for i in range(self.rank)]

    def q_lift(self, q: int) -> Element:
        return Element((0,) * self.rank, q)

    def generators(self) -> list[Element]:
        """Lattice basis followed by zero-vector lifts of every non-identity q."""
        return self.lattice_basis() + [self.q_lift(q) for q in range(1, self.Q.order)]

    def check_element(self, g: Element) -> None:
        if len(g.vec) != self.rank:
            raise MalformedInputError(f"element {g} has length {len(g.vec)}, rank is {self.rank}")
        if not 0 <= g.q < self.Q.order:
            raise MalformedInputError(f"element {g} has q outside Q")


def multiply(P: VAPresentation, g: Element, h: Element) -> Element:
    if len(g.vec) != P.rank or len(h.vec) != P.rank:
        raise MalformedInputError("rank mismatch in multiply")
    M = P.action.mats[g.q]
    c = P.cocycle.table[g.q][h.q]
    vec = tuple(
        a + sum(m * b for m, b in zip(row, h.vec)) + ci for a, row, ci in zip(g.vec, M, c)
    )
    return Element(vec, P.Q.mul[g.q][h.q])


def inverse(P: VAPresentation, g: Element) -> Element:
    if len(g.vec) != P.rank:
        raise MalformedInputError("rank mismatch in inverse")
    qi = P.Q.inv[g.q]
    # (a,q)(x,q^-1) = id  <=>  x = -alpha(q^-1)(a + c(q, q^-1))
    w = L.vec_add(g.vec, P.cocycle.table[g.q][qi])
    return Element(tuple(-x for x in L.mat_vec(P.action.mats[qi], w)), qi)


def power(P: VAPresentation, g: Element, k: int) -> Element:
    if k < 0:
        g, k = inverse(P, g), -k
    result = P.identity
    while k:
        if k & 1:
            result = multiply(P, result, g)
        g = multiply(P, g, g)
        k >>= 1
    return result


def product_of(P: VAPresentation, elems: Iterable[Element]) -> Element:
    out = P.identity
    for g in elems:
        out = multiply(P, out, g)
    return out


def conjugate(P: VAPresentation, h: Element, g: Element) -> Element:
    """h g h^-1."""
    return multiply(P, multiply(P, h, g), inverse(P, h))


def q_order(P: VAPresentation, g: Element) -> int:
    return P.Q.element_order(g.q)


def is_torsion(P: VAPresentation, g: Element) -> bool:
    return not any(power(P, g, q_order(P, g)).vec)


# ---------------------------------------------------------------- finite quotients


@dataclass(frozen=True, eq=False)
class FiniteQuotient:
    """G / mZ^n with elements indexed by (vec in [0,m)^n lexicographic, q)."""

    presentation: VAPresentation
    modulus: int
    group: FiniteGroup

    @property
    def order(self) -> int:
        return self.group.order

    def index(self, vec: Sequence[int], q: int) -> int:
        m, k = self.modulus, self.presentation.Q.order
        code = 0
        for x in vec:
            code = code * m + (x % m)
        return code * k + q

    def project(self, g: Element) -> int:
        return self.index(g.vec, g.q)

    def section(self, x: int) -> Element:
        m, n, k = self.modulus, self.presentation.rank, self.presentation.Q.order
        code, q = divmod(x, k)
        vec = [0] * n
        for i in range(n - 1, -1, -1):
            code, vec[i] = divmod(code, m)
        return Element(tuple(vec), q)

    def q_of(self, x: int) -> int:
        return x % self.presentation.Q.order

    def is_lattice(self, x: int) -> bool:
        return x % self.presentation.Q.order == 0

    def image_in_q(self, H: Subgroup) -> frozenset[int]:
        return frozenset(self.q_of(x) for x in H.elems)

    def lattice_part(self, H: Subgroup) -> Subgroup:
        """H intersected with the image of A."""
        return Subgroup(self.group, tuple(x for x in H.elems if self.is_lattice(x)))

    def lift_subgroup(self, H: Subgroup) -> list[Element]:
        """Generators of the preimage of H in G: section lifts of H's generators plus mZ^n."""
        P = self.presentation
        kernel = [Element(tuple(self.modulus * int(i == j) for j in range(P.rank)), 0) for i in range(P.rank)]
        return [self.section(x) for x in H.gens] + kernel


def _quotient_table(P: VAPresentation, m: int) -> np.ndarray:
    n, k = P.rank, P.Q.order
    nv = m**n
    vecs = np.array(np.unravel_index(np.arange(nv), (m,) * n)).T.reshape(nv, n) if n else np.zeros((1, 0), dtype=np.int64)
    vecs = vecs.astype(np.int64)
    weights = np.array([m ** (n - 1 - i) for i in range(n)], dtype=np.int64)
    qmul = np.array(P.Q.mul, dtype=np.int64)
    N = nv * k
    table = np.empty((N, N), dtype=np.int64)
    # rows indexed by (a, q), columns by (b, r)
    for q in range(k):
        M = np.array(P.action.mats[q], dtype=np.int64).reshape(n, n)
        mb = (vecs @ M.T) % m  # alpha(q) b for every b
        for r in range(k):
            c = np.array(P.cocycle.table[q][r], dtype=np.int64)
            s = (vecs[:, None, :] + mb[None, :, :] + c) % m  # [a, b, :]
            code = (s @ weights) if n else np.zeros((nv, nv), dtype=np.int64)
            idx = code * k + qmul[q, r]
            table[q::k, r::k] = idx
    return table


@lru_cache(maxsize=64)
def _finite_quotient_cached(P: VAPresentation, m: int) -> FiniteQuotient:
    table = _quotient_table(P, m)
    mul = tuple(map(tuple, table.tolist()))
    inv = tuple(row.index(0) for row in mul)
    return FiniteQuotient(P, m, FiniteGroup(mul, inv, f"{P.name or 'G'}/{m}A"))


def finite_quotient(P: VAPresentation, m: int, cap: int = ORDER_CAP) -> FiniteQuotient:
    if m < 1:
        raise MalformedInputError("modulus must be >= 1")
    check_cap(m**P.rank * P.Q.order, cap, "finite quotient")
    return _finite_quotient_cached(P, m)


def random_element(P: VAPresentation, rng, bound: int = 5) -> Element:
    return Element(tuple(rng.randint(-bound, bound) for _ in range(P.rank)), rng.randrange(P.Q.order))


def require_valid(P: VAPresentation, *elems: Element) -> None:
    for g in elems:
        P.check_element(g)


def assert_in_lattice(g: Element, what: str) -> tuple[int, ...]:
    if g.q != 0:
        raise ConsistencyError(f"{what}: {g} does not lie in A")
    return g.vec
