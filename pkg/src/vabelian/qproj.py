"""Rational lines: commensurability classes of infinite cyclic subgroups.

A non-torsion g with pi(g) of order k generates a subgroup commensurable with
<g^k>, and g^k lies in A. Its line is the primitive vector of the A-part of
g^k, signed so the first nonzero entry is positive. Torsion elements go to a
basepoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from . import lattice as L
from .core import Element, VAPresentation, conjugate, multiply, power
from .finite import lcm
from .errors import LINE_CAP, ConsistencyError, MalformedInputError, PreconditionError, check_cap


@dataclass(frozen=True, order=True)
class RationalLine:
    v: tuple[int, ...]

    def __post_init__(self):
        if L.primitive(self.v) != tuple(self.v):
            raise MalformedInputError(f"{self.v} is not a normalized primitive vector")

    @classmethod
    def through(cls, w: Sequence[int]) -> RationalLine:
        return cls(L.primitive(w))


class _Basepoint:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "BASEPOINT"

    def __reduce__(self):
        return (_Basepoint, ())


BASEPOINT = _Basepoint()
PointedLine = RationalLine | _Basepoint


def line_of(P: VAPresentation, g: Element) -> PointedLine:
    P.check_element(g)
    k = P.Q.element_order(g.q)
    w = power(P, g, k)
    if w.q != 0:
        raise ConsistencyError(f"{g}^{k} does not lie in A")
    return RationalLine.through(w.vec) if any(w.vec) else BASEPOINT


def conj_action(P: VAPresentation, h: Element, line: PointedLine) -> PointedLine:
    if line is BASEPOINT:
        return BASEPOINT
    out = RationalLine.through(P.action(h.q, line.v))
    # Same answer by conjugating an element of A that spans the line.
    via = conjugate(P, h, Element(line.v, 0))
    if via.q != 0 or RationalLine.through(via.vec) != out:
        raise ConsistencyError(f"conjugation by {h} disagrees with the action on {line.v}")
    return out


def primitive_vectors(n: int, B: int) -> list[tuple[int, ...]]:
    """Normalized primitive vectors with sup-norm <= B, by (sup-norm, vector)."""
    out = []
    for v in product(range(-B, B + 1), repeat=n):
        if any(v) and L.content(v) == 1 and L.primitive(v) == v:
            out.append(v)
    return sorted(out, key=lambda v: (max(map(abs, v)), v))


def line_orbits(P: VAPresentation, B: int, cap: int = LINE_CAP) -> list[list[RationalLine]]:
    """Lines with a representative of sup-norm <= B, grouped into alpha(Q)-orbits.

    Orbits are completed even when they leave the ball. Orbits are ordered by the
    first enumerated line they contain, members by (sup-norm, vector).
    """
    if B < 1:
        raise MalformedInputError("bound must be >= 1")
    n = P.rank
    if n == 0:
        return []
    check_cap((2 * B + 1) ** n, cap * 2, "line enumeration")
    vecs = primitive_vectors(n, B)
    check_cap(len(vecs), cap, "line enumeration")
    key = lambda line: (max(map(abs, line.v)), line.v)
    seen: set[RationalLine] = set()
    out = []
    for v in vecs:
        line = RationalLine(v)
        if line in seen:
            continue
        orbit = {RationalLine.through(P.action(q, v)) for q in range(P.Q.order)}
        seen |= orbit
        out.append(sorted(orbit, key=key))
    return out


# ---------------------------------------------------------------- functoriality


@dataclass(frozen=True)
class Homomorphism:
    """phi: G -> G' given on the lattice basis and on the lifts (0, q)."""

    source: VAPresentation
    target: VAPresentation
    lattice_images: tuple[Element, ...]
    q_images: tuple[Element, ...]  # indexed by q; entry 0 must be the identity

    def __call__(self, g: Element) -> Element:
        T = self.target
        out = T.identity
        for img, a in zip(self.lattice_images, g.vec):
            out = multiply(T, out, power(T, img, a))
        return multiply(T, out, self.q_images[g.q])

    def lattice_rank(self) -> int:
        """Rank of a -> phi(a)^k in A', k the exponent of Q'; n iff the kernel is finite."""
        T = self.target
        k = 1
        for q in range(T.Q.order):
            k = lcm(k, T.Q.element_order(q))
        rows = []
        for img in self.lattice_images:
            w = power(T, img, k)
            if w.q != 0:
                raise ConsistencyError("power of an image does not lie in A'")
            rows.append(w.vec)
        return L.rank(rows) if T.rank else 0


@dataclass(frozen=True)
class FunctorialityReport:
    sample_size: int
    lines: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def qp_plus_functoriality(phi: Homomorphism, sample: Sequence[Element]) -> FunctorialityReport:
    S, T = phi.source, phi.target
    if len(phi.lattice_images) != S.rank or len(phi.q_images) != S.Q.order:
        raise MalformedInputError("homomorphism data has the wrong shape")
    if phi.q_images[0] != T.identity:
        raise MalformedInputError("identity must map to the identity")
    images = [phi(g) for g in sample]
    for g, pg in zip(sample, images):
        for h, ph in zip(sample, images):
            if phi(multiply(S, g, h)) != multiply(T, pg, ph):
                raise PreconditionError(f"phi is not a homomorphism on ({g}, {h})")
    if phi.lattice_rank() != S.rank:
        raise PreconditionError("phi has infinite kernel; only finite-kernel maps are checked")
    violations = []
    by_line: dict[RationalLine, PointedLine] = {}
    for g, pg in zip(sample, images):
        src = line_of(S, g)
        if src is BASEPOINT:
            continue
        dst = line_of(T, pg)
        if dst is BASEPOINT:
            violations.append(f"non-torsion {g} maps to the basepoint")
            continue
        prev = by_line.setdefault(src, dst)
        if prev != dst:
            violations.append(f"line {src.v} has two images {prev} and {dst}")
    inverse: dict[PointedLine, RationalLine] = {}
    for src, dst in sorted(by_line.items()):
        other = inverse.setdefault(dst, src)
        if other != src:
            violations.append(f"lines {other.v} and {src.v} both map to {dst}")
    return FunctorialityReport(len(sample), len(by_line), tuple(violations))
