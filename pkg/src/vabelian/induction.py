"""Case analysis of hyperelementary subgroups of G / p^r A, and short kernel homomorphisms.

Each hyperelementary H in the finite quotient falls into exactly one case:

    NotOnto            H -> Q is not onto
    OntoNotInjective   onto with nontrivial kernel in A / p^r A
    Iso                isomorphism onto Q

When p^r = 1 mod |Q| an Iso subgroup is conjugate into the image of the
expansion-p^r endomorphism, and the report carries that factorization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Literal

import numpy as np

from . import lattice as L
from .core import VAPresentation, finite_quotient
from .errors import ORDER_CAP, ConsistencyError, MalformedInputError, PreconditionError
from .finite import Subgroup, is_prime
from .hyperelementary import HyperelemCert, hyperelementary_subgroups
from .reducibility import invariant_line_bruteforce, require_good_prime
from .splitting import FactorizationReport, SplittingData, factors_through_expansive

Tag = Literal["NotOnto", "OntoNotInjective", "Iso"]
TAGS: tuple[Tag, ...] = ("NotOnto", "OntoNotInjective", "Iso")


@dataclass(frozen=True)
class CaseReport:
    H: Subgroup
    tag: Tag
    image_order: int
    kernel_order: int
    cert: HyperelemCert
    factorization: FactorizationReport | None = None
    expansion_available: bool = True
    kernel_cyclic: Subgroup | None = None  # normal cyclic subgroup inside the kernel


def case_tag(image_order: int, kernel_order: int, qorder: int) -> Tag:
    if qorder == 1:
        # Degenerate convention: only the trivial subgroup counts as an isomorphism onto Q.
        return "Iso" if kernel_order == 1 else "NotOnto"
    if image_order < qorder:
        return "NotOnto"
    return "Iso" if kernel_order == 1 else "OntoNotInjective"


def _normal_cyclic_in_kernel(fq, K: Subgroup) -> Subgroup | None:
    G = fq.group
    for x in K.elems[1:]:
        C = G.cyclic_subgroup(x)
        if C.is_normal():
            return C
    return None


def classify_subgroups(
    P: VAPresentation, p: int, r: int, S: SplittingData | None = None, cap: int = ORDER_CAP
) -> list[CaseReport]:
    require_good_prime(p, P.Q.order)
    if r < 1:
        raise MalformedInputError("r must be >= 1")
    S = S or SplittingData.default(P)
    m = p**r
    fq = finite_quotient(P, m, cap)
    k = P.Q.order
    available = m % k == 1 % k
    out = []
    for H, cert in hyperelementary_subgroups(fq.group, cap=cap):
        image = fq.image_in_q(H)
        K = fq.lattice_part(H)
        tag = case_tag(len(image), K.order, k)
        fact = None
        kc = None
        if tag == "Iso" and available:
            fact = factors_through_expansive(P, S, [fq.section(x) for x in H.gens], m, cap)
            if not fact.factors:
                raise ConsistencyError(f"Iso subgroup {H.elems[:6]} does not factor")
        elif tag == "OntoNotInjective":
            kc = _normal_cyclic_in_kernel(fq, K)
            if kc is None:
                raise ConsistencyError("onto, non-injective subgroup has no invariant cyclic kernel subgroup")
        out.append(CaseReport(H, tag, len(image), K.order, cert, fact, available, kc))
    return out


def irreducibility_consistency(P: VAPresentation, p: int, r: int, reports: list[CaseReport] | None = None) -> bool:
    """No invariant line in A implies no OntoNotInjective case."""
    if reports is None:
        reports = classify_subgroups(P, p, r)
    reducible = invariant_line_bruteforce(P) is not None
    return reducible or not any(rep.tag == "OntoNotInjective" for rep in reports)


# ---------------------------------------------------------------- short kernel homomorphisms


@dataclass(frozen=True)
class KernelHom:
    u: int
    v: int
    p: int
    generator: tuple[int, int]

    @property
    def norm2(self) -> int:
        return self.u * self.u + self.v * self.v

    def __call__(self, x: int, y: int) -> int:
        return self.u * x + self.v * y

    def validate(self) -> None:
        p = self.p
        if self.norm2 >= 2 * p:
            raise ConsistencyError(f"norm^2 {self.norm2} is not below 2p = {2 * p}")
        if self.u % p == 0 and self.v % p == 0:
            raise ConsistencyError("h vanishes mod p")
        if self(*self.generator) % p:
            raise ConsistencyError("generator is not in the mod-p kernel")


def _centered(x: int, p: int) -> int:
    x %= p
    return x - p if 2 * x > p else x


def small_norm_kernel_hom(p: int, generator: tuple[int, int]) -> KernelHom:
    """h: Z^2 -> Z with mod-p kernel <generator> and u^2 + v^2 < 2p.

    For C = <(1, c)> take r = c^{-1} mod p. Among r a for 0 <= a <= sqrt(p), two
    residues lie within sqrt(p) of each other; with alpha the difference of the
    a's and t the centered residue of r alpha, h = (alpha, -t).
    """
    if not is_prime(p):
        raise MalformedInputError(f"{p} is not prime")
    x, y = (g % p for g in generator)
    if x == 0 and y == 0:
        raise PreconditionError("C must be nontrivial")
    gen = (x, y)
    if y == 0:
        h = KernelHom(0, 1, p, gen)
    elif x == 0:
        h = KernelHom(1, 0, p, gen)
    else:
        c = y * pow(x, -1, p) % p
        g, r, _ = L.xgcd(c, p)
        r %= p
        top = isqrt(p)
        res = [r * a % p for a in range(top + 1)]
        pair = None
        for a1 in range(top + 1):
            for a2 in range(a1 + 1, top + 1):
                d = res[a2] - res[a1]
                if d * d < p:
                    pair = (a1, a2)
                    break
            if pair:
                break
        if pair is None:
            # Residues may only be close across the wrap-around of Z/p.
            for a1 in range(top + 1):
                for a2 in range(a1 + 1, top + 1):
                    d = (res[a2] - res[a1]) % p
                    d = min(d, p - d)
                    if d * d < p:
                        pair = (a1, a2)
                        break
                if pair:
                    break
        if pair is None:
            raise ConsistencyError(f"pigeonhole failed for p={p}, c={c}")
        alpha = pair[1] - pair[0]
        t = _centered(r * alpha, p)
        h = KernelHom(alpha, -t, p, gen)
    h.validate()
    return h


@dataclass(frozen=True)
class ContractionFactor:
    norm2: int
    p2: int

    @property
    def ratio(self) -> Fraction:
        """|h|^2 / p^2."""
        return Fraction(self.norm2, self.p2)

    def as_float(self) -> float:
        return float(self.ratio) ** 0.5


def contraction_factor(h: KernelHom) -> ContractionFactor:
    cf = ContractionFactor(h.norm2, h.p * h.p)
    if not cf.ratio < Fraction(2, h.p):
        raise ConsistencyError(f"contraction {cf.ratio} is not below 2/{h.p}")
    return cf


def line_generators(p: int) -> np.ndarray:
    """Generators of the p + 1 cyclic subgroups of (Z/p)^2: (1, c) for c < p, then (0, 1)."""
    gens = np.zeros((p + 1, 2), dtype=np.int64)
    gens[:p, 0] = 1
    gens[:p, 1] = np.arange(p)
    gens[p] = (0, 1)
    return gens
