"""Hyperelementary recognition for finite groups and rank-one virtually cyclic groups.

A group is p-hyperelementary when it has a normal cyclic subgroup whose quotient
is a p-group. Finite recognition is brute force over normal cyclic subgroups.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Collection, Literal

import numpy as np

from .core import Element, VAPresentation, conjugate, inverse, multiply, power
from .errors import ORDER_CAP, ConsistencyError, MalformedInputError, PreconditionError, check_cap
from .finite import FiniteGroup, Subgroup, is_prime, is_prime_power_of, prime_factors, subgroups
from .splitting import CrystallographicQuotient, SplittingData, crystallographic_quotient


@dataclass(frozen=True)
class HyperelemCert:
    group: Subgroup
    p: int | None  # None marks the "cyclic" certificate
    N: Subgroup

    @property
    def quotient_order(self) -> int:
        return self.group.order // self.N.order

    def validate(self) -> None:
        H, N = self.group, self.N
        if not N.is_subgroup_of(H):
            raise ConsistencyError("certificate subgroup is not inside H")
        if not N.is_cyclic:
            raise ConsistencyError("certificate subgroup is not cyclic")
        if not N.is_normal_in(H):
            raise ConsistencyError("certificate subgroup is not normal")
        if self.p is None:
            if N.order != H.order:
                raise ConsistencyError("cyclic certificate must have N = H")
        elif not is_prime_power_of(self.quotient_order, self.p):
            raise ConsistencyError(f"quotient of order {self.quotient_order} is not a {self.p}-group")


def _as_subgroup(H: FiniteGroup | Subgroup) -> Subgroup:
    return H.whole() if isinstance(H, FiniteGroup) else H


def normal_cyclic_subgroups(H: FiniteGroup | Subgroup) -> list[Subgroup]:
    """Normal cyclic subgroups of H, largest first, ties by element list."""
    H = _as_subgroup(H)
    G = H.ambient
    seen = {G.cyclic_subgroup(x) for x in H.elems}
    normal = [C for C in seen if C.is_normal_in(H)]
    return sorted(normal, key=lambda C: (-C.order, C.elems))


def is_p_hyperelementary(H: FiniteGroup | Subgroup, p: int, cap: int = ORDER_CAP) -> HyperelemCert | None:
    if not is_prime(p):
        raise MalformedInputError(f"{p} is not prime")
    H = _as_subgroup(H)
    check_cap(H.ambient.order, cap, "group order")
    for N in normal_cyclic_subgroups(H):
        if is_prime_power_of(H.order // N.order, p):
            return HyperelemCert(H, p, N)
    return None


ALL_PRIMES = "all"


def is_lambda_hyperelementary(
    H: FiniteGroup | Subgroup,
    inverted_primes: Collection[int] | Literal["all"],
    cap: int = ORDER_CAP,
) -> HyperelemCert | None:
    """Cyclic, or q-hyperelementary for some prime q that is not inverted."""
    H = _as_subgroup(H)
    check_cap(H.ambient.order, cap, "group order")
    if H.is_cyclic:
        return HyperelemCert(H, None, H)
    if inverted_primes == ALL_PRIMES:
        return None
    # A non-cyclic H needs a nontrivial quotient, so q must divide |H|.
    for q in prime_factors(H.order):
        if q not in inverted_primes:
            cert = is_p_hyperelementary(H, q, cap)
            if cert is not None:
                return cert
    return None


def hyperelementary_cert(H: Subgroup, p: int | None = None) -> HyperelemCert | None:
    if p is not None:
        return is_p_hyperelementary(H, p)
    if H.is_cyclic:
        return HyperelemCert(H, None, H)
    for q in prime_factors(H.order):
        cert = is_p_hyperelementary(H, q)
        if cert is not None:
            return cert
    return None


def hyperelementary_subgroups(
    G: FiniteGroup, p: int | None = None, cap: int = ORDER_CAP
) -> list[tuple[Subgroup, HyperelemCert]]:
    """Conjugacy-class representatives that are p-hyperelementary (any p when p is None)."""
    out = []
    for H in subgroups(G, up_to_conjugacy=True, cap=cap):
        cert = hyperelementary_cert(H, p)
        if cert is not None:
            out.append((H, cert))
    return out


# ---------------------------------------------------------------- rank one, infinite

MAX_EXPONENT = 64


@dataclass(frozen=True)
class InfHyperelemStructure:
    kind: Literal["dihedral", "semidirect", "none"]
    p: int | None = None
    generator: Element | None = None  # infinite cyclic normal subgroup with p-group quotient
    index: int | None = None
    dihedral: CrystallographicQuotient | None = field(default=None, repr=False)
    torsion: tuple[Element, ...] = ()
    torsion_group: FiniteGroup | None = field(default=None, repr=False)
    automorphism: tuple[int, ...] = ()  # conjugation by t, as a permutation of torsion indices
    t: Element | None = None
    obstruction: str = ""

    def __bool__(self) -> bool:
        return self.kind != "none"

    @property
    def automorphism_order(self) -> int:
        perm, k, cur = self.automorphism, 1, self.automorphism
        ident = tuple(range(len(perm)))
        while cur != ident:
            cur = tuple(perm[i] for i in cur)
            k += 1
        return k


def _cocycle_power(P: VAPresentation, q: int) -> tuple[int, int]:
    """(k, c) with k = ord(q) and (0, q)^k = (c, id)."""
    k = P.Q.element_order(q)
    return k, power(P, P.q_lift(q), k).vec[0]


def _normal_generator(P: VAPresentation, g: Element) -> bool:
    gi = inverse(P, g)
    return all(conjugate(P, P.q_lift(s), g) in (g, gi) for s in range(1, P.Q.order))


def _find_cyclic_normal(P: VAPresentation, p: int) -> tuple[Element, int] | None:
    """First g = (a, q) with q acting trivially, <g> normal, index a power of p."""
    Qo = P.Q.order
    for e in range(MAX_EXPONENT + 1):
        for q in range(Qo):
            if P.action.mats[q] != ((1,),):
                continue
            k, c = _cocycle_power(P, q)
            # [G : <g>] = |Q| |w| / k with w = k a + c.
            num = p**e * k
            if num % Qo:
                continue
            target = num // Qo
            for w in (target, -target):
                if (w - c) % k:
                    continue
                g = Element(((w - c) // k,), q)
                if _normal_generator(P, g):
                    return g, p**e
    return None


def infinite_hyperelementary_structure(P: VAPresentation) -> InfHyperelemStructure:
    if P.rank != 1:
        raise PreconditionError(f"rank must be 1, got {P.rank}")
    primes = prime_factors(P.Q.order) or [2]
    found = None
    for p in primes:
        found = _find_cyclic_normal(P, p)
        if found is not None:
            break
    if found is None:
        return InfHyperelemStructure(
            "none",
            obstruction=f"no normal infinite cyclic subgroup has p-power index for p in {primes} "
            f"(searched indices up to p^{MAX_EXPONENT})",
        )
    g, index = found
    if index == 1:
        # G is itself infinite cyclic: report it as Z = 1 x| Z.
        p = None
    if any(M == ((-1,),) for M in P.action.mats):
        cq = crystallographic_quotient(P)
        if cq.presentation.Q.order != 2:
            raise ConsistencyError("nontrivial rank-one action must have image of order 2")
        return InfHyperelemStructure("dihedral", p, g, index, dihedral=cq)

    # Trivial action: torsion elements form a finite normal P with G / P infinite cyclic.
    torsion = []
    for q in range(P.Q.order):
        k, c = _cocycle_power(P, q)
        if c % k == 0:
            torsion.append(Element((-c // k,), q))
    pos = {x: i for i, x in enumerate(torsion)}
    try:
        mul = tuple(tuple(pos[multiply(P, x, y)] for y in torsion) for x in torsion)
    except KeyError:
        raise ConsistencyError("torsion elements are not closed under multiplication") from None
    T = FiniteGroup.from_table(mul, "P")
    S = SplittingData.default(P)
    # beta is a homomorphism onto dZ whose kernel is the torsion.
    d = gcd(P.Q.order, *(b[0] for b in S.beta_of_lifts))
    t = None
    for q in range(P.Q.order):
        diff = d - S.beta_of_lifts[q][0]
        if diff % P.Q.order == 0:
            t = Element((diff // P.Q.order,), q)
            break
    if t is None:
        raise ConsistencyError("no element realizes the generator of beta(G)")
    aut = tuple(pos[conjugate(P, t, x)] for x in torsion)
    out = InfHyperelemStructure(
        "semidirect", p, g, index, torsion=tuple(torsion), torsion_group=T, automorphism=aut, t=t
    )
    if p is not None:
        if not is_prime_power_of(T.order, p) or not is_prime_power_of(out.automorphism_order, p):
            raise ConsistencyError("torsion part or automorphism is not of p-power order")
    return out


# ---------------------------------------------------------------- metacyclic exponent


def metacyclic_valid(p: int, s: int, w: int, n: int) -> bool:
    ps = p**s
    u = (1 + p * n) % ps
    return gcd(u, p) == 1 and pow(u, p**w, ps) == 1 % ps


def metacyclic_exponent(p: int, s: int, w: int, n: int) -> int:
    """Exponent of Z/p^s x| Z/p^w with the generator acting by x -> (1 + p n) x.

    Every element (x, j) has p-power order; (x, j)^k = (x S_k(j), k j) with
    S_k(j) = sum_{i<k} u^{i j}. All p^(s+w) element orders are evaluated.
    """
    if not is_prime(p) or s < 1 or w < 1:
        raise MalformedInputError("need prime p and s, w >= 1")
    if not metacyclic_valid(p, s, w, n):
        raise PreconditionError(f"x -> (1+{p}*{n})x does not define an action of Z/{p}^{w} on Z/{p}^{s}")
    ps, pw = p**s, p**w
    u = (1 + p * n) % ps
    js = np.arange(pw, dtype=np.int64)
    xs = np.arange(ps, dtype=np.int64)
    # S and v = u^(k j) at k = 1
    S = np.ones(pw, dtype=np.int64)
    v = np.array([pow(u, int(j), ps) for j in js], dtype=np.int64)
    order = np.zeros((ps, pw), dtype=np.int64)
    k = 1
    for _ in range(s + w + 1):
        done = ((k * js) % pw == 0)[None, :] & ((xs[:, None] * S[None, :]) % ps == 0)
        order[(order == 0) & done] = k
        if (order > 0).all():
            break
        # S_{pk} = S_k (1 + v + ... + v^(p-1)), v = u^(k j)
        geo = np.zeros(pw, dtype=np.int64)
        vp = np.ones(pw, dtype=np.int64)
        for _ in range(p):
            geo = (geo + vp) % ps
            vp = (vp * v) % ps
        S = (S * geo) % ps
        v = vp
        k *= p
    if not (order > 0).all():
        raise ConsistencyError("some element order was not a small power of p")
    return int(order.max())
