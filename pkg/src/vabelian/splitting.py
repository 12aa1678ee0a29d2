"""The splitting homomorphism G -> A x| Q, expansive endomorphisms, and crystallographic quotients.

For preimages x_j of each j in Q, set

    beta(g) = sum_j  A-part of  g x_j x_{pi(g) j}^{-1}.

Each factor lies over the identity of Q, and (beta, pi) is a homomorphism into
the semidirect product with beta(y) = |Q| y on A.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Sequence

from . import lattice as L
from .core import (
    Cocycle,
    Element,
    FiniteQuotient,
    LatticeAction,
    VAPresentation,
    finite_quotient,
    inverse,
    multiply,
)
from .errors import ORDER_CAP, ConsistencyError, PreconditionError
from .finite import FiniteGroup


@dataclass(frozen=True)
class SplittingData:
    presentation: VAPresentation
    reps: tuple[Element, ...]

    def __post_init__(self):
        P = self.presentation
        if len(self.reps) != P.Q.order:
            raise PreconditionError("need one representative per element of Q")
        for j, x in enumerate(self.reps):
            P.check_element(x)
            if x.q != j:
                raise PreconditionError(f"representative {x} does not lie over {j}")
        if self.reps[0] != P.identity:
            raise PreconditionError("the representative over the identity must be the identity")

    @classmethod
    def default(cls, P: VAPresentation) -> SplittingData:
        return cls(P, tuple(P.q_lift(j) for j in range(P.Q.order)))

    @cached_property
    def rep_inverses(self) -> tuple[Element, ...]:
        return tuple(inverse(self.presentation, x) for x in self.reps)

    @cached_property
    def target(self) -> VAPresentation:
        return self.presentation.semidirect()

    @cached_property
    def beta_of_lifts(self) -> tuple[L.Vec, ...]:
        """beta((0, q)) for every q; beta((b, q)) = |Q| b + beta((0, q))."""
        P = self.presentation
        return tuple(beta(self, P.q_lift(q)) for q in range(P.Q.order))


def beta(S: SplittingData, g: Element) -> L.Vec:
    P = S.presentation
    P.check_element(g)
    qmul = P.Q.mul[g.q]
    total = [0] * P.rank
    for j, x in enumerate(S.reps):
        f = multiply(P, multiply(P, g, x), S.rep_inverses[qmul[j]])
        if f.q != 0:
            raise ConsistencyError(f"beta factor for j={j} lies over {f.q}, not the identity")
        for i, v in enumerate(f.vec):
            total[i] += v
    return tuple(total)


def beta_fast(S: SplittingData, g: Element) -> L.Vec:
    """beta via the identity beta((b, q)) = |Q| b + beta((0, q))."""
    k = S.presentation.Q.order
    return tuple(k * b + c for b, c in zip(g.vec, S.beta_of_lifts[g.q]))


def splitting_hom(S: SplittingData, g: Element) -> Element:
    return Element(beta(S, g), g.q)


# ---------------------------------------------------------------- expansive maps


@dataclass(frozen=True)
class ExpansiveMap:
    splitting: SplittingData
    n: int

    @property
    def expansion(self) -> int:
        return 1 + self.n * self.splitting.presentation.Q.order

    @classmethod
    def with_expansion(cls, S: SplittingData, r: int) -> ExpansiveMap:
        k = S.presentation.Q.order
        if r % k != 1 % k:
            raise PreconditionError(f"expansion {r} is not 1 mod |Q| = {k}")
        return cls(S, (r - 1) // k)


def expansive_endo(E: ExpansiveMap, g: Element) -> Element:
    b = beta(E.splitting, g)
    return Element(tuple(E.n * x + a for x, a in zip(b, g.vec)), g.q)


def check_expansive_diagram(E: ExpansiveMap, g: Element) -> bool:
    r = E.expansion
    lhs = splitting_hom(E.splitting, expansive_endo(E, g))
    rhs = splitting_hom(E.splitting, g)
    return lhs == Element(tuple(r * x for x in rhs.vec), rhs.q)


def expansive_preimage(E: ExpansiveMap, h: Element) -> Element | None:
    """The unique y with E(y) = h, or None.

    With y = (b, q), E(y) = (r b + n beta((0, q)), q), so a preimage exists iff
    a_h - n beta((0, q_h)) is divisible by r.
    """
    r, n = E.expansion, E.n
    b0 = E.splitting.beta_of_lifts[h.q]
    diff = [a - n * x for a, x in zip(h.vec, b0)]
    if any(d % r for d in diff):
        return None
    return Element(tuple(d // r for d in diff), h.q)


# ---------------------------------------------------------------- crystallographic quotient


@dataclass(frozen=True)
class CrystallographicQuotient:
    source: VAPresentation
    presentation: VAPresentation
    q_map: tuple[int, ...]  # Q -> Q'
    basis: L.Mat  # columns span the image lattice inside A
    offsets: tuple[L.Vec, ...]  # beta of the chosen lift over each q'
    splitting: SplittingData = field(repr=False)

    def __call__(self, g: Element) -> Element:
        qq = self.q_map[g.q]
        b = beta(self.splitting, g)
        rel = L.vec_sub(b, self.offsets[qq])
        try:
            u = L.solve_integer(self.basis, rel)
        except ValueError:
            raise ConsistencyError(f"image of {g} is not in the lattice coset over {qq}") from None
        return Element(u, qq)

    def kernel_q(self) -> tuple[int, ...]:
        return tuple(q for q, qq in enumerate(self.q_map) if qq == 0)


def crystallographic_quotient(P: VAPresentation, S: SplittingData | None = None) -> CrystallographicQuotient:
    """Image of (beta, alpha o pi): G -> A x| alpha(Q), rewritten over its own lattice."""
    S = S or SplittingData.default(P)
    n, k = P.rank, P.Q.order
    mats = P.action.mats
    images: list[L.Mat] = []
    q_map = []
    first_lift = []
    for q, M in enumerate(mats):
        if M not in images:
            images.append(M)
            first_lift.append(q)
        q_map.append(images.index(M))
    kq = len(images)
    qmul = tuple(tuple(images.index(L.mat_mul(A, B)) for B in images) for A in images)
    Qp = FiniteGroup.from_table(qmul, f"alpha({P.Q.name or 'Q'})")

    kernel = [q for q in range(k) if q_map[q] == 0]
    gens = [tuple(k * int(i == j) for j in range(n)) for i in range(n)]
    gens += [S.beta_of_lifts[q] for q in kernel]
    rows = L.hnf_rows(gens, n)
    if len(rows) != n:
        raise ConsistencyError("image lattice has lower rank than A")
    B = L.transpose(rows)
    Binv_apply = lambda v: L.solve_integer(B, v)
    offsets = tuple(S.beta_of_lifts[q] for q in first_lift)

    new_mats = []
    for M in images:
        cols = [Binv_apply(L.mat_vec(M, col)) for col in rows]
        new_mats.append(L.transpose(cols))
    table = []
    for a in range(kq):
        row = []
        for b in range(kq):
            v = L.vec_sub(L.vec_add(offsets[a], L.mat_vec(images[a], offsets[b])), offsets[qmul[a][b]])
            row.append(Binv_apply(v))
        table.append(tuple(row))
    out = VAPresentation(
        n, Qp, LatticeAction(n, tuple(new_mats)), Cocycle(n, tuple(table)), f"cryst({P.name})"
    ).validate()
    return CrystallographicQuotient(P, out, tuple(q_map), B, offsets, S)


# ---------------------------------------------------------------- factoring through the expansive map


@dataclass(frozen=True)
class FactorizationReport:
    injective: bool  # (H A^r)/A^r -> Q injective
    torsion: bool  # image in the split quotient (A/rA) x| Q is |Q|-torsion
    expansion: int
    conjugator: Element | None = None
    conjugated: tuple[Element, ...] = ()
    preimages: tuple[Element, ...] = ()

    @property
    def factors(self) -> bool:
        return self.injective


def _subgroup_image(fq: FiniteQuotient, gens: Sequence[Element]) -> frozenset[int]:
    return fq.group.generate([fq.project(g) for g in gens]).elemset


def factors_through_expansive(
    P: VAPresentation,
    S: SplittingData,
    gens: Sequence[Element],
    r: int,
    cap: int = ORDER_CAP,
) -> FactorizationReport:
    """Decide whether <gens> A^r / A^r maps injectively to Q and, if so, exhibit a
    conjugate of it inside the image of the expansion-r endomorphism.
    """
    k = P.Q.order
    if r < 1 or r % k != 1 % k:
        raise PreconditionError(f"expansion r={r} must be 1 mod |Q| = {k}")
    # Torsion in G has order dividing |Q|, so gcd(r, |Q|) = 1 rules out r-torsion.
    if gcd(r, k) != 1:
        raise PreconditionError("subgroup may contain r-torsion")
    for g in gens:
        P.check_element(g)
    fq = finite_quotient(P, r, cap)
    Hbar = _subgroup_image(fq, gens)

    injective = not any(fq.is_lattice(x) for x in Hbar if x != 0)

    # Criterion via the splitting group: the image of H in (A/rA) x| Q is |Q|-torsion.
    split_fq = finite_quotient(S.target, r, cap)
    G2 = split_fq.group
    image = {split_fq.index(beta_fast(S, fq.section(x)), fq.q_of(x)) for x in Hbar}
    torsion = all(G2.power(y, k) == 0 for y in image)
    if injective != torsion:
        raise ConsistencyError("injectivity and |Q|-torsion criteria disagree")

    E = ExpansiveMap.with_expansion(S, r)
    if not injective:
        return FactorizationReport(False, False, r)
    for x in range(fq.order):
        c = fq.section(x)
        ci = inverse(P, c)
        conj = tuple(multiply(P, multiply(P, c, g), ci) for g in gens)
        pre = [expansive_preimage(E, h) for h in conj]
        if all(y is not None for y in pre):
            for y, h in zip(pre, conj):
                if expansive_endo(E, y) != h:
                    raise ConsistencyError(f"preimage {y} does not map to {h}")
            return FactorizationReport(True, True, r, c, conj, tuple(pre))
    raise ConsistencyError("injective image but no conjugate lies in the expansive image")
