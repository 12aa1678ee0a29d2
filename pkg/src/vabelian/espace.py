"""Coset-chain models of universal spaces for finite groups and families of subgroups.

An n-simplex is a sequence (C_0, ..., C_n) of left cosets with C_i C_i^-1 in the
family and C_i C_i^-1 contained in C_{i+1} C_{i+1}^-1. Faces omit an entry,
degeneracies repeat one, and G acts diagonally by left translation. A coset is
stored as its sorted element tuple; gH determines H = C^-1 C and its left
stabilizer C C^-1 = g H g^-1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .errors import SIMPLEX_CAP, CapacityError, ConsistencyError, MalformedInputError, PreconditionError
from .finite import FiniteGroup, Subgroup, generate, subgroups

Vertex = tuple[int, ...]
Chain = tuple[Vertex, ...]
EMPTY: Chain = ()  # the formal (-1)-simplex used in joins


@dataclass(frozen=True, eq=False)
class Family:
    group: FiniteGroup
    members: tuple[Subgroup, ...]
    subgroup_closed: bool = False

    def __post_init__(self):
        G = self.group
        elems = {H.elems for H in self.members}
        if len(elems) != len(self.members):
            raise MalformedInputError("family lists a subgroup twice")
        for H in self.members:
            if H.ambient is not G:
                raise MalformedInputError("family member lives in another group")
            for g in H.ambient.whole().gens:
                if H.conjugate(g).elems not in elems:
                    raise MalformedInputError(f"family is not closed under conjugation at {H.elems}")
        if self.subgroup_closed:
            for H in self.members:
                for K in subgroups(H.as_group()[0]):
                    _, emb = H.as_group()
                    if tuple(sorted(emb[x] for x in K.elems)) not in elems:
                        raise MalformedInputError(f"family is flagged subgroup-closed but misses a subgroup of {H.elems}")

    @classmethod
    def generated(cls, G: FiniteGroup, subs: Iterable[Subgroup], subgroup_closed: bool = False) -> Family:
        """Close ``subs`` under conjugation (and under subgroups when flagged)."""
        out: set[tuple[int, ...]] = set()
        for H in subs:
            if subgroup_closed:
                Hg, emb = H.as_group()
                pieces = [Subgroup(G, tuple(sorted(emb[x] for x in K.elems))) for K in subgroups(Hg)]
            else:
                pieces = [H]
            for K in pieces:
                for g in range(G.order):
                    out.add(K.conjugate(g).elems)
        return cls(G, tuple(Subgroup(G, e) for e in sorted(out)), subgroup_closed)

    @classmethod
    def where(cls, G: FiniteGroup, pred: Callable[[Subgroup], bool]) -> Family:
        return cls(G, tuple(H for H in subgroups(G) if pred(H)))

    @classmethod
    def all(cls, G: FiniteGroup) -> Family:
        return cls(G, tuple(subgroups(G)), True)

    @classmethod
    def trivial(cls, G: FiniteGroup) -> Family:
        return cls(G, (G.trivial(),), True)

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {H.elems: i for i, H in enumerate(self.members)}

    def __contains__(self, H: Subgroup | tuple[int, ...]) -> bool:
        return (H.elems if isinstance(H, Subgroup) else H) in self.index

    def __len__(self) -> int:
        return len(self.members)

    def union(self, other: Family) -> Family:
        return Family.generated(self.group, list(self.members) + list(other.members))

    def intersection(self, other: Family) -> Family:
        return Family(self.group, tuple(H for H in self.members if H in other))

    def minus(self, other: Family) -> Family:
        return Family(self.group, tuple(H for H in self.members if H not in other))

    def closed_relative_to(self, other: Family) -> bool:
        """A member of ``other`` inside a member of self must be a member of self."""
        return all(K in self for K in other.members for H in self.members if K.is_subgroup_of(H))


def _left_cosets(G: FiniteGroup, H: Subgroup) -> list[Vertex]:
    seen = set()
    out = []
    for g in range(G.order):
        C = tuple(sorted(G.mul[g][h] for h in H.elems))
        if C not in seen:
            seen.add(C)
            out.append(C)
    return sorted(out)


def stabilizer_of(G: FiniteGroup, C: Vertex) -> tuple[int, ...]:
    """C C^-1 as a sorted element tuple."""
    return tuple(sorted({G.mul[x][G.inv[y]] for x in C for y in C}))


def subgroup_of(G: FiniteGroup, C: Vertex) -> tuple[int, ...]:
    """C^-1 C, the subgroup C is a left coset of."""
    return tuple(sorted({G.mul[G.inv[x]][y] for x in C for y in C}))


def translate(G: FiniteGroup, g: int, C: Vertex) -> Vertex:
    return tuple(sorted(G.mul[g][x] for x in C))


@dataclass(frozen=True, eq=False)
class CosetModel:
    family: Family

    @property
    def group(self) -> FiniteGroup:
        return self.family.group

    @cached_property
    def vertices(self) -> tuple[Vertex, ...]:
        """Vertices ordered by family index of their subgroup, then by elements."""
        out = []
        for H in self.family.members:
            out += _left_cosets(self.group, H)
        return tuple(out)

    @cached_property
    def vertex_index(self) -> dict[Vertex, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def stab(self) -> dict[Vertex, frozenset[int]]:
        return {v: frozenset(stabilizer_of(self.group, v)) for v in self.vertices}

    @cached_property
    def _up(self) -> tuple[tuple[int, ...], ...]:
        """For each vertex, the other vertices whose stabilizer contains its own."""
        st = [self.stab[v] for v in self.vertices]
        return tuple(
            tuple(j for j in range(len(st)) if j != i and st[i] <= st[j]) for i in range(len(st))
        )

    def stabilizer(self, v: Vertex) -> frozenset[int]:
        return self.stab[v] if v in self.stab else frozenset(stabilizer_of(self.group, v))

    def is_vertex(self, v: Vertex) -> bool:
        if v in self.vertex_index:
            return True
        G = self.group
        if not v or any(not 0 <= x < G.order for x in v):
            return False
        H = subgroup_of(G, v)
        if H not in self.family:
            return False
        return tuple(sorted(G.mul[v[0]][h] for h in H)) == tuple(v)

    def is_simplex(self, s: Chain) -> bool:
        if not s or not all(self.is_vertex(v) for v in s):
            return False
        return all(self.stabilizer(a) <= self.stabilizer(b) for a, b in zip(s, s[1:]))

    def skeleton(self, d: int, cap: int = SIMPLEX_CAP) -> list[Chain]:
        """Nondegenerate simplices of dimension <= d, by dimension then vertex-index order."""
        if d < 0:
            return []
        if d > 4:
            raise CapacityError("skeleton dimension is capped at 4")
        V = self.vertices
        layer = [(i,) for i in range(len(V))]
        out = list(layer)
        for _ in range(d):
            nxt = [c + (j,) for c in layer for j in self._up[c[-1]]]
            if len(out) + len(nxt) > cap:
                raise CapacityError(f"skeleton exceeds simplex cap {cap}")
            out += nxt
            layer = nxt
        return [tuple(V[i] for i in c) for c in out]

    def act(self, g: int, s: Chain) -> Chain:
        return tuple(translate(self.group, g, C) for C in s)

    def export_line(self, s: Chain) -> str:
        """(dim, [(subgroup id, coset representative), ...])."""
        G = self.group
        parts = [(self.family.index[subgroup_of(G, C)], C[0]) for C in s]
        return f"({len(s) - 1}, {parts})"


def face(s: Chain, k: int) -> Chain:
    if not 0 <= k < len(s):
        raise MalformedInputError(f"face index {k} out of range for a {len(s) - 1}-simplex")
    return s[:k] + s[k + 1 :]


def degeneracy(s: Chain, k: int) -> Chain:
    if not 0 <= k < len(s):
        raise MalformedInputError(f"degeneracy index {k} out of range")
    return s[: k + 1] + s[k:]


def is_degenerate(s: Chain) -> bool:
    return any(a == b for a, b in zip(s, s[1:]))


def skeleton(G: FiniteGroup, fam: Family, d: int, cap: int = SIMPLEX_CAP) -> list[Chain]:
    if fam.group is not G:
        raise MalformedInputError("family belongs to another group")
    return CosetModel(fam).skeleton(d, cap)


def act(G: FiniteGroup, g: int, s: Chain) -> Chain:
    return tuple(translate(G, g, C) for C in s)


# ---------------------------------------------------------------- fixed points and cones


def fixed_complex(H: Subgroup, skel: Sequence[Chain]) -> list[Chain]:
    """Simplices fixed pointwise by H, by the literal test h s = s."""
    G = H.ambient
    gens = H.gens
    out = [s for s in skel if all(act(G, h, s) == s for h in gens)]
    byst = [s for s in skel if H.elemset <= frozenset(stabilizer_of(G, s[0]))]
    if out != byst:
        raise ConsistencyError("literal fixed set differs from the stabilizer criterion")
    return out


def fixed_complex_strict(H: Subgroup, skel: Sequence[Chain]) -> list[Chain]:
    """The stratum with C_0 C_0^-1 exactly H."""
    G = H.ambient
    return [s for s in skel if stabilizer_of(G, s[0]) == H.elems]


def cone_contract(H: Subgroup, s: Chain, fam: Family | None = None) -> Chain:
    G = H.ambient
    if fam is not None and H not in fam:
        raise PreconditionError("cone point subgroup is not in the family")
    if not H.elemset <= frozenset(stabilizer_of(G, s[0])):
        raise ConsistencyError(f"H is not contained in the stabilizer of {s[0]}")
    out = (H.elems,) + tuple(s)
    if fam is not None and not CosetModel(fam).is_simplex(out):
        raise ConsistencyError("cone is not a simplex")
    return out


# ---------------------------------------------------------------- unions


@dataclass(frozen=True)
class UnionReport:
    precondition: bool
    union_equal: bool | None = None
    intersection_equal: bool | None = None
    intersection_family: tuple[tuple[int, ...], ...] = ()
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.precondition and bool(self.union_equal) and bool(self.intersection_equal)


def union_check(G: FiniteGroup, famG: Family, famH: Family, d: int, cap: int = SIMPLEX_CAP) -> UnionReport:
    if not (famG.closed_relative_to(famH) and famH.closed_relative_to(famG)):
        return UnionReport(False, detail="families are not closed relative to each other")
    sg = set(skeleton(G, famG, d, cap))
    sh = set(skeleton(G, famH, d, cap))
    fu, fi = famG.union(famH), famG.intersection(famH)
    su = set(skeleton(G, fu, d, cap))
    si = set(skeleton(G, fi, d, cap)) if len(fi) else set()
    return UnionReport(True, su == sg | sh, si == sg & sh, tuple(K.elems for K in fi.members))


# ---------------------------------------------------------------- joins

JoinSimplex = tuple[Chain, Chain]


def join_dim(x: JoinSimplex) -> int:
    return len(x[0]) + len(x[1]) - 1


def join_skeleton(X: Sequence[Chain], Y: Sequence[Chain], d: int, cap: int = SIMPLEX_CAP) -> list[JoinSimplex]:
    """Pairs (x, y) of total dimension dim x + dim y + 1 <= d, with the empty simplex allowed
    on either side but not both. Ordered by dimension, then by the position of x and y."""
    Xs = [EMPTY] + [x for x in X if x]
    Ys = [EMPTY] + [y for y in Y if y]
    out = []
    for n in range(d + 1):
        for x in Xs:
            for y in Ys:
                if len(x) + len(y) - 1 == n and (x or y):
                    out.append((x, y))
                    if len(out) > cap:
                        raise CapacityError(f"join skeleton exceeds simplex cap {cap}")
    return out


def join_face(x: JoinSimplex, k: int) -> JoinSimplex:
    """d_k x id for k <= dim x, id x d_(k - dim x - 1) beyond."""
    a, b = x
    i = len(a) - 1
    if k <= i:
        return (face(a, k), b)
    return (a, face(b, k - i - 1))


@dataclass(frozen=True)
class JoinInclusionReport:
    precondition: bool
    well_defined: bool | None = None
    injective: bool | None = None
    simplicial: bool | None = None
    equivariant: bool | None = None
    simplices: int = 0
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.precondition and all((self.well_defined, self.injective, self.simplicial, self.equivariant))


def split_index(G: FiniteGroup, famH: Family, s: Chain) -> int:
    j = -1
    for i, C in enumerate(s):
        if stabilizer_of(G, C) in famH:
            j = i
    return j


def join_inclusion(G: FiniteGroup, famH: Family, s: Chain) -> JoinSimplex:
    j = split_index(G, famH, s)
    return (s[: j + 1], s[j + 1 :])


def join_inclusion_check(G: FiniteGroup, famH: Family, famG: Family, d: int, cap: int = SIMPLEX_CAP) -> JoinInclusionReport:
    if not all(H in famG for H in famH.members):
        return JoinInclusionReport(False, detail="H is not a subfamily of G")
    if not famH.closed_relative_to(famG):
        return JoinInclusionReport(False, detail="H is not closed relative to G")
    rest = famG.minus(famH)
    mG, mH = CosetModel(famG), CosetModel(famH)
    mR = CosetModel(rest) if len(rest) else None

    def side_ok(model: CosetModel | None, c: Chain) -> bool:
        return not c or (model is not None and model.is_simplex(c))

    skel = mG.skeleton(d, cap)
    images = [join_inclusion(G, famH, s) for s in skel]
    well = all(side_ok(mH, a) and side_ok(mR, b) for a, b in images)
    injective = len(set(images)) == len(images)
    simplicial = all(
        join_inclusion(G, famH, face(s, k)) == join_face(im, k)
        for s, im in zip(skel, images)
        if len(s) > 1
        for k in range(len(s))
    )
    gens = G.whole().gens
    equivariant = all(
        join_inclusion(G, famH, act(G, g, s)) == (act(G, g, im[0]), act(G, g, im[1]))
        for s, im in zip(skel, images)
        for g in gens
    )
    return JoinInclusionReport(True, well, injective, simplicial, equivariant, len(skel))


# ---------------------------------------------------------------- classifying maps


@dataclass(frozen=True)
class SimplicialGSet:
    """Vertices 0..nv-1, action[g][v] the image of v, simplices as ordered vertex tuples."""

    group: FiniteGroup
    action: tuple[tuple[int, ...], ...]
    simplices: tuple[tuple[int, ...], ...] = ()

    @property
    def nv(self) -> int:
        return len(self.action[0]) if self.action else 0

    def stabilizer(self, v: int) -> tuple[int, ...]:
        return tuple(g for g in range(self.group.order) if self.action[g][v] == v)

    def orbit(self, v: int) -> list[int]:
        return sorted({self.action[g][v] for g in range(self.group.order)})

    @classmethod
    def left_translation(cls, G: FiniteGroup) -> SimplicialGSet:
        return cls(G, G.mul)

    @classmethod
    def cosets(cls, H: Subgroup) -> SimplicialGSet:
        G = H.ambient
        cos = _left_cosets(G, H)
        idx = {C: i for i, C in enumerate(cos)}
        return cls(G, tuple(tuple(idx[translate(G, g, C)] for C in cos) for g in range(G.order)))

    def disjoint_union(self, other: SimplicialGSet) -> SimplicialGSet:
        n = self.nv
        act = tuple(a + tuple(n + v for v in b) for a, b in zip(self.action, other.action))
        simp = self.simplices + tuple(tuple(n + v for v in s) for s in other.simplices)
        return SimplicialGSet(self.group, act, simp)


@dataclass(frozen=True)
class ClassifyingMap:
    source: SimplicialGSet
    representatives: tuple[int, ...]
    vertex_map: tuple[Vertex, ...]
    simplex_map: tuple[Chain, ...] = field(default=())

    def __call__(self, v: int) -> Vertex:
        return self.vertex_map[v]


def classifying_map(X: SimplicialGSet, fam: Family, reps: Sequence[int] | None = None) -> ClassifyingMap:
    G = X.group
    if fam.group is not G:
        raise MalformedInputError("family belongs to another group")
    stabs = [frozenset(X.stabilizer(v)) for v in range(X.nv)]
    for v in range(X.nv):
        if tuple(sorted(stabs[v])) not in fam:
            raise PreconditionError(f"stabilizer of vertex {v} is not in the family")
    for s in X.simplices:
        vs = set(s)
        for g in range(G.order):
            if {X.action[g][v] for v in s} == vs and any(X.action[g][v] != v for v in s):
                raise PreconditionError(f"element {g} maps simplex {s} to itself without fixing it")
        for a, b in zip(s, s[1:]):
            if not stabs[a] <= stabs[b]:
                raise PreconditionError(f"simplex {s}: stabilizer of {a} does not fix {b}")

    if reps is None:
        reps, seen = [], set()
        for v in range(X.nv):
            if v not in seen:
                reps.append(v)
                seen.update(X.orbit(v))
    reps = tuple(reps)
    covered = sorted(w for r in reps for w in X.orbit(r))
    if covered != list(range(X.nv)):
        raise PreconditionError("representatives must meet every orbit exactly once")

    vmap: list[Vertex | None] = [None] * X.nv
    for r in reps:
        H = tuple(sorted(stabs[r]))
        for g in range(G.order):
            y = X.action[g][r]
            if vmap[y] is None:
                vmap[y] = tuple(sorted(G.mul[g][h] for h in H))
    out = ClassifyingMap(X, reps, tuple(vmap), tuple(tuple(vmap[v] for v in s) for s in X.simplices))

    model = CosetModel(fam)
    for v in range(X.nv):
        for g in range(G.order):
            if vmap[X.action[g][v]] != translate(G, g, vmap[v]):
                raise ConsistencyError(f"map is not equivariant at vertex {v}, element {g}")
    for s in out.simplex_map:
        if not model.is_simplex(s):
            raise ConsistencyError(f"image {s} is not a simplex")
    return out
