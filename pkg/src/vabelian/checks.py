"""The invariant suite behind ``vabelian check``.

Each check returns (cases, failures). Output lists one line per check and a
per-module summary; nothing time-dependent is printed so reruns with the same
seed are byte-identical.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import espace as E
from . import hyperelementary as HY
from . import induction as IN
from . import oracles
from . import qproj as QP
from . import reducibility as RD
from . import splitting as SP
from .catalog import CATALOG, builtin
from .core import (
    Element,
    VAPresentation,
    finite_quotient,
    inverse,
    multiply,
    power,
)
from .errors import VAError
from .finite import (
    FiniteGroup,
    alternating,
    cyclic,
    dihedral,
    direct_product,
    primes_upto,
    quaternion,
    subgroups,
    symmetric,
)

MODULES = ("va-core", "splitting", "hyperelementary", "reducibility", "induction-trace", "espace", "qproj", "cli")


@dataclass(frozen=True)
class CheckResult:
    module: str
    name: str
    cases: int
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


Outcome = tuple[int, list[str]]
_REGISTRY: list[tuple[str, str, Callable[..., Outcome]]] = []


def check(module: str, name: str):
    def deco(fn):
        _REGISTRY.append((module, name, fn))
        return fn
    return deco


def finite_corpus() -> list[FiniteGroup]:
    """Small finite groups used wherever a finite test corpus is needed."""
    out = [cyclic(n) for n in (1, 2, 3, 4, 6, 8, 12)]
    out += [symmetric(3), dihedral(4), quaternion(), alternating(4), dihedral(5), dihedral(6)]
    out += [direct_product(cyclic(2), cyclic(2), "Z/2xZ/2"), direct_product(cyclic(2), cyclic(4), "Z/2xZ/4"), symmetric(4)]
    return out


def _quotient_corpus() -> list[FiniteGroup]:
    return [
        finite_quotient(builtin("Dinf"), 3).group,
        finite_quotient(builtin("p2"), 2).group,
        finite_quotient(builtin("Z_Z4sign"), 3).group,
    ]


# ---------------------------------------------------------------- va-core


@check("va-core", "every catalog presentation satisfies the action and cocycle identities")
def _core_catalog(rng) -> Outcome:
    fails = []
    for name in CATALOG:
        fails += [f"{name}: {v}" for v in builtin(name).violations()]
    return len(CATALOG), fails


@check("va-core", "group axioms on random triples (1000 per group)")
def _core_axioms(rng) -> Outcome:
    fails, n = [], 0
    for name in CATALOG:
        P = builtin(name)
        xs = oracles.random_elements(P, rng, 3000)
        e = P.identity
        for a, b, c in zip(xs[0::3], xs[1::3], xs[2::3]):
            n += 1
            if multiply(P, multiply(P, a, b), c) != multiply(P, a, multiply(P, b, c)):
                fails.append(f"{name}: associativity at {a},{b},{c}")
            if multiply(P, e, a) != a or multiply(P, a, e) != a:
                fails.append(f"{name}: identity at {a}")
            ai = inverse(P, a)
            if multiply(P, a, ai) != e or multiply(P, ai, a) != e:
                fails.append(f"{name}: inverse at {a}")
    return n, fails[:5]


@check("va-core", "finite quotient projection is a homomorphism (1000 pairs)")
def _core_project(rng) -> Outcome:
    fails, n = [], 0
    for name in CATALOG:
        P = builtin(name)
        fq = finite_quotient(P, 3)
        xs = oracles.random_elements(P, rng, 2000)
        for g, h in zip(xs[0::2], xs[1::2]):
            n += 1
            if fq.project(multiply(P, g, h)) != fq.group.mul[fq.project(g)][fq.project(h)]:
                fails.append(f"{name}: project({g}*{h})")
        for x in range(fq.order):
            if fq.project(fq.section(x)) != x:
                fails.append(f"{name}: section/project at {x}")
    return n, fails[:5]


@check("va-core", "quotient order is m^n |Q|")
def _core_order(rng) -> Outcome:
    fails, n = [], 0
    for name in CATALOG:
        P = builtin(name)
        for m in (1, 2, 3, 4):
            if m**P.rank * P.Q.order > 2000:
                continue
            n += 1
            if finite_quotient(P, m).order != m**P.rank * P.Q.order:
                fails.append(f"{name}, m={m}")
    return n, fails


@check("va-core", "subgroup closure; S3 has 6 subgroups, Z/6 has 4")
def _core_subgroups(rng) -> Outcome:
    fails, n = [], 0
    for G in finite_corpus() + _quotient_corpus():
        for H in subgroups(G):
            n += 1
            try:
                H.validate()
            except VAError as exc:
                fails.append(f"{G.name}: {exc}")
    if len(subgroups(symmetric(3))) != 6:
        fails.append("S3 subgroup count")
    if len(subgroups(cyclic(6))) != 4:
        fails.append("Z/6 subgroup count")
    return n + 2, fails


# ---------------------------------------------------------------- splitting


@check("splitting", "(beta, pi) is a homomorphism and beta = |Q| on A (1000 pairs)")
def _split_hom(rng) -> Outcome:
    fails, n = [], 0
    for name in CATALOG:
        P = builtin(name)
        S = SP.SplittingData.default(P)
        T = S.target
        xs = oracles.random_elements(P, rng, 2000)
        for g, h in zip(xs[0::2], xs[1::2]):
            n += 1
            lhs = SP.splitting_hom(S, multiply(P, g, h))
            rhs = multiply(T, SP.splitting_hom(S, g), SP.splitting_hom(S, h))
            if lhs != rhs:
                fails.append(f"{name}: hom law at {g},{h}")
            y = Element(g.vec, 0)
            if SP.beta(S, y) != tuple(P.Q.order * a for a in y.vec):
                fails.append(f"{name}: beta on A at {y}")
    return n, fails[:5]


@check("splitting", "expansive diagram commutes and E is an endomorphism, n in 0..3")
def _split_expansive(rng) -> Outcome:
    fails, n = [], 0
    for name in CATALOG:
        P = builtin(name)
        S = SP.SplittingData.default(P)
        xs = oracles.random_elements(P, rng, 500)
        for k in range(4):
            Em = SP.ExpansiveMap(S, k)
            for g in xs:
                n += 1
                if not SP.check_expansive_diagram(Em, g):
                    fails.append(f"{name}: diagram n={k} at {g}")
            for g, h in zip(xs[0::2], xs[1::2]):
                if SP.expansive_endo(Em, multiply(P, g, h)) != multiply(P, SP.expansive_endo(Em, g), SP.expansive_endo(Em, h)):
                    fails.append(f"{name}: endomorphism n={k} at {g},{h}")
    return n, fails[:5]


@check("splitting", "crystallographic quotient: faithful, same rank, multiplicative")
def _split_cryst(rng) -> Outcome:
    fails, n = [], 0
    for name in CATALOG:
        P = builtin(name)
        cq = SP.crystallographic_quotient(P)
        C = cq.presentation
        n += 1
        if not C.is_faithful():
            fails.append(f"{name}: image action not faithful")
        if C.rank != P.rank:
            fails.append(f"{name}: rank changed")
        for g, h in zip(*[iter(oracles.random_elements(P, rng, 200))] * 2):
            if cq(multiply(P, g, h)) != multiply(C, cq(g), cq(h)):
                fails.append(f"{name}: not multiplicative at {g},{h}")
        # Kernel is finite and lies over ker(alpha).
        for q in range(P.Q.order):
            if cq(P.q_lift(q)) == C.identity and cq.q_map[q] != 0:
                fails.append(f"{name}: kernel element outside ker alpha")
    return n, fails[:5]


@check("splitting", "injectivity and torsion criteria agree; decision independent of representatives")
def _split_factor(rng) -> Outcome:
    fails, n = [], 0
    for name, r in (("Dinf", 3), ("twistedZ", 3), ("p4", 5), ("pg", 3), ("p2", 3), ("pmm", 5), ("Z_Z4sign", 5)):
        P = builtin(name)
        S = SP.SplittingData.default(P)
        alt = SP.SplittingData(P, (P.identity,) + tuple(Element(tuple(rng.randint(-3, 3) for _ in range(P.rank)), j) for j in range(1, P.Q.order)))
        fq = finite_quotient(P, r)
        for H in subgroups(fq.group, up_to_conjugacy=True):
            n += 1
            gens = [fq.section(x) for x in H.gens]
            try:
                a = SP.factors_through_expansive(P, S, gens, r)
                b = SP.factors_through_expansive(P, alt, gens, r)
            except VAError as exc:
                fails.append(f"{name}: {exc}")
                continue
            if a.injective != a.torsion or a.factors != b.factors:
                fails.append(f"{name}: decisions differ on {H.elems[:6]}")
    return n, fails[:5]


# ---------------------------------------------------------------- hyperelementary


@check("hyperelementary", "p- and q-hyperelementary for p != q implies cyclic")
def _hyper_two_primes(rng) -> Outcome:
    fails, n = [], 0
    for G in finite_corpus() + _quotient_corpus():
        if G.order > 200:
            continue
        for H in subgroups(G, up_to_conjugacy=True):
            n += 1
            ps = [p for p in primes_upto(max(H.order, 2)) if HY.is_p_hyperelementary(H, p)]
            # Primes not dividing |H| certify only cyclic groups, so count divisors only.
            ps = [p for p in ps if H.order % p == 0]
            if len(ps) >= 2 and not H.is_cyclic:
                fails.append(f"{G.name}: {H.elems} is {ps}-hyperelementary but not cyclic")
    return n, fails


@check("hyperelementary", "metacyclic exponent is p^w for w >= s")
def _hyper_metacyclic(rng) -> Outcome:
    fails, n = [], 0
    for p in (2, 3, 5):
        for w in range(1, 5):
            for s in range(1, w + 1):
                for k in range(p ** (s - 1)):
                    if not HY.metacyclic_valid(p, s, w, k):
                        continue
                    n += 1
                    if HY.metacyclic_exponent(p, s, w, k) != p**w:
                        fails.append(f"p={p} s={s} w={w} n={k}")
    return n, fails


@check("hyperelementary", "unrestricted list is the union of p-restricted lists; certificates validate")
def _hyper_union(rng) -> Outcome:
    fails, n = [], 0
    for G in finite_corpus() + _quotient_corpus():
        full = HY.hyperelementary_subgroups(G)
        union = set()
        for p in primes_upto(max(G.order, 2)):
            for H, cert in HY.hyperelementary_subgroups(G, p):
                union.add(H.elems)
                cert.validate()
        n += len(full)
        if {H.elems for H, _ in full} != union:
            fails.append(f"{G.name}: union mismatch")
        for H, cert in full:
            try:
                cert.validate()
            except VAError as exc:
                fails.append(f"{G.name}: {exc}")
    return n, fails


# ---------------------------------------------------------------- reducibility


@check("reducibility", "detected invariant subgroup implies an invariant line; a_hat transforms by rho, nonzero mod p^r")
def _red_prop(rng) -> Outcome:
    fails, n = [], 0
    for name in CATALOG:
        P = builtin(name)
        for p in RD.good_primes(P.Q.order, 30):
            for r in (1, 2):
                n += 1
                try:
                    rep = RD.detect_via_quotient(P, p, r)
                except VAError as exc:
                    fails.append(f"{name} p={p} r={r}: {exc}")
                    continue
                if rep.found:
                    if rep.oracle is None:
                        fails.append(f"{name} p={p} r={r}: no invariant line")
                    ah = rep.a_hat
                    if any(P.action(q, ah) != tuple(rep.rho(q) * x for x in ah) for q in range(P.Q.order)):
                        fails.append(f"{name} p={p} r={r}: a_hat does not transform by rho")
                    if not rep.a_hat_nonzero_mod:
                        fails.append(f"{name} p={p} r={r}: a_hat vanishes mod p^r")
    return n, fails


@check("reducibility", "sign characters: every unit of order dividing |Q| is +-1 for good p <= 200, |Q| <= 24")
def _red_sign(rng) -> Outcome:
    fails, n = [], 0
    for k in range(1, 25):
        for p in RD.good_primes(k, 200):
            for u in oracles.units_of_order_dividing(p, k):
                n += 1
                Q, act = oracles.cyclic_action(p, k, u)
                try:
                    RD.sign_character(p, Q, act)
                except VAError as exc:
                    fails.append(f"|Q|={k} p={p} u={u}: {exc}")
    return n, fails


# ---------------------------------------------------------------- induction-trace


@check("induction-trace", "case tags recomputed from scratch; Iso reports factor")
def _ind_cases(rng) -> Outcome:
    fails, n = [], 0
    for name, p, r in (("Dinf", 3, 1), ("Dinf", 3, 2), ("p2", 3, 1), ("pm", 3, 1), ("pg", 3, 1), ("p4", 3, 1), ("twistedZ", 3, 1), ("Z2", 3, 1), ("ZxZ2", 3, 1), ("cm", 3, 1)):
        P = builtin(name)
        fq = finite_quotient(P, p**r)
        for rep in IN.classify_subgroups(P, p, r):
            n += 1
            if oracles.case_tag_from_scratch(fq, rep.H) != rep.tag:
                fails.append(f"{name}: tag mismatch on {rep.H.elems[:6]}")
            if rep.tag == "Iso" and rep.expansion_available:
                f = rep.factorization
                if f is None or not (f.injective and f.torsion):
                    fails.append(f"{name}: Iso report without verified factorization")
        if not IN.irreducibility_consistency(P, p, r):
            fails.append(f"{name}: case 2 without an invariant line")
    return n, fails


@check("induction-trace", "D-infinity at (3,1) gives exactly the four expected reports")
def _ind_dinf(rng) -> Outcome:
    reps = IN.classify_subgroups(builtin("Dinf"), 3, 1)
    got = sorted((rep.H.order, rep.tag) for rep in reps)
    want = [(1, "NotOnto"), (2, "Iso"), (3, "NotOnto"), (6, "OntoNotInjective")]
    return 1, ([] if got == want else [f"got {got}"])


@check("induction-trace", "short kernel homomorphisms for all primes <= 997")
def _ind_kernel(rng) -> Outcome:
    fails, n = [], 0
    for p in primes_upto(997):
        gens = IN.line_generators(p)
        hs = [IN.small_norm_kernel_hom(p, (int(a), int(b))) for a, b in gens]
        H = np.array([[h.u, h.v] for h in hs], dtype=np.int64)
        n += p + 1
        vanish = (H @ gens.T) % p == 0
        if not (vanish == np.eye(p + 1, dtype=bool)).all():
            fails.append(f"p={p}: kernel mismatch")
        if not all(h.norm2 < 2 * p for h in hs):
            fails.append(f"p={p}: norm bound")
        for h in hs:
            IN.contraction_factor(h)
    return n, fails


@check("induction-trace", "short kernel homomorphisms against the minimal-norm oracle, p <= 97")
def _ind_oracle(rng) -> Outcome:
    fails, n = [], 0
    for p in primes_upto(97):
        for a, b in IN.line_generators(p):
            n += 1
            gen = (int(a), int(b))
            h = IN.small_norm_kernel_hom(p, gen)
            best = oracles.min_norm_kernel_hom(p, gen)
            if best is None or not best[0] <= h.norm2 < 2 * p:
                fails.append(f"p={p} C=<{gen}>: oracle {best}, got {h.norm2}")
    return n, fails


# ---------------------------------------------------------------- espace


def _espace_corpus():
    out = []
    for G in (cyclic(2), cyclic(3), cyclic(4), cyclic(6), symmetric(3)):
        out.append((G, E.Family.trivial(G)))
        out.append((G, E.Family.all(G)))
        out.append((G, E.Family.where(G, lambda H: H.is_cyclic)))
    return out


@check("espace", "chains satisfy nesting and membership; action is a simplicial group action")
def _esp_chains(rng) -> Outcome:
    fails, n = [], 0
    for G, fam in _espace_corpus():
        model = E.CosetModel(fam)
        skel = model.skeleton(2)
        elems = range(G.order)
        for s in skel:
            n += 1
            if not model.is_simplex(s) or E.is_degenerate(s):
                fails.append(f"{G.name}: bad chain {s}")
            g, h = rng.randrange(G.order), rng.randrange(G.order)
            if E.act(G, g, E.act(G, h, s)) != E.act(G, G.mul[g][h], s):
                fails.append(f"{G.name}: action law at {s}")
            for k in range(len(s)):
                if E.act(G, g, E.face(s, k)) != E.face(E.act(G, g, s), k):
                    fails.append(f"{G.name}: face/action at {s}")
                if E.act(G, g, E.degeneracy(s, k)) != E.degeneracy(E.act(G, g, s), k):
                    fails.append(f"{G.name}: degeneracy/action at {s}")
        if any(E.act(G, 0, s) != s for s in skel):
            fails.append(f"{G.name}: identity acts nontrivially")
    return n, fails[:5]


@check("espace", "fixed complexes and cone contraction through dimension 3")
def _esp_cone(rng) -> Outcome:
    fails, n = [], 0
    for G, fam in _espace_corpus():
        skel = E.CosetModel(fam).skeleton(3 if G.order <= 4 else 2)
        for H in fam.members:
            for s in E.fixed_complex(H, skel):
                n += 1
                c = E.cone_contract(H, s, fam)
                if E.face(c, 0) != s:
                    fails.append(f"{G.name}: face_0 of cone")
    return n, fails


@check("espace", "two-prime families: union and intersection lemmas, intersection is cyclic")
def _esp_union(rng) -> Outcome:
    fails, n = [], 0
    for G in (cyclic(6), symmetric(3), cyclic(12), dihedral(6)):
        primes = [p for p in (2, 3, 5) if G.order % p == 0]
        for i, p in enumerate(primes):
            for q in primes[i + 1 :]:
                n += 1
                fp = E.Family.where(G, lambda H: HY.is_p_hyperelementary(H, p) is not None)
                fq = E.Family.where(G, lambda H: HY.is_p_hyperelementary(H, q) is not None)
                cyc = E.Family.where(G, lambda H: H.is_cyclic)
                inter = fp.intersection(fq)
                if [H.elems for H in inter.members] != [H.elems for H in cyc.members]:
                    fails.append(f"{G.name}: p,q-hyperelementary intersection is not the cyclic family")
                if G.order <= 6:
                    rep = E.union_check(G, fp, fq, 2)
                    if not rep.ok:
                        fails.append(f"{G.name}: union check {rep}")
    for G in finite_corpus():
        for p in (2, 3):
            for q in (3, 5):
                if p < q:
                    n += 1
                    both = [H for H in subgroups(G) if HY.is_p_hyperelementary(H, p) and HY.is_p_hyperelementary(H, q)]
                    if any(not H.is_cyclic for H in both):
                        fails.append(f"{G.name}: family identity fails for {p},{q}")
    return n, fails


@check("espace", "join inclusion for cyclic inside all subgroups")
def _esp_join(rng) -> Outcome:
    fails, n = [], 0
    for G in (cyclic(2), symmetric(3), cyclic(4)):
        n += 1
        rep = E.join_inclusion_check(G, E.Family.where(G, lambda H: H.is_cyclic), E.Family.all(G), 2)
        if not rep.ok:
            fails.append(f"{G.name}: {rep}")
    return n, fails


@check("espace", "Z/2 skeleton counts: free model 2 per dimension, full family 3 and 4")
def _esp_euler(rng) -> Outcome:
    G = cyclic(2)
    fails = []
    skel = E.skeleton(G, E.Family.trivial(G), 4)
    counts = [sum(1 for s in skel if len(s) == k + 1) for k in range(5)]
    chi = [sum((-1) ** k * c for k, c in enumerate(counts[: d + 1])) for d in range(5)]
    if counts != [2, 2, 2, 2, 2] or chi != [2, 0, 2, 0, 2]:
        fails.append(f"free model counts {counts}, euler {chi}")
    full = E.skeleton(G, E.Family.all(G), 1)
    fc = [sum(1 for s in full if len(s) == k + 1) for k in range(2)]
    if fc != [3, 4]:
        fails.append(f"full family counts {fc}")
    return 2, fails


@check("espace", "classifying maps are equivariant and simplicial")
def _esp_classify(rng) -> Outcome:
    fails, n = [], 0
    S3, C2 = symmetric(3), cyclic(2)
    cases = [
        (E.SimplicialGSet.left_translation(S3), E.Family.trivial(S3)),
        (E.SimplicialGSet.cosets(S3.cyclic_subgroup(3)), E.Family.all(S3)),
        (E.SimplicialGSet.cosets(C2.whole()).disjoint_union(E.SimplicialGSet.left_translation(C2)), E.Family.all(C2)),
    ]
    for X, fam in cases:
        n += 1
        try:
            E.classifying_map(X, fam)
        except VAError as exc:
            fails.append(str(exc))
    return n, fails


# ---------------------------------------------------------------- qproj


@check("qproj", "line of g^m equals line of g for m <= 6")
def _qp_powers(rng) -> Outcome:
    fails, n = [], 0
    for name in CATALOG:
        P = builtin(name)
        for g in oracles.random_elements(P, rng, 60):
            line = QP.line_of(P, g)
            if line is QP.BASEPOINT:
                continue
            for m in range(1, 7):
                n += 1
                if QP.line_of(P, power(P, g, m)) != line:
                    fails.append(f"{name}: line of {g}^{m}")
    return n, fails[:5]


@check("qproj", "conjugation is an action through Q; orbits partition the enumerated lines")
def _qp_orbits(rng) -> Outcome:
    fails, n = [], 0
    for name in CATALOG:
        P = builtin(name)
        if P.rank == 0:
            continue
        orbits = QP.line_orbits(P, 2)
        flat = [x for o in orbits for x in o]
        n += len(flat)
        if len(flat) != len(set(flat)):
            fails.append(f"{name}: orbits overlap")
        enumerated = {QP.RationalLine(v) for v in QP.primitive_vectors(P.rank, 2)}
        if not enumerated <= set(flat):
            fails.append(f"{name}: lines missing from orbits")
        for o in orbits:
            for line in o:
                for q in range(P.Q.order):
                    h = Element(tuple(rng.randint(-3, 3) for _ in range(P.rank)), q)
                    img = QP.conj_action(P, h, line)
                    if img not in o:
                        fails.append(f"{name}: orbit not closed")
                    h2 = Element(tuple(rng.randint(-3, 3) for _ in range(P.rank)), rng.randrange(P.Q.order))
                    if QP.conj_action(P, h2, img) != QP.conj_action(P, multiply(P, h2, h), line):
                        fails.append(f"{name}: not an action")
                    if QP.conj_action(P, Element(h.vec, 0), line) != line:
                        fails.append(f"{name}: A acts nontrivially")
        if P.Q.order == 1 and any(len(o) != 1 for o in orbits):
            fails.append(f"{name}: trivial Q with a non-singleton orbit")
    return n, fails[:5]


@check("qproj", "finite-kernel homomorphisms are injective on lines")
def _qp_functor(rng) -> Outcome:
    fails, n = [], 0
    Z2, p4, D, Z = builtin("Z2"), builtin("p4"), builtin("Dinf"), builtin("Z")
    maps = [
        QP.Homomorphism(Z, D, (Element((1,), 0),), (D.identity,)),
        QP.Homomorphism(Z2, p4, (Element((1, 0), 0), Element((0, 1), 0)), (p4.identity,)),
    ]
    for phi in maps:
        n += 1
        sample = oracles.random_elements(phi.source, rng, 40)
        rep = QP.qp_plus_functoriality(phi, sample)
        if not rep.ok:
            fails += list(rep.violations)
    return n, fails


# ---------------------------------------------------------------- cli


@check("cli", "JSON reports round-trip and carry a schema field")
def _cli_json(rng) -> Outcome:
    from .reports import SCHEMA, classify_json, orbits_json, show_json

    fails, n = [], 0
    docs = [
        show_json(builtin("p4"), 3),
        classify_json(builtin("Dinf"), 3, 1, IN.classify_subgroups(builtin("Dinf"), 3, 1), True),
        orbits_json(builtin("p4"), 2, QP.line_orbits(builtin("p4"), 2)),
    ]
    for doc in docs:
        n += 1
        if doc.get("schema") != SCHEMA or json.loads(json.dumps(doc, sort_keys=True)) != doc:
            fails.append(f"round trip failed for {doc.get('command')}")
    return n, fails


def run_suite(seed: int = 0, modules: tuple[str, ...] | None = None) -> list[CheckResult]:
    out = []
    for module, name, fn in _REGISTRY:
        if modules and module not in modules:
            continue
        rng = random.Random(f"{seed}:{module}:{name}")
        try:
            cases, fails = fn(rng)
        except VAError as exc:
            cases, fails = 0, [f"raised {type(exc).__name__}: {exc}"]
        out.append(CheckResult(module, name, cases, tuple(fails)))
    return out


def format_suite(results: list[CheckResult], seed: int) -> str:
    lines = [f"invariant suite, seed {seed}"]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"[{r.module}] {status} {r.name} ({r.cases} cases)")
        for f in r.failures:
            lines.append(f"    {f}")
    lines.append("summary:")
    for m in MODULES:
        rs = [r for r in results if r.module == m]
        if rs:
            lines.append(f"  {m}: {sum(r.passed for r in rs)}/{len(rs)} checks passed")
    return "\n".join(lines) + "\n"
