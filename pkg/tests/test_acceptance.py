"""Acceptance criteria, one test each, timed against their limits.

Each test prints a PASS/FAIL line; run ``python tests/test_acceptance.py`` for
just those lines.
"""

import random
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from vabelian import espace as E
from vabelian.catalog import CATALOG, builtin
from vabelian.core import Element, multiply, power
from vabelian.finite import cyclic, dihedral, primes_upto, subgroups, symmetric
from vabelian.hyperelementary import is_p_hyperelementary, metacyclic_exponent, metacyclic_valid
from vabelian.induction import classify_subgroups, line_generators, small_norm_kernel_hom
from vabelian.oracles import (
    cyclic_action,
    metacyclic_exponent_naive,
    min_norm_kernel_hom,
    random_elements,
    units_of_order_dividing,
)
from vabelian.qproj import BASEPOINT, RationalLine, conj_action, line_of, line_orbits
from vabelian.reducibility import detect_via_quotient, good_primes, invariant_line_bruteforce, sign_character
from vabelian.splitting import ExpansiveMap, SplittingData, beta, check_expansive_diagram, splitting_hom
from vabelian.errors import HypothesisError

# PASS/FAIL lines, also echoed in the terminal summary by conftest
RESULTS: list[str] = []

REQUIRED_GROUPS = {"Dinf", "twistedZ", "ZxZ2", "p1", "p2", "p3", "p4", "pm"}


def _report(number, title, ok, elapsed, limit):
    status = "PASS" if ok and elapsed < limit else "FAIL"
    line = f"{status} criterion {number:>2}: {title} ({elapsed:.2f}s, limit {limit}s)"
    RESULTS.append(line)
    print(line)
    return status == "PASS"


def timed(number, title, limit):
    def deco(fn):
        def wrapper():
            t0 = time.perf_counter()
            failures = fn()
            elapsed = time.perf_counter() - t0
            ok = _report(number, title, not failures, elapsed, limit)
            assert not failures, failures[:5]
            assert ok, f"took {elapsed:.2f}s, limit {limit}s"

        wrapper.__name__ = fn.__name__
        return wrapper

    return deco


@timed(1, "splitting map is a homomorphism, beta = |Q| on A", 5)
def test_criterion_01_splitting_homomorphism():
    assert REQUIRED_GROUPS <= set(CATALOG) and len(CATALOG) >= 8
    rng = random.Random(1)
    fails = []
    for name in CATALOG:
        P = builtin(name)
        S = SplittingData.default(P)
        T = S.target
        xs = random_elements(P, rng, 2000, bound=20)
        for g, h in zip(xs[0::2], xs[1::2]):
            if splitting_hom(S, multiply(P, g, h)) != multiply(T, splitting_hom(S, g), splitting_hom(S, h)):
                fails.append((name, g, h))
            y = Element(g.vec, 0)
            if beta(S, y) != tuple(P.Q.order * a for a in y.vec):
                fails.append((name, "beta", y))
    return fails


@timed(2, "expansive diagram commutes, n in 0..3, 500 elements per group", 5)
def test_criterion_02_expansive_diagram():
    rng = random.Random(2)
    fails = []
    for name in CATALOG:
        P = builtin(name)
        S = SplittingData.default(P)
        xs = random_elements(P, rng, 500, bound=20)
        for n in range(4):
            E_n = ExpansiveMap(S, n)
            fails += [(name, n, g) for g in xs if not check_expansive_diagram(E_n, g)]
    return fails


@timed(3, "short kernel homomorphisms, all p <= 997, oracle for p <= 97", 60)
def test_criterion_03_short_kernel_homs():
    fails = []
    for p in primes_upto(997):
        gens = line_generators(p)
        hs = [small_norm_kernel_hom(p, (int(a), int(b))) for a, b in gens]
        H = np.array([[h.u, h.v] for h in hs], dtype=np.int64)
        # h_i vanishes mod p on line j exactly when i == j
        if not (((H @ gens.T) % p == 0) == np.eye(p + 1, dtype=bool)).all():
            fails.append((p, "kernel"))
        if any(h.norm2 >= 2 * p for h in hs):
            fails.append((p, "norm"))
        if p <= 97:
            for (a, b), h in zip(gens, hs):
                best = min_norm_kernel_hom(p, (int(a), int(b)))
                if best is None or best[0] > h.norm2:
                    fails.append((p, (a, b), "oracle"))
    return fails


@timed(4, "good primes force +-1 actions, p <= 200, |Q| <= 24", 30)
def test_criterion_04_sign_characters():
    fails, cases = [], 0
    for k in range(1, 25):
        for p in good_primes(k, 200):
            for u in units_of_order_dividing(p, k):
                cases += 1
                Q, act = cyclic_action(p, k, u)
                try:
                    rho = sign_character(p, Q, act)
                except HypothesisError:
                    fails.append((k, p, u))
                    continue
                if not set(rho.values) <= {1, -1}:
                    fails.append((k, p, u))
    assert cases > 500
    return fails


@timed(5, "detected invariant subgroup mod p^r implies invariant line", 60)
def test_criterion_05_detection_soundness():
    fails, found = [], 0
    for name in CATALOG:
        P = builtin(name)
        oracle = invariant_line_bruteforce(P)
        for p in good_primes(P.Q.order, 30):
            for r in (1, 2):
                rep = detect_via_quotient(P, p, r)
                if not rep.found:
                    continue
                found += 1
                if oracle is None:
                    fails.append((name, p, r, "no line"))
                ah = rep.a_hat
                if any(P.action(q, ah) != tuple(rep.rho(q) * x for x in ah) for q in range(P.Q.order)):
                    fails.append((name, p, r, "rho"))
                if not any(x % p**r for x in ah):
                    fails.append((name, p, r, "zero mod p^r"))
    assert found > 0
    return fails


@timed(6, "D-infinity at (3,1): exactly four case reports", 1)
def test_criterion_06_dinf_trichotomy():
    reps = classify_subgroups(builtin("Dinf"), 3, 1)
    got = sorted((rep.H.order, rep.tag) for rep in reps)
    fails = []
    if got != [(1, "NotOnto"), (2, "Iso"), (3, "NotOnto"), (6, "OntoNotInjective")]:
        fails.append(got)
    for rep in reps:
        if rep.tag == "Iso" and not (rep.factorization and rep.factorization.factors and rep.factorization.expansion == 3):
            fails.append("Iso without witness")
        if rep.tag == "OntoNotInjective" and rep.kernel_order != 3:
            fails.append("kernel is not Z/3")
    return fails


@timed(7, "p4 at (3,2): no OntoNotInjective, every Iso factors through expansion 9", 120)
def test_criterion_07_p4_irreducible():
    reps = classify_subgroups(builtin("p4"), 3, 2)
    fails = []
    if any(rep.tag == "OntoNotInjective" for rep in reps):
        fails.append("OntoNotInjective present")
    isos = [rep for rep in reps if rep.tag == "Iso"]
    if not isos:
        fails.append("no Iso reports")
    for rep in isos:
        f = rep.factorization
        if f is None or f.expansion != 9 or not (f.injective and f.torsion) or len(f.preimages) != len(f.conjugated):
            fails.append(rep.H.elems[:4])
    return fails


@timed(8, "metacyclic exponent is p^w for p in {2,3,5}, 1 <= s <= w <= 4", 60)
def test_criterion_08_metacyclic():
    fails, cases = [], 0
    for p in (2, 3, 5):
        for w in range(1, 5):
            for s in range(1, w + 1):
                for n in range(p ** (s - 1)):
                    if not metacyclic_valid(p, s, w, n):
                        continue
                    cases += 1
                    e = metacyclic_exponent(p, s, w, n)
                    if e != p**w:
                        fails.append((p, s, w, n, e))
                    if p ** (s + w) <= 4096 and metacyclic_exponent_naive(p, s, w, n) != e:
                        fails.append((p, s, w, n, "naive"))
    assert cases > 0
    return fails


@timed(9, "coset-chain model: counts, cones, unions, join inclusion, family identity", 60)
def test_criterion_09_espace():
    fails = []
    # (a) hand counts for Z/2
    C2 = cyclic(2)
    free = E.skeleton(C2, E.Family.trivial(C2), 1)
    full = E.skeleton(C2, E.Family.all(C2), 1)
    count = lambda sk, k: sum(len(s) == k + 1 for s in sk)
    if (count(free, 0), count(free, 1), count(full, 0), count(full, 1)) != (2, 2, 3, 4):
        fails.append("Z/2 counts")
    # (b) cone contraction on every fixed simplex through dimension 3
    for G in (cyclic(2), cyclic(3), cyclic(4), cyclic(6), symmetric(3)):
        for fam in (E.Family.all(G), E.Family.where(G, lambda H: H.is_cyclic), E.Family.trivial(G)):
            skel = E.CosetModel(fam).skeleton(3)
            for H in fam.members:
                for s in E.fixed_complex(H, skel):
                    c = E.cone_contract(H, s, fam)
                    if E.face(c, 0) != s:
                        fails.append((G.name, s))
    # (c) two-prime families for Z/6 and S3
    for G in (cyclic(6), symmetric(3)):
        f2 = E.Family.where(G, lambda H: is_p_hyperelementary(H, 2) is not None)
        f3 = E.Family.where(G, lambda H: is_p_hyperelementary(H, 3) is not None)
        if not E.union_check(G, f2, f3, 2).ok:
            fails.append((G.name, "union"))
    # (d) join inclusion, cyclic inside all, S3
    S3 = symmetric(3)
    if not E.join_inclusion_check(S3, E.Family.where(S3, lambda H: H.is_cyclic), E.Family.all(S3), 2).ok:
        fails.append("join inclusion")
    # (e) p- and q-hyperelementary together means cyclic
    for G in (cyclic(6), cyclic(12), symmetric(3), dihedral(6), dihedral(5), symmetric(4)):
        for p, q in ((2, 3), (2, 5), (3, 5)):
            for H in subgroups(G):
                both = is_p_hyperelementary(H, p) is not None and is_p_hyperelementary(H, q) is not None
                if both != H.is_cyclic:
                    fails.append((G.name, p, q, H.elems))
    return fails


@timed(10, "rational lines: counts, p4 partition, power stability, action", 10)
def test_criterion_10_lines():
    fails = []
    z2 = line_orbits(builtin("Z2"), 2)
    if sum(len(o) for o in z2) != 8 or any(len(o) != 1 for o in z2):
        fails.append("Z2 count")
    P4 = builtin("p4")
    got = {frozenset(line.v for line in o) for o in line_orbits(P4, 2)}
    want = {
        frozenset({(1, 0), (0, 1)}),
        frozenset({(1, 1), (1, -1)}),
        frozenset({(1, 2), (2, -1)}),
        frozenset({(2, 1), (1, -2)}),
    }
    if got != want:
        fails.append(("p4 partition", got))
    rng = random.Random(10)
    for name in CATALOG:
        P = builtin(name)
        for g in random_elements(P, rng, 100):
            line = line_of(P, g)
            for m in range(1, 7):
                if line_of(P, power(P, g, m)) != line:
                    fails.append((name, g, m))
            h, k = random_elements(P, rng, 2)
            if line is not BASEPOINT:
                if conj_action(P, h, conj_action(P, k, line)) != conj_action(P, multiply(P, h, k), line):
                    fails.append((name, "action"))
        orbits = line_orbits(P, 2)
        flat = [x for o in orbits for x in o]
        if len(flat) != len(set(flat)):
            fails.append((name, "overlap"))
    return fails


@timed(11, "check --seed 42 twice: byte-identical, exit 0", 120)
def test_criterion_11_determinism():
    cmd = [sys.executable, "-m", "vabelian.cli", "check", "--seed", "42"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    fails = []
    if a.returncode != 0 or b.returncode != 0:
        fails.append(("exit", a.returncode, b.returncode, a.stdout.decode()[-2000:]))
    if a.stdout != b.stdout:
        fails.append("outputs differ")
    return fails


if __name__ == "__main__":
    sys.exit(pytest.main([str(Path(__file__)), "-q"]))
