import pytest

from vabelian import espace as E
from vabelian.errors import PreconditionError
from vabelian.finite import cyclic, subgroups, symmetric, trivial_group
from vabelian.hyperelementary import is_p_hyperelementary


def nondeg_count(skel, k):
    return sum(1 for s in skel if len(s) == k + 1)


def chains_oracle(G, fam, d):
    # all nondegenerate chains by brute force over tuples of cosets
    from itertools import product

    cosets = set()
    for H in fam.members:
        for g in range(G.order):
            cosets.add(tuple(sorted(G.mul[g][h] for h in H.elems)))
    cosets = sorted(cosets)

    def stab(C):
        return {G.mul[a][G.inv[b]] for a in C for b in C}

    out = set()
    for k in range(d + 1):
        for s in product(cosets, repeat=k + 1):
            if any(a == b for a, b in zip(s, s[1:])):
                continue
            if all(stab(a) <= stab(b) for a, b in zip(s, s[1:])):
                out.add(s)
    return out


class TestSkeleton:
    def test_free_z2(self):
        G = cyclic(2)
        skel = E.skeleton(G, E.Family.trivial(G), 1)
        assert nondeg_count(skel, 0) == 2 and nondeg_count(skel, 1) == 2

    def test_full_z2(self):
        G = cyclic(2)
        skel = E.skeleton(G, E.Family.all(G), 1)
        assert nondeg_count(skel, 0) == 3 and nondeg_count(skel, 1) == 4

    def test_trivial_group(self):
        G = trivial_group()
        skel = E.skeleton(G, E.Family.all(G), 3)
        assert len(skel) == 1

    @pytest.mark.parametrize("G", [cyclic(2), cyclic(4), symmetric(3)], ids=lambda G: G.name)
    @pytest.mark.parametrize("fam", ["trivial", "all", "cyclic"])
    def test_matches_oracle(self, G, fam):
        F = {"trivial": E.Family.trivial, "all": E.Family.all}.get(fam) or (lambda G: E.Family.where(G, lambda H: H.is_cyclic))
        family = F(G)
        assert set(E.skeleton(G, family, 2)) == chains_oracle(G, family, 2)


class TestAction:
    def test_identity_and_swap(self):
        G = cyclic(2)
        assert E.act(G, 0, ((0,),)) == ((0,),)
        assert E.act(G, 1, ((0,),)) == ((1,),)

    def test_s3_orbits_divide(self):
        G = symmetric(3)
        skel = E.skeleton(G, E.Family.all(G), 2)
        seen = set()
        for s in skel:
            if s in seen:
                continue
            orbit = {E.act(G, g, s) for g in range(G.order)}
            assert orbit <= set(skel)
            assert G.order % len(orbit) == 0
            seen |= orbit


class TestFixedAndCone:
    def test_trivial_fixes_everything(self):
        G = symmetric(3)
        skel = E.skeleton(G, E.Family.all(G), 2)
        assert E.fixed_complex(G.trivial(), skel) == skel

    def test_z2_full(self):
        G = cyclic(2)
        skel = E.skeleton(G, E.Family.all(G), 2)
        fixed = E.fixed_complex(G.whole(), skel)
        assert fixed and all(s[0] == (0, 1) for s in fixed)

    def test_not_in_family(self):
        G = cyclic(2)
        skel = E.skeleton(G, E.Family.trivial(G), 2)
        assert E.fixed_complex(G.whole(), skel) == []

    def test_cone_vertex(self):
        G = cyclic(2)
        H = G.whole()
        assert E.cone_contract(H, ((0, 1),)) == ((0, 1), (0, 1))

    def test_cone_s3(self):
        G = symmetric(3)
        fam = E.Family.all(G)
        Z3 = [H for H in subgroups(G) if H.order == 3][0]
        assert E.cone_contract(Z3, (Z3.elems,), fam) == (Z3.elems, Z3.elems)
        s = (Z3.elems, G.whole().elems)
        out = E.cone_contract(Z3, s, fam)
        assert out == (Z3.elems,) + s and E.face(out, 0) == s

    @pytest.mark.parametrize("G", [cyclic(2), cyclic(3), cyclic(4), symmetric(3)], ids=lambda G: G.name)
    def test_cone_face0_everywhere(self, G):
        fam = E.Family.all(G)
        skel = E.skeleton(G, fam, 3 if G.order <= 4 else 2)
        for H in fam.members:
            for s in E.fixed_complex(H, skel):
                assert E.face(E.cone_contract(H, s, fam), 0) == s

    def test_cone_outside_family(self):
        G = cyclic(2)
        with pytest.raises(PreconditionError):
            E.cone_contract(G.whole(), ((0, 1),), E.Family.trivial(G))


class TestUnion:
    def test_z6(self):
        G = cyclic(6)
        sub = {H.order: H for H in subgroups(G)}
        f2 = E.Family.generated(G, [sub[1], sub[2]])
        f3 = E.Family.generated(G, [sub[1], sub[3]])
        rep = E.union_check(G, f2, f3, 2)
        assert rep.ok and rep.intersection_family == (sub[1].elems,)

    def test_same_family(self):
        G = symmetric(3)
        f = E.Family.all(G)
        assert E.union_check(G, f, f, 2).ok

    def test_s3_primary(self):
        G = symmetric(3)
        f2 = E.Family.where(G, lambda H: H.order in (1, 2))
        f3 = E.Family.where(G, lambda H: H.order in (1, 3))
        assert E.union_check(G, f2, f3, 2).ok

    @pytest.mark.parametrize("G", [cyclic(6), symmetric(3), cyclic(12)], ids=lambda G: G.name)
    def test_two_prime_intersection_is_cyclic(self, G):
        f2 = E.Family.where(G, lambda H: is_p_hyperelementary(H, 2) is not None)
        f3 = E.Family.where(G, lambda H: is_p_hyperelementary(H, 3) is not None)
        cyc = E.Family.where(G, lambda H: H.is_cyclic)
        assert [H.elems for H in f2.intersection(f3).members] == [H.elems for H in cyc.members]


class TestJoin:
    def test_two_points(self):
        pt = [((0,),)]
        out = E.join_skeleton(pt, pt, 1)
        assert sorted(out) == sorted([(((0,),), ()), ((), ((0,),)), (((0,),), ((0,),))])

    def test_empty_left(self):
        Y = [((0,),), ((1,),)]
        assert E.join_skeleton([], Y, 0) == [((), y) for y in Y]

    def test_two_discrete(self):
        X = [((0,),), ((1,),)]
        out = E.join_skeleton(X, X, 1)
        assert sum(1 for x, y in out if x and y) == 4

    def test_s3_cyclic_in_all(self):
        G = symmetric(3)
        rep = E.join_inclusion_check(G, E.Family.where(G, lambda H: H.is_cyclic), E.Family.all(G), 2)
        assert rep.ok
        top = G.whole().elems
        for s in E.skeleton(G, E.Family.all(G), 2):
            if s[-1] == top:
                assert E.join_inclusion(G, E.Family.where(G, lambda H: H.is_cyclic), s)[1]

    def test_equal_families(self):
        G = symmetric(3)
        f = E.Family.all(G)
        for s in E.skeleton(G, f, 2):
            assert E.join_inclusion(G, f, s) == (s, ())

    def test_z2_trivial_in_all(self):
        G = cyclic(2)
        assert E.join_inclusion_check(G, E.Family.trivial(G), E.Family.all(G), 2).ok


class TestClassifyingMap:
    def test_left_translation(self):
        G = symmetric(3)
        m = E.classifying_map(E.SimplicialGSet.left_translation(G), E.Family.trivial(G))
        assert all(m(y) == (y,) for y in range(G.order))

    def test_orbit(self):
        G = symmetric(3)
        Z3 = [H for H in subgroups(G) if H.order == 3][0]
        m = E.classifying_map(E.SimplicialGSet.cosets(Z3), E.Family.all(G))
        assert {len(m(v)) for v in range(2)} == {3}

    def test_two_orbits_and_choices(self):
        G = cyclic(2)
        X = E.SimplicialGSet.cosets(G.whole()).disjoint_union(E.SimplicialGSet.left_translation(G))
        fam = E.Family.all(G)
        a = E.classifying_map(X, fam)
        b = E.classifying_map(X, fam, reps=[0, 2])
        assert a.vertex_map[0] == b.vertex_map[0] == (0, 1)

    def test_stabilizer_outside_family(self):
        G = cyclic(2)
        with pytest.raises(PreconditionError):
            E.classifying_map(E.SimplicialGSet.cosets(G.trivial()).disjoint_union(E.SimplicialGSet.cosets(G.whole())), E.Family.trivial(G))


def test_export_line():
    G = cyclic(2)
    model = E.CosetModel(E.Family.all(G))
    assert model.export_line(((0,), (0, 1))) == "(1, [(0, 0), (1, 0)])"
