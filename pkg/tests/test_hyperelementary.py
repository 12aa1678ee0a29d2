import pytest
from hypothesis import given
from hypothesis import strategies as st

from vabelian.catalog import builtin
from vabelian.checks import finite_corpus
from vabelian.core import conjugate, power
from vabelian.errors import PreconditionError
from vabelian.finite import alternating, cyclic, is_prime_power_of, primes_upto, subgroups, symmetric
from vabelian.hyperelementary import (
    ALL_PRIMES,
    hyperelementary_subgroups,
    infinite_hyperelementary_structure,
    is_lambda_hyperelementary,
    is_p_hyperelementary,
    metacyclic_exponent,
    metacyclic_valid,
)
from vabelian.oracles import metacyclic_exponent_naive


def brute_p_hyperelementary(H, p):
    # any normal cyclic subgroup (not just the ones the search visits) with p-group quotient
    G = H.ambient
    for x in H.elems:
        C = G.cyclic_subgroup(x)
        if C.is_normal_in(H) and is_prime_power_of(H.order // C.order, p):
            return True
    return False


class TestFinite:
    def test_s3(self):
        S3 = symmetric(3)
        cert = is_p_hyperelementary(S3, 2)
        assert cert is not None and cert.N.order == 3
        cert.validate()
        assert is_p_hyperelementary(S3, 3) is None

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_cyclic_any_prime(self, p):
        cert = is_p_hyperelementary(cyclic(6), p)
        assert cert is not None and cert.N.order == 6

    def test_lambda(self):
        S3 = symmetric(3)
        assert is_lambda_hyperelementary(S3, {2}) is None
        assert is_lambda_hyperelementary(S3, {3}).p == 2
        assert is_lambda_hyperelementary(cyclic(5), ALL_PRIMES).p is None
        assert is_lambda_hyperelementary(S3, ALL_PRIMES) is None

    def test_s3_all_classes(self):
        for p in (None, 2):
            assert sorted(H.order for H, _ in hyperelementary_subgroups(symmetric(3), p)) == [1, 2, 3, 6]

    def test_a4_proper_classes(self):
        A4 = alternating(4)
        classes = subgroups(A4, up_to_conjugacy=True)
        hyp = [H for H, _ in hyperelementary_subgroups(A4)]
        assert len(hyp) == len(classes) - 1
        assert all(H.order < 12 for H in hyp)

    def test_z2(self):
        assert [H.order for H, _ in hyperelementary_subgroups(cyclic(2))] == [1, 2]

    @pytest.mark.parametrize("G", finite_corpus(), ids=lambda G: G.name)
    def test_against_brute_force(self, G):
        for H in subgroups(G, up_to_conjugacy=True):
            for p in primes_upto(7):
                cert = is_p_hyperelementary(H, p)
                assert (cert is not None) == brute_p_hyperelementary(H, p)
                if cert:
                    cert.validate()

    @pytest.mark.parametrize("G", finite_corpus(), ids=lambda G: G.name)
    def test_two_primes_force_cyclic(self, G):
        for H in subgroups(G, up_to_conjugacy=True):
            ps = [p for p in primes_upto(G.order) if H.order % p == 0 and is_p_hyperelementary(H, p)]
            if len(ps) >= 2:
                assert H.is_cyclic


class TestInfinite:
    def test_dinf(self):
        s = infinite_hyperelementary_structure(builtin("Dinf"))
        assert s.kind == "dihedral" and s.p == 2 and s.index == 2

    def test_z_x_z4(self):
        s = infinite_hyperelementary_structure(builtin("ZxZ4"))
        assert s.kind == "semidirect" and s.p == 2
        assert s.torsion_group.order == 4 and s.automorphism_order == 1

    def test_z_x_z6_none(self):
        s = infinite_hyperelementary_structure(builtin("ZxZ6"))
        assert not s and s.obstruction

    def test_z_x_z6_oracle(self):
        # a normal infinite cyclic <(a, q)> with q of order k meets A in <k a>,
        # so its index is 6 |a|: never a power of 2 or 3
        for a in range(1, 50):
            assert not any(is_prime_power_of(6 * a, p) for p in (2, 3))

    @pytest.mark.parametrize("name", ["Z", "twistedZ", "ZxZ2", "ZxZ3", "ZxZ4", "Dinf", "Z_Z4sign"])
    def test_generator_is_normal(self, name):
        P = builtin(name)
        s = infinite_hyperelementary_structure(P)
        assert s
        g = s.generator
        for h in P.generators():
            c = conjugate(P, h, g)
            assert c in (g, power(P, g, -1))

    def test_rank_check(self):
        with pytest.raises(PreconditionError):
            infinite_hyperelementary_structure(builtin("p4"))


class TestMetacyclic:
    @pytest.mark.parametrize("p, s, w, n, e", [(3, 1, 2, 1, 9), (2, 2, 2, 1, 4), (2, 3, 3, 1, 8)])
    def test_examples(self, p, s, w, n, e):
        assert metacyclic_exponent(p, s, w, n) == e

    @given(st.sampled_from([2, 3]), st.integers(1, 3), st.integers(0, 2), st.integers(0, 8))
    def test_matches_naive(self, p, s, dw, n):
        w = s + dw
        n %= p ** (s - 1)
        if not metacyclic_valid(p, s, w, n) or p ** (s + w) > 2000:
            return
        assert metacyclic_exponent(p, s, w, n) == metacyclic_exponent_naive(p, s, w, n) == p**w

    def test_invalid_action(self):
        with pytest.raises(PreconditionError):
            metacyclic_exponent(2, 4, 1, 1)  # 3 has order 4 mod 16
