from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vabelian.catalog import builtin
from vabelian.core import finite_quotient
from vabelian.errors import BadPrimeError, PreconditionError
from vabelian.finite import primes_upto
from vabelian.induction import (
    KernelHom,
    case_tag,
    classify_subgroups,
    contraction_factor,
    irreducibility_consistency,
    line_generators,
    small_norm_kernel_hom,
)
from vabelian.oracles import case_tag_from_scratch, min_norm_kernel_hom


class TestCaseTag:
    def test_rules(self):
        assert case_tag(1, 1, 2) == "NotOnto"
        assert case_tag(2, 1, 2) == "Iso"
        assert case_tag(2, 3, 2) == "OntoNotInjective"
        assert case_tag(1, 1, 1) == "Iso"
        assert case_tag(1, 3, 1) == "NotOnto"


class TestClassify:
    def test_dinf(self):
        reps = classify_subgroups(builtin("Dinf"), 3, 1)
        got = {(rep.H.order, rep.tag) for rep in reps}
        assert got == {(1, "NotOnto"), (3, "NotOnto"), (2, "Iso"), (6, "OntoNotInjective")}
        (iso,) = [rep for rep in reps if rep.tag == "Iso"]
        assert iso.factorization.factors and iso.factorization.expansion == 3
        (oni,) = [rep for rep in reps if rep.tag == "OntoNotInjective"]
        assert oni.kernel_order == 3 and oni.kernel_cyclic.order == 3

    def test_trivial_q(self):
        reps = classify_subgroups(builtin("Z2"), 3, 1)
        assert {rep.tag for rep in reps if rep.H.order == 1} == {"Iso"}
        assert all(rep.tag == "NotOnto" for rep in reps if rep.H.order > 1)

    @pytest.mark.parametrize(
        "name, p, r",
        [("Dinf", 3, 1), ("Dinf", 7, 1), ("pm", 3, 1), ("pg", 3, 2), ("p2", 3, 1), ("p3", 5, 1), ("cm", 7, 1), ("twistedZ", 3, 2)],
    )
    def test_tags_from_scratch(self, name, p, r):
        P = builtin(name)
        fq = finite_quotient(P, p**r)
        for rep in classify_subgroups(P, p, r):
            assert case_tag_from_scratch(fq, rep.H) == rep.tag
            rep.cert.validate()
            if rep.factorization is not None:
                assert rep.factorization.injective == rep.factorization.torsion

    def test_bad_prime(self):
        with pytest.raises(BadPrimeError, match="3 mod 4"):
            classify_subgroups(builtin("p4"), 5, 1)

    @pytest.mark.parametrize("name, p, r", [("p4", 3, 1), ("Dinf", 3, 1), ("p2", 3, 1)])
    def test_consistency(self, name, p, r):
        assert irreducibility_consistency(builtin(name), p, r)


class TestKernelHom:
    @pytest.mark.parametrize("p", [2, 3, 101])
    def test_axis(self, p):
        h = small_norm_kernel_hom(p, (1, 0))
        assert (h.u, h.v) == (0, 1)

    def test_p5(self):
        h = small_norm_kernel_hom(5, (1, 2))
        assert (h.u, h.v) == (2, -1) and h.norm2 == 5

    def test_p13(self):
        h = small_norm_kernel_hom(13, (1, 5))
        assert h.norm2 < 26 and h(1, 5) % 13 == 0

    def test_trivial_generator(self):
        with pytest.raises(PreconditionError):
            small_norm_kernel_hom(7, (7, 14))

    @given(st.sampled_from(primes_upto(2000)), st.integers(0, 10**6), st.integers(0, 10**6))
    def test_property(self, p, x, y):
        if x % p == 0 and y % p == 0:
            return
        h = small_norm_kernel_hom(p, (x, y))
        assert h.norm2 < 2 * p
        assert h(x, y) % p == 0
        assert (h.u % p, h.v % p) != (0, 0)

    @pytest.mark.parametrize("p", primes_upto(97))
    def test_against_oracle(self, p):
        for a, b in line_generators(p):
            gen = (int(a), int(b))
            best = min_norm_kernel_hom(p, gen)
            h = small_norm_kernel_hom(p, gen)
            assert best is not None and best[0] <= h.norm2 < 2 * p

    def test_kernel_exact(self):
        # h vanishes on exactly one of the p + 1 lines
        p = 31
        gens = line_generators(p)
        H = np.array([[small_norm_kernel_hom(p, (int(a), int(b))).u, small_norm_kernel_hom(p, (int(a), int(b))).v] for a, b in gens])
        assert ((H @ gens.T) % p == 0).sum(axis=1).tolist() == [1] * (p + 1)


class TestContraction:
    def test_examples(self):
        assert contraction_factor(KernelHom(0, 1, 101, (1, 0))).ratio == Fraction(1, 10201)
        assert contraction_factor(KernelHom(2, -1, 5, (1, 2))).ratio == Fraction(1, 5)
        assert contraction_factor(KernelHom(3, 2, 13, (1, 5))).ratio == Fraction(1, 13)
