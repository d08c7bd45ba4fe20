"""
Unittests for the "graded_kernel/derived.py" module
"""
import pytest

from graded_kernel.abelian import FpAbGroup
from graded_kernel.derived import ChainMap, GradedComplex, KoszulData
from graded_kernel.derived import derived_quotient, homotopy_groups, koszul_complex, suspend
from graded_kernel.derived import tensor_with_perfect, torsion_exponent, verify_quotient_ses
from graded_kernel.errors import CompositionNotZero, NotHomogeneous, NotPerfect, RingMismatch
from graded_kernel.graded_algebra import GradedMap, direct_sum
from graded_kernel.grading import Degree, Window
from graded_kernel.testing import cyclic_module, free_module, polynomial_ring


def zx():
    return polynomial_ring({"x": 1})


def zxy():
    return polynomial_ring({"x": 1, "y": 1})


# name -> (module or complex builder, element f)
QUOTIENT_SES_FIXTURES = {
    "Z[x] by x": (lambda: zx().as_module(), "x"),
    "Z[x] by x^2": (lambda: zx().as_module(), "x^2"),
    "Z[x] by 2": (lambda: zx().as_module(), "2"),
    "Z[x]/x^2 by x": (lambda: cyclic_module(zx(), ["x^2"]), "x"),
    "Z[x]/4 by 2": (lambda: cyclic_module(zx(), ["4"]), "2"),
    "Z[x]/2x by x": (lambda: cyclic_module(zx(), ["2*x"]), "x"),
    "Z[x]/x^3 shifted by x^2": (lambda: cyclic_module(zx(), ["x^3"], shift=1), "x^2"),
    "Z[x] + Z[x]/x by x": (lambda: direct_sum(zx().as_module(), cyclic_module(zx(), ["x"])), "x"),
    "suspended Z[x]/4 by 2": (lambda: suspend(GradedComplex.concentrated(cyclic_module(zx(), ["4"])), 1), "2"),
    "Z[x,y] by y": (lambda: zxy().as_module(), "y"),
    "Z[x,y]/xy by x": (lambda: cyclic_module(zxy(), ["x*y"]), "x"),
    "Z[x,y]/4 by 2": (lambda: cyclic_module(zxy(), ["4"]), "2"),
    "Z[x,y]^2 by x + y": (lambda: free_module(zxy(), [0, 1]), "x + y"),
}


class TestGradedComplex:

    def test_concentrated_complex_basically_works(self):
        ring = polynomial_ring({"x": 1}, ["x^2"])
        groups = homotopy_groups(ring.as_module(), 0, Window.parse("0..3"))

        assert groups == {
            Degree.of(0): FpAbGroup.free(1),
            Degree.of(1): FpAbGroup.free(1),
            Degree.of(2): FpAbGroup.zero(),
            Degree.of(3): FpAbGroup.zero(),
        }

    def test_non_zero_composition_raises(self):
        ring = polynomial_ring({"x": 1})
        terms = {0: free_module(ring, [0]), 1: free_module(ring, [1]), 2: free_module(ring, [2])}
        differentials = {
            1: GradedMap.create(terms[1], terms[0], [["x"]]),
            2: GradedMap.create(terms[2], terms[1], [["x"]]),
        }
        with pytest.raises(CompositionNotZero):
            GradedComplex.create(terms, differentials, window=Window.parse("0..3"))

    def test_terms_over_different_rings_raise(self):
        with pytest.raises(RingMismatch):
            GradedComplex.create({
                0: polynomial_ring({"x": 1}).as_module(),
                1: polynomial_ring({"y": 1}).as_module(),
            })

    def test_suspension(self):
        ring = polynomial_ring({"x": 1}, ["x^2"])
        complex_ = GradedComplex.concentrated(ring.as_module())
        suspended = suspend(complex_, 2)

        assert suspended.indices == [2]
        assert suspended.homology(2, Degree.of(1)) == FpAbGroup.free(1)
        assert suspended.homology(0, Degree.of(1)).is_zero()


class TestKoszulComplex:

    def test_koszul_complex_of_regular_sequence_is_acyclic(self):
        ring = polynomial_ring({"x1": 1, "x2": 1, "x3": 1})
        koszul = koszul_complex(KoszulData.create(ring, ["x1", "x2", "x3"]))
        window = Window.parse("0..5")

        assert koszul.indices == [0, 1, 2, 3]
        assert [koszul.term(i).ngens for i in koszul.indices] == [1, 3, 3, 1]
        for i in (1, 2, 3):
            assert all(group.is_zero() for group in homotopy_groups(koszul, i, window).values())

        bottom = homotopy_groups(koszul, 0, window)
        assert bottom[Degree.of(0)] == FpAbGroup.free(1)
        assert all(bottom[Degree.of(n)].is_zero() for n in range(1, 6))

    def test_koszul_differentials_square_to_zero(self):
        ring = polynomial_ring({"x": 1, "y": 2})
        koszul = koszul_complex(KoszulData.create(ring, ["x", "y"], exponent=2))
        koszul.check(Window.parse("0..8"))
        # e_{x,y} sits in degree 2 * (1 + 2)
        assert koszul.term(2).generator_shifts == (Degree.of(6),)

    def test_inhomogeneous_sequence_raises(self):
        ring = polynomial_ring({"x": 1, "y": 2})
        with pytest.raises(NotHomogeneous):
            KoszulData.create(ring, ["x + y"])

    def test_chain_maps(self):
        ring = polynomial_ring({"x": 1, "y": 1})
        koszul = koszul_complex(KoszulData.create(ring, ["x", "y"]))

        assert ChainMap.identity(koszul).is_chain_map(Window.parse("0..4"))
        assert ChainMap.multiplication(koszul, ring.parse("x")).is_chain_map(Window.parse("0..4"))


class TestDerivedQuotient:

    def test_derived_quotient_basically_works(self):
        ring = polynomial_ring({"x": 1}, ["x^2"])
        quotient = derived_quotient(ring.as_module(), KoszulData.create(ring, ["x"]))
        window = Window.parse("0..4")

        # the x-torsion of Z[x]/(x^2) sits in degree 1, so pi_1 lives in degree 2
        assert homotopy_groups(quotient, 1, window) == {
            Degree.of(1): FpAbGroup.zero(),
            Degree.of(2): FpAbGroup.free(1),
            Degree.of(3): FpAbGroup.zero(),
            Degree.of(4): FpAbGroup.zero(),
        }
        assert homotopy_groups(quotient, 0, window)[Degree.of(0)] == FpAbGroup.free(1)
        assert homotopy_groups(quotient, 0, window)[Degree.of(1)].is_zero()

    def test_derived_quotient_of_free_module(self):
        ring = polynomial_ring({"x": 1, "y": 1})
        quotient = derived_quotient(ring.as_module(), KoszulData.create(ring, ["x"]))

        groups = homotopy_groups(quotient, 0, Window.parse("0..3"))
        assert [groups[Degree.of(n)] for n in range(4)] == [FpAbGroup.free(1)] * 4
        assert all(group.is_zero() for group in homotopy_groups(quotient, 1, Window.parse("0..3")).values())

    def test_torsion_coefficients(self):
        ring = polynomial_ring({"x": 1})
        quotient = derived_quotient(ring.as_module(), KoszulData.create(ring, ["2*x"]))
        # Z[x] / 2x
        assert quotient.homology(0, Degree.of(1)) == FpAbGroup.cyclic(2)

    def test_non_free_perfect_complex_raises(self):
        ring = polynomial_ring({"x": 1})
        perfect = GradedComplex.concentrated(cyclic_module(ring, ["x"]))
        with pytest.raises(NotPerfect):
            tensor_with_perfect(ring.as_module(), perfect)

    @pytest.mark.parametrize("index", [0, 1])
    def test_quotient_exact_sequence(self, index: int):
        ring = polynomial_ring({"x": 1}, ["x^2"])
        report = verify_quotient_ses(ring.as_module(), "x", index, Window.parse("0..4"))

        assert report.rows
        assert report.passed

    def test_quotient_exact_sequence_with_torsion(self):
        ring = polynomial_ring({"x": 1}, ["2*x"])
        report = verify_quotient_ses(ring.as_module(), "x", 1, Window.parse("0..3"))
        assert report.passed

    @pytest.mark.parametrize("index", [0, 1, 2])
    @pytest.mark.parametrize("name", sorted(QUOTIENT_SES_FIXTURES))
    def test_quotient_exact_sequence_fixtures(self, name: str, index: int):
        build, f = QUOTIENT_SES_FIXTURES[name]
        report = verify_quotient_ses(build(), f, index, Window.parse("0..6"))

        assert report.index == index
        assert report.passed, [str(row.degree) for row in report.rows if not row.passed]

    def test_quotient_exact_sequence_of_a_suspension(self):
        # π_2(Σ Z[x]/4 /^L 2) is the 2-torsion of Z[x]/4
        ring = polynomial_ring({"x": 1})
        value = suspend(GradedComplex.concentrated(cyclic_module(ring, ["4"])), 1)
        report = verify_quotient_ses(value, "2", 2, Window.parse("0..6"))

        assert len(report.rows) == 7
        assert all(row.middle == FpAbGroup.cyclic(2) for row in report.rows)
        assert all(row.torsion == FpAbGroup.cyclic(2) for row in report.rows)
        assert report.passed


class TestTorsionExponent:

    def test_torsion_exponent_basically_works(self):
        ring = polynomial_ring({"x": 1}, ["x^3"])
        assert torsion_exponent(ring.as_module(), 0, [ring.parse("x")], Degree.of(0), 5) == 3

    def test_torsion_exponent_without_torsion(self):
        ring = polynomial_ring({"x": 1})
        assert torsion_exponent(ring.as_module(), 0, [ring.parse("x")], Degree.of(0), 5) is None
