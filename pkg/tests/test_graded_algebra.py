"""
Unittests for the "graded_kernel/graded_algebra.py" module
"""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graded_kernel.abelian import FpAbGroup
from graded_kernel.errors import NotHomogeneous, NotWellDefined, RingMismatch, UnboundedDecomposition
from graded_kernel.graded_algebra import DayTensor, GradedMap, GradedModule, UngradedMap
from graded_kernel.graded_algebra import day_tensor_piece, decompose, direct_sum, forgetful_tensor_check
from graded_kernel.graded_algebra import graded_hom_fiber_check, hilbert_function, quotient_by_ideal_power
from graded_kernel.graded_algebra import retract_components, retract_map, ring_piece, shift, support
from graded_kernel.grading import Degree, Window
from graded_kernel.testing import cyclic_module, free_module, polynomial_ring


class TestGradedRing:

    def test_ring_pieces_basically_work(self):
        ring = polynomial_ring({"x": 1, "y": 1})
        assert ring_piece(ring, Degree.of(0)) == FpAbGroup.free(1)
        assert ring_piece(ring, Degree.of(2)) == FpAbGroup.free(3)
        assert ring_piece(ring, Degree.of(-1)).is_zero()

    def test_quotient_ring_pieces(self):
        ring = polynomial_ring({"x": 1, "y": 1}, ["x^2 - x*y"])
        assert ring_piece(ring, Degree.of(2)) == FpAbGroup.free(2)

        truncated = polynomial_ring({"x": 1}, ["x^2"])
        pieces = [ring_piece(truncated, Degree.of(n)) for n in range(3)]
        assert pieces == [FpAbGroup.free(1), FpAbGroup.free(1), FpAbGroup.zero()]

    def test_torsion_pieces(self):
        ring = polynomial_ring({"x": 1}, ["2*x"])
        assert ring_piece(ring, Degree.of(1)) == FpAbGroup.cyclic(2)
        assert ring_piece(ring, Degree.of(0)) == FpAbGroup.free(1)

    def test_inhomogeneous_ideal_raises(self):
        with pytest.raises(NotHomogeneous):
            polynomial_ring({"x": 1, "y": 2}, ["x + y"])

    def test_degree_of_elements(self):
        ring = polynomial_ring({"x": 1, "y": 2})
        assert ring.degree(ring.parse("x^2 + y")) == Degree.of(2)
        with pytest.raises(NotHomogeneous):
            ring.degree(ring.zero())

    def test_decompose(self):
        ring = polynomial_ring({"x": 1, "y": 2})
        components = decompose(ring, "3 + x + x^2 + y")

        assert list(components) == [Degree.of(0), Degree.of(1), Degree.of(2)]
        assert components[Degree.of(2)] == ring.parse("x^2 + y")
        assert decompose(ring, "0") == {}

    def test_support_and_hilbert_function(self):
        ring = polynomial_ring({"x": 1}, ["x^2"])
        assert support(ring, Window.parse("0..4")) == [Degree.of(0), Degree.of(1)]

        hilbert = hilbert_function(polynomial_ring({"x": 1, "y": 1}), Window.parse("0..2"))
        assert hilbert == {Degree.of(0): (1, ()), Degree.of(1): (2, ()), Degree.of(2): (3, ())}

    def test_multigraded_pieces(self):
        ring = polynomial_ring({"x": [1, 0], "y": [0, 1]}, dimension=2)
        assert ring_piece(ring, Degree.of(1, 1)) == FpAbGroup.free(1)
        assert ring_piece(ring, Degree.of(2, 0)) == FpAbGroup.free(1)
        assert ring_piece(ring, Degree.of(1, -1)).is_zero()


class TestGradedModule:

    def test_module_pieces_basically_work(self):
        ring = polynomial_ring({"x": 1})
        module = cyclic_module(ring, ["x^2"], shift=1)

        assert module.piece(Degree.of(0)).is_zero()
        assert module.piece(Degree.of(1)) == FpAbGroup.free(1)
        assert module.piece(Degree.of(2)) == FpAbGroup.free(1)
        assert module.piece(Degree.of(3)).is_zero()

    def test_relations_have_to_be_homogeneous(self):
        ring = polynomial_ring({"x": 1})
        with pytest.raises(NotHomogeneous):
            GradedModule.create(ring, [0, 1], [["x", "x"]])

    def test_shift(self):
        ring = polynomial_ring({"x": 1})
        module = cyclic_module(ring, ["x^2"])
        shifted = shift(module, 1)

        # M(1)_h = M_{1+h}
        for h in range(-2, 3):
            assert shifted.piece(Degree.of(h)) == module.piece(Degree.of(h + 1))

    def test_direct_sum(self):
        ring = polynomial_ring({"x": 1})
        total = direct_sum(free_module(ring, [0]), cyclic_module(ring, ["x"], shift=1))
        assert total.piece(Degree.of(1)) == FpAbGroup.free(2)
        assert total.piece(Degree.of(2)) == FpAbGroup.free(1)

    def test_direct_sum_over_different_rings_raises(self):
        with pytest.raises(RingMismatch):
            direct_sum(
                free_module(polynomial_ring({"x": 1}), [0]),
                free_module(polynomial_ring({"y": 1}), [0]),
            )

    def test_quotient_by_ideal_power(self):
        ring = polynomial_ring({"x": 1})
        module = quotient_by_ideal_power(ring.as_module(), ["x"], 3)
        assert support(module, Window.parse("0..6")) == [Degree.of(n) for n in range(3)]
        assert quotient_by_ideal_power(ring.as_module(), ["x"], 0).piece(Degree.of(0)).is_zero()


class TestGradedMap:

    def test_multiplication_map_basically_works(self):
        ring = polynomial_ring({"x": 1})
        module = ring.as_module()
        times_x = GradedMap.multiplication(module, "x")

        assert times_x.degree_offset == Degree.of(1)
        assert times_x.realize(Degree.of(2)).is_injective()
        assert not times_x.realize(Degree.of(2)).is_surjective()

    def test_entries_have_to_match_the_shifts(self):
        ring = polynomial_ring({"x": 1})
        with pytest.raises(NotHomogeneous):
            GradedMap.create(free_module(ring, [0]), free_module(ring, [0]), [["x"]])

    def test_composition(self):
        ring = polynomial_ring({"x": 1})
        module = ring.as_module()
        times_x = GradedMap.multiplication(module, "x")
        times_x2 = GradedMap.multiplication(module, "x^2")

        assert times_x.compose(times_x).equals_on(times_x2, Window.parse("0..4"))

    def test_well_definedness(self):
        ring = polynomial_ring({"x": 1})
        quotient = cyclic_module(ring, ["x"])
        free = ring.as_module()

        # Z[x] -> Z[x]/(x) is fine, the other direction is not
        projection = GradedMap.create(free, quotient, [["1"]])
        assert projection.is_well_defined(Window.parse("0..3"))
        section = GradedMap.create(quotient, free, [["1"]])
        assert not section.is_well_defined(Window.parse("0..3"))
        with pytest.raises(NotWellDefined):
            section.check_well_defined(Window.parse("0..3"))


class TestDayTensor:

    def test_day_tensor_basically_works(self):
        left = polynomial_ring({"x": 1}).as_module()
        right = polynomial_ring({"y": 1}).as_module()
        # s + t = 2 with s, t >= 0
        assert day_tensor_piece(left, right, Degree.of(2)) == FpAbGroup.free(3)

    def test_torsion_factors(self):
        ring = polynomial_ring({})
        left = GradedModule.create(ring, [1], [["2"]])
        right = GradedModule.create(ring, [1], [["3"]])
        assert day_tensor_piece(left, right, Degree.of(2)).is_zero()

    def test_incompatible_signatures_raise(self):
        left = polynomial_ring({"x": 2}, weight=[2]).as_module()
        right = polynomial_ring({"y": 1}).as_module()
        with pytest.raises(UnboundedDecomposition):
            DayTensor(left, right)

    def test_forgetful_tensor_check(self):
        left = polynomial_ring({"x": 1}).as_module()
        right = polynomial_ring({"y": 1}).as_module()
        report = forgetful_tensor_check(left, right, 3)

        assert report.passed
        assert report.day_total == FpAbGroup.free(16)


class TestRetraction:

    def test_graded_maps_retract_to_themselves(self):
        ring = polynomial_ring({"x": 1})
        module = ring.as_module()
        identity = GradedMap.identity(module)

        phi = UngradedMap.include(identity, 4)
        assert retract_map(phi).equals_on(identity, Window.parse("0..4"))

    @given(st.lists(st.integers(min_value=-3, max_value=3), min_size=12, max_size=12))
    @settings(max_examples=25, deadline=None)
    def test_retraction_matches_components(self, coefficients):
        ring = polynomial_ring({"x": 1})
        source = free_module(ring, [0, 1])
        target = free_module(ring, [0, 2])

        # arbitrary inhomogeneous entries of degree at most 2
        c = iter(coefficients)
        entries = [
            [ring.parse(f"{next(c)} + {next(c)}*x + {next(c)}*x^2") for _ in range(2)]
            for _ in range(2)
        ]
        phi = UngradedMap.from_matrix(source, target, entries, 4)

        components = retract_components(phi)
        retracted = retract_map(phi)
        assert set(components) == {Degree.of(n) for n in range(5)}
        for g, component in components.items():
            assert retracted.realize(g).equals(component)


class TestHomFiber:

    def test_hom_fiber_basically_works(self):
        ring = polynomial_ring({"x": 1})
        report = graded_hom_fiber_check(ring.as_module(), ring.as_module(), 3)

        assert report.passed
        assert report.graded == FpAbGroup.free(1)
        assert report.degreewise == FpAbGroup.free(1)

    def test_torsion_source(self):
        ring = polynomial_ring({"x": 1})
        report = graded_hom_fiber_check(cyclic_module(ring, ["x^2"]), ring.as_module(), 3)

        assert report.passed
        assert report.graded.is_zero()
        assert report.degreewise.is_zero()

    def test_generators_beyond_the_bound_fail(self):
        ring = polynomial_ring({"x": 1})
        report = graded_hom_fiber_check(free_module(ring, [2]), ring.as_module(), 1)

        assert not report.passed
        assert report.graded == FpAbGroup.free(1)
        assert report.degreewise.is_zero()
