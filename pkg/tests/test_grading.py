"""
Unittests for the "graded_kernel/grading.py" module
"""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graded_kernel.errors import DimensionMismatch, NotPointed
from graded_kernel.grading import Degree, GradingSignature, Window
from graded_kernel.grading import degrees_in_window, monomials_of_degree, validate_signature


class TestDegree:

    def test_arithmetic_basically_works(self):
        g = Degree.of(1, 2)
        h = Degree.of(0, "1/2")

        assert g + h == Degree.of(1, "5/2")
        assert g - g == Degree.zero(2)
        assert -h == Degree.of(0, "-1/2")
        assert 3 * Degree.of(1) == Degree.of(3)

    def test_string_forms(self):
        assert str(Degree.of(2)) == "2"
        assert str(Degree.of(1, 2)) == "(1, 2)"
        assert str(Degree.of("1/2")) == "1/2"

    def test_parse(self):
        assert Degree.parse(3) == Degree.of(3)
        assert Degree.parse([1, "2/3"]) == Degree((Fraction(1), Fraction(2, 3)))

    def test_mismatching_dimensions_raise(self):
        with pytest.raises(DimensionMismatch):
            Degree.of(1) + Degree.of(1, 1)


class TestValidateSignature:

    def test_pointed_signature_passes(self):
        validate_signature(GradingSignature.create(1, [1, 2]))
        validate_signature(GradingSignature.create(2, [(1, 0), (0, 1)]))
        # a weight functional can certify gradings with negative coordinates
        validate_signature(GradingSignature.create(2, [(2, -1)], weight=[1, 1]))

    def test_degree_zero_variable_is_not_pointed(self):
        with pytest.raises(NotPointed):
            validate_signature(GradingSignature.create(1, [1, 0]))

    def test_negative_weight_is_not_pointed(self):
        with pytest.raises(NotPointed):
            validate_signature(GradingSignature.create(1, [-1]))

    def test_weight_can_fail_to_certify(self):
        # (1, -1) has weight 0 under the default weight (1, 1)
        with pytest.raises(NotPointed):
            validate_signature(GradingSignature.create(2, [(1, -1)]))
        validate_signature(GradingSignature.create(2, [(1, -1)], weight=[2, 1]))

    def test_dimension_errors(self):
        with pytest.raises(DimensionMismatch):
            validate_signature(GradingSignature.create(0, []))
        with pytest.raises(DimensionMismatch):
            validate_signature(GradingSignature.create(2, [1]))


class TestMonomialsOfDegree:

    def test_graded_lex_order(self):
        sig = GradingSignature.create(1, [1, 1])
        assert monomials_of_degree(sig, Degree.of(2)) == ((2, 0), (1, 1), (0, 2))

    def test_mixed_degrees(self):
        sig = GradingSignature.create(1, [1, 2])
        # x^4, x^2 y, y^2
        assert set(monomials_of_degree(sig, Degree.of(4))) == {(4, 0), (2, 1), (0, 2)}
        assert monomials_of_degree(sig, Degree.of(-1)) == ()

    def test_rational_degrees(self):
        sig = GradingSignature.create(1, ["1/2"])
        assert monomials_of_degree(sig, Degree.of(1)) == ((2,),)
        assert monomials_of_degree(sig, Degree.of("1/3")) == ()

    def test_multigrading(self):
        sig = GradingSignature.create(2, [(1, 0), (0, 1), (1, 1)])
        assert set(monomials_of_degree(sig, Degree.of(1, 1))) == {(1, 1, 0), (0, 0, 1)}

    def test_no_variables(self):
        sig = GradingSignature.create(1, [])
        assert monomials_of_degree(sig, Degree.of(0)) == ((),)
        assert monomials_of_degree(sig, Degree.of(1)) == ()

    @given(st.integers(min_value=0, max_value=4), st.integers(min_value=0, max_value=4))
    @settings(max_examples=30, deadline=None)
    def test_products_land_in_the_sum_degree(self, g: int, h: int):
        sig = GradingSignature.create(1, [1, 2])
        target = set(monomials_of_degree(sig, Degree.of(g + h)))
        for a in monomials_of_degree(sig, Degree.of(g)):
            for b in monomials_of_degree(sig, Degree.of(h)):
                assert tuple(x + y for x, y in zip(a, b)) in target


class TestWindow:

    def test_parse_basically_works(self):
        window = Window.parse("0..8")
        assert window.lo == 0
        assert window.hi == 8
        assert str(window) == "0..8"
        assert Window.parse("-1/2..3").lo == Fraction(-1, 2)

    @pytest.mark.parametrize("text", ["3..1", "abc", "a..b", "1..2..3"])
    def test_parse_rejects_invalid_windows(self, text: str):
        with pytest.raises(ValueError):
            Window.parse(text)

    def test_degrees_in_window(self):
        sig = GradingSignature.create(1, [1])
        assert degrees_in_window(sig, Window.parse("0..3")) == [Degree.of(n) for n in range(4)]
        # generators in degree 2 only reach the upper part of the window
        shifted = degrees_in_window(sig, Window.parse("0..3"), [Degree.of(2)])
        assert shifted == [Degree.of(2), Degree.of(3)]

    def test_degrees_in_window_of_multigrading(self):
        sig = GradingSignature.create(2, [(1, 0), (0, 1)])
        degrees = degrees_in_window(sig, Window.parse("1..1"))
        assert set(degrees) == {Degree.of(1, 0), Degree.of(0, 1)}
