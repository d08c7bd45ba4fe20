"""
Unittests for the "graded_kernel/abelian.py" module
"""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graded_kernel.abelian import AbMap, FpAbGroup, IntMatrix
from graded_kernel.abelian import cokernel, hom_group, homology, kernel, nullspace, smith_normal_form, tensor
from graded_kernel.errors import CompositionNotZero, DimensionMismatch


@st.composite
def integer_matrices(draw, max_size: int = 4, max_entry: int = 6):
    rows = draw(st.integers(min_value=1, max_value=max_size))
    cols = draw(st.integers(min_value=1, max_value=max_size))
    entries = st.integers(min_value=-max_entry, max_value=max_entry)
    values = draw(st.lists(st.lists(entries, min_size=cols, max_size=cols), min_size=rows, max_size=rows))
    return IntMatrix.from_rows(values, cols=cols)


class TestSmithNormalForm:

    def test_smith_normal_form_basically_works(self):
        matrix = IntMatrix.from_rows([[2, 4], [6, 8]])
        U, D, V = smith_normal_form(matrix)

        assert D.to_lists() == [[2, 0], [0, 4]]
        assert U @ matrix @ V == D

    def test_smith_normal_form_of_zero_matrix(self):
        matrix = IntMatrix.zeros(2, 3)
        U, D, V = smith_normal_form(matrix)

        assert D.is_zero()
        assert (D.rows, D.cols) == (2, 3)

    def test_smith_normal_form_of_empty_matrix(self):
        # A matrix without rows still has a shape
        matrix = IntMatrix.from_rows([], cols=2)
        U, D, V = smith_normal_form(matrix)

        assert (D.rows, D.cols) == (0, 2)
        assert (V.rows, V.cols) == (2, 2)

    def test_smith_normal_form_is_deterministic(self):
        matrix = IntMatrix.from_rows([[3, 5, 7], [2, 4, 6]])
        assert smith_normal_form(matrix) == smith_normal_form(matrix)

    @given(integer_matrices())
    @settings(max_examples=60, deadline=None)
    def test_smith_normal_form_witnesses_hold(self, matrix: IntMatrix):
        U, D, V = smith_normal_form(matrix)

        # the transformations are unimodular witnesses
        assert U @ matrix @ V == D
        assert abs(U.determinant()) == 1
        assert abs(V.determinant()) == 1

        # D is diagonal with a positive divisibility chain
        diagonal = []
        for i in range(D.rows):
            for j in range(D.cols):
                if i != j:
                    assert D[i, j] == 0
                elif D[i, j] != 0:
                    diagonal.append(D[i, j])
        assert all(d > 0 for d in diagonal)
        assert all(b % a == 0 for a, b in zip(diagonal, diagonal[1:]))

    @given(integer_matrices())
    @settings(max_examples=40, deadline=None)
    def test_nullspace_is_annihilated(self, matrix: IntMatrix):
        basis = nullspace(matrix)
        assert (matrix @ basis).is_zero()


class TestFpAbGroup:

    def test_canonical_strings(self):
        assert str(FpAbGroup.zero()) == "0"
        assert str(FpAbGroup.free(1)) == "Z"
        assert str(FpAbGroup.free(3)) == "Z^3"
        assert str(FpAbGroup.from_invariants(2, [2])) == "Z^2 + Z/2"
        assert str(cokernel(IntMatrix.from_rows([[2, 4], [6, 8]]))) == "Z/2 + Z/4"

    def test_equality_is_isomorphism(self):
        # Z/2 + Z/3 is cyclic of order 6
        assert FpAbGroup.from_invariants(0, [2, 3]) == FpAbGroup.cyclic(6)
        assert FpAbGroup.cyclic(1) == FpAbGroup.zero()
        assert FpAbGroup.cyclic(0) == FpAbGroup.free(1)
        assert FpAbGroup.cyclic(4) != FpAbGroup.from_invariants(0, [2, 2])

    def test_invariants_and_order(self):
        group = FpAbGroup.from_invariants(0, [4, 6])
        assert group.invariants() == (0, (2, 12))
        assert group.is_finite()
        assert group.order() == 24
        assert FpAbGroup.free(2).order() is None

    def test_relations_have_to_match_generators(self):
        with pytest.raises(DimensionMismatch):
            FpAbGroup(2, IntMatrix.from_rows([[1, 2, 3]]))

    def test_tensor_products(self):
        assert tensor(FpAbGroup.cyclic(2), FpAbGroup.cyclic(3)).is_zero()
        assert tensor(FpAbGroup.cyclic(4), FpAbGroup.cyclic(6)) == FpAbGroup.cyclic(2)
        assert tensor(FpAbGroup.free(1), FpAbGroup.cyclic(5)) == FpAbGroup.cyclic(5)
        assert tensor(FpAbGroup.free(2), FpAbGroup.free(3)) == FpAbGroup.free(6)


class TestMaps:

    def test_well_definedness(self):
        z2, z4 = FpAbGroup.cyclic(2), FpAbGroup.cyclic(4)
        # 1 -> 2 respects 2 * 1 = 0, 1 -> 1 does not
        assert AbMap(z2, z4, IntMatrix.from_rows([[2]])).is_well_defined()
        assert not AbMap(z2, z4, IntMatrix.from_rows([[1]])).is_well_defined()

    def test_kernel_and_cokernel(self):
        # the sum map Z^2 -> Z
        f = AbMap(FpAbGroup.free(2), FpAbGroup.free(1), IntMatrix.from_rows([[1, 1]]))
        assert kernel(f).group == FpAbGroup.free(1)
        assert f.cokernel().is_zero()
        assert f.is_surjective()
        assert not f.is_injective()

    def test_multiplication_maps(self):
        z = FpAbGroup.free(1)
        assert not AbMap.multiplication(z, 2).is_isomorphism()
        assert AbMap.multiplication(z, -1).is_isomorphism()
        assert AbMap.multiplication(FpAbGroup.cyclic(4), 4).is_zero()


class TestHomology:

    def test_homology_basically_works(self):
        z = FpAbGroup.free(1)
        d_in = AbMap.multiplication(z, 2)
        d_out = AbMap(z, FpAbGroup.zero(), IntMatrix.zeros(0, 1))
        assert homology(d_in, d_out) == FpAbGroup.cyclic(2)

    def test_homology_of_exact_sequence_vanishes(self):
        # Z -(1,1)-> Z^2 -(1,-1)-> Z is exact in the middle
        d_in = AbMap(FpAbGroup.free(1), FpAbGroup.free(2), IntMatrix.from_rows([[1], [1]]))
        d_out = AbMap(FpAbGroup.free(2), FpAbGroup.free(1), IntMatrix.from_rows([[1, -1]]))
        assert homology(d_in, d_out).is_zero()

    def test_non_zero_composition_raises(self):
        identity = AbMap.identity(FpAbGroup.free(1))
        with pytest.raises(CompositionNotZero):
            homology(identity, identity)


class TestHomGroup:

    @pytest.mark.parametrize("source, target, expected", [
        (FpAbGroup.cyclic(4), FpAbGroup.cyclic(6), FpAbGroup.cyclic(2)),
        (FpAbGroup.free(1), FpAbGroup.cyclic(3), FpAbGroup.cyclic(3)),
        (FpAbGroup.cyclic(2), FpAbGroup.free(1), FpAbGroup.zero()),
        (FpAbGroup.free(2), FpAbGroup.free(1), FpAbGroup.free(2)),
        (FpAbGroup.cyclic(3), FpAbGroup.cyclic(5), FpAbGroup.zero()),
    ])
    def test_hom_group_basically_works(self, source, target, expected):
        result = hom_group(source, target)
        assert result.group == expected

    def test_hom_group_generators_are_well_defined(self):
        result = hom_group(FpAbGroup.from_invariants(1, [4]), FpAbGroup.from_invariants(0, [2, 6]))
        assert len(result.generators) == result.group.generators
        for generator in result.generators:
            assert generator.is_well_defined()
