"""
Unittests for the "graded_kernel/completion.py" module
"""
import pytest

from graded_kernel.abelian import AbMap, FpAbGroup, IntMatrix
from graded_kernel.completion import Completeness, LimitStatus, TelescopeVerdict
from graded_kernel.completion import analyze_tower, completed_tensor, derived_gradedwise_completion
from graded_kernel.completion import derived_nakayama_check, derived_tower, generator_independence_check
from graded_kernel.completion import gradedwise_completion, gradedwise_tower, is_derived_gradedwise_complete
from graded_kernel.completion import milnor_check, pro_isomorphism_check, telescope_vanishes, tower_limits
from graded_kernel.derived import GradedComplex, suspend
from graded_kernel.errors import DimensionMismatch, NotPerfect, NotStabilized, PreconditionNotCertified
from graded_kernel.graded_algebra import direct_sum
from graded_kernel.grading import Degree, Window
from graded_kernel.testing import cyclic_module, polynomial_ring


class TestAnalyzeTower:

    def test_stabilized_tower(self):
        z = FpAbGroup.free(1)
        identity = AbMap.identity(z)
        limit = analyze_tower([z, z, z], [identity, identity])

        assert limit.status == LimitStatus.STABILIZED
        assert limit.stage == 0
        assert limit.lim1_vanishes
        assert limit.describe() == "Stabilized(Z, stage 0)"

    def test_zero_tail_is_not_stabilized(self):
        zero = FpAbGroup.zero()
        identity = AbMap.identity(zero)
        limit = analyze_tower([zero, zero, zero, zero], [identity, identity, identity])

        assert limit.status == LimitStatus.SURJECTIVE_TAIL
        assert limit.stage is None

    def test_certified_tower(self):
        z = FpAbGroup.free(1)
        zero = FpAbGroup.zero()
        groups = [zero, zero, z, z]
        maps = [AbMap.identity(zero), AbMap.zero(z, zero), AbMap.identity(z)]

        limit = analyze_tower(groups, maps, settled_from=2)
        assert limit.describe() == "Stabilized(Z, stage 2)"

        # the transitions look settled but the certificate starts past the last stage
        limit = analyze_tower(groups, maps, settled_from=4)
        assert limit.status == LimitStatus.SURJECTIVE_TAIL

        zero_groups = [zero, zero, zero]
        limit = analyze_tower(zero_groups, [AbMap.identity(zero)] * 2, settled_from=1)
        assert limit.describe() == "Stabilized(0, stage 1)"

    def test_multiplication_tower_is_undetermined(self):
        z = FpAbGroup.free(1)
        twice = AbMap.multiplication(z, 2)
        limit = analyze_tower([z, z, z], [twice, twice])

        assert limit.status == LimitStatus.UNDETERMINED
        assert not limit.lim1_vanishes
        assert limit.describe() == "Undetermined"

    def test_surjective_tower(self):
        # 0 <- Z/2 <- Z/4 <- Z/8
        groups = [FpAbGroup.zero(), FpAbGroup.cyclic(2), FpAbGroup.cyclic(4), FpAbGroup.cyclic(8)]
        maps = [
            AbMap(groups[1], groups[0], IntMatrix.zeros(0, 1)),
            AbMap(groups[2], groups[1], IntMatrix.from_rows([[1]])),
            AbMap(groups[3], groups[2], IntMatrix.from_rows([[1]])),
        ]
        limit = analyze_tower(groups, maps)

        assert limit.status == LimitStatus.SURJECTIVE_TAIL
        assert limit.lim1_vanishes
        assert limit.describe() == "SurjectiveTail"


class TestGradedwiseCompletion:

    def test_gradedwise_completion_basically_works(self):
        ring = polynomial_ring({"x": 1})
        completion = gradedwise_completion(ring.as_module(), ["x"], 16, Window.parse("0..12"))
        report = completion.reports[0]

        # (Z[x]/x^m)_d stops changing once m > d
        for d in range(13):
            row = report.row(Degree.of(d))
            assert row.status == LimitStatus.STABILIZED
            assert row.describe() == f"Stabilized(Z, stage {d + 1})"
        assert all(completion.stabilized().values())

    def test_degrees_beyond_the_precision_are_not_stabilized(self):
        ring = polynomial_ring({"x": 1})
        completion = gradedwise_completion(ring.as_module(), ["x"], 4, Window.parse("0..6"))
        report = completion.reports[0]

        assert report.row(Degree.of(3)).describe() == "Stabilized(Z, stage 4)"
        # every stage up to the precision is zero in degrees 4..6, the limit is Z
        for d in range(4, 7):
            row = report.row(Degree.of(d))
            assert row.status != LimitStatus.STABILIZED
            assert row.describe() == "SurjectiveTail"
        assert not completion.stabilized()[Degree.of(4)]

    def test_plateaus_below_the_bound_are_not_stabilized(self):
        # (Z[x,y]/I^m)_3 for I = (x, y), deg y = 3: 0, 0, Z, Z, Z^2, Z^2, ...
        ring = polynomial_ring({"x": 1, "y": 3})

        shallow = gradedwise_completion(ring.as_module(), ["x", "y"], 3, Window.parse("3..3"))
        assert shallow.reports[0].row(Degree.of(3)).describe() == "SurjectiveTail"

        deep = gradedwise_completion(ring.as_module(), ["x", "y"], 5, Window.parse("3..3"))
        assert deep.reports[0].row(Degree.of(3)).describe() == "Stabilized(Z^2, stage 4)"

    def test_p_adic_integers_are_a_surjective_tail(self):
        ring = polynomial_ring({})
        completion = gradedwise_completion(ring.as_module(), ["3"], 5, Window.parse("0..0"))

        row = completion.reports[0].row(Degree.of(0))
        assert row.status == LimitStatus.SURJECTIVE_TAIL
        assert completion.value.piece(Degree.of(0)) == FpAbGroup.cyclic(243)

    def test_shallow_towers_raise(self):
        ring = polynomial_ring({"x": 1})
        tower = gradedwise_tower(ring.as_module(), ["x"], 1)
        with pytest.raises(DimensionMismatch):
            tower_limits(tower, Window.parse("0..2"))

    def test_generator_independence(self):
        ring = polynomial_ring({"x": 1, "y": 1})
        report = generator_independence_check(ring.as_module(), ["x", "y"], ["x + y", "y"], 3, Window.parse("0..3"))

        assert report.same_ideal
        assert report.passed

    def test_different_ideals_are_detected(self):
        ring = polynomial_ring({"x": 1})
        report = generator_independence_check(ring.as_module(), ["x"], ["x^2"], 3, Window.parse("0..3"))

        assert not report.same_ideal
        assert not report.passed


class TestDerivedCompletion:

    def test_derived_completion_basically_works(self):
        ring = polynomial_ring({"x": 1}, ["x^2"])
        completion = derived_gradedwise_completion(ring.as_module(), ["x"], 4, Window.parse("0..4"))

        assert set(completion.reports) == {0, 1}
        bottom = completion.reports[0]
        assert bottom.row(Degree.of(0)).describe() == "Stabilized(Z, stage 1)"
        assert bottom.row(Degree.of(1)).describe() == "Stabilized(Z, stage 2)"

    def test_completed_tensor_needs_free_terms(self):
        ring = polynomial_ring({"x": 1})
        perfect = GradedComplex.concentrated(cyclic_module(ring, ["x"]))
        with pytest.raises(NotPerfect):
            completed_tensor(ring.as_module(), perfect, ["x"], 3, Window.parse("0..3"))

    def test_milnor_sequence(self):
        ring = polynomial_ring({"x": 1})
        tower = derived_tower(ring.as_module(), ["x"], 6)
        report = milnor_check(tower, 0, Window.parse("0..3"))

        assert report.passed
        assert report.unstabilized == []

    def test_milnor_sequence_beyond_the_depth(self):
        ring = polynomial_ring({"x": 1})
        tower = derived_tower(ring.as_module(), ["x"], 6)

        report = milnor_check(tower, 0, Window.parse("0..6"))
        # degree 6 settles at stage 7
        assert report.unstabilized == [Degree.of(6)]
        assert report.rows[5].stabilized
        with pytest.raises(NotStabilized):
            milnor_check(tower, 0, Window.parse("0..6"), strict=True)


class TestTelescope:

    def test_positive_weight_telescopes_vanish(self):
        ring = polynomial_ring({"x": 1})
        result = telescope_vanishes(ring.as_module(), "x", Degree.of(3), 4)

        assert result.verdict == TelescopeVerdict.VANISHES
        assert result.reason == "weight"

    def test_pro_zero_telescope(self):
        ring = polynomial_ring({})
        result = telescope_vanishes(cyclic_module(ring, ["4"]), "2", Degree.of(0), 4)

        assert result.verdict == TelescopeVerdict.VANISHES
        assert result.reason == "pro-zero"
        assert result.stage == 2

    def test_unit_telescope_does_not_vanish(self):
        ring = polynomial_ring({})
        result = telescope_vanishes(ring.as_module(), "1", Degree.of(0), 4)

        assert result.verdict == TelescopeVerdict.NON_VANISHING
        assert result.witness == FpAbGroup.free(1)

    def test_multiplication_by_two_is_undetermined(self):
        ring = polynomial_ring({})
        result = telescope_vanishes(ring.as_module(), "2", Degree.of(0), 4)
        assert result.verdict == TelescopeVerdict.UNDETERMINED

    @pytest.mark.parametrize("variables, generators, expected", [
        ({"x": 1}, ["x"], Completeness.CERTIFIED_YES),
        ({}, ["1"], Completeness.CERTIFIED_NO),
        ({}, ["2"], Completeness.UNDETERMINED),
    ])
    def test_completeness(self, variables, generators, expected):
        ring = polynomial_ring(variables)
        report = is_derived_gradedwise_complete(ring.as_module(), generators, Window.parse("0..3"), 4)
        assert report.status == expected


class TestBoundedTorsion:

    def test_pro_isomorphism_check_basically_works(self):
        ring = polynomial_ring({"x": 1})
        module = direct_sum(ring.as_module(), cyclic_module(ring, ["x"]))
        report = pro_isomorphism_check(module, "x", 6, Window.parse("0..8"))

        assert report.bound == 1
        assert report.passed
        assert report.failures == []

    def test_torsion_free_module(self):
        ring = polynomial_ring({"x": 1})
        report = pro_isomorphism_check(ring.as_module(), "x", 4, Window.parse("0..4"))

        assert report.bound == 0
        assert report.passed

    def test_torsion_bound_at_the_depth_fails(self):
        ring = polynomial_ring({"x": 1})
        report = pro_isomorphism_check(cyclic_module(ring, ["x^3"]), "x", 3, Window.parse("0..2"))

        assert report.bound == 3
        assert not report.bounded
        assert report.transitions_vanish
        assert not report.passed

    def test_derived_and_naive_quotients_agree_on_pi_0(self):
        ring = polynomial_ring({"x": 1})
        module = direct_sum(ring.as_module(), cyclic_module(ring, ["x"]))
        derived = derived_tower(module, ["x"], 4)
        naive = gradedwise_tower(module, ["x"], 4)

        for n in range(5):
            for d in range(5):
                g = Degree.of(d)
                assert derived.stages[n].homology(0, g) == naive.stages[n].piece(g)


class TestNakayama:

    def test_hypothesis_fails_for_the_ring(self):
        ring = polynomial_ring({"x": 1})
        report = derived_nakayama_check(ring.as_module(), ["x"], 1, Window.parse("0..3"), 4)

        assert not report.hypothesis_holds
        assert report.passed

    def test_connective_suspension(self):
        ring = polynomial_ring({"x": 1})
        suspended = suspend(GradedComplex.concentrated(ring.as_module()), 1)
        report = derived_nakayama_check(suspended, ["x"], 1, Window.parse("0..3"), 4)

        assert report.hypothesis_holds
        assert report.passed

    def test_uncertified_completeness_raises(self):
        ring = polynomial_ring({})
        with pytest.raises(PreconditionNotCertified):
            derived_nakayama_check(ring.as_module(), ["2"], 1, Window.parse("0..0"), 4)
