"""
Unittests for the "graded_kernel/testing.py" module
"""
import os

from graded_kernel.abelian import FpAbGroup
from graded_kernel.config import KernelConfig
from graded_kernel.grading import Degree
from graded_kernel.testing import MockKernelConfig, cyclic_module, free_module, polynomial_ring


class TestMockKernelConfig:

    def test_basically_works(self):

        with MockKernelConfig() as config:

            assert isinstance(config, KernelConfig)

            # The path itself should exist
            assert os.path.exists(config.folder_path)
            # The general config should be copied
            assert os.path.exists(config.general_config_path)

        # ...and be gone afterwards
        assert not os.path.exists(config.folder_path)


class TestBuilders:

    def test_polynomial_ring(self):
        ring = polynomial_ring({"x": 1, "y": 2})
        assert ring.variables == ("x", "y")
        assert ring.sig.generator_degrees == (Degree.of(1), Degree.of(2))

    def test_free_and_cyclic_modules(self):
        ring = polynomial_ring({"x": 1})

        assert free_module(ring, [0, 0]).piece(Degree.of(3)) == FpAbGroup.free(2)

        module = cyclic_module(ring, ["3*x"], shift=2)
        assert module.piece(Degree.of(2)) == FpAbGroup.free(1)
        assert module.piece(Degree.of(3)) == FpAbGroup.cyclic(3)

    def test_cyclic_module_over_multigraded_ring(self):
        ring = polynomial_ring({"x": [1, 0], "y": [0, 1]}, dimension=2)
        module = cyclic_module(ring, [], shift=1)
        assert module.generator_shifts == (Degree.of(1, 1),)
