import os
import tempfile
from typing import Mapping, Optional, Sequence, Union

from graded_kernel.config import KernelConfig
from graded_kernel.graded_algebra import GradedModule, GradedRing
from graded_kernel.grading import GradingSignature, Rational
from graded_kernel.polynomials import Polynomial

DegreeLike = Union[Rational, Sequence[Rational]]


class MockKernelConfig:
    """
    This is a context manager that creates a temporary directory and sets up a new
    KernelConfig object in it. The temporary directory will be deleted when the
    context manager is exited. This is useful for testing purposes, as it allows
    to create a clean environment for each test without affecting the user's
    configuration files.
    """

    def __init__(self):
        self.temp_dir = tempfile.TemporaryDirectory()

        # This will hold the absolute string path to the temporary directory
        self.temp_path: Optional[str] = None
        # This will hold the absolute string path to the "graded_kernel" sub folder in
        # the temporary directory
        self.config_path: Optional[str] = None
        # After initialization, this will hold the KernelConfig object that will
        # be created in the temporary directory and which manages the configuration
        self.config: Optional[KernelConfig] = None

    def __enter__(self) -> KernelConfig:
        self.temp_path = self.temp_dir.__enter__()
        self.config_path = os.path.join(self.temp_path, "graded_kernel")
        self.config = KernelConfig(folder_path=self.config_path)
        self.config.setup_if_necessary()

        return self.config

    def __exit__(self, exc_type, exc_value, traceback):
        self.temp_dir.__exit__(exc_type, exc_value, traceback)


# == fixture builders ==

def polynomial_ring(variables: Mapping[str, DegreeLike],
                    ideal: Sequence[Union[str, Polynomial]] = (),
                    dimension: int = 1,
                    weight: Optional[Sequence[Rational]] = None,
                    ) -> GradedRing:
    """
    ``Z[variables] / ideal`` with the given variable degrees.

    Example:
        >>> ring = polynomial_ring({"x": 1, "y": 2})
        >>> ring.variables
        ('x', 'y')
    """
    sig = GradingSignature.create(dimension, list(variables.values()), weight)
    return GradedRing.create(sig, list(variables), ideal)


def free_module(ring: GradedRing, shifts: Sequence[DegreeLike]) -> GradedModule:
    return GradedModule.create(ring, shifts)


def cyclic_module(ring: GradedRing,
                  relations: Sequence[Union[str, Polynomial]],
                  shift: DegreeLike = 0,
                  ) -> GradedModule:
    """The cyclic module ``R / (relations)`` with its generator in degree ``shift``."""
    if ring.sig.dimension > 1 and not isinstance(shift, (list, tuple)):
        shift = [shift] * ring.sig.dimension
    return GradedModule.create(ring, [shift], [[f] for f in relations])
