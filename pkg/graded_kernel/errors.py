"""
Exception hierarchy of the graded_kernel package.

Every error that a kernel operation can raise derives from ``GradedKernelError`` so that the
command line interface can translate all of them into a failed task with a single ``except``
clause. The task-file errors at the bottom of this module are only raised by the CLI layer.
"""
from typing import Optional


class GradedKernelError(Exception):
    """Base class of all errors raised by the graded kernel."""


class DimensionMismatch(GradedKernelError):
    """Matrix or degree shapes do not fit together."""


class NotWellDefined(GradedKernelError):
    """A map does not carry the relations of its source into the relations of its target."""


class CompositionNotZero(GradedKernelError):
    """Two composable maps were expected to compose to zero but do not."""


class NotPointed(GradedKernelError):
    """Some generator degree has non-positive weight under the chosen weight functional."""


class NotHomogeneous(GradedKernelError):
    """A polynomial or matrix entry is not homogeneous of the required degree."""


class RingMismatch(GradedKernelError):
    """Two objects that have to live over the same graded ring do not."""


class UnboundedDecomposition(GradedKernelError):
    """The set of decompositions g = s + t cannot be certified finite."""


class NotPerfect(GradedKernelError):
    """A complex that has to consist of graded free modules has a term with relations."""


class NotStabilized(GradedKernelError):
    """A tower did not stabilize within the available depth."""


class PreconditionNotCertified(GradedKernelError):
    """A check was requested whose precondition could not be certified."""


class MixedGeneratorImage(GradedKernelError):
    """A coaction sends a generator to an element supported in more than one degree."""


class AxiomViolation(GradedKernelError):
    """A coaction fails the coassociativity or the counit diagram."""

    def __init__(self, message: str, diagram: str):
        super().__init__(message)
        self.diagram = diagram


# == task file errors ==

class TaskFileError(Exception):
    """
    Base class of errors raised while reading a task file. When the offending YAML node is
    known, ``line`` and ``column`` are 1-based positions inside the task file.
    """

    exit_code: int = 2

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(self.diagnostic())

    def diagnostic(self) -> str:
        if self.line is None:
            return self.message
        return f"line {self.line}, column {self.column}: {self.message}"


class ParseError(TaskFileError):
    """The task file is not a well-formed YAML document or a polynomial does not parse."""


class ValidationError(TaskFileError):
    """The task file parses but does not describe valid domain objects."""


class TaskError(Exception):
    """A single task raised a kernel error while it was executed."""

    exit_code: int = 1

    def __init__(self, task: str, cause: Exception):
        self.task = task
        self.cause = cause
        super().__init__(f"task '{task}' failed: {type(cause).__name__}: {cause}")
