"""
Reading task files.

A task file is a YAML document that declares rings, modules and complexes by name and lists
the tasks to run on them. Loading happens in three steps: the YAML text is composed into a
node tree (which remembers line numbers), the plain data is validated by the pydantic models
below and finally the declarations are turned into kernel objects. Every failure is raised
as a ``ParseError`` or ``ValidationError`` that points at the offending line.
"""
import re
from dataclasses import dataclass, field
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple, Union

import pydantic
import yaml
from pydantic import BaseModel, ConfigDict, NonNegativeInt, PositiveInt

from graded_kernel.abelian import FpAbGroup, IntMatrix
from graded_kernel.derived import GradedComplex
from graded_kernel.errors import GradedKernelError, ParseError, ValidationError
from graded_kernel.graded_algebra import (
    GradedMap,
    GradedModule,
    GradedRing,
    direct_sum,
    quotient_by_ideal_power,
    shift,
)
from graded_kernel.grading import Degree, GradingSignature, Window

TASK_FILE_VERSION = 1

Scalar = Union[int, str]
DegreeValue = Union[Scalar, List[Scalar]]
Location = Tuple[Union[str, int], ...]


# == models ==

class Defaults(BaseModel):
    model_config = ConfigDict(extra="forbid")

    window: Optional[str] = None
    depth: Optional[NonNegativeInt] = None
    precision: Optional[NonNegativeInt] = None


class RingBlock(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dimension: PositiveInt = 1
    weight: Optional[List[Scalar]] = None
    variables: Dict[str, DegreeValue] = {}
    ideal: List[Scalar] = []


class IdealPower(BaseModel):
    model_config = ConfigDict(extra="forbid")

    generators: List[Scalar]
    power: NonNegativeInt = 1


class ModuleBlock(BaseModel):
    """
    One of three kinds of declarations: a presentation over ``ring``, a direct ``sum`` of other
    modules, or a module derived ``of`` another one by a ``shift`` and/or a ``quotient`` by an
    ideal power.
    """

    model_config = ConfigDict(extra="forbid")

    ring: Optional[str] = None
    shifts: Optional[List[DegreeValue]] = None
    relations: List[List[Scalar]] = []
    relation_degrees: Optional[List[DegreeValue]] = None

    sum: Optional[List[str]] = None

    of: Optional[str] = None
    shift: Optional[DegreeValue] = None
    quotient: Optional[IdealPower] = None

    @pydantic.model_validator(mode="after")
    def check(self):
        kinds = [self.shifts is not None, self.sum is not None, self.of is not None]
        assert sum(kinds) == 1, "a module needs exactly one of 'shifts', 'sum' or 'of'"
        if self.shifts is not None:
            assert self.ring is not None, "a module presentation needs a 'ring'"
        if self.of is not None:
            assert self.shift is not None or self.quotient is not None, \
                "a module declared 'of' another one needs a 'shift' or a 'quotient'"

        return self


class ComplexBlock(BaseModel):
    model_config = ConfigDict(extra="forbid")

    ring: str
    terms: Dict[int, str]
    differentials: Dict[int, List[List[Scalar]]] = {}


class TaskSpec(BaseModel):
    """A task keyword with its parameters; the parameters are validated per keyword."""

    model_config = ConfigDict(extra="allow")

    op: str
    name: Optional[str] = None

    @property
    def parameters(self) -> Dict[str, Any]:
        return dict(self.model_extra or {})

    @property
    def label(self) -> str:
        return self.name or self.op


class TaskFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    version: Literal[1] = TASK_FILE_VERSION
    defaults: Defaults = Defaults()
    rings: Dict[str, RingBlock] = {}
    modules: Dict[str, ModuleBlock] = {}
    complexes: Dict[str, ComplexBlock] = {}
    tasks: List[TaskSpec]


# == parsing helpers ==

def parse_degree(value: DegreeValue) -> Degree:
    try:
        return Degree.parse(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"'{value}' is not a degree") from exc


GROUP_TERM = re.compile(r"^Z(?:\^(\d+)|/(\d+))?$")


def parse_group(text: Union[str, int]) -> FpAbGroup:
    """
    Parses canonical group strings like ``"0"``, ``"Z"`` or ``"Z^2 + Z/2 + Z/4"``.

    Raises:
        ValueError: if a summand is not of the form ``Z``, ``Z^r`` or ``Z/d``.
    """
    text = str(text).strip()
    if text == "0":
        return FpAbGroup.zero()
    rank, torsion = 0, []
    for term in text.split("+"):
        match = GROUP_TERM.match(term.strip())
        if match is None:
            raise ValueError(f"'{term.strip()}' is not a group summand like Z, Z^2 or Z/4")
        power, order = match.groups()
        if order is not None:
            torsion.append(int(order))
        else:
            rank += int(power) if power is not None else 1
    return FpAbGroup.from_invariants(rank, torsion)


def parse_matrix(rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> IntMatrix:
    return IntMatrix.from_rows(rows, cols)


def _node_at(root: yaml.Node, loc: Location) -> yaml.Node:
    """The deepest node of the YAML tree along ``loc``."""
    node = root
    for key in loc:
        found = None
        if isinstance(node, yaml.MappingNode):
            found = next((value for k, value in node.value if str(k.value) == str(key)), None)
        elif isinstance(node, yaml.SequenceNode) and isinstance(key, int) and 0 <= key < len(node.value):
            found = node.value[key]
        if found is None:
            break
        node = found
    return node


# == the loaded document ==

@dataclass
class TaskDocument:
    """
    A validated task file together with the kernel objects it declares. Rings can be used
    wherever a module is expected, as the free module of rank one.
    """

    path: str
    spec: TaskFile
    root: yaml.Node
    rings: Dict[str, GradedRing] = field(default_factory=dict)
    modules: Dict[str, GradedModule] = field(default_factory=dict)
    complexes: Dict[str, GradedComplex] = field(default_factory=dict)

    def position(self, loc: Location) -> Tuple[int, int]:
        mark = _node_at(self.root, loc).start_mark
        return mark.line + 1, mark.column + 1

    def invalid(self, message: str, loc: Location) -> ValidationError:
        return ValidationError(message, *self.position(loc))

    # ~ lookups

    def ring(self, name: str) -> GradedRing:
        return self.rings[name]

    def module(self, name: str) -> GradedModule:
        if name in self.modules:
            return self.modules[name]
        return self.rings[name].as_module()

    def value(self, name: str) -> Union[GradedModule, GradedComplex]:
        if name in self.complexes:
            return self.complexes[name]
        return self.module(name)

    def has_module(self, name: str) -> bool:
        return name in self.modules or name in self.rings

    def has_value(self, name: str) -> bool:
        return self.has_module(name) or name in self.complexes

    # ~ construction

    def build(self, window: Window) -> "TaskDocument":
        for name, block in self.spec.rings.items():
            with self._anchored(("rings", name)):
                self.rings[name] = self._build_ring(block)

        for name in self.spec.modules:
            self._resolve_module(name, ())

        for name, block in self.spec.complexes.items():
            with self._anchored(("complexes", name)):
                self.complexes[name] = self._build_complex(name, block, window)
        return self

    def _anchored(self, loc: Location) -> "_Anchor":
        return _Anchor(self, loc)

    def _build_ring(self, block: RingBlock) -> GradedRing:
        degrees = [parse_degree(value) for value in block.variables.values()]
        sig = GradingSignature.create(block.dimension, degrees, block.weight)
        return GradedRing.create(sig, list(block.variables), [str(f) for f in block.ideal])

    def _resolve_module(self, name: str, stack: Tuple[str, ...]) -> GradedModule:
        if name in self.modules:
            return self.modules[name]
        loc = ("modules", name)
        if name in stack:
            raise self.invalid(f"module '{name}' is defined in terms of itself", loc)
        if name not in self.spec.modules:
            if name in self.rings:
                return self.rings[name].as_module()
            raise self.invalid(f"unknown module '{name}'", loc)

        block = self.spec.modules[name]
        stack = stack + (name,)
        with self._anchored(loc):
            if block.shifts is not None:
                if block.ring not in self.rings:
                    raise self.invalid(f"unknown ring '{block.ring}'", loc + ("ring",))
                module = GradedModule.create(
                    self.rings[block.ring],
                    [parse_degree(a) for a in block.shifts],
                    [[str(entry) for entry in column] for column in block.relations],
                    None if block.relation_degrees is None else [parse_degree(b) for b in block.relation_degrees],
                )
            elif block.sum is not None:
                module = direct_sum(*(self._resolve_module(part, stack) for part in block.sum))
            else:
                module = self._resolve_module(block.of, stack)
                if block.quotient is not None:
                    module = quotient_by_ideal_power(
                        module, [str(f) for f in block.quotient.generators], block.quotient.power,
                    )
                if block.shift is not None:
                    module = shift(module, parse_degree(block.shift))
        self.modules[name] = module
        return module

    def _build_complex(self, name: str, block: ComplexBlock, window: Window) -> GradedComplex:
        if block.ring not in self.rings:
            raise self.invalid(f"unknown ring '{block.ring}'", ("complexes", name, "ring"))
        ring = self.rings[block.ring]
        terms = {}
        for i, module_name in block.terms.items():
            if not self.has_module(module_name):
                raise self.invalid(f"unknown module '{module_name}'", ("complexes", name, "terms", i))
            terms[i] = self.module(module_name)

        skeleton = GradedComplex.create(terms, ring=ring)
        differentials = {
            i: GradedMap.create(skeleton.term(i), skeleton.term(i - 1), [[str(entry) for entry in row] for row in rows])
            for i, rows in block.differentials.items()
        }
        return GradedComplex.create(terms, differentials, ring=ring, window=window)


class _Anchor:
    """Translates kernel and value errors raised inside a block into line-anchored errors."""

    def __init__(self, document: TaskDocument, loc: Location):
        self.document = document
        self.loc = loc

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        if exc_value is None or isinstance(exc_value, ValidationError):
            return False
        line, column = self.document.position(self.loc)
        if isinstance(exc_value, ParseError):
            raise ParseError(exc_value.message, line, column) from exc_value
        if isinstance(exc_value, (GradedKernelError, ValueError, ZeroDivisionError)):
            message = f"{'.'.join(str(p) for p in self.loc)}: {type(exc_value).__name__}: {exc_value}"
            raise ValidationError(message, line, column) from exc_value
        return False


def read_task_file(path: str) -> Tuple[TaskFile, yaml.Node]:
    """
    Reads and validates the task file at ``path`` without building any kernel object.

    Raises:
        ParseError: if the file is not a YAML mapping.
        ValidationError: if the data does not match the task file models.
    """
    with open(path, mode="r") as file:
        text = file.read()

    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
        data = yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        line, column = (mark.line + 1, mark.column + 1) if mark is not None else (None, None)
        raise ParseError(f"invalid YAML: {exc.problem}", line, column) from exc
    except yaml.YAMLError as exc:
        raise ParseError(f"invalid YAML: {exc}") from exc

    if not isinstance(data, dict) or root is None:
        raise ParseError("a task file has to be a YAML mapping", 1, 1)

    try:
        spec = TaskFile.model_validate(data)
    except pydantic.ValidationError as exc:
        error = exc.errors()[0]
        loc = tuple(error["loc"])
        mark = _node_at(root, loc).start_mark
        where = ".".join(str(part) for part in loc)
        raise ValidationError(f"{where}: {error['msg']}", mark.line + 1, mark.column + 1) from exc

    return spec, root


def load_task_file(path: str, window: Window) -> TaskDocument:
    """
    Reads the task file at ``path`` and builds the rings, modules and complexes it declares.
    Complexes are checked for ``d ∘ d = 0`` on ``window``.

    Raises:
        ParseError: for malformed YAML and polynomials that do not parse.
        ValidationError: for invalid declarations, e.g. a grading that is not pointed.
    """
    spec, root = read_task_file(path)
    return TaskDocument(str(path), spec, root).build(window)
