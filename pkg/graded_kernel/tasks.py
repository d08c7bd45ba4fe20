"""
The task vocabulary of task files.

Every keyword that may appear as the ``op`` of a task is registered here with the ``task``
decorator, together with the pydantic model that validates its parameters and the kernel
operations it reaches. Running a task file happens in two phases: ``plan_tasks`` validates
all parameters and name references up front (so that a typo fails with a line-anchored
``ValidationError`` before anything is computed) and ``run_document`` then executes the
tasks in order.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple, Type, Union

import pydantic
from more_itertools import first_true
from pydantic import BaseModel, ConfigDict, NonNegativeInt, PositiveInt

from graded_kernel.abelian import (
    AbMap,
    FpAbGroup,
    cokernel,
    direct_sum as direct_sum_groups,
    hom_group,
    homology,
    smith_normal_form,
)
from graded_kernel.comodule import (
    CoactionData,
    GroupRingElement,
    antipode,
    coaction_from_grading,
    comodule_coaction,
    completed_comodule_stage,
    comultiply,
    counit,
    grading_from_coaction,
    graded_part_from_coaction,
    module_group_ring,
    ring_roundtrip_check,
    roundtrip_equivalence_check,
    verify_coaction_axioms,
)
from graded_kernel.completion import (
    Completeness,
    LimitStatus,
    TelescopeVerdict,
    Tower,
    TowerLimitReport,
    derived_gradedwise_completion,
    derived_nakayama_check,
    derived_tower,
    completed_tensor,
    generator_independence_check,
    gradedwise_completion,
    gradedwise_tower,
    is_derived_gradedwise_complete,
    milnor_check,
    pro_isomorphism_check,
    telescope_vanishes,
    tower_limits,
)
from graded_kernel.config import GeneralConfig
from graded_kernel.derived import (
    ChainMap,
    GradedComplex,
    KoszulData,
    as_complex,
    derived_quotient,
    homotopy_groups,
    induced_map,
    koszul_complex,
    suspend,
    tensor_with_perfect,
    torsion_exponent,
    verify_quotient_ses,
)
from graded_kernel.errors import (
    DimensionMismatch,
    GradedKernelError,
    ParseError,
    PreconditionNotCertified,
    TaskError,
)
from graded_kernel.graded_algebra import (
    DayTensor,
    GradedModule,
    UngradedMap,
    day_tensor_piece,
    decompose,
    direct_sum,
    forgetful_tensor_check,
    graded_hom_fiber_check,
    hilbert_function,
    module_piece,
    quotient_by_ideal_power,
    retract_components,
    retract_map,
    ring_piece,
    shift,
    support,
)
from graded_kernel.grading import Degree, Window, monomials_of_degree, validate_signature
from graded_kernel.polynomials import Polynomial
from graded_kernel.report import Report, Row, Status, TaskResult
from graded_kernel.taskfile import (
    DegreeValue,
    Scalar,
    TaskDocument,
    parse_degree,
    parse_group,
    parse_matrix,
    read_task_file,
)

logger = logging.getLogger(__name__)


# == settings ==

@dataclass(frozen=True)
class Overrides:
    """Values given on the command line; they take precedence over everything else."""

    window: Optional[str] = None
    depth: Optional[int] = None
    precision: Optional[int] = None


@dataclass(frozen=True)
class Settings:
    window: Window
    depth: int
    precision: int


def _pick(*values: Any) -> Any:
    return first_true(values, pred=lambda value: value is not None)


def document_window(document: TaskDocument, config: GeneralConfig, overrides: Overrides) -> Window:
    """The window used while building the document, e.g. to check ``d ∘ d = 0`` of complexes."""
    return Window.parse(_pick(overrides.window, document.spec.defaults.window, config.window))


def load_document(path: str, config: GeneralConfig, overrides: Overrides = Overrides()) -> TaskDocument:
    """
    Reads the task file at ``path`` and builds its declarations on the document window.

    Raises:
        ParseError: for malformed YAML and polynomials that do not parse.
        ValidationError: for invalid declarations, including an invalid default window.
    """
    spec, root = read_task_file(path)
    document = TaskDocument(str(path), spec, root)
    try:
        window = document_window(document, config, overrides)
    except (ValueError, ZeroDivisionError) as exc:
        raise document.invalid(str(exc), ("defaults", "window")) from exc
    return document.build(window)


# == the registry ==

class TaskParameters(BaseModel):
    """
    Parameters shared by all tasks. ``expect`` maps row keys to expected values; a value that
    reads as a group (``"Z^2 + Z/4"``) is compared up to isomorphism, anything else verbatim.
    """

    model_config = ConfigDict(extra="forbid")

    window: Optional[str] = None
    depth: Optional[NonNegativeInt] = None
    precision: Optional[NonNegativeInt] = None
    expect: Dict[Scalar, Scalar] = {}


@dataclass
class Outcome:
    status: Status
    rows: List[Row] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)


Handler = Callable[[TaskDocument, TaskParameters, Settings], Outcome]


@dataclass(frozen=True)
class TaskDefinition:
    keyword: str
    params: Type[TaskParameters]
    handler: Handler
    operations: Tuple[str, ...] = ()
    # parameter name -> the kind of declaration it has to name: ring, module, value or complex
    references: Tuple[Tuple[str, str], ...] = ()


REGISTRY: Dict[str, TaskDefinition] = {}


def task(keyword: str,
         params: Type[TaskParameters],
         operations: Tuple[str, ...] = (),
         references: Optional[Dict[str, str]] = None,
         ) -> Callable[[Handler], Handler]:
    """
    Registers the decorated function as the handler of the task keyword ``keyword``.

    Args:
        keyword: The value of ``op`` in the task file.
        params: The model that validates the parameters of the task.
        operations: The kernel operations the handler reaches, as ``module.operation``.
        references: Parameters that name declarations of the task file, mapped to the kind of
            declaration (``ring``, ``module``, ``value`` or ``complex``).
    """
    def decorator(function: Handler) -> Handler:
        if keyword in REGISTRY:
            raise ValueError(f"the task keyword '{keyword}' is registered twice")
        REGISTRY[keyword] = TaskDefinition(
            keyword, params, function, tuple(operations), tuple((references or {}).items()),
        )
        return function

    return decorator


def reachable_operations() -> List[str]:
    return sorted({operation for definition in REGISTRY.values() for operation in definition.operations})


# == shared row helpers ==

def _verdict(flag: bool) -> str:
    return "pass" if flag else "fail"


def _status(flag: bool) -> Status:
    return Status.PASS if flag else Status.FAIL


def _degrees(module: GradedModule, degrees: Optional[List[DegreeValue]], window: Window) -> List[Degree]:
    if degrees is not None:
        return [parse_degree(value) for value in degrees]
    return module.candidate_degrees(window)


def _piece_rows(pieces: Dict[Degree, FpAbGroup], prefix: str = "") -> List[Row]:
    return [Row(key=f"{prefix}deg {g}", value=str(group)) for g, group in pieces.items()]


def _pieces_data(pieces: Dict[Degree, FpAbGroup]) -> Dict[str, str]:
    return {str(g): str(group) for g, group in pieces.items()}


def _homotopy_outcome(value: Union[GradedModule, GradedComplex],
                      indices: Optional[List[int]],
                      window: Window) -> Outcome:
    complex_ = as_complex(value)
    indices = complex_.indices if indices is None else indices
    outcome = Outcome(Status.PASS, data={"homotopy": {}})
    for i in indices:
        groups = homotopy_groups(complex_, i, window)
        outcome.rows.extend(_piece_rows(groups, prefix=f"pi_{i} "))
        outcome.data["homotopy"][str(i)] = _pieces_data(groups)
    return outcome


def _limit_outcome(reports: Dict[int, TowerLimitReport],
                   stage_piece: Callable[[int, Degree], FpAbGroup],
                   precision: int,
                   prefix: Callable[[int], str]) -> Outcome:
    """Rows of limit verdicts; the status is UNDETERMINED as soon as one degree is."""
    outcome = Outcome(Status.PASS, data={"limits": {}, "stage": {}})
    for i, report in reports.items():
        for row in report.rows:
            key = f"{prefix(i)}deg {row.degree}"
            piece = stage_piece(i, row.degree)
            outcome.rows.append(Row(key=key, value=row.describe(), verdict=f"stage {precision}: {piece}"))
            outcome.data["limits"][key] = row.describe()
            outcome.data["stage"][key] = str(piece)
            if row.status == LimitStatus.UNDETERMINED:
                outcome.status = Status.UNDETERMINED
    return outcome


def _same_value(found: str, expected: Scalar) -> bool:
    try:
        return parse_group(found) == parse_group(expected)
    except ValueError:
        return found.strip() == str(expected).strip()


def _apply_expectations(outcome: Outcome, expect: Dict[Scalar, Scalar]) -> Outcome:
    by_key = {row.key: row for row in outcome.rows}
    for key, expected in expect.items():
        row = by_key.get(str(key))
        matches = row is not None and _same_value(row.value, expected)
        outcome.rows.append(Row(key=f"expect {key}", value=str(expected), verdict=_verdict(matches)))
        if not matches:
            outcome.status = Status.FAIL
    return outcome


# == abelian groups ==

class MatrixParameters(TaskParameters):
    matrix: List[List[int]]
    cols: Optional[NonNegativeInt] = None


@task("smith_normal_form", MatrixParameters, operations=("abelian.smith_normal_form",))
def run_smith_normal_form(document: TaskDocument, params: MatrixParameters, settings: Settings) -> Outcome:
    matrix = parse_matrix(params.matrix, params.cols)
    U, D, V = smith_normal_form(matrix)
    size = min(D.rows, D.cols)
    diagonal = [D[i, i] for i in range(size) if D[i, i] != 0]
    divides = all(b % a == 0 for a, b in zip(diagonal, diagonal[1:]))
    holds = U @ matrix @ V == D
    return Outcome(
        _status(holds and divides),
        [
            Row(key="diagonal", value=", ".join(map(str, diagonal)) or "-", verdict=_verdict(divides)),
            Row(key="U*A*V = D", value=f"{D.rows}x{D.cols}", verdict=_verdict(holds)),
            Row(key="cokernel", value=str(cokernel(matrix))),
        ],
        {"U": U.to_lists(), "D": D.to_lists(), "V": V.to_lists()},
    )


@task("cokernel", MatrixParameters, operations=("abelian.cokernel",))
def run_cokernel(document: TaskDocument, params: MatrixParameters, settings: Settings) -> Outcome:
    group = cokernel(parse_matrix(params.matrix, params.cols))
    return Outcome(Status.PASS, [Row(key="cokernel", value=str(group))], {"cokernel": str(group)})


class HomologyParameters(TaskParameters):
    d_in: List[List[int]]
    d_out: List[List[int]]


@task("homology", HomologyParameters, operations=("abelian.homology",))
def run_homology(document: TaskDocument, params: HomologyParameters, settings: Settings) -> Outcome:
    """``ker(d_out) / im(d_in)`` for two matrices between free groups."""
    d_in, d_out = parse_matrix(params.d_in), parse_matrix(params.d_out)
    d_in_map = AbMap(FpAbGroup.free(d_in.cols), FpAbGroup.free(d_in.rows), d_in)
    d_out_map = AbMap(FpAbGroup.free(d_out.cols), FpAbGroup.free(d_out.rows), d_out)
    group = homology(d_in_map, d_out_map)
    return Outcome(Status.PASS, [Row(key="homology", value=str(group))], {"homology": str(group)})


class HomGroupParameters(TaskParameters):
    source: Scalar
    target: Scalar


@task("hom_group", HomGroupParameters, operations=("abelian.hom_group",))
def run_hom_group(document: TaskDocument, params: HomGroupParameters, settings: Settings) -> Outcome:
    result = hom_group(parse_group(params.source), parse_group(params.target))
    return Outcome(
        Status.PASS,
        [Row(key="hom", value=str(result.group)), Row(key="generators", value=str(len(result.generators)))],
        {"hom": str(result.group)},
    )


# == gradings ==

class RingParameters(TaskParameters):
    ring: str
    degrees: Optional[List[DegreeValue]] = None


@task("validate_signature", RingParameters, operations=("grading.validate_signature",),
      references={"ring": "ring"})
def run_validate_signature(document: TaskDocument, params: RingParameters, settings: Settings) -> Outcome:
    ring = document.ring(params.ring)
    sig = ring.sig
    validate_signature(sig)
    rows = [
        Row(key=name, value=str(degree), verdict=f"weight {sig.weight_of(degree)}")
        for name, degree in zip(ring.variables, sig.generator_degrees)
    ]
    return Outcome(Status.PASS, rows, {"weight": [str(w) for w in sig.weight]})


@task("monomials_of_degree", RingParameters, operations=("grading.monomials_of_degree",),
      references={"ring": "ring"})
def run_monomials_of_degree(document: TaskDocument, params: RingParameters, settings: Settings) -> Outcome:
    ring = document.ring(params.ring)
    outcome = Outcome(Status.PASS, data={"counts": {}})
    for g in _degrees(ring.as_module(), params.degrees, settings.window):
        monomials = [ring.format(Polynomial.monomial(e)) for e in monomials_of_degree(ring.sig, g)]
        outcome.rows.append(Row(key=f"deg {g}", value=str(len(monomials)), verdict=", ".join(monomials)))
        outcome.data["counts"][str(g)] = len(monomials)
    return outcome


# == graded rings and modules ==

@task("ring_piece", RingParameters, operations=("graded_algebra.ring_piece",), references={"ring": "ring"})
def run_ring_piece(document: TaskDocument, params: RingParameters, settings: Settings) -> Outcome:
    ring = document.ring(params.ring)
    pieces = {g: ring_piece(ring, g) for g in _degrees(ring.as_module(), params.degrees, settings.window)}
    return Outcome(Status.PASS, _piece_rows(pieces), {"pieces": _pieces_data(pieces)})


class ModuleParameters(TaskParameters):
    module: str
    degrees: Optional[List[DegreeValue]] = None


@task("module_piece", ModuleParameters, operations=("graded_algebra.module_piece",),
      references={"module": "module"})
def run_module_piece(document: TaskDocument, params: ModuleParameters, settings: Settings) -> Outcome:
    module = document.module(params.module)
    pieces = {g: module_piece(module, g) for g in _degrees(module, params.degrees, settings.window)}
    return Outcome(Status.PASS, _piece_rows(pieces), {"pieces": _pieces_data(pieces)})


@task("support", ModuleParameters, operations=("graded_algebra.support",), references={"module": "module"})
def run_support(document: TaskDocument, params: ModuleParameters, settings: Settings) -> Outcome:
    degrees = support(document.module(params.module), settings.window)
    text = ", ".join(str(g) for g in degrees) or "-"
    return Outcome(Status.PASS, [Row(key="support", value=text)], {"support": [str(g) for g in degrees]})


@task("hilbert_function", ModuleParameters, operations=("graded_algebra.hilbert_function",),
      references={"module": "module"})
def run_hilbert_function(document: TaskDocument, params: ModuleParameters, settings: Settings) -> Outcome:
    values = hilbert_function(document.module(params.module), settings.window)
    rows = [
        Row(key=f"deg {g}", value=str(FpAbGroup.from_invariants(rank, torsion)), verdict=f"rank {rank}")
        for g, (rank, torsion) in values.items()
    ]
    data = {str(g): {"rank": rank, "torsion": list(torsion)} for g, (rank, torsion) in values.items()}
    return Outcome(Status.PASS, rows, {"hilbert": data})


class ShiftParameters(ModuleParameters):
    by: DegreeValue


@task("shift", ShiftParameters, operations=("graded_algebra.shift",), references={"module": "module"})
def run_shift(document: TaskDocument, params: ShiftParameters, settings: Settings) -> Outcome:
    """Checks ``M(g)_h = M_{g+h}`` on the degrees of the shifted module."""
    module = document.module(params.module)
    g = parse_degree(params.by)
    shifted = shift(module, g)
    outcome = Outcome(Status.PASS, data={"pieces": {}})
    for h in _degrees(shifted, params.degrees, settings.window):
        piece = module_piece(shifted, h)
        agrees = piece == module_piece(module, g + h)
        outcome.rows.append(Row(key=f"deg {h}", value=str(piece), verdict=_verdict(agrees)))
        outcome.data["pieces"][str(h)] = str(piece)
        if not agrees:
            outcome.status = Status.FAIL
    return outcome


class DecomposeParameters(TaskParameters):
    ring: str
    element: Scalar


@task("decompose", DecomposeParameters, operations=("graded_algebra.decompose",), references={"ring": "ring"})
def run_decompose(document: TaskDocument, params: DecomposeParameters, settings: Settings) -> Outcome:
    ring = document.ring(params.ring)
    element = ring.parse(str(params.element))
    components = decompose(ring, element)
    total = sum(components.values(), ring.zero())
    rows = [Row(key=f"deg {g}", value=ring.format(c)) for g, c in components.items()]
    rows.append(Row(key="sum", value=ring.format(total), verdict=_verdict(total == element)))
    return Outcome(
        _status(total == element), rows, {"components": {str(g): ring.format(c) for g, c in components.items()}},
    )


class PairParameters(TaskParameters):
    left: str
    right: str
    degrees: Optional[List[DegreeValue]] = None
    bound: Optional[Scalar] = None


@task("day_tensor_piece", PairParameters, operations=("graded_algebra.day_tensor_piece",),
      references={"left": "module", "right": "module"})
def run_day_tensor_piece(document: TaskDocument, params: PairParameters, settings: Settings) -> Outcome:
    left, right = document.module(params.left), document.module(params.right)
    day = DayTensor(left, right, params.bound)
    if params.degrees is not None:
        degrees = [parse_degree(value) for value in params.degrees]
    else:
        degrees = day.candidate_degrees(settings.window)
    pieces = {g: day_tensor_piece(left, right, g, params.bound) for g in degrees}
    return Outcome(Status.PASS, _piece_rows(pieces), {"pieces": _pieces_data(pieces)})


@task("forgetful_tensor_check", PairParameters, operations=("graded_algebra.forgetful_tensor_check",),
      references={"left": "module", "right": "module"})
def run_forgetful_tensor_check(document: TaskDocument, params: PairParameters, settings: Settings) -> Outcome:
    bound = params.bound if params.bound is not None else settings.window.hi
    report = forgetful_tensor_check(document.module(params.left), document.module(params.right), bound)
    rows = [
        Row(key="day total", value=str(report.day_total)),
        Row(key="plain tensor", value=str(report.plain_tensor), verdict=_verdict(report.passed)),
    ]
    return Outcome(_status(report.passed), rows, {"bound": str(bound)})


class RetractParameters(TaskParameters):
    source: str
    target: str
    matrix: List[List[Scalar]]
    bound: Optional[Scalar] = None


@task("retract_map", RetractParameters, operations=("graded_algebra.retract_map",),
      references={"source": "module", "target": "module"})
def run_retract_map(document: TaskDocument, params: RetractParameters, settings: Settings) -> Outcome:
    """
    Retracts the (possibly inhomogeneous) R-linear map given by ``matrix``. The retraction has
    to realize to the degreewise components ``p ∘ phi ∘ i`` and has to retract to itself.
    """
    source, target = document.module(params.source), document.module(params.target)
    bound = params.bound if params.bound is not None else settings.window.hi
    matrix = [[str(entry) for entry in row] for row in params.matrix]
    phi = UngradedMap.from_matrix(source, target, matrix, bound)
    retracted = retract_map(phi)

    outcome = Outcome(Status.PASS)
    for g, component in retract_components(phi).items():
        agrees = retracted.realize(g).equals(component)
        outcome.rows.append(Row(
            key=f"deg {g}", value=f"{component.source} -> {component.target}", verdict=_verdict(agrees),
        ))
        if not agrees:
            outcome.status = Status.FAIL

    window = Window(settings.window.lo, min(settings.window.hi, Window.up_to(bound).hi))
    idempotent = retract_map(UngradedMap.include(retracted, bound)).equals_on(retracted, window)
    outcome.rows.append(Row(key="retract of inclusion", value="identity", verdict=_verdict(idempotent)))
    if not idempotent:
        outcome.status = Status.FAIL
    outcome.data["matrix"] = [[source.ring.format(entry) for entry in row] for row in retracted.matrix]
    return outcome


class HomFiberParameters(TaskParameters):
    source: str
    target: str
    bound: Optional[Scalar] = None


@task("graded_hom_fiber_check", HomFiberParameters, operations=("graded_algebra.graded_hom_fiber_check",),
      references={"source": "module", "target": "module"})
def run_graded_hom_fiber_check(document: TaskDocument, params: HomFiberParameters, settings: Settings) -> Outcome:
    bound = params.bound if params.bound is not None else settings.window.hi
    report = graded_hom_fiber_check(document.module(params.source), document.module(params.target), bound)
    rows = [
        Row(key="graded hom", value=str(report.graded)),
        Row(key="degreewise", value=str(report.degreewise), verdict=_verdict(report.passed)),
        Row(key="kernel", value=str(report.kernel)),
        Row(key="cokernel", value=str(report.cokernel)),
    ]
    return Outcome(_status(report.passed), rows, {"degrees": [str(g) for g in report.degrees]})


class DirectSumParameters(TaskParameters):
    modules: List[str]
    degrees: Optional[List[DegreeValue]] = None


@task("direct_sum", DirectSumParameters, operations=("graded_algebra.direct_sum",),
      references={"modules": "module"})
def run_direct_sum(document: TaskDocument, params: DirectSumParameters, settings: Settings) -> Outcome:
    parts = [document.module(name) for name in params.modules]
    total = direct_sum(*parts)
    outcome = Outcome(Status.PASS, data={"pieces": {}})
    for g in _degrees(total, params.degrees, settings.window):
        piece = module_piece(total, g)
        agrees = piece == direct_sum_groups(*(module_piece(part, g) for part in parts))
        outcome.rows.append(Row(key=f"deg {g}", value=str(piece), verdict=_verdict(agrees)))
        outcome.data["pieces"][str(g)] = str(piece)
        if not agrees:
            outcome.status = Status.FAIL
    return outcome


class IdealPowerParameters(ModuleParameters):
    generators: List[Scalar]
    power: NonNegativeInt = 1


@task("quotient_by_ideal_power", IdealPowerParameters, operations=("graded_algebra.quotient_by_ideal_power",),
      references={"module": "module"})
def run_quotient_by_ideal_power(document: TaskDocument, params: IdealPowerParameters, settings: Settings) -> Outcome:
    module = document.module(params.module)
    quotient = quotient_by_ideal_power(module, [str(f) for f in params.generators], params.power)
    pieces = {g: module_piece(quotient, g) for g in _degrees(quotient, params.degrees, settings.window)}
    return Outcome(Status.PASS, _piece_rows(pieces), {"pieces": _pieces_data(pieces)})


# == derived quotients ==

class KoszulParameters(TaskParameters):
    ring: str
    sequence: List[Scalar]
    exponent: PositiveInt = 1
    indices: Optional[List[int]] = None


@task("koszul_complex", KoszulParameters, operations=("derived.koszul_complex",), references={"ring": "ring"})
def run_koszul_complex(document: TaskDocument, params: KoszulParameters, settings: Settings) -> Outcome:
    data = KoszulData.create(document.ring(params.ring), [str(f) for f in params.sequence], params.exponent)
    return _homotopy_outcome(koszul_complex(data), params.indices, settings.window)


class ValueParameters(TaskParameters):
    value: str
    indices: Optional[List[int]] = None


class DerivedQuotientParameters(ValueParameters):
    sequence: List[Scalar]
    exponent: PositiveInt = 1


@task("derived_quotient", DerivedQuotientParameters, operations=("derived.derived_quotient",),
      references={"value": "value"})
def run_derived_quotient(document: TaskDocument, params: DerivedQuotientParameters, settings: Settings) -> Outcome:
    value = document.value(params.value)
    data = KoszulData.create(as_complex(value).ring, [str(f) for f in params.sequence], params.exponent)
    return _homotopy_outcome(derived_quotient(value, data), params.indices, settings.window)


@task("homotopy_groups", ValueParameters, operations=("derived.homotopy_groups",), references={"value": "value"})
def run_homotopy_groups(document: TaskDocument, params: ValueParameters, settings: Settings) -> Outcome:
    return _homotopy_outcome(document.value(params.value), params.indices, settings.window)


class QuotientSesParameters(ValueParameters):
    element: Scalar


@task("verify_quotient_ses", QuotientSesParameters, operations=("derived.verify_quotient_ses",),
      references={"value": "value"})
def run_verify_quotient_ses(document: TaskDocument, params: QuotientSesParameters, settings: Settings) -> Outcome:
    value = document.value(params.value)
    indices = params.indices if params.indices is not None else [0, 1, 2]
    outcome = Outcome(Status.PASS)
    for i in indices:
        report = verify_quotient_ses(value, str(params.element), i, settings.window)
        for row in report.rows:
            outcome.rows.append(Row(
                key=f"{i} deg {row.degree}",
                value=f"{row.quotient} -> {row.middle} -> {row.torsion}",
                verdict=_verdict(row.passed),
            ))
        if not report.passed:
            outcome.status = Status.FAIL
    return outcome


class PerfectParameters(ValueParameters):
    perfect: str


@task("tensor_with_perfect", PerfectParameters, operations=("derived.tensor_with_perfect",),
      references={"value": "value", "perfect": "complex"})
def run_tensor_with_perfect(document: TaskDocument, params: PerfectParameters, settings: Settings) -> Outcome:
    product = tensor_with_perfect(document.value(params.value), document.complexes[params.perfect])
    return _homotopy_outcome(product, params.indices, settings.window)


class TorsionParameters(TaskParameters):
    value: str
    generators: List[Scalar]
    index: int = 0
    degrees: Optional[List[DegreeValue]] = None
    bound: Optional[NonNegativeInt] = None


@task("torsion_exponent", TorsionParameters, operations=("derived.torsion_exponent",),
      references={"value": "value"})
def run_torsion_exponent(document: TaskDocument, params: TorsionParameters, settings: Settings) -> Outcome:
    """Degrees without an exponent within the bound are undetermined, not failed."""
    complex_ = as_complex(document.value(params.value))
    ring = complex_.ring
    fs = [ring.parse(str(f)) for f in params.generators]
    bound = params.bound if params.bound is not None else settings.depth
    if params.degrees is not None:
        degrees = [parse_degree(value) for value in params.degrees]
    else:
        degrees = complex_.degrees(params.index, settings.window)

    outcome = Outcome(Status.PASS, data={"exponents": {}})
    for g in degrees:
        n = torsion_exponent(complex_, params.index, fs, g, bound)
        outcome.rows.append(Row(key=f"deg {g}", value="none" if n is None else str(n)))
        outcome.data["exponents"][str(g)] = n
        if n is None:
            outcome.status = Status.UNDETERMINED
    return outcome


class SuspendParameters(ValueParameters):
    by: int = 1


@task("suspend", SuspendParameters, operations=("derived.suspend",), references={"value": "value"})
def run_suspend(document: TaskDocument, params: SuspendParameters, settings: Settings) -> Outcome:
    """Checks ``π_{i+k}(C[k]) = π_i(C)``."""
    complex_ = as_complex(document.value(params.value))
    suspended = suspend(complex_, params.by)
    indices = complex_.indices if params.indices is None else params.indices
    outcome = Outcome(Status.PASS)
    for i in indices:
        expected = homotopy_groups(complex_, i, settings.window)
        found = homotopy_groups(suspended, i + params.by, settings.window)
        for g, group in found.items():
            agrees = group == expected.get(g, FpAbGroup.zero())
            outcome.rows.append(Row(key=f"pi_{i + params.by} deg {g}", value=str(group), verdict=_verdict(agrees)))
            if not agrees:
                outcome.status = Status.FAIL
    return outcome


class InducedMapParameters(TaskParameters):
    value: str
    element: Scalar
    index: int = 0
    degrees: Optional[List[DegreeValue]] = None


@task("induced_map", InducedMapParameters, operations=("derived.induced_map",), references={"value": "value"})
def run_induced_map(document: TaskDocument, params: InducedMapParameters, settings: Settings) -> Outcome:
    """The map induced on ``π_i`` by multiplication with ``element``, with its kernel and cokernel."""
    complex_ = as_complex(document.value(params.value))
    chain_map = ChainMap.multiplication(complex_, complex_.ring.parse(str(params.element)))
    if params.degrees is not None:
        degrees = [parse_degree(value) for value in params.degrees]
    else:
        degrees = complex_.degrees(params.index, settings.window)

    outcome = Outcome(Status.PASS)
    for g in degrees:
        f = induced_map(chain_map, params.index, g)
        outcome.rows.append(Row(
            key=f"deg {g}",
            value=f"{f.source} -> {f.target}",
            verdict=f"ker {f.kernel().group}, coker {f.cokernel()}",
        ))
    return outcome


# == towers and completions ==

class TowerParameters(TaskParameters):
    """Either a module with generators (the tower ``M/I^m M``) or explicit group stages and maps."""

    module: Optional[str] = None
    generators: List[Scalar] = []
    stages: Optional[List[Scalar]] = None
    maps: List[List[List[int]]] = []

    @pydantic.model_validator(mode="after")
    def check(self):
        assert (self.module is None) != (self.stages is None), \
            "a tower needs exactly one of 'module' or 'stages'"
        if self.stages is not None:
            assert len(self.maps) == len(self.stages) - 1, \
                f"{len(self.stages)} stages need {len(self.stages) - 1} maps"

        return self


@task("tower_limits", TowerParameters, operations=("completion.tower_limits",),
      references={"module": "module"})
def run_tower_limits(document: TaskDocument, params: TowerParameters, settings: Settings) -> Outcome:
    if params.module is not None:
        tower = gradedwise_tower(document.module(params.module), [str(f) for f in params.generators], settings.depth)
    else:
        groups = [parse_group(stage) for stage in params.stages]
        maps = [
            AbMap(groups[n + 1], groups[n], parse_matrix(matrix, groups[n + 1].generators)).check_well_defined()
            for n, matrix in enumerate(params.maps)
        ]
        tower = Tower(tuple(groups), tuple(maps))

    report = tower_limits(tower, settings.window)
    outcome = Outcome(Status.PASS, data={"limits": {}})
    for row in report.rows:
        key = "limit" if row.degree is None else f"deg {row.degree}"
        outcome.rows.append(Row(key=key, value=row.describe()))
        outcome.data["limits"][key] = row.describe()
        if row.status == LimitStatus.UNDETERMINED:
            outcome.status = Status.UNDETERMINED
    return outcome


class CompletionParameters(TaskParameters):
    value: str
    generators: List[Scalar]
    index: int = 0
    strict: bool = False


@task("milnor_check", CompletionParameters, operations=("completion.milnor_check",),
      references={"value": "value"})
def run_milnor_check(document: TaskDocument, params: CompletionParameters, settings: Settings) -> Outcome:
    tower = derived_tower(document.value(params.value), [str(f) for f in params.generators], settings.depth)
    report = milnor_check(tower, params.index, settings.window, params.strict)
    outcome = Outcome(Status.PASS)
    for row in report.rows:
        if not row.stabilized:
            verdict = "not stabilized"
        else:
            verdict = _verdict(row.passed)
        outcome.rows.append(Row(
            key=f"deg {row.degree}",
            value=f"{row.limit.describe()}; lim1 {row.lim1.describe()}",
            verdict=verdict,
        ))
    if any(row.stabilized and not row.passed for row in report.rows):
        outcome.status = Status.FAIL
    elif report.unstabilized:
        outcome.status = Status.UNDETERMINED
    outcome.data["unstabilized"] = [str(g) for g in report.unstabilized]
    return outcome


class GradedwiseParameters(TaskParameters):
    module: str
    generators: List[Scalar]


@task("gradedwise_completion", GradedwiseParameters, operations=("completion.gradedwise_completion",),
      references={"module": "module"})
def run_gradedwise_completion(document: TaskDocument, params: GradedwiseParameters, settings: Settings) -> Outcome:
    approximation = gradedwise_completion(
        document.module(params.module), [str(f) for f in params.generators], settings.precision, settings.window,
    )
    return _limit_outcome(
        approximation.reports,
        lambda i, g: module_piece(approximation.value, g),
        settings.precision,
        lambda i: "",
    )


class DerivedCompletionParameters(TaskParameters):
    value: str
    generators: List[Scalar]


@task("derived_gradedwise_completion", DerivedCompletionParameters,
      operations=("completion.derived_gradedwise_completion",), references={"value": "value"})
def run_derived_gradedwise_completion(document: TaskDocument,
                                      params: DerivedCompletionParameters,
                                      settings: Settings) -> Outcome:
    approximation = derived_gradedwise_completion(
        document.value(params.value), [str(f) for f in params.generators], settings.precision, settings.window,
    )
    return _limit_outcome(
        approximation.reports,
        lambda i, g: approximation.value.homology(i, g),
        settings.precision,
        lambda i: f"pi_{i} ",
    )


class CompletedTensorParameters(DerivedCompletionParameters):
    perfect: str


@task("completed_tensor", CompletedTensorParameters, operations=("completion.completed_tensor",),
      references={"value": "value", "perfect": "complex"})
def run_completed_tensor(document: TaskDocument, params: CompletedTensorParameters, settings: Settings) -> Outcome:
    approximation = completed_tensor(
        document.value(params.value),
        document.complexes[params.perfect],
        [str(f) for f in params.generators],
        settings.precision,
        settings.window,
    )
    return _limit_outcome(
        approximation.reports,
        lambda i, g: approximation.value.homology(i, g),
        settings.precision,
        lambda i: f"pi_{i} ",
    )


class TelescopeParameters(TaskParameters):
    value: str
    element: Scalar
    index: int = 0
    degrees: Optional[List[DegreeValue]] = None


@task("telescope_vanishes", TelescopeParameters, operations=("completion.telescope_vanishes",),
      references={"value": "value"})
def run_telescope_vanishes(document: TaskDocument, params: TelescopeParameters, settings: Settings) -> Outcome:
    complex_ = as_complex(document.value(params.value))
    if params.degrees is not None:
        degrees = [parse_degree(value) for value in params.degrees]
    else:
        degrees = complex_.degrees(params.index, settings.window)

    verdicts = set()
    outcome = Outcome(Status.PASS)
    for g in degrees:
        result = telescope_vanishes(complex_, str(params.element), g, settings.depth, params.index)
        verdicts.add(result.verdict)
        detail = result.reason if result.stage is None else f"{result.reason}, stage {result.stage}"
        outcome.rows.append(Row(key=f"deg {g}", value=result.verdict.value, verdict=detail))

    if TelescopeVerdict.NON_VANISHING in verdicts:
        outcome.status = Status.FAIL
    elif TelescopeVerdict.UNDETERMINED in verdicts:
        outcome.status = Status.UNDETERMINED
    return outcome


@task("is_derived_gradedwise_complete", DerivedCompletionParameters,
      operations=("completion.is_derived_gradedwise_complete",), references={"value": "value"})
def run_is_derived_gradedwise_complete(document: TaskDocument,
                                       params: DerivedCompletionParameters,
                                       settings: Settings) -> Outcome:
    """Completeness is certified on the listed generators only."""
    value = document.value(params.value)
    report = is_derived_gradedwise_complete(value, [str(f) for f in params.generators], settings.window, settings.depth)
    ring = as_complex(value).ring
    rows = [
        Row(key=f"{i} {ring.format(f)} deg {g}", value=result.verdict.value, verdict=result.reason)
        for i, f, g, result in report.rows
    ]
    rows.append(Row(key="complete", value=report.status.value, verdict="generator-wise"))
    status = {
        Completeness.CERTIFIED_YES: Status.PASS,
        Completeness.CERTIFIED_NO: Status.FAIL,
        Completeness.UNDETERMINED: Status.UNDETERMINED,
    }[report.status]
    return Outcome(status, rows, {"complete": report.status.value})


class ProIsomorphismParameters(TaskParameters):
    module: str
    element: Scalar


@task("pro_isomorphism_check", ProIsomorphismParameters, operations=("completion.pro_isomorphism_check",),
      references={"module": "module"})
def run_pro_isomorphism_check(document: TaskDocument, params: ProIsomorphismParameters, settings: Settings) -> Outcome:
    report = pro_isomorphism_check(document.module(params.module), str(params.element), settings.depth, settings.window)
    rows = [
        Row(key="bound", value=str(report.bound), verdict=_verdict(report.bounded)),
        Row(key="transitions vanish", value=str(report.transitions_vanish), verdict=_verdict(report.transitions_vanish)),
    ]
    rows.extend(Row(key="failure", value=failure, verdict="fail") for failure in report.failures)
    data = {
        "bound": report.bound,
        "degree_bounds": {str(g): c for g, c in report.degree_bounds.items()},
    }
    return Outcome(_status(report.passed), rows, data)


class NakayamaParameters(DerivedCompletionParameters):
    connectivity: int


@task("derived_nakayama_check", NakayamaParameters, operations=("completion.derived_nakayama_check",),
      references={"value": "value"})
def run_derived_nakayama_check(document: TaskDocument, params: NakayamaParameters, settings: Settings) -> Outcome:
    try:
        report = derived_nakayama_check(
            document.value(params.value),
            [str(f) for f in params.generators],
            params.connectivity,
            settings.window,
            settings.depth,
        )
    except PreconditionNotCertified as exc:
        return Outcome(Status.UNDETERMINED, [Row(key="precondition", value=str(exc), verdict="not certified")])

    rows = [
        Row(key="hypothesis", value=str(report.hypothesis_holds), verdict=f"{len(report.checked)} pieces"),
    ]
    rows.extend(
        Row(key=f"pi_{i} deg {g}", value="nonzero", verdict="fail") for i, g in report.counterexamples
    )
    return Outcome(_status(report.passed), rows, {"connectivity": report.connectivity})


class IndependenceParameters(GradedwiseParameters):
    other_generators: List[Scalar]


@task("generator_independence_check", IndependenceParameters,
      operations=("completion.generator_independence_check",), references={"module": "module"})
def run_generator_independence_check(document: TaskDocument,
                                     params: IndependenceParameters,
                                     settings: Settings) -> Outcome:
    report = generator_independence_check(
        document.module(params.module),
        [str(f) for f in params.generators],
        [str(f) for f in params.other_generators],
        settings.precision,
        settings.window,
    )
    rows = [Row(key="same ideal", value=str(report.same_ideal), verdict=_verdict(report.same_ideal))]
    for g, left, right, a, b in report.rows:
        rows.append(Row(key=f"deg {g}", value=f"{left} | {right}", verdict=_verdict(left == right and a == b)))
    return Outcome(_status(report.passed), rows)


# == group rings and coactions ==

class GroupTerm(BaseModel):
    model_config = ConfigDict(extra="forbid")

    degree: DegreeValue
    coefficient: Scalar = 1


class CounitValue(BaseModel):
    model_config = ConfigDict(extra="forbid")

    degree: DegreeValue
    value: int


def _group_ring_element(ring_parse: Callable[[str], Any], terms: List[GroupTerm], dimension: int) -> GroupRingElement:
    parsed = []
    for term in terms:
        g = parse_degree(term.degree)
        if g.dimension != dimension:
            raise DimensionMismatch(f"the degree {g} does not have {dimension} coordinates")
        parsed.append((g, ring_parse(str(term.coefficient))))
    return GroupRingElement.from_terms(parsed)


def _counit_values(values: List[CounitValue]) -> Dict[Degree, int]:
    return {parse_degree(entry.degree): entry.value for entry in values}


class GroupRingParameters(TaskParameters):
    ring: str
    terms: List[GroupTerm]


@task("comultiply", GroupRingParameters, operations=("comodule.comultiply",), references={"ring": "ring"})
@task("counit", GroupRingParameters, operations=("comodule.counit",), references={"ring": "ring"})
@task("antipode", GroupRingParameters, operations=("comodule.antipode",), references={"ring": "ring"})
def run_group_ring(document: TaskDocument, params: GroupRingParameters, settings: Settings) -> Outcome:
    """
    The coalgebra structure of ``R[G]`` on one element ``x``, with the identities
    ``(e ⊗ id) Δ(x) = x`` and ``ι(ι(x)) = x``.
    """
    ring = document.ring(params.ring)
    names = ring.variables
    x = _group_ring_element(ring.parse, params.terms, ring.sig.dimension)

    expansion = comultiply(x)
    left_counit = GroupRingElement.from_terms((h, c) for (g, h), c in expansion.items())
    twice = antipode(antipode(x))
    rows = [
        Row(key="x", value=x.format(names)),
        Row(
            key="comultiply",
            value=" + ".join(f"{ring.format(c)}*t^{g}⊗t^{h}" for (g, h), c in expansion.items()) or "0",
            verdict=_verdict(left_counit == x),
        ),
        Row(key="counit", value=ring.format(counit(x, zero=ring.zero()))),
        Row(key="antipode", value=antipode(x).format(names), verdict=_verdict(twice == x)),
    ]
    return Outcome(_status(left_counit == x and twice == x), rows)


class CoactionParameters(TaskParameters):
    value: str
    images: Optional[Dict[str, List[GroupTerm]]] = None
    counit: List[CounitValue] = []
    samples: List[Scalar] = []


def _ring_images(ring, images: Dict[str, List[GroupTerm]], dimension: int) -> List[GroupRingElement]:
    unknown = sorted(set(images) - set(ring.variables))
    if unknown:
        raise DimensionMismatch(f"images for unknown variables {unknown}")
    missing = [name for name in ring.variables if name not in images]
    if missing:
        raise DimensionMismatch(f"no image for the variables {missing}")
    return [_group_ring_element(ring.parse, images[name], dimension) for name in ring.variables]


def _coaction_rows(coaction: CoactionData) -> List[Row]:
    labels = coaction.names if coaction.multiplicative else [f"e{j}" for j in range(len(coaction.images))]
    return [
        Row(key=f"rho({label})", value=image.format(coaction.names))
        for label, image in zip(labels, coaction.images)
    ]


def _axiom_rows(report) -> List[Row]:
    rows = [Row(key="axioms", value=f"{len(report.rows)} checks", verdict=_verdict(report.passed))]
    rows.extend(Row(key=f"{row.diagram} {row.element}", value="violated", verdict="fail") for row in report.failures)
    return rows


@task("verify_coaction_axioms", CoactionParameters, operations=("comodule.verify_coaction_axioms",),
      references={"value": "module"})
def run_verify_coaction_axioms(document: TaskDocument, params: CoactionParameters, settings: Settings) -> Outcome:
    """
    Checks the axioms of the coaction of a ring (from its grading, or from ``images``) or of a
    module (from its generator shifts). ``counit`` replaces ``e(t^g) = 1`` in listed degrees.
    """
    counit_values = _counit_values(params.counit)
    if params.value in document.rings and params.value not in document.modules:
        ring = document.ring(params.value)
        if params.images is not None:
            images = _ring_images(ring, params.images, ring.sig.dimension)
        else:
            images = list(coaction_from_grading(ring).images)
        coaction = CoactionData.create(ring, images, counit_values)
    else:
        if params.images is not None:
            raise DimensionMismatch("images can only be given for the coaction of a ring")
        module = document.module(params.value)
        coaction = CoactionData.create(module, comodule_coaction(module).images, counit_values)

    report = verify_coaction_axioms(coaction, [str(s) for s in params.samples], settings.window)
    return Outcome(_status(report.passed), _coaction_rows(coaction) + _axiom_rows(report))


class CoactionRingParameters(TaskParameters):
    ring: str


@task("coaction_from_grading", CoactionRingParameters, operations=("comodule.coaction_from_grading",),
      references={"ring": "ring"})
def run_coaction_from_grading(document: TaskDocument, params: CoactionRingParameters, settings: Settings) -> Outcome:
    coaction = coaction_from_grading(document.ring(params.ring))
    report = verify_coaction_axioms(coaction, window=settings.window)
    return Outcome(_status(report.passed), _coaction_rows(coaction) + _axiom_rows(report))


class GradingRecoveryParameters(TaskParameters):
    ring: str
    images: Dict[str, List[GroupTerm]]
    weight: Optional[List[Scalar]] = None
    counit: List[CounitValue] = []
    samples: List[Scalar] = []


@task("grading_from_coaction", GradingRecoveryParameters, operations=("comodule.grading_from_coaction",),
      references={"ring": "ring"})
def run_grading_from_coaction(document: TaskDocument, params: GradingRecoveryParameters, settings: Settings) -> Outcome:
    """
    Reads a grading off the coaction given by ``images`` on the presentation of ``ring``; the
    grading declared for ``ring`` itself is ignored.
    """
    ring = document.ring(params.ring)
    first = next((term for terms in params.images.values() for term in terms), None)
    dimension = ring.sig.dimension if first is None else parse_degree(first.degree).dimension
    images = _ring_images(ring, params.images, dimension)
    coaction = CoactionData.create(ring.presentation, images, _counit_values(params.counit))
    recovery = grading_from_coaction(coaction, settings.window, params.weight, [str(s) for s in params.samples])

    recovered = recovery.ring
    rows = [
        Row(key=f"deg {name}", value=str(degree))
        for name, degree in zip(recovered.variables, recovered.sig.generator_degrees)
    ]
    failures = [row for row in recovery.rows if not row.passed]
    rows.append(Row(key="consistency", value=f"{len(recovery.rows)} elements", verdict=_verdict(recovery.passed)))
    rows.extend(Row(key=f"element {row.element}", value="inconsistent", verdict="fail") for row in failures)
    data = {"degrees": {name: str(g) for name, g in zip(recovered.variables, recovered.sig.generator_degrees)}}
    return Outcome(_status(recovery.passed), rows, data)


class RingListParameters(TaskParameters):
    rings: List[str]


@task("ring_roundtrip_check", RingListParameters, operations=("comodule.ring_roundtrip_check",),
      references={"rings": "ring"})
def run_ring_roundtrip_check(document: TaskDocument, params: RingListParameters, settings: Settings) -> Outcome:
    outcome = Outcome(Status.PASS)
    for name in params.rings:
        report = ring_roundtrip_check(document.ring(name), settings.window)
        outcome.rows.append(Row(key=f"{name} degrees", value=str(report.degrees_match),
                                verdict=_verdict(report.degrees_match)))
        outcome.rows.append(Row(key=f"{name} axioms", value=f"{len(report.axioms.rows)} checks",
                                verdict=_verdict(report.axioms.passed)))
        outcome.rows.extend(
            Row(key=f"{name} deg {row.degree}", value=str(row.recovered), verdict=_verdict(row.passed))
            for row in report.rows
        )
        if not report.passed:
            outcome.status = Status.FAIL
    return outcome


@task("module_group_ring", ModuleParameters, operations=("comodule.module_group_ring",),
      references={"module": "module"})
def run_module_group_ring(document: TaskDocument, params: ModuleParameters, settings: Settings) -> Outcome:
    """The windowed realization of ``M[G]`` and the well-definedness of its coaction map."""
    group_ring = module_group_ring(document.module(params.module), settings.window)
    pieces = {g: group_ring.piece(g) for g in _degrees(group_ring.module, params.degrees, settings.window)}
    well_defined = group_ring.coaction_map().is_well_defined(settings.window)
    rows = [Row(key="offsets", value=", ".join(str(c) for c in group_ring.offsets) or "-")]
    rows += _piece_rows(pieces)
    rows.append(Row(key="coaction map", value="M -> M[G]", verdict=_verdict(well_defined)))
    return Outcome(_status(well_defined), rows, {"pieces": _pieces_data(pieces)})


class ComoduleParameters(TaskParameters):
    module: str


@task("comodule_coaction", ComoduleParameters, operations=("comodule.comodule_coaction",),
      references={"module": "module"})
def run_comodule_coaction(document: TaskDocument, params: ComoduleParameters, settings: Settings) -> Outcome:
    coaction = comodule_coaction(document.module(params.module))
    report = verify_coaction_axioms(coaction, window=settings.window)
    return Outcome(_status(report.passed), _coaction_rows(coaction) + _axiom_rows(report))


class GradedPartParameters(TaskParameters):
    value: str
    degrees: Optional[List[DegreeValue]] = None


@task("graded_part_from_coaction", GradedPartParameters, operations=("comodule.graded_part_from_coaction",),
      references={"value": "module"})
def run_graded_part_from_coaction(document: TaskDocument, params: GradedPartParameters, settings: Settings) -> Outcome:
    """Recovers pieces from the coaction of a ring (its grading) or of a module (its generators)."""
    if params.value in document.rings and params.value not in document.modules:
        carrier = document.ring(params.value)
        coaction = coaction_from_grading(carrier)
        module = carrier.as_module()
    else:
        module = document.module(params.value)
        carrier, coaction = module, comodule_coaction(module)

    outcome = Outcome(Status.PASS, data={"pieces": {}})
    for g in _degrees(module, params.degrees, settings.window):
        part = graded_part_from_coaction(carrier, coaction, g, settings.window)
        agrees = part.group == module_piece(module, g) and part.composite_is_isomorphism()
        outcome.rows.append(Row(key=f"deg {g}", value=str(part.group), verdict=_verdict(agrees)))
        outcome.data["pieces"][str(g)] = str(part.group)
        if not agrees:
            outcome.status = Status.FAIL
    return outcome


class ModuleListParameters(TaskParameters):
    modules: List[str]


@task("roundtrip_equivalence_check", ModuleListParameters, operations=("comodule.roundtrip_equivalence_check",),
      references={"modules": "module"})
def run_roundtrip_equivalence_check(document: TaskDocument,
                                    params: ModuleListParameters,
                                    settings: Settings) -> Outcome:
    outcome = Outcome(Status.PASS)
    for name in params.modules:
        report = roundtrip_equivalence_check(document.module(name), settings.window)
        outcome.rows.append(Row(key=f"{name} axioms", value=f"{len(report.axioms.rows)} checks",
                                verdict=_verdict(report.axioms.passed)))
        outcome.rows.extend(
            Row(key=f"{name} deg {row.degree}", value=str(row.recovered), verdict=_verdict(row.passed))
            for row in report.rows
        )
        outcome.rows.append(Row(key=f"{name} action", value=str(report.action_preserved),
                                verdict=_verdict(report.action_preserved)))
        if not report.passed:
            outcome.status = Status.FAIL
    return outcome


class ComoduleStageParameters(ComoduleParameters):
    generators: List[Scalar]


@task("completed_comodule_stage", ComoduleStageParameters, operations=("comodule.completed_comodule_stage",),
      references={"module": "module"})
def run_completed_comodule_stage(document: TaskDocument,
                                 params: ComoduleStageParameters,
                                 settings: Settings) -> Outcome:
    report = completed_comodule_stage(
        document.module(params.module), [str(f) for f in params.generators], settings.precision, settings.window,
    )
    rows = _axiom_rows(report.axioms)
    rows.extend(
        Row(key=f"deg {g}", value=str(piece), verdict=_verdict(report.recovered.get(g, True)))
        for g, piece in report.pieces.items()
    )
    rows.append(Row(key="coaction map", value=f"stage {report.precision}",
                    verdict=_verdict(report.coaction_well_defined)))
    return Outcome(_status(report.passed), rows, {"pieces": _pieces_data(report.pieces)})


# == planning and running ==

@dataclass(frozen=True)
class PlannedTask:
    index: int
    label: str
    definition: TaskDefinition
    params: TaskParameters
    settings: Settings

    @property
    def loc(self) -> Tuple[Union[str, int], ...]:
        return ("tasks", self.index)


_KIND_CHECKS = {
    "ring": lambda document, name: name in document.rings,
    "module": TaskDocument.has_module,
    "value": TaskDocument.has_value,
    "complex": lambda document, name: name in document.complexes,
}


def plan_tasks(document: TaskDocument, config: GeneralConfig, overrides: Overrides) -> List[PlannedTask]:
    """
    Validates every task of ``document`` and resolves its settings. The precedence is: command
    line flag, task parameter, ``defaults`` block of the task file, user configuration.

    Raises:
        ValidationError: for unknown keywords, invalid parameters and unknown names.
    """
    defaults = document.spec.defaults
    planned: List[PlannedTask] = []
    for index, spec in enumerate(document.spec.tasks):
        loc = ("tasks", index)
        if spec.op not in REGISTRY:
            raise document.invalid(f"unknown task keyword '{spec.op}'", loc + ("op",))
        definition = REGISTRY[spec.op]

        try:
            params = definition.params.model_validate(spec.parameters)
        except pydantic.ValidationError as exc:
            error = exc.errors()[0]
            where = ".".join(str(part) for part in error["loc"]) or spec.op
            raise document.invalid(f"{spec.op}: {where}: {error['msg']}", loc + tuple(error["loc"])) from exc

        for name, kind in definition.references:
            value = getattr(params, name)
            names = value if isinstance(value, list) else [value]
            for position, reference in enumerate(names):
                if reference is not None and not _KIND_CHECKS[kind](document, reference):
                    where = loc + ((name, position) if isinstance(value, list) else (name,))
                    raise document.invalid(f"unknown {kind} '{reference}'", where)

        try:
            window = Window.parse(_pick(overrides.window, params.window, defaults.window, config.window))
        except ValueError as exc:
            raise document.invalid(str(exc), loc + ("window",)) from exc
        settings = Settings(
            window=window,
            depth=_pick(overrides.depth, params.depth, defaults.depth, config.depth),
            precision=_pick(overrides.precision, params.precision, defaults.precision, config.precision),
        )
        planned.append(PlannedTask(index, spec.label, definition, params, settings))
    return planned


def run_task(document: TaskDocument, planned: PlannedTask) -> TaskResult:
    """
    Runs one planned task. Kernel errors become an ERROR result; a polynomial in the task's
    parameters that does not parse is raised as a ``ParseError`` anchored at the task.
    """
    keyword = planned.definition.keyword
    logger.debug("running task %s (%s) on window %s", planned.label, keyword, planned.settings.window)
    try:
        outcome = planned.definition.handler(document, planned.params, planned.settings)
    except ParseError as exc:
        raise ParseError(f"{planned.label}: {exc.message}", *document.position(planned.loc)) from exc
    except (GradedKernelError, ValueError) as exc:
        error = TaskError(planned.label, exc)
        logger.debug("%s", error)
        return TaskResult(task=planned.label, op=keyword, status=Status.ERROR, error=str(error))

    outcome = _apply_expectations(outcome, planned.params.expect)
    return TaskResult(task=planned.label, op=keyword, status=outcome.status, rows=outcome.rows, data=outcome.data)


def run_document(document: TaskDocument,
                 config: GeneralConfig,
                 overrides: Overrides = Overrides(),
                 strict_undetermined: bool = False,
                 ) -> Report:
    """Plans and runs all tasks of ``document`` sequentially, in file order."""
    planned = plan_tasks(document, config, overrides)
    results = [run_task(document, task_) for task_ in planned]
    return Report(source=document.path, results=results, strict_undetermined=strict_undetermined)

