"""
Towers, graded limits and completions at finite precision.

A completion is never materialized as an infinite object. Every operation here works with a
finite tower of stages together with per-degree verdicts: a degree whose transitions have
become isomorphisms is *stabilized* and its limit is known exactly, a degree whose transitions
are all surjective has a certified vanishing ``lim^1`` but an unknown limit, and everything
else is *undetermined*.
"""
import enum
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from more_itertools import first_true

from graded_kernel.abelian import AbMap, FpAbGroup, homology, kernel
from graded_kernel.derived import (
    ChainMap,
    GradedComplex,
    KoszulData,
    _koszul,
    as_complex,
    derived_quotient,
    induced_map,
    koszul_transition,
    tensor_chain_map,
    tensor_with_perfect,
)
from graded_kernel.errors import (
    DimensionMismatch,
    NotPerfect,
    NotStabilized,
    PreconditionNotCertified,
)
from graded_kernel.graded_algebra import (
    GradedMap,
    GradedModule,
    module_piece,
    quotient_by_elements,
    quotient_by_ideal_power,
    realize,
)
from graded_kernel.grading import Degree, Window, degree_sort_key
from graded_kernel.helpers import map_degrees
from graded_kernel.polynomials import Polynomial

logger = logging.getLogger(__name__)

Stage = Union[FpAbGroup, GradedModule, GradedComplex]
Transition = Union[AbMap, GradedMap, ChainMap]


# == towers ==

@dataclass(frozen=True)
class StabilityBound:
    """
    Where the degree-``g`` stages of a quotient tower stop changing. ``(I^m M)_g`` vanishes once
    ``m * step + base`` exceeds the weight of ``g``, with ``base`` the smallest weight of ``M``
    and ``step`` the smallest weight of the generators of ``I``. ``base`` None stands for a zero
    module and ``step`` None for an empty ideal; both settle at stage 1.
    """

    base: Optional[Fraction]
    step: Optional[Fraction]

    @classmethod
    def of(cls, base: Optional[Fraction], weights: Sequence[Fraction]) -> Optional["StabilityBound"]:
        """None unless every generator weight is positive."""
        if any(w <= 0 for w in weights):
            return None
        return cls(base, min(weights, default=None))

    def settled_from(self, weight: Fraction) -> int:
        if self.base is None or self.step is None:
            return 1
        return max(math.floor((weight - self.base) / self.step) + 1, 1)


@dataclass(frozen=True)
class Tower:
    """
    Stages ``M_0, ..., M_N`` with transitions ``transitions[n]: M_{n+1} -> M_n``. All stages
    are of one kind: abelian groups, graded modules or complexes. ``bound``, when known,
    certifies from which stage on every degree has settled.
    """

    stages: Tuple[Stage, ...]
    transitions: Tuple[Transition, ...]
    bound: Optional[StabilityBound] = None

    def __post_init__(self):
        if len(self.transitions) != len(self.stages) - 1:
            raise DimensionMismatch(f"{len(self.stages)} stages need {len(self.stages) - 1} transitions")
        kinds = {type(stage) for stage in self.stages}
        if len(kinds) > 1:
            raise DimensionMismatch("the stages of a tower have to be of one kind")

    @property
    def depth(self) -> int:
        return len(self.stages) - 1

    def settled_from(self, g: Optional[Degree]) -> Optional[int]:
        """The first stage from which degree ``g`` is certified constant, None without a bound."""
        if self.bound is None or g is None:
            return None
        return self.bound.settled_from(self.stages[0].ring.sig.weight_of(g))

    @property
    def kind(self) -> str:
        stage = self.stages[0]
        if isinstance(stage, FpAbGroup):
            return "group"
        if isinstance(stage, GradedModule):
            return "module"
        return "complex"

    def degrees(self, window: Window, index: int = 0) -> List[Optional[Degree]]:
        """The degrees to analyze; a tower of abelian groups has the single degree None."""
        if self.kind == "group":
            return [None]
        found = set()
        for stage in self.stages:
            module = stage if self.kind == "module" else stage.term(index)
            found.update(module.candidate_degrees(window))
        return sorted(found, key=degree_sort_key(self.stages[0].ring.sig))

    def degree_tower(self, g: Optional[Degree], index: int = 0) -> Tuple[List[FpAbGroup], List[AbMap]]:
        """The tower of abelian groups in degree ``g`` (of ``π_index`` for complexes)."""
        if self.kind == "group":
            return list(self.stages), list(self.transitions)
        if self.kind == "module":
            return [module_piece(stage, g) for stage in self.stages], [t.realize(g) for t in self.transitions]
        return (
            [stage.homology(index, g) for stage in self.stages],
            [induced_map(t, index, g) for t in self.transitions],
        )

    def chain_tower(self, g: Degree, index: int) -> Tuple[List[FpAbGroup], List[AbMap]]:
        """The tower of chain groups ``(C^n_index)_g`` of a tower of complexes."""
        return (
            [module_piece(stage.term(index), g) for stage in self.stages],
            [t.component(index).realize(g) for t in self.transitions],
        )


class LimitStatus(str, enum.Enum):
    STABILIZED = "stabilized"
    SURJECTIVE_TAIL = "surjective-tail"
    UNDETERMINED = "undetermined"


@dataclass
class DegreeLimit:
    degree: Optional[Degree]
    status: LimitStatus
    value: Optional[FpAbGroup] = None
    stage: Optional[int] = None

    @property
    def lim1_vanishes(self) -> bool:
        return self.status != LimitStatus.UNDETERMINED

    def describe(self) -> str:
        if self.status == LimitStatus.STABILIZED:
            return f"Stabilized({self.value}, stage {self.stage})"
        if self.status == LimitStatus.SURJECTIVE_TAIL:
            return "SurjectiveTail"
        return "Undetermined"


@dataclass
class TowerLimitReport:
    index: int
    rows: List[DegreeLimit] = field(default_factory=list)

    def row(self, degree: Optional[Degree]) -> DegreeLimit:
        return first_true(self.rows, pred=lambda row: row.degree == degree)

    @property
    def all_stabilized(self) -> bool:
        return all(row.status == LimitStatus.STABILIZED for row in self.rows)


def analyze_tower(groups: Sequence[FpAbGroup],
                  maps: Sequence[AbMap],
                  degree: Optional[Degree] = None,
                  settled_from: Optional[int] = None,
                  ) -> DegreeLimit:
    """
    The limit verdict of a single tower of abelian groups ``M_0, ..., M_N``, stabilized from the
    first stage ``n0`` from which every transition ``M_{n+1} -> M_n`` is an isomorphism.

    With ``settled_from`` the tower is certified constant from that stage on, so it is
    stabilized exactly when ``settled_from <= N``; stage 0 of a quotient tower is zero and is
    never reported. Without a certificate an isomorphism tail is only trusted when it has at
    least two stages and a nonzero value, since a run of zero stages is what a quotient tower
    looks like before the degree is reached.
    """
    depth = len(groups) - 1
    floor = 0 if settled_from is None else 1
    stage = depth
    while stage > floor and maps[stage - 1].is_isomorphism():
        stage -= 1
    if settled_from is not None:
        stabilized = settled_from <= depth
    else:
        stabilized = stage <= depth - 1 and not groups[depth].is_zero()
    if stabilized:
        return DegreeLimit(degree, LimitStatus.STABILIZED, groups[depth], stage)
    if all(m.is_surjective() for m in maps):
        return DegreeLimit(degree, LimitStatus.SURJECTIVE_TAIL)
    return DegreeLimit(degree, LimitStatus.UNDETERMINED)


def tower_limits(tower: Tower, window: Window, index: int = 0) -> TowerLimitReport:
    """
    Per degree of ``window``: the stabilized limit (which also certifies ``lim^1 = 0``), a
    certified ``lim^1 = 0`` for towers of surjections, or undetermined. For towers of
    complexes the analysis runs on ``π_index``.
    """
    if tower.depth < 2:
        raise DimensionMismatch(f"tower limits need depth >= 2, got {tower.depth}")

    def analyze(g: Optional[Degree]) -> DegreeLimit:
        groups, maps = tower.degree_tower(g, index)
        return analyze_tower(groups, maps, g, tower.settled_from(g))

    rows = map_degrees(analyze, tower.degrees(window, index))
    logger.debug("tower limits: %d degrees, %d stabilized", len(rows),
                 sum(row.status == LimitStatus.STABILIZED for row in rows))
    return TowerLimitReport(index, rows)


# == the Milnor sequence ==

@dataclass
class MilnorRow:
    degree: Degree
    limit: DegreeLimit
    lim1: DegreeLimit
    limit_homotopy: Optional[FpAbGroup]
    stabilized: bool

    @property
    def passed(self) -> bool:
        return self.stabilized and self.lim1.lim1_vanishes and self.limit_homotopy == self.limit.value


@dataclass
class MilnorReport:
    index: int
    rows: List[MilnorRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    @property
    def unstabilized(self) -> List[Degree]:
        return [row.degree for row in self.rows if not row.stabilized]


def milnor_check(tower: Tower, i: int, window: Window, strict: bool = False) -> MilnorReport:
    """
    Checks ``0 -> lim^1 π_{i+1} -> π_i(lim) -> lim π_i -> 0`` degreewise. ``π_i(lim)`` is
    computed from the chain level: when the chain groups of indices ``i-1, i, i+1`` stabilize
    in a degree, the limit complex in that degree is the last stage and its homology is
    compared with the stabilized limit of the ``π_i`` tower.

    Degrees where the ``π_i`` tower or the chain groups do not stabilize are reported as not
    stabilized, or raise ``NotStabilized`` when ``strict`` is set.
    """
    if tower.kind == "module":
        tower = Tower(
            tuple(as_complex(stage) for stage in tower.stages),
            tuple(_concentrated_chain_map(t) for t in tower.transitions),
            tower.bound,
        )
    if tower.kind != "complex":
        raise DimensionMismatch("the Milnor sequence needs a tower of modules or complexes")

    def check(g: Degree) -> MilnorRow:
        settled = tower.settled_from(g)
        limit = analyze_tower(*tower.degree_tower(g, i), degree=g, settled_from=settled)
        lim1 = analyze_tower(*tower.degree_tower(g, i + 1), degree=g, settled_from=settled)
        chains = [
            analyze_tower(*tower.chain_tower(g, j), degree=g, settled_from=settled) for j in (i - 1, i, i + 1)
        ]
        stabilized = limit.status == LimitStatus.STABILIZED and all(
            chain.status == LimitStatus.STABILIZED for chain in chains
        )
        limit_homotopy = None
        if stabilized:
            last = tower.stages[-1]
            limit_homotopy = homology(last.differential(i + 1).realize(g), last.differential(i).realize(g))
        return MilnorRow(g, limit, lim1, limit_homotopy, stabilized)

    report = MilnorReport(i, map_degrees(check, tower.degrees(window, i)))
    if strict and report.unstabilized:
        raise NotStabilized(f"the tower does not stabilize in degrees {[str(g) for g in report.unstabilized]}")
    return report


def _concentrated_chain_map(graded_map: GradedMap) -> ChainMap:
    return ChainMap.create(as_complex(graded_map.source), as_complex(graded_map.target), {0: graded_map})


# == completions ==

@dataclass
class CompletionApproximation:
    """
    A completion at finite precision: the tower of stages ``0..precision`` and one limit report
    per homological index. ``value`` is the stage at full precision.
    """

    kind: str
    base: Union[GradedModule, GradedComplex]
    generators: Tuple[Polynomial, ...]
    precision: int
    tower: Tower
    reports: Dict[int, TowerLimitReport]

    @property
    def value(self) -> Stage:
        return self.tower.stages[-1]

    def stage(self, n: int) -> Stage:
        return self.tower.stages[n]

    def stabilized(self, index: int = 0) -> Dict[Degree, bool]:
        return {row.degree: row.status == LimitStatus.STABILIZED for row in self.reports[index].rows}


def gradedwise_tower(module: GradedModule, generators: Sequence[Union[str, Polynomial]], precision: int) -> Tower:
    """
    The tower ``M/I^m M`` for ``m = 0..precision`` with the projections as transitions. For an
    ideal of positive weight the tower carries its stability bound.
    """
    ring = module.ring
    fs = [ring.parse(f) for f in generators]
    stages = [quotient_by_ideal_power(module, fs, m) for m in range(precision + 1)]
    transitions = [_identity_on_generators(stages[m + 1], stages[m]) for m in range(precision)]
    weights = [ring.sig.weight_of(ring.degree(f)) for f in fs if not f.is_zero()]
    return Tower(tuple(stages), tuple(transitions), StabilityBound.of(module.min_weight, weights))


def _identity_on_generators(source: GradedModule, target: GradedModule) -> GradedMap:
    ring = source.ring
    rows = tuple(
        tuple(ring.one() if i == j else ring.zero() for j in range(source.ngens))
        for i in range(target.ngens)
    )
    return GradedMap(source, target, rows, ring.sig.zero())


def gradedwise_completion(module: GradedModule,
                          generators: Sequence[Union[str, Polynomial]],
                          precision: int,
                          window: Window,
                          ) -> CompletionApproximation:
    """
    The gradedwise I-completion at precision ``n``: the pieces ``(M/I^n M)_g`` with a flag for
    every degree where the tower ``(M/I^m M)_g`` has stabilized.
    """
    ring = module.ring
    fs = tuple(ring.parse(f) for f in generators)
    for f in fs:
        ring.degree(f)
    tower = gradedwise_tower(module, fs, precision)
    return CompletionApproximation("gradedwise", module, fs, precision, tower, {0: tower_limits(tower, window)})


def derived_tower(value: Union[GradedModule, GradedComplex],
                  generators: Sequence[Union[str, Polynomial]],
                  precision: int) -> Tower:
    """
    The tower ``M/^L(f_1^m, ..., f_r^m)`` for ``m = 0..precision``; stage 0 is the tensor with
    the contractible Koszul complex of units.
    """
    complex_ = as_complex(value)
    ring = complex_.ring
    fs = tuple(ring.parse(f) for f in generators)
    stages = [tensor_with_perfect(complex_, _koszul(ring, fs, m)) for m in range(precision + 1)]
    transitions = [tensor_chain_map(complex_, koszul_transition(ring, fs, m)) for m in range(precision)]
    base = min(
        (complex_.term(i).min_weight for i in complex_.indices if complex_.term(i).min_weight is not None),
        default=None,
    )
    weights = [ring.sig.weight_of(ring.degree(f)) for f in fs]
    return Tower(tuple(stages), tuple(transitions), StabilityBound.of(base, weights))


def derived_gradedwise_completion(value: Union[GradedModule, GradedComplex],
                                  generators: Sequence[Union[str, Polynomial]],
                                  precision: int,
                                  window: Window,
                                  ) -> CompletionApproximation:
    """
    The derived gradedwise completion at precision ``n``: the Koszul quotient at exponent ``n``
    with the transitions to the lower exponents and a limit report for every homological index
    of the quotient. For an empty sequence every stage is ``M`` itself.
    """
    complex_ = as_complex(value)
    ring = complex_.ring
    fs = tuple(ring.parse(f) for f in generators)
    for f in fs:
        ring.degree(f)
    tower = derived_tower(complex_, fs, precision)
    indices = sorted({i for stage in tower.stages for i in stage.indices})
    reports = {i: tower_limits(tower, window, i) for i in indices}
    return CompletionApproximation("derived", complex_, fs, precision, tower, reports)


def completed_tensor(module: Union[GradedModule, GradedComplex],
                     perfect: GradedComplex,
                     generators: Sequence[Union[str, Polynomial]],
                     precision: int,
                     window: Window,
                     ) -> CompletionApproximation:
    """
    The completed tensor product with a perfect complex at precision ``n``.

    Raises:
        NotPerfect: if some term of ``perfect`` has relations.
    """
    if not perfect.is_perfect():
        raise NotPerfect("the completed tensor needs a complex of graded free modules")
    return derived_gradedwise_completion(tensor_with_perfect(module, perfect), generators, precision, window)


# == telescopes and completeness ==

class TelescopeVerdict(str, enum.Enum):
    VANISHES = "vanishes"
    NON_VANISHING = "non-vanishing"
    UNDETERMINED = "undetermined"


@dataclass
class TelescopeResult:
    verdict: TelescopeVerdict
    reason: str
    witness: Optional[FpAbGroup] = None
    stage: Optional[int] = None


class _PiecesView:
    """The pieces of a module, or of ``π_index`` of a complex, with multiplication maps."""

    def __init__(self, value: Union[GradedModule, GradedComplex], index: int = 0):
        self.complex = as_complex(value)
        self.index = index

    @property
    def min_weight(self):
        return self.complex.term(self.index).min_weight

    def piece(self, g: Degree) -> FpAbGroup:
        return self.complex.homology(self.index, g)

    def multiplication(self, f: Polynomial, g: Degree) -> AbMap:
        return induced_map(ChainMap.multiplication(self.complex, f), self.index, g)


def telescope_vanishes(value: Union[GradedModule, GradedComplex],
                       f: Union[str, Polynomial],
                       g: Degree,
                       depth: int,
                       index: int = 0,
                       ) -> TelescopeResult:
    """
    Analyzes ``... -> M_{g-2d} -f-> M_{g-d} -f-> M_g`` for ``d = deg f``, the degree-``g`` piece
    of the telescope ``T(M, f)``.

    The telescope vanishes when ``deg f`` has positive weight, since the stages eventually drop
    below the smallest weight of ``M`` and are zero from there on (the reported stage is the
    first such one), or when the tower is pro-zero within ``depth``. It is non-vanishing when
    the tower stabilizes to a nonzero group.
    """
    view = _PiecesView(value, index)
    ring = view.complex.ring
    f = ring.parse(f)
    d = ring.degree(f)
    sig = ring.sig

    if view.min_weight is None:
        return TelescopeResult(TelescopeVerdict.VANISHES, "zero module")
    if sig.weight_of(d) > 0:
        # every stage past this one has weight below the support
        below = math.floor((sig.weight_of(g) - view.min_weight) / sig.weight_of(d)) + 1
        return TelescopeResult(TelescopeVerdict.VANISHES, "weight", stage=max(below, 0))

    groups = [view.piece(g - d * n) for n in range(depth + 1)]
    maps = [view.multiplication(f, g - d * (n + 1)) for n in range(depth)]

    for c in range(1, depth // 2 + 1):
        composites_vanish = True
        for n in range(depth - c + 1):
            composite = AbMap.identity(groups[n + c])
            for k in range(n + c - 1, n - 1, -1):
                composite = maps[k].compose(composite)
            if not composite.is_zero():
                composites_vanish = False
                break
        if composites_vanish:
            return TelescopeResult(TelescopeVerdict.VANISHES, "pro-zero", stage=c)

    if depth >= 2:
        limit = analyze_tower(groups, maps, g)
        if limit.status == LimitStatus.STABILIZED and not limit.value.is_zero():
            return TelescopeResult(TelescopeVerdict.NON_VANISHING, "stabilized", witness=limit.value, stage=limit.stage)
    return TelescopeResult(TelescopeVerdict.UNDETERMINED, "not pro-zero within depth")


class Completeness(str, enum.Enum):
    CERTIFIED_YES = "certified-yes"
    CERTIFIED_NO = "certified-no"
    UNDETERMINED = "undetermined"


@dataclass
class CompletenessReport:
    """Completeness is certified on the given generators of the ideal only."""

    status: Completeness
    rows: List[Tuple[int, Polynomial, Degree, TelescopeResult]] = field(default_factory=list)


def is_derived_gradedwise_complete(value: Union[GradedModule, GradedComplex],
                                   generators: Sequence[Union[str, Polynomial]],
                                   window: Window,
                                   depth: int,
                                   ) -> CompletenessReport:
    """
    Runs ``telescope_vanishes`` for every generator on every ``π_i`` piece in ``window``.
    Certified yes when all telescopes vanish, certified no when one of them is certified
    non-vanishing, undetermined otherwise.
    """
    complex_ = as_complex(value)
    ring = complex_.ring
    fs = [ring.parse(f) for f in generators]
    rows = []
    for i in complex_.indices:
        for f in fs:
            for g in complex_.degrees(i, window):
                rows.append((i, f, g, telescope_vanishes(complex_, f, g, depth, i)))

    verdicts = {row[3].verdict for row in rows}
    if TelescopeVerdict.NON_VANISHING in verdicts:
        status = Completeness.CERTIFIED_NO
    elif verdicts <= {TelescopeVerdict.VANISHES}:
        status = Completeness.CERTIFIED_YES
    else:
        status = Completeness.UNDETERMINED
    return CompletenessReport(status, rows)


# == bounded torsion ==

@dataclass
class ProIsomorphismReport:
    bound: int
    bounded: bool
    degree_bounds: Dict[Degree, int]
    transitions_vanish: bool
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.bounded and self.transitions_vanish


def _torsion_kernel(module: GradedModule, f: Polynomial, power: int, g: Degree):
    return kernel(GradedMap.multiplication(module, f ** power).realize(g))


def pro_isomorphism_check(module: GradedModule, f: Union[str, Polynomial], depth: int, window: Window) -> ProIsomorphismReport:
    """
    Certifies that ``{M/^L f^n}`` and ``{M/f^n M}`` are pro-isomorphic by bounded torsion.

    In every degree the torsion bound is the smallest ``c`` with ``M[f^c] = M[f^depth]``. With
    ``c`` the largest of these bounds, the transition ``M[f^{n+c}] -> M[f^n]`` given by ``f^c``
    has to vanish for ``n = 1..depth-c``; this makes the tower of the ``π_1`` terms pro-zero.
    The ``π_0`` terms agree with ``M/f^n M`` at every stage, so nothing else is checked.
    """
    ring = module.ring
    f = ring.parse(f)
    d = ring.degree(f)
    degrees = module.candidate_degrees(window)

    def degree_bound(g: Degree) -> int:
        top = _torsion_kernel(module, f, depth, g).lattice
        for c in range(depth + 1):
            lattice = _torsion_kernel(module, f, c, g).lattice
            if all(lattice.contains(column) for column in top.basis.columns()):
                return c
        return depth

    bounds = dict(zip(degrees, map_degrees(degree_bound, degrees)))
    c = max(bounds.values(), default=0)
    bounded = c < depth or depth == 0
    failures: List[str] = []

    transitions_vanish = True
    for n in range(1, depth - c + 1):
        for g in degrees:
            torsion = _torsion_kernel(module, f, n + c, g)
            image = GradedMap.multiplication(module, f ** c).realize(g).compose(torsion.inclusion())
            if not image.is_zero():
                transitions_vanish = False
                failures.append(f"f^{c} does not kill M[f^{n + c}] in degree {g}")

    logger.debug("pro-isomorphism check: torsion bound %d (degree of f: %s)", c, d)
    return ProIsomorphismReport(c, bounded, bounds, transitions_vanish, failures)


# == derived Nakayama ==

@dataclass
class NakayamaReport:
    connectivity: int
    hypothesis_holds: bool
    counterexamples: List[Tuple[int, Degree]] = field(default_factory=list)
    checked: List[Tuple[int, Degree]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples


def derived_nakayama_check(value: Union[GradedModule, GradedComplex],
                           generators: Sequence[Union[str, Polynomial]],
                           m: int,
                           window: Window,
                           depth: int,
                           ) -> NakayamaReport:
    """
    For a certified complete ``M``: if ``π_i(M/^L(f_1, ..., f_r))`` vanishes for ``i < m`` on the
    downward closure of ``window``, then ``π_i(M)`` has to vanish there as well. Any degree
    where it does not is reported as a counterexample.

    Raises:
        PreconditionNotCertified: if completeness cannot be certified.
    """
    complex_ = as_complex(value)
    ring = complex_.ring
    fs = [ring.parse(f) for f in generators]
    lowest = min(
        (complex_.term(i).min_weight for i in complex_.indices if complex_.term(i).min_weight is not None),
        default=window.lo,
    )
    closure = Window(min(lowest, window.lo), window.hi)

    completeness = is_derived_gradedwise_complete(complex_, fs, closure, depth)
    if completeness.status != Completeness.CERTIFIED_YES:
        raise PreconditionNotCertified(
            f"derived gradedwise completeness is {completeness.status.value}, not certified"
        )

    quotient = derived_quotient(complex_, KoszulData.create(ring, fs))
    report = NakayamaReport(connectivity=m, hypothesis_holds=True)
    for i in [i for i in quotient.indices if i < m]:
        for g in quotient.degrees(i, closure):
            if not quotient.homology(i, g).is_zero():
                report.hypothesis_holds = False
    if not report.hypothesis_holds:
        return report

    for i in [i for i in complex_.indices if i < m]:
        for g in complex_.degrees(i, closure):
            report.checked.append((i, g))
            if not complex_.homology(i, g).is_zero():
                report.counterexamples.append((i, g))
    return report


# == independence of the generators ==

@dataclass
class IndependenceReport:
    same_ideal: bool
    rows: List[Tuple[Degree, FpAbGroup, FpAbGroup, bool, bool]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.same_ideal and all(left == right and a == b for _, left, right, a, b in self.rows)


def _ideal_contains(module: GradedModule, generators: Sequence[Polynomial], element: Polynomial) -> bool:
    ring = module.ring
    quotient = quotient_by_elements(ring.as_module(), [(f,) for f in generators])
    g = ring.degree(element)
    piece = realize(quotient, g)
    return piece.group.is_zero_element(piece.coordinates((element,)))


def generator_independence_check(module: GradedModule,
                                 generators: Sequence[Union[str, Polynomial]],
                                 other_generators: Sequence[Union[str, Polynomial]],
                                 precision: int,
                                 window: Window,
                                 ) -> IndependenceReport:
    """
    Compares the gradedwise completions for two generating sets of the same ideal: the stage
    pieces and the stabilization flags have to agree in every degree.
    """
    ring = module.ring
    fs = [ring.parse(f) for f in generators]
    gs = [ring.parse(f) for f in other_generators]
    same_ideal = all(_ideal_contains(module, fs, h) for h in gs) and all(_ideal_contains(module, gs, h) for h in fs)

    left = gradedwise_completion(module, fs, precision, window)
    right = gradedwise_completion(module, gs, precision, window)
    left_flags, right_flags = left.stabilized(), right.stabilized()
    report = IndependenceReport(same_ideal)
    for g in module.candidate_degrees(window):
        report.rows.append((
            g,
            module_piece(left.value, g),
            module_piece(right.value, g),
            left_flags.get(g, False),
            right_flags.get(g, False),
        ))
    return report
